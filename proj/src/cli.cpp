#include "hxc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace hxc {

namespace {

using Args = std::vector<std::string>;

void need(const Args& args, std::size_t lo, std::size_t hi, const std::string& usage) {
    if (args.size() < lo || args.size() > hi) fail("UsageError", "expected arguments: " + usage);
}

GaussRat constant_arg(const Scene& s, const std::string& text) {
    std::optional<GaussRat> c;
    try {
        c = s.b().scalar(text).as_constant();
    } catch (const Error&) {
    }
    if (!c) fail("UsageError", "'" + text + "' is not a constant");
    return *c;
}

Triple triple_args(const Scene& s, const Args& args, std::size_t at = 0) {
    if (args.size() < at + 3) return s.triple("I", "J", "K");
    return s.triple(args[at], args[at + 1], args[at + 2]);
}

json uv(const Backend& b, std::size_t x, std::size_t y) {
    return json{{"U", b.basis_name(x)}, {"V", b.basis_name(y)}};
}

Report verify_axioms_cmd(const Scene& s, const Args& args) {
    if (args.empty()) return verify_axioms(s.b());
    std::vector<Section> samples;
    for (const auto& a : args) samples.push_back(s.section(a));
    return verify_axioms(s.b(), samples, default_funcs(s.b()));
}

Report tangent_complex(const Scene& s, const std::string& name) {
    const Chart& c = s.chart();
    Mat j = s.tangent_endo(name);
    Report rep;
    rep.title = "complex_structure_check";
    rep.add("j^2 = -1", squares_to_minus_one(j), json{{"j^2 + 1", mat_json(j * j + Mat::identity(c.dim()).bind_all(c.vars()))}});
    if (!squares_to_minus_one(j)) return rep;
    auto n = nijenhuis_tangent(c, j);
    json w = nullptr;
    for (std::size_t k = 0; k < n.size() && w.is_null(); ++k)
        if (!is_zero(n[k]))
            w = json{{"X", "d_" + c.name(k / c.dim())}, {"Y", "d_" + c.name(k % c.dim())}, {"value", vec_json(n[k])}};
    rep.add("N_j = 0", w.is_null(), w);
    return rep;
}

Report check_complex(const Scene& s, const Args& args) {
    need(args, 1, 1, "E");
    std::string base = args[0][0] == '-' ? args[0].substr(1) : args[0];
    if (s.tangent_endos.count(base) && !s.endos.count(base)) return tangent_complex(s, args[0]);
    return complex_structure_check(s.endo(args[0]));
}

Report check_hypercomplex(const Scene& s, const Args& args) {
    need(args, 0, 3, "[I J K]");
    Triple t = triple_args(s, args);
    Report q = quaternionic_check(t);
    if (!q.passed()) {
        q.title = "hypercomplex_check";
        return q;
    }
    return hypercomplex_check(t);
}

Report nijenhuis_cmd(const Scene& s, const Args& args) {
    need(args, 2, 4, "F G [U V]");
    if (args.size() == 3) fail("UsageError", "expected arguments: F G [U V]");
    Endo f = s.endo(args[0]), g = s.endo(args[1]);
    const Backend& b = s.b();
    Report rep;
    rep.title = "nijenhuis";
    if (args.size() == 4) {
        Section n = nijenhuis(f, g, s.section(args[2]), s.section(args[3]));
        rep.add("N(F,G)(U,V) = 0", is_zero(n), json{{"value", section_json(b, n)}});
        rep.data["value"] = section_json(b, n);
        return rep;
    }
    auto entries = nijenhuis_on_frame(f, g);
    json all = json::array();
    for (const auto& [p, v] : entries) {
        json w = uv(b, p.first, p.second);
        w["value"] = section_json(b, v);
        all.push_back(w);
    }
    rep.add("N(F,G) = 0", entries.empty(), all.empty() ? json(nullptr) : all[0]);
    rep.data["nonzero"] = all;
    return rep;
}

Report poisson_of_cmd(const Scene& s, const Args& args) {
    need(args, 1, 1, "F");
    MultiVec pi = poisson_of(s.endo(args[0]));
    MultiVec pp = schouten(pi, pi);
    Report rep;
    rep.title = "poisson_of";
    rep.add("[pi,pi] = 0", pp.is_zero(), alt_json(pp));
    rep.data["pi"] = alt_json(pi);
    return rep;
}

Report connection_cmd(const Scene& s, const Args& args) {
    need(args, 0, 5, "[I J K] [U V]");
    Connection c(triple_args(s, args));
    Report rep = parallelism_report(c);
    if (args.size() == 5) rep.data["nabla_U V"] = section_json(s.b(), c(s.section(args[3]), s.section(args[4])));
    return rep;
}

Report torsion_cmd(const Scene& s, const Args& args) {
    need(args, 0, 3, "[I J K]");
    Connection c(triple_args(s, args), false);
    const Backend& b = s.b();
    json w1 = nullptr, w2 = nullptr;
    for (std::size_t x = 0; x < b.rank(); ++x)
        for (std::size_t y = 0; y < b.rank(); ++y) {
            Section u = b.frame(x), v = b.frame(y);
            auto [t, rhs] = c.torsion(u, v);
            if (w1.is_null() && !section_eq(t, rhs)) {
                w1 = uv(b, x, y);
                w1["T"] = section_json(b, t);
                w1["rhs"] = section_json(b, rhs);
            }
            Section tc = c.torsion_corrected(u, v);
            if (w2.is_null() && !section_eq(tc, rhs)) {
                w2 = uv(b, x, y);
                w2["T - 1/2 K N(I,J)"] = section_json(b, tc);
                w2["rhs"] = section_json(b, rhs);
            }
        }
    Report rep;
    rep.title = "torsion";
    rep.add("T(U,V) = I D<U,IV> + J D<U,JV> + K D<U,KV>", w1.is_null(), w1);
    rep.add("T(U,V) - 1/2 K N(I,J)(U,V) = I D<U,IV> + J D<U,JV> + K D<U,KV>", w2.is_null(), w2);
    return rep;
}

Report curvature_cmd(const Scene& s, const Args& args) {
    need(args, 0, 3, "[I J K]");
    Connection c(triple_args(s, args));
    DualPair p = eigenframe(c.triple().J);
    const Backend& b = s.b();
    Report rep;
    rep.title = "curvature";
    for (const auto& [name, fr] : {std::pair<std::string, const Frame*>{"R = 0 on L* slots", &p.lstar},
                                   std::pair<std::string, const Frame*>{"R = 0 on L slots", &p.l}}) {
        json w = nullptr;
        const Frame& f = *fr;
        for (std::size_t x = 0; x < f.size() && w.is_null(); ++x)
            for (std::size_t y = 0; y < f.size() && w.is_null(); ++y)
                for (std::size_t z = 0; z < f.size() && w.is_null(); ++z) {
                    Section r = c.curvature(f[x], f[y], f[z]);
                    if (!is_zero(r))
                        w = json{{"slots", {x, y, z}}, {"value", section_json(b, r)}};
                }
        rep.add(name, w.is_null(), w);
    }
    rep.data["L* frame"] = frame_json(p.lstar);
    return rep;
}

json table_json(const std::vector<std::vector<Vec>>& table) {
    json t = json::array();
    for (const auto& row : table) {
        json r = json::array();
        for (const auto& v : row) r.push_back(vec_json(v));
        t.push_back(r);
    }
    return t;
}

Report restrict_cmd(const Scene& s, const Args& args) {
    need(args, 4, 5, "I J K FRAME [dirac|lagrangian]");
    Connection c(triple_args(s, args));
    const std::string kind = args.size() == 5 ? args[4] : "dirac";
    std::optional<RestrictedConnection> rc;
    if (kind == "dirac") {
        rc = restrict_dirac(c, Frame::make(s.b(), s.frame(args[3]), true));
    } else if (kind == "lagrangian") {
        // The frame names a real Dirac structure; its (1 + iJ)/2 image is the Lagrangian candidate.
        const Triple& t = c.triple();
        DualPair p = eigenframe(t.J);
        Endo w = GaussRat::frac(1, 2) * (t.I + GaussRat::I() * t.K);
        rc = restrict_lagrangian(c, lagrangian_from_dirac(p, s.frame(args[3])), p, w);
    } else {
        fail("UsageError", "restriction kind must be dirac or lagrangian");
    }
    Report rep = rc->report;
    rep.data["table"] = table_json(rc->table);
    return rep;
}

Report from_triple_cmd(const Scene& s, const Args& args) {
    need(args, 0, 3, "[I J K]");
    Triple t = triple_args(s, args);
    HoloSymp h = from_triple(t);
    Report rep = h.report;
    Triple back = to_triple(h);
    rep.add("to_triple(from_triple(T)) = T", back.I.mat() == t.I.mat() && back.J.mat() == t.J.mat() && back.K.mat() == t.K.mat(),
            json{{"I", mat_json(back.I.mat())}, {"K", mat_json(back.K.mat())}});
    rep.data["Omega#"] = mat_json(h.omega_sharp.mat());
    return rep;
}

Report holosym_check_cmd(const Scene& s, const Args& args) {
    need(args, 1, 1, "OMEGA");
    const OmegaDecl& o = s.omega(args[0]);
    Report rep = holosym_invariants(o.j, o.sharp);
    rep.title = "holosym_check";
    try {
        rep.merge(closedness_equivalences(o.j, o.sharp), "closedness: ");
    } catch (const Error& e) {
        if (e.kind() != "NondegeneracyFailed") throw;
        rep.data["closedness"] = "skipped: " + std::string(e.what());
    }
    return rep;
}

Report decompose_cmd(const Scene& s, const Args& args) {
    need(args, 1, 1, "OMEGA");
    const OmegaDecl& o = s.omega(args[0]);
    return decompose(o.j, o.sharp).report;
}

Report sphere_cmd(const Scene& s, const Args& args) {
    need(args, 3, 6, "l1 l2 l3 [I J K]");
    if (args.size() != 3 && args.size() != 6) fail("UsageError", "expected arguments: l1 l2 l3 [I J K]");
    Triple t = triple_args(s, args, 3);
    Endo e = sphere_structure(t, constant_arg(s, args[0]), constant_arg(s, args[1]), constant_arg(s, args[2]));
    Report rep;
    rep.title = "sphere";
    rep.merge(complex_structure_check(e), "S: ");
    rep.data["S"] = mat_json(e.mat());
    return rep;
}

Report deform_cmd(const Scene& s, const Args& args) {
    need(args, 3, 3, "OMEGA a b");
    const OmegaDecl& o = s.omega(args[0]);
    GaussRat a = constant_arg(s, args[1]), bb = constant_arg(s, args[2]);
    HoloSymp h = holosym(o.j, o.sharp);
    Deformation d = deformation_family(h, a, bb);
    Report rep = d.report;
    rep.merge(deformation_check(h.pair, (a + GaussRat::I() * bb) * h.omega), "(a + bi) Omega: ");
    return rep;
}

Report hyper_poisson_cmd(const Scene& s, const Args& args) {
    need(args, 6, 6, "i j k p1 p2 p3");
    HyperPoisson hp{s.chart(),         s.tangent_endo(args[0]), s.tangent_endo(args[1]), s.tangent_endo(args[2]),
                    s.bivector(args[3]), s.bivector(args[4]),     s.bivector(args[5])};
    return hyper_poisson_equivalence(hp);
}

Report bf_cmd(const Scene& s, const Args& args) {
    need(args, 3, 3, "OMEGA_FORM j FRAME");
    const Chart& c = s.chart();
    TangentTable t = behrend_fantechi(s.form(args[0]), s.tangent_endo(args[1]), s.tangent_frame(args[2]));
    json w = nullptr;
    for (std::size_t a = 0; a < t.frame.size() && w.is_null(); ++a)
        for (std::size_t b = 0; b < t.frame.size() && w.is_null(); ++b) {
            Vec r = t.table[a][b] - t.table[b][a] - lie_bracket(c, t.frame[a], t.frame[b]);
            if (!is_zero(r)) w = json{{"X", a}, {"Y", b}, {"residual", vec_json(r)}};
        }
    Report rep;
    rep.title = "bf_connection";
    rep.add("nabla_X Y - nabla_Y X = [X,Y]", w.is_null(), w);
    rep.data["table"] = table_json(t.table);
    return rep;
}

Report report_all(const Scene& s, const Args& args);

using Handler = std::function<Report(const Scene&, const Args&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h = {
        {"verify-axioms", verify_axioms_cmd},
        {"check-complex", check_complex},
        {"check-hypercomplex", check_hypercomplex},
        {"nijenhuis", nijenhuis_cmd},
        {"poisson-of", poisson_of_cmd},
        {"connection", connection_cmd},
        {"torsion", torsion_cmd},
        {"curvature", curvature_cmd},
        {"restrict", restrict_cmd},
        {"holosym-from-triple", from_triple_cmd},
        {"holosym-check", holosym_check_cmd},
        {"decompose", decompose_cmd},
        {"sphere", sphere_cmd},
        {"deform", deform_cmd},
        {"hyper-poisson", hyper_poisson_cmd},
        {"bf-connection", bf_cmd},
        {"report-all", report_all},
    };
    return h;
}

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
}

// Directive outcome: the report, or the error that stopped it.
struct Outcome {
    Report report;
    std::optional<Error> error;
};

Outcome attempt(const std::string& command, const Scene& s, const Args& args) {
    try {
        return {run_command(command, s, args), std::nullopt};
    } catch (const Error& e) {
        Report r;
        r.title = command;
        r.add_error(command, e.kind(), e.what());
        return {r, e};
    }
}

Report report_all(const Scene& s, const Args& args) {
    need(args, 0, 0, "");
    Report rep;
    rep.title = "report-all";
    json dirs = json::array();
    for (const auto& d : s.checks) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = attempt(d.command, s, d.args);
        std::string line = d.command;
        for (const auto& a : d.args) line += " " + a;
        if (o.error && is_input_error(o.error->kind())) throw *o.error;
        const bool met = !o.error && o.report.passed() == d.expect_pass;
        json entry = {{"command", d.command}, {"args", d.args}, {"expect", d.expect_pass ? "pass" : "fail"},
                      {"status", status_str(o.error ? Status::Error : o.report.passed() ? Status::Pass : Status::Fail)},
                      {"report", o.report.to_json()}};
        entry["timing_ms"] = elapsed_ms(t0);
        dirs.push_back(entry);
        rep.add(line, met, json{{"expect", d.expect_pass ? "pass" : "fail"}, {"status", entry["status"]}});
        rep.merge(Report{"", {}, o.report.conventions, json::object()});
    }
    rep.data["directives"] = dirs;
    return rep;
}

void strip_timing(json& j) {
    if (j.is_object()) {
        j.erase("timing_ms");
        for (auto& [k, v] : j.items()) strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_timing(v);
    }
}

json error_json(const Error& e) {
    json j = {{"kind", e.kind()}, {"message", e.what()}};
    if (e.position() >= 0) j["position"] = e.position();
    return j;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, h] : handlers()) n.push_back(k);
        return n;
    }();
    return names;
}

Report run_command(const std::string& command, const Scene& scene, const std::vector<std::string>& args) {
    for (const auto& [name, h] : handlers())
        if (name == command) return h(scene, args);
    fail("UnknownCommand", "no command named '" + command + "'");
}

bool is_input_error(const std::string& kind) {
    static const std::vector<std::string> kinds = {
        "SchemaError", "SyntaxError",       "UnknownIdentifier", "UnresolvedReference", "UnknownCommand",
        "UnknownName", "UsageError",        "IOError",           "ConstructionError",   "VariableMismatch",
        "ShapeError",  "UnknownCoordinate", "WrongShape",        "UnsupportedOnPoint"};
    return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

RunResult run(const std::string& command, const Scene& scene, const std::vector<std::string>& args,
              const RunOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    json out = {{"schema", 1}, {"command", command}, {"scene", scene.name}, {"args", args}};
    Outcome o = attempt(command, scene, args);
    if (o.error && is_input_error(o.error->kind())) {
        r.exit_code = 2;
        out["status"] = "error";
        out["error"] = error_json(*o.error);
    } else {
        const bool ok = o.report.passed();
        r.exit_code = ok ? 0 : 1;
        out["status"] = status_str(o.error ? Status::Error : ok ? Status::Pass : Status::Fail);
        out["report"] = o.report.to_json(opt.witness_limit);
    }
    out["exit_code"] = r.exit_code;
    out["timing_ms"] = elapsed_ms(t0);
    if (!opt.timing) strip_timing(out);
    r.output = std::move(out);
    return r;
}

RunResult run_path(const std::string& command, const std::string& scene_path, const std::vector<std::string>& args,
                   const RunOptions& opt) {
    try {
        Scene s = load_scene(scene_path);
        return run(command, s, args, opt);
    } catch (const Error& e) {
        RunResult r;
        r.exit_code = 2;
        r.output = {{"schema", 1}, {"command", command}, {"scene", scene_path}, {"args", args},
                    {"status", "error"},  {"error", error_json(e)}, {"exit_code", 2}};
        return r;
    }
}

}  // namespace hxc
