#include "hxc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hxc {

namespace {

std::string strip_kind(const Error& e) {
    std::string w = e.what();
    const std::string head = e.kind() + ": ";
    return w.rfind(head, 0) == 0 ? w.substr(head.size()) : w;
}

[[noreturn]] void schema(const std::string& path, const std::string& msg) { fail("SchemaError", path + ": " + msg); }

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto b = part.find_first_not_of(' '), e = part.find_last_not_of(' ');
        out.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
    }
    return out;
}

const std::set<std::string> kTopKeys = {"schema", "name",     "description", "chart",    "point_algebra", "twist",
                                        "endos",  "tangent_endos", "forms",  "bivectors", "sections",     "frames",
                                        "omegas", "checks"};

class Loader {
public:
    explicit Loader(const json& doc, std::string origin) : doc_(doc) { s_.origin = std::move(origin); }

    Scene load() {
        if (!doc_.is_object()) schema("/", "scene must be a JSON object");
        for (auto it = doc_.begin(); it != doc_.end(); ++it)
            if (!kTopKeys.count(it.key())) schema("/" + it.key(), "unknown top-level key");
        if (doc_.contains("schema") && doc_["schema"] != 1) schema("/schema", "only schema 1 is supported");
        s_.name = str(doc_.value("name", json(std::filesystem::path(s_.origin).stem().string())), "/name");
        s_.description = str(doc_.value("description", json("")), "/description");
        backend();
        each("tangent_endos", [&](const std::string& n, const json& v, const std::string& p) {
            s_.tangent_endos.emplace(n, matrix(v, chart().dim(), chart().dim(), p));
        });
        each("forms", [&](const std::string& n, const json& v, const std::string& p) {
            s_.forms.emplace(n, alt<DiffForm>(v, p));
        });
        each("bivectors", [&](const std::string& n, const json& v, const std::string& p) {
            s_.bivectors.emplace(n, alt<MultiVec>(v, p));
        });
        each("endos", [&](const std::string& n, const json& v, const std::string& p) { s_.endos.emplace(n, endo(v, p)); });
        each("sections", [&](const std::string& n, const json& v, const std::string& p) {
            s_.sections.emplace(n, parse_section(s_, v, p));
        });
        each("frames", [&](const std::string& n, const json& v, const std::string& p) { frame(n, v, p); });
        each("omegas", [&](const std::string& n, const json& v, const std::string& p) { s_.omegas.emplace(n, omega(v, p)); });
        checks();
        return std::move(s_);
    }

private:
    const Chart& chart() const { return s_.b().chart(); }

    static std::string str(const json& j, const std::string& path) {
        if (!j.is_string()) schema(path, "expected a string");
        return j.get<std::string>();
    }

    void declare(const std::string& name, const std::string& path) {
        if (name.empty()) schema(path, "empty name");
        if (!names_.insert(name).second) schema(path, "duplicate name '" + name + "'");
    }

    template <class Fn>
    void each(const char* key, Fn fn) {
        if (!doc_.contains(key)) return;
        const json& obj = doc_[key];
        const std::string base = std::string("/") + key;
        if (!obj.is_object()) schema(base, "expected an object of named entries");
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            const std::string p = base + "/" + it.key();
            declare(it.key(), p);
            fn(it.key(), it.value(), p);
        }
    }

    Scalar expr(const json& j, const std::string& path) const {
        std::string text;
        if (j.is_string()) text = j.get<std::string>();
        else if (j.is_number_integer()) text = std::to_string(j.get<long long>());
        else schema(path, "expected an expression string");
        try {
            return chart().parse(text);
        } catch (const Error& e) {
            if (e.kind() == "SyntaxError" || e.kind() == "UnknownIdentifier")
                throw Error("SyntaxError", path + ": " + strip_kind(e), e.position());
            throw;
        }
    }

    Mat matrix(const json& j, std::size_t r, std::size_t c, const std::string& path) const {
        if (!j.is_array() || j.size() != r) schema(path, "expected " + std::to_string(r) + " rows");
        Mat m(r, c);
        for (std::size_t a = 0; a < r; ++a) {
            const json& row = j[a];
            const std::string rp = path + "/" + std::to_string(a);
            if (!row.is_array() || row.size() != c) schema(rp, "expected " + std::to_string(c) + " entries");
            for (std::size_t b = 0; b < c; ++b) m(a, b) = expr(row[b], rp + "/" + std::to_string(b));
        }
        return m;
    }

    Index coord_key(const std::string& key, const std::string& path) const {
        Index idx;
        for (const auto& name : split_key(key)) {
            bool found = false;
            for (std::size_t a = 0; a < chart().dim(); ++a)
                if (chart().name(a) == name) {
                    idx.push_back(static_cast<int>(a));
                    found = true;
                }
            if (!found) fail("SyntaxError", path + ": unknown identifier '" + name + "' in key '" + key + "'");
        }
        return idx;
    }

    // {"x0,x1": expr, ...} or {"degree": d, "components": {...}}.
    template <class A>
    A alt(const json& j, const std::string& path) const {
        if (!j.is_object()) schema(path, "expected an object of components");
        const json* comps = &j;
        std::optional<unsigned> degree;
        std::string cpath = path;
        if (j.contains("components")) {
            if (!j.contains("degree") || !j["degree"].is_number_unsigned()) schema(path, "missing degree");
            degree = j["degree"].get<unsigned>();
            comps = &j["components"];
            cpath += "/components";
            if (!comps->is_object()) schema(cpath, "expected an object of components");
        }
        for (auto it = comps->begin(); it != comps->end(); ++it) {
            auto d = static_cast<unsigned>(split_key(it.key()).size());
            if (degree && *degree != d) schema(cpath + "/" + it.key(), "components have mixed degrees");
            degree = d;
        }
        if (!degree) schema(path, "an empty component list needs an explicit degree");
        A a(chart(), *degree);
        for (auto it = comps->begin(); it != comps->end(); ++it) {
            const std::string p = cpath + "/" + it.key();
            a.add(coord_key(it.key(), p), expr(it.value(), p));
        }
        return a;
    }

    template <class A>
    A alt_ref(const json& j, const std::map<std::string, A>& pool, const std::string& path) const {
        if (j.is_string()) {
            auto it = pool.find(j.get<std::string>());
            if (it == pool.end()) fail("UnresolvedReference", path + ": no entry named '" + j.get<std::string>() + "'");
            return it->second;
        }
        return alt<A>(j, path);
    }

    Mat tangent_ref(const json& j, const std::string& path) const {
        if (j.is_string()) {
            auto it = s_.tangent_endos.find(j.get<std::string>());
            if (it == s_.tangent_endos.end())
                fail("UnresolvedReference", path + ": no tangent endomorphism named '" + j.get<std::string>() + "'");
            return it->second;
        }
        return matrix(j, chart().dim(), chart().dim(), path);
    }

    void backend() {
        const bool has_chart = doc_.contains("chart"), has_point = doc_.contains("point_algebra");
        if (has_chart == has_point) schema("/", "exactly one of \"chart\" and \"point_algebra\" is required");
        if (has_chart) {
            const json& c = doc_["chart"];
            if (!c.is_array() || c.empty()) schema("/chart", "expected a non-empty list of coordinate names");
            std::vector<std::string> coords;
            std::set<std::string> seen;
            for (std::size_t a = 0; a < c.size(); ++a) {
                coords.push_back(str(c[a], "/chart/" + std::to_string(a)));
                if (!seen.insert(coords.back()).second) schema("/chart", "duplicate coordinate '" + coords.back() + "'");
            }
            Chart ch;
            try {
                ch = Chart(coords);
            } catch (const Error& e) {
                schema("/chart", strip_kind(e));
            }
            s_.backend = Backend::standard(ch);
            if (doc_.contains("twist")) {
                DiffForm phi = alt<DiffForm>(doc_["twist"], "/twist");
                if (phi.degree() != 3) schema("/twist", "the twist must be a 3-form");
                try {
                    s_.backend = Backend::standard(ch, phi);
                } catch (const Error& e) {
                    throw Error(e.kind(), "/twist: " + strip_kind(e));
                }
            }
            return;
        }
        if (doc_.contains("twist")) schema("/twist", "a twist needs a chart");
        const json& p = doc_["point_algebra"];
        if (p == "quaternions") {
            s_.backend = Backend::quaternions();
            return;
        }
        if (!p.is_object() || !p.contains("basis") || !p["basis"].is_array())
            schema("/point_algebra", "expected \"quaternions\" or {basis, pairing, brackets}");
        std::vector<std::string> basis;
        for (std::size_t a = 0; a < p["basis"].size(); ++a)
            basis.push_back(str(p["basis"][a], "/point_algebra/basis/" + std::to_string(a)));
        const std::size_t n = basis.size();
        s_.backend = Backend::quaternions();  // placeholder chart for constant parsing
        auto at = [&](const std::string& nm, const std::string& path) {
            auto it = std::find(basis.begin(), basis.end(), nm);
            if (it == basis.end()) fail("UnresolvedReference", path + ": no basis element '" + nm + "'");
            return static_cast<std::size_t>(it - basis.begin());
        };
        auto constant = [&](const json& e, const std::string& path) {
            auto c = expr(e, path).as_constant();
            if (!c) schema(path, "point-algebra data must be constant");
            return *c;
        };
        Mat gram = Mat::identity(n).bind_all(Chart::point().vars());
        if (p.contains("pairing")) {
            gram = matrix(p["pairing"], n, n, "/point_algebra/pairing");
            if (!gram.is_constant()) schema("/point_algebra/pairing", "point-algebra data must be constant");
        }
        std::vector<std::vector<std::vector<GaussRat>>> consts(n, std::vector<std::vector<GaussRat>>(n, std::vector<GaussRat>(n)));
        if (p.contains("brackets")) {
            const json& br = p["brackets"];
            if (!br.is_object()) schema("/point_algebra/brackets", "expected {\"a,b\": {\"c\": value}}");
            for (auto it = br.begin(); it != br.end(); ++it) {
                const std::string bp = "/point_algebra/brackets/" + it.key();
                auto ab = split_key(it.key());
                if (ab.size() != 2) schema(bp, "bracket keys name two basis elements");
                std::size_t a = at(ab[0], bp), b = at(ab[1], bp);
                if (!it.value().is_object()) schema(bp, "expected {\"c\": value}");
                for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
                    GaussRat v = constant(jt.value(), bp + "/" + jt.key());
                    std::size_t c = at(jt.key(), bp);
                    consts[a][b][c] += v;
                    consts[b][a][c] -= v;
                }
            }
        }
        try {
            s_.backend = Backend::point(std::move(consts), gram, basis);
        } catch (const Error& e) {
            throw Error(e.kind(), "/point_algebra: " + strip_kind(e));
        }
    }

    Endo endo(const json& j, const std::string& path) const {
        const Backend& b = s_.b();
        const std::size_t r = b.rank();
        if (j.is_string()) return resolve_endo(j.get<std::string>(), path);
        if (j.is_array()) return Endo(b, matrix(j, r, r, path));
        if (!j.is_object() || j.empty()) schema(path, "expected a matrix or an endomorphism constructor");
        if (j.contains("matrix")) return Endo(b, matrix(j["matrix"], r, r, path + "/matrix"));
        if (j.contains("lift_complex")) return lift_complex(b, tangent_ref(j["lift_complex"], path + "/lift_complex"));
        if (j.contains("lift_symplectic"))
            return lift_symplectic(b, alt_ref(j["lift_symplectic"], s_.forms, path + "/lift_symplectic"));
        if (j.contains("conjugate")) {
            Endo base = endo(j["conjugate"], path + "/conjugate");
            if (!j.contains("b_field")) schema(path, "conjugate needs a b_field");
            DiffForm B = alt_ref(j["b_field"], s_.forms, path + "/b_field");
            if (B.degree() != 2) schema(path + "/b_field", "a B-field is a 2-form");
            const bool closed = j.value("require_closed", true);
            if (closed && !ext_d(B).is_zero())
                fail("ConstructionError", path + "/b_field: B is not closed, dB = " + ext_d(B).str());
            const std::size_t n = b.dim();
            Mat g = Mat::identity(2 * n).bind_all(chart().vars());
            g.set_block(n, 0, sharp(B));
            return conjugate(base, g);
        }
        schema(path, "expected one of matrix, lift_complex, lift_symplectic, conjugate");
    }

    void frame(const std::string& name, const json& j, const std::string& path) {
        if (j.is_object()) {
            if (!j.contains("vectors") || !j["vectors"].is_array()) schema(path, "expected {\"vectors\": [...]}");
            std::vector<Vec> out;
            const json& vs = j["vectors"];
            for (std::size_t a = 0; a < vs.size(); ++a) out.push_back(tangent_vec(vs[a], path + "/vectors/" + std::to_string(a)));
            s_.tangent_frames.emplace(name, std::move(out));
            return;
        }
        if (!j.is_array()) schema(path, "expected a list of sections or {\"vectors\": [...]}");
        std::vector<Section> out;
        for (std::size_t a = 0; a < j.size(); ++a) {
            const std::string p = path + "/" + std::to_string(a);
            if (j[a].is_string()) {
                try {
                    out.push_back(s_.section(j[a].get<std::string>()));
                } catch (const Error& e) {
                    fail("UnresolvedReference", p + ": " + strip_kind(e));
                }
            } else {
                out.push_back(parse_section(s_, j[a], p));
            }
        }
        s_.frames.emplace(name, std::move(out));
    }

    Vec tangent_vec(const json& j, const std::string& path) const {
        const std::size_t n = chart().dim();
        Vec v(n, chart().zero());
        if (j.is_array()) {
            if (j.size() != n) schema(path, "expected " + std::to_string(n) + " components");
            for (std::size_t a = 0; a < n; ++a) v[a] = expr(j[a], path + "/" + std::to_string(a));
            return v;
        }
        if (!j.is_object()) schema(path, "expected a component list or {coordinate: expr}");
        for (auto it = j.begin(); it != j.end(); ++it) {
            Index idx = coord_key(it.key(), path + "/" + it.key());
            if (idx.size() != 1) schema(path + "/" + it.key(), "expected a single coordinate");
            v[static_cast<std::size_t>(idx[0])] += expr(it.value(), path + "/" + it.key());
        }
        return v;
    }

    OmegaDecl omega(const json& j, const std::string& path) const {
        if (!j.is_object() || !j.contains("J")) schema(path, "expected {\"J\": name, \"sharp\" | \"from_triple\"}");
        std::string jn = str(j["J"], path + "/J");
        Endo jj = resolve_endo(jn, path + "/J");
        if (j.contains("sharp")) return {jn, jj, endo(j["sharp"], path + "/sharp")};
        if (j.contains("from_triple")) {
            const json& t = j["from_triple"];
            if (!t.is_array() || t.size() != 3) schema(path + "/from_triple", "expected three names");
            Endo i = resolve_endo(str(t[0], path + "/from_triple/0"), path + "/from_triple");
            Endo k = resolve_endo(str(t[2], path + "/from_triple/2"), path + "/from_triple");
            return {jn, jj, GaussRat::frac(1, 2) * (i + GaussRat::I() * k)};
        }
        schema(path, "expected \"sharp\" or \"from_triple\"");
    }

    Endo resolve_endo(const std::string& name, const std::string& path) const {
        try {
            return s_.endo(name);
        } catch (const Error& e) {
            fail("UnresolvedReference", path + ": " + strip_kind(e));
        }
    }

    bool resolves(const std::string& arg) const {
        std::string a = arg;
        if (names_.count(a)) return true;
        if (!a.empty() && a[0] == '-' && names_.count(a.substr(1))) return true;
        if (a == "dirac" || a == "lagrangian") return true;
        for (std::size_t k = 0; k < s_.b().rank(); ++k)
            if (s_.b().basis_name(k) == a) return true;
        try {
            return s_.b().scalar(a).is_constant();
        } catch (const Error&) {
            return false;
        }
    }

    void checks() {
        if (!doc_.contains("checks")) return;
        const json& cs = doc_["checks"];
        if (!cs.is_array()) schema("/checks", "expected a list of directives");
        const auto& known = command_names();
        for (std::size_t a = 0; a < cs.size(); ++a) {
            const std::string p = "/checks/" + std::to_string(a);
            const json& d = cs[a];
            if (!d.is_object() || !d.contains("command")) schema(p, "expected {\"command\", \"args\"}");
            Directive dir;
            dir.command = str(d["command"], p + "/command");
            if (dir.command == "report-all" || std::find(known.begin(), known.end(), dir.command) == known.end())
                schema(p + "/command", "unknown command '" + dir.command + "'");
            if (d.contains("args")) {
                if (!d["args"].is_array()) schema(p + "/args", "expected a list");
                for (std::size_t k = 0; k < d["args"].size(); ++k) {
                    dir.args.push_back(str(d["args"][k], p + "/args/" + std::to_string(k)));
                    if (!resolves(dir.args.back()))
                        fail("UnresolvedReference", p + "/args/" + std::to_string(k) + ": '" + dir.args.back() + "'");
                }
            }
            std::string ex = str(d.value("expect", json("pass")), p + "/expect");
            if (ex != "pass" && ex != "fail") schema(p + "/expect", "expected \"pass\" or \"fail\"");
            dir.expect_pass = ex == "pass";
            s_.checks.push_back(std::move(dir));
        }
    }

    const json& doc_;
    Scene s_;
    std::set<std::string> names_;
};

template <class M>
const typename M::mapped_type& find_named(const M& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) fail("UnknownName", std::string("no ") + what + " named '" + name + "'");
    return it->second;
}

}  // namespace

Endo Scene::endo(const std::string& name) const {
    if (!name.empty() && name[0] == '-') return -endo(name.substr(1));
    return find_named(endos, name, "endomorphism");
}

Mat Scene::tangent_endo(const std::string& name) const {
    if (!name.empty() && name[0] == '-') return -tangent_endo(name.substr(1));
    return find_named(tangent_endos, name, "tangent endomorphism");
}

Triple Scene::triple(const std::string& i, const std::string& j, const std::string& k) const {
    return Triple(endo(i), endo(j), endo(k));
}

const DiffForm& Scene::form(const std::string& name) const { return find_named(forms, name, "form"); }
const MultiVec& Scene::bivector(const std::string& name) const { return find_named(bivectors, name, "bivector"); }

Section Scene::section(const std::string& name) const {
    auto it = sections.find(name);
    if (it != sections.end()) return it->second;
    for (std::size_t a = 0; a < b().rank(); ++a)
        if (b().basis_name(a) == name) return b().frame(a);
    fail("UnknownName", "no section named '" + name + "'");
}

const std::vector<Section>& Scene::frame(const std::string& name) const { return find_named(frames, name, "frame"); }
const std::vector<Vec>& Scene::tangent_frame(const std::string& name) const {
    return find_named(tangent_frames, name, "tangent frame");
}
const OmegaDecl& Scene::omega(const std::string& name) const { return find_named(omegas, name, "Omega declaration"); }

Section parse_section(const Scene& s, const json& j, const std::string& path) {
    const Backend& b = s.b();
    auto expr = [&](const json& e, const std::string& p) {
        if (!e.is_string()) schema(p, "expected an expression string");
        try {
            return b.scalar(e.get<std::string>());
        } catch (const Error& err) {
            if (err.kind() == "SyntaxError" || err.kind() == "UnknownIdentifier")
                throw Error("SyntaxError", p + ": " + strip_kind(err), err.position());
            throw;
        }
    };
    Section u = b.zero();
    if (j.is_array()) {
        if (j.size() != b.rank()) schema(path, "expected " + std::to_string(b.rank()) + " coefficients");
        for (std::size_t a = 0; a < b.rank(); ++a) u[a] = expr(j[a], path + "/" + std::to_string(a));
        return u;
    }
    if (!j.is_object()) schema(path, "expected a section");
    auto fill = [&](const char* key, std::size_t offset, auto index_of) {
        if (!j.contains(key)) return;
        const json& part = j[key];
        const std::string pp = path + "/" + key;
        if (!part.is_object()) schema(pp, "expected {name: expr}");
        for (auto it = part.begin(); it != part.end(); ++it) {
            auto a = index_of(it.key(), pp + "/" + it.key());
            u[offset + a] += expr(it.value(), pp + "/" + it.key());
        }
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const bool ok = b.is_chart() ? (it.key() == "vector" || it.key() == "form") : it.key() == "coefficients";
        if (!ok) schema(path + "/" + it.key(), "unexpected key in a section");
    }
    if (b.is_chart()) {
        auto coord = [&](const std::string& nm, const std::string& p) {
            for (std::size_t a = 0; a < b.dim(); ++a)
                if (b.chart().name(a) == nm) return a;
            fail("SyntaxError", p + ": unknown identifier '" + nm + "'");
        };
        fill("vector", 0, coord);
        fill("form", b.dim(), coord);
    } else {
        auto basis = [&](const std::string& nm, const std::string& p) {
            for (std::size_t a = 0; a < b.rank(); ++a)
                if (b.basis_name(a) == nm) return a;
            fail("SyntaxError", p + ": unknown identifier '" + nm + "'");
        };
        fill("coefficients", 0, basis);
    }
    return u;
}

Scene parse_scene(const json& doc, const std::string& origin) { return Loader(doc, origin).load(); }

Scene parse_scene_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("SyntaxError", origin + ": malformed JSON: " + e.what(), static_cast<long>(e.byte));
    }
    return parse_scene(doc, origin);
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IOError", "cannot read scene file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene_text(ss.str(), path);
}

std::string resolve_scene(const std::string& arg, const std::string& fixture_dir) {
    namespace fs = std::filesystem;
    if (fs::exists(arg) || fixture_dir.empty()) return arg;
    for (const std::string& cand : {arg, arg + ".json"}) {
        fs::path p = fs::path(fixture_dir) / cand;
        if (fs::exists(p)) return p.string();
    }
    return arg;
}

std::vector<std::string> list_fixtures(const std::string& fixture_dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    if (!fs::is_directory(fixture_dir)) return out;
    for (const auto& e : fs::directory_iterator(fixture_dir))
        if (e.path().extension() == ".json") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hxc
