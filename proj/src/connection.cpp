#include "hxc/connection.hpp"

#include "hxc/error.hpp"

namespace hxc {

namespace {

const GaussRat kHalf = GaussRat::frac(1, 2);
const GaussRat kI = GaussRat::I();

json pair_witness(const Backend& b, const std::string& u, const std::string& v, const Section& residual) {
    return json{{"U", u}, {"V", v}, {"residual", section_json(b, residual)}};
}

std::string sname(const char* prefix, std::size_t a) { return std::string(prefix) + std::to_string(a); }

// The 1-form Y -> <s, Y> on a frame.
FrameForm form_on(const Frame& f, const Section& s) {
    const Backend& b = f.backend();
    return tabulate(f, 1, [&](const std::vector<Section>& us) { return b.pairing(s, us[0]); });
}

// The section W of span(target) with <W, A_d> = alpha(A_d) on the frame A of alpha.
Section raise(const FrameForm& alpha, const Frame& target) {
    const Frame& a = alpha.frame();
    const Backend& b = a.backend();
    if (a.size() != target.size()) fail("ShapeError", "raise needs frames of equal size");
    Mat m(a.size(), a.size());
    for (std::size_t d = 0; d < a.size(); ++d)
        for (std::size_t c = 0; c < a.size(); ++c) m(d, c) = b.pairing(a[d], target[c]);
    auto inv = inverse_unit(m);
    if (!inv) fail("NoUnitMinor", "pairing between the frames is not unimodular");
    Vec rhs(a.size());
    for (std::size_t d = 0; d < a.size(); ++d) rhs[d] = alpha.at({static_cast<int>(d)});
    return target.combine(*inv * rhs);
}

Endo conj_endo(const Endo& f) { return Endo(f.backend(), f.mat().conj()); }

}  // namespace

Connection::Connection(Triple t, bool require_hypercomplex) : t_(std::move(t)) {
    if (require_hypercomplex) {
        Report r = hypercomplex_check(t_);
        if (!r.passed()) {
            json failed = json::array();
            for (const auto& c : r.checks)
                if (c.status != Status::Pass) failed.push_back(c.name);
            fail("NotHypercomplex", "triple fails " + failed.dump());
        }
    } else if (!quaternionic_check(t_).passed()) {
        fail("NotQuaternionic", "triple fails the quaternionic relations");
    }
}

Section Connection::operator()(const Section& u, const Section& v) const {
    const Backend& b = backend();
    const Endo &I = t_.I, &J = t_.J, &K = t_.K;
    Section iu = I(u), jv = J(v);
    Section s = b.dorfman(jv, iu) - J(b.dorfman(v, iu)) - I(b.dorfman(jv, u)) + J(I(b.dorfman(v, u)));
    return Scalar(GaussRat::frac(-1, 2)) * K(s);
}

Section Connection::delta(const Scalar& f, const Section& u, const Section& v) const {
    const Backend& b = backend();
    Section df = b.dee_or_zero(f);
    Section out = b.pairing(u, v) * df;
    for (int a = 0; a < 3; ++a) out = out + b.pairing(t_[a](u), v) * t_[a](df);
    return out;
}

Section Connection::bracket(const Section& u, const Section& v) const {
    const Backend& b = backend();
    return Scalar(kHalf) * (b.dorfman(u, v) - b.dorfman(v, u));
}

std::pair<Section, Section> Connection::torsion(const Section& u, const Section& v) const {
    const Backend& b = backend();
    Section t = (*this)(u, v) - (*this)(v, u) - bracket(u, v);
    Section rhs = b.zero();
    for (int a = 0; a < 3; ++a) rhs = rhs + t_[a](b.dee_or_zero(b.pairing(u, t_[a](v))));
    return {t, rhs};
}

Section Connection::torsion_corrected(const Section& u, const Section& v) const {
    return torsion(u, v).first - Scalar(kHalf) * t_.K(nijenhuis(t_.I, t_.J, u, v));
}

Section Connection::curvature(const Section& u, const Section& v, const Section& w) const {
    const Connection& n = *this;
    return n(u, n(v, w)) - n(v, n(u, w)) - n(bracket(u, v), w);
}

Report parallelism_report(const Connection& c) {
    const Backend& b = c.backend();
    Report rep;
    rep.title = "parallelism";
    const char* names[3] = {"nabla I = 0", "nabla J = 0", "nabla K = 0"};
    for (int k = 0; k < 3; ++k) {
        const Endo& a = c.triple()[k];
        json w = nullptr;
        for (std::size_t x = 0; x < b.rank() && w.is_null(); ++x)
            for (std::size_t y = 0; y < b.rank(); ++y) {
                Section r = c(b.frame(x), a(b.frame(y))) - a(c(b.frame(x), b.frame(y)));
                if (!is_zero(r)) {
                    w = pair_witness(b, b.basis_name(x), b.basis_name(y), r);
                    break;
                }
            }
        rep.add(names[k], w.is_null(), w);
    }
    return rep;
}

Report nabla_eigen_identities(const Connection& c, const DualPair& p, const Endo& omega_sharp) {
    const Backend& b = c.backend();
    require_same_backend(b, p.J.backend());
    const Endo omega_bar = conj_endo(omega_sharp);
    const FrameForm om = two_form_of(p.lstar, omega_sharp);
    const FrameForm om_bar = two_form_of(p.l, omega_bar);
    Report rep;
    rep.title = "nabla on eigenbundles";
    rep.conventions.push_back("Omega(xi, eta) = <Omega# xi, eta> with the raw pairing; forms raised through the same pairing");
    const Frame &l = p.l, &ls = p.lstar;
    long nonzero = 0;
    auto run = [&](const std::string& name, const Frame& fa, const Frame& fb, const char* pa, const char* pb,
                   const std::function<Section(const Section&, const Section&)>& rhs) {
        json w = nullptr;
        for (std::size_t x = 0; x < fa.size() && w.is_null(); ++x)
            for (std::size_t y = 0; y < fb.size(); ++y) {
                Section lhs = c(fa[x], fb[y]);
                if (!is_zero(lhs)) ++nonzero;
                Section r = lhs - rhs(fa[x], fb[y]);
                if (!is_zero(r)) {
                    w = pair_witness(b, sname(pa, x), sname(pb, y), r);
                    break;
                }
            }
        rep.add(name, w.is_null(), w);
    };
    run("nabla_X xi = i_X d_L xi", l, ls, "X", "xi",
        [&](const Section& x, const Section& xi) { return raise(interior(x, algebroid_d(form_on(l, xi))), ls); });
    run("nabla_xi X = i_xi d_L* X", ls, l, "xi", "X",
        [&](const Section& xi, const Section& x) { return raise(interior(xi, algebroid_d(form_on(ls, x))), l); });
    run("nabla_X Y = -Omega#(i_X L_Y conj Omega)", l, l, "X", "Y", [&](const Section& x, const Section& y) {
        return -omega_sharp(raise(interior(x, algebroid_lie(y, om_bar)), ls));
    });
    run("nabla_xi eta = -conj Omega#(i_xi L_eta Omega)", ls, ls, "xi", "eta", [&](const Section& xi, const Section& eta) {
        return -omega_bar(raise(interior(xi, algebroid_lie(eta, om)), l));
    });
    rep.data["nonzero values"] = nonzero;
    return rep;
}

Report parallel_section_check(const Connection& c, const Section& v, const Endo& omega_sharp) {
    const Backend& b = c.backend();
    b.require(v);
    Report rep;
    rep.title = "parallel section";
    json w = nullptr;
    for (std::size_t a = 0; a < b.rank(); ++a) {
        Section r = c(b.frame(a), v);
        if (!is_zero(r)) {
            w = json{{"U", b.basis_name(a)}, {"nabla_U V", section_json(b, r)}};
            break;
        }
    }
    const bool cond1 = w.is_null();
    rep.add("nabla V = 0", cond1, w);

    const char* names[3] = {"I", "J", "K"};
    bool cond2 = true;
    json w2 = nullptr;
    std::optional<DualPair> pj;
    Section xij;
    for (int k = 0; k < 3; ++k) {
        const Endo& a = c.triple()[k];
        DualPair p = eigenframe(a);
        Section xi = v + Scalar(kI) * a(v);
        FrameForm d = algebroid_d(form_on(p.l, xi));
        if (!d.is_zero() && w2.is_null()) {
            w2 = json{{"A", names[k]}, {"d(V + iAV)", d.to_json()}};
            cond2 = false;
        }
        if (k == 1) {
            pj = p;
            xij = xi;
        }
    }
    rep.add("d_{L_A}(V + iAV) = 0 for A = I, J, K", cond2, w2);

    FrameForm dj = algebroid_d(form_on(pj->l, xij));
    FrameForm lie = algebroid_lie(xij, two_form_of(pj->lstar, omega_sharp));
    const bool cond3 = dj.is_zero() && lie.is_zero();
    json w3 = nullptr;
    if (!cond3) w3 = json{{"d(V + iJV)", dj.to_json()}, {"L Omega", lie.to_json()}};
    rep.add("d_{L_J}(V + iJV) = 0 and L_{V+iJV} Omega = 0", cond3, w3);
    rep.add("conditions agree", cond1 == cond2 && cond2 == cond3,
            cond1 == cond2 && cond2 == cond3 ? json(nullptr) : json{{"nabla", cond1}, {"three A", cond2}, {"J and Omega", cond3}});
    rep.data["parallel"] = cond1;
    return rep;
}

namespace {

RestrictedConnection verify_restriction(const Connection& c, const Frame& f, bool flat) {
    const Backend& b = c.backend();
    RestrictedConnection out{f, {}, {}};
    out.report.title = "restricted connection";
    json closure = nullptr, torsion = nullptr;
    out.table.assign(f.size(), std::vector<Vec>(f.size()));
    std::vector<std::vector<Section>> nab(f.size(), std::vector<Section>(f.size()));
    for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t d = 0; d < f.size(); ++d) {
            nab[a][d] = c(f[a], f[d]);
            auto co = f.try_coords(nab[a][d]);
            if (co)
                out.table[a][d] = *co;
            else if (closure.is_null())
                closure = pair_witness(b, sname("s", a), sname("s", d), nab[a][d]);
        }
    out.report.add("closure", closure.is_null(), closure);
    for (std::size_t a = 0; a < f.size() && torsion.is_null(); ++a)
        for (std::size_t d = a + 1; d < f.size(); ++d) {
            Section t = nab[a][d] - nab[d][a] - b.dorfman(f[a], f[d]);
            if (!is_zero(t)) {
                torsion = pair_witness(b, sname("s", a), sname("s", d), t);
                break;
            }
        }
    out.report.add("torsion-free", torsion.is_null(), torsion);
    if (flat) {
        json curv = nullptr;
        for (std::size_t a = 0; a < f.size() && curv.is_null(); ++a)
            for (std::size_t d = a + 1; d < f.size() && curv.is_null(); ++d)
                for (std::size_t e = 0; e < f.size(); ++e) {
                    Section r = c.curvature(f[a], f[d], f[e]);
                    if (!is_zero(r)) {
                        curv = json{{"U", sname("s", a)}, {"V", sname("s", d)}, {"W", sname("s", e)}, {"R", section_json(b, r)}};
                        break;
                    }
                }
        out.report.add("flat", curv.is_null(), curv);
    }
    json tab = json::array();
    for (const auto& row : out.table) {
        json r = json::array();
        for (const auto& v : row) r.push_back(vec_json(v));
        tab.push_back(r);
    }
    out.report.data["christoffel"] = tab;
    out.report.data["frame"] = frame_json(f);
    return out;
}

}  // namespace

RestrictedConnection restrict_dirac(const Connection& c, const Frame& dirac) {
    require_same_backend(c.backend(), dirac.backend());
    if (!dirac.isotropic()) fail("NotStable", "Dirac frame must be isotropic");
    for (int k = 0; k < 3; ++k)
        for (std::size_t a = 0; a < dirac.size(); ++a) {
            Section img = c.triple()[k](dirac[a]);
            if (!dirac.try_coords(img))
                fail("NotStable", std::string("frame not stable under ") + "IJK"[k] + ": image of s" + std::to_string(a) +
                                      " = " + section_json(c.backend(), img).dump());
        }
    dirac.require_involutive();
    RestrictedConnection r = verify_restriction(c, dirac, false);
    r.report.title = "restricted connection (Dirac)";
    return r;
}

RestrictedConnection restrict_lagrangian(const Connection& c, const Frame& sub, const DualPair& p,
                                         const Endo& omega_sharp) {
    require_same_backend(c.backend(), sub.backend());
    if (p.J != c.triple().J) fail("FrameMismatch", "eigenframes must belong to the connection's J");
    Report lag = subalgebroid_check(sub, p, two_form_of(p.lstar, omega_sharp));
    if (!lag.passed()) {
        json failed = json::array();
        for (const auto& ch : lag.checks)
            if (ch.status != Status::Pass) failed.push_back(ch.name);
        fail("NotLagrangian", "subbundle fails " + failed.dump());
    }
    RestrictedConnection r = verify_restriction(c, sub, true);
    r.report.title = "restricted connection (Lagrangian)";
    r.report.merge(lag, "Lagrangian: ");
    return r;
}

namespace {

// Tangent vector fields as sections of the standard backend, to reuse certified frames.
Section embed_vector(const Backend& b, const Vec& x) { return b.make(x, zero_vec(b.dim())); }
Section embed_form(const Backend& b, const Vec& x) { return b.make(zero_vec(b.dim()), x); }

Scalar contract2(const Chart& c, const DiffForm& w, const Vec& x, const Vec& y) {
    return interior(vector_field(c, y), interior(vector_field(c, x), w)).at({});
}

void require_type_10(const Mat& j, const std::vector<Vec>& frame, const char* kind) {
    for (std::size_t a = 0; a < frame.size(); ++a)
        if (!is_zero(j * frame[a] - Scalar(kI) * frame[a]))
            fail(kind, "frame vector X" + std::to_string(a) + " is not of type (1,0)");
}

void require_involutive_vectors(const Chart& c, const Frame& f, const std::vector<Vec>& frame, const char* kind) {
    for (std::size_t a = 0; a < frame.size(); ++a)
        for (std::size_t d = a + 1; d < frame.size(); ++d) {
            Vec br = lie_bracket(c, frame[a], frame[d]);
            if (!f.try_coords(embed_vector(f.backend(), br)))
                fail(kind, "[X" + std::to_string(a) + ", X" + std::to_string(d) + "] = " + vec_str(br) + " leaves the span");
        }
}

}  // namespace

TangentTable behrend_fantechi(const DiffForm& omega, const Mat& j, const std::vector<Vec>& frame) {
    const Chart& c = omega.chart();
    const std::size_t n = c.dim();
    if (omega.degree() != 2) fail("ShapeError", "omega must be a 2-form");
    Backend b = Backend::standard(c);
    const char* kind = "NotLagrangianFoliation";
    if (4 * frame.size() != n) fail(kind, "frame must have complex rank dim/4");
    require_type_10(j, frame, kind);
    for (std::size_t a = 0; a < frame.size(); ++a)
        for (std::size_t d = a + 1; d < frame.size(); ++d)
            if (!contract2(c, omega, frame[a], frame[d]).is_zero())
                fail(kind, "omega(X" + std::to_string(a) + ", X" + std::to_string(d) + ") != 0");
    std::vector<Section> emb;
    for (const auto& x : frame) emb.push_back(embed_vector(b, x));
    Frame ff = Frame::make(b, emb);
    require_involutive_vectors(c, ff, frame, kind);

    // omega^-1 on (1,0)-forms, landing in T^{1,0}.
    Mat proj = Scalar(kHalf) * (Mat::identity(n).bind_all(c.vars()) - Scalar(kI) * j);
    std::vector<Section> cand;
    for (std::size_t a = 0; a < n; ++a) cand.push_back(embed_vector(b, proj.col(a)));
    Frame t10 = Frame::greedy(b, cand, n / 2);
    std::vector<Section> images;
    for (const auto& s : t10.sections())
        images.push_back(embed_form(b, components(interior(vector_field(c, b.vec_part(s)), omega))));
    Frame img = Frame::make(b, images);
    auto inverse = [&](const DiffForm& alpha) {
        Vec co = img.coords(embed_form(b, components(alpha)));
        return b.vec_part(t10.combine(co));
    };

    TangentTable out{frame, std::vector<std::vector<Vec>>(frame.size(), std::vector<Vec>(frame.size()))};
    for (std::size_t a = 0; a < frame.size(); ++a)
        for (std::size_t d = 0; d < frame.size(); ++d) {
            DiffForm wy = interior(vector_field(c, frame[d]), omega);
            out.table[a][d] = inverse(interior(vector_field(c, frame[a]), del(wy, j)));
        }
    return out;
}

TangentTable hypercomplex_foliation_connection(const Chart& c, const Mat& theta, const Mat& j,
                                               const std::vector<Vec>& frame) {
    if (!j.is_constant()) fail("UnsupportedChart", "the foliation formula needs a constant complex structure");
    const std::size_t n = c.dim();
    if (theta.rows != n || j.rows != n) fail("ShapeError", "theta and j must be n x n");
    Backend b = Backend::standard(c);
    Mat th = theta.bind_all(c.vars()), jj = j.bind_all(c.vars());
    Mat thb = th.conj();
    Mat i = th + thb, k = GaussRat(0, -1) * (th - thb);
    std::vector<Vec> fr;
    for (const auto& x : frame) {
        if (x.size() != n) fail("ShapeError", "frame vectors must have length n");
        Vec y = x;
        for (auto& s : y) s = s.bind(c.vars());
        fr.push_back(y);
    }
    const char* kind = "NotStableFoliation";
    require_type_10(jj, fr, kind);
    std::vector<Section> emb, emb_bar;
    for (const auto& x : fr) {
        emb.push_back(embed_vector(b, x));
        emb_bar.push_back(embed_vector(b, conj(x)));
    }
    Frame ff = Frame::make(b, emb), fbar = Frame::make(b, emb_bar);
    for (std::size_t a = 0; a < fr.size(); ++a) {
        if (!fbar.try_coords(embed_vector(b, i * fr[a])))
            fail(kind, "span not stable under i at X" + std::to_string(a));
        if (!fbar.try_coords(embed_vector(b, k * fr[a])))
            fail(kind, "span not stable under k at X" + std::to_string(a));
    }
    require_involutive_vectors(c, ff, fr, kind);

    TangentTable out{fr, std::vector<std::vector<Vec>>(fr.size(), std::vector<Vec>(fr.size()))};
    for (std::size_t a = 0; a < fr.size(); ++a)
        for (std::size_t d = 0; d < fr.size(); ++d) {
            Vec z = thb * fr[d];
            Vec dz(n);
            for (std::size_t r = 0; r < n; ++r) {
                DiffForm f0(c, 0);
                f0.add({}, z[r]);
                dz[r] = interior(vector_field(c, fr[a]), del(f0, jj)).at({});
            }
            out.table[a][d] = -(th * dz);
        }
    return out;
}

Vec obata(const Chart& c, const Mat& i, const Mat& j, const Mat& k, const Vec& x, const Vec& y) {
    Vec ix = i * x, jy = j * y;
    Vec s = lie_bracket(c, jy, ix) - j * lie_bracket(c, y, ix) - i * lie_bracket(c, jy, x) + j * (i * lie_bracket(c, y, x));
    return Scalar(GaussRat::frac(-1, 2)) * (k * s);
}

}  // namespace hxc
