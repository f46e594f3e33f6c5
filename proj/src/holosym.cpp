#include "hxc/holosym.hpp"

#include "hxc/error.hpp"

namespace hxc {

namespace {

const GaussRat kHalf = GaussRat::frac(1, 2);
const GaussRat kI = GaussRat::I();

Endo conj_endo(const Endo& f) { return Endo(f.backend(), f.mat().conj()); }

Mat proj10(const Mat& j) { return kHalf * (Mat::identity(j.rows) - kI * j); }
Mat proj01(const Mat& j) { return kHalf * (Mat::identity(j.rows) + kI * j); }

json failed_names(const Report& r) {
    json out = json::array();
    for (const auto& c : r.checks)
        if (c.status != Status::Pass) out.push_back(c.name);
    return out;
}

// First frame section whose image under f is not the expected one.
json first_mismatch(const Backend& b, const std::vector<Section>& us, const std::function<Section(const Section&)>& got,
                    const std::function<Section(const Section&)>& want) {
    for (std::size_t a = 0; a < us.size(); ++a) {
        Section g = got(us[a]), w = want(us[a]);
        if (!section_eq(g, w))
            return json{{"index", a}, {"got", section_json(b, g)}, {"expected", section_json(b, w)}};
    }
    return nullptr;
}

Triple triple_of(const Endo& j, const Endo& w) {
    Endo wb = conj_endo(w);
    return Triple(w + wb, j, Scalar(-kI) * (w - wb));
}

// Value of a 3-form given on the standard frame at arbitrary sections.
Scalar eval3(const NijenhuisForm& n, const Section& u, const Section& v, const Section& w, const Scalar& zero) {
    Scalar s = zero;
    for (std::size_t a = 0; a < n.rank; ++a) {
        if (u[a].is_zero()) continue;
        for (std::size_t b = 0; b < n.rank; ++b) {
            if (v[b].is_zero()) continue;
            Scalar uv = u[a] * v[b];
            for (std::size_t c = 0; c < n.rank; ++c) {
                if (w[c].is_zero()) continue;
                const Scalar& x = n(a, b, c);
                if (!x.is_zero()) s += uv * w[c] * x;
            }
        }
    }
    return s;
}

bool wedge2_L(const Endo& j, const Endo& w, const DualPair& p) {
    for (const Section& x : p.l.sections())
        if (!is_zero(w(x))) return false;
    for (const Section& xi : p.lstar.sections()) {
        Section y = w(xi);
        if (!section_eq(j(y), Scalar(kI) * y)) return false;
    }
    return true;
}

}  // namespace

Report holosym_invariants(const Endo& j, const Endo& w) {
    require_same_backend(j.backend(), w.backend());
    const Backend& b = j.backend();
    Report rep;
    rep.title = "holomorphic symplectic invariants";
    rep.conventions.push_back("Omega(xi, eta) = <Omega# xi, eta>, raw pairing");
    Report cs = complex_structure_check(j);
    rep.add(kComplex, cs.passed(), failed_names(cs));
    Check sk = is_skew(w);
    rep.add(kSkew, sk.status == Status::Pass, sk.witness);
    std::optional<DualPair> p;
    try {
        p = eigenframe(j);
    } catch (const Error& e) {
        for (const char* n : {kKillsL, kIntoL}) rep.add_error(n, e.kind(), e.what());
    }
    if (p) {
        json kill = first_mismatch(b, p->l.sections(), [&](const Section& x) { return w(x); },
                                   [&](const Section&) { return b.zero(); });
        rep.add(kKillsL, kill.is_null(), kill);
        json into = first_mismatch(b, p->lstar.sections(), [&](const Section& x) { return j(w(x)); },
                                   [&](const Section& x) { return Scalar(kI) * w(x); });
        rep.add(kIntoL, into.is_null(), into, "J Omega# xi = i Omega# xi");
    }
    Endo wb = conj_endo(w);
    Mat r = (w * wb + wb * w).mat() + Mat::identity(b.rank());
    rep.add(kOmega1, r.is_zero(), r.is_zero() ? json(nullptr) : json{{"residual", mat_json(r)}},
            "Omega# conj Omega# + conj Omega# Omega# = -id");
    if (p) {
        try {
            FrameForm dom = algebroid_d(two_form_of(p->lstar, w));
            rep.add(kClosed, dom.is_zero(), dom.is_zero() ? json(nullptr) : dom.to_json());
        } catch (const Error& e) {
            rep.add_error(kClosed, e.kind(), e.what());
        }
    } else {
        rep.add_error(kClosed, "NoEigenframe", "eigenframe unavailable");
    }
    return rep;
}

HoloSymp holosym(const Endo& j, const Endo& w) {
    Report rep = holosym_invariants(j, w);
    for (const auto& c : rep.checks)
        if (c.status != Status::Pass) throw InvariantViolated(c.name, "holomorphic symplectic invariant fails");
    DualPair p = eigenframe(j);
    FrameForm om = two_form_of(p.lstar, w);
    return HoloSymp{j, w, std::move(p), std::move(om), std::move(rep)};
}

HoloSymp from_triple(const Triple& t) {
    Report r;
    try {
        r = hypercomplex_check(t);
    } catch (const Error& e) {
        fail("NotHypercomplex", e.what());
    }
    if (!r.passed()) fail("NotHypercomplex", "triple fails " + failed_names(r).dump());
    return holosym(t.J, Scalar(kHalf) * (t.I + Scalar(kI) * t.K));
}

Triple to_triple(const Endo& j, const Endo& w) {
    holosym(j, w);
    return triple_of(j, w);
}

const char* membership_name(Membership m) {
    switch (m) {
        case Membership::InLstar: return "in_Lstar";
        case Membership::InL: return "in_L";
        case Membership::Neither: return "neither";
        case Membership::Zero: return "zero";
    }
    return "";
}

MembershipResult eigen_membership(const Triple& t, const Section& e) {
    const Backend& b = t.J.backend();
    b.require(e);
    Endo w = Scalar(kHalf) * (t.I + Scalar(kI) * t.K);
    Endo wb = conj_endo(w);
    Section ie = t.I(e), ike = Scalar(kI) * t.K(e), je = t.J(e), ie_ = Scalar(kI) * e;
    bool star_char = section_eq(w(e), ie) && section_eq(ie, ike);
    bool l_char = section_eq(wb(e), ie) && section_eq(ie, -ike);
    bool star_proj = section_eq(je, -ie_);
    bool l_proj = section_eq(je, ie_);
    MembershipResult out{Membership::Neither, {}};
    Report& rep = out.report;
    rep.title = "eigen_membership";
    rep.add("Omega# e = Ie = iKe <=> Je = -ie", star_char == star_proj,
            json{{"characterization", star_char}, {"projection", star_proj}});
    rep.add("conj Omega# e = Ie = -iKe <=> Je = ie", l_char == l_proj,
            json{{"characterization", l_char}, {"projection", l_proj}});
    if (star_char && l_char) out.kind = Membership::Zero;
    else if (star_char) out.kind = Membership::InLstar;
    else if (l_char) out.kind = Membership::InL;
    rep.data["membership"] = membership_name(out.kind);
    return out;
}

Report closedness_equivalences(const Endo& j, const Endo& w) {
    require_same_backend(j.backend(), w.backend());
    const Backend& b = j.backend();
    DualPair p = eigenframe(j);
    Endo wb = conj_endo(w);
    if (!(w * wb + wb * w == -Endo::identity(b)) || !wedge2_L(j, w, p))
        fail("NondegeneracyFailed", "Omega# is not a nondegenerate section of wedge^2 L_J");
    Report rep;
    rep.title = "closedness equivalences";
    rep.conventions.push_back("N_{F,G}(u, v, w) = <N(F,G)(u, v), w>, extended complex-linearly");
    rep.conventions.push_back("d_{L*}Omega extended by zero off wedge^3 L*; conj dOmega(u, v, w) = conj(dOmega(conj u, conj v, conj w))");
    rep.add(kOmega1, true);

    FrameForm om = two_form_of(p.lstar, w);
    FrameForm dom = algebroid_d(om);
    FrameForm br = schouten_L(p, om, om);
    FrameForm mc = dom + kHalf * br;
    bool c1 = br.is_zero(), c2 = dom.is_zero(), c3 = mc.is_zero();
    rep.add("[Omega,Omega] = 0", c1, c1 ? json(nullptr) : br.to_json());
    rep.add("d_{L*} Omega = 0", c2, c2 ? json(nullptr) : dom.to_json());
    rep.add("d_{L*} Omega + 1/2 [Omega,Omega] = 0", c3, c3 ? json(nullptr) : mc.to_json());
    rep.add("conditions agree", c1 == c2 && c2 == c3, json{{"bracket", c1}, {"closed", c2}, {"maurer-cartan", c3}});

    // Nijenhuis forms against dOmega on the frame L* + L of E_C.
    Triple t = triple_of(j, w);
    NijenhuisForm nij = nijenhuis_form(t.I, t.J);
    NijenhuisForm njk = nijenhuis_form(t.J, t.K);
    const std::size_t n = p.lstar.size();
    std::vector<Section> fr = p.lstar.sections();
    for (const Section& x : p.l.sections()) fr.push_back(x);
    auto d_ext = [&](std::size_t a, std::size_t bb, std::size_t c) -> Scalar {
        if (a < n && bb < n && c < n) return dom.at({int(a), int(bb), int(c)});
        return b.constant(GaussRat(0));
    };
    auto cd_ext = [&](std::size_t a, std::size_t bb, std::size_t c) -> Scalar {
        if (a >= n && bb >= n && c >= n) return dom.at({int(a - n), int(bb - n), int(c - n)}).conj();
        return b.constant(GaussRat(0));
    };
    const Scalar zero = b.constant(GaussRat(0));
    const GaussRat quarter = GaussRat::frac(1, 4);
    const GaussRat inv2i = GaussRat(1) / (GaussRat(2) * kI);
    json w1 = nullptr, w2 = nullptr;
    bool nonzero = false;
    for (std::size_t a = 0; a < fr.size(); ++a)
        for (std::size_t bb = a + 1; bb < fr.size(); ++bb)
            for (std::size_t c = bb + 1; c < fr.size(); ++c) {
                Scalar d = d_ext(a, bb, c), cd = cd_ext(a, bb, c);
                Scalar l1 = quarter * eval3(nij, fr[a], fr[bb], fr[c], zero);
                Scalar r1 = inv2i * (d - cd);
                Scalar l2 = -quarter * eval3(njk, fr[a], fr[bb], fr[c], zero);
                Scalar r2 = kHalf * (d + cd);
                nonzero = nonzero || !l1.is_zero() || !l2.is_zero();
                json slots = json::array({a, bb, c});
                if (w1.is_null() && l1 != r1)
                    w1 = json{{"slots", slots}, {"lhs", scalar_json(l1)}, {"rhs", scalar_json(r1)}};
                if (w2.is_null() && l2 != r2)
                    w2 = json{{"slots", slots}, {"lhs", scalar_json(l2)}, {"rhs", scalar_json(r2)}};
            }
    rep.add("1/4 N_{I,J} = (dOmega - conj dOmega)/2i", w1.is_null(), w1);
    rep.add("-1/4 N_{J,K} = (dOmega + conj dOmega)/2", w2.is_null(), w2);
    rep.data["Nijenhuis forms nonzero"] = nonzero;

    FrameForm cdom = dom.conj();
    json w3 = nullptr;
    const Frame& f = p.lstar;
    for (std::size_t a = 0; a < n && w3.is_null(); ++a)
        for (std::size_t bb = a + 1; bb < n && w3.is_null(); ++bb)
            for (std::size_t c = bb + 1; c < n && w3.is_null(); ++c) {
                Scalar lhs = kHalf * br.at({int(a), int(bb), int(c)});
                Scalar rhs = cdom.eval({w(f[a]), w(f[bb]), w(f[c])});
                if (lhs != rhs) w3 = json{{"slots", {a, bb, c}}, {"lhs", scalar_json(lhs)}, {"rhs", scalar_json(rhs)}};
            }
    rep.add("1/2 [Omega,Omega](xi,eta,zeta) = conj dOmega(Omega# xi, Omega# eta, Omega# zeta)", w3.is_null(), w3);
    return rep;
}

Deformation deformation_family(const HoloSymp& h, const GaussRat& a, const GaussRat& bb) {
    const Backend& b = h.J.backend();
    Triple t = triple_of(h.J, h.omega_sharp);
    GaussRat r2 = a * a + bb * bb;
    GaussRat norm = GaussRat(1) + r2;
    Endo s = (GaussRat(1) / norm) * ((GaussRat(1) - r2) * t.J + (GaussRat(2) * a) * t.K + (GaussRat(2) * bb) * t.I);
    Endo e = Endo::identity(b) + a * t.I - bb * t.K;
    Endo ebar = Endo::identity(b) - a * t.I + bb * t.K;
    Endo shift = Endo::identity(b) + (a + bb * kI) * h.omega_sharp;
    std::vector<Section> secs;
    for (const Section& xi : h.pair.lstar.sections()) secs.push_back(shift(xi));
    Frame f = Frame::make(b, secs, true);
    Deformation out{s, f, {}};
    Report& rep = out.report;
    rep.title = "deformation family";
    rep.conventions.push_back("S = ((1 - a^2 - b^2) J + 2a K + 2b I) / (1 + a^2 + b^2)");
    rep.merge(complex_structure_check(s), "S: ");
    json eig = first_mismatch(b, secs, [&](const Section& x) { return s(x); },
                              [&](const Section& x) { return Scalar(-kI) * x; });
    rep.add("frame is the -i eigenframe of S", eig.is_null() && 2 * f.size() == b.rank(), eig);
    json same = first_mismatch(b, h.pair.lstar.sections(), [&](const Section& x) { return e(x); },
                               [&](const Section& x) { return shift(x); });
    rep.add("(1 + aI - bK) xi = (1 + (a + bi) Omega#) xi on L*", same.is_null(), same);
    Endo lhs = e * t.J * ebar;
    Endo rhs = (GaussRat(1) - r2) * t.J + (GaussRat(2) * a) * t.K + (GaussRat(2) * bb) * t.I;
    rep.add("(1 + aI - bK) J (1 - aI + bK) = (1 - a^2 - b^2) J + 2a K + 2b I", lhs == rhs,
            lhs == rhs ? json(nullptr) : json{{"residual", mat_json((lhs - rhs).mat())}});
    Endo prod = e * ebar;
    Endo want = norm * Endo::identity(b);
    rep.add("(1 + aI - bK)(1 - aI + bK) = (1 + a^2 + b^2) id", prod == want,
            prod == want ? json(nullptr) : json{{"residual", mat_json((prod - want).mat())}});
    rep.data["S"] = mat_json(s.mat());
    rep.data["frame"] = frame_json(f);
    return out;
}

Section omega_sharp_apply(const DualPair& p, const FrameForm& omega, const Section& xi) {
    Vec c(p.lstar.size());
    for (std::size_t a = 0; a < c.size(); ++a) c[a] = omega.eval({xi, p.lstar[a]});
    return p.ldual.combine(c);
}

Report deformation_check(const DualPair& p, const FrameForm& omega) {
    const Frame& f = p.lstar;
    const Backend& b = f.backend();
    Report rep;
    rep.title = "deformation check";
    FrameForm mc = algebroid_d(omega) + kHalf * schouten_L(p, omega, omega);
    bool mc_ok = mc.is_zero();
    rep.add("d_{L*} Omega + 1/2 [Omega,Omega] = 0", mc_ok, mc_ok ? json(nullptr) : mc.to_json());

    auto sh = [&](const Section& xi) { return omega_sharp_apply(p, omega, xi); };
    Mat m(f.size(), f.size());
    for (std::size_t a = 0; a < f.size(); ++a) {
        Section y = sh(f[a]);
        Section back = conj(sh(conj(y)));
        Vec c = f.coords(back - f[a]);
        for (std::size_t r = 0; r < f.size(); ++r) m(r, a) = c[r];
    }
    Scalar dt = det(m);
    bool inv = dt.is_constant() && !dt.is_zero();
    rep.add("conj Omega# Omega# - id invertible on L*", inv, json{{"det", scalar_json(dt)}});
    rep.data["det"] = scalar_json(dt);

    // u lies in the graph of Omega# iff its L part is Omega# of its L* part; no frame certificate needed.
    const Endo& J = p.J;
    auto defect_of = [&](const Section& u) {
        Section star = Scalar(kHalf) * (u + Scalar(kI) * J(u));
        return Scalar(kHalf) * (u - Scalar(kI) * J(u)) - sh(star);
    };
    std::vector<Section> secs;
    for (const Section& xi : f.sections()) secs.push_back(xi + sh(xi));
    json defect = nullptr;
    for (std::size_t a = 0; a < secs.size() && defect.is_null(); ++a)
        for (std::size_t c = a + 1; c < secs.size() && defect.is_null(); ++c) {
            Section r = defect_of(b.dorfman(secs[a], secs[c]));
            if (!is_zero(r)) defect = json{{"pair", {a, c}}, {"defect", section_json(b, r)}};
        }
    bool invol = defect.is_null();
    rep.add("(1 + Omega#) L* involutive", invol, defect);
    rep.add("Maurer-Cartan <=> involutive", mc_ok == invol, json{{"maurer-cartan", mc_ok}, {"involutive", invol}});
    rep.data["eigenbundle of a complex structure"] = mc_ok && inv;
    return rep;
}

Decomposition decompose(const HoloSymp& h) { return decompose(h.J, h.omega_sharp); }

Decomposition decompose(const Endo& J, const Endo& w) {
    require_same_backend(J.backend(), w.backend());
    const Backend& b = J.backend();
    if (!b.is_chart() || b.twist() || b.rank() != 2 * b.dim())
        fail("WrongShape", "decomposition needs the untwisted standard T + T*");
    const Chart& c = b.chart();
    Mat j = J.block(0, 0);
    if (!J.block(0, 1).is_zero() || !J.block(1, 0).is_zero() || J.block(1, 1) != -j.transpose())
        fail("WrongShape", "J is not diag(j, -j*)");
    Mat A = w.block(0, 0), P = w.block(0, 1), W = w.block(1, 0), D = w.block(1, 1);
    Decomposition out{j, A, bivector_from_sharp(c, P), form_from_sharp(c, W), {}};
    Report& rep = out.report;
    rep.title = "decomposition";
    rep.conventions.push_back("Omega# = [[theta#, pi#], [omega#, -theta#*]] in the (vector, form) blocks");
    rep.conventions.push_back("pi#(xi) = pi(xi, .), omega#(X) = iota_X omega");
    const std::size_t n = c.dim();
    Mat p10 = proj10(j);
    Mat ps01 = kHalf * (Mat::identity(n) + kI * j.transpose());  // -i eigenprojector of j* on forms

    bool skew_p = P.transpose() == -P, skew_w = W.transpose() == -W;
    rep.add("pi# and omega# skew, lower-right block = -theta#*", skew_p && skew_w && D == -A.transpose());
    Endo re = Endo::from_blocks(b, A, skew_p ? sharp(out.pi) : P, skew_w ? sharp(out.omega) : W, -A.transpose());
    rep.add("reassembles to Omega#", re == w);
    rep.add("pi in wedge^2 T^{1,0}", type_project(out.pi, j, 2, 0) == out.pi);
    rep.add("theta in T^{1,0} wedge (T^{0,1})*", p10 * A == A && (A * p10).is_zero());
    rep.add("omega in wedge^2 (T^{0,1})*", type_project(out.omega, j, 0, 2) == out.omega);

    // Nondegeneracy, block by block.
    Mat Ab = A.conj(), Pb = P.conj(), Wb = W.conj(), Db = D.conj();
    auto alg = [&](const std::string& name, const Mat& lhs, const Mat& rhs) {
        rep.add(name, lhs == rhs, lhs == rhs ? json(nullptr) : json{{"residual", mat_json(lhs - rhs)}});
    };
    alg("pi# conj theta# + theta# conj pi# = 0", (P * Db + A * Pb) * ps01, Mat(n, n));
    alg("pi# conj omega# + theta# conj theta# = -1", (P * Wb + A * Ab) * p10, -p10);
    alg("omega# conj pi# + theta# conj theta# = -1", (W * Pb + D * Db) * ps01, -ps01);
    alg("omega# conj theta# + theta# conj omega# = 0", (W * Ab + D * Wb) * p10, Mat(n, n));

    // dbar of each component.
    bool integrable = is_integrable(c, j);
    DiffForm dw = dbar(out.omega, j, false);
    rep.add("dbar omega = 0", dw.is_zero(), dw.is_zero() ? json(nullptr) : alt_json(dw));
    Mat q01 = proj01(j);
    json dpi = json::array(), dth = json::array();
    for (std::size_t a = 0; a < n; ++a) {
        Vec xa = q01.col(a);
        MultiVec part = type_project(schouten(vector_field(c, xa), out.pi), j, 2, 0);
        if (!part.is_zero()) dpi.push_back(json{{"direction", a}, {"residual", alt_json(part)}});
        for (std::size_t s = a + 1; s < n; ++s) {
            Vec ys = q01.col(s);
            Vec r = p10 * lie_bracket(c, xa, A * ys) - p10 * lie_bracket(c, ys, A * xa) - A * lie_bracket(c, xa, ys);
            if (!is_zero(r)) dth.push_back(json{{"directions", {a, s}}, {"residual", vec_json(r)}});
        }
    }
    rep.add("dbar pi = 0", dpi.empty(), dpi);
    rep.add("dbar theta = 0", dth.empty(), dth, "dbar theta(X, Y) = [X, theta Y]^{1,0} - [Y, theta X]^{1,0} - theta[X, Y]");

    // Schouten conditions by the number of (T^{1,0})* slots on a pure L* frame.
    DualPair p = eigenframe(J);
    const Frame& f = p.lstar;
    std::vector<bool> is_form(f.size());
    for (std::size_t a = 0; a < f.size(); ++a) {
        bool v = !is_zero(b.vec_part(f[a])), fm = !is_zero(b.form_part(f[a]));
        if (v && fm) fail("WrongShape", "eigenframe of J is not split into vectors and forms");
        is_form[a] = fm;
    }
    FrameForm br = schouten_L(p, two_form_of(f, w), two_form_of(f, w));
    const char* names[4] = {"[theta,omega] = 0", "2[pi,omega] + [theta,theta] = 0", "[pi,theta] = 0", "[pi,pi] = 0"};
    json wit[4] = {json::array(), json::array(), json::array(), json::array()};
    for (const auto& [idx, v] : br.comps()) {
        int forms = 0;
        for (int a : idx) forms += is_form[static_cast<std::size_t>(a)] ? 1 : 0;
        wit[forms].push_back(json{{"slots", idx}, {"value", scalar_json(v)}});
    }
    for (int k = 3; k >= 0; --k) rep.add(names[k], wit[k].empty(), wit[k]);

    if (integrable) {
        MultiVec re_pi = kHalf * (out.pi + out.pi.conj());
        MultiVec im_pi = Scalar(-kHalf * kI) * (out.pi - out.pi.conj());
        rep.merge(holomorphic_poisson_check(re_pi, im_pi, j), "pi: ");
    } else {
        rep.add("j integrable", false, "dbar is not a differential");
    }
    rep.data["theta#"] = mat_json(A);
    rep.data["pi"] = alt_json(out.pi);
    rep.data["omega"] = alt_json(out.omega);
    return out;
}

namespace {

void require_hypercomplex_base(const HyperPoisson& hp) {
    const Chart& c = hp.chart;
    Mat m1 = -Mat::identity(c.dim());
    if (hp.i * hp.i != m1 || hp.j * hp.j != m1 || hp.k * hp.k != m1 || hp.i * hp.j * hp.k != m1)
        fail("NotHypercomplexBase", "(i, j, k) violates the quaternionic relations");
    for (const Mat* e : {&hp.i, &hp.j, &hp.k})
        if (!is_integrable(c, *e)) fail("NotHypercomplexBase", "a base structure has nonzero Nijenhuis torsion");
}

}  // namespace

Report hyper_poisson_check(const HyperPoisson& hp) {
    require_hypercomplex_base(hp);
    const Chart& c = hp.chart;
    Report rep;
    rep.title = "hyper-Poisson";
    rep.conventions.push_back("pairs (pi2, -pi3) for i, (pi3, -pi1) for j, (pi1, -pi2) for k");
    rep.merge(holomorphic_poisson_check(hp.pi2, -hp.pi3, hp.i), "i: ");
    rep.merge(holomorphic_poisson_check(hp.pi3, -hp.pi1, hp.j), "j: ");
    rep.merge(holomorphic_poisson_check(hp.pi1, -hp.pi2, hp.k), "k: ");

    const MultiVec* pis[3] = {&hp.pi1, &hp.pi2, &hp.pi3};
    json br = json::array();
    for (int a = 0; a < 3; ++a)
        for (int s = a; s < 3; ++s) {
            MultiVec x = schouten(*pis[a], *pis[s]);
            if (!x.is_zero()) br.push_back(json{{"pair", {a + 1, s + 1}}, {"value", alt_json(x)}});
        }
    rep.add("(1) [pi_a, pi_b] = 0", br.empty(), br);
    Mat p1 = sharp(hp.pi1), p2 = sharp(hp.pi2), p3 = sharp(hp.pi3);
    Mat it = hp.i.transpose(), jt = hp.j.transpose(), kt = hp.k.transpose();
    auto chain = [&](const std::string& name, const std::vector<Mat>& ms) {
        json w = nullptr;
        for (std::size_t t = 1; t < ms.size() && w.is_null(); ++t)
            if (ms[t] != ms[0]) w = json{{"term", t}, {"first", mat_json(ms[0])}, {"other", mat_json(ms[t])}};
        rep.add(name, w.is_null(), w);
    };
    chain("(2) pi3# = i pi2# = pi2# i*", {p3, hp.i * p2, p2 * it});
    chain("(2) pi1# = j pi3# = pi3# j*", {p1, hp.j * p3, p3 * jt});
    chain("(2) pi2# = k pi1# = pi1# k*", {p2, hp.k * p1, p1 * kt});
    chain("(3) i pi1# = -pi1# i* = j pi2# = -pi2# j* = k pi3# = -pi3# k*",
          {hp.i * p1, -(p1 * it), hp.j * p2, -(p2 * jt), hp.k * p3, -(p3 * kt)});

    auto w1 = inverse_unit(p1);
    rep.data["pi1 invertible"] = w1.has_value();
    if (!w1) return rep;
    auto w2 = inverse_unit(p2), w3 = inverse_unit(p3);
    rep.add("pi2, pi3 invertible", w2 && w3);
    if (!w2 || !w3) return rep;
    DiffForm om[3] = {form_from_sharp(c, *w1), form_from_sharp(c, *w2), form_from_sharp(c, *w3)};
    const Mat* base[3] = {&hp.i, &hp.j, &hp.k};
    const char* bn[3] = {"i", "j", "k"};
    for (int a = 0; a < 3; ++a) {
        // w_{a+1} + sqrt(-1) w_{a+2} with respect to the a-th structure.
        const DiffForm& re = om[(a + 1) % 3];
        const DiffForm& im = om[(a + 2) % 3];
        DiffForm hol = re + kI * im;
        std::string name = "w" + std::to_string((a + 1) % 3 + 1) + " + i w" + std::to_string((a + 2) % 3 + 1);
        rep.add(name + " has type (2,0) for " + bn[a], type_project(hol, *base[a], 2, 0) == hol);
        DiffForm d = ext_d(hol);
        rep.add("d(" + name + ") = 0", d.is_zero(), d.is_zero() ? json(nullptr) : alt_json(d));
    }
    Mat ip1 = hp.i * p1;
    auto g = inverse_unit(ip1);
    if (!g) {
        rep.add("g = (i pi1#)^-1 exists", false);
        return rep;
    }
    rep.add("g symmetric", g->transpose() == *g, json{{"g", mat_json(*g)}});
    chain("w1# = g i, w2# = g j, w3# = g k",
          {*w1 - *g * hp.i, *w2 - *g * hp.j, *w3 - *g * hp.k, Mat(c.dim(), c.dim())});
    rep.data["g"] = mat_json(*g);
    std::vector<GaussRat> origin(c.dim(), GaussRat(0));
    bool pos = true;
    for (std::size_t r = 1; r <= c.dim(); ++r) {
        std::vector<std::size_t> lead(r);
        for (std::size_t t = 0; t < r; ++t) lead[t] = t;
        GaussRat m = det(select(*g, lead, lead)).eval(origin);
        if (!m.is_real() || sgn(m.re) <= 0) pos = false;
    }
    rep.data["g positive definite at origin"] = pos;
    return rep;
}

Triple hyper_poisson_triple(const HyperPoisson& hp) {
    Backend b = Backend::standard(hp.chart);
    const std::size_t n = hp.chart.dim();
    Mat z(n, n);
    Mat p1 = sharp(hp.pi1), p3 = sharp(hp.pi3);
    return Triple(Endo::from_blocks(b, hp.i, p3, z, -hp.i.transpose()),
                  Endo::from_blocks(b, hp.j, z, z, -hp.j.transpose()),
                  Endo::from_blocks(b, hp.k, -p1, z, -hp.k.transpose()));
}

Report hyper_poisson_equivalence(const HyperPoisson& hp) {
    Report rep;
    rep.title = "hyper-Poisson equivalence";
    bool a1 = false, a2 = false, a3 = false;
    try {
        Report r = hyper_poisson_check(hp);
        a1 = r.passed();
        rep.merge(r, "(1) ");
    } catch (const Error& e) {
        rep.add_error("(1) hypercomplex base", e.kind(), e.what());
    }
    Triple t = hyper_poisson_triple(hp);
    try {
        Report r = hypercomplex_check(t);
        a2 = r.passed();
        rep.merge(r, "(2) ");
    } catch (const Error& e) {
        rep.add_error("(2) hypercomplex triple", e.kind(), e.what());
    }
    Endo w = Scalar(kHalf) * (t.I + Scalar(kI) * t.K);
    Report inv = holosym_invariants(t.J, w);
    a3 = inv.passed();
    rep.merge(inv, "(3) ");
    Mat theta = kHalf * (hp.i + kI * hp.k);
    Mat pi = kHalf * (sharp(hp.pi3) - kI * sharp(hp.pi1));
    rep.add("(3) theta# = (i + sqrt(-1) k)/2", w.block(0, 0) == theta);
    rep.add("(3) pi# = (pi3# - sqrt(-1) pi1#)/2", w.block(0, 1) == pi);
    rep.add("assertions concur", a1 == a2 && a2 == a3, json{{"(1)", a1}, {"(2)", a2}, {"(3)", a3}});
    rep.data["assertions"] = json{{"(1)", a1}, {"(2)", a2}, {"(3)", a3}};
    return rep;
}

}  // namespace hxc
