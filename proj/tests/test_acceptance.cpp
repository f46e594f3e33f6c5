// One line per acceptance criterion; exits nonzero if any fails.

#include "builders.hpp"
#include "hxc/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace hxt;

namespace {

const GaussRat kI = GaussRat::I();

struct Tally {
    long checks = 0;
    std::vector<std::string> failures;

    void need(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
    void need(const Report& r, const std::string& what) {
        ++checks;
        if (r.passed()) return;
        std::string bad;
        for (const auto& c : r.checks)
            if (c.status != Status::Pass) bad += (bad.empty() ? "" : "; ") + c.name;
        failures.push_back(what + " [" + bad + "]");
    }
};

Section sec(const Backend& b, const std::vector<std::string>& xs) { return vec(b.chart(), xs); }

Scene fixture(const std::string& name) { return load_scene(std::string(HXC_FIXTURES) + "/" + name); }

Endo omega_sharp(const Triple& t) { return GaussRat::frac(1, 2) * (t.I + Scalar(kI) * t.K); }

std::vector<std::pair<std::string, Triple>> hypercomplex_fixtures() {
    return {{"FLATQ", flatq()}, {"FLATQ-B", flatq_b()}, {"C2STD", c2std()}, {"HPT", hpt()}};
}

bool same(const Triple& a, const Triple& b) {
    return a.I.mat() == b.I.mat() && a.J.mat() == b.J.mat() && a.K.mat() == b.K.mat();
}

Scalar random_scalar(Rng& rng, const Backend& b) {
    return b.is_chart() ? rng.poly(b.chart().vars(), 2, 3) : b.constant(rng.coeff());
}

void c1_axioms(Tally& t) {
    t.need(verify_axioms(Backend::standard(R(2))), "R^2");
    t.need(verify_axioms(Backend::standard(R(4))), "R^4");
    Scene tw = fixture("twist-c2.json");
    t.need(tw.b().twist().has_value() && ext_d(*tw.b().twist()).is_zero(), "TWIST-C2 carries a closed twist");
    t.need(verify_axioms(tw.b()), "TWIST-C2");
    t.need(verify_axioms(Backend::quaternions()), "HPT");

    Scene neg = fixture("twist-c3-neg.json");
    t.need(verify_axioms(neg.b()), "TWIST-C3-NEG axioms");
    Endo j = neg.endo("J");
    Report r = complex_structure_check(j);
    t.need(r.ok("J^2 = -1") && r.ok("J orthogonal"), "TWIST-C3-NEG J almost complex");
    t.need(!r.ok("N(J,J) = 0"), "TWIST-C3-NEG N(J,J) fails");
    const json& w = r.get("N(J,J) = 0").witness;
    bool witnessed = !w.is_null();
    if (witnessed) {
        Section v = parse_section(neg, w["value"]);
        witnessed = !is_zero(v) && section_eq(v, nijenhuis(j, j, neg.section(w["U"]), neg.section(w["V"])));
    }
    t.need(witnessed, "TWIST-C3-NEG witness is a nonzero N(J,J)(U,V)");
    t.need(is_integrable(neg.chart(), neg.tangent_endo("j")), "TWIST-C3-NEG: the obstruction comes from the twist");
}

void c2_hypercomplex(Tally& t) {
    std::vector<std::pair<std::string, Triple>> all = hypercomplex_fixtures();
    for (const auto& [name, tr] : all) {
        t.need(quaternionic_check(tr), name + " quaternionic");
        Report r = hypercomplex_check(tr);
        for (const char* n : {"N(I,I) = 0", "N(I,J) = 0", "N(I,K) = 0", "N(J,J) = 0", "N(J,K) = 0", "N(K,K) = 0"})
            t.need(r.ok(n), name + " " + n);
    }
    Triple n = nonint();
    t.need(quaternionic_check(n), "NONINT quaternionic");
    Report rn = hypercomplex_check(n);
    t.need(!rn.passed(), "NONINT fails");
    t.need(!rn.ok("N(I,J) = 0") && !rn.get("N(I,J) = 0").witness.is_null(), "NONINT N(I,J) witness");

    all.push_back({"NONINT", n});
    for (const auto& b : broken_omegas()) all.push_back(b);
    for (const auto& [name, tr] : all) {
        bool vanish[3][3];
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) vanish[a][c] = nijenhuis_on_frame(tr[a], tr[c]).empty();
        bool six = true;
        for (auto& row : vanish)
            for (bool v : row) six = six && v;
        t.need(vanish[0][1] == six, name + ": N(I,J) = 0 iff all six vanish");
    }
}

void c3_connection(Tally& t) {
    Rng rng(3003);
    for (const auto& [name, tr] : hypercomplex_fixtures()) {
        Connection c(tr);
        const Backend& b = c.backend();
        t.need(parallelism_report(c), name + " nabla I = nabla J = nabla K = 0");
        std::vector<std::pair<Section, Section>> pairs;
        for (std::size_t x = 0; x < b.rank(); ++x)
            for (std::size_t y = 0; y < b.rank(); ++y) pairs.push_back({b.frame(x), b.frame(y)});
        for (int k = 0; k < 20; ++k) {
            auto x = static_cast<std::size_t>(rng.range(0, static_cast<long>(b.rank()) - 1));
            auto y = static_cast<std::size_t>(rng.range(0, static_cast<long>(b.rank()) - 1));
            pairs.push_back({random_scalar(rng, b) * b.frame(x), random_scalar(rng, b) * b.frame(y)});
        }
        bool torsion = true, balanced = true;
        for (const auto& [u, v] : pairs) {
            auto [tv, rhs] = c.torsion(u, v);
            torsion = torsion && section_eq(tv, rhs);
            balanced = balanced && section_eq(c.torsion_corrected(u, v), rhs);
        }
        t.need(torsion, name + " torsion on frame pairs and 20 scaled pairs");
        t.need(balanced, name + " corrected torsion balances");

        DualPair p = eigenframe(tr.J);
        bool flat = true;
        for (const Frame* f : {&p.lstar, &p.l})
            for (std::size_t x = 0; x < f->size(); ++x)
                for (std::size_t y = 0; y < f->size(); ++y)
                    for (std::size_t z = 0; z < f->size(); ++z) flat = flat && is_zero(c.curvature((*f)[x], (*f)[y], (*f)[z]));
        t.need(flat, name + " curvature vanishes on pure eigen-slots");

        if (!b.is_chart()) continue;
        bool leibniz = true;
        for (int k = 0; k < 10; ++k) {
            Scalar f = rng.poly(b.chart().vars(), 2, 3);
            Section u(b.rank()), v(b.rank());
            for (auto& e : u) e = rng.poly(b.chart().vars(), 1, 2);
            for (auto& e : v) e = rng.poly(b.chart().vars(), 1, 2);
            Section anomaly = c(u, f * v) - b.anchor(u, f) * v - f * c(u, v);
            leibniz = leibniz && section_eq(anomaly, -c.delta(f, u, v));
        }
        t.need(leibniz, name + " Leibniz anomaly = -Delta_f for 10 random f");
    }

    Connection nc(nonint(), false);
    const Backend& b = nc.backend();
    bool balanced = true, plain = true;
    for (std::size_t x = 0; x < b.rank(); ++x)
        for (std::size_t y = 0; y < b.rank(); ++y) {
            auto [tv, rhs] = nc.torsion(b.frame(x), b.frame(y));
            balanced = balanced && section_eq(nc.torsion_corrected(b.frame(x), b.frame(y)), rhs);
            plain = plain && section_eq(tv, rhs);
        }
    for (int k = 0; k < 20; ++k) {
        Section u = random_scalar(rng, b) * b.frame(static_cast<std::size_t>(rng.range(0, 7)));
        Section v = random_scalar(rng, b) * b.frame(static_cast<std::size_t>(rng.range(0, 7)));
        balanced = balanced && section_eq(nc.torsion_corrected(u, v), nc.torsion(u, v).second);
    }
    t.need(balanced, "NONINT corrected torsion balances");
    t.need(!plain, "NONINT uncorrected torsion identity fails");
}

void c4_correspondence(Tally& t) {
    std::vector<std::pair<std::string, Triple>> all = hypercomplex_fixtures();
    t.need(duality_scale() == GaussRat(1), "one calibration constant");
    for (const auto& [name, tr] : all) {
        HoloSymp h = from_triple(tr);
        t.need(same(to_triple(h), tr), name + " to_triple(from_triple(T)) = T");
        t.need(from_triple(to_triple(h)).omega_sharp == h.omega_sharp, name + " from_triple(to_triple(Omega)) = Omega");
        t.need(h.report.ok(kOmega1), name + " Omega1");
    }
    for (const auto& b : broken_omegas()) all.push_back(b);
    for (const auto& [name, tr] : all) {
        Report r = closedness_equivalences(tr.J, omega_sharp(tr));
        t.need(r.ok("1/4 N_{I,J} = (dOmega - conj dOmega)/2i"), name + " first Nijenhuis-form identity");
        t.need(r.ok("-1/4 N_{J,K} = (dOmega + conj dOmega)/2"), name + " second Nijenhuis-form identity");
    }
}

void c5_closedness(Tally& t) {
    for (const auto& [name, tr] : hypercomplex_fixtures()) {
        Report r = closedness_equivalences(tr.J, omega_sharp(tr));
        t.need(r.ok("[Omega,Omega] = 0") && r.ok("d_{L*} Omega = 0") && r.ok("d_{L*} Omega + 1/2 [Omega,Omega] = 0"),
               name + " all three conditions hold");
        t.need(r.ok("conditions agree"), name + " conditions agree");
    }
    for (const auto& [name, tr] : broken_omegas()) {
        Report r = closedness_equivalences(tr.J, omega_sharp(tr));
        t.need(!r.ok("[Omega,Omega] = 0") && !r.ok("d_{L*} Omega = 0") && !r.ok("d_{L*} Omega + 1/2 [Omega,Omega] = 0"),
               name + " all three conditions fail");
        t.need(r.ok("conditions agree"), name + " conditions agree");
        t.need(holosym_invariants(tr.J, omega_sharp(tr)).ok(kOmega1), name + " keeps Omega1");
    }
    Triple fb = flatq_b();
    Report r = closedness_equivalences(fb.J, omega_sharp(fb));
    t.need(r.ok("1/2 [Omega,Omega](xi,eta,zeta) = conj dOmega(Omega# xi, Omega# eta, Omega# zeta)"),
           "FLATQ-B conj dOmega identity");
    t.need(r.data["Nijenhuis forms nonzero"] == false, "FLATQ-B Nijenhuis forms vanish");
}

void c6_deformation(Tally& t) {
    const std::vector<std::pair<GaussRat, GaussRat>> params = {
        {0, 0}, {1, 0}, {0, 1}, {1, 2}, {GaussRat::frac(1, 2), 0}, {0, GaussRat::frac(1, 3)}};
    for (const auto& [name, tr] : hypercomplex_fixtures()) {
        HoloSymp h = from_triple(tr);
        for (const auto& [a, b] : params) {
            const std::string tag = name + " (" + a.str() + ", " + b.str() + ")";
            Deformation d = deformation_family(h, a, b);
            t.need(d.report, tag);
            t.need(complex_structure_check(d.s), tag + " S complex");
            t.need(d.report.ok("frame is the -i eigenframe of S"), tag + " eigenframe certified");
            GaussRat n = GaussRat(1) + a * a + b * b;
            Endo expect = sphere_structure(tr, GaussRat(2) * b / n, (GaussRat(1) - a * a - b * b) / n, GaussRat(2) * a / n);
            t.need(d.s == expect, tag + " on the sphere");
        }
        t.need(deformation_family(h, 1, 0).s == tr.K, name + " (1,0) gives K");
        t.need(deformation_family(h, 0, 1).s == tr.I, name + " (0,1) gives I");
        t.need(deformation_family(h, 0, GaussRat::frac(1, 3)).s ==
                   sphere_structure(tr, GaussRat::frac(3, 5), GaussRat::frac(4, 5), 0),
               name + " (0,1/3) is the (3/5, 4/5, 0) structure");
    }
}

void c7_decomposition(Tally& t) {
    Triple q = flatq();
    const Chart& c = q.I.backend().chart();
    Decomposition dq = decompose(from_triple(q));
    t.need(dq.report, "FLATQ eleven conditions");
    t.need(dq.pi.is_zero() && dq.omega.is_zero(), "FLATQ Omega = theta");
    t.need(dq.theta == GaussRat::frac(1, 2) * (quat_left(c, 0) + kI * quat_left(c, 2)), "FLATQ theta# = (i + sqrt(-1) k)/2");

    Triple s = c2std();
    const Chart& cs = s.I.backend().chart();
    Decomposition ds = decompose(from_triple(s));
    t.need(ds.report, "C2STD eleven conditions");
    t.need(ds.theta.is_zero(), "C2STD theta = 0");
    DiffForm dz = wedge(one_form(cs, vec(cs, {"1", "i", "0", "0"})), one_form(cs, vec(cs, {"0", "0", "1", "i"})));
    t.need(ds.omega == GaussRat::frac(-1, 2) * dz.conj(), "C2STD omega = -1/2 conj(dz1 ^ dz2)");
    Mat p10 = GaussRat::frac(1, 2) * (Mat::identity(4) - kI * j_std(cs));
    t.need(sharp(ds.pi) * sharp(ds.omega).conj() * p10 == -p10, "C2STD pi# conj omega# = -1 on T^{1,0}");

    HyperPoisson hp = hp_kahler();
    Report e = hyper_poisson_equivalence(hp);
    t.need(e, "HP-KAHLER equivalence");
    t.need(e.data["assertions"] == json{{"(1)", true}, {"(2)", true}, {"(3)", true}}, "HP-KAHLER three assertions hold");
    Report r = hyper_poisson_check(hp);
    for (const char* n : {"(2) pi3# = i pi2# = pi2# i*", "(2) pi1# = j pi3# = pi3# j*", "(2) pi2# = k pi1# = pi1# k*",
                          "(3) i pi1# = -pi1# i* = j pi2# = -pi2# j* = k pi3# = -pi3# k*", "(1) [pi_a, pi_b] = 0"})
        t.need(r.ok(n), std::string("HP-KAHLER ") + n);
    Triple tr = hyper_poisson_triple(hp);
    Decomposition dh = decompose(tr.J, omega_sharp(tr));
    t.need(dh.report, "HP-KAHLER eleven conditions");
    t.need(dh.pi == GaussRat::frac(1, 2) * (hp.pi3 - kI * hp.pi1), "HP-KAHLER pi = (pi3 - sqrt(-1) pi1)/2");

    Report eb = hyper_poisson_equivalence(hp_kahler("1 + x0"));
    t.need(eb.data["assertions"] == json{{"(1)", false}, {"(2)", false}, {"(3)", false}}, "broken variant fails all three");
    t.need(eb.ok("assertions concur"), "broken variant fails coherently");
}

void c8_foliations(Tally& t) {
    Triple s = c2std();
    const Backend& b = s.I.backend();
    const Chart& ch = b.chart();
    Mat j = j_std(ch);
    DiffForm omega = c2_w1(ch) - Scalar(kI) * c2_w2(ch);
    Triple f(s.I, -s.J, -s.K);
    Connection cf(f);
    DualPair pf = eigenframe(f.J);

    Vec dz1 = vec(ch, {"1/2", "-1/2*i", "0", "0"});
    TangentTable bf = behrend_fantechi(omega, j, {dz1});
    t.need(is_zero(bf.table[0][0]), "C2STD d_z1: zero table");
    Frame lag = lagrangian_from_dirac(pf, {b.frame(0), b.frame(1), b.frame(6), b.frame(7)});
    RestrictedConnection r = restrict_lagrangian(cf, lag, pf, omega_sharp(f));
    t.need(r.report, "C2STD Lagrangian restriction: closure, torsion-free, flat");
    t.need(r.report.has("flat"), "restriction reports flatness");
    bool zero = true;
    for (const auto& row : r.table)
        for (const auto& v : row) zero = zero && is_zero(v);
    t.need(zero, "restrict() table is zero");
    Section sz = b.make(dz1, zero_vec(4));
    t.need(lag.try_coords(sz).has_value(), "d_z1 lies in the Lagrangian");
    t.need(section_eq(cf(sz, sz), b.make(bf.table[0][0], zero_vec(4))), "behrend_fantechi = restrict() on d_z1");

    // A non-constant leaf direction through the same comparison.
    Vec x = vec(ch, {"1/2", "-1/2*i", "1/2*x2+1/2*i*y2", "1/2*y2-1/2*i*x2"});
    TangentTable bx = behrend_fantechi(omega, j, {x});
    std::vector<Section> dirac = {sec(b, {"1", "0", "x2", "y2", "0", "0", "0", "0"}), sec(b, {"0", "-1", "y2", "-x2", "0", "0", "0", "0"}),
                                  sec(b, {"0", "0", "0", "0", "-x2", "y2", "1", "0"}), sec(b, {"0", "0", "0", "0", "-y2", "-x2", "0", "1"})};
    Frame lx = lagrangian_from_dirac(pf, dirac);
    RestrictedConnection rx = restrict_lagrangian(cf, lx, pf, omega_sharp(f));
    t.need(rx.report, "bent Lagrangian restriction");
    Section sx = b.make(x, zero_vec(4));
    t.need(lx.try_coords(sx).has_value() && section_eq(cf(sx, sx), b.make(bx.table[0][0], zero_vec(4))),
           "behrend_fantechi = restrict() on the bent leaf");

    Triple q = flatq();
    Connection cq(q);
    const Backend& bq = cq.backend();
    const Chart& cc = bq.chart();
    Mat theta = GaussRat::frac(1, 2) * (quat_left(cc, 0) + Scalar(kI) * quat_left(cc, 2));
    std::vector<Vec> real = {vec(cc, {"1", "x1", "0", "0"}), vec(cc, {"0", "1", "0", "0"}), vec(cc, {"0", "0", "1", "-x1"}),
                             vec(cc, {"0", "0", "0", "1"})};
    std::vector<Section> emb;
    for (const auto& v : real) emb.push_back(bq.make(v, zero_vec(4)));
    RestrictedConnection rd = restrict_dirac(cq, Frame::make(bq, emb));
    t.need(rd.report, "FLATQ Dirac restriction: closure, torsion-free");
    const GaussRat h = GaussRat::frac(1, 2);
    std::vector<std::vector<std::pair<std::size_t, GaussRat>>> combo = {{{0, h}, {2, -kI * h}}, {{1, h}, {3, kI * h}}};
    std::vector<Vec> fr;
    for (const auto& cmb : combo) {
        Vec v = zero_vec(4);
        for (const auto& [k, w] : cmb) v = v + w * real[k];
        fr.push_back(v);
    }
    TangentTable hf = hypercomplex_foliation_connection(cc, theta, quat_left(cc, 1), fr);
    bool agree = true, nonzero = false;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t d = 0; d < 2; ++d) {
            Section via = bq.zero();
            for (const auto& [sa, wa] : combo[a])
                for (const auto& [sd, wd] : combo[d]) via = via + (wa * wd) * rd.frame.combine(rd.table[sa][sd]);
            agree = agree && section_eq(via, bq.make(hf.table[a][d], zero_vec(4)));
            nonzero = nonzero || !is_zero(hf.table[a][d]);
        }
    t.need(agree, "hypercomplex_foliation_connection = restrict() of the Dirac frame");
    t.need(nonzero, "the comparison is not between zero tables");
    bool obata_ok = true;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t d = 0; d < 4; ++d)
            obata_ok = obata_ok && section_eq(rd.frame.combine(rd.table[a][d]),
                                              bq.make(obata(cc, quat_left(cc, 0), quat_left(cc, 1), quat_left(cc, 2), real[a], real[d]),
                                                      zero_vec(4)));
    t.need(obata_ok, "the Dirac restriction recovers Obata");
}

void c9_kernel(Tally& t) {
    Chart c3 = R(3), c4 = R(4);
    Rng rng(909);
    int ring = 0, parse = 0, d2 = 0, dbar2 = 0, jac = 0;
    for (int k = 0; k < 1000; ++k) {
        Scalar a = rng.poly(c3.vars()), b = rng.poly(c3.vars()), c = rng.poly(c3.vars());
        ring += (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a + b == b + a &&
                a * b == b * a && (a * b).conj() == a.conj() * b.conj();
        Scalar s = rng.poly(c4.vars(), 4, 6);
        parse += parse_scalar(s.str(), c4.vars()) == s;
        DiffForm w = rng.alt<DiffForm>(c4, static_cast<unsigned>(rng.range(0, 2)), 3);
        d2 += ext_d(ext_d(w)).is_zero();
    }
    Chart cz = C2();
    Mat j = j_std(cz);
    for (int k = 0; k < 1000; ++k) {
        DiffForm w = rng.alt<DiffForm>(cz, static_cast<unsigned>(rng.range(0, 2)), 2, 2);
        dbar2 += dbar(dbar(w, j), j).is_zero();
    }
    auto sg = [](unsigned a, unsigned b) { return ((a + 1) * (b + 1)) % 2 == 0 ? GaussRat(1) : GaussRat(-1); };
    int cases = 0;
    while (cases < 1000) {
        Chart c = R(static_cast<int>(rng.range(2, 4)));
        auto p = static_cast<unsigned>(rng.range(0, 2)), q = static_cast<unsigned>(rng.range(0, 2)),
             r = static_cast<unsigned>(rng.range(0, 2));
        if ((p == 0) + (q == 0) + (r == 0) >= 2) continue;
        ++cases;
        MultiVec P = rng.alt<MultiVec>(c, p, 2, 2), Q = rng.alt<MultiVec>(c, q, 2, 2), S = rng.alt<MultiVec>(c, r, 2, 2);
        MultiVec lhs = sg(p, r) * schouten(P, schouten(Q, S)) + sg(q, p) * schouten(Q, schouten(S, P)) +
                       sg(r, q) * schouten(S, schouten(P, Q));
        jac += lhs.is_zero() && schouten(P, Q) == -(sg(p, q) * schouten(Q, P));
    }
    t.need(ring == 1000, "ring axioms " + std::to_string(ring) + "/1000");
    t.need(parse == 1000, "parse/print " + std::to_string(parse) + "/1000");
    t.need(d2 == 1000, "d^2 = 0 " + std::to_string(d2) + "/1000");
    t.need(dbar2 == 1000, "dbar^2 = 0 " + std::to_string(dbar2) + "/1000");
    t.need(jac == 1000, "Schouten graded Jacobi " + std::to_string(jac) + "/1000");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, void (*)(Tally&)>> criteria = {
        {"Courant axioms and the twisted integrability obstruction", c1_axioms},
        {"hypercomplex certification and N(I,J) = 0 iff all six vanish", c2_hypercomplex},
        {"hypercomplex connection: parallelism, torsion, curvature, Leibniz anomaly", c3_connection},
        {"triple <-> Omega roundtrip, Omega1, Nijenhuis-form identities at one scale", c4_correspondence},
        {"closedness conditions agree on fixtures and broken Omegas", c5_closedness},
        {"deformations over the sphere", c6_deformation},
        {"decomposition, extended symplectic conditions, hyper-Poisson", c7_decomposition},
        {"foliation connections against restrict()", c8_foliations},
        {"kernel properties, 1000 cases each", c9_kernel},
    };
    int failed = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        Tally t;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[n].second(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = t.failures.empty() && t.checks > 0;
        failed += !ok;
        std::ostringstream line;
        line << "criterion " << n + 1 << ": " << (ok ? "PASS" : "FAIL") << "  " << criteria[n].first << " (" << t.checks
             << " checks, " << ms << " ms)";
        for (std::size_t k = 0; k < t.failures.size() && k < 5; ++k) line << "\n    failed: " << t.failures[k];
        std::cout << line.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
