#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hxc/error.hpp"
#include "support.hpp"

using namespace hxt;

namespace {

Chart R(int n) {
    std::vector<std::string> v;
    for (int k = 0; k < n; ++k) v.push_back("x" + std::to_string(k));
    return Chart(v);
}

Chart C2() { return Chart({"x1", "y1", "x2", "y2"}); }

// Standard complex structure on C^2: j d_x = d_y, j d_y = -d_x.
Mat j_std(const Chart& c) { return mat(c, {{"0", "-1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "0", "-1"}, {"0", "0", "1", "0"}}); }

DiffForm form1(const Chart& c, std::vector<std::string> xs) { return one_form(c, vec(c, xs)); }
MultiVec field(const Chart& c, std::vector<std::string> xs) { return vector_field(c, vec(c, xs)); }

DiffForm form(const Chart& c, unsigned deg, std::vector<std::pair<Index, std::string>> comps) {
    DiffForm w(c, deg);
    for (auto& [i, e] : comps) w.add(i, c.parse(e));
    return w;
}

MultiVec multi(const Chart& c, unsigned deg, std::vector<std::pair<Index, std::string>> comps) {
    MultiVec w(c, deg);
    for (auto& [i, e] : comps) w.add(i, c.parse(e));
    return w;
}

std::string kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

// Tensor transport for a bivector: (L_X P)^{ab} = X(P^{ab}) - P^{cb} d_c X^a - P^{ac} d_c X^b.
MultiVec lie_bivector_oracle(const MultiVec& x, const MultiVec& p) {
    const Chart& c = p.chart();
    const std::size_t n = c.dim();
    Vec xs = components(x);
    MultiVec r(c, 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            int ia = static_cast<int>(a), ib = static_cast<int>(b);
            Scalar v = apply_vector(c, xs, p.at({ia, ib}));
            for (std::size_t k = 0; k < n; ++k) {
                int ik = static_cast<int>(k);
                v -= p.at({ik, ib}) * xs[a].partial(k);
                v -= p.at({ia, ik}) * xs[b].partial(k);
            }
            r.add({ia, ib}, v);
        }
    return r;
}

Scalar poisson(const MultiVec& pi, const Scalar& f, const Scalar& g) {
    const Chart& c = pi.chart();
    return pair(pi, wedge(df(c, f), df(c, g)));
}

}  // namespace

TEST_CASE("sort_sign") {
    Index a{2, 0, 1};
    CHECK(sort_sign(a) == 1);
    CHECK(a == Index{0, 1, 2});
    Index b{1, 0};
    CHECK(sort_sign(b) == -1);
    Index z{1, 1};
    CHECK(sort_sign(z) == 0);
}

TEST_CASE("exterior derivative examples") {
    Chart c = R(3);
    CHECK(ext_d(form1(c, {"0", "x0", "0"})) == form(c, 2, {{{0, 1}, "1"}}));
    CHECK(ext_d(form(c, 2, {{{0, 1}, "1"}})).is_zero());
    // d(x0^2 x1 dx2) term by term.
    DiffForm expect = form(c, 2, {{{0, 2}, "2*x0*x1"}, {{1, 2}, "x0^2"}});
    CHECK(ext_d(form1(c, {"0", "0", "x0^2*x1"})) == expect);
    CHECK(df(c, c.parse("x0^2")) == form1(c, {"2*x0", "0", "0"}));
}

TEST_CASE("lie bracket examples") {
    Chart c = R(2);
    CHECK(lie_bracket(field(c, {"1", "0"}), field(c, {"0", "x0"})) == field(c, {"0", "1"}));
    CHECK(lie_bracket(field(c, {"1", "0"}), field(c, {"0", "1"})).is_zero());
    CHECK(lie_bracket(field(c, {"0", "x0"}), field(c, {"x1", "0"})) == field(c, {"x0", "-x1"}));
}

TEST_CASE("lie derivative examples") {
    Chart c = R(2);
    CHECK(lie_derivative(field(c, {"1", "0"}), form1(c, {"0", "x0"})) == form1(c, {"0", "1"}));
    CHECK(lie_derivative(field(c, {"x0", "0"}), form1(c, {"1", "0"})) == form1(c, {"1", "0"}));
}

TEST_CASE("interior and sharp conventions") {
    Chart c = R(3);
    DiffForm w = form(c, 2, {{{0, 1}, "1"}});
    // iota_{d0}(dx0^dx1) = dx1
    CHECK(interior(field(c, {"1", "0", "0"}), w) == form1(c, {"0", "1", "0"}));
    Mat ws = sharp(w);
    CHECK(ws(1, 0) == Scalar(1));
    CHECK(ws(0, 1) == Scalar(-1));
    CHECK(form_from_sharp(c, ws) == w);
    MultiVec p = multi(c, 2, {{{0, 2}, "x1"}});
    CHECK(bivector_from_sharp(c, sharp(p)) == p);
    // pi#(dx0) = pi(dx0, .) = x1 d2
    CHECK(components(interior(form1(c, {"1", "0", "0"}), p)) == sharp(p).col(0));
    CHECK(kind_of([&] { (void)form_from_sharp(c, Mat::identity(3)); }) == "NotAlternating");
}

TEST_CASE("schouten examples") {
    Chart c = R(4);
    MultiVec a = multi(c, 2, {{{0, 1}, "1"}}), b = multi(c, 2, {{{2, 3}, "1"}});
    CHECK(schouten(a, b).is_zero());
    MultiVec pi = multi(c, 2, {{{0, 1}, "x0"}});
    CHECK(schouten(pi, pi).is_zero());
    // Jacobi identity of {f,g} = pi(df,dg) on coordinate monomials.
    std::vector<Scalar> fs{c.x(0), c.x(1), c.parse("x0*x1"), c.parse("x0^2 + x1")};
    for (const auto& f : fs)
        for (const auto& g : fs)
            for (const auto& h : fs) {
                Scalar jac = poisson(pi, poisson(pi, f, g), h) + poisson(pi, poisson(pi, g, h), f) +
                             poisson(pi, poisson(pi, h, f), g);
                CHECK(jac.is_zero());
            }
    // Degree-1 reduction: [X, P] = L_X P.
    MultiVec x = field(c, {"x1", "x0*x2", "1", "x3^2"});
    MultiVec p = multi(c, 2, {{{0, 1}, "x2"}, {{1, 3}, "x0*x1"}});
    CHECK(schouten(x, p) == lie_bivector_oracle(x, p));
    CHECK(schouten(x, field(c, {"x2", "0", "x0", "1"})) == lie_bracket(x, field(c, {"x2", "0", "x0", "1"})));
    // [X, f] = X(f) for functions.
    MultiVec f(c, 0);
    f.add({}, c.parse("x0*x3"));
    MultiVec xf = schouten(x, f);
    CHECK(xf.at({}) == apply_vector(c, components(x), c.parse("x0*x3")));
}

TEST_CASE("schouten of a bivector computes twice the Jacobiator") {
    Chart c = R(3);
    // Non-Poisson bivectors; [pi,pi](df,dg,dh) should be a fixed multiple of the Jacobiator.
    std::vector<MultiVec> pis{multi(c, 2, {{{0, 1}, "x1"}, {{1, 2}, "x2"}}),
                              multi(c, 2, {{{0, 1}, "x2"}, {{0, 2}, "x0*x1"}, {{1, 2}, "1"}}),
                              multi(c, 2, {{{0, 1}, "x1^2"}, {{1, 2}, "x1 + x2"}})};
    for (const auto& pi : pis) {
        MultiVec s = schouten(pi, pi);
        CHECK(!s.is_zero());
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                for (int d = b + 1; d < 3; ++d) {
                    Scalar jac = poisson(pi, poisson(pi, c.x(a), c.x(b)), c.x(d)) +
                                 poisson(pi, poisson(pi, c.x(b), c.x(d)), c.x(a)) +
                                 poisson(pi, poisson(pi, c.x(d), c.x(a)), c.x(b));
                    CHECK(s.at({a, b, d}) == Scalar(-2) * jac);
                }
    }
}

TEST_CASE("type projection examples on C^2") {
    Chart c = C2();
    Mat j = j_std(c);
    DiffForm dz1 = form1(c, {"1", "i", "0", "0"}), dz2 = form1(c, {"0", "0", "1", "i"});
    DiffForm dx1dx2 = form(c, 2, {{{0, 2}, "1"}});
    CHECK(type_project(dx1dx2, j, 2, 0) == GaussRat::frac(1, 4) * wedge(dz1, dz2));
    CHECK(type_project(form(c, 2, {{{0, 1}, "1"}}), j, 2, 0).is_zero());
    CHECK(type_project(dz1, j, 1, 0) == dz1);
    CHECK(type_project(dz1.conj(), j, 0, 1) == dz1.conj());
    CHECK(type_project(dz1, j, 0, 1).is_zero());
    CHECK(kind_of([&] { (void)type_project(dz1, Mat::identity(4), 1, 0); }) == "NotAlmostComplex");
    // (1,0) vectors: d_z = (d_x - i d_y)/2.
    MultiVec dz = field(c, {"1/2", "-1/2*i", "0", "0"});
    CHECK(type_project(dz, j, 1, 0) == dz);
    CHECK(pair(dz, dz1) == Scalar(1));
}

TEST_CASE("dbar examples") {
    Chart c = C2();
    Mat j = j_std(c);
    DiffForm dz1 = form1(c, {"1", "i", "0", "0"}), dz2 = form1(c, {"0", "0", "1", "i"});
    CHECK(dbar(wedge(dz1, dz2), j).is_zero());
    Scalar zbar1 = c.parse("x1 - i*y1");
    DiffForm w = zbar1 * dz2;
    CHECK(dbar(w, j) == wedge(dz1.conj(), dz2));
    CHECK(del(w, j).is_zero());
    CHECK(del(w, j) + dbar(w, j) == ext_d(w));
}

TEST_CASE("nijenhuis tangent") {
    Chart c = R(4);
    Mat j = quat_left(c, 0);
    for (const auto& v : nijenhuis_tangent(c, j)) CHECK(is_zero(v));
    Mat a = mat(c, {{"1", "0", "x1", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
    Mat jp = a * j * *inverse_unit(a);
    auto n = nijenhuis_tangent(c, jp);
    // Frozen from a sympy evaluation of the bracket expansion.
    std::map<std::pair<int, int>, std::vector<std::string>> expect{
        {{0, 2}, {"0", "-1", "0", "0"}}, {{0, 3}, {"-1", "0", "0", "0"}}, {{1, 2}, {"-1", "0", "0", "0"}},
        {{1, 3}, {"0", "1", "0", "0"}},  {{2, 0}, {"0", "1", "0", "0"}},  {{2, 1}, {"1", "0", "0", "0"}},
        {{2, 3}, {"x1", "0", "0", "0"}}, {{3, 0}, {"1", "0", "0", "0"}},  {{3, 1}, {"0", "-1", "0", "0"}},
        {{3, 2}, {"-x1", "0", "0", "0"}}};
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
            auto it = expect.find({p, q});
            Vec want = it == expect.end() ? zero_vec(4) : vec(c, it->second);
            CHECK(n[static_cast<std::size_t>(p * 4 + q)] == want);
        }
    CHECK(!is_integrable(c, jp));
    CHECK(kind_of([&] { (void)dbar(form1(c, {"x0", "0", "0", "0"}), jp); }) == "NotIntegrable");
    CHECK(kind_of([&] { (void)nijenhuis_tangent(c, Mat::identity(4)); }) == "NotAlmostComplex");
}

TEST_CASE("nijenhuis tangent is tensorial") {
    Chart c = R(4);
    Mat a = mat(c, {{"1", "0", "x1", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
    Mat jp = a * quat_left(c, 0) * *inverse_unit(a);
    auto nt = nijenhuis_tangent(c, jp);
    auto nij = [&](const Vec& x, const Vec& y) {
        return lie_bracket(c, jp * x, jp * y) - jp * lie_bracket(c, jp * x, y) - jp * lie_bracket(c, x, jp * y) -
               lie_bracket(c, x, y);
    };
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        Vec x = rng.vec(c, 4, 1), y = rng.vec(c, 4, 1);
        Scalar f = rng.poly(c.vars(), 2);
        REQUIRE(nij(x, f * y) == f * nij(x, y));
        // Bilinear combination of the coordinate table.
        Vec via(4, c.zero());
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t q = 0; q < 4; ++q) via = via + (x[p] * y[q]) * nt[p * 4 + q];
        REQUIRE(nij(x, y) == via);
    }
}

TEST_CASE("holomorphic poisson check") {
    Chart c = C2();
    Mat j = j_std(c);
    // pi = z1 d_z1 ^ d_z2 with d_z = (d_x - i d_y)/2.
    MultiVec dz1 = field(c, {"1/2", "-1/2*i", "0", "0"}), dz2 = field(c, {"0", "0", "1/2", "-1/2*i"});
    MultiVec pi = c.parse("x1 + i*y1") * wedge(dz1, dz2);
    MultiVec re(c, 2), im(c, 2);
    for (const auto& [idx, v] : pi.comps()) {
        re.add(idx, v.real_part());
        im.add(idx, v.imag_part());
    }
    Report r = holomorphic_poisson_check(re, im, j);
    CHECK(r.passed());
    CHECK(holomorphic_poisson_check(MultiVec(c, 2), MultiVec(c, 2), j).passed());
    Report bad = holomorphic_poisson_check(multi(c, 2, {{{0, 2}, "1"}}), MultiVec(c, 2), j);
    CHECK(!bad.passed());
    CHECK(!bad.ok("pi2# = -j pi1#"));
    CHECK(bad.ok("[pi1,pi1] = 0"));
    // Anti-holomorphic coefficient: z1bar d_z1 ^ d_z2 fails only the dbar check.
    MultiVec anti = c.parse("x1 - i*y1") * wedge(dz1, dz2);
    MultiVec re2(c, 2), im2(c, 2);
    for (const auto& [idx, v] : anti.comps()) {
        re2.add(idx, v.real_part());
        im2.add(idx, v.imag_part());
    }
    Report r2 = holomorphic_poisson_check(re2, im2, j);
    CHECK(r2.ok("pi1 + i pi2 has type (2,0)"));
    CHECK(!r2.ok("dbar(pi1 + i pi2) = 0"));
}

TEST_CASE("hyperkahler forms") {
    Chart c = R(4);
    Mat i = quat_left(c, 0), j = quat_left(c, 1), k = quat_left(c, 2);
    auto flat = hyperkahler_forms(c, Mat::identity(4), i, j, k);
    CHECK(flat.report.passed());
    CHECK(!flat.w1.is_zero());
    CHECK(flat.report.data["g positive definite at origin"] == true);
    Scalar s = c.parse("1 + x0^2");
    auto scaled = hyperkahler_forms(c, s * Mat::identity(4), i, j, k);
    CHECK(scaled.report.ok("w1 alternating"));
    CHECK(!scaled.report.ok("dw1 = 0"));
    // Oracle: d((1+x0^2) w) = 2 x0 dx0 ^ w.
    CHECK(ext_d(scaled.w1) == wedge(form1(c, {"2*x0", "0", "0", "0"}), flat.w1));
    // A metric for which i is not skew-adjoint.
    Mat g = mat(c, {{"2", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
    auto skewfail = hyperkahler_forms(c, g, i, j, k);
    CHECK(!skewfail.report.ok("w1 alternating"));
    CHECK(kind_of([&] { (void)hyperkahler_forms(c, Mat::identity(4), i, j, -k); }) == "NotQuaternionic");
    CHECK(kind_of([&] { (void)hyperkahler_forms(c, Mat::identity(4), i.transpose(), j, k); }) == "NotQuaternionic");
    Mat ns = Mat::identity(4);
    ns(0, 1) = Scalar(1);
    CHECK(kind_of([&] { (void)hyperkahler_forms(c, ns, i, j, k); }) == "MetricNotSymmetric");
}

TEST_CASE("mismatched charts are rejected") {
    Chart a = R(2), b = Chart({"u", "v"});
    CHECK(kind_of([&] { (void)(form1(a, {"1", "0"}) + form1(b, {"1", "0"})); }) == "ChartMismatch");
    CHECK(kind_of([&] { (void)interior(field(a, {"1", "0"}), form1(b, {"1", "0"})); }) == "ChartMismatch");
}

TEST_CASE("property: d^2 = 0 on 1000 random forms") {
    Chart c = R(4);
    Rng rng(11);
    for (int t = 0; t < 1000; ++t) {
        unsigned k = static_cast<unsigned>(rng.range(0, 2));
        DiffForm w = rng.alt<DiffForm>(c, k, 3);
        REQUIRE(ext_d(ext_d(w)).is_zero());
    }
}

TEST_CASE("property: Cartan formula, transport formula and [d, L_X] = 0") {
    Chart c = R(3);
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        unsigned k = static_cast<unsigned>(rng.range(0, 2));
        DiffForm w = rng.alt<DiffForm>(c, k, 3);
        MultiVec x = vector_field(c, rng.vec(c, 3, 2));
        REQUIRE(lie_derivative(x, w) == lie_derivative_direct(x, w));
        REQUIRE(ext_d(lie_derivative(x, w)) == lie_derivative(x, ext_d(w)));
    }
}

TEST_CASE("property: dbar^2 = 0 on 1000 random complex forms") {
    Chart c = C2();
    Mat j = j_std(c);
    Rng rng(13);
    for (int t = 0; t < 1000; ++t) {
        unsigned k = static_cast<unsigned>(rng.range(0, 2));
        DiffForm w = rng.alt<DiffForm>(c, k, 2, 2);
        REQUIRE(dbar(dbar(w, j), j).is_zero());
    }
}

TEST_CASE("property: dbar^2 = 0 for a non-constant integrable structure") {
    Chart c = R(4);
    // Pullback of the constant structure along phi(x) = (x0, x1, x2 + x0^2, x3).
    Mat dphi = mat(c, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"2*x0", "0", "1", "0"}, {"0", "0", "0", "1"}});
    Mat j = *inverse_unit(dphi) * quat_left(c, 0) * dphi;
    REQUIRE(is_integrable(c, j));
    Rng rng(14);
    for (int t = 0; t < 60; ++t) {
        unsigned k = static_cast<unsigned>(rng.range(0, 2));
        DiffForm w = rng.alt<DiffForm>(c, k, 2, 2);
        REQUIRE(dbar(dbar(w, j), j).is_zero());
    }
}

TEST_CASE("property: type projections sum to the identity") {
    Chart c = C2();
    Mat j = j_std(c);
    Rng rng(15);
    for (int t = 0; t < 200; ++t) {
        unsigned k = static_cast<unsigned>(rng.range(0, 3));
        DiffForm w = rng.alt<DiffForm>(c, k, 2);
        DiffForm sum(c, k);
        for (unsigned p = 0; p <= k; ++p) {
            DiffForm part = type_project(w, j, p, k - p);
            REQUIRE(type_project(part, j, p, k - p) == part);
            sum += part;
        }
        REQUIRE(sum == w);
    }
}

TEST_CASE("property: vanishing torsion matches dbar^2 = 0 on a spanning set") {
    Chart c = R(4);
    Mat a = mat(c, {{"1", "0", "x1", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
    std::vector<Mat> js{quat_left(c, 0), quat_left(c, 1), a * quat_left(c, 0) * *inverse_unit(a)};
    for (const auto& j : js) {
        bool flat = is_integrable(c, j);
        bool sq = true;
        std::vector<DiffForm> span;
        for (int p = 0; p < 4; ++p) {
            DiffForm f(c, 0);
            f.add({}, c.x(p));
            span.push_back(f);
            for (int q = 0; q < 4; ++q) {
                DiffForm g(c, 1);
                g.add({q}, c.x(p));
                span.push_back(g);
            }
        }
        for (const auto& w : span) sq = sq && dbar(dbar(w, j, false), j, false).is_zero();
        CHECK(flat == sq);
    }
}

TEST_CASE("property: Schouten graded Jacobi on 1000 random triples") {
    Rng rng(16);
    for (int t = 0; t < 1000; ++t) {
        Chart c = R(static_cast<int>(rng.range(2, 4)));
        unsigned p = static_cast<unsigned>(rng.range(0, 2)), q = static_cast<unsigned>(rng.range(0, 2)),
                 r = static_cast<unsigned>(rng.range(0, 2));
        MultiVec P = rng.alt<MultiVec>(c, p, 2, 2), Q = rng.alt<MultiVec>(c, q, 2, 2), S = rng.alt<MultiVec>(c, r, 2, 2);
        auto sg = [](unsigned a, unsigned b) { return ((a + 1) * (b + 1)) % 2 == 0 ? GaussRat(1) : GaussRat(-1); };
        if ((p == 0) + (q == 0) + (r == 0) >= 2) continue;  // a bracket of two functions has no degree
        MultiVec lhs = sg(p, r) * schouten(P, schouten(Q, S)) + sg(q, p) * schouten(Q, schouten(S, P)) +
                       sg(r, q) * schouten(S, schouten(P, Q));
        REQUIRE(lhs.is_zero());
        REQUIRE(schouten(P, Q) == -(sg(p, q) * schouten(Q, P)));
    }
}
