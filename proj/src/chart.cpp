#include "hxc/chart.hpp"

#include "hxc/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hxc {

int sort_sign(Index& idx) {
    int s = 1;
    // Insertion sort; k is tiny.
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            s = -s;
        }
    }
    return s;
}

Chart::Chart(std::vector<std::string> coords) {
    std::set<std::string> seen;
    for (const auto& c : coords) {
        if (c.empty()) fail("SchemaError", "empty coordinate name");
        if (c == "i") fail("SyntaxError", "'i' is reserved for the imaginary unit");
        if (!seen.insert(c).second) fail("SchemaError", "duplicate coordinate '" + c + "'");
    }
    if (coords.empty()) fail("SchemaError", "chart needs at least one coordinate");
    vars_ = make_vars(std::move(coords));
}

Chart Chart::point() {
    Chart c;
    c.vars_ = make_vars({});
    return c;
}

std::size_t Chart::index_of(const std::string& coord) const {
    for (std::size_t a = 0; a < dim(); ++a)
        if ((*vars_)[a] == coord) return a;
    fail("UnknownCoordinate", "no coordinate named '" + coord + "'");
}

void require_same_chart(const Chart& a, const Chart& b) {
    if (a != b) fail("ChartMismatch", "objects live on different charts");
}

template <AltKind K>
std::string Alt<K>::str() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& [idx, c] : comps_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        std::string basis;
        for (int a : idx) {
            if (!basis.empty()) basis += "^";
            basis += (K == AltKind::Vector ? "d_" : "d") + chart_.name(a);
        }
        if (!basis.empty()) out += "*" + basis;
    }
    return out;
}

template class Alt<AltKind::Vector>;
template class Alt<AltKind::Form>;

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const Index&)>& fn) {
    Index idx(k);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (int a = start; a < static_cast<int>(n); ++a) {
            idx[pos] = a;
            rec(pos + 1, a + 1);
        }
    };
    rec(0, 0);
}

template <class A>
A wedge_impl(const A& a, const A& b) {
    require_same_chart(a.chart(), b.chart());
    A r(a.chart(), a.degree() + b.degree());
    for (const auto& [i, c] : a.comps())
        for (const auto& [j, d] : b.comps()) {
            Index ij = i;
            ij.insert(ij.end(), j.begin(), j.end());
            r.add(ij, c * d);
        }
    return r;
}

// Contract slot 0 against a 1-vector of coefficients.
template <class Out, class In>
Out contract_first(const Chart& c, const Vec& v, const In& t) {
    if (t.degree() == 0) return Out(c, 0);
    Out r(c, t.degree() - 1);
    for (const auto& [idx, coef] : t.comps())
        for (std::size_t m = 0; m < idx.size(); ++m) {
            const Scalar& va = v[static_cast<std::size_t>(idx[m])];
            if (va.is_zero()) continue;
            Index rest = idx;
            rest.erase(rest.begin() + static_cast<long>(m));
            r.add(rest, (m % 2 == 0 ? va : -va) * coef);
        }
    return r;
}

// Slot-wise transform summed over which p slots get `a` (the rest get `b`).
// Forms: out(e_I) = sum_S w(M_1 e_{i1}, ...). Vectors: out = sum_S (M_1 x ... x M_k) v.
template <class A>
A slot_transform(const A& t, const Mat& a, const Mat& b, unsigned p, bool vectors) {
    const Chart& c = t.chart();
    const std::size_t n = c.dim();
    const std::size_t k = t.degree();
    A r(c, static_cast<unsigned>(k));
    if (p > k) return r;
    std::vector<std::vector<bool>> choices;
    for (unsigned mask = 0; mask < (1u << k); ++mask)
        if (static_cast<unsigned>(__builtin_popcount(mask)) == p) {
            std::vector<bool> ch(k);
            for (std::size_t s = 0; s < k; ++s) ch[s] = mask >> s & 1u;
            choices.push_back(ch);
        }
    for_each_subset(n, k, [&](const Index& out) {
        Scalar acc = c.zero();
        for (const auto& [in, coef] : t.comps()) {
            Index perm = in;
            // Sum over orderings of the stored index set with sign.
            std::sort(perm.begin(), perm.end());
            int sgn = 1;
            do {
                Index tmp = perm;
                sgn = sort_sign(tmp);
                for (const auto& ch : choices) {
                    Scalar prod = coef;
                    for (std::size_t s = 0; s < k && !prod.is_zero(); ++s) {
                        const Mat& m = ch[s] ? a : b;
                        auto oi = static_cast<std::size_t>(out[s]), ii = static_cast<std::size_t>(perm[s]);
                        const Scalar& e = vectors ? m(oi, ii) : m(ii, oi);
                        if (e.is_zero()) prod = Scalar();
                        else prod *= e;
                    }
                    if (prod.is_zero()) continue;
                    if (sgn > 0) acc += prod;
                    else acc -= prod;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        r.add(out, acc);
    });
    return r;
}

Mat proj10(const TanEndo& j) { return GaussRat::frac(1, 2) * (Mat::identity(j.rows) - GaussRat::I() * j); }
Mat proj01(const TanEndo& j) { return GaussRat::frac(1, 2) * (Mat::identity(j.rows) + GaussRat::I() * j); }

void require_chart_endo(const Chart& c, const Mat& m) {
    if (m.rows != c.dim() || m.cols != c.dim()) fail("ShapeError", "tangent endomorphism has the wrong size");
}

}  // namespace

MultiVec vector_field(const Chart& c, const Vec& comps) {
    if (comps.size() != c.dim()) fail("ShapeError", "vector field has the wrong number of components");
    MultiVec v(c, 1);
    for (std::size_t a = 0; a < comps.size(); ++a) v.add({static_cast<int>(a)}, comps[a]);
    return v;
}

DiffForm one_form(const Chart& c, const Vec& comps) {
    if (comps.size() != c.dim()) fail("ShapeError", "1-form has the wrong number of components");
    DiffForm w(c, 1);
    for (std::size_t a = 0; a < comps.size(); ++a) w.add({static_cast<int>(a)}, comps[a]);
    return w;
}

template <class A>
static Vec components_impl(const A& x) {
    if (x.degree() != 1) fail("ShapeError", "expected degree 1");
    Vec v(x.chart().dim(), x.chart().zero());
    for (const auto& [idx, c] : x.comps()) v[static_cast<std::size_t>(idx[0])] = c;
    return v;
}

Vec components(const MultiVec& x) { return components_impl(x); }
Vec components(const DiffForm& x) { return components_impl(x); }

MultiVec wedge(const MultiVec& a, const MultiVec& b) { return wedge_impl(a, b); }
DiffForm wedge(const DiffForm& a, const DiffForm& b) { return wedge_impl(a, b); }

DiffForm ext_d(const DiffForm& w) {
    const Chart& c = w.chart();
    DiffForm r(c, w.degree() + 1);
    for (const auto& [idx, coef] : w.comps())
        for (std::size_t a = 0; a < c.dim(); ++a) {
            Scalar p = coef.partial(a);
            if (p.is_zero()) continue;
            Index j{static_cast<int>(a)};
            j.insert(j.end(), idx.begin(), idx.end());
            r.add(j, p);
        }
    return r;
}

DiffForm df(const Chart& c, const Scalar& f) {
    DiffForm w(c, 0);
    w.add({}, f);
    return ext_d(w);
}

DiffForm interior(const MultiVec& x, const DiffForm& w) {
    require_same_chart(x.chart(), w.chart());
    return contract_first<DiffForm>(w.chart(), components(x), w);
}

MultiVec interior(const DiffForm& xi, const MultiVec& p) {
    require_same_chart(xi.chart(), p.chart());
    return contract_first<MultiVec>(p.chart(), components(xi), p);
}

Scalar pair(const MultiVec& p, const DiffForm& w) {
    require_same_chart(p.chart(), w.chart());
    if (p.degree() != w.degree()) fail("ShapeError", "pairing needs equal degrees");
    Scalar acc = w.chart().zero();
    for (const auto& [idx, c] : p.comps()) acc += c * w.at(idx);
    return acc;
}

Scalar apply_vector(const Chart& c, const Vec& x, const Scalar& f) {
    Scalar acc = c.zero();
    for (std::size_t a = 0; a < x.size(); ++a)
        if (!x[a].is_zero()) acc += x[a] * f.partial(a);
    return acc;
}

Vec lie_bracket(const Chart& c, const Vec& x, const Vec& y) {
    Vec r(c.dim(), c.zero());
    for (std::size_t b = 0; b < c.dim(); ++b) r[b] = apply_vector(c, x, y[b]) - apply_vector(c, y, x[b]);
    return r;
}

MultiVec lie_bracket(const MultiVec& x, const MultiVec& y) {
    require_same_chart(x.chart(), y.chart());
    return vector_field(x.chart(), lie_bracket(x.chart(), components(x), components(y)));
}

DiffForm lie_derivative(const MultiVec& x, const DiffForm& w) {
    return interior(x, ext_d(w)) + (w.degree() == 0 ? DiffForm(w.chart(), 0) : ext_d(interior(x, w)));
}

DiffForm lie_derivative_direct(const MultiVec& x, const DiffForm& w) {
    require_same_chart(x.chart(), w.chart());
    const Chart& c = w.chart();
    const std::size_t n = c.dim();
    Vec xs = components(x);
    DiffForm r(c, w.degree());
    for_each_subset(n, w.degree(), [&](const Index& out) {
        Scalar acc = apply_vector(c, xs, w.at(out));
        for (std::size_t s = 0; s < out.size(); ++s)
            for (std::size_t b = 0; b < n; ++b) {
                Scalar dx = xs[b].partial(static_cast<std::size_t>(out[s]));
                if (dx.is_zero()) continue;
                Index moved = out;
                moved[s] = static_cast<int>(b);
                Scalar v = w.at(moved);
                if (!v.is_zero()) acc += dx * v;
            }
        r.add(out, acc);
    });
    return r;
}

namespace {

// Right derivative by the odd generator of d_a: theta_I <- d/d theta_a.
MultiVec right_odd_derivative(const MultiVec& p, int a) {
    MultiVec r(p.chart(), p.degree() - 1);
    for (const auto& [idx, c] : p.comps()) {
        auto it = std::find(idx.begin(), idx.end(), a);
        if (it == idx.end()) continue;
        auto m = static_cast<std::size_t>(it - idx.begin());
        Index rest = idx;
        rest.erase(rest.begin() + static_cast<long>(m));
        r.add(rest, (idx.size() - 1 - m) % 2 == 0 ? c : -c);
    }
    return r;
}

MultiVec coefficient_partial(const MultiVec& p, std::size_t a) {
    MultiVec r(p.chart(), p.degree());
    for (const auto& [idx, c] : p.comps()) r.add(idx, c.partial(a));
    return r;
}

}  // namespace

MultiVec schouten(const MultiVec& p, const MultiVec& q) {
    require_same_chart(p.chart(), q.chart());
    const Chart& c = p.chart();
    const unsigned dp = p.degree(), dq = q.degree();
    if (dp + dq == 0) return MultiVec(c, 0);
    MultiVec r(c, dp + dq - 1);
    const bool odd = ((dp + 1) * (dq + 1)) % 2 == 1;  // (p-1)(q-1) has the parity of (p+1)(q+1)
    for (std::size_t a = 0; a < c.dim(); ++a) {
        if (dp > 0) r += wedge(right_odd_derivative(p, static_cast<int>(a)), coefficient_partial(q, a));
        if (dq > 0) {
            MultiVec t = wedge(right_odd_derivative(q, static_cast<int>(a)), coefficient_partial(p, a));
            if (odd) r += t;
            else r -= t;
        }
    }
    return r;
}

Mat sharp(const MultiVec& pi) {
    if (pi.degree() != 2) fail("ShapeError", "sharp needs a bivector");
    const std::size_t n = pi.chart().dim();
    Mat m(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(b, a) = pi.at({static_cast<int>(a), static_cast<int>(b)});
    return m;
}

Mat sharp(const DiffForm& w) {
    if (w.degree() != 2) fail("ShapeError", "sharp needs a 2-form");
    const std::size_t n = w.chart().dim();
    Mat m(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(b, a) = w.at({static_cast<int>(a), static_cast<int>(b)});
    return m;
}

template <class A>
static A from_sharp(const Chart& c, const Mat& m) {
    require_chart_endo(c, m);
    if (m.transpose() != -m) fail("NotAlternating", "sharp matrix is not skew: " + mat_str(m));
    A r(c, 2);
    for (std::size_t a = 0; a < c.dim(); ++a)
        for (std::size_t b = a + 1; b < c.dim(); ++b) r.add({static_cast<int>(a), static_cast<int>(b)}, m(b, a));
    return r;
}

MultiVec bivector_from_sharp(const Chart& c, const Mat& p) { return from_sharp<MultiVec>(c, p); }
DiffForm form_from_sharp(const Chart& c, const Mat& w) { return from_sharp<DiffForm>(c, w); }

Mat dual_endo(const TanEndo& j) { return j.transpose(); }

bool squares_to_minus_one(const TanEndo& j) { return j * j == -Mat::identity(j.rows); }

void require_almost_complex(const TanEndo& j) {
    if (!j.is_square() || !squares_to_minus_one(j)) fail("NotAlmostComplex", "tangent endomorphism does not square to -1");
}

DiffForm type_project(const DiffForm& w, const TanEndo& j, unsigned p, unsigned q) {
    require_chart_endo(w.chart(), j);
    require_almost_complex(j);
    if (p + q != w.degree()) return DiffForm(w.chart(), w.degree());
    return slot_transform(w, proj10(j), proj01(j), p, false);
}

MultiVec type_project(const MultiVec& v, const TanEndo& j, unsigned p, unsigned q) {
    require_chart_endo(v.chart(), j);
    require_almost_complex(j);
    if (p + q != v.degree()) return MultiVec(v.chart(), v.degree());
    return slot_transform(v, proj10(j), proj01(j), p, true);
}

std::vector<Vec> nijenhuis_tangent(const Chart& c, const TanEndo& j) {
    require_chart_endo(c, j);
    require_almost_complex(j);
    const std::size_t n = c.dim();
    std::vector<Vec> out;
    out.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Vec x(n, c.zero()), y(n, c.zero());
            x[a] = Scalar::constant(c.vars(), 1);
            y[b] = Scalar::constant(c.vars(), 1);
            Vec jx = j * x, jy = j * y;
            out.push_back(lie_bracket(c, jx, jy) - j * lie_bracket(c, jx, y) - j * lie_bracket(c, x, jy) -
                          lie_bracket(c, x, y));
        }
    return out;
}

bool is_integrable(const Chart& c, const TanEndo& j) {
    for (const auto& v : nijenhuis_tangent(c, j))
        if (!is_zero(v)) return false;
    return true;
}

namespace {

DiffForm shifted_d(const DiffForm& w, const TanEndo& j, bool bar, bool check) {
    if (check && !is_integrable(w.chart(), j)) fail("NotIntegrable", "tangent complex structure has nonzero Nijenhuis torsion");
    const unsigned k = w.degree();
    DiffForm r(w.chart(), k + 1);
    for (unsigned p = 0; p <= k; ++p) {
        DiffForm part = type_project(w, j, p, k - p);
        if (part.is_zero()) continue;
        DiffForm dp = ext_d(part);
        r += bar ? type_project(dp, j, p, k - p + 1) : type_project(dp, j, p + 1, k - p);
    }
    return r;
}

}  // namespace

DiffForm dbar(const DiffForm& w, const TanEndo& j, bool require_integrable) {
    return shifted_d(w, j, true, require_integrable);
}
DiffForm del(const DiffForm& w, const TanEndo& j, bool require_integrable) {
    return shifted_d(w, j, false, require_integrable);
}

Report holomorphic_poisson_check(const MultiVec& pi1, const MultiVec& pi2, const TanEndo& j) {
    require_same_chart(pi1.chart(), pi2.chart());
    const Chart& c = pi1.chart();
    if (!is_integrable(c, j)) fail("NotIntegrable", "tangent complex structure has nonzero Nijenhuis torsion");
    Report rep;
    rep.title = "holomorphic_poisson";
    rep.conventions.push_back("pi#(xi) = pi(xi, .)");
    Mat p1 = sharp(pi1), p2 = sharp(pi2);
    Mat lhs1 = -(j * p1), lhs2 = -(p1 * dual_endo(j));
    rep.add("pi2# = -j pi1#", p2 == lhs1, json{{"pi2#", mat_json(p2)}, {"-j pi1#", mat_json(lhs1)}});
    rep.add("pi2# = -pi1# j*", p2 == lhs2, json{{"pi2#", mat_json(p2)}, {"-pi1# j*", mat_json(lhs2)}});
    MultiVec s11 = schouten(pi1, pi1), s22 = schouten(pi2, pi2), s12 = schouten(pi1, pi2);
    rep.add("[pi1,pi1] = 0", s11.is_zero(), alt_json(s11));
    rep.add("[pi2,pi2] = 0", s22.is_zero(), alt_json(s22));
    rep.add("[pi1,pi2] = 0", s12.is_zero(), alt_json(s12));
    MultiVec pi = pi1 + GaussRat::I() * pi2;
    MultiVec pi20 = type_project(pi, j, 2, 0);
    rep.add("pi1 + i pi2 has type (2,0)", pi20 == pi, alt_json(pi - pi20));
    // dbar on (2,0)-bivectors: the (2,0) part of L_{Xbar} pi for Xbar in T^{0,1}.
    Mat q01 = proj01(j);
    json defect = json::array();
    for (std::size_t a = 0; a < c.dim(); ++a) {
        MultiVec xbar = vector_field(c, q01.col(a));
        MultiVec part = type_project(schouten(xbar, pi20), j, 2, 0);
        if (!part.is_zero()) defect.push_back(json{{"direction", c.name(a)}, {"residual", alt_json(part)}});
    }
    rep.add("dbar(pi1 + i pi2) = 0", defect.empty(), defect);
    return rep;
}

HyperKahlerForms hyperkahler_forms(const Chart& c, const Mat& g, const TanEndo& i, const TanEndo& j,
                                   const TanEndo& k) {
    for (const Mat* m : {&g, &i, &j, &k}) require_chart_endo(c, *m);
    const Mat minus1 = -Mat::identity(c.dim());
    if (i * i != minus1 || j * j != minus1 || k * k != minus1 || i * j * k != minus1)
        fail("NotQuaternionic", "(i, j, k) violates i^2 = j^2 = k^2 = ijk = -1");
    if (g.transpose() != g) fail("MetricNotSymmetric", "metric matrix is not symmetric");
    if (det(g).is_zero()) fail("MetricNotSymmetric", "metric matrix is degenerate");
    HyperKahlerForms out;
    Report& rep = out.report;
    rep.title = "hyperkahler_forms";
    rep.conventions.push_back("w_a# = g# o a, w#(X) = iota_X w");
    const char* names[] = {"w1", "w2", "w3"};
    const Mat* ends[] = {&i, &j, &k};
    DiffForm* forms[] = {&out.w1, &out.w2, &out.w3};
    for (int a = 0; a < 3; ++a) {
        Mat w = g * *ends[a];
        bool alt = w.transpose() == -w;
        rep.add(std::string(names[a]) + " alternating", alt, json{{"sharp", mat_json(w)}});
        if (!alt) {
            *forms[a] = DiffForm(c, 2);
            continue;
        }
        *forms[a] = form_from_sharp(c, w);
        DiffForm dw = ext_d(*forms[a]);
        rep.add("d" + std::string(names[a]) + " = 0", dw.is_zero(), alt_json(dw));
        rep.data[names[a]] = alt_json(*forms[a]);
    }
    // Definiteness of g at the origin only: Sylvester's leading minors.
    std::vector<GaussRat> origin(c.dim(), GaussRat(0));
    bool pos = true;
    for (std::size_t r = 1; r <= c.dim(); ++r) {
        std::vector<std::size_t> lead(r);
        for (std::size_t t = 0; t < r; ++t) lead[t] = t;
        GaussRat m = det(select(g, lead, lead)).eval(origin);
        if (!m.is_real() || sgn(m.re) <= 0) pos = false;
    }
    rep.data["g positive definite at origin"] = pos;
    return out;
}

template <class A>
static json alt_json_impl(const A& t) {
    json o = json::object();
    for (const auto& [idx, c] : t.comps()) {
        std::string key;
        for (int a : idx) key += (key.empty() ? "" : ",") + t.chart().name(static_cast<std::size_t>(a));
        o[key] = c.str();
    }
    return o;
}

json alt_json(const MultiVec& v) { return alt_json_impl(v); }
json alt_json(const DiffForm& w) { return alt_json_impl(w); }

}  // namespace hxc
