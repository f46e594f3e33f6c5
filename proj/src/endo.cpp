#include "hxc/endo.hpp"

#include "hxc/error.hpp"

namespace hxc {

Endo::Endo(Backend b, const Mat& m) : b_(std::move(b)) {
    if (m.rows != b_.rank() || m.cols != b_.rank())
        fail("ShapeError", "endomorphism must be " + std::to_string(b_.rank()) + " x " + std::to_string(b_.rank()));
    m_ = m.bind_all(b_.chart().vars());
}

Endo Endo::identity(const Backend& b) { return Endo(b, Mat::identity(b.rank())); }

Endo Endo::from_blocks(const Backend& b, const Mat& a, const Mat& bl, const Mat& c, const Mat& d) {
    if (!b.is_chart()) fail("UnsupportedOnPoint", "block form needs a chart backend");
    const std::size_t n = b.dim();
    for (const Mat* x : {&a, &bl, &c, &d})
        if (x->rows != n || x->cols != n) fail("ShapeError", "blocks must be " + std::to_string(n) + " x " + std::to_string(n));
    Mat m(2 * n, 2 * n);
    m.set_block(0, 0, a);
    m.set_block(0, n, bl);
    m.set_block(n, 0, c);
    m.set_block(n, n, d);
    return Endo(b, m);
}

Mat Endo::block(int row, int col) const {
    if (!b_.is_chart()) fail("UnsupportedOnPoint", "block form needs a chart backend");
    const std::size_t n = b_.dim();
    return m_.block(static_cast<std::size_t>(row) * n, static_cast<std::size_t>(col) * n, n, n);
}

Section Endo::operator()(const Section& u) const {
    b_.require(u);
    return m_ * u;
}

Endo operator*(const Endo& f, const Endo& g) {
    require_same_backend(f.b_, g.b_);
    return Endo(f.b_, f.m_ * g.m_);
}

Endo operator+(const Endo& f, const Endo& g) {
    require_same_backend(f.b_, g.b_);
    return Endo(f.b_, f.m_ + g.m_);
}

Endo operator-(const Endo& f, const Endo& g) {
    require_same_backend(f.b_, g.b_);
    return Endo(f.b_, f.m_ - g.m_);
}

Endo operator-(const Endo& f) { return Endo(f.b_, -f.m_); }
Endo operator*(const GaussRat& c, const Endo& f) { return Endo(f.b_, c * f.m_); }
Endo operator*(const Scalar& c, const Endo& f) { return Endo(f.b_, c * f.m_); }

bool operator==(const Endo& f, const Endo& g) { return f.b_ == g.b_ && f.m_ == g.m_; }

Triple::Triple(Endo i, Endo j, Endo k) : I(std::move(i)), J(std::move(j)), K(std::move(k)) {
    require_same_backend(I.backend(), J.backend());
    require_same_backend(I.backend(), K.backend());
}

Endo lift_complex(const Backend& b, const Mat& j) {
    if (!b.is_chart()) fail("UnsupportedOnPoint", "lift needs a chart backend");
    const std::size_t n = b.dim();
    if (j.rows != n || j.cols != n) fail("ShapeError", "tangent endomorphism has the wrong size");
    return Endo::from_blocks(b, j, Mat(n, n), Mat(n, n), -dual_endo(j));
}

Endo lift_symplectic(const Backend& b, const DiffForm& w) {
    if (!b.is_chart()) fail("UnsupportedOnPoint", "lift needs a chart backend");
    require_same_chart(b.chart(), w.chart());
    if (w.degree() != 2) fail("ShapeError", "symplectic lift needs a 2-form");
    Mat ws = sharp(w);
    auto inv = inverse_unit(ws);
    if (!inv) fail("NotInvertible", "2-form has no polynomial inverse: det = " + det(ws).str());
    const std::size_t n = b.dim();
    return Endo::from_blocks(b, Mat(n, n), *inv, -ws, Mat(n, n));
}

Endo conjugate(const Endo& f, const Mat& e) {
    auto inv = inverse_unit(e);
    if (!inv) fail("NotInvertible", "conjugating matrix is not invertible over polynomials");
    return Endo(f.backend(), e * f.mat() * *inv);
}

Triple conjugate(const Triple& t, const Mat& e) { return Triple(conjugate(t.I, e), conjugate(t.J, e), conjugate(t.K, e)); }

namespace {

json pair_witness(const Backend& b, std::size_t x, std::size_t y, const Scalar& lhs, const Scalar& rhs) {
    return json{{"U", b.basis_name(x)}, {"V", b.basis_name(y)}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
}

// First nonzero entry of m as a witness.
json mat_witness(const Backend& b, const Mat& m) {
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            if (!m(r, c).is_zero())
                return json{{"row", b.basis_name(r)}, {"column", b.basis_name(c)}, {"residual", m(r, c).str()}};
    return nullptr;
}

}  // namespace

Check is_orthogonal(const Endo& f) {
    const Backend& b = f.backend();
    const Mat& g = b.gram();
    Mat lhs = f.mat().transpose() * g * f.mat();
    Check c{"orthogonal", Status::Pass, nullptr, {}};
    for (std::size_t x = 0; x < b.rank(); ++x)
        for (std::size_t y = 0; y < b.rank(); ++y)
            if (lhs(x, y) != g(x, y)) {
                c.status = Status::Fail;
                c.witness = pair_witness(b, x, y, lhs(x, y), g(x, y));
                return c;
            }
    return c;
}

Check is_skew(const Endo& f) {
    const Backend& b = f.backend();
    const Mat& g = b.gram();
    Mat s = f.mat().transpose() * g + g * f.mat();
    Check c{"skew", Status::Pass, nullptr, {}};
    if (!s.is_zero()) {
        c.status = Status::Fail;
        c.witness = mat_witness(b, s);
    }
    return c;
}

Check squares_to_minus_one(const Endo& f) {
    Mat r = f.mat() * f.mat() + Mat::identity(f.backend().rank());
    Check c{"square = -1", Status::Pass, nullptr, {}};
    if (!r.is_zero()) {
        c.status = Status::Fail;
        c.witness = mat_witness(f.backend(), r);
    }
    return c;
}

Report quaternionic_check(const Triple& t) {
    const Backend& b = t.I.backend();
    Mat one = Mat::identity(b.rank());
    Report rep;
    rep.title = "quaternionic_check";
    const char* names[3] = {"I^2 = -1", "J^2 = -1", "K^2 = -1"};
    for (int a = 0; a < 3; ++a) {
        Mat r = t[a].mat() * t[a].mat() + one;
        rep.add(names[a], r.is_zero(), mat_witness(b, r));
    }
    Mat r = t.I.mat() * t.J.mat() * t.K.mat() + one;
    rep.add("IJK = -1", r.is_zero(), mat_witness(b, r));
    return rep;
}

Section nijenhuis(const Endo& f, const Endo& g, const Section& u, const Section& v) {
    require_same_backend(f.backend(), g.backend());
    const Backend& b = f.backend();
    b.require(u);
    b.require(v);
    Section fu = f(u), gu = g(u), fv = f(v), gv = g(v);
    Section uv = b.dorfman(u, v);
    return b.dorfman(fu, gv) - f(b.dorfman(u, gv)) - g(b.dorfman(fu, v)) + f(g(uv)) + b.dorfman(gu, fv) -
           g(b.dorfman(u, fv)) - f(b.dorfman(gu, v)) + g(f(uv));
}

bool NijenhuisForm::is_zero() const {
    for (const auto& v : values)
        if (!v.is_zero()) return false;
    return true;
}

bool NijenhuisForm::is_alternating() const {
    for (std::size_t a = 0; a < rank; ++a)
        for (std::size_t b = 0; b < rank; ++b)
            for (std::size_t c = 0; c < rank; ++c) {
                if ((*this)(a, b, c) != -(*this)(b, a, c)) return false;
                if ((*this)(a, b, c) != -(*this)(a, c, b)) return false;
            }
    return true;
}

NijenhuisForm nijenhuis_form(const Endo& f, const Endo& g) {
    require_same_backend(f.backend(), g.backend());
    const Backend& b = f.backend();
    if (is_skew(f).status != Status::Pass) fail("HypothesisViolated", "F is not skew-symmetric");
    if (is_skew(g).status != Status::Pass) fail("HypothesisViolated", "G is not skew-symmetric");
    Mat s = f.mat() * g.mat() + g.mat() * f.mat();
    auto lam = s(0, 0).as_constant();
    if (!lam || !lam->is_real() || s != Scalar(*lam) * Mat::identity(b.rank()))
        fail("HypothesisViolated", "FG + GF is not a real constant multiple of the identity");
    NijenhuisForm nf;
    nf.rank = b.rank();
    nf.lambda = *lam;
    nf.values.resize(nf.rank * nf.rank * nf.rank);
    for (std::size_t x = 0; x < nf.rank; ++x)
        for (std::size_t y = 0; y < nf.rank; ++y) {
            Section n = nijenhuis(f, g, b.frame(x), b.frame(y));
            for (std::size_t z = 0; z < nf.rank; ++z) nf.values[(x * nf.rank + y) * nf.rank + z] = b.pairing(n, b.frame(z));
        }
    return nf;
}

MultiVec poisson_of(const Endo& f) {
    const Backend& b = f.backend();
    if (!b.is_chart()) fail("UnsupportedOnPoint", "poisson_of needs a chart backend");
    if (is_skew(f).status != Status::Pass) fail("HypothesisViolated", "F is not skew-symmetric");
    const Chart& c = b.chart();
    MultiVec pi(c, 2);
    for (std::size_t a = 0; a < c.dim(); ++a)
        for (std::size_t d = a + 1; d < c.dim(); ++d)
            pi.add({static_cast<int>(a), static_cast<int>(d)}, b.pairing(f(b.dee(c.x(a))), b.dee(c.x(d))));
    return pi;
}

std::pair<Scalar, Scalar> jacobiator_check(const Endo& f, const Scalar& x, const Scalar& y, const Scalar& z) {
    const Backend& b = f.backend();
    if (!b.is_chart()) fail("UnsupportedOnPoint", "jacobiator_check needs a chart backend");
    if (is_skew(f).status != Status::Pass) fail("HypothesisViolated", "F is not skew-symmetric");
    const VarList& vars = b.chart().vars();
    Scalar p = x.bind(vars), q = y.bind(vars), r = z.bind(vars);
    auto br = [&](const Scalar& u, const Scalar& v) { return b.pairing(f(b.dee(u)), b.dee(v)); };
    Scalar jac = br(br(p, q), r) + br(br(q, r), p) + br(br(r, p), q);
    Scalar nf = b.pairing(nijenhuis(f, f, b.dee(p), b.dee(q)), b.dee(r)) * GaussRat::frac(-1, 4);
    return {jac, nf};
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, Section>> nijenhuis_on_frame(const Endo& f, const Endo& g) {
    const Backend& b = f.backend();
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Section>> out;
    for (std::size_t x = 0; x < b.rank(); ++x)
        for (std::size_t y = 0; y < b.rank(); ++y) {
            Section n = nijenhuis(f, g, b.frame(x), b.frame(y));
            if (!is_zero(n)) out.push_back({{x, y}, n});
        }
    return out;
}

Report hypercomplex_check(const Triple& t) {
    Report q = quaternionic_check(t);
    if (!q.passed()) {
        std::string bad;
        for (const auto& c : q.checks)
            if (c.status != Status::Pass) bad += (bad.empty() ? "" : ", ") + c.name;
        fail("NotQuaternionic", "quaternionic relations fail: " + bad);
    }
    const Backend& b = t.I.backend();
    Report rep;
    rep.title = "hypercomplex_check";
    rep.merge(q);
    const char* letters = "IJK";
    for (int a = 0; a < 3; ++a) {
        Check o = is_orthogonal(t[a]);
        rep.add(std::string(1, letters[a]) + " orthogonal", o.status == Status::Pass, o.witness);
    }
    bool vanish[3][3] = {};
    for (int a = 0; a < 3; ++a)
        for (int c = a; c < 3; ++c) {
            auto res = nijenhuis_on_frame(t[a], t[c]);
            vanish[a][c] = vanish[c][a] = res.empty();
            json w = nullptr;
            if (!res.empty()) {
                const auto& [uv, n] = res.front();
                w = json{{"U", b.basis_name(uv.first)},
                         {"V", b.basis_name(uv.second)},
                         {"value", section_json(b, n)},
                         {"nonzero frame pairs", static_cast<long>(res.size())}};
            }
            std::string name = std::string("N(") + letters[a] + "," + letters[c] + ") = 0";
            rep.add(name, res.empty(), w);
        }
    bool all6 = true;
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) all6 = all6 && vanish[a][c];
    bool n_ij = vanish[0][1], n_ii_jj = vanish[0][0] && vanish[1][1];
    rep.add("N(I,J) = 0 iff all six vanish", n_ij == all6, json{{"N(I,J) = 0", n_ij}, {"all six", all6}});
    rep.add("N(I,I) = N(J,J) = 0 iff all six vanish", n_ii_jj == all6,
            json{{"N(I,I) = N(J,J) = 0", n_ii_jj}, {"all six", all6}});
    rep.data["N(I,J) = 0"] = n_ij;
    rep.data["all six vanish"] = all6;
    return rep;
}

Report complex_structure_check(const Endo& j) {
    const Backend& b = j.backend();
    Report rep;
    rep.title = "complex_structure_check";
    Check sq = squares_to_minus_one(j);
    rep.add("J^2 = -1", sq.status == Status::Pass, sq.witness);
    Check o = is_orthogonal(j);
    rep.add("J orthogonal", o.status == Status::Pass, o.witness);
    auto res = nijenhuis_on_frame(j, j);
    json w = nullptr;
    if (!res.empty()) {
        const auto& [uv, n] = res.front();
        w = json{{"U", b.basis_name(uv.first)}, {"V", b.basis_name(uv.second)}, {"value", section_json(b, n)}};
    }
    rep.add("N(J,J) = 0", res.empty(), w);
    return rep;
}

Endo sphere_structure(const Triple& t, const GaussRat& l1, const GaussRat& l2, const GaussRat& l3) {
    if (!l1.is_real() || !l2.is_real() || !l3.is_real() || l1 * l1 + l2 * l2 + l3 * l3 != GaussRat(1))
        fail("NotUnitVector", "coefficients must be real with l1^2 + l2^2 + l3^2 = 1");
    return l1 * t.I + l2 * t.J + l3 * t.K;
}

}  // namespace hxc
