#include "hxc/courant.hpp"

#include "hxc/error.hpp"

namespace hxc {

namespace {

Mat standard_gram(std::size_t n) {
    Mat g(2 * n, 2 * n);
    for (std::size_t a = 0; a < n; ++a) {
        g(a, n + a) = Scalar(GaussRat::frac(1, 2));
        g(n + a, a) = Scalar(GaussRat::frac(1, 2));
    }
    return g;
}

}  // namespace

Backend Backend::standard(const Chart& c, std::optional<DiffForm> twist) {
    auto p = std::make_shared<Impl>();
    p->kind = Kind::Chart;
    p->chart = c;
    p->rank = 2 * c.dim();
    if (twist) {
        require_same_chart(c, twist->chart());
        if (twist->degree() != 3) fail("ConstructionError", "twist must be a 3-form");
        DiffForm dphi = ext_d(*twist);
        if (!dphi.is_zero()) fail("ConstructionError", "twist is not closed: d(phi) = " + dphi.str());
        p->twist = std::move(twist);
    }
    p->gram = standard_gram(c.dim()).bind_all(c.vars());
    for (std::size_t a = 0; a < c.dim(); ++a) p->names.push_back("d_" + c.name(a));
    for (std::size_t a = 0; a < c.dim(); ++a) p->names.push_back("d" + c.name(a));
    return Backend(std::move(p));
}

Backend Backend::point(std::vector<std::vector<std::vector<GaussRat>>> consts, const Mat& pairing,
                       std::vector<std::string> basis_names) {
    const std::size_t n = consts.size();
    if (n == 0) fail("ConstructionError", "point algebra needs a nonempty basis");
    for (const auto& row : consts) {
        if (row.size() != n) fail("ConstructionError", "structure constants have the wrong shape");
        for (const auto& v : row)
            if (v.size() != n) fail("ConstructionError", "structure constants have the wrong shape");
    }
    if (pairing.rows != n || pairing.cols != n) fail("ConstructionError", "pairing matrix has the wrong size");
    if (!pairing.is_constant()) fail("ConstructionError", "pairing over a point must be constant");
    if (pairing.transpose() != pairing) fail("ConstructionError", "pairing is not symmetric");
    if (det(pairing).is_zero()) fail("ConstructionError", "pairing is degenerate");
    Chart pt = Chart::point();
    auto p = std::make_shared<Impl>();
    p->kind = Kind::Point;
    p->chart = pt;
    p->rank = n;
    p->consts = std::move(consts);
    p->gram = pairing.bind_all(pt.vars());
    if (basis_names.empty())
        for (std::size_t a = 0; a < n; ++a) basis_names.push_back("e" + std::to_string(a));
    if (basis_names.size() != n) fail("ConstructionError", "basis name count does not match dimension");
    p->names = std::move(basis_names);
    Backend b(std::move(p));
    // ad-invariance <x o y, z> + <y, x o z> = 0 on the basis.
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                Scalar s = b.pairing(b.dorfman(b.frame(x), b.frame(y)), b.frame(z)) +
                           b.pairing(b.frame(y), b.dorfman(b.frame(x), b.frame(z)));
                if (!s.is_zero())
                    fail("ConstructionError", "pairing is not ad-invariant at (" + b.basis_name(x) + ", " +
                                                  b.basis_name(y) + ", " + b.basis_name(z) + ")");
            }
    return b;
}

Backend Backend::quaternions() {
    // Basis 1, i, j, k; product e_a e_b = sign * e_idx.
    static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<std::vector<std::vector<GaussRat>>> c(4, std::vector<std::vector<GaussRat>>(4, std::vector<GaussRat>(4)));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            c[a][b][idx[a][b]] += GaussRat(sgn[a][b]);
            c[a][b][idx[b][a]] -= GaussRat(sgn[b][a]);
        }
    return point(std::move(c), Mat::identity(4), {"1", "i", "j", "k"});
}

Section Backend::zero() const { return Section(rank(), constant(0)); }

Section Backend::frame(std::size_t a) const {
    Section s = zero();
    s.at(a) = constant(1);
    return s;
}

std::vector<Section> Backend::frame() const {
    std::vector<Section> out;
    for (std::size_t a = 0; a < rank(); ++a) out.push_back(frame(a));
    return out;
}

Section Backend::make(const Vec& vec_part, const Vec& form_part) const {
    if (!is_chart()) fail("UnsupportedOnPoint", "vector/form split needs a chart backend");
    const std::size_t n = dim();
    if (vec_part.size() != n || form_part.size() != n) fail("ShapeError", "section parts have the wrong size");
    Section s = zero();
    for (std::size_t a = 0; a < n; ++a) {
        s[a] = vec_part[a].bind(chart().vars());
        s[n + a] = form_part[a].bind(chart().vars());
    }
    return s;
}

Vec Backend::vec_part(const Section& u) const {
    require(u);
    if (!is_chart()) return Vec();
    return Vec(u.begin(), u.begin() + static_cast<long>(dim()));
}

Vec Backend::form_part(const Section& u) const {
    require(u);
    if (!is_chart()) return Vec();
    return Vec(u.begin() + static_cast<long>(dim()), u.end());
}

void Backend::require(const Section& u) const {
    if (u.size() != rank()) fail("BackendMismatch", "section does not belong to this backend");
    for (const auto& x : u)
        if (x.bound() && !same_vars(x.vars(), chart().vars()))
            fail("BackendMismatch", "section uses coordinates of another backend");
}

Section Backend::dorfman(const Section& u, const Section& v) const {
    require(u);
    require(v);
    if (!is_chart()) {
        const std::size_t n = rank();
        Section r = zero();
        for (std::size_t a = 0; a < n; ++a) {
            if (u[a].is_zero()) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (v[b].is_zero()) continue;
                Scalar ab = u[a] * v[b];
                for (std::size_t k = 0; k < n; ++k)
                    if (!impl_->consts[a][b][k].is_zero()) r[k] += ab * impl_->consts[a][b][k];
            }
        }
        return r;
    }
    const Chart& c = chart();
    const std::size_t n = dim();
    Vec X = vec_part(u), xi = form_part(u), Y = vec_part(v), eta = form_part(v);
    Vec vec = lie_bracket(c, X, Y);
    Vec form(n, c.zero());
    for (std::size_t b = 0; b < n; ++b) {
        Scalar acc = apply_vector(c, X, eta[b]);
        for (std::size_t a = 0; a < n; ++a) {
            if (!eta[a].is_zero()) acc += eta[a] * X[a].partial(b);
            if (!Y[a].is_zero()) acc -= Y[a] * (xi[b].partial(a) - xi[a].partial(b));
        }
        form[b] = acc;
    }
    if (twist()) {
        // iota_X iota_Y phi = phi(Y, X, .)
        for (const auto& [idx, phi] : twist()->comps()) {
            int p[3] = {idx[0], idx[1], idx[2]};
            static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
            for (int s = 0; s < 6; ++s) {
                auto ya = static_cast<std::size_t>(p[perms[s][0]]), xb = static_cast<std::size_t>(p[perms[s][1]]),
                     out = static_cast<std::size_t>(p[perms[s][2]]);
                if (Y[ya].is_zero() || X[xb].is_zero()) continue;
                Scalar t = Y[ya] * X[xb] * phi;
                if (s < 3) form[out] += t;
                else form[out] -= t;
            }
        }
    }
    return make(vec, form);
}

Scalar Backend::pairing(const Section& u, const Section& v) const {
    require(u);
    require(v);
    Scalar acc = constant(0);
    if (!is_chart()) {
        for (std::size_t a = 0; a < rank(); ++a)
            for (std::size_t b = 0; b < rank(); ++b)
                if (!gram()(a, b).is_zero() && !u[a].is_zero() && !v[b].is_zero()) acc += u[a] * gram()(a, b) * v[b];
        return acc;
    }
    const std::size_t n = dim();
    for (std::size_t a = 0; a < n; ++a) {
        if (!u[n + a].is_zero() && !v[a].is_zero()) acc += u[n + a] * v[a];
        if (!v[n + a].is_zero() && !u[a].is_zero()) acc += v[n + a] * u[a];
    }
    return acc * GaussRat::frac(1, 2);
}

Scalar Backend::anchor(const Section& u, const Scalar& f) const {
    require(u);
    if (!is_chart()) return constant(0);
    return apply_vector(chart(), vec_part(u), f.bind(chart().vars()));
}

Vec Backend::anchor_vec(const Section& u) const {
    if (!is_chart()) return Vec();
    return vec_part(u);
}

Section Backend::dee(const Scalar& f) const {
    if (!is_chart()) fail("UnsupportedOnPoint", "D is identically zero over a point");
    return dee_or_zero(f);
}

Section Backend::dee_or_zero(const Scalar& f) const {
    Section s = zero();
    if (!is_chart()) return s;
    Scalar g = f.bind(chart().vars());
    for (std::size_t a = 0; a < dim(); ++a) s[dim() + a] = g.partial(a);
    return s;
}

void require_same_backend(const Backend& a, const Backend& b) {
    if (a != b) fail("BackendMismatch", "objects live on different backends");
}

bool section_eq(const Section& a, const Section& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != b[k]) return false;
    return true;
}

json section_json(const Backend& b, const Section& u) {
    json o = json::object();
    if (b.is_chart()) {
        json v = json::object(), f = json::object();
        for (std::size_t a = 0; a < b.dim(); ++a) {
            if (!u[a].is_zero()) v[b.chart().name(a)] = u[a].str();
            if (!u[b.dim() + a].is_zero()) f[b.chart().name(a)] = u[b.dim() + a].str();
        }
        o["vector"] = v;
        o["form"] = f;
        return o;
    }
    json cf = json::object();
    for (std::size_t a = 0; a < b.rank(); ++a)
        if (!u[a].is_zero()) cf[b.basis_name(a)] = u[a].str();
    o["coefficients"] = cf;
    return o;
}

std::vector<Section> default_samples(const Backend& b) {
    std::vector<Section> out = b.frame();
    if (!b.is_chart()) return out;
    const std::size_t n = b.dim();
    for (std::size_t a = 0; a < b.rank(); ++a) {
        out.push_back(b.chart().x(a % n) * b.frame(a));
        out.push_back(b.chart().x((a + 1) % n) * b.frame(a));
    }
    return out;
}

std::vector<Scalar> default_funcs(const Backend& b) {
    if (!b.is_chart()) return {b.constant(1), b.constant(GaussRat::frac(-3, 2))};
    const Chart& c = b.chart();
    std::vector<Scalar> fs;
    for (std::size_t a = 0; a < c.dim(); ++a) fs.push_back(c.x(a));
    fs.push_back(c.x(0) * c.x(c.dim() - 1) + c.x(0).pow(2));
    return fs;
}

namespace {

struct AxiomTally {
    std::string name;
    bool ok = true;
    json witness;
    long failures = 0;

    void fail_with(json w) {
        if (ok) witness = std::move(w);
        ok = false;
        ++failures;
    }
};

}  // namespace

Report verify_axioms(const Backend& b, const std::vector<Section>& samples, const std::vector<Scalar>& funcs) {
    for (const auto& s : samples) b.require(s);
    const std::size_t N = samples.size();
    auto sj = [&](const Section& s) { return section_json(b, s); };
    std::vector<std::vector<Section>> table(N, std::vector<Section>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) table[i][j] = b.dorfman(samples[i], samples[j]);

    AxiomTally a1{"x o (y o z) = (x o y) o z + y o (x o z)"};
    AxiomTally a2{"rho(x o y) = [rho(x), rho(y)]"};
    AxiomTally a3{"x o fy = (rho(x) f) y + f (x o y)"};
    AxiomTally a4{"x o y + y o x = 2 D<x, y>"};
    AxiomTally a5{"Df o x = 0"};
    AxiomTally a6{"rho(x) <y, z> = <x o y, z> + <y, x o z>"};

    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const Section& x = samples[i];
            const Section& y = samples[j];
            for (std::size_t k = 0; k < N; ++k) {
                Section lhs = b.dorfman(x, table[j][k]);
                Section rhs = b.dorfman(table[i][j], samples[k]) + b.dorfman(y, table[i][k]);
                if (!section_eq(lhs, rhs))
                    a1.fail_with(json{{"x", sj(x)}, {"y", sj(y)}, {"z", sj(samples[k])}, {"residual", sj(lhs - rhs)}});
                Scalar l6 = b.anchor(x, b.pairing(y, samples[k]));
                Scalar r6 = b.pairing(table[i][j], samples[k]) + b.pairing(y, table[i][k]);
                if (l6 != r6)
                    a6.fail_with(json{{"x", sj(x)}, {"y", sj(y)}, {"z", sj(samples[k])}, {"residual", (l6 - r6).str()}});
            }
            if (b.is_chart()) {
                Vec l2 = b.anchor_vec(table[i][j]);
                Vec r2 = lie_bracket(b.chart(), b.anchor_vec(x), b.anchor_vec(y));
                if (l2 != r2) a2.fail_with(json{{"x", sj(x)}, {"y", sj(y)}, {"residual", vec_json(l2 - r2)}});
            }
            for (const auto& f : funcs) {
                Scalar fb = f.bind(b.chart().vars());
                Section lhs = b.dorfman(x, fb * y);
                Section rhs = b.anchor(x, fb) * y + fb * table[i][j];
                if (!section_eq(lhs, rhs))
                    a3.fail_with(json{{"x", sj(x)}, {"y", sj(y)}, {"f", fb.str()}, {"residual", sj(lhs - rhs)}});
            }
            Section sym = table[i][j] + table[j][i];
            Section twice = Scalar(2) * b.dee_or_zero(b.pairing(x, y));
            if (!section_eq(sym, twice)) a4.fail_with(json{{"x", sj(x)}, {"y", sj(y)}, {"residual", sj(sym - twice)}});
        }
    for (const auto& f : funcs)
        for (const auto& x : samples) {
            Section r = b.dorfman(b.dee_or_zero(f), x);
            if (!is_zero(r)) a5.fail_with(json{{"f", f.str()}, {"x", sj(x)}, {"residual", sj(r)}});
        }

    Report rep;
    rep.title = "verify_axioms";
    for (auto* a : {&a1, &a2, &a3, &a4, &a5, &a6}) {
        json w = a->witness;
        if (!a->ok) w["failures"] = a->failures;
        rep.add(a->name, a->ok, w);
    }
    if (b.is_chart()) {
        // The bracket is not skew: witness on (d_0, x0 dx0).
        const Chart& c = b.chart();
        Section u = b.frame(0), v = c.x(0) * b.frame(b.dim());
        Section sym = b.dorfman(u, v) + b.dorfman(v, u);
        bool witnessed = !is_zero(sym) && section_eq(sym, Scalar(2) * b.dee(b.pairing(u, v)));
        rep.add("non-skew bracket witnessed on (d_" + c.name(0) + ", " + c.name(0) + " d" + c.name(0) + ")", witnessed,
                json{{"symmetric part", sj(sym)}});
        rep.data["symmetric part on (d_0, x0 dx0)"] = sj(sym);
        if (b.twist()) rep.conventions.push_back("twisted bracket adds iota_X iota_Y phi to the form part");
    }
    rep.data["samples"] = static_cast<long>(N);
    rep.data["functions"] = static_cast<long>(funcs.size());
    return rep;
}

Report verify_axioms(const Backend& b) { return verify_axioms(b, default_samples(b), default_funcs(b)); }

Mat b_field(const Backend& b, const DiffForm& B) {
    if (!b.is_chart()) fail("UnsupportedOnPoint", "B-field transforms need a chart backend");
    require_same_chart(b.chart(), B.chart());
    if (B.degree() != 2) fail("ShapeError", "B-field must be a 2-form");
    DiffForm dB = ext_d(B);
    if (!dB.is_zero()) fail("NotClosed", "B-field is not closed: dB = " + dB.str());
    const std::size_t n = b.dim();
    Mat m = Mat::identity(2 * n).bind_all(b.chart().vars());
    m.set_block(n, 0, sharp(B));
    return m;
}

}  // namespace hxc
