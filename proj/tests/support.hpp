#pragma once

#include "hxc/chart.hpp"

#include <random>

namespace hxt {

using namespace hxc;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    bool coin() { return range(0, 1) == 1; }

    GaussRat coeff(bool complex = true) {
        long den = range(1, 3);
        GaussRat c = GaussRat::frac(range(-4, 4), den);
        if (complex && coin()) c += GaussRat::I() * GaussRat::frac(range(-3, 3), range(1, 2));
        return c;
    }

    // Random polynomial with up to `terms` terms and total degree <= deg.
    Scalar poly(const VarList& vars, unsigned deg = 3, int terms = 4, bool complex = true) {
        Scalar s = Scalar::constant(vars, 0);
        int t = static_cast<int>(range(0, terms));
        for (int k = 0; k < t; ++k) {
            Mono m(vars->size(), 0);
            long left = range(0, deg);
            while (left-- > 0) m[static_cast<std::size_t>(range(0, static_cast<long>(vars->size()) - 1))] += 1;
            s += Scalar::monomial(vars, m, coeff(complex));
        }
        return s;
    }

    template <class A>
    A alt(const Chart& c, unsigned degree, unsigned deg = 3, int comps = 3, bool complex = true) {
        A a(c, degree);
        int t = static_cast<int>(range(1, comps));
        for (int k = 0; k < t; ++k) {
            Index idx;
            for (unsigned s = 0; s < degree; ++s) idx.push_back(static_cast<int>(range(0, static_cast<long>(c.dim()) - 1)));
            a.add(idx, poly(c.vars(), deg, 2, complex));
        }
        return a;
    }

    Vec vec(const Chart& c, std::size_t n, unsigned deg = 2, bool complex = true) {
        Vec v(n);
        for (auto& x : v) x = poly(c.vars(), deg, 2, complex);
        return v;
    }
};

inline Mat mat(const Chart& c, const std::vector<std::vector<std::string>>& rows) {
    Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = c.parse(rows[i][j]);
    return m;
}

inline Vec vec(const Chart& c, const std::vector<std::string>& xs) {
    Vec v;
    for (const auto& x : xs) v.push_back(c.parse(x));
    return v;
}

// Standard quaternionic structures on R^4 acting on coordinate fields.
// Left multiplication by i, j, k on H = span(1, i, j, k) with coordinates (x0..x3).
inline Mat quat_left(const Chart& c, int which) {
    static const char* tables[3][4][4] = {
        {{"0", "-1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "0", "-1"}, {"0", "0", "1", "0"}},
        {{"0", "0", "-1", "0"}, {"0", "0", "0", "1"}, {"1", "0", "0", "0"}, {"0", "-1", "0", "0"}},
        {{"0", "0", "0", "-1"}, {"0", "0", "-1", "0"}, {"0", "1", "0", "0"}, {"1", "0", "0", "0"}},
    };
    Mat m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) m(r, s) = c.parse(tables[which][r][s]);
    return m;
}

}  // namespace hxt
