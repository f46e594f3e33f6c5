#pragma once

#include <gmpxx.h>

#include <string>

namespace hxc {

/// Exact complex rational re + im*i. mpq_class keeps both parts canonical.
struct GaussRat {
    mpq_class re{0}, im{0};

    GaussRat() = default;
    GaussRat(long v) : re(v) {}
    GaussRat(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat I() { return GaussRat(0, 1); }
    static GaussRat frac(long p, long q) {
        mpq_class r(p, q);
        r.canonicalize();
        return GaussRat(r);
    }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }
    GaussRat operator-() const { return GaussRat(-re, -im); }

    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        mpq_class r = re * o.re - im * o.im;
        mpq_class i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o);

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::string str() const;
};

// Parses "p", "p/q" with an optional sign; throws SyntaxError.
mpq_class parse_rational(const std::string& s);

}  // namespace hxc
