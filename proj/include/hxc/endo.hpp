#pragma once

#include "hxc/courant.hpp"

namespace hxc {

/// Bundle endomorphism of a Courant backend, as a matrix in the standard frame.
class Endo {
public:
    Endo(Backend b, const Mat& m);
    static Endo identity(const Backend& b);
    // [[a, b], [c, d]] on a chart backend; every block is n x n.
    static Endo from_blocks(const Backend& b, const Mat& a, const Mat& bl, const Mat& c, const Mat& d);

    const Backend& backend() const { return b_; }
    const Mat& mat() const { return m_; }
    Mat block(int row, int col) const;  // 0/1 block indices, chart backends only

    Section operator()(const Section& u) const;
    friend Endo operator*(const Endo& f, const Endo& g);
    friend Endo operator+(const Endo& f, const Endo& g);
    friend Endo operator-(const Endo& f, const Endo& g);
    friend Endo operator-(const Endo& f);
    friend Endo operator*(const GaussRat& c, const Endo& f);
    friend Endo operator*(const Scalar& c, const Endo& f);
    friend bool operator==(const Endo& f, const Endo& g);
    friend bool operator!=(const Endo& f, const Endo& g) { return !(f == g); }

private:
    Backend b_;
    Mat m_;
};

struct Triple {
    Endo I, J, K;
    Triple(Endo i, Endo j, Endo k);
    const Endo& operator[](int a) const { return a == 0 ? I : a == 1 ? J : K; }
};

// diag(j, -j*) for a tangent endomorphism j.
Endo lift_complex(const Backend& b, const Mat& j);
// [[0, w#^-1], [-w#, 0]] for a nondegenerate 2-form w with unit determinant.
Endo lift_symplectic(const Backend& b, const DiffForm& w);
// e F e^-1 for an automorphism e (e.g. a B-field transform).
Endo conjugate(const Endo& f, const Mat& e);
Triple conjugate(const Triple& t, const Mat& e);

Check is_orthogonal(const Endo& f);
Check is_skew(const Endo& f);
Check squares_to_minus_one(const Endo& f);
Report quaternionic_check(const Triple& t);

Section nijenhuis(const Endo& f, const Endo& g, const Section& u, const Section& v);

// N_{F,G}(e_a, e_b, e_c) = <N(F,G)(e_a, e_b), e_c> on the standard frame.
struct NijenhuisForm {
    std::size_t rank = 0;
    GaussRat lambda;  // FG + GF = lambda id
    std::vector<Scalar> values;
    const Scalar& operator()(std::size_t a, std::size_t b, std::size_t c) const {
        return values[(a * rank + b) * rank + c];
    }
    bool is_zero() const;
    bool is_alternating() const;
};

// Throws HypothesisViolated unless F, G are skew and FG + GF is a real constant multiple of id.
NijenhuisForm nijenhuis_form(const Endo& f, const Endo& g);

// pi_F(df, dg) = <F Df, Dg>.
MultiVec poisson_of(const Endo& f);

// ({{f,g},h} + cyclic, -1/4 N_{F,F}(Df, Dg, Dh)) with {f,g} = <F Df, Dg>.
std::pair<Scalar, Scalar> jacobiator_check(const Endo& f, const Scalar& x, const Scalar& y, const Scalar& z);

// Residuals of N(F,G) on every frame pair; empty when all vanish.
std::vector<std::pair<std::pair<std::size_t, std::size_t>, Section>> nijenhuis_on_frame(const Endo& f, const Endo& g);

Report hypercomplex_check(const Triple& t);
// J^2 = -1, orthogonality and N(J,J) = 0 on the standard frame.
Report complex_structure_check(const Endo& j);

Endo sphere_structure(const Triple& t, const GaussRat& l1, const GaussRat& l2, const GaussRat& l3);

}  // namespace hxc
