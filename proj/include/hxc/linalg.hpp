#pragma once

#include "hxc/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hxc {

using Vec = std::vector<Scalar>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Scalar& s, const Vec& v);
Vec operator*(const GaussRat& c, const Vec& v);
Vec conj(const Vec& v);
bool is_zero(const Vec& v);
Vec zero_vec(std::size_t n);
std::string vec_str(const Vec& v);

/// Dense matrix of Scalars, row-major.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static Mat identity(std::size_t n);
    static Mat from_columns(const std::vector<Vec>& cols);

    Scalar& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Vec col(std::size_t j) const;
    Vec row(std::size_t i) const;
    Mat transpose() const;
    Mat conj() const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);
    bool is_zero() const;
    bool is_square() const { return rows == cols; }
    bool is_constant() const;
    Mat bind_all(const VarList& vars) const;

    friend Mat operator+(const Mat& x, const Mat& y);
    friend Mat operator-(const Mat& x, const Mat& y);
    friend Mat operator-(const Mat& x);
    friend Mat operator*(const Mat& x, const Mat& y);
    friend Mat operator*(const Scalar& s, const Mat& m);
    friend Mat operator*(const GaussRat& c, const Mat& m);
    friend Vec operator*(const Mat& m, const Vec& v);
    friend bool operator==(const Mat& x, const Mat& y);
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

// Determinant by expansion over column subsets (2^n n products); fine for n <= 8.
Scalar det(const Mat& m);
Mat adjugate(const Mat& m);
// Inverse of a matrix whose determinant is a nonzero constant; nullopt otherwise.
std::optional<Mat> inverse_unit(const Mat& m);
Mat select(const Mat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

std::string mat_str(const Mat& m);

}  // namespace hxc
