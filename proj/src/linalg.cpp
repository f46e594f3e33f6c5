#include "hxc/linalg.hpp"

#include "hxc/error.hpp"

#include <unordered_map>

namespace hxc {

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail("ShapeError", "vector sizes differ");
    Vec r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail("ShapeError", "vector sizes differ");
    Vec r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
    return r;
}

Vec operator-(const Vec& a) {
    Vec r = a;
    for (auto& x : r) x = -x;
    return r;
}

Vec operator*(const Scalar& s, const Vec& v) {
    Vec r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = s * v[k];
    return r;
}

Vec operator*(const GaussRat& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= c;
    return r;
}

Vec conj(const Vec& v) {
    Vec r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k].conj();
    return r;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec zero_vec(std::size_t n) { return Vec(n); }

std::string vec_str(const Vec& v) {
    std::string out = "[";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k].str();
    return out + "]";
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar(1);
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cs) {
    if (cs.empty()) return Mat();
    Mat m(cs[0].size(), cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j)
        for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = cs[j].at(i);
    return m;
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(std::size_t i) const {
    Vec v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
}

Mat Mat::transpose() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::conj() const {
    Mat c = *this;
    for (auto& x : c.a) x = x.conj();
    return c;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Mat b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Mat::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::is_constant() const {
    for (const auto& x : a)
        if (!x.is_constant()) return false;
    return true;
}

Mat Mat::bind_all(const VarList& vars) const {
    Mat r = *this;
    for (auto& x : r.a) x = x.bind(vars);
    return r;
}

Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail("ShapeError", "matrix shapes differ");
    Mat r = x;
    for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] += y.a[k];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail("ShapeError", "matrix shapes differ");
    Mat r = x;
    for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] -= y.a[k];
    return r;
}

Mat operator-(const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v = -v;
    return r;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) fail("ShapeError", "matrix product shape mismatch");
    Mat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Scalar& xik = x(i, k);
            if (xik.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                const Scalar& ykj = y(k, j);
                if (!ykj.is_zero()) r(i, j) += xik * ykj;
            }
        }
    return r;
}

Mat operator*(const Scalar& s, const Mat& m) {
    Mat r = m;
    for (auto& v : r.a) v = s * v;
    return r;
}

Mat operator*(const GaussRat& c, const Mat& m) {
    Mat r = m;
    for (auto& v : r.a) v *= c;
    return r;
}

Vec operator*(const Mat& m, const Vec& v) {
    if (m.cols != v.size()) fail("ShapeError", "matrix-vector shape mismatch");
    Vec r(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Scalar& mij = m(i, j);
            if (!mij.is_zero() && !v[j].is_zero()) r[i] += mij * v[j];
        }
    return r;
}

bool operator==(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t k = 0; k < x.a.size(); ++k)
        if (x.a[k] != y.a[k]) return false;
    return true;
}

Scalar det(const Mat& m) {
    if (!m.is_square()) fail("ShapeError", "determinant of a non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return Scalar(1);
    // minors[mask] = det of rows [0, popcount(mask)) against the columns in mask.
    std::vector<Scalar> prev(std::size_t(1) << n), cur(std::size_t(1) << n);
    prev[0] = Scalar(1);
    for (std::size_t r = 0; r < n; ++r) {
        std::fill(cur.begin(), cur.end(), Scalar());
        for (std::size_t mask = 0; mask < prev.size(); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != r + 1) continue;
            Scalar acc;
            // Laplace expansion along row r.
            int pos = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (!(mask >> c & 1u)) continue;
                ++pos;
                const Scalar& entry = m(r, c);
                const Scalar& sub = prev[mask & ~(std::size_t(1) << c)];
                if (entry.is_zero() || sub.is_zero()) continue;
                // Column c sits at slot pos within the subset; cofactor sign (-1)^(r + pos-1).
                int s = ((r + static_cast<std::size_t>(pos) - 1) % 2 == 0) ? 1 : -1;
                if (s > 0) acc += entry * sub;
                else acc -= entry * sub;
            }
            cur[mask] = std::move(acc);
        }
        std::swap(prev, cur);
    }
    return prev[(std::size_t(1) << n) - 1];
}

Mat select(const Mat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Mat r(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
    return r;
}

Mat adjugate(const Mat& m) {
    const std::size_t n = m.rows;
    Mat adj(n, n);
    if (n == 1) {
        adj(0, 0) = Scalar(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rs, cs;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) rs.push_back(k);
                if (k != i) cs.push_back(k);
            }
            Scalar c = det(select(m, rs, cs));
            adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
        }
    }
    return adj;
}

std::optional<Mat> inverse_unit(const Mat& m) {
    Scalar d = det(m);
    auto c = d.as_constant();
    if (!c || c->is_zero()) return std::nullopt;
    GaussRat inv = GaussRat(1) / *c;
    return inv * adjugate(m);
}

std::string mat_str(const Mat& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows; ++i) out += (i ? ", " : "") + vec_str(m.row(i));
    return out + "]";
}

}  // namespace hxc
