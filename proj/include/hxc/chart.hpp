#pragma once

#include "hxc/error.hpp"
#include "hxc/linalg.hpp"
#include "hxc/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace hxc {

using Index = std::vector<int>;

// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int sort_sign(Index& idx);

/// A single polynomial coordinate chart.
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> coords);
    // Zero-dimensional chart; scalars over it are constants.
    static Chart point();

    std::size_t dim() const { return vars_ ? vars_->size() : 0; }
    const VarList& vars() const { return vars_; }
    const std::string& name(std::size_t a) const { return (*vars_)[a]; }
    std::size_t index_of(const std::string& coord) const;
    Scalar x(std::size_t a) const { return Scalar::variable(vars_, a); }
    Scalar parse(const std::string& text) const { return parse_scalar(text, vars_).bind(vars_); }
    Scalar zero() const { return Scalar::constant(vars_, GaussRat(0)); }

    friend bool operator==(const Chart& a, const Chart& b) { return same_vars(a.vars_, b.vars_); }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

private:
    VarList vars_;
};

void require_same_chart(const Chart& a, const Chart& b);

enum class AltKind { Vector, Form };

/// Alternating tensor of fixed degree; only sorted index sets are stored.
template <AltKind K>
class Alt {
public:
    Alt() = default;
    Alt(Chart c, unsigned degree) : chart_(std::move(c)), degree_(degree) {}

    const Chart& chart() const { return chart_; }
    unsigned degree() const { return degree_; }
    const std::map<Index, Scalar>& comps() const { return comps_; }

    // Component at any ordering of the index set (sign applied).
    Scalar at(Index idx) const {
        int s = sort_sign(idx);
        if (s == 0) return chart_.zero();
        auto it = comps_.find(idx);
        if (it == comps_.end()) return chart_.zero();
        return s > 0 ? it->second : -it->second;
    }

    void add(Index idx, const Scalar& c) {
        if (idx.size() != degree_) fail("ShapeError", "index length does not match degree");
        if (c.is_zero()) return;
        int s = sort_sign(idx);
        if (s == 0) return;
        Scalar& slot = comps_[idx];
        if (s > 0) slot += c;
        else slot -= c;
        if (slot.is_zero()) comps_.erase(idx);
    }

    void set(Index idx, const Scalar& c) {
        int s = sort_sign(idx);
        if (s == 0) return;
        comps_.erase(idx);
        add(idx, s > 0 ? c : -c);
    }

    bool is_zero() const { return comps_.empty(); }

    Alt& operator+=(const Alt& o) {
        check(o);
        for (const auto& [i, c] : o.comps_) add(i, c);
        return *this;
    }
    Alt& operator-=(const Alt& o) {
        check(o);
        for (const auto& [i, c] : o.comps_) add(i, -c);
        return *this;
    }
    friend Alt operator+(Alt a, const Alt& b) { return a += b; }
    friend Alt operator-(Alt a, const Alt& b) { return a -= b; }
    friend Alt operator-(const Alt& a) { return Alt(a.chart_, a.degree_) - a; }
    friend Alt operator*(const Scalar& s, const Alt& a) {
        Alt r(a.chart_, a.degree_);
        for (const auto& [i, c] : a.comps_) r.add(i, s * c);
        return r;
    }
    friend Alt operator*(const GaussRat& s, const Alt& a) { return Scalar(s) * a; }
    friend bool operator==(const Alt& a, const Alt& b) {
        return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const Alt& a, const Alt& b) { return !(a == b); }

    Alt conj() const {
        Alt r(chart_, degree_);
        for (const auto& [i, c] : comps_) r.add(i, c.conj());
        return r;
    }

    std::string str() const;

private:
    void check(const Alt& o) const {
        require_same_chart(chart_, o.chart_);
        if (degree_ != o.degree_) fail("ShapeError", "degree mismatch");
    }

    Chart chart_;
    unsigned degree_ = 0;
    std::map<Index, Scalar> comps_;
};

using MultiVec = Alt<AltKind::Vector>;
using DiffForm = Alt<AltKind::Form>;

// Vector fields and 1-forms as plain component vectors in the coordinate frame.
MultiVec vector_field(const Chart& c, const Vec& comps);
DiffForm one_form(const Chart& c, const Vec& comps);
Vec components(const MultiVec& x);
Vec components(const DiffForm& x);

MultiVec wedge(const MultiVec& a, const MultiVec& b);
DiffForm wedge(const DiffForm& a, const DiffForm& b);

DiffForm ext_d(const DiffForm& w);
DiffForm df(const Chart& c, const Scalar& f);
DiffForm interior(const MultiVec& x, const DiffForm& w);
// Contraction of a multivector by a 1-form in the first slot: (iota_xi P)(...) = P(xi, ...).
MultiVec interior(const DiffForm& xi, const MultiVec& p);
// Full pairing of equal-degree multivector and form, determinant convention.
Scalar pair(const MultiVec& p, const DiffForm& w);

Vec lie_bracket(const Chart& c, const Vec& x, const Vec& y);
MultiVec lie_bracket(const MultiVec& x, const MultiVec& y);
Scalar apply_vector(const Chart& c, const Vec& x, const Scalar& f);

DiffForm lie_derivative(const MultiVec& x, const DiffForm& w);
// Transport formula: X^a d_a w_I + sum over slots of w(.., d X, ..).
DiffForm lie_derivative_direct(const MultiVec& x, const DiffForm& w);

MultiVec schouten(const MultiVec& p, const MultiVec& q);

// pi#(xi) = pi(xi, .); matrix acting on dx-coefficients, P(b,a) = pi^{ab}.
Mat sharp(const MultiVec& pi);
// w#(X) = iota_X w; matrix acting on vector coefficients, W(b,a) = w_{ab}.
Mat sharp(const DiffForm& w);
MultiVec bivector_from_sharp(const Chart& c, const Mat& p);
DiffForm form_from_sharp(const Chart& c, const Mat& w);

// Tangent endomorphism acting on coordinate vector fields; column a is j(d_a).
using TanEndo = Mat;
Mat dual_endo(const TanEndo& j);  // j* on 1-forms in the dx frame

bool squares_to_minus_one(const TanEndo& j);
void require_almost_complex(const TanEndo& j);

// (p,q) type projection, slot-wise with (1 - i j)/2 on (1,0) slots.
DiffForm type_project(const DiffForm& w, const TanEndo& j, unsigned p, unsigned q);
MultiVec type_project(const MultiVec& v, const TanEndo& j, unsigned p, unsigned q);

// Nijenhuis torsion on coordinate fields, entry a*n+b is N_j(d_a, d_b).
std::vector<Vec> nijenhuis_tangent(const Chart& c, const TanEndo& j);
bool is_integrable(const Chart& c, const TanEndo& j);

// With require_integrable off the projections are applied regardless of torsion.
DiffForm dbar(const DiffForm& w, const TanEndo& j, bool require_integrable = true);
DiffForm del(const DiffForm& w, const TanEndo& j, bool require_integrable = true);

Report holomorphic_poisson_check(const MultiVec& pi1, const MultiVec& pi2, const TanEndo& j);

struct HyperKahlerForms {
    DiffForm w1, w2, w3;
    Report report;
};
HyperKahlerForms hyperkahler_forms(const Chart& c, const Mat& g, const TanEndo& i, const TanEndo& j,
                                   const TanEndo& k);

json alt_json(const MultiVec& v);
json alt_json(const DiffForm& w);

}  // namespace hxc
