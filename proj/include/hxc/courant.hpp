#pragma once

#include "hxc/chart.hpp"

#include <memory>
#include <optional>

namespace hxc {

// A section in the backend's standard frame. On a chart of dimension n the
// first n entries are d_a coefficients and the last n are dx_a coefficients.
using Section = Vec;

/// Courant algebroid with one of two exact backends: (twisted) T + T* over a
/// chart, or a constant-structure algebra over a point (anchor 0, D = 0).
class Backend {
public:
    enum class Kind { Chart, Point };

    // Throws ConstructionError when the twist is not a closed 3-form.
    static Backend standard(const Chart& c, std::optional<DiffForm> twist = std::nullopt);
    // c[a][b][k]: e_a o e_b = sum_k c[a][b][k] e_k. Pairing must be symmetric, invertible
    // and ad-invariant.
    static Backend point(std::vector<std::vector<std::vector<GaussRat>>> consts, const Mat& pairing,
                         std::vector<std::string> basis_names = {});
    // The quaternions with the commutator bracket and {1, i, j, k} orthonormal.
    static Backend quaternions();

    Kind kind() const { return impl_->kind; }
    bool is_chart() const { return impl_->kind == Kind::Chart; }
    const Chart& chart() const { return impl_->chart; }
    std::size_t dim() const { return impl_->kind == Kind::Chart ? impl_->chart.dim() : 0; }
    std::size_t rank() const { return impl_->rank; }
    const std::optional<DiffForm>& twist() const { return impl_->twist; }
    const Mat& gram() const { return impl_->gram; }
    const std::string& basis_name(std::size_t a) const { return impl_->names[a]; }

    Section zero() const;
    Section frame(std::size_t a) const;
    std::vector<Section> frame() const;
    Section make(const Vec& vec_part, const Vec& form_part) const;
    Vec vec_part(const Section& u) const;
    Vec form_part(const Section& u) const;

    Section dorfman(const Section& u, const Section& v) const;
    Scalar pairing(const Section& u, const Section& v) const;
    Scalar anchor(const Section& u, const Scalar& f) const;
    Vec anchor_vec(const Section& u) const;
    Section dee(const Scalar& f) const;  // UnsupportedOnPoint on a point backend
    Section dee_or_zero(const Scalar& f) const;
    Scalar scalar(const std::string& text) const { return impl_->chart.parse(text); }
    Scalar constant(const GaussRat& c) const { return Scalar::constant(impl_->chart.vars(), c); }

    void require(const Section& u) const;
    friend bool operator==(const Backend& a, const Backend& b) { return a.impl_ == b.impl_; }
    friend bool operator!=(const Backend& a, const Backend& b) { return !(a == b); }

private:
    struct Impl {
        Kind kind = Kind::Chart;
        Chart chart;
        std::size_t rank = 0;
        std::optional<DiffForm> twist;
        std::vector<std::vector<std::vector<GaussRat>>> consts;
        Mat gram;
        std::vector<std::string> names;
    };
    explicit Backend(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}
    std::shared_ptr<const Impl> impl_;
};

void require_same_backend(const Backend& a, const Backend& b);

// Section equality after binding every entry to the backend's coordinates.
bool section_eq(const Section& a, const Section& b);
json section_json(const Backend& b, const Section& u);

// Default samples: frame sections plus coordinate-scaled copies.
std::vector<Section> default_samples(const Backend& b);
std::vector<Scalar> default_funcs(const Backend& b);

Report verify_axioms(const Backend& b, const std::vector<Section>& samples, const std::vector<Scalar>& funcs);
Report verify_axioms(const Backend& b);

// Matrix of the B-field transform X + xi -> X + xi + iota_X B (B must be a closed 2-form).
Mat b_field(const Backend& b, const DiffForm& B);

}  // namespace hxc
