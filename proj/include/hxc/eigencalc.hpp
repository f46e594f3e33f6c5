#pragma once

#include "hxc/endo.hpp"

#include <functional>

namespace hxc {

/// Ordered list of sections with a certificate of pointwise independence: a
/// square minor of the coefficient matrix whose determinant is a nonzero constant.
class Frame {
public:
    // Throws NoUnitMinor when no certificate exists, NotIsotropic when `isotropic`
    // is requested and some pair pairs nontrivially.
    static Frame make(const Backend& b, std::vector<Section> sections, bool isotropic = true);
    // Greedily keeps candidates that extend the certified span, up to `limit` sections.
    static Frame greedy(const Backend& b, const std::vector<Section>& candidates, std::size_t limit,
                        bool isotropic = true);

    const Backend& backend() const { return impl_->b; }
    std::size_t size() const { return impl_->s.size(); }
    const Section& operator[](std::size_t a) const { return impl_->s[a]; }
    const std::vector<Section>& sections() const { return impl_->s; }
    const std::vector<std::size_t>& certificate() const { return impl_->rows; }
    bool isotropic() const { return impl_->isotropic; }

    // Polynomial coefficients of u in the frame; NotInSpan otherwise.
    Vec coords(const Section& u) const;
    std::optional<Vec> try_coords(const Section& u) const;
    Section combine(const Vec& c) const;
    Frame conj() const;

    // First frame pair whose bracket leaves the span, as a JSON witness; null if involutive.
    json involutivity_defect() const;
    void require_involutive() const;

    friend bool operator==(const Frame& a, const Frame& b) { return a.impl_ == b.impl_; }
    friend bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }

private:
    struct Impl {
        Backend b;
        std::vector<Section> s;
        std::vector<std::size_t> rows;
        Mat minv;
        bool isotropic = false;
    };
    explicit Frame(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Alternating multilinear form on a frame, stored by values on sorted index sets.
/// Read as a multivector of the dual bundle through the pair's duality.
class FrameForm {
public:
    FrameForm(Frame f, unsigned degree) : frame_(std::move(f)), degree_(degree) {}

    const Frame& frame() const { return frame_; }
    unsigned degree() const { return degree_; }
    const std::map<Index, Scalar>& comps() const { return comps_; }

    Scalar at(Index idx) const;
    void add(Index idx, const Scalar& v);
    bool is_zero() const { return comps_.empty(); }
    // Value on arbitrary sections of the frame's span.
    Scalar eval(const std::vector<Section>& us) const;
    Scalar eval_coords(const std::vector<Vec>& cs) const;
    FrameForm conj() const;  // lives on the conjugate frame
    json to_json() const;

    FrameForm& operator+=(const FrameForm& o);
    friend FrameForm operator+(FrameForm a, const FrameForm& b) { return a += b; }
    friend FrameForm operator-(FrameForm a, const FrameForm& b) { return a += -b; }
    friend FrameForm operator-(const FrameForm& a);
    friend FrameForm operator*(const Scalar& s, const FrameForm& a);
    friend FrameForm operator*(const GaussRat& c, const FrameForm& a) { return Scalar(c) * a; }
    friend bool operator==(const FrameForm& a, const FrameForm& b);
    friend bool operator!=(const FrameForm& a, const FrameForm& b) { return !(a == b); }

private:
    Frame frame_;
    unsigned degree_;
    std::map<Index, Scalar> comps_;
};

// Values of a k-linear function on sorted frame index sets.
FrameForm tabulate(const Frame& f, unsigned degree, const std::function<Scalar(const std::vector<Section>&)>& fn);
// Pullback of a chart form through the anchor: alpha(rho s_1, ..., rho s_k).
FrameForm pullback(const Frame& f, const DiffForm& alpha);
// Omega(s_a, s_b) = <W s_a, s_b>.
FrameForm two_form_of(const Frame& f, const Endo& w);
// Re-express a form in a second frame of the same span.
FrameForm change_frame(const FrameForm& w, const Frame& target);

// Pairing scale used to identify L with the dual of L*: (X | xi) = scale <X, xi>.
// The raw pairing (scale 1) is the one under which the Lemma identities balance.
inline GaussRat duality_scale() { return GaussRat(1); }

/// Eigenframes of a complex structure: L_J (+i) and L_J* (-i), with L = conj(L*).
struct DualPair {
    Endo J;
    Frame lstar;   // -i eigenframe
    Frame l;       // +i eigenframe, entrywise conjugate of lstar
    Frame ldual;   // basis of L dual to lstar under the duality
    Mat gram;      // scale <l_a, lstar_b>
    GaussRat scale;
};

// Projections (1 + iJ) of the standard frame, or the caller's seed for L_J*.
DualPair eigenframe(const Endo& j, std::optional<std::vector<Section>> seed = std::nullopt,
                    GaussRat scale = duality_scale());

FrameForm algebroid_d(const FrameForm& w);
FrameForm interior(const Section& x, const FrameForm& w);
FrameForm algebroid_lie(const Section& x, const FrameForm& w);

// Schouten bracket on multivectors of L_J, each given as a form on the L_J* frame.
FrameForm schouten_L(const DualPair& p, const FrameForm& a, const FrameForm& b);

// Omega-isotropy, involutivity and maximality of a subbundle of L_J*.
Report subalgebroid_check(const Frame& sub, const DualPair& p, const FrameForm& omega);
// (1 + iJ)/2 applied to a Dirac frame, reduced to a certified frame.
Frame lagrangian_from_dirac(const DualPair& p, const std::vector<Section>& dirac);

json frame_json(const Frame& f);

}  // namespace hxc
