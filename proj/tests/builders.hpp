#pragma once

// Hand-built reference structures, independent of the scene loader.

#include "hxc/holosym.hpp"
#include "support.hpp"

namespace hxt {

inline Chart R(int n) {
    std::vector<std::string> v;
    for (int k = 0; k < n; ++k) v.push_back("x" + std::to_string(k));
    return Chart(v);
}

inline Chart C2() { return Chart({"x1", "y1", "x2", "y2"}); }

inline Mat j_std(const Chart& c) {
    return mat(c, {{"0", "-1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "0", "-1"}, {"0", "0", "1", "0"}});
}

inline DiffForm form(const Chart& c, unsigned deg, std::vector<std::pair<Index, std::string>> comps) {
    DiffForm w(c, deg);
    for (auto& [i, e] : comps) w.add(i, c.parse(e));
    return w;
}

inline MultiVec multi(const Chart& c, unsigned deg, std::vector<std::pair<Index, std::string>> comps) {
    MultiVec w(c, deg);
    for (auto& [i, e] : comps) w.add(i, c.parse(e));
    return w;
}

inline std::string kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

inline Triple flatq_triple(const Backend& b) {
    const Chart& c = b.chart();
    return Triple(lift_complex(b, quat_left(c, 0)), lift_complex(b, quat_left(c, 1)), lift_complex(b, quat_left(c, 2)));
}

inline Triple flatq() { return flatq_triple(Backend::standard(R(4))); }

// Closed, non-constant: d(x0 x2 dx1).
inline DiffForm flatq_b_field(const Chart& c) { return form(c, 2, {{{0, 1}, "x2"}, {{1, 2}, "-x0"}}); }

inline Triple flatq_b() {
    Backend b = Backend::standard(R(4));
    return conjugate(flatq_triple(b), b_field(b, flatq_b_field(b.chart())));
}

// Tangent triple conjugated by the unipotent A = 1 + x1 E_02; not integrable.
inline Triple nonint() {
    Backend b = Backend::standard(R(4));
    const Chart& c = b.chart();
    Mat a = mat(c, {{"1", "0", "x1", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
    Mat ai = *inverse_unit(a);
    return Triple(lift_complex(b, a * quat_left(c, 0) * ai), lift_complex(b, a * quat_left(c, 1) * ai),
                  lift_complex(b, a * quat_left(c, 2) * ai));
}

// omega = w1 - i w2 = dz1 ^ dz2 on C^2.
inline DiffForm c2_w1(const Chart& c) { return form(c, 2, {{{0, 2}, "1"}, {{1, 3}, "-1"}}); }
inline DiffForm c2_w2(const Chart& c) { return form(c, 2, {{{0, 3}, "-1"}, {{1, 2}, "-1"}}); }

inline Triple c2std() {
    Backend b = Backend::standard(C2());
    const Chart& c = b.chart();
    return Triple(lift_symplectic(b, c2_w1(c)), lift_complex(b, j_std(c)), lift_symplectic(b, c2_w2(c)));
}

inline Triple hpt() {
    Backend h = Backend::quaternions();
    const Chart& c = h.chart();
    return Triple(Endo(h, quat_left(c, 0)), Endo(h, quat_left(c, 1)), Endo(h, quat_left(c, 2)));
}

// exp(B) conjugation with no closedness requirement; a non-closed B keeps the algebra and breaks integrability.
inline Triple b_conjugate(const Triple& t, const DiffForm& B) {
    const Backend& b = t.I.backend();
    const std::size_t n = b.dim();
    Mat g = Mat::identity(2 * n).bind_all(b.chart().vars());
    g.set_block(n, 0, sharp(B));
    return conjugate(t, g);
}

// Three triples with Omega1 intact and closedness broken. In real dimension 4 the
// conjugated J stays integrable, as there are no (3,0)-forms. (On FLATQ every B-conjugate
// stays hypercomplex for the same reason, so all three start from C2STD.)
inline std::vector<std::pair<std::string, Triple>> broken_omegas() {
    Triple c = c2std();
    const Chart& cc = c.I.backend().chart();
    return {{"C2STD, B = x1 dx2^dy2", b_conjugate(c, form(cc, 2, {{{2, 3}, "x1"}}))},
            {"C2STD, B = x2 dx1^dy1", b_conjugate(c, form(cc, 2, {{{0, 1}, "x2"}}))},
            {"C2STD, B = y2 dx1^dx2", b_conjugate(c, form(cc, 2, {{{0, 2}, "y2"}}))}};
}

// Flat hyper-Poisson structure: pi_a# = -(left multiplication by the a-th unit), scaled by `factor`.
inline HyperPoisson hp_kahler(const std::string& factor = "1") {
    Chart c = R(4);
    Scalar f = c.parse(factor);
    HyperPoisson hp{c, quat_left(c, 0), quat_left(c, 1), quat_left(c, 2), {}, {}, {}};
    hp.pi1 = f * bivector_from_sharp(c, -quat_left(c, 0));
    hp.pi2 = f * bivector_from_sharp(c, -quat_left(c, 1));
    hp.pi3 = f * bivector_from_sharp(c, -quat_left(c, 2));
    return hp;
}

}  // namespace hxt
