#pragma once

#include "hxc/eigencalc.hpp"

namespace hxc {

/// The hypercomplex connection of a triple, evaluated on explicit sections.
/// Not tensorial in the second slot, so there is no Christoffel form in general.
class Connection {
public:
    // NotHypercomplex unless the triple passes hypercomplex_check; pass false to
    // study almost-hypercomplex triples (quaternionic relations still required).
    explicit Connection(Triple t, bool require_hypercomplex = true);

    const Triple& triple() const { return t_; }
    const Backend& backend() const { return t_.I.backend(); }

    // -1/2 K (JV o IU - J(V o IU) - I(JV o U) + JI(V o U))
    Section operator()(const Section& u, const Section& v) const;
    // <U,V> Df + <IU,V> I Df + <JU,V> J Df + <KU,V> K Df
    Section delta(const Scalar& f, const Section& u, const Section& v) const;
    Section bracket(const Section& u, const Section& v) const;  // 1/2 (U o V - V o U)
    // (T(U,V), I D<U,IV> + J D<U,JV> + K D<U,KV>)
    std::pair<Section, Section> torsion(const Section& u, const Section& v) const;
    // T(U,V) - 1/2 K N(I,J)(U,V); equals the same right-hand side for any almost-hypercomplex triple.
    Section torsion_corrected(const Section& u, const Section& v) const;
    Section curvature(const Section& u, const Section& v, const Section& w) const;

private:
    Triple t_;
};

// nabla(A V) - A nabla V over all standard frame pairs, for A in {I, J, K}.
Report parallelism_report(const Connection& c);

// The four eigenbundle formulas for nabla, each side computed on its own.
// omega_sharp is (I + iK)/2 for the connection's triple and `pair` the eigenframes of J.
Report nabla_eigen_identities(const Connection& c, const DualPair& pair, const Endo& omega_sharp);

// nabla V = 0, d_{L_A}(V + iAV) = 0 for A = I, J, K, and d_{L_J}(V + iJV) = 0 with L_{V+iJV} Omega = 0.
Report parallel_section_check(const Connection& c, const Section& v, const Endo& omega_sharp);

struct RestrictedConnection {
    Frame frame;
    std::vector<std::vector<Vec>> table;  // table[a][b] = coordinates of nabla_{s_a} s_b
    Report report;
};

// Dirac subbundle stable under I, J, K (NotStable otherwise): closure and torsion-freeness.
RestrictedConnection restrict_dirac(const Connection& c, const Frame& dirac);
// Lagrangian subalgebroid of L_J* (NotLagrangian otherwise): closure, torsion-freeness, flatness.
RestrictedConnection restrict_lagrangian(const Connection& c, const Frame& sub, const DualPair& pair,
                                         const Endo& omega_sharp);

/// Connection on a foliation, tabulated on a frame of complex tangent vector fields.
struct TangentTable {
    std::vector<Vec> frame;
    std::vector<std::vector<Vec>> table;  // table[a][b] = nabla_{X_a} X_b
};

// omega^-1(i_X del(omega(Y))) on a frame of T^{1,0}_S. omega(Y) = i_Y omega.
// NotLagrangianFoliation unless the frame is involutive, of type (1,0), omega-isotropic and half-rank.
TangentTable behrend_fantechi(const DiffForm& omega, const Mat& j, const std::vector<Vec>& frame);

// -theta(i_X del(conj(theta)(Y))) on a frame of T^{1,0}_S, with theta(Y) = theta# Y and theta# = (i + sqrt(-1) k)/2.
// Needs constant j. NotStableFoliation unless the real span is stable under i, j, k and involutive.
TangentTable hypercomplex_foliation_connection(const Chart& c, const Mat& theta, const Mat& j,
                                               const std::vector<Vec>& frame);

// Classical Obata connection -1/2 k([jY, iX] - j[Y, iX] - i[jY, X] + ji[Y, X]).
Vec obata(const Chart& c, const Mat& i, const Mat& j, const Mat& k, const Vec& x, const Vec& y);

}  // namespace hxc
