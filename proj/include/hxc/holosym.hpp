#pragma once

#include "hxc/eigencalc.hpp"

namespace hxc {

/// A validated holomorphic symplectic structure, stored as the endomorphism Omega#.
struct HoloSymp {
    Endo J;
    Endo omega_sharp;
    DualPair pair;
    FrameForm omega;  // Omega(xi, eta) = <Omega# xi, eta> on the L_J* frame
    Report report;
};

// Raised by validation with the name of the first failing invariant.
class InvariantViolated : public Error {
public:
    InvariantViolated(std::string which, const std::string& msg)
        : Error("InvariantViolated", which + ": " + msg), which_(std::move(which)) {}
    const std::string& which() const { return which_; }

private:
    std::string which_;
};

// Invariant names, in validation order.
inline constexpr const char* kComplex = "J complex structure";
inline constexpr const char* kSkew = "Omega# skew";
inline constexpr const char* kKillsL = "Omega# L = 0";
inline constexpr const char* kIntoL = "Omega# L* in L";
inline constexpr const char* kOmega1 = "Omega1";
inline constexpr const char* kClosed = "d_{L*} Omega = 0";

// Every invariant as a check; never throws on a failing invariant.
Report holosym_invariants(const Endo& j, const Endo& omega_sharp);
// Throws InvariantViolated for the first failing invariant.
HoloSymp holosym(const Endo& j, const Endo& omega_sharp);

// Omega# = (I + iK)/2. NotHypercomplex unless the triple passes hypercomplex_check.
HoloSymp from_triple(const Triple& t);
// I = Omega# + conj Omega#, K = -i(Omega# - conj Omega#); InvariantViolated on bad input.
// The returned triple's hypercomplex_check is the caller's to run.
Triple to_triple(const Endo& j, const Endo& omega_sharp);
inline Triple to_triple(const HoloSymp& h) { return to_triple(h.J, h.omega_sharp); }

enum class Membership { InLstar, InL, Neither, Zero };
const char* membership_name(Membership m);

struct MembershipResult {
    Membership kind;
    Report report;  // characterizations against the eigenvalue test
};

// Omega# e = Ie = iKe characterizes L*; conj Omega# e = Ie = -iKe characterizes L.
MembershipResult eigen_membership(const Triple& t, const Section& e);

// [Omega, Omega] = 0, d_{L*} Omega = 0 and the Maurer-Cartan equation, the Nijenhuis-form identities
// 1/4 N_{I,J} = (dOmega - conj dOmega)/2i and -1/4 N_{J,K} = (dOmega + conj dOmega)/2 on E_C,
// and 1/2 [Omega, Omega](xi, eta, zeta) = conj dOmega(Omega# xi, Omega# eta, Omega# zeta).
// NondegeneracyFailed unless Omega# lies in wedge^2 L_J and satisfies Omega1.
Report closedness_equivalences(const Endo& j, const Endo& omega_sharp);

struct Deformation {
    Endo s;       // ((1 - a^2 - b^2) J + 2a K + 2b I) / (1 + a^2 + b^2)
    Frame frame;  // (1 + (a + bi) Omega#) L_J*
    Report report;
};

Deformation deformation_family(const HoloSymp& h, const GaussRat& a, const GaussRat& b);

// Omega# of a 2-form on the L_J* frame, applied to a section of L_J*.
Section omega_sharp_apply(const DualPair& p, const FrameForm& omega, const Section& xi);
// Maurer-Cartan residual, invertibility of conj Omega# Omega# - id on L_J*, involutivity of (1 + Omega#) L_J*.
Report deformation_check(const DualPair& p, const FrameForm& omega);

/// Omega = pi + theta + omega on standard T + T*, with J = diag(j, -j*).
/// Each component is recorded through its sharp: the corresponding block of Omega#.
struct Decomposition {
    Mat j;
    Mat theta;  // vectors to vectors
    MultiVec pi;
    DiffForm omega;
    Report report;
};

// WrongShape unless the backend is standard and J = diag(j, -j*).
Decomposition decompose(const HoloSymp& h);
// The eleven conditions without requiring h to be validated.
Decomposition decompose(const Endo& j, const Endo& omega_sharp);

struct HyperPoisson {
    Chart chart;
    Mat i, j, k;
    MultiVec pi1, pi2, pi3;
};

// Holomorphic Poisson pairs (pi2, -pi3) for i, (pi3, -pi1) for j, (pi1, -pi2) for k, the three
// relations between the sharps, and the hyper-symplectic branch when pi1 is invertible.
// NotHypercomplexBase unless (i, j, k) is a classical hypercomplex triple.
Report hyper_poisson_check(const HyperPoisson& hp);

// I = [[i, pi3#], [0, -i*]], J = diag(j, -j*), K = [[k, -pi1#], [0, -k*]].
Triple hyper_poisson_triple(const HyperPoisson& hp);
// The three assertions (hyper-Poisson, hypercomplex triple, holomorphic symplectic Omega) and their agreement.
Report hyper_poisson_equivalence(const HyperPoisson& hp);

}  // namespace hxc
