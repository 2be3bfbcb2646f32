#pragma once

// Isometry types of PSL_2 elements and exact translation lengths, carried
// multiplicatively as eigenvalues (tau = 2 log lambda).

#include <optional>
#include <string>
#include <variant>

#include "hnnlab/exact.hpp"

namespace hnnlab {

/// lambda = (|tr| + sqrt(tr^2 - 4)) / 2 lives in Q(sqrt disc). When
/// tr^2 - 4 is a rational square, disc = 1 and lambda is rational (stored
/// with b = 0 in the ambient field of the trace).
struct TransLength {
    QuadExt lambda;
    std::int64_t disc;

    /// "2*log((3+sqrt(5))/2)"
    std::string to_string() const;
    /// 2*log(lambda) with the given number of digits after the point; display only.
    std::string decimal(int digits = 50) const;
};

namespace iso {
struct Identity {};
struct EllipticFinite {
    int order;
};
struct EllipticInfinite {};
struct Parabolic {};
struct Hyperbolic {
    std::optional<TransLength> length;  // empty when the trace is irrational
};
}  // namespace iso

using IsometryClass = std::variant<iso::Identity, iso::EllipticFinite, iso::EllipticInfinite, iso::Parabolic, iso::Hyperbolic>;

/// Bound for the torsion power check before the quadratic-trace list is used.
inline constexpr int kTorsionPowerBound = 120;

IsometryClass classify(const ProjMat& m);
/// "elliptic, infinite order", "hyperbolic, tau = 2*log(...)", ...
std::string describe(const IsometryClass& c);

/// Throws NotHyperbolic, or UnsupportedField for irrational traces.
TransLength translation_length(const ProjMat& m);

struct Dependent {
    int p;
    int q;
};
struct IndependentUpTo {
    int bound;
};
struct IndependentCertified {};
using RatioVerdict = std::variant<Dependent, IndependentUpTo, IndependentCertified>;

/// Decides p*tau1 = q*tau2 (i.e. lambda1^p = lambda2^q) for 1 <= p, q <= bound.
RatioVerdict length_ratio_independent(const TransLength& l1, const TransLength& l2, int bound);
std::string describe(const RatioVerdict& v);

}  // namespace hnnlab
