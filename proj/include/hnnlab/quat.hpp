#pragma once

// The quaternion algebra (a,b)_Q, its representation into M_2(Q(sqrt a)),
// orders as integer lattices, and arithmetic membership oracles.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hnnlab/exact.hpp"

namespace hnnlab {

struct QuatAlgebra {
    Rational a_param;
    Rational b_param;

    QuatAlgebra(Rational a, Rational b);
    /// The algebra (2,13)_Q.
    static QuatAlgebra standard() { return QuatAlgebra(2, 13); }
};

struct Quaternion {
    std::array<Rational, 4> x{0, 0, 0, 0};  // x0 + x1 i + x2 j + x3 k

    Quaternion() = default;
    Quaternion(Rational x0, Rational x1, Rational x2, Rational x3);
    static Quaternion scalar(const Rational& r) { return Quaternion(r, 0, 0, 0); }

    Quaternion operator-() const { return Quaternion(-x[0], -x[1], -x[2], -x[3]); }
    friend Quaternion operator+(const Quaternion& p, const Quaternion& q);
    friend Quaternion operator-(const Quaternion& p, const Quaternion& q);
    friend Quaternion operator*(const Rational& r, const Quaternion& q);
    friend bool operator==(const Quaternion& p, const Quaternion& q) { return p.x == q.x; }
    friend bool operator!=(const Quaternion& p, const Quaternion& q) { return !(p == q); }

    /// "x0 + x1*i + x2*j + x3*k"
    std::string to_string() const;
    /// Accepts the rendering above with terms in any order or omitted.
    static Quaternion parse(std::string_view text);
};

Quaternion quat_mul(const QuatAlgebra& alg, const Quaternion& p, const Quaternion& q);
Rational quat_norm(const QuatAlgebra& alg, const Quaternion& q);
Rational quat_trace(const Quaternion& q);
Quaternion quat_conj(const Quaternion& q);
/// Inverse via conj(q)/nrd(q); throws DivisionByZero for nrd = 0.
Quaternion quat_inverse(const QuatAlgebra& alg, const Quaternion& q);

/// x0 + x1 sqrt(a) | x2 + x3 sqrt(a)
/// b(x2 - x3 sqrt(a)) | x0 - x1 sqrt(a)
/// Requires a_param to be a squarefree integer >= 2.
Mat2 phi(const QuatAlgebra& alg, const Quaternion& q);
/// Recovers q from phi(q); throws NotInImage when the entries do not have
/// the shape above.
Quaternion phi_inverse(const QuatAlgebra& alg, const Mat2& m);

/// Full-rank Z-lattice in Q^4 (coordinates w.r.t. 1, i, j, k), stored as a
/// row-style Hermite normal form basis.
class OrderLattice {
public:
    /// Saturates the Z-span of vectors; throws NotFullRank below rank 4.
    static OrderLattice span(const std::vector<Quaternion>& vectors);

    const std::array<Quaternion, 4>& basis() const noexcept { return basis_; }
    /// Rational coordinates of q in the basis.
    std::array<Rational, 4> coordinates(const Quaternion& q) const;
    bool contains(const Quaternion& q) const;
    bool contains_lattice(const OrderLattice& other) const;
    /// Index [other : this] for a sublattice this of other.
    Integer index_in(const OrderLattice& other) const;
    /// |det| of the basis matrix, i.e. covolume relative to Z^4.
    Rational covolume() const;

    /// True when 1 is in the lattice and all 16 basis products are.
    bool is_order(const QuatAlgebra& alg) const;

    friend bool operator==(const OrderLattice& x, const OrderLattice& y) { return x.basis_ == y.basis_; }

private:
    std::array<Quaternion, 4> basis_;
    std::array<std::array<Rational, 4>, 4> inverse_;  // columns map Q^4 coords to basis coords
};

/// Smallest multiplication-closed lattice containing 1 and gens.
OrderLattice ring_closure(const QuatAlgebra& alg, const std::vector<Quaternion>& gens);

/// sqrt |det(trd(e_i e_j))| over the lattice basis.
Integer reduced_discriminant(const QuatAlgebra& alg, const OrderLattice& order);

/// Hilbert symbol (a,b)_p in {+1,-1} for nonzero rationals; p = 0 denotes
/// the real place.
int hilbert_symbol(const Rational& a, const Rational& b, long p);
/// Finite primes at which the algebra ramifies, ascending.
std::vector<long> ramified_primes(const QuatAlgebra& alg);

/// The quaternions of the explicit example: a, b, c, d and the stable
/// element t.
struct StandardElements {
    Quaternion a, b, c, d, t;
};
const StandardElements& standard_elements();

/// Membership tests for PM, PN = tPMt^-1, K = PM cap PN and H = t^-1 K t,
/// all on projective matrices in the image of phi.
class SubgroupOracleSet {
public:
    SubgroupOracleSet(QuatAlgebra alg, OrderLattice order, const Quaternion& conjugator);
    /// (2,13)_Q, the closure of {1,a,b,c,d}, conjugator t.
    static const SubgroupOracleSet& standard();

    const QuatAlgebra& algebra() const noexcept { return alg_; }
    const OrderLattice& order() const noexcept { return order_; }
    const ProjMat& conjugator() const noexcept { return conjugator_; }

    bool in_PM(const ProjMat& m) const;
    bool in_PN(const ProjMat& m) const;
    bool in_K(const ProjMat& m) const;
    bool in_H(const ProjMat& m) const;

private:
    QuatAlgebra alg_;
    OrderLattice order_;
    ProjMat conjugator_;
    ProjMat conjugator_inv_;
};

}  // namespace hnnlab
