#pragma once

// Exact arithmetic over Q and real quadratic fields Q(sqrt d), plus 2x2
// matrices over them and the projective quotient PSL_2.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hnnlab/error.hpp"

namespace hnnlab {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
/// Accepts "p", "-p", "p/q" (whitespace allowed around the tokens).
Rational parse_rational(std::string_view text);

bool is_squarefree(std::int64_t n);
/// Squarefree part of a nonzero rational r, i.e. the unique squarefree s
/// with r = s * (rational square) and sign(s) = sign(r).
std::int64_t squarefree_part(const Rational& r);
/// Exact square root when r is the square of a rational.
bool rational_sqrt(const Rational& r, Rational& out);

/// a + b*sqrt(d) with d squarefree, d >= 2.
class QuadExt {
public:
    QuadExt(Rational a, Rational b, std::int64_t d);

    static QuadExt embed(const Rational& r, std::int64_t d) { return QuadExt(r, 0, d); }
    static QuadExt zero(std::int64_t d) { return QuadExt(0, 0, d); }
    static QuadExt one(std::int64_t d) { return QuadExt(1, 0, d); }
    static QuadExt sqrt_d(std::int64_t d) { return QuadExt(0, 1, d); }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    std::int64_t d() const noexcept { return d_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }

    /// Galois conjugate a - b*sqrt(d).
    QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }
    /// Field norm a^2 - d*b^2.
    Rational norm() const;
    QuadExt inverse() const;
    QuadExt pow(unsigned n) const;

    /// Exact sign of the real number a + b*sqrt(d).
    int sign() const;

    QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
    QuadExt& operator+=(const QuadExt& y);
    QuadExt& operator-=(const QuadExt& y);
    QuadExt& operator*=(const QuadExt& y);
    QuadExt& operator/=(const QuadExt& y);
    QuadExt& operator*=(const Rational& r);

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    friend QuadExt operator*(QuadExt x, const Rational& r) { return x *= r; }
    friend QuadExt operator*(const Rational& r, QuadExt x) { return x *= r; }

    /// Throws MismatchedField when the fields differ.
    friend bool operator==(const QuadExt& x, const QuadExt& y);
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
    friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }

    /// "a + b*sqrt(d)" with rationals as "p/q"; the b-term sign is folded
    /// into the operator ("3/2 - 1/2*sqrt(5)").
    std::string to_string() const;
    /// Parses the rendering above. Terms may be omitted ("sqrt(2)", "1/3",
    /// "-2*sqrt(2) + 1"); default_d is used when no sqrt term appears.
    static QuadExt parse(std::string_view text, std::int64_t default_d);

private:
    void require_same_field(const QuadExt& y) const;

    Rational a_;
    Rational b_;
    std::int64_t d_;
};

/// Numerical equality of two quadratic irrationals that may live in
/// different fields: sqrt(d1), sqrt(d2) are Q-independent for distinct
/// squarefree d1, d2, so values agree only when both are rational.
bool same_real_value(const QuadExt& x, const QuadExt& y);

int quad_sign(const QuadExt& x);

enum class QuadOp { Add, Sub, Mul, Div };
QuadExt quad_arith(const QuadExt& x, const QuadExt& y, QuadOp op);

/// For p = 1..pmax, whether lambda^p is rational (its sqrt(d)
/// coefficient vanishes). Powers are computed exactly.
std::vector<std::pair<int, bool>> power_rationality(const QuadExt& lambda, int pmax);

class Mat2 {
public:
    Mat2(QuadExt m11, QuadExt m12, QuadExt m21, QuadExt m22);

    static Mat2 identity(std::int64_t d);
    static Mat2 from_rationals(const Rational& m11, const Rational& m12, const Rational& m21,
                               const Rational& m22, std::int64_t d);

    const QuadExt& m11() const noexcept { return e_[0]; }
    const QuadExt& m12() const noexcept { return e_[1]; }
    const QuadExt& m21() const noexcept { return e_[2]; }
    const QuadExt& m22() const noexcept { return e_[3]; }
    const QuadExt& entry(int k) const { return e_[static_cast<std::size_t>(k)]; }
    std::int64_t d() const noexcept { return e_[0].d(); }

    QuadExt det() const;
    QuadExt trace() const;
    Mat2 inverse() const;
    Mat2 pow(unsigned n) const;
    bool is_identity() const;

    Mat2 operator-() const { return Mat2(-e_[0], -e_[1], -e_[2], -e_[3]); }
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend Mat2 operator+(const Mat2& x, const Mat2& y);
    friend Mat2 operator-(const Mat2& x, const Mat2& y);
    friend bool operator==(const Mat2& x, const Mat2& y);
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

    /// "[[m11, m12], [m21, m22]]"
    std::string to_string() const;
    /// Parses four comma-separated entries "m11, m12, m21, m22", optionally
    /// wrapped in brackets.
    static Mat2 parse(std::string_view text, std::int64_t default_d);

private:
    QuadExt e_[4];
};

/// A determinant-one matrix up to sign, stored with its first nonzero
/// entry (row-major) positive.
class ProjMat {
public:
    /// Throws NotUnimodular unless det(m) = 1.
    explicit ProjMat(const Mat2& m);

    static ProjMat identity(std::int64_t d) { return ProjMat(Mat2::identity(d)); }

    const Mat2& rep() const noexcept { return rep_; }
    std::int64_t d() const noexcept { return rep_.d(); }

    ProjMat inverse() const { return ProjMat(rep_.inverse(), Unchecked{}); }
    ProjMat pow(unsigned n) const { return ProjMat(rep_.pow(n)); }
    bool is_identity() const { return rep_.is_identity(); }

    friend ProjMat operator*(const ProjMat& x, const ProjMat& y) { return ProjMat(x.rep_ * y.rep_, Unchecked{}); }
    friend bool operator==(const ProjMat& x, const ProjMat& y) { return x.rep_ == y.rep_; }
    friend bool operator!=(const ProjMat& x, const ProjMat& y) { return !(x == y); }

    /// Exact textual key; equal keys iff equal projective elements.
    std::string key() const { return rep_.to_string(); }

private:
    struct Unchecked {};  // det already known to be 1
    ProjMat(const Mat2& m, Unchecked);
    static Mat2 canonical_sign(const Mat2& m);

    Mat2 rep_;
};

ProjMat proj_normalize(const Mat2& m);
bool proj_eq(const ProjMat& p, const ProjMat& q);

}  // namespace hnnlab

template <>
struct std::hash<hnnlab::ProjMat> {
    std::size_t operator()(const hnnlab::ProjMat& p) const noexcept {
        return std::hash<std::string>{}(p.key());
    }
};
