#include "hnnlab/quat.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hnnlab {

QuatAlgebra::QuatAlgebra(Rational a, Rational b) : a_param(std::move(a)), b_param(std::move(b)) {
    if (sgn(a_param) == 0 || sgn(b_param) == 0) throw Error(ErrorKind::Parse, "quaternion algebra parameters must be nonzero");
}

Quaternion::Quaternion(Rational x0, Rational x1, Rational x2, Rational x3)
    : x{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {
    for (auto& v : x) v.canonicalize();
}

Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return Quaternion(p.x[0] + q.x[0], p.x[1] + q.x[1], p.x[2] + q.x[2], p.x[3] + q.x[3]);
}

Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return Quaternion(p.x[0] - q.x[0], p.x[1] - q.x[1], p.x[2] - q.x[2], p.x[3] - q.x[3]);
}

Quaternion operator*(const Rational& r, const Quaternion& q) {
    return Quaternion(r * q.x[0], r * q.x[1], r * q.x[2], r * q.x[3]);
}

std::string Quaternion::to_string() const {
    static const char* units[] = {"", "*i", "*j", "*k"};
    std::ostringstream out;
    out << hnnlab::to_string(x[0]);
    for (int n = 1; n < 4; ++n) {
        if (sgn(x[n]) < 0)
            out << " - " << hnnlab::to_string(Rational(-x[n]));
        else
            out << " + " << hnnlab::to_string(x[n]);
        out << units[n];
    }
    return out.str();
}

Quaternion Quaternion::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorKind::Parse, "empty quaternion");
    Quaternion q;
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-') {
            negative = s[pos] == '-';
            ++pos;
        } else if (!first) {
            throw Error(ErrorKind::Parse, "expected + or - in '" + s + "'");
        }
        first = false;
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        int unit = 0;
        if (!term.empty() && (term.back() == 'i' || term.back() == 'j' || term.back() == 'k')) {
            unit = term.back() - 'i' + 1;
            term.pop_back();
            if (!term.empty() && term.back() == '*') term.pop_back();
        }
        Rational coeff = term.empty() ? Rational(1) : parse_rational(term);
        if (term.empty() && unit == 0) throw Error(ErrorKind::Parse, "empty term in '" + s + "'");
        q.x[static_cast<std::size_t>(unit)] += negative ? Rational(-coeff) : coeff;
    }
    return q;
}

Quaternion quat_mul(const QuatAlgebra& alg, const Quaternion& p, const Quaternion& q) {
    const Rational& A = alg.a_param;
    const Rational& B = alg.b_param;
    const auto& a = p.x;
    const auto& b = q.x;
    // i^2 = A, j^2 = B, k = ij = -ji, so k^2 = -AB, ik = Aj, ki = -Aj, jk = -Bi, kj = Bi
    return Quaternion(a[0] * b[0] + A * a[1] * b[1] + B * a[2] * b[2] - A * B * a[3] * b[3],
                      a[0] * b[1] + a[1] * b[0] - B * a[2] * b[3] + B * a[3] * b[2],
                      a[0] * b[2] + a[2] * b[0] + A * a[1] * b[3] - A * a[3] * b[1],
                      a[0] * b[3] + a[3] * b[0] + a[1] * b[2] - a[2] * b[1]);
}

Rational quat_norm(const QuatAlgebra& alg, const Quaternion& q) {
    const auto& x = q.x;
    return x[0] * x[0] - alg.a_param * x[1] * x[1] - alg.b_param * x[2] * x[2] +
           alg.a_param * alg.b_param * x[3] * x[3];
}

Rational quat_trace(const Quaternion& q) { return 2 * q.x[0]; }

Quaternion quat_conj(const Quaternion& q) { return Quaternion(q.x[0], -q.x[1], -q.x[2], -q.x[3]); }

Quaternion quat_inverse(const QuatAlgebra& alg, const Quaternion& q) {
    Rational n = quat_norm(alg, q);
    if (sgn(n) == 0) throw Error(ErrorKind::DivisionByZero, "quaternion of norm zero");
    return Rational(1 / n) * quat_conj(q);
}

namespace {

std::int64_t radicand_of(const QuatAlgebra& alg) {
    const Rational& a = alg.a_param;
    if (a.get_den() != 1 || !a.get_num().fits_slong_p())
        throw Error(ErrorKind::UnsupportedField, "phi needs an integer a-parameter");
    auto d = static_cast<std::int64_t>(a.get_num().get_si());
    if (d < 2 || !is_squarefree(d)) throw Error(ErrorKind::UnsupportedField, "phi needs squarefree a >= 2");
    return d;
}

}  // namespace

Mat2 phi(const QuatAlgebra& alg, const Quaternion& q) {
    std::int64_t d = radicand_of(alg);
    const auto& x = q.x;
    return Mat2(QuadExt(x[0], x[1], d), QuadExt(x[2], x[3], d), QuadExt(x[2], -x[3], d) * alg.b_param,
                QuadExt(x[0], -x[1], d));
}

Quaternion phi_inverse(const QuatAlgebra& alg, const Mat2& m) {
    std::int64_t d = radicand_of(alg);
    auto coeffs = [&](const QuadExt& e, Rational& ra, Rational& rb) {
        if (e.d() == d) {
            ra = e.a();
            rb = e.b();
        } else if (e.is_rational()) {
            ra = e.a();
            rb = 0;
        } else {
            throw Error(ErrorKind::NotInImage, "entry " + e.to_string() + " outside Q(sqrt " + std::to_string(d) + ")");
        }
    };
    Rational e11a, e11b, e12a, e12b, e21a, e21b, e22a, e22b;
    coeffs(m.m11(), e11a, e11b);
    coeffs(m.m12(), e12a, e12b);
    coeffs(m.m21(), e21a, e21b);
    coeffs(m.m22(), e22a, e22b);
    Quaternion q(e11a, e11b, e12a, e12b);
    if (e22a != q.x[0] || e22b != -q.x[1])
        throw Error(ErrorKind::NotInImage, "m22 is not the conjugate of m11");
    if (e21a != alg.b_param * q.x[2] || e21b != -alg.b_param * q.x[3])
        throw Error(ErrorKind::NotInImage, "m21 is not b times the conjugate of m12");
    return q;
}

// ---------------------------------------------------------------- lattices

namespace {

using IntRow = std::array<Integer, 4>;
using RatMat = std::array<std::array<Rational, 4>, 4>;

// Row-style Hermite normal form of the integer span; returns the rank.
std::size_t hermite_rows(std::vector<IntRow>& rows) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 4 && rank < rows.size(); ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = rank; r < rows.size(); ++r)
                if (sgn(rows[r][col]) != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])))
                    best = r;
            if (best == rows.size()) break;
            std::swap(rows[rank], rows[best]);
            bool clean = true;
            for (std::size_t r = rank + 1; r < rows.size(); ++r) {
                if (sgn(rows[r][col]) == 0) continue;
                Integer quot;
                mpz_fdiv_q(quot.get_mpz_t(), rows[r][col].get_mpz_t(), rows[rank][col].get_mpz_t());
                for (std::size_t c = 0; c < 4; ++c) rows[r][c] -= quot * rows[rank][c];
                if (sgn(rows[r][col]) != 0) clean = false;
            }
            if (clean) break;
        }
        if (rank >= rows.size() || sgn(rows[rank][col]) == 0) continue;
        if (sgn(rows[rank][col]) < 0)
            for (auto& v : rows[rank]) v = -v;
        for (std::size_t r = 0; r < rank; ++r) {
            Integer quot;
            mpz_fdiv_q(quot.get_mpz_t(), rows[r][col].get_mpz_t(), rows[rank][col].get_mpz_t());
            for (std::size_t c = 0; c < 4; ++c) rows[r][c] -= quot * rows[rank][c];
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

Rational determinant(RatMat m) {
    Rational det = 1;
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t piv = c;
        while (piv < 4 && sgn(m[piv][c]) == 0) ++piv;
        if (piv == 4) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < 4; ++r) {
            if (sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

RatMat invert(RatMat m) {
    RatMat inv{};
    for (std::size_t n = 0; n < 4; ++n) inv[n][n] = 1;
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t piv = c;
        while (piv < 4 && sgn(m[piv][c]) == 0) ++piv;
        if (piv == 4) throw Error(ErrorKind::NotFullRank, "singular basis");
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        Rational p = m[c][c];
        for (std::size_t k = 0; k < 4; ++k) {
            m[c][k] /= p;
            inv[c][k] /= p;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == c || sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < 4; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace

OrderLattice OrderLattice::span(const std::vector<Quaternion>& vectors) {
    Integer den = 1;
    for (const auto& v : vectors)
        for (const auto& c : v.x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<IntRow> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        IntRow r;
        for (std::size_t c = 0; c < 4; ++c) {
            Rational scaled = v.x[c] * den;
            r[c] = scaled.get_num();
        }
        rows.push_back(r);
    }
    if (hermite_rows(rows) < 4) throw Error(ErrorKind::NotFullRank, "lattice has rank below 4");

    OrderLattice lat;
    RatMat basis_matrix{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            basis_matrix[r][c] = Rational(rows[r][c], den);
            basis_matrix[r][c].canonicalize();
        }
        lat.basis_[r] = Quaternion(basis_matrix[r][0], basis_matrix[r][1], basis_matrix[r][2], basis_matrix[r][3]);
    }
    lat.inverse_ = invert(basis_matrix);
    return lat;
}

std::array<Rational, 4> OrderLattice::coordinates(const Quaternion& q) const {
    std::array<Rational, 4> out{0, 0, 0, 0};
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t k = 0; k < 4; ++k) out[c] += q.x[k] * inverse_[k][c];
    return out;
}

bool OrderLattice::contains(const Quaternion& q) const {
    auto coords = coordinates(q);
    return std::all_of(coords.begin(), coords.end(), is_integral);
}

bool OrderLattice::contains_lattice(const OrderLattice& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Quaternion& q) { return contains(q); });
}

Rational OrderLattice::covolume() const {
    RatMat m{};
    for (std::size_t r = 0; r < 4; ++r) m[r] = basis_[r].x;
    return abs(determinant(m));
}

Integer OrderLattice::index_in(const OrderLattice& other) const {
    if (!other.contains_lattice(*this)) throw Error(ErrorKind::NotFullRank, "not a sublattice");
    Rational ratio = covolume() / other.covolume();
    return ratio.get_num();
}

bool OrderLattice::is_order(const QuatAlgebra& alg) const {
    if (!contains(Quaternion::scalar(1))) return false;
    for (const auto& p : basis_)
        for (const auto& q : basis_)
            if (!contains(quat_mul(alg, p, q))) return false;
    return true;
}

OrderLattice ring_closure(const QuatAlgebra& alg, const std::vector<Quaternion>& gens) {
    std::vector<Quaternion> seed{Quaternion::scalar(1)};
    seed.insert(seed.end(), gens.begin(), gens.end());
    OrderLattice lat = OrderLattice::span(seed);
    while (true) {
        std::vector<Quaternion> vecs(lat.basis().begin(), lat.basis().end());
        for (const auto& p : lat.basis())
            for (const auto& q : lat.basis()) vecs.push_back(quat_mul(alg, p, q));
        OrderLattice next = OrderLattice::span(vecs);
        if (next == lat) return lat;
        lat = std::move(next);
    }
}

Integer reduced_discriminant(const QuatAlgebra& alg, const OrderLattice& order) {
    RatMat gram{};
    const auto& e = order.basis();
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) gram[r][c] = quat_trace(quat_mul(alg, e[r], e[c]));
    Rational det = abs(determinant(gram));
    Rational root;
    if (!rational_sqrt(det, root) || root.get_den() != 1)
        throw Error(ErrorKind::NotFullRank, "Gram determinant " + to_string(det) + " is not an integer square");
    return root.get_num();
}

// ---------------------------------------------------------------- Hilbert symbols

namespace {

// Integer representative of the square class of a nonzero rational.
Integer square_class(const Rational& r) { return r.get_num() * r.get_den(); }

int valuation(Integer& n, long p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int mod_residue(const Integer& n, long m) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(m));
    return static_cast<int>(r.get_si());
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, long p) {
    if (sgn(a) == 0 || sgn(b) == 0) throw Error(ErrorKind::DivisionByZero, "Hilbert symbol of zero");
    if (p == 0) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    Integer u = square_class(a);
    Integer v = square_class(b);
    int alpha = valuation(u, p);
    int beta = valuation(v, p);
    if (p == 2) {
        auto eps = [](const Integer& x) { return ((mod_residue(x, 4) - 1) / 2) & 1; };
        auto omega = [](const Integer& x) {
            int r = mod_residue(x, 8);
            return ((r * r - 1) / 8) & 1;
        };
        int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return (e % 2 == 0) ? 1 : -1;
    }
    Integer pz = p;
    int sign = ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
    if (beta % 2 == 1) sign *= mpz_legendre(u.get_mpz_t(), pz.get_mpz_t());
    if (alpha % 2 == 1) sign *= mpz_legendre(v.get_mpz_t(), pz.get_mpz_t());
    return sign;
}

std::vector<long> ramified_primes(const QuatAlgebra& alg) {
    // Only primes dividing 2ab can ramify.
    Integer m = 2 * abs(square_class(alg.a_param)) * abs(square_class(alg.b_param));
    std::vector<long> primes;
    for (long p = 2; m > 1; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        primes.push_back(p);
    }
    std::vector<long> out;
    for (long p : primes)
        if (hilbert_symbol(alg.a_param, alg.b_param, p) == -1) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------- the example

const StandardElements& standard_elements() {
    static const StandardElements elems{
        Quaternion(make_rational(3, 2), make_rational(3, 2), make_rational(-1, 2), make_rational(-1, 2)),
        Quaternion(make_rational(3, 2), make_rational(-3, 2), make_rational(-1, 2), make_rational(1, 2)),
        Quaternion(make_rational(5, 2), 1, make_rational(-1, 2), 0),
        Quaternion(make_rational(7, 2), 2, make_rational(1, 2), 0),
        Quaternion(make_rational(1, 3), 1, 0, make_rational(1, 3)),
    };
    return elems;
}

SubgroupOracleSet::SubgroupOracleSet(QuatAlgebra alg, OrderLattice order, const Quaternion& conjugator)
    : alg_(std::move(alg)),
      order_(std::move(order)),
      conjugator_(phi(alg_, conjugator)),
      conjugator_inv_(conjugator_.inverse()) {}

const SubgroupOracleSet& SubgroupOracleSet::standard() {
    static const SubgroupOracleSet oracles = [] {
        QuatAlgebra alg = QuatAlgebra::standard();
        const auto& e = standard_elements();
        return SubgroupOracleSet(alg, ring_closure(alg, {e.a, e.b, e.c, e.d}), e.t);
    }();
    return oracles;
}

bool SubgroupOracleSet::in_PM(const ProjMat& m) const {
    Quaternion q;
    try {
        q = phi_inverse(alg_, m.rep());
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::NotInImage) return false;
        throw;
    }
    if (quat_norm(alg_, q) != 1) return false;
    return order_.contains(q) || order_.contains(-q);
}

bool SubgroupOracleSet::in_PN(const ProjMat& m) const { return in_PM(conjugator_inv_ * m * conjugator_); }

bool SubgroupOracleSet::in_K(const ProjMat& m) const { return in_PM(m) && in_PN(m); }

bool SubgroupOracleSet::in_H(const ProjMat& m) const { return in_PM(m) && in_K(conjugator_ * m * conjugator_inv_); }

}  // namespace hnnlab
