#include "hnnlab/exact.hpp"

#include <cctype>
#include <sstream>

namespace hnnlab {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MismatchedField: return "MismatchedField";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::NotUnimodular: return "NotUnimodular";
        case ErrorKind::NotInImage: return "NotInImage";
        case ErrorKind::NotFullRank: return "NotFullRank";
        case ErrorKind::NotHyperbolic: return "NotHyperbolic";
        case ErrorKind::UnsupportedField: return "UnsupportedField";
        case ErrorKind::NotDehnPresentation: return "NotDehnPresentation";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::NotInSubgroup: return "NotInSubgroup";
        case ErrorKind::OracleDisagreement: return "OracleDisagreement";
        case ErrorKind::UnknownLetter: return "UnknownLetter";
        case ErrorKind::OutOfWindow: return "OutOfWindow";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

Rational make_rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s = trim(s.substr(1));
    }
    auto slash = s.find('/');
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den))
        throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'");
    Integer n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

bool is_squarefree(std::int64_t n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

namespace {

// Squarefree kernel of a positive integer by trial division; the inputs here
// are discriminants of small traces so this never faces large factors.
Integer squarefree_kernel(Integer n) {
    Integer result = 1;
    for (Integer p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2 == 1) result *= p;
    }
    return result * n;
}

}  // namespace

std::int64_t squarefree_part(const Rational& r) {
    if (sgn(r) == 0) throw Error(ErrorKind::DivisionByZero, "squarefree part of zero");
    // r = n/m = n*m / m^2
    Integer prod = abs(r.get_num()) * r.get_den();
    Integer k = squarefree_kernel(prod);
    if (!k.fits_slong_p()) throw Error(ErrorKind::UnsupportedField, "squarefree part too large");
    return sgn(r) * static_cast<std::int64_t>(k.get_si());
}

bool rational_sqrt(const Rational& r, Rational& out) {
    if (sgn(r) < 0) return false;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return false;
    Integer n = sqrt(r.get_num());
    Integer d = sqrt(r.get_den());
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

// ---------------------------------------------------------------- QuadExt

QuadExt::QuadExt(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d < 2 || !is_squarefree(d))
        throw Error(ErrorKind::UnsupportedField, "d = " + std::to_string(d) + " is not squarefree >= 2");
    a_.canonicalize();
    b_.canonicalize();
}

void QuadExt::require_same_field(const QuadExt& y) const {
    if (d_ != y.d_)
        throw Error(ErrorKind::MismatchedField,
                    "Q(sqrt " + std::to_string(d_) + ") vs Q(sqrt " + std::to_string(y.d_) + ")");
}

Rational QuadExt::norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

QuadExt QuadExt::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    Rational n = norm();
    return QuadExt(a_ / n, -b_ / n, d_);
}

QuadExt QuadExt::pow(unsigned n) const {
    QuadExt result = one(d_);
    QuadExt base = *this;
    while (n > 0) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n > 0) base *= base;
    }
    return result;
}

int QuadExt::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: the larger magnitude wins
    int cmp_ab = cmp(a_ * a_, Rational(d_) * b_ * b_);
    if (cmp_ab > 0) return sa;
    if (cmp_ab < 0) return sb;
    return 0;  // unreachable for squarefree d
}

QuadExt& QuadExt::operator+=(const QuadExt& y) {
    require_same_field(y);
    a_ += y.a_;
    b_ += y.b_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& y) {
    require_same_field(y);
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& y) {
    require_same_field(y);
    Rational na = a_ * y.a_ + Rational(d_) * b_ * y.b_;
    Rational nb = a_ * y.b_ + b_ * y.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& y) {
    require_same_field(y);
    if (y.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    return *this *= y.inverse();
}

QuadExt& QuadExt::operator*=(const Rational& r) {
    a_ *= r;
    b_ *= r;
    return *this;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
    x.require_same_field(y);
    return x.a_ == y.a_ && x.b_ == y.b_;
}

std::string QuadExt::to_string() const {
    std::ostringstream out;
    out << hnnlab::to_string(a_);
    if (sgn(b_) < 0)
        out << " - " << hnnlab::to_string(Rational(-b_));
    else
        out << " + " << hnnlab::to_string(b_);
    out << "*sqrt(" << d_ << ")";
    return out.str();
}

QuadExt QuadExt::parse(std::string_view text, std::int64_t default_d) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorKind::Parse, "empty number");

    Rational a = 0;
    Rational b = 0;
    std::int64_t d = 0;
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
        // coefficient part up to '*' or sign or end
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-' && s[end] != '*' && s[end] != 's') ++end;
        Rational coeff = 1;
        bool have_coeff = end > pos;
        if (have_coeff) coeff = parse_rational(std::string_view(s).substr(pos, end - pos));
        pos = end;
        bool radical = false;
        if (pos < s.size() && s[pos] == '*') ++pos;
        if (s.compare(pos, 5, "sqrt(") == 0) {
            auto close = s.find(')', pos);
            if (close == std::string::npos) throw Error(ErrorKind::Parse, "unterminated sqrt in '" + s + "'");
            std::string_view inner = std::string_view(s).substr(pos + 5, close - pos - 5);
            if (!all_digits(inner)) throw Error(ErrorKind::Parse, "bad radicand in '" + s + "'");
            std::int64_t dd = std::stoll(std::string(inner));
            if (d != 0 && dd != d) throw Error(ErrorKind::MismatchedField, "two radicands in '" + s + "'");
            d = dd;
            radical = true;
            pos = close + 1;
        } else if (!have_coeff) {
            throw Error(ErrorKind::Parse, "bad number '" + s + "'");
        }
        if (negative) coeff = -coeff;
        if (radical)
            b += coeff;
        else
            a += coeff;
    }
    return QuadExt(a, b, d == 0 ? default_d : d);
}

bool same_real_value(const QuadExt& x, const QuadExt& y) {
    if (x.d() == y.d()) return x == y;
    return x.is_rational() && y.is_rational() && x.a() == y.a();
}

int quad_sign(const QuadExt& x) { return x.sign(); }

QuadExt quad_arith(const QuadExt& x, const QuadExt& y, QuadOp op) {
    switch (op) {
        case QuadOp::Add: return x + y;
        case QuadOp::Sub: return x - y;
        case QuadOp::Mul: return x * y;
        case QuadOp::Div: return x / y;
    }
    throw Error(ErrorKind::Parse, "unknown op");
}

std::vector<std::pair<int, bool>> power_rationality(const QuadExt& lambda, int pmax) {
    if (lambda.is_zero()) throw Error(ErrorKind::DivisionByZero, "power_rationality of zero");
    std::vector<std::pair<int, bool>> out;
    QuadExt power = QuadExt::one(lambda.d());
    for (int p = 1; p <= pmax; ++p) {
        power *= lambda;
        out.emplace_back(p, power.is_rational());
    }
    return out;
}

// ---------------------------------------------------------------- Mat2

Mat2::Mat2(QuadExt m11, QuadExt m12, QuadExt m21, QuadExt m22)
    : e_{std::move(m11), std::move(m12), std::move(m21), std::move(m22)} {
    for (int k = 1; k < 4; ++k)
        if (e_[k].d() != e_[0].d()) throw Error(ErrorKind::MismatchedField, "matrix entries over different fields");
}

Mat2 Mat2::identity(std::int64_t d) {
    return Mat2(QuadExt::one(d), QuadExt::zero(d), QuadExt::zero(d), QuadExt::one(d));
}

Mat2 Mat2::from_rationals(const Rational& m11, const Rational& m12, const Rational& m21, const Rational& m22,
                          std::int64_t d) {
    return Mat2(QuadExt::embed(m11, d), QuadExt::embed(m12, d), QuadExt::embed(m21, d), QuadExt::embed(m22, d));
}

QuadExt Mat2::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
QuadExt Mat2::trace() const { return e_[0] + e_[3]; }

Mat2 Mat2::inverse() const {
    QuadExt det_value = det();
    if (det_value.is_zero()) throw Error(ErrorKind::SingularMatrix, "inverse of singular matrix");
    QuadExt inv = det_value.inverse();
    return Mat2(e_[3] * inv, -e_[1] * inv, -e_[2] * inv, e_[0] * inv);
}

Mat2 Mat2::pow(unsigned n) const {
    Mat2 result = identity(d());
    Mat2 base = *this;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

bool Mat2::is_identity() const {
    return sgn(e_[1].a()) == 0 && sgn(e_[1].b()) == 0 && sgn(e_[2].a()) == 0 && sgn(e_[2].b()) == 0 &&
           e_[0].is_rational() && e_[3].is_rational() && e_[0].a() == 1 && e_[3].a() == 1;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return Mat2(x.e_[0] * y.e_[0] + x.e_[1] * y.e_[2], x.e_[0] * y.e_[1] + x.e_[1] * y.e_[3],
                x.e_[2] * y.e_[0] + x.e_[3] * y.e_[2], x.e_[2] * y.e_[1] + x.e_[3] * y.e_[3]);
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    return Mat2(x.e_[0] + y.e_[0], x.e_[1] + y.e_[1], x.e_[2] + y.e_[2], x.e_[3] + y.e_[3]);
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
    return Mat2(x.e_[0] - y.e_[0], x.e_[1] - y.e_[1], x.e_[2] - y.e_[2], x.e_[3] - y.e_[3]);
}

bool operator==(const Mat2& x, const Mat2& y) {
    for (int k = 0; k < 4; ++k)
        if (x.e_[k] != y.e_[k]) return false;
    return true;
}

std::string Mat2::to_string() const {
    return "[[" + e_[0].to_string() + ", " + e_[1].to_string() + "], [" + e_[2].to_string() + ", " +
           e_[3].to_string() + "]]";
}

Mat2 Mat2::parse(std::string_view text, std::int64_t default_d) {
    std::string s;
    for (char c : text)
        if (c != '[' && c != ']') s.push_back(c);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw Error(ErrorKind::Parse, "matrix needs 4 entries: '" + std::string(text) + "'");
    // Pick up the radicand from any entry that names one, so "1, sqrt(2), 0, 1" works.
    std::int64_t d = default_d;
    for (const auto& p : parts) {
        auto pos = p.find("sqrt(");
        if (pos != std::string::npos) {
            d = QuadExt::parse(p, default_d).d();
            break;
        }
    }
    return Mat2(QuadExt::parse(parts[0], d), QuadExt::parse(parts[1], d), QuadExt::parse(parts[2], d),
                QuadExt::parse(parts[3], d));
}

// ---------------------------------------------------------------- ProjMat

Mat2 ProjMat::canonical_sign(const Mat2& m) {
    for (int k = 0; k < 4; ++k) {
        int s = m.entry(k).sign();
        if (s > 0) return m;
        if (s < 0) return -m;
    }
    return m;
}

ProjMat::ProjMat(const Mat2& m) : rep_(canonical_sign(m)) {
    QuadExt det_value = m.det();
    if (!(det_value.is_rational() && det_value.a() == 1))
        throw Error(ErrorKind::NotUnimodular, "det = " + det_value.to_string());
}

ProjMat::ProjMat(const Mat2& m, Unchecked) : rep_(canonical_sign(m)) {}

ProjMat proj_normalize(const Mat2& m) { return ProjMat(m); }
bool proj_eq(const ProjMat& p, const ProjMat& q) { return p == q; }

}  // namespace hnnlab
