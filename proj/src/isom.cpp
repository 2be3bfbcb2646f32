#include "hnnlab/isom.hpp"

#include <iomanip>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace hnnlab {

namespace {

Rational abs_rational(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

// Traces 2cos(pi p/q) of degree at most 2 over Q, grouped by field.
bool on_torsion_trace_list(const QuadExt& tr) {
    if (tr.is_rational()) {
        const Rational& v = tr.a();
        return v == 0 || v == 1 || v == -1 || v == 2 || v == -2;
    }
    const Rational& a = tr.a();
    const Rational& b = tr.b();
    switch (tr.d()) {
        case 2:
        case 3: return sgn(a) == 0 && (b == 1 || b == -1);
        case 5: {
            Rational half = make_rational(1, 2);
            return (a == half || a == -half) && (b == half || b == -half);
        }
        default: return false;
    }
}

}  // namespace

std::string TransLength::to_string() const {
    Integer r;
    mpz_lcm(r.get_mpz_t(), lambda.a().get_den_mpz_t(), lambda.b().get_den_mpz_t());
    Rational n1 = lambda.a() * Rational(r);
    Rational n2 = lambda.b() * Rational(r);
    std::ostringstream inner;
    if (disc == 1 || sgn(n2) == 0) {
        inner << hnnlab::to_string(lambda.a());
    } else {
        std::ostringstream num;
        num << hnnlab::to_string(n1);
        num << (sgn(n2) < 0 ? "-" : "+");
        Rational mag = abs_rational(n2);
        if (mag != 1) num << hnnlab::to_string(mag) << "*";
        num << "sqrt(" << disc << ")";
        if (r == 1)
            inner << num.str();
        else
            inner << "(" << num.str() << ")/" << hnnlab::to_string(r);
    }
    return "2*log(" + inner.str() + ")";
}

std::string TransLength::decimal(int digits) const {
    using boost::multiprecision::cpp_dec_float_100;
    auto to_float = [](const Rational& q) {
        return cpp_dec_float_100(q.get_num().get_str()) / cpp_dec_float_100(q.get_den().get_str());
    };
    cpp_dec_float_100 value = to_float(lambda.a());
    if (disc != 1) value += to_float(lambda.b()) * sqrt(cpp_dec_float_100(disc));
    cpp_dec_float_100 tau = 2 * log(value);
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << tau;
    return out.str();
}

IsometryClass classify(const ProjMat& m) {
    const std::int64_t d = m.d();
    QuadExt tr = m.rep().trace();
    QuadExt delta = tr * tr - QuadExt::embed(4, d);
    int s = delta.sign();
    if (s > 0) {
        if (!tr.is_rational()) return iso::Hyperbolic{std::nullopt};
        return iso::Hyperbolic{translation_length(m)};
    }
    if (s == 0) {
        if (m.is_identity()) return iso::Identity{};
        return iso::Parabolic{};
    }
    Mat2 power = m.rep();
    for (int n = 1; n <= kTorsionPowerBound; ++n) {
        if (n > 1) power = power * m.rep();
        if (power.is_identity() || (-power).is_identity()) return iso::EllipticFinite{n};
    }
    if (on_torsion_trace_list(tr))
        throw Error(ErrorKind::UnsupportedField, "torsion trace " + tr.to_string() + " without a power of order <= 120");
    return iso::EllipticInfinite{};
}

std::string describe(const IsometryClass& c) {
    struct Visitor {
        std::string operator()(const iso::Identity&) const { return "identity"; }
        std::string operator()(const iso::EllipticFinite& e) const {
            return "elliptic, order " + std::to_string(e.order);
        }
        std::string operator()(const iso::EllipticInfinite&) const { return "elliptic, infinite order"; }
        std::string operator()(const iso::Parabolic&) const { return "parabolic"; }
        std::string operator()(const iso::Hyperbolic& h) const {
            if (!h.length) return "hyperbolic";
            return "hyperbolic, tau = " + h.length->to_string();
        }
    };
    return std::visit(Visitor{}, c);
}

TransLength translation_length(const ProjMat& m) {
    QuadExt tr = m.rep().trace();
    const std::int64_t d = m.d();
    QuadExt delta = tr * tr - QuadExt::embed(4, d);
    if (delta.sign() <= 0) throw Error(ErrorKind::NotHyperbolic, "trace " + tr.to_string() + " has |tr| <= 2");
    if (!tr.is_rational())
        throw Error(ErrorKind::UnsupportedField, "translation length needs a rational trace, got " + tr.to_string());
    Rational abs_tr = abs_rational(tr.a());
    Rational disc_value = delta.a();
    Rational root;
    if (rational_sqrt(disc_value, root)) {
        Rational lam = (abs_tr + root) / 2;
        return TransLength{QuadExt::embed(lam, d), 1};
    }
    std::int64_t D = squarefree_part(disc_value);
    Rational cofactor;
    rational_sqrt(disc_value / Rational(D), cofactor);
    return TransLength{QuadExt(abs_tr / 2, cofactor / 2, D), D};
}

RatioVerdict length_ratio_independent(const TransLength& l1, const TransLength& l2, int bound) {
    std::vector<QuadExt> pow1, pow2;
    pow1.reserve(static_cast<std::size_t>(bound));
    pow2.reserve(static_cast<std::size_t>(bound));
    QuadExt x1 = l1.lambda;
    QuadExt x2 = l2.lambda;
    for (int p = 1; p <= bound; ++p) {
        pow1.push_back(x1);
        pow2.push_back(x2);
        x1 *= l1.lambda;
        x2 *= l2.lambda;
    }
    for (int p = 1; p <= bound; ++p)
        for (int q = 1; q <= bound; ++q)
            if (same_real_value(pow1[static_cast<std::size_t>(p - 1)], pow2[static_cast<std::size_t>(q - 1)]))
                return Dependent{p, q};

    // lambda = alpha + beta sqrt(D) with alpha, beta > 0 gives
    // beta_{p+1} = alpha beta_p + beta alpha_p > 0 by induction, so every
    // power is irrational; irrationals from distinct fields never agree.
    auto certified = [](const TransLength& l, const std::vector<QuadExt>& powers) {
        if (l.disc == 1 || sgn(l.lambda.a()) <= 0 || sgn(l.lambda.b()) <= 0) return false;
        for (std::size_t n = 0; n < powers.size(); ++n) {
            if (sgn(powers[n].a()) <= 0 || sgn(powers[n].b()) <= 0) return false;
            if (n > 0 && !(powers[n].b() > powers[n - 1].b())) return false;
        }
        return true;
    };
    if (l1.disc != l2.disc && certified(l1, pow1) && certified(l2, pow2)) return IndependentCertified{};
    return IndependentUpTo{bound};
}

std::string describe(const RatioVerdict& v) {
    struct Visitor {
        std::string operator()(const Dependent& d) const {
            return "dependent: " + std::to_string(d.p) + "*tau1 = " + std::to_string(d.q) + "*tau2";
        }
        std::string operator()(const IndependentUpTo& u) const {
            return "independent for all p, q <= " + std::to_string(u.bound);
        }
        std::string operator()(const IndependentCertified&) const { return "independent (certified)"; }
    };
    return std::visit(Visitor{}, v);
}

}  // namespace hnnlab
