#include <doctest.h>

#include "hnnlab/hnn.hpp"
#include "hnnlab/quat.hpp"
#include "support.hpp"

using namespace hnnlab;
using testsupport::random_quaternion;

namespace {

const QuatAlgebra kAlg = QuatAlgebra::standard();
const Quaternion kOne(1, 0, 0, 0), kI(0, 1, 0, 0), kJ(0, 0, 1, 0), kK(0, 0, 0, 1);

QuadExt s2(const Rational& a, const Rational& b) { return QuadExt(a, b, 2); }

// trd(e_r e_s) Gram determinant computed with the table product
Integer gram_disc(const std::array<Quaternion, 4>& e) {
    testsupport::RatMatrix g(4, std::vector<Rational>(4));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s) g[r][s] = 2 * testsupport::table_mul(2, 13, e[r], e[s]).x[0];
    Rational d = testsupport::det(g);
    Rational root;
    REQUIRE(rational_sqrt(abs(d), root));
    REQUIRE(root.get_den() == 1);
    return root.get_num();
}

}  // namespace

TEST_CASE("quat_mul examples") {
    CHECK(quat_mul(kAlg, kI, kJ) == kK);
    CHECK(quat_mul(kAlg, kJ, kI) == -kK);
    CHECK(quat_mul(kAlg, kK, kK) == Quaternion::scalar(-26));
    CHECK(quat_mul(kAlg, kI, kI) == Quaternion::scalar(2));
    CHECK(quat_mul(kAlg, kJ, kJ) == Quaternion::scalar(13));
}

TEST_CASE("norm and trace examples") {
    const auto& e = standard_elements();
    CHECK(e.t == Quaternion(Rational(1, 3), 1, 0, Rational(1, 3)));
    CHECK(e.a == Quaternion(Rational(3, 2), Rational(3, 2), Rational(-1, 2), Rational(-1, 2)));
    CHECK(quat_norm(kAlg, e.t) == 1);
    CHECK(quat_norm(kAlg, e.a) == 1);
    for (const Quaternion* x : {&e.b, &e.c, &e.d}) CHECK(quat_norm(kAlg, *x) == 1);
    CHECK(quat_norm(kAlg, kOne) == 1);
    CHECK(quat_trace(kOne) == 2);
    Quaternion x(1, 2, 3, 4);
    CHECK(quat_conj(x) == Quaternion::scalar(quat_trace(x)) - x);
    CHECK(quat_mul(kAlg, x, quat_inverse(kAlg, x)) == kOne);
    CHECK_THROWS_AS(quat_inverse(kAlg, Quaternion()), Error);
}

TEST_CASE("phi examples") {
    CHECK(phi(kAlg, kI) == Mat2(s2(0, 1), s2(0, 0), s2(0, 0), s2(0, -1)));
    const auto& e = standard_elements();
    Mat2 t(s2(Rational(1, 3), 1), s2(0, Rational(1, 3)), s2(0, Rational(-13, 3)), s2(Rational(1, 3), -1));
    CHECK(phi(kAlg, e.t) == t);
    CHECK(phi(kAlg, quat_mul(kAlg, e.a, e.b)) == phi(kAlg, e.a) * phi(kAlg, e.b));
    CHECK(phi(kAlg, kJ) == Mat2(s2(0, 0), s2(1, 0), s2(13, 0), s2(0, 0)));
    CHECK(phi(kAlg, kK) == Mat2(s2(0, 0), s2(0, 1), s2(0, -13), s2(0, 0)));
}

TEST_CASE("phi_inverse examples") {
    const auto& e = standard_elements();
    CHECK(phi_inverse(kAlg, phi(kAlg, e.t)) == e.t);
    CHECK(phi_inverse(kAlg, Mat2::identity(2)) == kOne);
    try {
        phi_inverse(kAlg, Mat2::from_rationals(0, 1, 1, 0, 2));
        FAIL("expected NotInImage");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::NotInImage);
    }
}

TEST_CASE("ring_closure examples") {
    OrderLattice std_order = OrderLattice::span({kOne, kI, kJ, kK});
    CHECK(ring_closure(kAlg, {kI, kJ, kK}) == std_order);

    const auto& e = standard_elements();
    auto coords = testsupport::cramer({e.a, e.b, e.c, e.d}, kOne);
    CHECK(coords == std::array<Rational, 4>{Rational(1, 2), Rational(1, 2), Rational(-2, 3), Rational(1, 3)});

    OrderLattice o = ring_closure(kAlg, {e.a, e.b, e.c, e.d});
    CHECK(o.is_order(kAlg));
    for (const Quaternion* x : {&kOne, &e.a, &e.b, &e.c, &e.d}) CHECK(o.contains(*x));
    CHECK_FALSE(o.contains(e.t));
    CHECK_THROWS_AS(OrderLattice::span({kOne, kI, kJ}), Error);
}

TEST_CASE("reduced discriminant examples and Gram oracle") {
    OrderLattice std_order = OrderLattice::span({kOne, kI, kJ, kK});
    CHECK(reduced_discriminant(kAlg, std_order) == 104);
    CHECK(gram_disc(std_order.basis()) == 104);

    const auto& e = standard_elements();
    OrderLattice o = ring_closure(kAlg, {e.a, e.b, e.c, e.d});
    Integer disc = reduced_discriminant(kAlg, o);
    CHECK(disc == gram_disc(o.basis()));
    CHECK(disc == 26);

    Integer prod = 1;
    for (long p : ramified_primes(kAlg)) prod *= p;
    CHECK(ramified_primes(kAlg) == std::vector<long>{2, 13});
    CHECK(disc == prod);

    // Z + 2O has index 8 in O
    const auto& b = o.basis();
    OrderLattice sub = OrderLattice::span({kOne, 2 * b[0], 2 * b[1], 2 * b[2], 2 * b[3]});
    CHECK(sub.is_order(kAlg));
    CHECK(o.contains_lattice(sub));
    Integer n = sub.index_in(o);
    CHECK(n == 8);
    CHECK(reduced_discriminant(kAlg, sub) == n * disc);
}

TEST_CASE("Hilbert symbols") {
    CHECK(hilbert_symbol(2, 13, 2) == -1);
    CHECK(hilbert_symbol(2, 13, 13) == -1);
    CHECK(hilbert_symbol(2, 13, 3) == 1);
    CHECK(hilbert_symbol(2, 13, 0) == 1);
    CHECK(hilbert_symbol(-1, -1, 0) == -1);
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(1, 7, 7) == 1);
    // product formula: an even number of local symbols are -1
    for (auto [a, b] : std::vector<std::pair<long, long>>{{2, 13}, {-1, 3}, {5, 7}, {-6, 10}, {3, 11}}) {
        int prod = hilbert_symbol(a, b, 0);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) prod *= hilbert_symbol(a, b, p);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(prod == 1);
    }
}

TEST_CASE("membership examples") {
    HnnData data = load_gamma();
    const auto& o = SubgroupOracleSet::standard();
    auto img = [&](int g) { return data.assignment.image(Letter{g, false}); };
    CHECK(o.in_PM(img(0)));
    CHECK(o.in_K(img(3)));
    CHECK_FALSE(o.in_PM(img(kStableGen)));
    CHECK_FALSE(o.in_K(img(0)));
    auto coords = o.order().coordinates(standard_elements().t);
    bool integral = std::all_of(coords.begin(), coords.end(), [](const Rational& r) { return r.get_den() == 1; });
    CHECK_FALSE(integral);
    for (const auto& p : data.pairs) {
        CHECK(o.in_K(data.base_assignment.evaluate(p.v)));
        CHECK(o.in_H(data.base_assignment.evaluate(p.u)));
    }
}

TEST_CASE("property: bridge identities, homomorphism and round trip") {
    for (int k = 0; k < 1000; ++k) {
        Quaternion p = random_quaternion(), q = random_quaternion();
        Mat2 m = phi(kAlg, p);
        CHECK(m.det() == QuadExt::embed(quat_norm(kAlg, p), 2));
        CHECK(m.trace() == QuadExt::embed(quat_trace(p), 2));
        Quaternion pq = quat_mul(kAlg, p, q);
        CHECK(pq == testsupport::table_mul(2, 13, p, q));
        CHECK(phi(kAlg, pq) == m * phi(kAlg, q));
        CHECK(quat_norm(kAlg, pq) == quat_norm(kAlg, p) * quat_norm(kAlg, q));
        CHECK(phi_inverse(kAlg, m) == p);
    }
}

TEST_CASE("property: ring_closure idempotent with integral basis products") {
    const auto& e = standard_elements();
    OrderLattice o = ring_closure(kAlg, {e.a, e.b, e.c, e.d});
    std::vector<Quaternion> basis(o.basis().begin(), o.basis().end());
    CHECK(ring_closure(kAlg, basis) == o);
    for (const auto& x : o.basis())
        for (const auto& y : o.basis()) {
            Quaternion xy = quat_mul(kAlg, x, y);
            CHECK(quat_trace(xy).get_den() == 1);
            CHECK(quat_norm(kAlg, xy).get_den() == 1);
            CHECK(o.contains(xy));
        }
}

TEST_CASE("property: membership nesting on random words") {
    HnnData data = load_gamma();
    const auto& o = SubgroupOracleSet::standard();
    int k_hits = 0, h_hits = 0;
    for (int k = 0; k < 300; ++k) {
        ProjMat m = data.base_assignment.evaluate(testsupport::random_word(4, 8));
        CHECK(o.in_PM(m));
        if (o.in_K(m)) {
            ++k_hits;
            CHECK(o.in_PM(m));
            CHECK(o.in_PN(m));
        }
        if (o.in_H(m)) ++h_hits;
    }
    // K words built from its generators land in K
    for (int k = 0; k < 100; ++k) {
        Word w;
        for (Letter y : testsupport::random_word(26, 3)) {
            const Word& v = data.pairs[static_cast<std::size_t>(y.gen)].v;
            w = concat(w, y.inv ? inverse(v) : v);
        }
        CHECK(o.in_K(data.base_assignment.evaluate(w)));
    }
    CHECK(k_hits > 0);
    CHECK(h_hits > 0);
}

TEST_CASE("text form") {
    Quaternion x(Rational(1, 3), -1, 0, Rational(2, 5));
    CHECK(Quaternion::parse(x.to_string()) == x);
    CHECK(Quaternion::parse("k + 1/3") == Quaternion(Rational(1, 3), 0, 0, 1));
}
