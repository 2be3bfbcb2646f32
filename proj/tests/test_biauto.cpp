#include <doctest.h>

#include "hnnlab/biauto.hpp"
#include "hnnlab/hnn.hpp"
#include "support.hpp"

using namespace hnnlab;
using nlohmann::json;
using testsupport::l1;
using testsupport::uniform;
using testsupport::z2_point;

namespace {

std::string run_of(char c, long n) { return std::string(static_cast<std::size_t>(std::labs(n)), c); }

// x^m y^n, written out directly
std::string normal_form(long m, long n) { return run_of(m >= 0 ? 'x' : 'X', m) + run_of(n >= 0 ? 'y' : 'Y', n); }

std::vector<std::string> normal_forms_up_to(long r) {
    std::vector<std::string> out;
    for (long m = -r; m <= r; ++m)
        for (long n = -r; n <= r; ++n)
            if (std::labs(m) + std::labs(n) <= r) out.push_back(normal_form(m, n));
    return out;
}

Fsa from_words(const std::string& alphabet, const std::vector<std::string>& words) {
    // a trie as an NFA
    Nfa n;
    n.alphabet = alphabet;
    n.n_states = 1;
    n.initial = {0};
    n.accepting = {false};
    for (const auto& w : words) {
        std::size_t s = 0;
        for (char c : w) {
            n.edges.push_back({s, c, n.n_states});
            s = n.n_states++;
            n.accepting.push_back(false);
        }
        n.accepting[s] = true;
    }
    return Fsa::determinize(n);
}

Fsa trivial_language() {
    return Fsa::from_json(json{{"alphabet", ""}, {"states", 1}, {"initial", 0}, {"accepting", {0}}, {"transitions", json::array()}});
}

}  // namespace

TEST_CASE("fsa_accepts examples") {
    Fsa m = zsquared_normal_form();
    CHECK(m.accepts("xxyyy"));
    CHECK_FALSE(m.accepts("xyx"));
    CHECK(m.accepts(""));
    CHECK_FALSE(m.accepts("xX"));
    CHECK(m.accepts("XXYY"));
    try {
        (void)m.accepts("xq");
        FAIL("expected UnknownLetter");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownLetter);
    }
    CHECK(zsquared_normal_form_y_first().accepts("yyx"));
    CHECK_FALSE(zsquared_normal_form_y_first().accepts("xy"));
}

TEST_CASE("determinize trims and agrees with the source language") {
    // x* y* written with a redundant, unreachable and dead-end state
    Nfa n;
    n.alphabet = "xy";
    n.n_states = 5;
    n.initial = {0, 1};
    n.accepting = {true, true, false, false, false};
    n.edges = {{0, 'x', 0}, {0, 'y', 1}, {1, 'y', 1}, {1, 'x', 3}, {4, 'x', 0}};
    Fsa d = Fsa::determinize(n);
    CHECK(d.accepts("xxyy"));
    CHECK_FALSE(d.accepts("yx"));
    for (std::size_t s = 0; s < d.n_states(); ++s) {
        bool reaches_accept = false;
        std::vector<std::size_t> stack{s};
        std::vector<bool> seen(d.n_states());
        while (!stack.empty()) {
            std::size_t q = stack.back();
            stack.pop_back();
            if (seen[q]) continue;
            seen[q] = true;
            if (d.is_accepting(q)) reaches_accept = true;
            for (char c : d.alphabet())
                if (d.next(q, c) >= 0) stack.push_back(static_cast<std::size_t>(d.next(q, c)));
        }
        CHECK(reaches_accept);
    }
    // subsets {0,1}, {0,3}, {0}, {1}; the dead {3} is trimmed
    CHECK(d.n_states() == 4);

    Nfa never;
    never.alphabet = "x";
    never.n_states = 2;
    never.initial = {0};
    never.accepting = {false, false};
    never.edges = {{0, 'x', 1}};
    Fsa e = Fsa::determinize(never);
    CHECK(e.empty_language());
    CHECK_FALSE(e.accepts(""));
    CHECK(e.accepted_up_to(4).empty());
}

TEST_CASE("accepted_up_to matches the normal-form enumeration") {
    for (long r = 0; r <= 6; ++r) {
        auto got = zsquared_normal_form().accepted_up_to(static_cast<std::size_t>(r));
        auto want = normal_forms_up_to(r);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("json round trip") {
    for (const Fsa& m : {zsquared_normal_form(), zsquared_normal_form_y_first(), zsquared_adversarial()}) {
        Fsa back = Fsa::from_json(m.to_json());
        CHECK(back.accepted_up_to(6) == m.accepted_up_to(6));
        CHECK(json::parse(m.to_json().dump()) == m.to_json());
    }
    json named = {{"alphabet", json::array({"x", "X"})},
                  {"states", json::array({"start", "end"})},
                  {"initial", json::array({"start"})},
                  {"accepting", json::array({"end"})},
                  {"transitions", json::array({json::array({"start", "x", "end"})})}};
    Fsa f = Fsa::from_json(named);
    CHECK(f.accepts("x"));
    CHECK_FALSE(f.accepts(""));
    CHECK_THROWS_AS(Fsa::from_json(json{{"alphabet", "x"}}), Error);
}

TEST_CASE("uniformly finite-to-one examples") {
    ZnModel z(2);
    BallOracle o(z, 6);
    auto nf = check_uniformly_finite_to_one(zsquared_normal_form(), o);
    CHECK(nf.bound == 1);
    CHECK(nf.surjective());

    ZnModel z2(2);
    BallOracle o2(z2, 4);
    auto both = check_uniformly_finite_to_one(from_words("xXyY", {"", "x", "y", "xy", "yx"}), o2);
    CHECK(both.bound == 2);
    auto bucket = both.bucket;
    std::sort(bucket.begin(), bucket.end());
    CHECK(bucket == std::vector<std::string>{"xy", "yx"});

    ZnModel z3(2);
    BallOracle o3(z3, 4);
    std::vector<std::string> no_y;
    for (long m = -4; m <= 4; ++m) no_y.push_back(normal_form(m, 0));
    auto miss = check_uniformly_finite_to_one(from_words("xXyY", no_y), o3);
    REQUIRE(miss.unrepresented.has_value());
    CHECK(*miss.unrepresented == "(0,1)");
}

TEST_CASE("fellow-traveller constants against the L1 oracle") {
    for (std::size_t r = 3; r <= 8; ++r) {
        ZnModel z(2);
        BallOracle o(z, r);
        auto rep = check_fellow_traveller(zsquared_normal_form(), o, 10);
        auto words = normal_forms_up_to(static_cast<long>(r));
        CHECK(rep.zeta == static_cast<std::size_t>(testsupport::brute_fellow_constant(words, false)));
        CHECK(rep.zeta_shared_endpoint == static_cast<std::size_t>(testsupport::brute_fellow_constant(words, true)));
        CHECK(rep.zeta == 3);
        CHECK(rep.zeta_shared_endpoint == 2);
        REQUIRE(rep.extreme.has_value());
        const auto& w = *rep.extreme;
        auto pu = z2_point(w.u.substr(0, std::min(w.time, w.u.size())));
        auto pv = z2_point(w.a + w.v.substr(0, std::min(w.time, w.v.size())));
        CHECK(static_cast<std::size_t>(l1(pu, pv)) == w.distance);
        CHECK(z2_point(w.u + w.b) == z2_point(w.a + w.v));
    }
}

TEST_CASE("fellow traveller on the trivial group") {
    ZnModel z(0);
    BallOracle o(z, 5);
    auto rep = check_structure(trivial_language(), o);
    CHECK(rep.fellow.zeta == 0);
    CHECK(rep.finite_to_one.bound == 1);
    CHECK(rep.ok());
}

TEST_CASE("adversarial language is rejected with a replayable witness") {
    ZnModel z(2);
    BallOracle o(z, 8);
    auto rep = check_fellow_traveller(zsquared_adversarial(), o);
    REQUIRE(rep.violation.has_value());
    const auto& w = *rep.violation;
    CHECK(w.distance > kDefaultFellowCap);
    Fsa adv = zsquared_adversarial();
    CHECK(adv.accepts(w.u));
    CHECK(adv.accepts(w.v));
    CHECK(w.a.size() <= 1);
    CHECK(w.b.size() <= 1);
    CHECK(z2_point(w.u + w.b) == z2_point(w.a + w.v));
    auto pu = z2_point(w.u.substr(0, std::min(w.time, w.u.size())));
    auto pv = z2_point(w.a + w.v.substr(0, std::min(w.time, w.v.size())));
    CHECK(static_cast<std::size_t>(l1(pu, pv)) == w.distance);
    // the same language is fine as a set of representatives
    CHECK(check_uniformly_finite_to_one(adv, o).bound == 1);
}

TEST_CASE("quasi-geodesic constant") {
    for (std::size_t r = 3; r <= 6; ++r) {
        ZnModel z(2);
        BallOracle o(z, r);
        CHECK(observed_quasigeodesic_constant(zsquared_normal_form(), o) == 1);
    }
    // x X x X ... is not quasi-geodesic with nu = 1
    ZnModel z(1);
    BallOracle o(z, 6);
    Fsa zig = from_words("xX", {"", "xX", "xXxX", "xXxXxX"});
    CHECK(observed_quasigeodesic_constant(zig, o) > 1);
}

TEST_CASE("ell and tau examples") {
    ZnModel z(2);
    Fsa m = zsquared_normal_form();
    LanguageLengths lens(m, z, 30);
    CHECK(lens.ell(z.intern({2, 3})) == 5);
    CHECK(lens.ell(GroupModel::identity()) == 0);
    auto t = tau_estimate(lens, z, z.intern({1, 1}), 6);
    CHECK(t.stabilized);
    CHECK(t.value == 2);
    CHECK(t.lengths == std::vector<std::size_t>{0, 2, 4, 6, 8, 10, 12});
    auto t0 = tau_estimate(lens, z, GroupModel::identity(), 6);
    CHECK(t0.value == 0);
    try {
        (void)lens.ell(z.intern({40, 0}));
        FAIL("expected OutOfWindow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfWindow);
    }
    CHECK(conj_ell(lens, z, z.intern({2, 3}), 2) == 5);
}

TEST_CASE("property: tau is rational, exact and conjugation invariant") {
    ZnModel z(2);
    Fsa m = zsquared_normal_form();
    LanguageLengths lens(m, z, 48);
    for (int k = 0; k < 20; ++k) {
        long p = uniform(-4, 4), q = uniform(-4, 4);
        int g = z.intern({p, q});
        auto t = tau_estimate(lens, z, g, 6);
        CHECK(t.stabilized);
        CHECK(t.value == std::labs(p) + std::labs(q));
        int h = z.intern({uniform(-3, 3), uniform(-3, 3)});
        int c = z.mul(z.mul(h, g), z.inverse(h));
        CHECK(tau_estimate(lens, z, c, 6).value == t.value);
        for (std::size_t a = 0; a <= 3; ++a)
            for (std::size_t b = 0; b <= 3; ++b)
                CHECK(lens.ell(z.power(g, static_cast<long>(a + b))) <=
                      lens.ell(z.power(g, static_cast<long>(a))) + lens.ell(z.power(g, static_cast<long>(b))));
    }
}

TEST_CASE("tau without stabilization is the last ratio") {
    // words of the form x^(2n) followed by at most one x, so ell(x^n) = n but
    // a language with a lag: only even powers are short
    ZnModel z(1);
    Fsa m = from_words("xX", {"", "x", "xx", "xxxx", "xxxxxxxx"});
    LanguageLengths lens(m, z, 8);
    auto t = tau_estimate(lens, z, z.letter('x'), 2);
    CHECK_FALSE(t.stabilized);
    CHECK(t.value == 1);
}

TEST_CASE("vertex group ball") {
    const HnnData& d = HnnGroup::standard().data();
    MatrixModel m(d.base_alphabet, d.base_assignment);
    BallOracle o(m, 2, 4);
    // free-group-like growth at small radius in a surface group: 1 + 8 + 8*7
    CHECK(o.elements_within(1).size() == 9);
    CHECK(o.elements_within(2).size() == 65);
    CHECK(m.evaluate(d.base_alphabet.format(d.base.relators.front())) == GroupModel::identity());
    CHECK(o.norm(m.evaluate("ab")) == 2u);
}
