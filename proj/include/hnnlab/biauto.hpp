#pragma once

// Finite-state languages over single-character generator letters and
// window-limited checks of the biautomatic-structure axioms.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hnnlab/presentation.hpp"

namespace hnnlab {

/// Possibly nondeterministic automaton as read from input.
struct Nfa {
    std::string alphabet;  // one char per letter, e.g. "xXyY"
    std::size_t n_states = 0;
    std::vector<std::size_t> initial;
    std::vector<bool> accepting;
    struct Edge {
        std::size_t from;
        char letter;
        std::size_t to;
    };
    std::vector<Edge> edges;
};

/// Deterministic and trimmed. State 0 is initial; a missing transition is -1.
class Fsa {
public:
    /// Subset construction followed by trimming.
    static Fsa determinize(const Nfa& nfa);
    /// {"alphabet": "xXyY" or ["x",...], "states": n or [names], "initial": s or [s...],
    ///  "accepting": [s...], "transitions": [[s, "x", s'], ...]}
    static Fsa from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const std::string& alphabet() const noexcept { return alphabet_; }
    std::size_t n_states() const noexcept { return delta_.size(); }
    bool is_accepting(std::size_t s) const { return accepting_.at(s); }
    int next(std::size_t s, char letter) const;
    bool empty_language() const noexcept { return empty_; }

    /// Throws UnknownLetter on a letter outside the alphabet.
    bool accepts(const std::string& word) const;
    /// All accepted words of length <= max_len, shortlex order.
    std::vector<std::string> accepted_up_to(std::size_t max_len) const;

private:
    int letter_index(char c) const;

    std::string alphabet_;
    std::vector<std::vector<int>> delta_;
    std::vector<bool> accepting_;
    bool empty_ = false;
};

/// Normal forms x^m y^n with sign-consistent runs.
Fsa zsquared_normal_form();
/// y^n x^m.
Fsa zsquared_normal_form_y_first();
/// x-first normal forms of even length, y-first ones of odd length.
Fsa zsquared_adversarial();

/// A group with elements interned as integer ids; id 0 is the identity.
/// Letter c and its inverse are paired by letter_inverse.
class GroupModel {
public:
    virtual ~GroupModel() = default;

    const std::string& letters() const noexcept { return letters_; }
    /// Throws UnknownLetter.
    int letter(char c) const;
    char letter_inverse(char c) const;
    static constexpr int identity() noexcept { return 0; }

    virtual int mul(int x, int y) = 0;
    virtual int inverse(int x) = 0;
    virtual std::string describe(int x) const = 0;

    int evaluate(const std::string& word);
    int power(int x, long n);

protected:
    GroupModel() = default;
    void set_letters(std::string letters, std::vector<int> ids, std::string inverse_pairs);

private:
    std::string letters_;
    std::string inverse_of_;
    std::vector<int> letter_ids_;
};

/// Z^n with letters x,X,y,Y,z,Z (n <= 3).
class ZnModel : public GroupModel {
public:
    explicit ZnModel(std::size_t n);
    int mul(int x, int y) override;
    int inverse(int x) override;
    std::string describe(int x) const override;
    int intern(const std::vector<long>& v);
    const std::vector<long>& coords(int x) const { return elems_.at(static_cast<std::size_t>(x)); }

private:
    std::size_t n_;
    std::vector<std::vector<long>> elems_;
    std::map<std::vector<long>, int> ids_;
};

/// Subgroup of PSL_2 generated by the assignment, letters named by the
/// alphabet (lowercase) and its uppercase inverses.
class MatrixModel : public GroupModel {
public:
    MatrixModel(const Alphabet& alphabet, const Assignment& assignment);
    int mul(int x, int y) override;
    int inverse(int x) override;
    std::string describe(int x) const override;
    int intern(const ProjMat& m);

private:
    std::vector<ProjMat> elems_;
    std::unordered_map<ProjMat, int> ids_;
};

/// Cayley ball of the model. Words of length <= radius are the window; the
/// metric is exact up to metric_radius (default 2*radius + 2).
class BallOracle {
public:
    BallOracle(GroupModel& model, std::size_t radius, std::optional<std::size_t> metric_radius = std::nullopt);

    GroupModel& model() const noexcept { return *model_; }
    std::size_t radius() const noexcept { return radius_; }
    std::size_t metric_radius() const noexcept { return metric_radius_; }
    std::size_t size() const noexcept { return norm_.size(); }

    /// Word length of x, if within the metric radius.
    std::optional<std::size_t> norm(int x) const;
    std::optional<std::size_t> distance(int x, int y) const;
    /// Elements of norm <= r.
    std::vector<int> elements_within(std::size_t r) const;

private:
    GroupModel* model_;
    std::size_t radius_;
    std::size_t metric_radius_;
    std::unordered_map<int, std::size_t> norm_;
    std::vector<int> order_;
};

struct FiniteToOneReport {
    std::size_t bound = 0;                  // largest preimage bucket
    std::vector<std::string> bucket;        // words realizing it
    std::optional<std::string> unrepresented;  // element with no representative
    bool surjective() const noexcept { return !unrepresented; }
};

FiniteToOneReport check_uniformly_finite_to_one(const Fsa& m, const BallOracle& o);

/// Paths p (of u from 1) and q (of v from a) with u*b = a*v in the group.
struct FellowWitness {
    std::string u;
    std::string v;
    std::string a;  // "" or one letter
    std::string b;
    std::size_t time = 0;
    std::size_t distance = 0;
};

struct FellowTravellerReport {
    std::size_t zeta = 0;
    std::size_t zeta_shared_endpoint = 0;  // pairs with a = 1 or b = 1
    std::optional<FellowWitness> extreme;    // pair attaining zeta
    std::optional<FellowWitness> violation;  // first pair above the cap
    bool ok() const noexcept { return !violation; }
};

inline constexpr std::size_t kDefaultFellowCap = 4;

FellowTravellerReport check_fellow_traveller(const Fsa& m, const BallOracle& o, std::size_t cap = kDefaultFellowCap);

/// Smallest integer nu >= 1 with j - i <= nu * (d(p(i), p(j)) + 1) along every
/// accepted word of the window.
std::size_t observed_quasigeodesic_constant(const Fsa& m, const BallOracle& o);

struct StructureReport {
    std::size_t radius = 0;
    FiniteToOneReport finite_to_one;
    FellowTravellerReport fellow;
    std::size_t nu = 0;
    bool ok() const noexcept { return finite_to_one.surjective() && fellow.ok(); }
};

StructureReport check_structure(const Fsa& m, const BallOracle& o, std::size_t cap = kDefaultFellowCap);

/// Shortest accepted representatives, by breadth-first search over
/// (state, element) pairs with words of length <= max_len.
class LanguageLengths {
public:
    LanguageLengths(const Fsa& m, GroupModel& model, std::size_t max_len);

    std::size_t max_len() const noexcept { return max_len_; }
    /// Throws OutOfWindow when g has no accepted word of length <= max_len.
    std::size_t ell(int g) const;
    std::optional<std::size_t> find(int g) const;

private:
    std::size_t max_len_;
    std::unordered_map<int, std::size_t> best_;
};

/// Minimum of ell over h g h^-1 for h of norm <= conj_radius.
std::size_t conj_ell(const LanguageLengths& lengths, GroupModel& model, int g, std::size_t conj_radius);

struct TauEstimate {
    Rational value;
    bool stabilized = false;
    std::vector<std::size_t> lengths;  // ell(g^n) for n = 0..nmax
};

/// Stabilized once three consecutive increments agree; the value is then
/// that increment, otherwise ell(g^nmax)/nmax.
TauEstimate tau_estimate(const LanguageLengths& lengths, GroupModel& model, int g, std::size_t nmax);

nlohmann::json to_json(const StructureReport& r);
nlohmann::json to_json(const FellowWitness& w);

}  // namespace hnnlab
