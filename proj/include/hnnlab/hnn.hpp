#pragma once

// The HNN extension Gamma = PM *_{H^t = K}: the 27-relation presentation,
// exact verification, Britton normal forms, the word problem and the local
// structure of the Bass-Serre tree.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hnnlab/coset.hpp"
#include "hnnlab/presentation.hpp"
#include "hnnlab/quat.hpp"

namespace hnnlab {

inline constexpr std::size_t kRelationCount = 27;
inline constexpr int kStableGen = 4;  // a, b, c, d, t

/// The relations exactly as printed, one "lhs = rhs" per entry.
const std::array<std::string_view, kRelationCount>& printed_relations();

/// Relation 11 as printed does not hold under phi; the corrected
/// left-hand side carries an extra d^-1 a^2 d after the leading t.
inline constexpr std::size_t kCorrectedRelation = 11;
std::string_view corrected_relation_11();

enum class Transcription { AsPrinted, Corrected };

struct Relation {
    std::size_t number = 0;  // 1-based
    std::string text;
    Word lhs;
    Word rhs;

    Word relator() const { return concat(lhs, inverse(rhs)); }
};

/// t u t^-1 = v with u, v words over a, b, c, d.
struct HnnPair {
    Word u;
    Word v;
};

struct HnnData {
    Transcription transcription;
    Alphabet alphabet;        // a b c d t
    Alphabet base_alphabet;   // a b c d
    std::vector<Relation> relations;
    std::vector<HnnPair> pairs;
    Presentation base;        // relation 1 over a, b, c, d
    Assignment assignment;    // phi(a), phi(b), phi(c), phi(d), phi(t)
    Assignment base_assignment;

    /// All 27 relators over a, b, c, d, t.
    Presentation full_presentation() const;
    std::vector<Word> subgroup_words_u() const;
    std::vector<Word> subgroup_words_v() const;
};

/// Parses the compiled-in relations; checks their shape (relation 1 t-free,
/// relations 2..27 of the form t u t^-1 = v) and throws Parse when it fails.
HnnData load_gamma(Transcription transcription = Transcription::Corrected);

struct RelationCheck {
    std::size_t number = 0;
    std::string text;
    bool pass = false;
    ProjMat lhs_value;
    ProjMat rhs_value;
};

struct VerificationReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const;
    std::size_t passed() const;
};

VerificationReport verify_presentation(const HnnData& data);
/// Witness for a failed check: lhs - rhs of the canonical representatives.
Mat2 witness_difference(const RelationCheck& check);

/// g0 t^e1 g1 ... t^en gn with gi over a, b, c, d.
struct BrittonForm {
    std::vector<Word> segments;  // size = exponents.size() + 1
    std::vector<int> exponents;  // each +1 or -1

    static BrittonForm split(const Word& w);
    Word to_word() const;
    std::size_t t_count() const noexcept { return exponents.size(); }
    /// "g0 · t^e1 · g1 · …"
    std::string to_string(const Alphabet& base) const;
};

struct TreeVertexRef {
    Word rep;  // vertex rep * v0 in Gamma's alphabet
};

struct TreeEdge {
    std::string label;  // "<coset rep>^-1 t" or "<coset rep>^-1 T"
    TreeVertexRef target;
};

/// Gamma with its oracles and decorated coset tables, built once and
/// validated on construction.
class HnnGroup {
public:
    explicit HnnGroup(HnnData data, std::size_t cap = coset_cap_from_env());
    /// The corrected transcription, built on first use.
    static const HnnGroup& standard();

    const HnnData& data() const noexcept { return data_; }
    const SubgroupOracleSet& oracles() const noexcept { return *oracles_; }
    const CosetTable& k_table() const noexcept { return k_table_; }
    const CosetTable& h_table() const noexcept { return h_table_; }
    const SymmetrizedRelators& base_relators() const noexcept { return base_sym_; }

    /// Coset-table membership cross-checked against the arithmetic oracle;
    /// throws OracleDisagreement on conflict.
    bool base_word_in_k(const Word& g) const;
    bool base_word_in_h(const Word& g) const;

    BrittonForm britton_reduce(const Word& w) const;
    bool is_trivial(const Word& w) const;

    std::size_t tree_degree() const noexcept { return k_table_.index() + h_table_.index(); }
    std::vector<TreeEdge> tree_local(const TreeVertexRef& v) const;
    bool same_vertex(const TreeVertexRef& x, const TreeVertexRef& y) const;
    std::size_t tree_distance(const Word& w) const { return britton_reduce(w).t_count(); }

private:
    HnnData data_;
    const SubgroupOracleSet* oracles_;
    SymmetrizedRelators base_sym_;
    CosetTable k_table_;
    CosetTable h_table_;
};

}  // namespace hnnlab
