#pragma once

// Coset enumeration for right cosets Hw of a subgroup H of a finitely
// presented group: HLT-style Todd-Coxeter (optionally decorated with words
// over the given subgroup generators) and an arithmetic Schreier-graph
// construction driven by a membership oracle.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hnnlab/presentation.hpp"

namespace hnnlab {

inline constexpr std::size_t kDefaultCosetCap = 1'000'000;

/// Reads HNN_LAB_COSET_CAP, falling back to kDefaultCosetCap.
std::size_t coset_cap_from_env();

/// Coset 0 is the subgroup. table[c][x.col()] = c.x. When decorated,
/// deco[c][col] is a word s over the subgroup generators with
/// w_c * x * w_{c.x}^-1 = s in the group, for coset representatives w_c
/// (w_0 = 1).
struct CosetTable {
    std::size_t n_gens = 0;
    std::vector<std::vector<int>> table;
    std::optional<std::vector<std::vector<Word>>> deco;
    std::size_t n_subgens = 0;

    std::size_t index() const noexcept { return table.size(); }
    std::size_t n_cols() const noexcept { return 2 * n_gens; }
    int act(int coset, Letter x) const { return table.at(static_cast<std::size_t>(coset)).at(static_cast<std::size_t>(x.col())); }
    int trace(int coset, const Word& w) const;

    /// Closed, each column a permutation, inverse columns mutually inverse.
    bool is_complete() const;
    /// Every relator closes from every coset.
    bool scans_relators(const Presentation& p) const;
    /// Every word returns coset 0 to itself.
    bool fixes_base(const std::vector<Word>& words) const;

    /// Row-by-row table equality of the undecorated parts.
    bool same_labels(const CosetTable& other) const { return n_gens == other.n_gens && table == other.table; }
};

/// Breadth-first representative words w_c (coset 0 -> c) of a complete table.
std::vector<Word> coset_representatives(const CosetTable& t);

/// Renumber cosets breadth-first from 0, scanning columns in order.
CosetTable standardize(const CosetTable& t);

struct EnumerationStats {
    std::size_t total_defined = 0;
    std::size_t max_live = 0;
};

/// Throws CapExceeded when more than cap cosets are live at once.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgens, std::size_t cap = kDefaultCosetCap,
                        bool decorate = false, EnumerationStats* stats = nullptr);

using MembershipOracle = std::function<bool(const ProjMat&)>;

/// Breadth-first coset graph with w1 ~ w2 iff membership(w1 w2^-1). The
/// result is standardized, so it is comparable with todd_coxeter output.
CosetTable schreier_graph_arith(const MembershipOracle& membership, const Assignment& assignment,
                                std::size_t cap = kDefaultCosetCap);

/// Word over the subgroup generators equal to w. Requires a decorated
/// table; throws NotInSubgroup when w does not return coset 0 to itself.
Word rewrite_in_subgroup(const Word& w, const CosetTable& table);

}  // namespace hnnlab
