#pragma once

#include <vector>

#include "hnnlab/exact.hpp"
#include "hnnlab/word.hpp"

namespace hnnlab {

struct Presentation {
    Alphabet alphabet;
    std::vector<Word> relators;  // cyclically reduced, nonempty

    /// Cyclically reduces the relators; throws Parse on an empty one.
    Presentation(Alphabet alphabet, std::vector<Word> relators);

    std::size_t n_gens() const noexcept { return alphabet.size(); }
};

/// Images of the generators in PSL_2, with inverses cached.
class Assignment {
public:
    explicit Assignment(std::vector<ProjMat> images);

    std::size_t size() const noexcept { return images_.size(); }
    const ProjMat& image(Letter x) const;
    std::int64_t d() const noexcept { return images_.front().d(); }

    /// Product of the letter images, left to right.
    ProjMat evaluate(const Word& w) const;

private:
    std::vector<ProjMat> images_;
    std::vector<ProjMat> inverses_;
};

inline ProjMat evaluate(const Word& w, const Assignment& assignment) { return assignment.evaluate(w); }

/// All cyclic permutations of the relators and their inverses, deduplicated
/// and sorted.
class SymmetrizedRelators {
public:
    explicit SymmetrizedRelators(const Presentation& p);

    const std::vector<Word>& words() const noexcept { return words_; }
    /// Longest common prefix of two distinct symmetrized relators.
    std::size_t max_piece_length() const;
    std::size_t min_relator_length() const;
    /// C'(1/6): every piece is shorter than a sixth of the relators it lies in.
    bool satisfies_c_prime_sixth() const;

private:
    std::vector<Word> words_;
};

/// Replaces, leftmost then longest, any subword that is more than half of a
/// symmetrized relator by the inverse of the complementary part, until no
/// such subword remains. Throws NotDehnPresentation unless C'(1/6) holds.
Word dehn_reduce(const Word& w, const SymmetrizedRelators& rel);

}  // namespace hnnlab
