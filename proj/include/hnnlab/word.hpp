#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hnnlab/error.hpp"

namespace hnnlab {

struct Letter {
    int gen = 0;
    bool inv = false;

    /// Column index in coset tables: 2*gen for gen, 2*gen+1 for its inverse.
    int col() const noexcept { return 2 * gen + (inv ? 1 : 0); }
    static Letter from_col(int col) noexcept { return Letter{col / 2, (col % 2) == 1}; }
    Letter inverse() const noexcept { return Letter{gen, !inv}; }

    friend bool operator==(Letter x, Letter y) noexcept { return x.gen == y.gen && x.inv == y.inv; }
    friend bool operator!=(Letter x, Letter y) noexcept { return !(x == y); }
    friend bool operator<(Letter x, Letter y) noexcept { return x.col() < y.col(); }
};

using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& x, const Word& y);
Word power(const Word& w, int n);
bool is_freely_reduced(const Word& w);
/// Sum of exponents of each generator.
std::vector<long> exponent_sums(const Word& w, std::size_t n_gens);

/// Single-character generator names. Lowercase is the generator, uppercase
/// its inverse.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> names);
    static Alphabet from_letters(std::string_view letters);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    /// Throws UnknownLetter.
    int index_of(char name) const;
    bool contains(char name) const;

    /// Compact ("tDaacBCT") and verbose ("t*d^-1*a^2*c") forms are both
    /// accepted, as is the brace form "d^{-1}"; whitespace is ignored and
    /// "1" denotes the empty word.
    Word parse(std::string_view text) const;
    std::string format(const Word& w) const;
    std::string format_verbose(const Word& w) const;

private:
    std::vector<std::string> names_;
};

}  // namespace hnnlab
