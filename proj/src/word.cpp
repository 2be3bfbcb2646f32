#include "hnnlab/word.hpp"

#include <cctype>

namespace hnnlab {

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
        if (!out.empty() && out.back() == x.inverse())
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0;
    std::size_t hi = r.size();
    while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

Word concat(const Word& x, const Word& y) {
    Word out;
    out.reserve(x.size() + y.size());
    for (Letter l : x) out.push_back(l);
    for (Letter l : y) {
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word power(const Word& w, int n) {
    Word base = n < 0 ? inverse(w) : w;
    Word out;
    for (int k = 0; k < (n < 0 ? -n : n); ++k) out = concat(out, base);
    return out;
}

bool is_freely_reduced(const Word& w) {
    for (std::size_t n = 1; n < w.size(); ++n)
        if (w[n] == w[n - 1].inverse()) return false;
    return true;
}

std::vector<long> exponent_sums(const Word& w, std::size_t n_gens) {
    std::vector<long> sums(n_gens, 0);
    for (Letter x : w) sums.at(static_cast<std::size_t>(x.gen)) += x.inv ? -1 : 1;
    return sums;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (const auto& n : names_)
        if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0])))
            throw Error(ErrorKind::Parse, "generator names must be single lowercase letters, got '" + n + "'");
}

Alphabet Alphabet::from_letters(std::string_view letters) {
    std::vector<std::string> names;
    for (char c : letters) names.emplace_back(1, c);
    return Alphabet(std::move(names));
}

bool Alphabet::contains(char name) const {
    for (const auto& n : names_)
        if (n[0] == name) return true;
    return false;
}

int Alphabet::index_of(char name) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
        if (names_[k][0] == name) return static_cast<int>(k);
    throw Error(ErrorKind::UnknownLetter, std::string("letter '") + name + "' not in alphabet");
}

Word Alphabet::parse(std::string_view text) const {
    Word out;
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
    };
    skip_space();
    if (text.substr(pos) == "1") return out;
    while (pos < text.size()) {
        char c = text[pos];
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw Error(ErrorKind::Parse, "unexpected '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
        bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
        Letter letter{index_of(static_cast<char>(std::tolower(static_cast<unsigned char>(c)))), inv};
        ++pos;
        int exponent = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            bool brace = pos < text.size() && text[pos] == '{';
            if (brace) ++pos;
            std::size_t start = pos;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string digits(text.substr(start, pos - start));
            if (digits.empty() || digits == "-" || digits == "+")
                throw Error(ErrorKind::Parse, "bad exponent in word '" + std::string(text) + "'");
            exponent = std::stoi(digits);
            if (brace) {
                if (pos >= text.size() || text[pos] != '}')
                    throw Error(ErrorKind::Parse, "unterminated exponent in '" + std::string(text) + "'");
                ++pos;
            }
        }
        Letter unit = exponent < 0 ? letter.inverse() : letter;
        for (int k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) out.push_back(unit);
        skip_space();
    }
    return out;
}

std::string Alphabet::format(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (Letter x : w) {
        char c = names_.at(static_cast<std::size_t>(x.gen))[0];
        out.push_back(x.inv ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    }
    return out;
}

std::string Alphabet::format_verbose(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    std::size_t n = 0;
    while (n < w.size()) {
        std::size_t run = 1;
        while (n + run < w.size() && w[n + run] == w[n]) ++run;
        if (!out.empty()) out += "*";
        out += names_.at(static_cast<std::size_t>(w[n].gen));
        long e = w[n].inv ? -static_cast<long>(run) : static_cast<long>(run);
        if (e != 1) out += "^" + std::to_string(e);
        n += run;
    }
    return out;
}

}  // namespace hnnlab
