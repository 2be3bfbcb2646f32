#include "hnnlab/presentation.hpp"

#include <algorithm>

namespace hnnlab {

Presentation::Presentation(Alphabet alph, std::vector<Word> rels) : alphabet(std::move(alph)) {
    for (auto& r : rels) {
        Word c = cyclic_reduce(r);
        if (c.empty()) throw Error(ErrorKind::Parse, "relator reduces to the empty word");
        for (Letter x : c)
            if (static_cast<std::size_t>(x.gen) >= alphabet.size())
                throw Error(ErrorKind::UnknownLetter, "relator letter outside the alphabet");
        relators.push_back(std::move(c));
    }
}

Assignment::Assignment(std::vector<ProjMat> images) : images_(std::move(images)) {
    if (images_.empty()) throw Error(ErrorKind::Parse, "empty assignment");
    inverses_.reserve(images_.size());
    for (const auto& m : images_) {
        if (m.d() != images_.front().d()) throw Error(ErrorKind::MismatchedField, "assignment over mixed fields");
        inverses_.push_back(m.inverse());
    }
}

const ProjMat& Assignment::image(Letter x) const {
    auto g = static_cast<std::size_t>(x.gen);
    if (g >= images_.size()) throw Error(ErrorKind::UnknownLetter, "generator " + std::to_string(x.gen) + " unassigned");
    return x.inv ? inverses_[g] : images_[g];
}

ProjMat Assignment::evaluate(const Word& w) const {
    Mat2 acc = Mat2::identity(d());
    for (Letter x : w) acc = acc * image(x).rep();
    return ProjMat(acc);
}

SymmetrizedRelators::SymmetrizedRelators(const Presentation& p) {
    for (const auto& r : p.relators) {
        for (const Word& base : {r, inverse(r)}) {
            for (std::size_t s = 0; s < base.size(); ++s) {
                Word rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
                rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
                words_.push_back(std::move(rot));
            }
        }
    }
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

std::size_t SymmetrizedRelators::max_piece_length() const {
    std::size_t best = 0;
    for (std::size_t x = 0; x < words_.size(); ++x)
        for (std::size_t y = x + 1; y < words_.size(); ++y) {
            const Word& u = words_[x];
            const Word& v = words_[y];
            std::size_t n = 0;
            while (n < u.size() && n < v.size() && u[n] == v[n]) ++n;
            best = std::max(best, n);
        }
    return best;
}

std::size_t SymmetrizedRelators::min_relator_length() const {
    std::size_t m = words_.empty() ? 0 : words_.front().size();
    for (const auto& w : words_) m = std::min(m, w.size());
    return m;
}

bool SymmetrizedRelators::satisfies_c_prime_sixth() const {
    return !words_.empty() && 6 * max_piece_length() < min_relator_length();
}

Word dehn_reduce(const Word& w, const SymmetrizedRelators& rel) {
    if (!rel.satisfies_c_prime_sixth())
        throw Error(ErrorKind::NotDehnPresentation,
                    "max piece " + std::to_string(rel.max_piece_length()) + " vs relator length " +
                        std::to_string(rel.min_relator_length()));
    Word cur = free_reduce(w);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t start = 0; start < cur.size() && !changed; ++start) {
            std::size_t best_len = 0;
            const Word* best = nullptr;
            for (const auto& r : rel.words()) {
                std::size_t n = 0;
                while (n < r.size() && start + n < cur.size() && cur[start + n] == r[n]) ++n;
                if (2 * n > r.size() && n > best_len) {
                    best_len = n;
                    best = &r;
                }
            }
            if (best == nullptr) continue;
            Word rest(best->begin() + static_cast<std::ptrdiff_t>(best_len), best->end());
            Word replacement = inverse(rest);
            Word next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(start));
            next.insert(next.end(), replacement.begin(), replacement.end());
            next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(start + best_len), cur.end());
            cur = free_reduce(next);
            changed = true;
        }
    }
    return cur;
}

}  // namespace hnnlab
