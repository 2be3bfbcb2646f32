#include "hnnlab/abelian.hpp"

#include <algorithm>

namespace hnnlab {

std::vector<Integer> smith_invariants(IntMatrix m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m.front().size();
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing block
        std::size_t pr = rows, pc = cols;
        for (std::size_t r = t; r < rows; ++r)
            for (std::size_t c = t; c < cols; ++c)
                if (sgn(m[r][c]) != 0 && (pr == rows || abs(m[r][c]) < abs(m[pr][pc]))) {
                    pr = r;
                    pc = c;
                }
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);

        bool done = false;
        while (!done) {
            done = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (sgn(m[r][t]) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[r][t].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
                if (sgn(m[r][t]) != 0) {
                    std::swap(m[t], m[r]);
                    done = false;
                }
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (sgn(m[t][c]) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][c].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
                if (sgn(m[t][c]) != 0) {
                    for (auto& row : m) std::swap(row[t], row[c]);
                    done = false;
                }
            }
            if (!done) continue;
            // divisibility: fold a non-multiple into row t and go again
            for (std::size_t r = t + 1; r < rows && done; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (m[r][c] % m[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) m[t][k] += m[r][k];
                        done = false;
                        break;
                    }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    return diag;
}

IntMatrix relation_matrix(const Presentation& p) {
    IntMatrix m;
    for (const auto& r : p.relators) {
        auto sums = exponent_sums(r, p.n_gens());
        std::vector<Integer> row;
        for (long s : sums) row.emplace_back(s);
        m.push_back(std::move(row));
    }
    return m;
}

Abelianization abelianization(const Presentation& p) {
    auto inv = smith_invariants(relation_matrix(p));
    Abelianization out;
    out.betti = p.n_gens() - inv.size();
    for (const auto& d : inv)
        if (d > 1) out.torsion.push_back(d);
    return out;
}

long genus_from_index(long g, long n) { return n * (g - 1) + 1; }

}  // namespace hnnlab
