#pragma once

// Seeded generators and independent oracles shared by the test suites.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "hnnlab/exact.hpp"
#include "hnnlab/quat.hpp"
#include "hnnlab/word.hpp"

namespace testsupport {

using hnnlab::Integer;
using hnnlab::Rational;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline long uniform(long lo, long hi) {
    return lo + static_cast<long>(rng()() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational small_rational() {
    long den = uniform(1, 9);
    return Rational(uniform(-20, 20), den);
}

inline hnnlab::QuadExt random_quad(std::int64_t d) { return hnnlab::QuadExt(small_rational(), small_rational(), d); }

inline hnnlab::Quaternion random_quaternion() {
    return hnnlab::Quaternion(small_rational(), small_rational(), small_rational(), small_rational());
}

inline hnnlab::Word random_word(int n_gens, std::size_t max_len, bool reduced = true) {
    std::size_t len = static_cast<std::size_t>(uniform(0, static_cast<long>(max_len)));
    hnnlab::Word w;
    while (w.size() < len) {
        hnnlab::Letter x{static_cast<int>(uniform(0, n_gens - 1)), uniform(0, 1) == 1};
        if (reduced && !w.empty() && w.back() == x.inverse()) continue;
        w.push_back(x);
    }
    return w;
}

// Quaternion product from the multiplication table of 1, i, j, k with
// i^2 = a, j^2 = b, ij = -ji = k.
inline hnnlab::Quaternion table_mul(const Rational& a, const Rational& b, const hnnlab::Quaternion& p,
                                    const hnnlab::Quaternion& q) {
    // e_r * e_s = coef * e_idx
    struct Entry {
        int idx;
        Rational coef;
    };
    const Rational one(1);
    std::array<std::array<Entry, 4>, 4> t{{
        {{{0, one}, {1, one}, {2, one}, {3, one}}},
        {{{1, one}, {0, a}, {3, one}, {2, a}}},
        {{{2, one}, {3, -one}, {0, b}, {1, -b}}},
        {{{3, one}, {2, -a}, {1, b}, {0, -a * b}}},
    }};
    hnnlab::Quaternion out;
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            const Entry& e = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
            out.x[static_cast<std::size_t>(e.idx)] += e.coef * p.x[static_cast<std::size_t>(r)] * q.x[static_cast<std::size_t>(s)];
        }
    return out;
}

using RatMatrix = std::vector<std::vector<Rational>>;

inline Rational det(RatMatrix m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// Solve sum_k x_k v_k = target by Cramer's rule.
inline std::array<Rational, 4> cramer(const std::array<hnnlab::Quaternion, 4>& v, const hnnlab::Quaternion& target) {
    RatMatrix m(4, std::vector<Rational>(4));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m[r][c] = v[c].x[r];
    Rational d = det(m);
    std::array<Rational, 4> out;
    for (std::size_t c = 0; c < 4; ++c) {
        RatMatrix mc = m;
        for (std::size_t r = 0; r < 4; ++r) mc[r][c] = target.x[r];
        out[c] = det(mc) / d;
    }
    return out;
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
inline std::vector<Integer> invariant_factors_by_minors(const std::vector<std::vector<Integer>>& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<Integer> dk{Integer(1)};
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        Integer g = 0;
        std::vector<std::vector<std::size_t>> row_sets, col_sets;
        std::function<void(std::size_t, std::size_t, std::size_t, std::vector<std::size_t>&,
                           std::vector<std::vector<std::size_t>>&)>
            choose = [&](std::size_t start, std::size_t n, std::size_t left, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
                if (left == 0) {
                    out.push_back(cur);
                    return;
                }
                for (std::size_t i = start; i + left <= n; ++i) {
                    cur.push_back(i);
                    choose(i + 1, n, left - 1, cur, out);
                    cur.pop_back();
                }
            };
        std::vector<std::size_t> cur;
        choose(0, rows, k, cur, row_sets);
        choose(0, cols, k, cur, col_sets);
        for (const auto& rsel : row_sets) {
            bool zero_row = false;
            for (std::size_t r : rsel) {
                bool all0 = std::all_of(a[r].begin(), a[r].end(), [](const Integer& x) { return x == 0; });
                if (all0) zero_row = true;
            }
            if (zero_row) continue;
            for (const auto& csel : col_sets) {
                RatMatrix m(k, std::vector<Rational>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = Rational(a[rsel[i]][csel[j]]);
                Rational d = det(m);
                Integer v = abs(d.get_num());
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            }
        }
        if (g == 0) break;
        dk.push_back(g);
    }
    std::vector<Integer> out;
    for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
    return out;
}

// Z^2 words over x X y Y.
inline std::array<long, 2> z2_point(const std::string& w) {
    std::array<long, 2> p{0, 0};
    for (char c : w) {
        if (c == 'x') ++p[0];
        if (c == 'X') --p[0];
        if (c == 'y') ++p[1];
        if (c == 'Y') --p[1];
    }
    return p;
}

inline long l1(std::array<long, 2> p, std::array<long, 2> q) { return std::labs(p[0] - q[0]) + std::labs(p[1] - q[1]); }

// Two-sided fellow-traveller constant over words, by direct L1 geometry.
inline long brute_fellow_constant(const std::vector<std::string>& words, bool shared_endpoint_only) {
    const std::array<std::array<long, 2>, 5> steps{{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    long best = 0;
    for (const auto& u : words)
        for (const auto& v : words)
            for (auto a : steps) {
                auto eu = z2_point(u);
                auto ev = z2_point(v);
                std::array<long, 2> end_v{ev[0] + a[0], ev[1] + a[1]};
                long end_gap = l1(eu, end_v);
                if (end_gap > 1) continue;
                bool a_trivial = a[0] == 0 && a[1] == 0;
                if (shared_endpoint_only && !a_trivial && end_gap != 0) continue;
                std::size_t len = std::max(u.size(), v.size());
                for (std::size_t t = 0; t <= len; ++t) {
                    auto pu = z2_point(u.substr(0, std::min(t, u.size())));
                    auto pv = z2_point(v.substr(0, std::min(t, v.size())));
                    pv[0] += a[0];
                    pv[1] += a[1];
                    best = std::max(best, l1(pu, pv));
                }
            }
    return best;
}

}  // namespace testsupport
