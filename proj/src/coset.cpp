#include "hnnlab/coset.hpp"

#include <cstdlib>
#include <deque>
#include <string>

namespace hnnlab {

std::size_t coset_cap_from_env() {
    const char* raw = std::getenv("HNN_LAB_COSET_CAP");
    if (raw == nullptr || *raw == '\0') return kDefaultCosetCap;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size() || v == 0) throw std::invalid_argument("cap");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, std::string("bad HNN_LAB_COSET_CAP '") + raw + "'");
    }
}

int CosetTable::trace(int coset, const Word& w) const {
    for (Letter x : w) {
        coset = act(coset, x);
        if (coset < 0) return -1;
    }
    return coset;
}

bool CosetTable::is_complete() const {
    for (std::size_t c = 0; c < table.size(); ++c) {
        if (table[c].size() != n_cols()) return false;
        for (std::size_t x = 0; x < n_cols(); ++x) {
            int e = table[c][x];
            if (e < 0 || static_cast<std::size_t>(e) >= table.size()) return false;
            if (table[static_cast<std::size_t>(e)][x ^ 1U] != static_cast<int>(c)) return false;
        }
    }
    return true;
}

bool CosetTable::scans_relators(const Presentation& p) const {
    for (std::size_t c = 0; c < table.size(); ++c)
        for (const auto& r : p.relators)
            if (trace(static_cast<int>(c), r) != static_cast<int>(c)) return false;
    return true;
}

bool CosetTable::fixes_base(const std::vector<Word>& words) const {
    for (const auto& w : words)
        if (trace(0, w) != 0) return false;
    return true;
}

std::vector<Word> coset_representatives(const CosetTable& t) {
    std::vector<std::optional<Word>> reps(t.table.size());
    if (reps.empty()) return {};
    reps[0] = Word{};
    std::vector<std::size_t> order{0};
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (std::size_t x = 0; x < t.n_cols(); ++x) {
            int e = t.table[order[k]][x];
            if (e < 0 || reps[static_cast<std::size_t>(e)]) continue;
            Word w = *reps[order[k]];
            w.push_back(Letter::from_col(static_cast<int>(x)));
            reps[static_cast<std::size_t>(e)] = std::move(w);
            order.push_back(static_cast<std::size_t>(e));
        }
    }
    std::vector<Word> out;
    out.reserve(reps.size());
    for (auto& r : reps) {
        if (!r) throw Error(ErrorKind::NotInSubgroup, "coset table is not connected");
        out.push_back(std::move(*r));
    }
    return out;
}

CosetTable standardize(const CosetTable& t) {
    const std::size_t n = t.table.size();
    std::vector<int> new_of(n, -1);
    std::vector<std::size_t> order;
    order.reserve(n);
    if (n > 0) {
        new_of[0] = 0;
        order.push_back(0);
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (std::size_t x = 0; x < t.n_cols(); ++x) {
            int e = t.table[order[k]][x];
            if (e >= 0 && new_of[static_cast<std::size_t>(e)] < 0) {
                new_of[static_cast<std::size_t>(e)] = static_cast<int>(order.size());
                order.push_back(static_cast<std::size_t>(e));
            }
        }
    }
    CosetTable out;
    out.n_gens = t.n_gens;
    out.n_subgens = t.n_subgens;
    out.table.assign(order.size(), std::vector<int>(t.n_cols(), -1));
    if (t.deco) out.deco.emplace(order.size(), std::vector<Word>(t.n_cols()));
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (std::size_t x = 0; x < t.n_cols(); ++x) {
            int e = t.table[order[k]][x];
            out.table[k][x] = e < 0 ? -1 : new_of[static_cast<std::size_t>(e)];
            if (t.deco) (*out.deco)[k][x] = (*t.deco)[order[k]][x];
        }
    }
    return out;
}

namespace {

// HLT enumeration with coincidence processing. Decorations follow the
// invariant documented on CosetTable; dead cosets keep a parent pointer and
// a word m with w_dead = m * w_parent.
class Enumerator {
public:
    Enumerator(std::size_t n_gens, std::size_t n_subgens, std::size_t cap, bool decorate)
        : n_cols_(2 * n_gens), n_gens_(n_gens), n_subgens_(n_subgens), cap_(cap), decorate_(decorate) {
        new_coset();
    }

    void scan_and_fill(int c, const Word& r, const Word& target) {
        int f = c;
        int b = c;
        std::size_t i = 0;
        std::size_t j = r.size();
        Word pf;
        Word pb;
        while (true) {
            while (i < j && at(f, r[i]) >= 0) {
                if (decorate_) pf = concat(pf, deco(f, r[i]));
                f = at(f, r[i]);
                ++i;
            }
            if (i == j) {
                if (f != b) merge(f, b, connecting(pf, target, pb));
                return;
            }
            while (j > i && at(b, r[j - 1].inverse()) >= 0) {
                Letter x = r[j - 1].inverse();
                if (decorate_) pb = concat(inverse(deco(b, x)), pb);
                b = at(b, x);
                --j;
            }
            if (j == i) {
                merge(f, b, connecting(pf, target, pb));
                return;
            }
            if (j == i + 1) {
                Word s = decorate_ ? connecting(pf, target, pb) : Word{};
                set(f, r[i], b, s);
                return;
            }
            define(f, r[i]);
        }
    }

    void run(const std::vector<Word>& relators, const std::vector<Word>& subgens) {
        for (std::size_t k = 0; k < subgens.size(); ++k) {
            Word target{Letter{static_cast<int>(k), false}};
            scan_and_fill(0, free_reduce(subgens[k]), target);
            process_queue();
        }
        for (std::size_t c = 0; c < table_.size(); ++c) {
            if (!live(static_cast<int>(c))) continue;
            for (const auto& r : relators) {
                scan_and_fill(static_cast<int>(c), r, Word{});
                process_queue();
                if (!live(static_cast<int>(c))) break;
            }
            for (std::size_t x = 0; x < n_cols_ && live(static_cast<int>(c)); ++x)
                if (table_[c][x] < 0) define(static_cast<int>(c), Letter::from_col(static_cast<int>(x)));
        }
    }

    CosetTable finish() const {
        std::vector<int> new_of(table_.size(), -1);
        std::size_t count = 0;
        for (std::size_t c = 0; c < table_.size(); ++c)
            if (live(static_cast<int>(c))) new_of[c] = static_cast<int>(count++);
        CosetTable out;
        out.n_gens = n_gens_;
        out.n_subgens = n_subgens_;
        out.table.reserve(count);
        if (decorate_) out.deco.emplace();
        for (std::size_t c = 0; c < table_.size(); ++c) {
            if (!live(static_cast<int>(c))) continue;
            std::vector<int> row(n_cols_);
            for (std::size_t x = 0; x < n_cols_; ++x) {
                int e = table_[c][x];
                row[x] = e < 0 ? -1 : new_of[static_cast<std::size_t>(e)];
            }
            out.table.push_back(std::move(row));
            if (decorate_) out.deco->push_back(deco_[c]);
        }
        return standardize(out);
    }

    EnumerationStats stats() const { return stats_; }

private:
    int at(int c, Letter x) const { return table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x.col())]; }
    const Word& deco(int c, Letter x) const {
        return deco_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x.col())];
    }
    bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

    // With pf = w_c u w_f^-1, target = w_c r w_c^-1 and pb = w_b v w_c^-1
    // for r = u.v, the element w_f w_b^-1 equals pf^-1 target pb^-1.
    Word connecting(const Word& pf, const Word& target, const Word& pb) const {
        if (!decorate_) return {};
        return concat(concat(inverse(pf), target), inverse(pb));
    }

    int new_coset() {
        int n = static_cast<int>(table_.size());
        table_.emplace_back(n_cols_, -1);
        if (decorate_) deco_.emplace_back(n_cols_);
        parent_.push_back(n);
        parent_word_.emplace_back();
        ++live_count_;
        ++stats_.total_defined;
        if (live_count_ > stats_.max_live) stats_.max_live = live_count_;
        if (live_count_ > cap_)
            throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap_) + " live cosets");
        return n;
    }

    void define(int c, Letter x) {
        int n = new_coset();
        set(c, x, n, Word{});
    }

    void set(int c, Letter x, int e, const Word& s) {
        table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x.col())] = e;
        table_[static_cast<std::size_t>(e)][static_cast<std::size_t>(x.inverse().col())] = c;
        if (decorate_) {
            deco_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x.col())] = s;
            deco_[static_cast<std::size_t>(e)][static_cast<std::size_t>(x.inverse().col())] = inverse(s);
        }
    }

    // Root of c and m with w_c = m * w_root.
    std::pair<int, Word> find(int c) {
        Word m;
        int cur = c;
        while (parent_[static_cast<std::size_t>(cur)] != cur) {
            if (decorate_) m = concat(m, parent_word_[static_cast<std::size_t>(cur)]);
            cur = parent_[static_cast<std::size_t>(cur)];
        }
        if (cur != c && parent_[static_cast<std::size_t>(c)] != cur) {
            parent_[static_cast<std::size_t>(c)] = cur;
            parent_word_[static_cast<std::size_t>(c)] = m;
        }
        return {cur, m};
    }

    // Record w_a = mu * w_b.
    void merge(int a, int b, const Word& mu) {
        auto [ra, ma] = find(a);
        auto [rb, mb] = find(b);
        if (ra == rb) return;
        Word g = decorate_ ? concat(concat(inverse(ma), mu), mb) : Word{};  // w_ra = g * w_rb
        if (ra < rb) {
            parent_[static_cast<std::size_t>(rb)] = ra;
            parent_word_[static_cast<std::size_t>(rb)] = inverse(g);
            queue_.push_back(rb);
        } else {
            parent_[static_cast<std::size_t>(ra)] = rb;
            parent_word_[static_cast<std::size_t>(ra)] = g;
            queue_.push_back(ra);
        }
        --live_count_;
    }

    void process_queue() {
        while (!queue_.empty()) {
            int s = queue_.front();
            queue_.pop_front();
            for (std::size_t col = 0; col < n_cols_; ++col) {
                Letter x = Letter::from_col(static_cast<int>(col));
                int e = at(s, x);
                if (e < 0) continue;
                Word sigma = decorate_ ? deco(s, x) : Word{};
                table_[static_cast<std::size_t>(s)][col] = -1;
                if (at(e, x.inverse()) == s)
                    table_[static_cast<std::size_t>(e)][static_cast<std::size_t>(x.inverse().col())] = -1;
                auto [r, m] = find(s);
                auto [e2, me] = find(e);
                // w_r x w_e2^-1 = m^-1 sigma me
                Word sigma2 = decorate_ ? concat(concat(inverse(m), sigma), me) : Word{};
                int f = at(r, x);
                if (f >= 0) {
                    Word tau = decorate_ ? deco(r, x) : Word{};
                    merge(e2, f, decorate_ ? concat(inverse(sigma2), tau) : Word{});
                    continue;
                }
                f = at(e2, x.inverse());
                if (f >= 0) {
                    Word rho = decorate_ ? deco(e2, x.inverse()) : Word{};
                    merge(r, f, decorate_ ? concat(sigma2, rho) : Word{});
                    continue;
                }
                set(r, x, e2, sigma2);
            }
        }
    }

    std::size_t n_cols_;
    std::size_t n_gens_;
    std::size_t n_subgens_;
    std::size_t cap_;
    bool decorate_;
    std::vector<std::vector<int>> table_;
    std::vector<std::vector<Word>> deco_;
    std::vector<int> parent_;
    std::vector<Word> parent_word_;
    std::deque<int> queue_;
    std::size_t live_count_ = 0;
    EnumerationStats stats_;
};

}  // namespace

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgens, std::size_t cap, bool decorate,
                        EnumerationStats* stats) {
    Enumerator e(p.n_gens(), subgens.size(), cap, decorate);
    e.run(p.relators, subgens);
    if (stats != nullptr) *stats = e.stats();
    return e.finish();
}

CosetTable schreier_graph_arith(const MembershipOracle& membership, const Assignment& assignment, std::size_t cap) {
    const std::size_t n_cols = 2 * assignment.size();
    std::vector<ProjMat> reps{ProjMat::identity(assignment.d())};
    std::vector<ProjMat> rep_inverses{reps.front()};
    CosetTable out;
    out.n_gens = assignment.size();
    out.table.emplace_back(n_cols, -1);
    for (std::size_t c = 0; c < reps.size(); ++c) {
        for (std::size_t col = 0; col < n_cols; ++col) {
            ProjMat next = reps[c] * assignment.image(Letter::from_col(static_cast<int>(col)));
            int found = -1;
            for (std::size_t j = 0; j < reps.size(); ++j) {
                if (membership(next * rep_inverses[j])) {
                    found = static_cast<int>(j);
                    break;
                }
            }
            if (found < 0) {
                if (reps.size() >= cap) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " cosets");
                found = static_cast<int>(reps.size());
                rep_inverses.push_back(next.inverse());
                reps.push_back(std::move(next));
                out.table.emplace_back(n_cols, -1);
            }
            out.table[c][col] = found;
        }
    }
    return standardize(out);
}

Word rewrite_in_subgroup(const Word& w, const CosetTable& table) {
    if (!table.deco) throw Error(ErrorKind::NotInSubgroup, "coset table carries no decorations");
    Word acc;
    int c = 0;
    for (Letter x : w) {
        acc = concat(acc, (*table.deco)[static_cast<std::size_t>(c)][static_cast<std::size_t>(x.col())]);
        c = table.act(c, x);
        if (c < 0) throw Error(ErrorKind::NotInSubgroup, "incomplete coset table");
    }
    if (c != 0) throw Error(ErrorKind::NotInSubgroup, "word ends in coset " + std::to_string(c));
    return acc;
}

}  // namespace hnnlab
