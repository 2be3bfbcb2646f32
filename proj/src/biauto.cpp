#include "hnnlab/biauto.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace hnnlab {

using nlohmann::json;

Fsa Fsa::determinize(const Nfa& nfa) {
    const std::size_t k = nfa.alphabet.size();
    auto col = [&](char c) {
        auto pos = nfa.alphabet.find(c);
        if (pos == std::string::npos) throw Error(ErrorKind::UnknownLetter, std::string("letter '") + c + "'");
        return pos;
    };
    std::vector<std::vector<std::vector<std::size_t>>> out(nfa.n_states, std::vector<std::vector<std::size_t>>(k));
    for (const auto& e : nfa.edges) {
        if (e.from >= nfa.n_states || e.to >= nfa.n_states) throw Error(ErrorKind::Parse, "transition state out of range");
        out[e.from][col(e.letter)].push_back(e.to);
    }

    using Subset = std::vector<std::size_t>;
    auto canon = [](Subset s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    };
    std::map<Subset, int> id;
    std::vector<Subset> subsets;
    std::vector<std::vector<int>> delta;
    Subset start = canon(nfa.initial);
    id[start] = 0;
    subsets.push_back(start);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        delta.emplace_back(k, -1);
        for (std::size_t x = 0; x < k; ++x) {
            Subset next;
            for (std::size_t q : subsets[s])
                next.insert(next.end(), out[q][x].begin(), out[q][x].end());
            next = canon(next);
            if (next.empty()) continue;
            auto [it, fresh] = id.emplace(next, static_cast<int>(subsets.size()));
            if (fresh) subsets.push_back(next);
            delta[s][x] = it->second;
        }
    }
    std::vector<bool> acc(subsets.size(), false);
    for (std::size_t s = 0; s < subsets.size(); ++s)
        for (std::size_t q : subsets[s])
            if (q < nfa.accepting.size() && nfa.accepting[q]) acc[s] = true;

    // co-reachability
    std::vector<bool> live = acc;
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t s = 0; s < delta.size(); ++s) {
            if (live[s]) continue;
            for (int t : delta[s])
                if (t >= 0 && live[static_cast<std::size_t>(t)]) {
                    live[s] = true;
                    grew = true;
                    break;
                }
        }
    }

    Fsa f;
    f.alphabet_ = nfa.alphabet;
    if (!live[0]) {
        f.delta_.assign(1, std::vector<int>(k, -1));
        f.accepting_.assign(1, false);
        f.empty_ = true;
        return f;
    }
    std::vector<int> renum(delta.size(), -1);
    std::vector<std::size_t> order{0};
    renum[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int t : delta[order[i]])
            if (t >= 0 && live[static_cast<std::size_t>(t)] && renum[static_cast<std::size_t>(t)] < 0) {
                renum[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                order.push_back(static_cast<std::size_t>(t));
            }
    for (std::size_t s : order) {
        std::vector<int> row(k, -1);
        for (std::size_t x = 0; x < k; ++x) {
            int t = delta[s][x];
            if (t >= 0 && live[static_cast<std::size_t>(t)]) row[x] = renum[static_cast<std::size_t>(t)];
        }
        f.delta_.push_back(std::move(row));
        f.accepting_.push_back(acc[s]);
    }
    return f;
}

namespace {

std::string read_alphabet(const json& j) {
    std::string out;
    if (j.is_string()) {
        out = j.get<std::string>();
    } else if (j.is_array()) {
        for (const auto& x : j) {
            if (!x.is_string() || x.get<std::string>().size() != 1)
                throw Error(ErrorKind::Parse, "alphabet entries must be single letters");
            out += x.get<std::string>();
        }
    } else {
        throw Error(ErrorKind::Parse, "alphabet must be a string or an array");
    }
    std::set<char> seen(out.begin(), out.end());
    if (seen.size() != out.size()) throw Error(ErrorKind::Parse, "repeated alphabet letter");
    return out;
}

}  // namespace

Fsa Fsa::from_json(const json& j) {
    try {
        Nfa nfa;
        nfa.alphabet = read_alphabet(j.at("alphabet"));
        const json& states = j.at("states");
        std::vector<json> names;
        if (states.is_number_integer() && states.get<long long>() >= 0) {
            nfa.n_states = states.get<std::size_t>();
        } else if (states.is_array()) {
            names.assign(states.begin(), states.end());
            nfa.n_states = names.size();
        } else {
            throw Error(ErrorKind::Parse, "states must be a count or an array of names");
        }
        auto ref = [&](const json& s) -> std::size_t {
            if (!names.empty()) {
                auto it = std::find(names.begin(), names.end(), s);
                if (it == names.end()) throw Error(ErrorKind::Parse, "unknown state " + s.dump());
                return static_cast<std::size_t>(it - names.begin());
            }
            if (!s.is_number_integer() || s.get<long long>() < 0 || s.get<std::size_t>() >= nfa.n_states)
                throw Error(ErrorKind::Parse, "bad state " + s.dump());
            return s.get<std::size_t>();
        };
        const json& init = j.at("initial");
        if (init.is_array()) {
            for (const auto& s : init) nfa.initial.push_back(ref(s));
        } else {
            nfa.initial.push_back(ref(init));
        }
        nfa.accepting.assign(nfa.n_states, false);
        for (const auto& s : j.at("accepting")) nfa.accepting[ref(s)] = true;
        for (const auto& t : j.at("transitions")) {
            if (!t.is_array() || t.size() != 3 || !t[1].is_string() || t[1].get<std::string>().size() != 1)
                throw Error(ErrorKind::Parse, "transition must be [state, letter, state]");
            nfa.edges.push_back({ref(t[0]), t[1].get<std::string>()[0], ref(t[2])});
        }
        return determinize(nfa);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("automaton: ") + e.what());
    }
}

json Fsa::to_json() const {
    json trans = json::array();
    json acc = json::array();
    for (std::size_t s = 0; s < delta_.size(); ++s) {
        if (accepting_[s]) acc.push_back(s);
        for (std::size_t x = 0; x < alphabet_.size(); ++x)
            if (delta_[s][x] >= 0) trans.push_back(json::array({s, std::string(1, alphabet_[x]), delta_[s][x]}));
    }
    return json{{"alphabet", alphabet_}, {"states", delta_.size()}, {"initial", 0}, {"accepting", acc},
                {"transitions", trans}};
}

int Fsa::letter_index(char c) const {
    auto pos = alphabet_.find(c);
    if (pos == std::string::npos) throw Error(ErrorKind::UnknownLetter, std::string("letter '") + c + "'");
    return static_cast<int>(pos);
}

int Fsa::next(std::size_t s, char letter) const { return delta_.at(s)[static_cast<std::size_t>(letter_index(letter))]; }

bool Fsa::accepts(const std::string& word) const {
    int s = 0;
    for (char c : word) {
        int x = letter_index(c);
        if (s >= 0) s = delta_[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)];
    }
    return s >= 0 && accepting_[static_cast<std::size_t>(s)];
}

std::vector<std::string> Fsa::accepted_up_to(std::size_t max_len) const {
    std::vector<std::string> out;
    if (empty_) return out;
    std::vector<std::pair<std::string, std::size_t>> level{{"", 0}};
    for (std::size_t len = 0;; ++len) {
        for (const auto& [w, s] : level)
            if (accepting_[s]) out.push_back(w);
        if (len == max_len) break;
        std::vector<std::pair<std::string, std::size_t>> next;
        for (const auto& [w, s] : level)
            for (std::size_t x = 0; x < alphabet_.size(); ++x)
                if (delta_[s][x] >= 0) next.emplace_back(w + alphabet_[x], static_cast<std::size_t>(delta_[s][x]));
        level = std::move(next);
    }
    return out;
}

namespace {

// states: 0 start, then one state per (letter run)
Nfa first_then_second(char p, char pi, char q, char qi, std::size_t offset, Nfa nfa) {
    std::size_t s0 = offset, sp = offset + 1, spi = offset + 2, sq = offset + 3, sqi = offset + 4;
    nfa.n_states = offset + 5;
    nfa.accepting.resize(nfa.n_states, true);
    nfa.initial.push_back(s0);
    auto add = [&](std::size_t a, char c, std::size_t b) { nfa.edges.push_back({a, c, b}); };
    add(s0, p, sp);
    add(s0, pi, spi);
    add(sp, p, sp);
    add(spi, pi, spi);
    for (std::size_t s : {s0, sp, spi}) {
        add(s, q, sq);
        add(s, qi, sqi);
    }
    add(sq, q, sq);
    add(sqi, qi, sqi);
    return nfa;
}

Nfa with_parity(const Nfa& base, bool odd) {
    Nfa out;
    out.alphabet = base.alphabet;
    out.n_states = 2 * base.n_states;
    out.accepting.assign(out.n_states, false);
    for (std::size_t s : base.initial) out.initial.push_back(2 * s);
    for (std::size_t s = 0; s < base.n_states; ++s)
        if (base.accepting[s]) out.accepting[2 * s + (odd ? 1 : 0)] = true;
    for (const auto& e : base.edges) {
        out.edges.push_back({2 * e.from, e.letter, 2 * e.to + 1});
        out.edges.push_back({2 * e.from + 1, e.letter, 2 * e.to});
    }
    return out;
}

Nfa disjoint_union(Nfa x, const Nfa& y) {
    std::size_t off = x.n_states;
    x.n_states += y.n_states;
    x.accepting.insert(x.accepting.end(), y.accepting.begin(), y.accepting.end());
    for (std::size_t s : y.initial) x.initial.push_back(s + off);
    for (const auto& e : y.edges) x.edges.push_back({e.from + off, e.letter, e.to + off});
    return x;
}

Nfa empty_nfa() {
    Nfa n;
    n.alphabet = "xXyY";
    return n;
}

}  // namespace

Fsa zsquared_normal_form() { return Fsa::determinize(first_then_second('x', 'X', 'y', 'Y', 0, empty_nfa())); }

Fsa zsquared_normal_form_y_first() {
    return Fsa::determinize(first_then_second('y', 'Y', 'x', 'X', 0, empty_nfa()));
}

Fsa zsquared_adversarial() {
    Nfa even = with_parity(first_then_second('x', 'X', 'y', 'Y', 0, empty_nfa()), false);
    Nfa odd = with_parity(first_then_second('y', 'Y', 'x', 'X', 0, empty_nfa()), true);
    return Fsa::determinize(disjoint_union(even, odd));
}

int GroupModel::letter(char c) const {
    auto pos = letters_.find(c);
    if (pos == std::string::npos) throw Error(ErrorKind::UnknownLetter, std::string("letter '") + c + "'");
    return letter_ids_[pos];
}

char GroupModel::letter_inverse(char c) const {
    auto pos = letters_.find(c);
    if (pos == std::string::npos) throw Error(ErrorKind::UnknownLetter, std::string("letter '") + c + "'");
    return inverse_of_[pos];
}

void GroupModel::set_letters(std::string letters, std::vector<int> ids, std::string inverse_pairs) {
    letters_ = std::move(letters);
    letter_ids_ = std::move(ids);
    inverse_of_ = std::move(inverse_pairs);
}

int GroupModel::evaluate(const std::string& word) {
    int x = identity();
    for (char c : word) x = mul(x, letter(c));
    return x;
}

int GroupModel::power(int x, long n) {
    if (n < 0) return power(inverse(x), -n);
    int out = identity();
    for (long i = 0; i < n; ++i) out = mul(out, x);
    return out;
}

ZnModel::ZnModel(std::size_t n) : n_(n) {
    if (n > 3) throw Error(ErrorKind::Parse, "ZnModel supports n <= 3");
    intern(std::vector<long>(n, 0));
    std::string letters, inv;
    std::vector<int> ids;
    const char names[] = {'x', 'y', 'z'};
    for (std::size_t i = 0; i < n; ++i) {
        char lo = names[i];
        char up = static_cast<char>(std::toupper(lo));
        std::vector<long> e(n, 0);
        e[i] = 1;
        letters += lo;
        inv += up;
        ids.push_back(intern(e));
        e[i] = -1;
        letters += up;
        inv += lo;
        ids.push_back(intern(e));
    }
    set_letters(letters, ids, inv);
}

int ZnModel::intern(const std::vector<long>& v) {
    auto [it, fresh] = ids_.emplace(v, static_cast<int>(elems_.size()));
    if (fresh) elems_.push_back(v);
    return it->second;
}

int ZnModel::mul(int x, int y) {
    std::vector<long> v = coords(x);
    const auto& w = coords(y);
    for (std::size_t i = 0; i < n_; ++i) v[i] += w[i];
    return intern(v);
}

int ZnModel::inverse(int x) {
    std::vector<long> v = coords(x);
    for (auto& c : v) c = -c;
    return intern(v);
}

std::string ZnModel::describe(int x) const {
    std::string out = "(";
    const auto& v = coords(x);
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

MatrixModel::MatrixModel(const Alphabet& alphabet, const Assignment& assignment) {
    intern(ProjMat::identity(assignment.d()));
    std::string letters, inv;
    std::vector<int> ids;
    for (std::size_t g = 0; g < alphabet.size(); ++g) {
        char lo = alphabet.names()[g].at(0);
        char up = static_cast<char>(std::toupper(static_cast<unsigned char>(lo)));
        letters += lo;
        inv += up;
        ids.push_back(intern(assignment.image(Letter{static_cast<int>(g), false})));
        letters += up;
        inv += lo;
        ids.push_back(intern(assignment.image(Letter{static_cast<int>(g), true})));
    }
    set_letters(letters, ids, inv);
}

int MatrixModel::intern(const ProjMat& m) {
    auto [it, fresh] = ids_.emplace(m, static_cast<int>(elems_.size()));
    if (fresh) elems_.push_back(m);
    return it->second;
}

int MatrixModel::mul(int x, int y) {
    return intern(elems_.at(static_cast<std::size_t>(x)) * elems_.at(static_cast<std::size_t>(y)));
}

int MatrixModel::inverse(int x) { return intern(elems_.at(static_cast<std::size_t>(x)).inverse()); }

std::string MatrixModel::describe(int x) const { return elems_.at(static_cast<std::size_t>(x)).key(); }

BallOracle::BallOracle(GroupModel& model, std::size_t radius, std::optional<std::size_t> metric_radius)
    : model_(&model), radius_(radius), metric_radius_(metric_radius.value_or(2 * radius + 2)) {
    norm_[GroupModel::identity()] = 0;
    order_.push_back(GroupModel::identity());
    for (std::size_t i = 0; i < order_.size(); ++i) {
        int x = order_[i];
        std::size_t n = norm_[x];
        if (n == metric_radius_) continue;
        for (char c : model.letters()) {
            int y = model.mul(x, model.letter(c));
            if (norm_.emplace(y, n + 1).second) order_.push_back(y);
        }
    }
}

std::optional<std::size_t> BallOracle::norm(int x) const {
    auto it = norm_.find(x);
    if (it == norm_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> BallOracle::distance(int x, int y) const {
    return norm(model_->mul(model_->inverse(x), y));
}

std::vector<int> BallOracle::elements_within(std::size_t r) const {
    std::vector<int> out;
    for (int x : order_)
        if (norm_.at(x) <= r) out.push_back(x);
    return out;
}

namespace {

struct Traced {
    std::string word;
    std::vector<int> path;  // path[t] = prefix of length t
};

std::vector<Traced> trace_window(const Fsa& m, const BallOracle& o) {
    GroupModel& g = o.model();
    std::vector<Traced> out;
    for (auto& w : m.accepted_up_to(o.radius())) {
        Traced t{w, {GroupModel::identity()}};
        for (char c : w) t.path.push_back(g.mul(t.path.back(), g.letter(c)));
        out.push_back(std::move(t));
    }
    return out;
}

std::size_t require(std::optional<std::size_t> d) {
    if (!d) throw Error(ErrorKind::OutOfWindow, "distance beyond the metric radius");
    return *d;
}

}  // namespace

FiniteToOneReport check_uniformly_finite_to_one(const Fsa& m, const BallOracle& o) {
    FiniteToOneReport r;
    std::vector<int> first_seen;
    std::unordered_map<int, std::vector<std::string>> buckets;
    for (auto& t : trace_window(m, o)) {
        auto& b = buckets[t.path.back()];
        if (b.empty()) first_seen.push_back(t.path.back());
        b.push_back(t.word);
    }
    for (int e : first_seen) {
        const auto& b = buckets[e];
        if (b.size() > r.bound) {
            r.bound = b.size();
            r.bucket = b;
        }
    }
    for (int e : o.elements_within(o.radius() / 2)) {
        if (!buckets.count(e)) {
            r.unrepresented = o.model().describe(e);
            break;
        }
    }
    return r;
}

FellowTravellerReport check_fellow_traveller(const Fsa& m, const BallOracle& o, std::size_t cap) {
    GroupModel& g = o.model();
    auto words = trace_window(m, o);
    std::unordered_map<int, std::vector<std::size_t>> by_end;
    for (std::size_t i = 0; i < words.size(); ++i) by_end[words[i].path.back()].push_back(i);

    std::vector<std::string> steps{""};
    for (char c : g.letters()) steps.emplace_back(1, c);

    FellowTravellerReport r;
    for (const auto& u : words) {
        for (const auto& a : steps) {
            int ea = g.evaluate(a);
            int ea_inv = g.inverse(ea);
            for (const auto& b : steps) {
                int target = g.mul(g.mul(ea_inv, u.path.back()), g.evaluate(b));
                auto hit = by_end.find(target);
                if (hit == by_end.end()) continue;
                for (std::size_t vi : hit->second) {
                    const auto& v = words[vi];
                    std::size_t len = std::max(u.path.size(), v.path.size());
                    for (std::size_t t = 0; t < len; ++t) {
                        int pu = u.path[std::min(t, u.path.size() - 1)];
                        int pv = g.mul(ea, v.path[std::min(t, v.path.size() - 1)]);
                        std::size_t d = require(o.distance(pu, pv));
                        if (!r.extreme || d > r.zeta) {
                            r.zeta = d;
                            r.extreme = FellowWitness{u.word, v.word, a, b, t, d};
                        }
                        if (a.empty() || b.empty()) r.zeta_shared_endpoint = std::max(r.zeta_shared_endpoint, d);
                        if (d > cap && !r.violation) r.violation = FellowWitness{u.word, v.word, a, b, t, d};
                    }
                }
            }
        }
    }
    return r;
}

std::size_t observed_quasigeodesic_constant(const Fsa& m, const BallOracle& o) {
    std::size_t nu = 1;
    for (const auto& w : trace_window(m, o)) {
        for (std::size_t i = 0; i < w.path.size(); ++i)
            for (std::size_t j = i + 1; j < w.path.size(); ++j) {
                std::size_t d = require(o.distance(w.path[i], w.path[j]));
                std::size_t need = (j - i + d) / (d + 1);  // ceil((j-i)/(d+1))
                nu = std::max(nu, need);
            }
    }
    return nu;
}

StructureReport check_structure(const Fsa& m, const BallOracle& o, std::size_t cap) {
    StructureReport r;
    r.radius = o.radius();
    r.finite_to_one = check_uniformly_finite_to_one(m, o);
    r.fellow = check_fellow_traveller(m, o, cap);
    r.nu = observed_quasigeodesic_constant(m, o);
    return r;
}

LanguageLengths::LanguageLengths(const Fsa& m, GroupModel& model, std::size_t max_len) : max_len_(max_len) {
    if (m.empty_language()) return;
    for (char c : m.alphabet()) model.letter(c);
    std::set<std::pair<std::size_t, int>> seen{{0, GroupModel::identity()}};
    std::vector<std::pair<std::size_t, int>> level{{0, GroupModel::identity()}};
    for (std::size_t len = 0;; ++len) {
        for (auto [s, e] : level)
            if (m.is_accepting(s)) best_.emplace(e, len);
        if (len == max_len) break;
        std::vector<std::pair<std::size_t, int>> next;
        for (auto [s, e] : level)
            for (char c : m.alphabet()) {
                int t = m.next(s, c);
                if (t < 0) continue;
                std::pair<std::size_t, int> key{static_cast<std::size_t>(t), model.mul(e, model.letter(c))};
                if (seen.insert(key).second) next.push_back(key);
            }
        level = std::move(next);
    }
}

std::optional<std::size_t> LanguageLengths::find(int g) const {
    auto it = best_.find(g);
    if (it == best_.end()) return std::nullopt;
    return it->second;
}

std::size_t LanguageLengths::ell(int g) const {
    auto l = find(g);
    if (!l) throw Error(ErrorKind::OutOfWindow, "no accepted word of length <= " + std::to_string(max_len_));
    return *l;
}

std::size_t conj_ell(const LanguageLengths& lengths, GroupModel& model, int g, std::size_t conj_radius) {
    BallOracle ball(model, 0, conj_radius);
    std::optional<std::size_t> best;
    for (int h : ball.elements_within(conj_radius)) {
        auto l = lengths.find(model.mul(model.mul(h, g), model.inverse(h)));
        if (l && (!best || *l < *best)) best = l;
    }
    if (!best) throw Error(ErrorKind::OutOfWindow, "no conjugate represented within the window");
    return *best;
}

TauEstimate tau_estimate(const LanguageLengths& lengths, GroupModel& model, int g, std::size_t nmax) {
    if (nmax == 0) throw Error(ErrorKind::OutOfWindow, "nmax must be positive");
    TauEstimate est;
    int x = GroupModel::identity();
    for (std::size_t n = 0; n <= nmax; ++n) {
        est.lengths.push_back(lengths.ell(x));
        x = model.mul(x, g);
    }
    auto inc = [&](std::size_t n) {
        return static_cast<long>(est.lengths[n]) - static_cast<long>(est.lengths[n - 1]);
    };
    if (nmax >= 3 && inc(nmax) == inc(nmax - 1) && inc(nmax - 1) == inc(nmax - 2)) {
        est.stabilized = true;
        est.value = Rational(inc(nmax));
    } else {
        est.value = Rational(static_cast<long>(est.lengths[nmax]), static_cast<long>(nmax));
        est.value.canonicalize();
    }
    return est;
}

json to_json(const FellowWitness& w) {
    return json{{"u", w.u}, {"v", w.v}, {"a", w.a}, {"b", w.b}, {"time", w.time}, {"distance", w.distance}};
}

json to_json(const StructureReport& r) {
    json ft{{"bound", r.finite_to_one.bound}, {"bucket", r.finite_to_one.bucket},
            {"surjective", r.finite_to_one.surjective()}};
    if (r.finite_to_one.unrepresented) ft["unrepresented"] = *r.finite_to_one.unrepresented;
    json fellow{{"zeta", r.fellow.zeta}, {"zeta_shared_endpoint", r.fellow.zeta_shared_endpoint}, {"ok", r.fellow.ok()}};
    if (r.fellow.extreme) fellow["extreme"] = to_json(*r.fellow.extreme);
    if (r.fellow.violation) fellow["violation"] = to_json(*r.fellow.violation);
    return json{{"radius", r.radius}, {"finite_to_one", ft}, {"fellow_traveller", fellow}, {"nu", r.nu}, {"ok", r.ok()}};
}

}  // namespace hnnlab
