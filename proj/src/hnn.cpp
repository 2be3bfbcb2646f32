#include "hnnlab/hnn.hpp"

#include <algorithm>
#include <map>

namespace hnnlab {

namespace {

constexpr std::array<std::string_view, kRelationCount> kPrinted = {
    "a^{-1} d c b c^{-1} a b^{-1} d^{-1} = 1",
    "t d^{-1} a^2 c b^{-1} c^{-1} t^{-1} = d",
    "t d^{-1} a^2 c a^{-1} d t^{-1} = a^2 c^{-1}",
    "t d^{-1} a^2 c b d^{-1} a^{-1} d t^{-1} = a c b^{-1}",
    "t d^{-1} a d c^{-1} d^{-1} a d c a^{-2} d t^{-1} = b a b a^{-1}",
    "t d^{-1} a d c^{-1} a^{-1} d t^{-1} = b^2 c^{-1}",
    "t d^{-1} a d b c^{-1} a b^{-1} c^{-1} d b a^{-1} c a^{-1} c b^{-1} c^{-1} t^{-1} = b d c^{-1} b^{-1}",
    "t b^2 c^{-1} a^{-2} d t^{-1} = c b d^{-1} a^{-1}",
    "t d^{-2} a^2 d^{-1} a^{-1} d t^{-1} = c^3",
    "t d^{-1} a b^{-1} d^{-1} a d t^{-1} = c d c^{-1}",
    "t b a^{-1} c b a^{-1} d b a^{-1} c a^{-1} c b^{-1} c^{-1} t^{-1} = a^{-1} b c^{-1} b^{-1}",
    "t d^{-1} a d c b a^{-1} d^{-1} a^{-1} d t^{-1} = a^{-1} c b",
    "t d^{-1} a^2 d c d^{-1} a^{-1} d t^{-1} = a^{-1} d b^{-1}",
    "t d^{-1} a d c b^{-1} c^{-1} a^{-1} d a^{-2} d t^{-1} = b^{-1} a b^{-1} a^{-1}",
    "t d^{-1} a d c b^{-2} a^{-2} d t^{-1} = b^{-1} c b a^{-1}",
    "t d^{-1} a d c b^{-1} c^{-1} b a^{-2} d t^{-1} = b^{-1} d b a^{-1}",
    "t d^{-1} a d^2 b a^{-1} c b^{-2} c^{-1} d^{-1} a^{-1} d t^{-1} = c^{-1} a^2",
    "t d^{-1} a d a^{-2} d b a^{-1} d^{-1} a^{-1} d t^{-1} = c^{-1} b^2",
    "t d^{-1} a^2 d^{-1} a c^{-1} a b c^{-1} a^{-1} a^{-1} d t^{-1} = a b a d^{-1} a^{-1}",
    "t d^{-1} a^2 d^{-1} c b^{-2} c^{-1} d^{-1} a^{-1} d t^{-1} = a b^2 a",
    "t d^{-1} a^2 d^{-1} a b^{-3} c^{-1} d^{-1} a^{-1} d t^{-1} = a b c a",
    "t d^{-1} a^2 d^{-1} a c^{-1} b^{-1} c^{-1} d^{-1} a^{-1} d t^{-1} = a b d a",
    "t d^{-1} a^2 c b^{-1} a^{-1} d b a^{-1} d b a^{-1} c a^{-1} c b^{-1} c^{-1} t^{-1} = a d a c^{-1} b^{-1}",
    "t d^{-1} a^2 c b^{-2} c^{-1} d^{-1} a^2 d^{-1} a^{-1} d t^{-1} = a d b c",
    "t d^{-1} a^2 c^{-1} d b a^{-1} d^{-1} a^{-1} d t^{-1} = a b^{-1} a b",
    "t d^{-1} a d c^{-1} d^{-1} a c b^{-1} a^{-1} c b^{-1} c^{-1} t^{-1} = b c a b^{-1}",
    "t d^{-1} a d c^{-1} d^{-1} a d^{-1} a d b a^{-1} d t^{-1} = b c b a^{-1} c^{-1}"
};

constexpr std::string_view kRelation11 =
    "t d^{-1} a^2 d b a^{-1} c b a^{-1} d b a^{-1} c a^{-1} c b^{-1} c^{-1} t^{-1} = a^{-1} b c^{-1} b^{-1}";

Relation parse_relation(const Alphabet& alpha, std::size_t number, std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos)
        throw Error(ErrorKind::Parse, "relation " + std::to_string(number) + " needs exactly one '='");
    Relation r;
    r.number = number;
    r.text = std::string(text);
    r.lhs = alpha.parse(text.substr(0, eq));
    r.rhs = alpha.parse(text.substr(eq + 1));
    return r;
}

std::size_t t_letters(const Word& w) {
    return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](Letter x) { return x.gen == kStableGen; }));
}

std::vector<ProjMat> standard_images() {
    QuatAlgebra alg = QuatAlgebra::standard();
    const auto& e = standard_elements();
    std::vector<ProjMat> out;
    for (const Quaternion* q : {&e.a, &e.b, &e.c, &e.d, &e.t}) out.emplace_back(phi(alg, *q));
    return out;
}

Word substitute(const Word& over_subgens, const std::vector<Word>& images) {
    Word out;
    for (Letter y : over_subgens) {
        const Word& img = images.at(static_cast<std::size_t>(y.gen));
        out = concat(out, y.inv ? inverse(img) : img);
    }
    return out;
}

}  // namespace

const std::array<std::string_view, kRelationCount>& printed_relations() { return kPrinted; }

std::string_view corrected_relation_11() { return kRelation11; }

Presentation HnnData::full_presentation() const {
    std::vector<Word> rels;
    for (const auto& r : relations) rels.push_back(r.relator());
    return Presentation(alphabet, std::move(rels));
}

std::vector<Word> HnnData::subgroup_words_u() const {
    std::vector<Word> out;
    for (const auto& p : pairs) out.push_back(p.u);
    return out;
}

std::vector<Word> HnnData::subgroup_words_v() const {
    std::vector<Word> out;
    for (const auto& p : pairs) out.push_back(p.v);
    return out;
}

HnnData load_gamma(Transcription transcription) {
    Alphabet alpha = Alphabet::from_letters("abcdt");
    Alphabet base_alpha = Alphabet::from_letters("abcd");
    std::vector<Relation> rels;
    for (std::size_t i = 0; i < kRelationCount; ++i) {
        std::string_view text = kPrinted[i];
        if (transcription == Transcription::Corrected && i + 1 == kCorrectedRelation) text = kRelation11;
        rels.push_back(parse_relation(alpha, i + 1, text));
    }
    if (rels.size() != kRelationCount) throw Error(ErrorKind::Parse, "expected 27 relations");

    const Relation& first = rels.front();
    if (t_letters(first.lhs) + t_letters(first.rhs) != 0) throw Error(ErrorKind::Parse, "relation 1 mentions t");
    std::vector<HnnPair> pairs;
    for (std::size_t i = 1; i < rels.size(); ++i) {
        const Relation& r = rels[i];
        const Word& l = r.lhs;
        bool shaped = l.size() >= 2 && l.front() == Letter{kStableGen, false} && l.back() == Letter{kStableGen, true} &&
                      t_letters(l) == 2 && t_letters(r.rhs) == 0;
        if (!shaped) throw Error(ErrorKind::Parse, "relation " + std::to_string(r.number) + " is not t u t^-1 = v");
        pairs.push_back(HnnPair{free_reduce(Word(l.begin() + 1, l.end() - 1)), free_reduce(r.rhs)});
    }

    auto images = standard_images();
    std::vector<ProjMat> base_images(images.begin(), images.begin() + kStableGen);
    Presentation base(base_alpha, {first.relator()});
    return HnnData{transcription,  alpha, base_alpha, std::move(rels), std::move(pairs), std::move(base),
                   Assignment(images), Assignment(base_images)};
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.pass; });
}

std::size_t VerificationReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.pass; }));
}

VerificationReport verify_presentation(const HnnData& data) {
    VerificationReport report;
    for (const auto& r : data.relations) {
        ProjMat l = data.assignment.evaluate(r.lhs);
        ProjMat rr = data.assignment.evaluate(r.rhs);
        report.checks.push_back(RelationCheck{r.number, r.text, l == rr, l, rr});
    }
    return report;
}

Mat2 witness_difference(const RelationCheck& check) { return check.lhs_value.rep() - check.rhs_value.rep(); }

BrittonForm BrittonForm::split(const Word& w) {
    BrittonForm f;
    f.segments.emplace_back();
    for (Letter x : free_reduce(w)) {
        if (x.gen == kStableGen) {
            f.exponents.push_back(x.inv ? -1 : 1);
            f.segments.emplace_back();
        } else {
            f.segments.back().push_back(x);
        }
    }
    return f;
}

Word BrittonForm::to_word() const {
    Word out = segments.front();
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        out.push_back(Letter{kStableGen, exponents[i] < 0});
        out.insert(out.end(), segments[i + 1].begin(), segments[i + 1].end());
    }
    return out;
}

std::string BrittonForm::to_string(const Alphabet& base) const {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i > 0) parts.push_back(exponents[i - 1] > 0 ? "t" : "t^-1");
        if (!segments[i].empty()) parts.push_back(base.format(segments[i]));
    }
    if (parts.empty()) return "1";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += " · " + parts[i];
    return out;
}

HnnGroup::HnnGroup(HnnData data, std::size_t cap)
    : data_(std::move(data)),
      oracles_(&SubgroupOracleSet::standard()),
      base_sym_(data_.base),
      k_table_(todd_coxeter(data_.base, data_.subgroup_words_v(), cap, true)),
      h_table_(todd_coxeter(data_.base, data_.subgroup_words_u(), cap, true)) {
    auto report = verify_presentation(data_);
    if (!report.all_pass()) {
        for (const auto& c : report.checks)
            if (!c.pass)
                throw Error(ErrorKind::OracleDisagreement,
                            "relation " + std::to_string(c.number) + " does not hold under phi");
    }
    for (const auto& p : data_.pairs) {
        if (!base_word_in_h(p.u) || !base_word_in_k(p.v))
            throw Error(ErrorKind::OracleDisagreement, "pair generator outside its subgroup");
    }
}

const HnnGroup& HnnGroup::standard() {
    static const HnnGroup group(load_gamma(Transcription::Corrected));
    return group;
}

bool HnnGroup::base_word_in_k(const Word& g) const {
    bool arith = oracles_->in_K(data_.base_assignment.evaluate(g));
    bool table = k_table_.trace(0, g) == 0;
    if (arith != table)
        throw Error(ErrorKind::OracleDisagreement, "K membership of " + data_.base_alphabet.format(g) + " differs");
    return arith;
}

bool HnnGroup::base_word_in_h(const Word& g) const {
    bool arith = oracles_->in_H(data_.base_assignment.evaluate(g));
    bool table = h_table_.trace(0, g) == 0;
    if (arith != table)
        throw Error(ErrorKind::OracleDisagreement, "H membership of " + data_.base_alphabet.format(g) + " differs");
    return arith;
}

BrittonForm HnnGroup::britton_reduce(const Word& w) const {
    BrittonForm f = BrittonForm::split(w);
    auto us = data_.subgroup_words_u();
    auto vs = data_.subgroup_words_v();
    std::map<Word, Word> direct_k;  // v_i -> u_i
    std::map<Word, Word> direct_h;  // u_i -> v_i
    for (std::size_t i = 0; i < us.size(); ++i) {
        direct_k.emplace(vs[i], us[i]);
        direct_k.emplace(inverse(vs[i]), inverse(us[i]));
        direct_h.emplace(us[i], vs[i]);
        direct_h.emplace(inverse(us[i]), inverse(vs[i]));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < f.exponents.size(); ++i) {
            const Word& g = f.segments[i + 1];
            Word replaced;
            if (f.exponents[i] < 0 && f.exponents[i + 1] > 0 && base_word_in_k(g)) {
                auto hit = direct_k.find(g);
                replaced = hit != direct_k.end() ? hit->second : substitute(rewrite_in_subgroup(g, k_table_), us);
            } else if (f.exponents[i] > 0 && f.exponents[i + 1] < 0 && base_word_in_h(g)) {
                auto hit = direct_h.find(g);
                replaced = hit != direct_h.end() ? hit->second : substitute(rewrite_in_subgroup(g, h_table_), vs);
            } else {
                continue;
            }
            Word merged = concat(concat(f.segments[i], replaced), f.segments[i + 2]);
            f.segments[i] = std::move(merged);
            f.segments.erase(f.segments.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                             f.segments.begin() + static_cast<std::ptrdiff_t>(i) + 3);
            f.exponents.erase(f.exponents.begin() + static_cast<std::ptrdiff_t>(i),
                              f.exponents.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            changed = true;
            break;
        }
    }
    return f;
}

bool HnnGroup::is_trivial(const Word& w) const {
    BrittonForm f = britton_reduce(w);
    if (f.t_count() != 0) return false;
    return dehn_reduce(f.segments.front(), base_sym_).empty();
}

std::vector<TreeEdge> HnnGroup::tree_local(const TreeVertexRef& v) const {
    std::vector<TreeEdge> out;
    auto add = [&](const CosetTable& table, bool inv) {
        for (const Word& rep : coset_representatives(table)) {
            Word step = inverse(rep);
            step.push_back(Letter{kStableGen, inv});
            out.push_back(TreeEdge{data_.alphabet.format(step), TreeVertexRef{concat(v.rep, step)}});
        }
    };
    add(k_table_, false);
    add(h_table_, true);
    return out;
}

bool HnnGroup::same_vertex(const TreeVertexRef& x, const TreeVertexRef& y) const {
    return britton_reduce(concat(inverse(x.rep), y.rep)).t_count() == 0;
}

}  // namespace hnnlab
