#include "hnnlab/cli.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hnnlab/abelian.hpp"
#include "hnnlab/biauto.hpp"
#include "hnnlab/hnn.hpp"
#include "hnnlab/isom.hpp"

namespace hnnlab::cli {

using nlohmann::json;

namespace {

struct Globals {
    bool json = false;
    std::uint64_t seed = 0;
    std::size_t samples = 100;
};

struct Output {
    int code = 0;
    json result;
    std::ostringstream text;
};

std::string class_name(const IsometryClass& c) {
    switch (c.index()) {
        case 0: return "identity";
        case 1: return "elliptic-finite";
        case 2: return "elliptic-infinite";
        case 3: return "parabolic";
        default: return "hyperbolic";
    }
}

std::string torsion_text(const Abelianization& ab) {
    std::string s = ab.betti == 0 ? "0" : "Z^" + std::to_string(ab.betti);
    for (const auto& t : ab.torsion) s += " + Z/" + to_string(t);
    return s;
}

json torsion_json(const Abelianization& ab) {
    json t = json::array();
    for (const auto& x : ab.torsion) t.push_back(to_string(x));
    return t;
}

Word parse_gamma_word(const HnnData& data, const std::string& text) { return data.alphabet.parse(text); }

Word parse_base_word(const HnnData& data, const std::string& text) { return data.base_alphabet.parse(text); }

Transcription transcription_of(bool as_printed) {
    return as_printed ? Transcription::AsPrinted : Transcription::Corrected;
}

std::string transcription_name(Transcription t) {
    return t == Transcription::AsPrinted ? "as-printed" : "corrected";
}

// verify ------------------------------------------------------------------

void cmd_verify(const Globals& g, bool as_printed, bool mutate, Output& o) {
    HnnData data = load_gamma(transcription_of(as_printed));
    auto report = verify_presentation(data);
    json rels = json::array();
    o.text << "transcription: " << transcription_name(data.transcription) << "\n";
    for (const auto& c : report.checks) {
        json r{{"number", c.number}, {"text", c.text}, {"pass", c.pass}};
        o.text << "relation " << (c.number < 10 ? " " : "") << c.number << "  " << (c.pass ? "PASS" : "FAIL") << "  "
               << c.text << "\n";
        if (!c.pass) {
            Mat2 diff = witness_difference(c);
            r["witness"] = {{"lhs", c.lhs_value.key()}, {"rhs", c.rhs_value.key()}, {"difference", diff.to_string()}};
            o.text << "    lhs - rhs = " << diff.to_string() << "\n";
        }
        rels.push_back(std::move(r));
    }
    o.text << report.passed() << "/" << report.checks.size() << " relations hold\n";
    o.result = {{"command", "verify"},
                {"transcription", transcription_name(data.transcription)},
                {"relations", rels},
                {"passed", report.passed()},
                {"all_pass", report.all_pass()}};
    bool ok = report.all_pass();

    if (mutate) {
        std::mt19937_64 rng(g.seed);
        std::size_t caught = 0;
        json witnesses = json::array();
        for (std::size_t s = 0; s < g.samples; ++s) {
            const Relation& rel = data.relations[rng() % data.relations.size()];
            Word lhs = rel.lhs;
            Word rhs = rel.rhs;
            bool left = rhs.empty() || rng() % 2 == 0;
            Word& side = left ? lhs : rhs;
            std::size_t pos = rng() % side.size();
            Letter old = side[pos];
            Letter fresh = old;
            while (fresh == old) fresh = Letter::from_col(static_cast<int>(rng() % (2 * data.alphabet.size())));
            side[pos] = fresh;
            ProjMat l = data.assignment.evaluate(lhs);
            ProjMat r = data.assignment.evaluate(rhs);
            bool fails = l != r;
            if (fails) ++caught;
            if (witnesses.size() < 5)
                witnesses.push_back({{"relation", rel.number},
                                     {"lhs", data.alphabet.format(lhs)},
                                     {"rhs", data.alphabet.format(rhs)},
                                     {"fails", fails},
                                     {"difference", (l.rep() - r.rep()).to_string()}});
        }
        o.text << "mutations: " << caught << "/" << g.samples << " single-letter mutations fail (seed " << g.seed
               << ")\n";
        o.result["mutations"] = {{"seed", g.seed}, {"samples", g.samples}, {"caught", caught}, {"examples", witnesses}};
        ok = ok && caught == g.samples;
    }
    o.code = ok ? 0 : 1;
}

// classify ----------------------------------------------------------------

json length_json(const TransLength& l) {
    return {{"lambda", l.lambda.to_string()},
            {"disc", l.disc},
            {"tau", l.to_string()},
            {"tau_decimal", l.decimal(30) + " (display only)"}};
}

void cmd_classify(const std::optional<std::string>& word, const std::optional<std::string>& matrix, std::int64_t field,
                  Output& o) {
    if (word.has_value() == matrix.has_value()) throw Error(ErrorKind::Parse, "give exactly one of --word, --matrix");
    std::string input = word ? *word : *matrix;
    ProjMat m = [&] {
        if (!word) return proj_normalize(Mat2::parse(*matrix, field));
        HnnData data = load_gamma();
        return data.assignment.evaluate(parse_gamma_word(data, *word));
    }();
    IsometryClass c = classify(m);
    QuadExt tr = m.rep().trace();
    o.text << "trace: " << tr.to_string() << " (up to sign)\n" << describe(c) << "\n";
    o.result = {{"command", "classify"},
                {"input", input},
                {"matrix", m.key()},
                {"trace", tr.to_string()},
                {"class", class_name(c)},
                {"description", describe(c)}};
    if (auto* e = std::get_if<iso::EllipticFinite>(&c)) o.result["order"] = e->order;
    if (auto* h = std::get_if<iso::Hyperbolic>(&c); h && h->length) {
        o.result["length"] = length_json(*h->length);
        o.text << "tau ~ " << h->length->decimal(30) << " (display only)\n";
    }
}

// words -------------------------------------------------------------------

void cmd_reduce(const std::string& word, Output& o) {
    HnnData data = load_gamma();
    Word w = parse_base_word(data, word);
    SymmetrizedRelators sym(data.base);
    Word r = dehn_reduce(w, sym);
    bool matrix_id = data.base_assignment.evaluate(w).is_identity();
    o.text << (r.empty() ? "1" : data.base_alphabet.format(r)) << "\n";
    o.result = {{"command", "reduce"},
                {"input", word},
                {"reduced", data.base_alphabet.format(r)},
                {"trivial", r.empty()},
                {"matrix_identity", matrix_id}};
    if (r.empty() != matrix_id) {
        o.text << "warning: Dehn and matrix verdicts differ\n";
        o.code = 1;
    }
}

void cmd_britton(const std::string& word, Output& o) {
    const HnnGroup& g = HnnGroup::standard();
    Word w = parse_gamma_word(g.data(), word);
    BrittonForm f = g.britton_reduce(w);
    o.text << f.to_string(g.data().base_alphabet) << "\n";
    o.result = {{"command", "britton"},
                {"input", word},
                {"form", f.to_string(g.data().base_alphabet)},
                {"word", g.data().alphabet.format(f.to_word())},
                {"t_count", f.t_count()}};
}

void cmd_trivial(const std::string& word, Output& o) {
    const HnnGroup& g = HnnGroup::standard();
    Word w = parse_gamma_word(g.data(), word);
    bool triv = g.is_trivial(w);
    bool matrix_id = g.data().assignment.evaluate(w).is_identity();
    o.text << (triv ? "trivial" : "nontrivial") << "\n";
    o.result = {{"command", "trivial"}, {"input", word}, {"trivial", triv}, {"matrix_identity", matrix_id}};
    // phi is not known to be faithful on Gamma, so only one direction is a defect
    if (triv && !matrix_id) {
        o.text << "error: trivial word with non-identity matrix\n";
        o.code = 1;
    }
}

// cosets ------------------------------------------------------------------

json table_json(const CosetTable& t) {
    json rows = json::array();
    for (const auto& r : t.table) rows.push_back(r);
    return rows;
}

void cmd_cosets(const std::string& subgroup, const std::string& method, Output& o) {
    HnnData data = load_gamma();
    const auto& oracles = SubgroupOracleSet::standard();
    std::vector<Word> gens;
    MembershipOracle member;
    if (subgroup == "K") {
        gens = data.subgroup_words_v();
        member = [&](const ProjMat& m) { return oracles.in_K(m); };
    } else if (subgroup == "H") {
        gens = data.subgroup_words_u();
        member = [&](const ProjMat& m) { return oracles.in_H(m); };
    } else if (subgroup == "PM") {
        for (int i = 0; i < 4; ++i) gens.push_back(Word{Letter{i, false}});
        member = [&](const ProjMat& m) { return oracles.in_PM(m); };
    } else {
        throw Error(ErrorKind::Parse, "subgroup must be K, H or PM");
    }
    std::size_t cap = coset_cap_from_env();
    std::optional<CosetTable> tc, arith;
    if (method == "tc" || method == "both") tc = todd_coxeter(data.base, gens, cap);
    if (method == "arith" || method == "both") arith = schreier_graph_arith(member, data.base_assignment, cap);
    if (!tc && !arith) throw Error(ErrorKind::Parse, "method must be tc, arith or both");

    o.result = {{"command", "cosets"}, {"subgroup", subgroup}, {"method", method}};
    json cols = json::array();
    for (std::size_t c = 0; c < 8; ++c) cols.push_back(data.base_alphabet.format(Word{Letter::from_col(int(c))}));
    o.result["columns"] = cols;
    const CosetTable& shown = tc ? *tc : *arith;
    o.result["index"] = shown.index();
    o.result["table"] = table_json(shown);
    o.text << "[PM:" << subgroup << "] = " << shown.index() << "\n";
    if (tc && arith) {
        bool agree = tc->same_labels(*arith);
        o.result["agree"] = agree;
        o.result["arith_index"] = arith->index();
        o.text << "Todd-Coxeter " << tc->index() << ", Schreier graph " << arith->index() << ", tables "
               << (agree ? "agree" : "DIFFER") << "\n";
        if (!agree) o.code = 1;
    }
}

// tree --------------------------------------------------------------------

void cmd_tree(const std::optional<std::string>& word, Output& o) {
    const HnnGroup& g = HnnGroup::standard();
    auto edges = g.tree_local(TreeVertexRef{});
    json labels = json::array();
    for (const auto& e : edges) labels.push_back(e.label);
    o.text << "base vertex degree " << g.tree_degree() << " = [PM:K] " << g.k_table().index() << " + [PM:H] "
           << g.h_table().index() << "\n";
    o.result = {{"command", "tree"},
                {"degree", g.tree_degree()},
                {"index_K", g.k_table().index()},
                {"index_H", g.h_table().index()},
                {"edges", labels}};
    if (word) {
        Word w = parse_gamma_word(g.data(), *word);
        std::size_t d = g.tree_distance(w);
        o.text << "tree_distance(" << *word << ") = " << d << "\n";
        o.result["word"] = *word;
        o.result["distance"] = d;
    }
}

// abelianize --------------------------------------------------------------

void cmd_abelianize(bool as_printed, const std::string& which, Output& o) {
    HnnData data = load_gamma(transcription_of(as_printed));
    if (which != "base" && which != "full") throw Error(ErrorKind::Parse, "presentation must be base or full");
    Presentation p = which == "base" ? data.base : data.full_presentation();
    auto inv = smith_invariants(relation_matrix(p));
    Abelianization ab = abelianization(p);
    json invj = json::array();
    for (const auto& d : inv) invj.push_back(to_string(d));
    o.text << "H1 = " << torsion_text(ab) << "  (" << p.n_gens() << " generators, " << p.relators.size()
           << " relators, " << transcription_name(data.transcription) << ")\n";
    o.result = {{"command", "abelianize"},
                {"presentation", which},
                {"transcription", transcription_name(data.transcription)},
                {"generators", p.n_gens()},
                {"relators", p.relators.size()},
                {"betti", ab.betti},
                {"torsion", torsion_json(ab)},
                {"smith_diagonal", invj}};
}

// lengths -----------------------------------------------------------------

void cmd_lengths(std::vector<std::string> words, int bound, Output& o) {
    if (words.empty()) words = {"a", "c"};
    if (words.size() != 2) throw Error(ErrorKind::Parse, "lengths takes exactly two --word values");
    HnnData data = load_gamma();
    std::vector<TransLength> ls;
    json items = json::array();
    for (const auto& w : words) {
        TransLength l = translation_length(data.assignment.evaluate(parse_gamma_word(data, w)));
        o.text << w << ": lambda = " << l.lambda.to_string() << ", tau = " << l.to_string() << " ~ " << l.decimal(30)
               << " (display only)\n";
        json j = length_json(l);
        j["word"] = w;
        items.push_back(j);
        ls.push_back(l);
    }
    RatioVerdict v = length_ratio_independent(ls[0], ls[1], bound);
    o.text << describe(v) << "\n";
    std::string kind = std::holds_alternative<Dependent>(v)         ? "dependent"
                       : std::holds_alternative<IndependentUpTo>(v) ? "independent-up-to"
                                                                    : "independent-certified";
    o.result = {{"command", "lengths"}, {"bound", bound}, {"lengths", items}, {"verdict", kind},
                {"description", describe(v)}};
    if (auto* d = std::get_if<Dependent>(&v)) {
        o.result["p"] = d->p;
        o.result["q"] = d->q;
    }
}

// fsa-check ---------------------------------------------------------------

Fsa load_automaton(const std::string& name) {
    if (name == "zsquared") return zsquared_normal_form();
    if (name == "zsquared-yfirst") return zsquared_normal_form_y_first();
    if (name == "zsquared-adversarial") return zsquared_adversarial();
    std::ifstream in(name);
    if (!in) throw Error(ErrorKind::Parse, "cannot open automaton '" + name + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("automaton is not JSON: ") + e.what());
    }
    return Fsa::from_json(j);
}

void cmd_fsa_check(const std::string& automaton, const std::string& group, std::size_t radius, std::size_t cap,
                   Output& o) {
    Fsa m = load_automaton(automaton);
    std::unique_ptr<GroupModel> model;
    if (group == "z2") {
        model = std::make_unique<ZnModel>(2);
    } else if (group == "z1") {
        model = std::make_unique<ZnModel>(1);
    } else if (group == "z3") {
        model = std::make_unique<ZnModel>(3);
    } else if (group == "trivial") {
        model = std::make_unique<ZnModel>(0);
    } else if (group == "vertex") {
        HnnData data = load_gamma();
        model = std::make_unique<MatrixModel>(data.base_alphabet, data.base_assignment);
    } else {
        throw Error(ErrorKind::Parse, "group must be z1, z2, z3, trivial or vertex");
    }
    for (char c : m.alphabet()) model->letter(c);
    BallOracle ball(*model, radius);
    StructureReport r = check_structure(m, ball, cap);
    o.result = to_json(r);
    o.result["command"] = "fsa-check";
    o.result["automaton"] = automaton;
    o.result["group"] = group;
    o.result["cap"] = cap;
    o.text << "verified up to radius " << radius << " (window only)\n";
    o.text << "finite-to-one: N = " << r.finite_to_one.bound;
    if (r.finite_to_one.bound > 1) {
        o.text << " via";
        for (const auto& w : r.finite_to_one.bucket) o.text << " " << (w.empty() ? "1" : w);
    }
    o.text << "\n";
    o.text << "surjective within radius " << radius / 2 << ": "
           << (r.finite_to_one.unrepresented ? "no, " + *r.finite_to_one.unrepresented + " unrepresented" : "yes")
           << "\n";
    o.text << "fellow traveller: zeta = " << r.fellow.zeta << " (shared endpoint: " << r.fellow.zeta_shared_endpoint
           << ")\n";
    if (r.fellow.violation) {
        const auto& w = *r.fellow.violation;
        o.text << "violation: u = " << (w.u.empty() ? "1" : w.u) << ", v = " << (w.v.empty() ? "1" : w.v)
               << ", a = " << (w.a.empty() ? "1" : w.a) << ", b = " << (w.b.empty() ? "1" : w.b) << ", distance "
               << w.distance << " > " << cap << " at t = " << w.time << "\n";
    }
    o.text << "quasi-geodesic nu = " << r.nu << "\n";
    o.code = r.ok() ? 0 : 1;
}

// export ------------------------------------------------------------------

std::string gap_word(const Alphabet& a, const Word& w) {
    std::string s = a.format_verbose(w);
    return s.empty() ? "One(F)" : s;
}

void cmd_export(const std::string& format, bool as_printed, Output& o) {
    HnnData data = load_gamma(transcription_of(as_printed));
    Presentation p = data.full_presentation();
    const auto& names = p.alphabet.names();
    json rels = json::array();
    for (const auto& r : p.relators) rels.push_back(p.alphabet.format_verbose(r));
    o.result = {{"command", "export"},
                {"format", format},
                {"transcription", transcription_name(data.transcription)},
                {"generators", names},
                {"relators", rels}};
    if (format == "gap") {
        o.text << "F := FreeGroup(";
        for (std::size_t i = 0; i < names.size(); ++i) o.text << (i ? ", " : "") << '"' << names[i] << '"';
        o.text << ");;\n";
        for (std::size_t i = 0; i < names.size(); ++i) o.text << names[i] << " := F." << i + 1 << ";;\n";
        o.text << "G := F / [\n";
        for (std::size_t i = 0; i < p.relators.size(); ++i)
            o.text << "  " << gap_word(p.alphabet, p.relators[i]) << (i + 1 < p.relators.size() ? ",\n" : "\n");
        o.text << "];;\n";
    } else if (format == "magma") {
        std::string gens;
        for (std::size_t i = 0; i < names.size(); ++i) gens += (i ? "," : "") + names[i];
        o.text << "G<" << gens << "> := Group<" << gens << " |\n";
        for (std::size_t i = 0; i < p.relators.size(); ++i)
            o.text << "  " << p.alphabet.format_verbose(p.relators[i]) << (i + 1 < p.relators.size() ? ",\n" : "\n");
        o.text << ">;\n";
    } else if (format == "json") {
        o.text << o.result.dump(2) << "\n";
    } else {
        throw Error(ErrorKind::Parse, "format must be gap, magma or json");
    }
}

}  // namespace

RunReport run(const std::vector<std::string>& args) {
    CLI::App app{"Exact computations for the lattice Gamma = PM *_{H^t = K}", "hnn_lab"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Print the JSON result object");
    app.add_option("--seed", g.seed, "Seed for sampled checks")->capture_default_str();
    app.add_option("--samples", g.samples, "Sample count for sampled checks")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Check the 27 relations exactly");
    bool as_printed = false;
    bool mutate = false;
    verify->add_flag("--as-printed", as_printed, "Use relation 11 exactly as printed");
    verify->add_flag("--mutate", mutate, "Also check that random single-letter mutations fail");

    auto* classify_cmd = app.add_subcommand("classify", "Isometry type of a word or matrix");
    std::optional<std::string> word, matrix;
    std::int64_t field = 2;
    classify_cmd->add_option("--word", word, "Word over a b c d t");
    classify_cmd->add_option("--matrix", matrix, "m11, m12, m21, m22");
    classify_cmd->add_option("--field", field, "d for entries in Q(sqrt d)")->capture_default_str();

    std::string plain_word;
    auto* reduce = app.add_subcommand("reduce", "Dehn reduction in the vertex group");
    reduce->add_option("--word", plain_word, "Word over a b c d")->required();
    auto* britton = app.add_subcommand("britton", "Britton normal form in Gamma");
    britton->add_option("--word", plain_word, "Word over a b c d t")->required();
    auto* trivial = app.add_subcommand("trivial", "Word problem in Gamma");
    trivial->add_option("--word", plain_word, "Word over a b c d t")->required();

    auto* cosets = app.add_subcommand("cosets", "Coset tables of K, H or PM");
    std::string subgroup = "K", method = "both";
    cosets->add_option("--subgroup", subgroup, "K, H or PM")->capture_default_str();
    cosets->add_option("--method", method, "tc, arith or both")->capture_default_str();

    auto* tree = app.add_subcommand("tree", "Local structure of the Bass-Serre tree");
    std::optional<std::string> tree_word;
    tree->add_option("--word", tree_word, "Report how far this word moves the base vertex");

    auto* abel = app.add_subcommand("abelianize", "Abelianization by Smith normal form");
    std::string which = "full";
    abel->add_flag("--as-printed", as_printed, "Use relation 11 exactly as printed");
    abel->add_option("--presentation", which, "full or base")->capture_default_str();

    auto* lengths = app.add_subcommand("lengths", "Translation lengths and their ratio");
    std::vector<std::string> length_words;
    int bound = 100;
    lengths->add_option("--word", length_words, "Two hyperbolic words (default a c)");
    lengths->add_option("--bound", bound, "Search bound for p, q")->capture_default_str();

    auto* fsa = app.add_subcommand("fsa-check", "Window checks of biautomatic axioms");
    std::string automaton = "zsquared", group = "z2";
    std::size_t radius = 6, cap = kDefaultFellowCap;
    fsa->add_option("--automaton", automaton, "JSON file or zsquared, zsquared-yfirst, zsquared-adversarial")
        ->capture_default_str();
    fsa->add_option("--group", group, "z1, z2, z3, trivial or vertex")->capture_default_str();
    fsa->add_option("--radius", radius, "Window radius")->capture_default_str();
    fsa->add_option("--cap", cap, "Fellow-traveller cap")->capture_default_str();

    auto* exp = app.add_subcommand("export", "Print the presentation");
    std::string format = "gap";
    exp->add_option("--format", format, "gap, magma or json")->capture_default_str();
    exp->add_flag("--as-printed", as_printed, "Use relation 11 exactly as printed");

    RunReport rep;
    std::vector<const char*> argv{"hnn_lab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        rep.out = app.help();
        return rep;
    } catch (const CLI::CallForAllHelp&) {
        rep.out = app.help("", CLI::AppFormatMode::All);
        return rep;
    } catch (const CLI::ParseError& e) {
        rep.exit_code = 2;
        rep.err = std::string("usage error: ") + e.what() + "\n";
        rep.result = {{"error", {{"kind", "Usage"}, {"message", e.what()}}}};
        return rep;
    }

    Output o;
    try {
        if (*verify) cmd_verify(g, as_printed, mutate, o);
        else if (*classify_cmd) cmd_classify(word, matrix, field, o);
        else if (*reduce) cmd_reduce(plain_word, o);
        else if (*britton) cmd_britton(plain_word, o);
        else if (*trivial) cmd_trivial(plain_word, o);
        else if (*cosets) cmd_cosets(subgroup, method, o);
        else if (*tree) cmd_tree(tree_word, o);
        else if (*abel) cmd_abelianize(as_printed, which, o);
        else if (*lengths) cmd_lengths(length_words, bound, o);
        else if (*fsa) cmd_fsa_check(automaton, group, radius, cap, o);
        else if (*exp) cmd_export(format, as_printed, o);
    } catch (const Error& e) {
        rep.exit_code = e.kind() == ErrorKind::OracleDisagreement ? 1 : 2;
        rep.err = std::string("error: ") + e.what() + "\n";
        rep.result = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
        if (g.json) rep.out = rep.result.dump(2) + "\n";
        return rep;
    }
    rep.exit_code = o.code;
    rep.result = std::move(o.result);
    rep.out = g.json ? rep.result.dump(2) + "\n" : o.text.str();
    return rep;
}

}  // namespace hnnlab::cli
