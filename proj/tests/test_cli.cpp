#include <doctest.h>

#include "hnnlab/cli.hpp"

using hnnlab::cli::run;
using nlohmann::json;

TEST_CASE("verify exit codes") {
    auto ok = run({"verify"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("27/27 relations hold") != std::string::npos);
    auto printed = run({"--json", "verify", "--as-printed"});
    CHECK(printed.exit_code == 1);
    CHECK(printed.result["passed"] == 26);
    CHECK(printed.result["relations"][10]["pass"] == false);
    CHECK(json::parse(printed.out) == printed.result);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).exit_code == 2);
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({"britton", "--word", "aq"}).exit_code == 2);
    CHECK(run({"cosets", "--subgroup", "Q"}).exit_code == 2);
    CHECK(run({"export", "--format", "pdf"}).exit_code == 2);
    CHECK(run({"classify", "--word", "tq"}).err.find("UnknownLetter") != std::string::npos);
}

TEST_CASE("every json result names its command") {
    std::vector<std::vector<std::string>> cmds{
        {"verify"},
        {"classify", "--word", "t"},
        {"reduce", "--word", "AdcbC"},
        {"britton", "--word", "Tdt"},
        {"trivial", "--word", "tT"},
        {"cosets", "--subgroup", "K", "--method", "both"},
        {"tree", "--word", "tat"},
        {"abelianize"},
        {"lengths"},
        {"fsa-check", "--automaton", "zsquared", "--group", "z2", "--radius", "4"},
        {"export", "--format", "json"},
    };
    for (auto args : cmds) {
        std::string name = args.front();
        args.insert(args.begin(), "--json");
        auto r = run(args);
        INFO(name);
        CHECK(r.result["command"] == name);
        CHECK(json::parse(r.out) == r.result);
    }
}

TEST_CASE("subcommand results") {
    auto c = run({"--json", "classify", "--word", "t"});
    CHECK(c.result["class"] == "elliptic-infinite");
    CHECK(c.result["trace"] == "2/3 + 0*sqrt(2)");
    auto b = run({"--json", "britton", "--word", "Tdt"});
    CHECK(b.result["t_count"] == 0);
    auto k = run({"--json", "cosets", "--subgroup", "H", "--method", "both"});
    CHECK(k.result["index"] == 12);
    CHECK(k.result["agree"] == true);
    auto t = run({"--json", "tree"});
    CHECK(t.result["degree"] == 24);
    auto a = run({"--json", "abelianize"});
    CHECK(a.result["betti"] == 1);
    auto base = run({"--json", "abelianize", "--presentation", "base"});
    CHECK(base.result["betti"] == 4);
    auto l = run({"--json", "lengths"});
    CHECK(l.result["verdict"] == "independent-certified");
    auto adv = run({"fsa-check", "--automaton", "zsquared-adversarial", "--group", "z2", "--radius", "8"});
    CHECK(adv.exit_code == 1);
}

TEST_CASE("determinism under a seed") {
    auto a = run({"--json", "--seed", "7", "--samples", "30", "verify", "--mutate"});
    auto b = run({"--json", "--seed", "7", "--samples", "30", "verify", "--mutate"});
    CHECK(a.out == b.out);
    CHECK(a.exit_code == 0);
    CHECK(a.result["mutations"]["caught"] == 30);
}

TEST_CASE("export formats") {
    auto j = run({"export", "--format", "json"});
    json doc = json::parse(j.out);
    CHECK(doc["generators"].size() == 5);
    CHECK(doc["relators"].size() == 27);
    auto gap = run({"export", "--format", "gap"});
    CHECK(gap.out.rfind("F := FreeGroup(\"a\", \"b\", \"c\", \"d\", \"t\");;", 0) == 0);
    CHECK(gap.out.find("G := F / [") != std::string::npos);
    auto magma = run({"export", "--format", "magma"});
    CHECK(magma.out.rfind("G<a,b,c,d,t> := Group<a,b,c,d,t |", 0) == 0);
    auto printed = run({"--json", "export", "--format", "json", "--as-printed"});
    CHECK(printed.result["relators"][10] != doc["relators"][10]);
}

TEST_CASE("decimals are marked display only") {
    auto c = run({"classify", "--word", "a"});
    CHECK(c.out.find("(display only)") != std::string::npos);
}
