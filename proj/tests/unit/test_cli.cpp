#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"
#include "oct/analyzer.hpp"
#include "oct/parser.hpp"

using namespace oct;
using nlohmann::json;

namespace {

std::string g_cli;
std::string g_corpus;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), std::move(out)};
}

std::string corpus(const std::string& name) { return g_corpus + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("analyze a one-assignment program") {
    RunResult r = run("analyze " + corpus("one_assign.oct"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("l0: {}") != std::string::npos);
    CHECK(r.output.find("l1: {x=5}") != std::string::npos);
}

TEST_CASE("json output carries both inequalities of an equality") {
    RunResult r = run("analyze " + corpus("one_assign.oct") + " --format json");
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    REQUIRE(out["locations"].size() == 2);
    const json& l1 = out["locations"][1];
    CHECK(l1["location"] == "l1");
    CHECK(l1["bottom"] == false);
    REQUIRE(l1["constraints"].size() == 2);
    CHECK(l1["constraints"][0] == json({{"lhs", "x"}, {"op", "<="}, {"rhs", "5"}}));
    CHECK(l1["constraints"][1] == json({{"lhs", "x"}, {"op", ">="}, {"rhs", "5"}}));
}

TEST_CASE("json invariants round-trip through from_constraints") {
    RunResult r = run("analyze " + corpus("randomwalk_kernel.oct") + " --format json");
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);

    Program p = parse(slurp(corpus("randomwalk_kernel.oct")));
    AnalysisResult a = analyze(p);
    REQUIRE(out["locations"].size() == p.n_locations);
    for (const json& entry : out["locations"]) {
        std::string loc_name = entry["location"];
        LocationId loc = std::stoul(loc_name.substr(1));
        Octagon closed = strong_closure(a.invariants[loc]);
        if (entry["bottom"].get<bool>()) {
            CHECK(closed.is_bottom());
            continue;
        }
        std::vector<OctConstraint> cs;
        for (const json& c : entry["constraints"]) {
            // lhs is one of "x", "x+y", "x-y", "-x-y" over declared names
            std::string lhs = c["lhs"];
            std::string op = c["op"];
            Rat bound = *parse_rational(std::string(c["rhs"]));
            auto split = [&](char sep) -> std::pair<std::string, std::string> {
                auto k = lhs.find(sep, 1);
                return {lhs.substr(0, k), lhs.substr(k + 1)};
            };
            if (lhs[0] == '-') {
                auto [x, y] = split('-');
                cs.push_back(OctConstraint::neg_sum(p.var_index(x.substr(1)),
                                                    p.var_index(y), bound));
            } else if (lhs.find('+') != std::string::npos) {
                auto [x, y] = split('+');
                cs.push_back(OctConstraint::sum(p.var_index(x), p.var_index(y), bound));
            } else if (lhs.find('-') != std::string::npos) {
                auto [x, y] = split('-');
                cs.push_back(OctConstraint::diff(p.var_index(x), p.var_index(y), bound));
            } else if (op == "<=") {
                cs.push_back(OctConstraint::upper(p.var_index(lhs), bound));
            } else {
                cs.push_back(OctConstraint::lower(p.var_index(lhs), bound));
            }
        }
        Octagon rebuilt = Octagon::of(from_constraints(p.var_count(), cs));
        CHECK(equals(rebuilt, closed));
    }
}

TEST_CASE("randomwalk report proves the table bounds") {
    RunResult r = run("analyze " + corpus("randomwalk.oct"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("-m<=a") != std::string::npos);
    CHECK(r.output.find("a<=m") != std::string::npos);
    CHECK(r.output.find("unknown") == std::string::npos);
}

TEST_CASE("check is quiet and bubble sort passes") {
    RunResult r = run("check " + corpus("bubble_sort.oct"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("l0:") == std::string::npos);
    CHECK(r.output.find("proved") != std::string::npos);
}

TEST_CASE("unproved asserts exit 1") {
    std::string tmp = "/tmp/octolyze_unknown.oct";
    std::ofstream(tmp) << "var x;\nx := rand;\nassert x <= 3\n";
    RunResult r = run("check " + tmp);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("unknown") != std::string::npos);
}

TEST_CASE("usage and parse errors exit 2") {
    CHECK(run("analyze /nonexistent/missing.oct").exit_code == 2);
    CHECK(run("analyze").exit_code == 2);
    CHECK(run("analyze --bogus x").exit_code == 2);
    std::string tmp = "/tmp/octolyze_syntax.oct";
    std::ofstream(tmp) << "var x; x := \n";
    RunResult r = run("analyze " + tmp);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("unreachable locations render as bottom") {
    std::string tmp = "/tmp/octolyze_dead.oct";
    std::ofstream(tmp) << "var x;\nx := 1;\nif x <= 0 then x := 2 fi\n";
    RunResult r = run("analyze " + tmp);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("l2: bottom") != std::string::npos);

    RunResult j = run("analyze " + tmp + " --format json --loc l2");
    json out = json::parse(j.output);
    REQUIRE(out["locations"].size() == 1);
    CHECK(out["locations"][0]["bottom"] == true);
    CHECK(out["locations"][0]["constraints"].empty());
}

TEST_CASE("help exits zero") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("analyze --help").exit_code == 0);
}

TEST_CASE("location filter and matrix dump") {
    RunResult r = run("analyze " + corpus("one_assign.oct") + " --loc l1 --show-matrix");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("l0:") == std::string::npos);
    CHECK(r.output.find("l1: {x=5}") != std::string::npos);
    CHECK(r.output.find("dbm 2") != std::string::npos);
}

TEST_CASE("dump pretty-prints and reparses") {
    RunResult r = run("dump " + corpus("randomwalk.oct"));
    CHECK(r.exit_code == 0);
    Program reparsed = parse(r.output);
    Program original = parse(slurp(corpus("randomwalk.oct")));
    CHECK(structurally_equal(original, reparsed));
}

TEST_CASE("text output is deterministic") {
    RunResult a = run("analyze " + corpus("randomwalk.oct"));
    RunResult b = run("analyze " + corpus("randomwalk.oct"));
    CHECK(a.output == b.output);
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    int arg = 1;
    for (; arg < argc; ++arg) {
        std::string a = argv[arg];
        if (g_cli.empty() && a.rfind("-", 0) != 0) {
            g_cli = a;
        } else if (g_corpus.empty() && a.rfind("-", 0) != 0) {
            g_corpus = a;
        }
    }
    if (g_cli.empty() || g_corpus.empty()) {
        std::fprintf(stderr, "usage: test_cli <octolyze-binary> <corpus-dir>\n");
        return 2;
    }
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
