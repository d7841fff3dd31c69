// octolyze: parse a toy imperative program, infer octagonal invariants at
// every location, report them and the assert verdicts.
//
// Exit codes: 0 analysis done and every assert proved, 1 some assert
// unknown, 2 usage or parse errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "oct/analyzer.hpp"
#include "oct/parser.hpp"
#include "oct/pretty.hpp"

namespace {

using nlohmann::json;
using namespace oct;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("no such file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fold_offset(const std::string& base, const Rat& c) {
    if (c == 0) return base;
    if (c > 0) return base + "+" + to_string(c);
    return base + "-" + to_string(Rat(-c));
}

// Fig-style rendering of one constraint over named variables, e.g.
// "a<=i-1", "1-i<=a", "i<=m".
std::string render_pretty(const OctConstraint& c, const std::vector<std::string>& vars) {
    switch (c.kind) {
        case ConstraintKind::UpperBound:
            return vars[c.a] + "<=" + to_string(c.c);
        case ConstraintKind::LowerBound:
            return to_string(c.c) + "<=" + vars[c.a];
        case ConstraintKind::DiffLeq:
            return vars[c.a] + "<=" + fold_offset(vars[c.b], c.c);
        case ConstraintKind::SumLeq: {
            // a + b <= c as "a<=c-b".
            if (c.c == 0) return vars[c.a] + "<=-" + vars[c.b];
            return vars[c.a] + "<=" + to_string(c.c) + "-" + vars[c.b];
        }
        case ConstraintKind::NegSumLeq: {
            // -a - b <= c as "-c-b<=a".
            Rat lhs = -c.c;
            if (lhs == 0) return "-" + vars[c.b] + "<=" + vars[c.a];
            return to_string(lhs) + "-" + vars[c.b] + "<=" + vars[c.a];
        }
    }
    return "?";
}

// Collapses matching pairs of constraints into equalities and renders the
// set in its deterministic order.
std::string render_set(const std::vector<OctConstraint>& cs,
                       const std::vector<std::string>& vars) {
    std::vector<bool> used(cs.size(), false);
    auto find_pair = [&](auto pred) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (!used[i] && pred(cs[i])) return i;
        }
        return cs.size();
    };
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (used[i]) continue;
        const OctConstraint& c = cs[i];
        std::size_t j = cs.size();
        std::string text;
        if (c.kind == ConstraintKind::UpperBound) {
            j = find_pair([&](const OctConstraint& o) {
                return o.kind == ConstraintKind::LowerBound && o.a == c.a && o.c == c.c;
            });
            text = vars[c.a] + "=" + to_string(c.c);
        } else if (c.kind == ConstraintKind::DiffLeq) {
            j = find_pair([&](const OctConstraint& o) {
                return o.kind == ConstraintKind::DiffLeq && o.a == c.b && o.b == c.a &&
                       o.c == -c.c;
            });
            text = vars[c.a] + "=" + fold_offset(vars[c.b], c.c);
        } else if (c.kind == ConstraintKind::SumLeq) {
            j = find_pair([&](const OctConstraint& o) {
                return o.kind == ConstraintKind::NegSumLeq && o.a == c.a && o.b == c.b &&
                       o.c == -c.c;
            });
            text = vars[c.a] + "+" + vars[c.b] + "=" + to_string(c.c);
        }
        if (j < cs.size()) {
            used[i] = used[j] = true;
            parts.push_back(std::move(text));
        } else {
            parts.push_back(render_pretty(c, vars));
        }
    }
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "; ";
        out += parts[i];
    }
    return out + "}";
}

// Canonical {lhs, op, rhs} triple for the JSON report.
json constraint_json(const OctConstraint& c, const std::vector<std::string>& vars) {
    json j;
    switch (c.kind) {
        case ConstraintKind::UpperBound:
            j["lhs"] = vars[c.a];
            j["op"] = "<=";
            break;
        case ConstraintKind::LowerBound:
            j["lhs"] = vars[c.a];
            j["op"] = ">=";
            break;
        case ConstraintKind::DiffLeq:
            j["lhs"] = vars[c.a] + "-" + vars[c.b];
            j["op"] = "<=";
            break;
        case ConstraintKind::SumLeq:
            j["lhs"] = vars[c.a] + "+" + vars[c.b];
            j["op"] = "<=";
            break;
        case ConstraintKind::NegSumLeq:
            j["lhs"] = "-" + vars[c.a] + "-" + vars[c.b];
            j["op"] = "<=";
            break;
    }
    j["rhs"] = to_string(c.c);
    return j;
}

struct Options {
    std::string file;
    std::string format = "text";
    bool show_matrix = false;
    std::string loc_filter;
};

int run_analyze(const Options& opt, bool quiet) {
    Program p = parse(read_file(opt.file));
    AnalysisResult r = analyze(p);
    std::vector<AssertOutcome> asserts = check_asserts(p, r);

    long only_loc = -1;
    if (!opt.loc_filter.empty()) {
        std::string digits = opt.loc_filter;
        if (!digits.empty() && digits[0] == 'l') digits = digits.substr(1);
        try {
            only_loc = std::stol(digits);
        } catch (const std::exception&) {
            throw std::runtime_error("bad --loc value: " + opt.loc_filter);
        }
        if (only_loc < 0 || static_cast<std::size_t>(only_loc) >= p.n_locations) {
            throw std::runtime_error("no such location: " + opt.loc_filter);
        }
    }

    const bool all_proved = std::all_of(asserts.begin(), asserts.end(), [](const auto& a) {
        return a.status == AssertStatus::Proved;
    });

    if (opt.format == "json") {
        json out;
        out["locations"] = json::array();
        for (std::size_t l = 0; l < p.n_locations; ++l) {
            if (only_loc >= 0 && static_cast<std::size_t>(only_loc) != l) continue;
            const Octagon closed = strong_closure(r.invariants[l]);
            json entry;
            entry["location"] = "l" + std::to_string(l);
            entry["bottom"] = closed.is_bottom();
            entry["constraints"] = json::array();
            if (!closed.is_bottom()) {
                for (const OctConstraint& c : to_constraints(closed.dbm())) {
                    entry["constraints"].push_back(constraint_json(c, p.vars));
                }
            }
            out["locations"].push_back(std::move(entry));
        }
        out["asserts"] = json::array();
        for (const AssertOutcome& a : asserts) {
            out["asserts"].push_back(
                {{"location", "l" + std::to_string(a.location)},
                 {"guard", a.guard},
                 {"status", a.status == AssertStatus::Proved ? "proved" : "unknown"}});
        }
        std::cout << out.dump(2) << '\n';
    } else {
        if (!quiet) {
            for (std::size_t l = 0; l < p.n_locations; ++l) {
                if (only_loc >= 0 && static_cast<std::size_t>(only_loc) != l) continue;
                const Octagon closed = strong_closure(r.invariants[l]);
                std::cout << 'l' << l << ": ";
                if (closed.is_bottom()) {
                    std::cout << "bottom\n";
                } else {
                    std::cout << render_set(to_constraints(closed.dbm()), p.vars) << '\n';
                }
                if (opt.show_matrix && !r.invariants[l].is_bottom()) {
                    std::cout << r.invariants[l].dbm().matrix().dump();
                }
            }
        }
        for (const AssertOutcome& a : asserts) {
            std::cout << "assert l" << a.location << ": " << a.guard << " -- "
                      << (a.status == AssertStatus::Proved ? "proved" : "unknown") << '\n';
        }
    }
    return all_proved ? 0 : 1;
}

int run_dump(const Options& opt) {
    Program p = parse(read_file(opt.file));
    std::cout << pretty(p);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"octagon-domain static analyzer for a toy imperative language"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool with_output_flags) {
        cmd->add_option("file", opt.file, "source program (.oct)")->required();
        if (with_output_flags) {
            cmd->add_option("--format", opt.format, "output format")
                ->check(CLI::IsMember({"text", "json"}));
            cmd->add_flag("--show-matrix", opt.show_matrix,
                          "also dump the raw DBM of each location");
            cmd->add_option("--loc", opt.loc_filter, "only report location l<k>");
        }
    };

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "infer and print invariants plus assert verdicts");
    add_common(analyze_cmd, true);
    CLI::App* check_cmd = app.add_subcommand("check", "report assert verdicts only");
    add_common(check_cmd, false);
    CLI::App* dump_cmd = app.add_subcommand("dump", "parse and pretty-print the program");
    add_common(dump_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (analyze_cmd->parsed()) return run_analyze(opt, false);
        if (check_cmd->parsed()) return run_analyze(opt, true);
        return run_dump(opt);
    } catch (const oct::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
