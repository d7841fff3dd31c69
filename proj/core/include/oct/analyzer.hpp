#pragma once

#include <map>
#include <vector>

#include "oct/ast.hpp"
#include "oct/transfer.hpp"

namespace oct {

struct AnalyzerOptions {
    StrictPolicy strictness = StrictPolicy::IntegerTighten;
};

struct LoopInfo {
    // Head states computed until two consecutive ones were equal, maximised
    // over re-analyses when the loop is nested. Bounded by (2N)^2 + 2.
    std::size_t iterations = 0;
};

// Invariant per location plus per-loop iteration counts, keyed by the loop
// body's entry location.
struct AnalysisResult {
    std::vector<Octagon> invariants;
    std::map<LocationId, LoopInfo> loops;
};

// Forward abstract execution: the entry location gets top, assignments and
// tests are pushed through the transfer functions, branch merges join the
// strong closures, and loop heads are stabilized by widening. Loop-head
// accumulators are kept unclosed between widening steps; closures are taken
// on copies only.
AnalysisResult analyze(const Program& p, const AnalyzerOptions& opts = {});

enum class AssertStatus { Proved, Unknown };

struct AssertOutcome {
    LocationId location;   // location whose invariant the assert was checked against
    std::string guard;     // source rendering of the asserted condition
    AssertStatus status;
};

// An assert is proved when the location invariant meets the negated
// condition to bottom; the analysis over-approximates, so the alternative
// is "unknown", never "disproved".
std::vector<AssertOutcome> check_asserts(const Program& p, const AnalysisResult& r,
                                         const AnalyzerOptions& opts = {});

}  // namespace oct
