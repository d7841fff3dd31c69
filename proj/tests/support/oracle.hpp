#pragma once

// Brute-force reference implementations used only by the test suites:
// grid-based concretization, exhaustive strong-closure saturation, and a
// concrete interpreter for the toy language. Nothing here is reachable from
// the shipped library.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "oct/analyzer.hpp"
#include "oct/octagon.hpp"

namespace oct::testing {

using Point = std::vector<Rat>;

struct GridRange {
    Rat lo, hi, step;
};

// Finite rectangular grid, one range per variable; enumeration order is
// row-major and deterministic.
struct GridBox {
    std::vector<GridRange> ranges;

    static GridBox uniform(std::size_t n, Rat lo, Rat hi, Rat step) {
        return {std::vector<GridRange>(n, GridRange{std::move(lo), std::move(hi),
                                                    std::move(step)})};
    }
};

std::vector<Point> grid_points(const GridBox& box);

// Membership in the V-domain of a plain DBM; the point has one coordinate
// per matrix index.
bool in_v_domain(const Dbm& m, const Point& p);

// Membership in the octagon: the point has one coordinate per program
// variable and is doubled to (s0, -s0, ...) internally.
bool in_octagon(const CoherentDbm& m, const Point& p);
bool in_octagon(const Octagon& m, const Point& p);

// All grid points inside the octagon; empty for Bottom.
std::vector<Point> concretize(const Octagon& m, const GridBox& box);

// Reference strong closure: alternate the full shortest-path closure with
// exhaustive application of the unary-combination rule until nothing
// changes. Requires a non-empty argument. Independent of the production
// pivot schedule.
CoherentDbm saturate_naive(const CoherentDbm& m);

// ---- Concrete interpreter ----------------------------------------------

struct InterpConfig {
    // Values substituted for rand and for variables without a fixed initial
    // value.
    GridRange values{Rat(0), Rat(0), Rat(1)};
    // Per-variable fixed initial value; nullopt means every value of
    // `values` is tried.
    std::vector<std::optional<Rat>> initial;
    // Exploration budget (worklist pops); exceeding it sets `truncated`.
    std::size_t fuel = 200000;
};

struct InterpResult {
    std::set<std::pair<LocationId, Point>> visited;
    bool truncated = false;
};

// Exhaustively explores every nondeterministic branch and rand value,
// recording the variable state at every location label it passes. rand is
// supported as the whole right-hand side of an assignment.
InterpResult interpret(const Program& p, const InterpConfig& cfg);

}  // namespace oct::testing
