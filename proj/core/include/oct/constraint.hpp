#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oct/rational.hpp"

namespace oct {

using VarId = std::size_t;

enum class ConstraintKind {
    DiffLeq,    // a - b <= c
    SumLeq,     // a + b <= c
    NegSumLeq,  // -a - b <= c
    UpperBound, // a <= c
    LowerBound, // a >= c
};

// One octagonal constraint over program variables. Two-variable kinds
// require a != b.
struct OctConstraint {
    ConstraintKind kind;
    VarId a = 0;
    VarId b = 0;
    Rat c;

    static OctConstraint diff(VarId a, VarId b, Rat c) {
        return {ConstraintKind::DiffLeq, a, b, std::move(c)};
    }
    // Sums are symmetric in their variables; keep them ordered.
    static OctConstraint sum(VarId a, VarId b, Rat c) {
        return {ConstraintKind::SumLeq, std::min(a, b), std::max(a, b), std::move(c)};
    }
    static OctConstraint neg_sum(VarId a, VarId b, Rat c) {
        return {ConstraintKind::NegSumLeq, std::min(a, b), std::max(a, b), std::move(c)};
    }
    static OctConstraint upper(VarId v, Rat c) {
        return {ConstraintKind::UpperBound, v, v, std::move(c)};
    }
    static OctConstraint lower(VarId v, Rat c) {
        return {ConstraintKind::LowerBound, v, v, std::move(c)};
    }

    bool is_unary() const {
        return kind == ConstraintKind::UpperBound || kind == ConstraintKind::LowerBound;
    }

    friend bool operator==(const OctConstraint&, const OctConstraint&) = default;

    // Canonical text: "v0 + v1 <= 3", "-v0 - v2 <= -1/2", "v1 <= 4", "v1 >= 0".
    std::string to_string() const;
};

// Deterministic rendering order: unary constraints first (by variable,
// upper before lower), then binary ones by (min var, max var, kind).
bool constraint_order(const OctConstraint& x, const OctConstraint& y);

// Parses one constraint per line; '#' starts a comment, blank lines are
// skipped. Grammar: `[-]v<i> [+|-] v<j> <= c`, `v<i> <= c`, `v<i> >= c`.
// Throws std::invalid_argument on malformed input.
std::vector<OctConstraint> parse_constraints(std::string_view text);

std::string render_constraints(const std::vector<OctConstraint>& cs);

}  // namespace oct
