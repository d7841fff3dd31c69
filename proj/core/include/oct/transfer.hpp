#pragma once

#include "oct/ast.hpp"
#include "oct/octagon.hpp"

namespace oct {

// How strict comparisons (<, >, and the negation of non-strict ones) are
// turned into the non-strict bounds a DBM can carry.
//
// IntegerTighten assumes integer-valued variables and converts e < c into
// e <= ceil(c)-1 (respectively e > c into e >= floor(c)+1); this is what
// lets asserts at exact bound boundaries be discharged. RationalRelax just
// drops strictness (sound over Q, strictly weaker).
enum class StrictPolicy { IntegerTighten, RationalRelax };

// Meet with a single octagonal constraint: min-install at the designated
// cells, then an emptiness test. Exact.
Octagon guard_constraint(const Octagon& m, const OctConstraint& c);

// Transfer function of a test. Atoms that match the octagonal shapes
// (after scaling unit coefficients) are installed exactly; conjunction maps
// to meet, disjunction to join of strong closures, negation is pushed to
// the atoms; anything else (nondeterministic or non-octagonal) leaves the
// argument unchanged.
Octagon guard(const Octagon& m, const Guard& g, StrictPolicy policy);

// Transfer function of the negated test, used on else branches and loop
// exits.
Octagon guard_negated(const Octagon& m, const Guard& g, StrictPolicy policy);

// Transfer function of v <- e. The forms v <- v + c and v <- w + c are
// exact translations; everything else falls back to interval arithmetic
// over the projections, keeping the closure-implied constraints between
// the other variables.
Octagon assign(const Octagon& m, VarId v, const Expr& e);

// Sound range of e over the octagon. Requires a non-empty argument.
Interval interval_eval(const Expr& e, const Octagon& m);

}  // namespace oct
