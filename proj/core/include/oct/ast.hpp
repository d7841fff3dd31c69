#pragma once

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "oct/constraint.hpp"
#include "oct/rational.hpp"

namespace oct {

using LocationId = std::size_t;
inline constexpr LocationId kNoLoc = std::numeric_limits<LocationId>::max();

// ---- Expressions -----------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct ConstExpr {
    Rat value;
};
struct VarExpr {
    VarId var;
};
struct NegExpr {
    ExprPtr arg;
};
struct AddExpr {
    ExprPtr lhs, rhs;
};
struct SubExpr {
    ExprPtr lhs, rhs;
};
struct MulConstExpr {
    Rat factor;
    ExprPtr arg;
};
// Product of two non-constant expressions. Accepted by the parser but
// opaque to the analysis (evaluates to an unbounded range).
struct MulExpr {
    ExprPtr lhs, rhs;
};
// Nondeterministic value (the language's `rand`).
struct RandomExpr {};

struct Expr {
    std::variant<ConstExpr, VarExpr, NegExpr, AddExpr, SubExpr, MulConstExpr, MulExpr, RandomExpr>
        node;
};

ExprPtr make_const(Rat v);
ExprPtr make_var(VarId v);
ExprPtr make_neg(ExprPtr e);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_mul_const(Rat k, ExprPtr e);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_random();

bool structurally_equal(const Expr& a, const Expr& b);

// ---- Guards ----------------------------------------------------------------

enum class CmpOp { Le, Lt, Ge, Gt, Eq, Ne };

struct Guard;
using GuardPtr = std::shared_ptr<const Guard>;

struct AtomGuard {
    ExprPtr lhs;
    CmpOp op;
    ExprPtr rhs;
};
struct AndGuard {
    GuardPtr lhs, rhs;
};
struct OrGuard {
    GuardPtr lhs, rhs;
};
struct NotGuard {
    GuardPtr arg;
};
// The `?` guard: both branches are possible.
struct NonDetGuard {};

struct Guard {
    std::variant<AtomGuard, AndGuard, OrGuard, NotGuard, NonDetGuard> node;
};

GuardPtr make_atom(ExprPtr lhs, CmpOp op, ExprPtr rhs);
GuardPtr make_and(GuardPtr a, GuardPtr b);
GuardPtr make_or(GuardPtr a, GuardPtr b);
GuardPtr make_not(GuardPtr g);
GuardPtr make_nondet();

bool structurally_equal(const Guard& a, const Guard& b);

// ---- Statements and programs -----------------------------------------------

struct Stmt;
using Block = std::vector<Stmt>;

struct AssignStmt {
    VarId var;
    ExprPtr value;
};
struct IfStmt {
    GuardPtr cond;
    Block then_body;
    Block else_body;  // empty when the statement has no else branch
    bool has_else = false;
    LocationId then_entry = kNoLoc;
    LocationId else_entry = kNoLoc;
};
struct WhileStmt {
    GuardPtr cond;
    Block body;
    LocationId body_entry = kNoLoc;
};
struct AssertStmt {
    GuardPtr cond;
    LocationId check_loc = kNoLoc;  // location whose invariant the assert is checked against
};

struct Stmt {
    std::variant<AssignStmt, IfStmt, WhileStmt, AssertStmt> node;
    // Location after this statement. Within a run of consecutive assignments
    // only the last one carries a location; see assign_locations.
    LocationId after_loc = kNoLoc;
};

struct Program {
    std::vector<std::string> vars;
    Block body;
    LocationId entry = 0;
    std::size_t n_locations = 0;

    std::size_t var_count() const { return vars.size(); }
    // Index of a declared variable, or npos.
    std::size_t var_index(std::string_view name) const;
};

// Assigns dense location labels in source order: the program entry, a label
// after every statement group (a maximal run of consecutive assignments
// counts as one group), and labels at the start of then/else branches and
// loop bodies. Fills after_loc / *_entry / check_loc fields and
// n_locations. parse() calls this; programs built directly from AST nodes
// must call it themselves.
void assign_locations(Program& p);

bool structurally_equal(const Program& a, const Program& b);

}  // namespace oct
