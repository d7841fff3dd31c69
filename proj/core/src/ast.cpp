#include "oct/ast.hpp"

namespace oct {

ExprPtr make_const(Rat v) { return std::make_shared<Expr>(Expr{ConstExpr{std::move(v)}}); }
ExprPtr make_var(VarId v) { return std::make_shared<Expr>(Expr{VarExpr{v}}); }
ExprPtr make_neg(ExprPtr e) { return std::make_shared<Expr>(Expr{NegExpr{std::move(e)}}); }
ExprPtr make_add(ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{AddExpr{std::move(a), std::move(b)}});
}
ExprPtr make_sub(ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{SubExpr{std::move(a), std::move(b)}});
}
ExprPtr make_mul_const(Rat k, ExprPtr e) {
    return std::make_shared<Expr>(Expr{MulConstExpr{std::move(k), std::move(e)}});
}
ExprPtr make_mul(ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{MulExpr{std::move(a), std::move(b)}});
}
ExprPtr make_random() { return std::make_shared<Expr>(Expr{RandomExpr{}}); }

GuardPtr make_atom(ExprPtr lhs, CmpOp op, ExprPtr rhs) {
    return std::make_shared<Guard>(Guard{AtomGuard{std::move(lhs), op, std::move(rhs)}});
}
GuardPtr make_and(GuardPtr a, GuardPtr b) {
    return std::make_shared<Guard>(Guard{AndGuard{std::move(a), std::move(b)}});
}
GuardPtr make_or(GuardPtr a, GuardPtr b) {
    return std::make_shared<Guard>(Guard{OrGuard{std::move(a), std::move(b)}});
}
GuardPtr make_not(GuardPtr g) { return std::make_shared<Guard>(Guard{NotGuard{std::move(g)}}); }
GuardPtr make_nondet() { return std::make_shared<Guard>(Guard{NonDetGuard{}}); }

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, ConstExpr>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, VarExpr>) {
                return x.var == y.var;
            } else if constexpr (std::is_same_v<T, NegExpr>) {
                return structurally_equal(*x.arg, *y.arg);
            } else if constexpr (std::is_same_v<T, AddExpr> || std::is_same_v<T, SubExpr> ||
                                 std::is_same_v<T, MulExpr>) {
                return structurally_equal(*x.lhs, *y.lhs) && structurally_equal(*x.rhs, *y.rhs);
            } else if constexpr (std::is_same_v<T, MulConstExpr>) {
                return x.factor == y.factor && structurally_equal(*x.arg, *y.arg);
            } else {
                return true;  // RandomExpr
            }
        },
        a.node);
}

bool structurally_equal(const Guard& a, const Guard& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, AtomGuard>) {
                return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                       structurally_equal(*x.rhs, *y.rhs);
            } else if constexpr (std::is_same_v<T, AndGuard> || std::is_same_v<T, OrGuard>) {
                return structurally_equal(*x.lhs, *y.lhs) && structurally_equal(*x.rhs, *y.rhs);
            } else if constexpr (std::is_same_v<T, NotGuard>) {
                return structurally_equal(*x.arg, *y.arg);
            } else {
                return true;  // NonDetGuard
            }
        },
        a.node);
}

std::size_t Program::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) return i;
    }
    return static_cast<std::size_t>(-1);
}

namespace {

struct Labeler {
    LocationId next = 0;

    LocationId fresh() { return next++; }

    void label_block(Block& b, LocationId entry) {
        LocationId point = entry;
        for (std::size_t i = 0; i < b.size(); ++i) {
            Stmt& s = b[i];
            if (auto* a = std::get_if<AssertStmt>(&s.node)) {
                a->check_loc = point;
            }
            if (auto* f = std::get_if<IfStmt>(&s.node)) {
                f->then_entry = fresh();
                label_block(f->then_body, f->then_entry);
                if (f->has_else) {
                    f->else_entry = fresh();
                    label_block(f->else_body, f->else_entry);
                }
            } else if (auto* w = std::get_if<WhileStmt>(&s.node)) {
                w->body_entry = fresh();
                label_block(w->body, w->body_entry);
            }
            const bool in_run = std::holds_alternative<AssignStmt>(s.node) && i + 1 < b.size() &&
                                std::holds_alternative<AssignStmt>(b[i + 1].node);
            if (in_run) {
                s.after_loc = kNoLoc;
            } else {
                s.after_loc = fresh();
                point = s.after_loc;
            }
        }
    }
};

bool stmts_equal(const Block& a, const Block& b);

bool stmt_equal(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, AssignStmt>) {
                return x.var == y.var && structurally_equal(*x.value, *y.value);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                return x.has_else == y.has_else && structurally_equal(*x.cond, *y.cond) &&
                       stmts_equal(x.then_body, y.then_body) &&
                       stmts_equal(x.else_body, y.else_body);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                return structurally_equal(*x.cond, *y.cond) && stmts_equal(x.body, y.body);
            } else {
                return structurally_equal(*x.cond, *y.cond);  // AssertStmt
            }
        },
        a.node);
}

bool stmts_equal(const Block& a, const Block& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!stmt_equal(a[i], b[i])) return false;
    }
    return true;
}

}  // namespace

void assign_locations(Program& p) {
    Labeler lab;
    p.entry = lab.fresh();
    lab.label_block(p.body, p.entry);
    p.n_locations = lab.next;
}

bool structurally_equal(const Program& a, const Program& b) {
    return a.vars == b.vars && stmts_equal(a.body, b.body);
}

}  // namespace oct
