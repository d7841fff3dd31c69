#include "oct/pretty.hpp"

#include <sstream>

namespace oct {

namespace {

// Precedence climbing keeps the output minimally parenthesized while still
// reparsing to the same tree: additive 1, multiplicative 2, unary 3.
void print_expr(std::ostream& out, const Expr& e, const std::vector<std::string>& vars,
                int parent_prec) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ConstExpr>) {
                if (n.value < 0) {
                    // Negative literals print as unary minus.
                    if (parent_prec > 1) out << '(';
                    out << '-' << to_string(Rat(-n.value));
                    if (parent_prec > 1) out << ')';
                } else {
                    out << to_string(n.value);
                }
            } else if constexpr (std::is_same_v<T, VarExpr>) {
                out << vars[n.var];
            } else if constexpr (std::is_same_v<T, NegExpr>) {
                if (parent_prec > 1) out << '(';
                out << '-';
                print_expr(out, *n.arg, vars, 3);
                if (parent_prec > 1) out << ')';
            } else if constexpr (std::is_same_v<T, AddExpr>) {
                if (parent_prec > 1) out << '(';
                print_expr(out, *n.lhs, vars, 1);
                out << " + ";
                print_expr(out, *n.rhs, vars, 2);
                if (parent_prec > 1) out << ')';
            } else if constexpr (std::is_same_v<T, SubExpr>) {
                if (parent_prec > 1) out << '(';
                print_expr(out, *n.lhs, vars, 1);
                out << " - ";
                print_expr(out, *n.rhs, vars, 2);
                if (parent_prec > 1) out << ')';
            } else if constexpr (std::is_same_v<T, MulConstExpr>) {
                if (parent_prec > 2) out << '(';
                if (n.factor < 0) {
                    out << "(-" << to_string(Rat(-n.factor)) << ")";
                } else {
                    out << to_string(n.factor);
                }
                out << " * ";
                print_expr(out, *n.arg, vars, 3);
                if (parent_prec > 2) out << ')';
            } else if constexpr (std::is_same_v<T, MulExpr>) {
                if (parent_prec > 2) out << '(';
                print_expr(out, *n.lhs, vars, 2);
                out << " * ";
                print_expr(out, *n.rhs, vars, 3);
                if (parent_prec > 2) out << ')';
            } else {
                out << "rand";
            }
        },
        e.node);
}

const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Le: return "<=";
        case CmpOp::Lt: return "<";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

// Guard precedence: or 1, and 2, not 3.
void print_guard(std::ostream& out, const Guard& g, const std::vector<std::string>& vars,
                 int parent_prec) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AtomGuard>) {
                print_expr(out, *n.lhs, vars, 0);
                out << ' ' << cmp_text(n.op) << ' ';
                print_expr(out, *n.rhs, vars, 0);
            } else if constexpr (std::is_same_v<T, AndGuard>) {
                if (parent_prec > 2) out << '(';
                print_guard(out, *n.lhs, vars, 2);
                out << " and ";
                print_guard(out, *n.rhs, vars, 2);
                if (parent_prec > 2) out << ')';
            } else if constexpr (std::is_same_v<T, OrGuard>) {
                if (parent_prec > 1) out << '(';
                print_guard(out, *n.lhs, vars, 1);
                out << " or ";
                print_guard(out, *n.rhs, vars, 1);
                if (parent_prec > 1) out << ')';
            } else if constexpr (std::is_same_v<T, NotGuard>) {
                out << "not ";
                print_guard(out, *n.arg, vars, 3);
            } else {
                out << '?';
            }
        },
        g.node);
}

struct Printer {
    std::ostringstream out;
    const std::vector<std::string>& vars;
    int indent = 0;

    void line_start() {
        for (int i = 0; i < indent; ++i) out << "  ";
    }

    void loc(LocationId l) {
        if (l != kNoLoc) out << " (* l" << l << " *)";
    }

    void block(const Block& b) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            stmt(b[i]);
            if (i + 1 < b.size()) out << ';';
            out << '\n';
        }
    }

    void stmt(const Stmt& s) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                    line_start();
                    out << vars[n.var] << " := ";
                    print_expr(out, *n.value, vars, 0);
                    loc(s.after_loc);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    line_start();
                    out << "if ";
                    print_guard(out, *n.cond, vars, 0);
                    out << " then";
                    loc(n.then_entry);
                    out << '\n';
                    ++indent;
                    block(n.then_body);
                    --indent;
                    if (n.has_else) {
                        line_start();
                        out << "else";
                        loc(n.else_entry);
                        out << '\n';
                        ++indent;
                        block(n.else_body);
                        --indent;
                    }
                    line_start();
                    out << "fi";
                    loc(s.after_loc);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    line_start();
                    out << "while ";
                    print_guard(out, *n.cond, vars, 0);
                    out << " do";
                    loc(n.body_entry);
                    out << '\n';
                    ++indent;
                    block(n.body);
                    --indent;
                    line_start();
                    out << "done";
                    loc(s.after_loc);
                } else {
                    line_start();
                    out << "assert ";
                    print_guard(out, *n.cond, vars, 0);
                    loc(s.after_loc);
                }
            },
            s.node);
    }
};

}  // namespace

std::string pretty(const Expr& e, const std::vector<std::string>& vars) {
    std::ostringstream out;
    print_expr(out, e, vars, 0);
    return out.str();
}

std::string pretty(const Guard& g, const std::vector<std::string>& vars) {
    std::ostringstream out;
    print_guard(out, g, vars, 0);
    return out.str();
}

std::string pretty(const Program& p) {
    Printer pr{{}, p.vars};
    pr.out << "var ";
    for (std::size_t i = 0; i < p.vars.size(); ++i) {
        if (i) pr.out << ", ";
        pr.out << p.vars[i];
    }
    pr.out << ";\n";
    pr.block(p.body);
    return pr.out.str();
}

}  // namespace oct
