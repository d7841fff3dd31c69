#include "oct/parser.hpp"

#include <cctype>
#include <optional>

namespace oct {

namespace {

enum class Tok {
    Ident,
    Number,
    KwVar,
    KwIf,
    KwThen,
    KwElse,
    KwFi,
    KwWhile,
    KwDo,
    KwDone,
    KwAssert,
    KwRand,
    KwAnd,
    KwOr,
    KwNot,
    Assign,  // :=
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
    Semi,
    Question,
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    Rat number;
    int line;
    int column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_trivia();
        const int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Tok::End, "", {}, line, col};
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                word.push_back(advance());
            }
            return {keyword(word), word, {}, line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                digits.push_back(advance());
            }
            Rat value{mpz_class(digits)};
            // A '/' directly between digit runs is a rational literal.
            if (pos_ < src_.size() && src_[pos_] == '/') {
                std::size_t save_pos = pos_;
                int save_line = line_, save_col = col_;
                advance();
                std::string den;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    den.push_back(advance());
                }
                if (den.empty() || mpz_class(den) == 0) {
                    pos_ = save_pos;
                    line_ = save_line;
                    col_ = save_col;
                } else {
                    value = Rat(mpz_class(digits), mpz_class(den));
                    value.canonicalize();
                }
            }
            return {Tok::Number, digits, value, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Tok::Plus, "+", {}, line, col};
            case '-': return {Tok::Minus, "-", {}, line, col};
            case '*': return {Tok::Star, "*", {}, line, col};
            case '(': return {Tok::LParen, "(", {}, line, col};
            case ')': return {Tok::RParen, ")", {}, line, col};
            case ',': return {Tok::Comma, ",", {}, line, col};
            case ';': return {Tok::Semi, ";", {}, line, col};
            case '?': return {Tok::Question, "?", {}, line, col};
            case ':':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    advance();
                    return {Tok::Assign, ":=", {}, line, col};
                }
                throw ParseError("expected ':='", line, col);
            case '<':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    advance();
                    return {Tok::Le, "<=", {}, line, col};
                }
                return {Tok::Lt, "<", {}, line, col};
            case '>':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    advance();
                    return {Tok::Ge, ">=", {}, line, col};
                }
                return {Tok::Gt, ">", {}, line, col};
            case '=': return {Tok::Eq, "=", {}, line, col};
            case '!':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    advance();
                    return {Tok::Ne, "!=", {}, line, col};
                }
                throw ParseError("expected '!='", line, col);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

  private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == '(' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                const int line = line_, col = col_;
                advance();
                advance();
                while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == ')')) {
                    advance();
                }
                if (pos_ + 1 >= src_.size()) throw ParseError("unterminated comment", line, col);
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    static Tok keyword(const std::string& w) {
        if (w == "var") return Tok::KwVar;
        if (w == "if") return Tok::KwIf;
        if (w == "then") return Tok::KwThen;
        if (w == "else") return Tok::KwElse;
        if (w == "fi") return Tok::KwFi;
        if (w == "while") return Tok::KwWhile;
        if (w == "do") return Tok::KwDo;
        if (w == "done") return Tok::KwDone;
        if (w == "assert") return Tok::KwAssert;
        if (w == "rand") return Tok::KwRand;
        if (w == "and") return Tok::KwAnd;
        if (w == "or") return Tok::KwOr;
        if (w == "not") return Tok::KwNot;
        return Tok::Ident;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src) { shift(); }

    Program program() {
        expect(Tok::KwVar, "expected 'var'");
        Program p;
        p.vars.push_back(ident());
        while (accept(Tok::Comma)) p.vars.push_back(ident());
        for (std::size_t i = 0; i < p.vars.size(); ++i) {
            for (std::size_t j = i + 1; j < p.vars.size(); ++j) {
                if (p.vars[i] == p.vars[j]) {
                    throw ParseError("duplicate variable '" + p.vars[i] + "'", cur_.line,
                                     cur_.column);
                }
            }
        }
        expect(Tok::Semi, "expected ';' after variable declarations");
        vars_ = &p.vars;
        p.body = block();
        expect(Tok::End, "expected end of input");
        assign_locations(p);
        return p;
    }

  private:
    Block block() {
        Block b;
        b.push_back(stmt());
        while (accept(Tok::Semi)) b.push_back(stmt());
        return b;
    }

    Stmt stmt() {
        if (accept(Tok::KwIf)) {
            IfStmt s;
            s.cond = guard();
            expect(Tok::KwThen, "expected 'then'");
            s.then_body = block();
            if (accept(Tok::KwElse)) {
                s.has_else = true;
                s.else_body = block();
            }
            expect(Tok::KwFi, "expected 'fi'");
            return {std::move(s), kNoLoc};
        }
        if (accept(Tok::KwWhile)) {
            WhileStmt s;
            s.cond = guard();
            expect(Tok::KwDo, "expected 'do'");
            s.body = block();
            expect(Tok::KwDone, "expected 'done'");
            return {std::move(s), kNoLoc};
        }
        if (accept(Tok::KwAssert)) {
            AssertStmt s;
            s.cond = guard();
            return {std::move(s), kNoLoc};
        }
        if (cur_.kind == Tok::Ident) {
            VarId v = var_ref();
            expect(Tok::Assign, "expected ':='");
            return {AssignStmt{v, expr()}, kNoLoc};
        }
        throw ParseError("expected statement", cur_.line, cur_.column);
    }

    GuardPtr guard() {
        GuardPtr g = guard_and();
        while (accept(Tok::KwOr)) g = make_or(std::move(g), guard_and());
        return g;
    }

    GuardPtr guard_and() {
        GuardPtr g = guard_not();
        while (accept(Tok::KwAnd)) g = make_and(std::move(g), guard_not());
        return g;
    }

    GuardPtr guard_not() {
        if (accept(Tok::KwNot)) return make_not(guard_not());
        if (accept(Tok::Question)) return make_nondet();
        if (cur_.kind == Tok::LParen && paren_is_guard()) {
            shift();
            GuardPtr g = guard();
            expect(Tok::RParen, "expected ')'");
            return g;
        }
        ExprPtr lhs = expr();
        CmpOp op;
        switch (cur_.kind) {
            case Tok::Le: op = CmpOp::Le; break;
            case Tok::Lt: op = CmpOp::Lt; break;
            case Tok::Ge: op = CmpOp::Ge; break;
            case Tok::Gt: op = CmpOp::Gt; break;
            case Tok::Eq: op = CmpOp::Eq; break;
            case Tok::Ne: op = CmpOp::Ne; break;
            default: throw ParseError("expected comparison operator", cur_.line, cur_.column);
        }
        shift();
        return make_atom(std::move(lhs), op, expr());
    }

    // cur_ is '('. Distinguishes a parenthesized guard "(g1 and g2)" from a
    // parenthesized arithmetic operand "(x + 1) <= y" by scanning to the
    // matching ')': a boolean operator or comparison at depth one means the
    // parens enclose a guard, arithmetic continuing after the ')' means they
    // belong to an expression.
    bool paren_is_guard() {
        std::size_t depth = 1;
        for (std::size_t i = 0;; ++i) {
            const Token& t = peek(i);
            if (t.kind == Tok::End) return false;
            if (t.kind == Tok::LParen) {
                ++depth;
            } else if (t.kind == Tok::RParen) {
                if (--depth == 0) {
                    const Token& after = peek(i + 1);
                    return !(after.kind == Tok::Le || after.kind == Tok::Lt ||
                             after.kind == Tok::Ge || after.kind == Tok::Gt ||
                             after.kind == Tok::Eq || after.kind == Tok::Ne ||
                             after.kind == Tok::Plus || after.kind == Tok::Minus ||
                             after.kind == Tok::Star);
                }
            } else if (depth == 1 &&
                       (t.kind == Tok::KwAnd || t.kind == Tok::KwOr || t.kind == Tok::KwNot ||
                        t.kind == Tok::Question || t.kind == Tok::Le || t.kind == Tok::Lt ||
                        t.kind == Tok::Ge || t.kind == Tok::Gt || t.kind == Tok::Eq ||
                        t.kind == Tok::Ne)) {
                return true;
            }
        }
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            if (accept(Tok::Plus)) {
                e = make_add(std::move(e), term());
            } else if (accept(Tok::Minus)) {
                e = make_sub(std::move(e), term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (accept(Tok::Star)) {
            ExprPtr rhs = factor();
            // Fold constant factors so k*x and x*k stay affine.
            if (const auto* c = std::get_if<ConstExpr>(&e->node)) {
                e = make_mul_const(c->value, std::move(rhs));
            } else if (const auto* c2 = std::get_if<ConstExpr>(&rhs->node)) {
                e = make_mul_const(c2->value, std::move(e));
            } else {
                e = make_mul(std::move(e), std::move(rhs));
            }
        }
        return e;
    }

    ExprPtr factor() {
        if (accept(Tok::Minus)) {
            ExprPtr f = factor();
            // Fold a negated literal into the constant so -5 and 5 have the
            // same shape.
            if (const auto* c = std::get_if<ConstExpr>(&f->node)) {
                return make_const(Rat(-c->value));
            }
            return make_neg(std::move(f));
        }
        if (accept(Tok::KwRand)) return make_random();
        if (cur_.kind == Tok::Number) {
            Rat v = cur_.number;
            shift();
            return make_const(std::move(v));
        }
        if (cur_.kind == Tok::Ident) return make_var(var_ref());
        if (accept(Tok::LParen)) {
            ExprPtr e = expr();
            expect(Tok::RParen, "expected ')'");
            return e;
        }
        throw ParseError("expected expression", cur_.line, cur_.column);
    }

    VarId var_ref() {
        const std::string name = cur_.text;
        const int line = cur_.line, col = cur_.column;
        expect(Tok::Ident, "expected variable");
        std::size_t idx = static_cast<std::size_t>(-1);
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            if ((*vars_)[i] == name) idx = i;
        }
        if (idx == static_cast<std::size_t>(-1)) {
            throw ParseError("use of undeclared variable '" + name + "'", line, col);
        }
        return idx;
    }

    std::string ident() {
        if (cur_.kind != Tok::Ident) {
            throw ParseError("expected identifier", cur_.line, cur_.column);
        }
        std::string name = cur_.text;
        shift();
        return name;
    }

    const Token& peek(std::size_t i) {
        while (pending_.size() <= i) pending_.push_back(lexer_.next());
        return pending_[i];
    }

    void shift() {
        if (!pending_.empty()) {
            cur_ = pending_.front();
            pending_.erase(pending_.begin());
        } else {
            cur_ = lexer_.next();
        }
    }

    bool accept(Tok k) {
        if (cur_.kind != k) return false;
        shift();
        return true;
    }

    void expect(Tok k, const std::string& msg) {
        if (cur_.kind != k) throw ParseError(msg, cur_.line, cur_.column);
        shift();
    }

    Lexer lexer_;
    Token cur_{};
    std::vector<Token> pending_;
    const std::vector<std::string>* vars_ = nullptr;
};

}  // namespace

Program parse(std::string_view source) { return Parser(source).program(); }

}  // namespace oct
