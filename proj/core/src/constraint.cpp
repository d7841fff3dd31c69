#include "oct/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace oct {

std::string OctConstraint::to_string() const {
    std::string s;
    switch (kind) {
        case ConstraintKind::DiffLeq:
            s = "v" + std::to_string(a) + " - v" + std::to_string(b) + " <= ";
            break;
        case ConstraintKind::SumLeq:
            s = "v" + std::to_string(a) + " + v" + std::to_string(b) + " <= ";
            break;
        case ConstraintKind::NegSumLeq:
            s = "-v" + std::to_string(a) + " - v" + std::to_string(b) + " <= ";
            break;
        case ConstraintKind::UpperBound:
            s = "v" + std::to_string(a) + " <= ";
            break;
        case ConstraintKind::LowerBound:
            s = "v" + std::to_string(a) + " >= ";
            break;
    }
    return s + oct::to_string(c);
}

bool constraint_order(const OctConstraint& x, const OctConstraint& y) {
    auto rank = [](const OctConstraint& k) {
        switch (k.kind) {
            case ConstraintKind::UpperBound: return 0;
            case ConstraintKind::LowerBound: return 1;
            case ConstraintKind::DiffLeq: return 2;
            case ConstraintKind::SumLeq: return 3;
            case ConstraintKind::NegSumLeq: return 4;
        }
        return 5;
    };
    auto key = [&](const OctConstraint& k) {
        VarId lo = std::min(k.a, k.b), hi = std::max(k.a, k.b);
        return std::tuple<int, VarId, VarId, int, VarId>(k.is_unary() ? 0 : 1, lo, hi, rank(k),
                                                         k.a);
    };
    auto kx = key(x), ky = key(y);
    if (kx != ky) return kx < ky;
    return x.c < y.c;
}

namespace {

struct LineParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool var(VarId& out) {
        skip_ws();
        if (pos >= s.size() || s[pos] != 'v') return false;
        std::size_t p = pos + 1, start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == start) return false;
        out = std::stoul(std::string(s.substr(start, p - start)));
        pos = p;
        return true;
    }
    bool rational(Rat& out) {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) {
            ++pos;
        }
        auto parsed = parse_rational(s.substr(start, pos - start));
        if (!parsed) return false;
        out = *parsed;
        return true;
    }
    bool at_end() {
        skip_ws();
        return pos == s.size();
    }
};

OctConstraint parse_one(std::string_view line) {
    LineParser p{line};
    bool neg_first = p.eat('-');
    VarId a = 0;
    if (!p.var(a)) throw std::invalid_argument("expected variable in: " + std::string(line));

    int sign_second = 0;  // 0: unary
    VarId b = 0;
    if (p.eat('+')) {
        sign_second = 1;
    } else if (p.eat('-')) {
        sign_second = -1;
    }
    if (sign_second != 0 && !p.var(b)) {
        throw std::invalid_argument("expected second variable in: " + std::string(line));
    }

    bool ge = false;
    p.skip_ws();
    if (p.eat('<')) {
        if (!p.eat('=')) throw std::invalid_argument("expected <= in: " + std::string(line));
    } else if (p.eat('>')) {
        if (!p.eat('=')) throw std::invalid_argument("expected >= in: " + std::string(line));
        ge = true;
    } else {
        throw std::invalid_argument("expected comparison in: " + std::string(line));
    }

    Rat c;
    if (!p.rational(c) || !p.at_end()) {
        throw std::invalid_argument("expected rational bound in: " + std::string(line));
    }

    if (sign_second == 0) {
        if (ge && !neg_first) return OctConstraint::lower(a, c);
        if (!ge && !neg_first) return OctConstraint::upper(a, c);
        // -v <= c and -v >= c normalize to bounds on v.
        if (!ge) return OctConstraint::lower(a, -c);
        return OctConstraint::upper(a, -c);
    }
    if (ge) throw std::invalid_argument(">= only applies to single variables: " + std::string(line));
    if (a == b) throw std::invalid_argument("binary constraint needs distinct variables: " +
                                            std::string(line));
    if (!neg_first && sign_second > 0) return OctConstraint::sum(a, b, c);
    if (!neg_first && sign_second < 0) return OctConstraint::diff(a, b, c);
    if (neg_first && sign_second < 0) return OctConstraint::neg_sum(a, b, c);
    return OctConstraint::diff(b, a, c);  // -v<a> + v<b> <= c
}

}  // namespace

std::vector<OctConstraint> parse_constraints(std::string_view text) {
    std::vector<OctConstraint> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
        if (!blank) out.push_back(parse_one(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

std::string render_constraints(const std::vector<OctConstraint>& cs) {
    std::ostringstream out;
    for (const auto& c : cs) out << c.to_string() << '\n';
    return out.str();
}

}  // namespace oct
