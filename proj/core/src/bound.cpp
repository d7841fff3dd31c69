#include "oct/bound.hpp"

#include <cctype>

namespace oct {

Rat floor_rat(const Rat& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rat(r);
}

Rat ceil_rat(const Rat& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rat(r);
}

std::string to_string(const Rat& q) { return q.get_str(); }

std::optional<Rat> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    auto digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out.push_back(text[pos++]);
        }
        return pos > start;
    };
    std::string num;
    if (!digits(num)) return std::nullopt;
    std::string den = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den.clear();
        if (!digits(den)) return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;
    mpz_class d(den);
    if (d == 0) return std::nullopt;
    Rat q(mpz_class(num), d);
    q.canonicalize();
    if (negative) q = -q;
    return q;
}

std::string Bound::to_string() const {
    return finite_ ? oct::to_string(value_) : "+oo";
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo && b.lo) r.lo = *a.lo + *b.lo;
    if (a.hi && b.hi) r.hi = *a.hi + *b.hi;
    return r;
}

Interval operator-(const Interval& a, const Interval& b) { return a + b.negated(); }

Interval Interval::negated() const {
    Interval r;
    if (hi) r.lo = -*hi;
    if (lo) r.hi = -*lo;
    return r;
}

Interval Interval::scaled(const Rat& k) const {
    if (k == 0) return Interval::point(Rat(0));
    Interval r;
    if (k > 0) {
        if (lo) r.lo = *lo * k;
        if (hi) r.hi = *hi * k;
    } else {
        if (hi) r.lo = *hi * k;
        if (lo) r.hi = *lo * k;
    }
    return r;
}

std::string Interval::to_string() const {
    std::string s = "[";
    s += lo ? oct::to_string(*lo) : "-oo";
    s += ", ";
    s += hi ? oct::to_string(*hi) : "+oo";
    s += "]";
    return s;
}

}  // namespace oct
