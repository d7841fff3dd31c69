#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>

#include "oct/rational.hpp"

namespace oct {

// Element of the extended number line Q ∪ {+oo}. +oo is absorbing for
// addition and the top of the order; there is no -oo.
class Bound {
  public:
    Bound() : finite_(false) {}  // +oo

    static Bound infinity() { return Bound(); }
    static Bound finite(Rat v) { return Bound(std::move(v)); }
    static Bound finite(long v) { return Bound(Rat(v)); }
    static Bound zero() { return Bound(Rat(0)); }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    const Rat& value() const {
        assert(finite_);
        return value_;
    }

    Bound half() const {
        if (!finite_) return *this;
        return Bound(Rat(value_ / 2));
    }

    Bound negated() const {
        assert(finite_);
        return Bound(Rat(-value_));
    }

    Bound& operator+=(const Bound& o) {
        if (!finite_ || !o.finite_) {
            finite_ = false;
            value_ = 0;
        } else {
            value_ += o.value_;
        }
        return *this;
    }

    // Overwrites this bound with a + b, reusing the existing storage. The
    // closure kernels run this in tight loops.
    void set_sum(const Bound& a, const Bound& b) {
        if (!a.finite_ || !b.finite_) {
            finite_ = false;
        } else {
            finite_ = true;
            mpq_add(value_.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
        }
    }

    void halve_in_place() {
        if (finite_) mpq_div_2exp(value_.get_mpq_t(), value_.get_mpq_t(), 1);
    }

    friend void swap(Bound& a, Bound& b) {
        std::swap(a.finite_, b.finite_);
        mpq_swap(a.value_.get_mpq_t(), b.value_.get_mpq_t());
    }

    friend Bound operator+(Bound a, const Bound& b) {
        a += b;
        return a;
    }

    friend bool operator==(const Bound& a, const Bound& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }

    friend bool operator<(const Bound& a, const Bound& b) {
        if (!b.finite_) return a.finite_;
        if (!a.finite_) return false;
        return a.value_ < b.value_;
    }

    friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
    friend bool operator>(const Bound& a, const Bound& b) { return b < a; }
    friend bool operator>=(const Bound& a, const Bound& b) { return !(a < b); }

    std::string to_string() const;

  private:
    explicit Bound(Rat v) : finite_(true), value_(std::move(v)) {}

    bool finite_;
    Rat value_;
};

inline const Bound& min(const Bound& a, const Bound& b) { return b < a ? b : a; }
inline const Bound& max(const Bound& a, const Bound& b) { return a < b ? b : a; }

// Closed rational interval with optional (= unbounded) ends.
struct Interval {
    std::optional<Rat> lo;
    std::optional<Rat> hi;

    static Interval whole() { return {std::nullopt, std::nullopt}; }
    static Interval point(Rat v) { return {v, v}; }
    static Interval of(Rat l, Rat h) { return {std::move(l), std::move(h)}; }

    bool contains(const Rat& v) const {
        if (lo && v < *lo) return false;
        if (hi && *hi < v) return false;
        return true;
    }

    friend bool operator==(const Interval&, const Interval&) = default;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    Interval negated() const;
    Interval scaled(const Rat& k) const;

    std::string to_string() const;
};

}  // namespace oct
