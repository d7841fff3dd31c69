#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace oct {

// Exact arbitrary-precision rational. GMP keeps values in canonical form
// (reduced fraction, denominator > 0) as long as they are built through
// arithmetic or the helpers below.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

Rat floor_rat(const Rat& q);
Rat ceil_rat(const Rat& q);

// Renders "p/q", or just "p" for integral values.
std::string to_string(const Rat& q);

// Accepts "p", "-p", "p/q" with an optional sign on the numerator.
std::optional<Rat> parse_rational(std::string_view text);

}  // namespace oct
