#include "oct/transfer.hpp"

#include <map>
#include <stdexcept>

namespace oct {

namespace {

// Affine view of an expression: sum of coeff * var + constant. nullopt when
// the expression contains rand or a non-affine product.
struct LinForm {
    std::map<VarId, Rat> coeffs;
    Rat constant;
};

std::optional<LinForm> linearize(const Expr& e) {
    using R = std::optional<LinForm>;
    return std::visit(
        [](const auto& n) -> R {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ConstExpr>) {
                return LinForm{{}, n.value};
            } else if constexpr (std::is_same_v<T, VarExpr>) {
                LinForm f;
                f.coeffs[n.var] = 1;
                return f;
            } else if constexpr (std::is_same_v<T, NegExpr>) {
                R a = linearize(*n.arg);
                if (!a) return std::nullopt;
                for (auto& [v, k] : a->coeffs) k = -k;
                a->constant = -a->constant;
                return a;
            } else if constexpr (std::is_same_v<T, AddExpr> || std::is_same_v<T, SubExpr>) {
                R a = linearize(*n.lhs), b = linearize(*n.rhs);
                if (!a || !b) return std::nullopt;
                const Rat s = std::is_same_v<T, SubExpr> ? Rat(-1) : Rat(1);
                for (const auto& [v, k] : b->coeffs) {
                    auto [it, fresh] = a->coeffs.emplace(v, s * k);
                    if (!fresh) it->second += s * k;
                }
                a->constant += s * b->constant;
                return a;
            } else if constexpr (std::is_same_v<T, MulConstExpr>) {
                R a = linearize(*n.arg);
                if (!a) return std::nullopt;
                for (auto& [v, k] : a->coeffs) k *= n.factor;
                a->constant *= n.factor;
                return a;
            } else {
                return std::nullopt;  // MulExpr, RandomExpr
            }
        },
        e.node);
}

void drop_zero_coeffs(LinForm& f) {
    for (auto it = f.coeffs.begin(); it != f.coeffs.end();) {
        it = it->second == 0 ? f.coeffs.erase(it) : std::next(it);
    }
}

// Normalized guard: a positive boolean combination of octagonal atoms.
struct NormGuard {
    enum class Kind { True, False, Atom, And, Or };
    Kind kind = Kind::True;
    OctConstraint atom{};
    std::vector<NormGuard> kids;

    static NormGuard truth(bool b) { return {b ? Kind::True : Kind::False, {}, {}}; }
    static NormGuard of(OctConstraint c) { return {Kind::Atom, std::move(c), {}}; }
    static NormGuard conj(NormGuard a, NormGuard b) {
        return {Kind::And, {}, {std::move(a), std::move(b)}};
    }
    static NormGuard disj(NormGuard a, NormGuard b) {
        return {Kind::Or, {}, {std::move(a), std::move(b)}};
    }
};

// e <= c with e = sum of unit coefficients over one or two variables,
// already scaled. Emits the matching constraint kind.
std::optional<OctConstraint> octagonal_leq(const LinForm& f, const Rat& c) {
    if (f.coeffs.size() == 1) {
        const auto& [v, k] = *f.coeffs.begin();
        if (k == 1) return OctConstraint::upper(v, c);
        if (k == -1) return OctConstraint::lower(v, -c);
        return std::nullopt;
    }
    if (f.coeffs.size() == 2) {
        auto it = f.coeffs.begin();
        const auto [v1, k1] = *it++;
        const auto [v2, k2] = *it;
        if (k1 == 1 && k2 == 1) return OctConstraint::sum(v1, v2, c);
        if (k1 == -1 && k2 == -1) return OctConstraint::neg_sum(v1, v2, c);
        if (k1 == 1 && k2 == -1) return OctConstraint::diff(v1, v2, c);
        if (k1 == -1 && k2 == 1) return OctConstraint::diff(v2, v1, c);
    }
    return std::nullopt;
}

// Strict e < c as a non-strict bound, per policy.
Rat strict_upper(const Rat& c, StrictPolicy policy) {
    if (policy == StrictPolicy::RationalRelax) return c;
    return is_integral(c) ? Rat(c - 1) : floor_rat(c);
}

// Atom normalization. `negated` reflects an odd number of enclosing nots.
NormGuard normalize_atom(const AtomGuard& a, bool negated, StrictPolicy policy) {
    auto l = linearize(*a.lhs), r = linearize(*a.rhs);
    if (!l || !r) return NormGuard::truth(true);  // opaque atom: no refinement
    // Move everything left: f op 0 with f = lhs - rhs.
    LinForm f = *l;
    for (const auto& [v, k] : r->coeffs) {
        auto [it, fresh] = f.coeffs.emplace(v, -k);
        if (!fresh) it->second -= k;
    }
    f.constant -= r->constant;
    drop_zero_coeffs(f);

    CmpOp op = a.op;
    if (negated) {
        switch (op) {
            case CmpOp::Le: op = CmpOp::Gt; break;
            case CmpOp::Lt: op = CmpOp::Ge; break;
            case CmpOp::Ge: op = CmpOp::Lt; break;
            case CmpOp::Gt: op = CmpOp::Le; break;
            case CmpOp::Eq: op = CmpOp::Ne; break;
            case CmpOp::Ne: op = CmpOp::Eq; break;
        }
    }

    // Constant comparison: decide now.
    if (f.coeffs.empty()) {
        const Rat& v = f.constant;
        switch (op) {
            case CmpOp::Le: return NormGuard::truth(v <= 0);
            case CmpOp::Lt: return NormGuard::truth(v < 0);
            case CmpOp::Ge: return NormGuard::truth(v >= 0);
            case CmpOp::Gt: return NormGuard::truth(v > 0);
            case CmpOp::Eq: return NormGuard::truth(v == 0);
            case CmpOp::Ne: return NormGuard::truth(v != 0);
        }
    }

    // Scale so the variable coefficients are +-1 when they share one
    // magnitude; otherwise the atom is not octagonal.
    Rat scale = abs(f.coeffs.begin()->second);
    for (const auto& [v, k] : f.coeffs) {
        if (abs(k) != scale) return NormGuard::truth(true);
    }
    if (f.coeffs.size() > 2 || scale == 0) return NormGuard::truth(true);
    for (auto& [v, k] : f.coeffs) k /= scale;
    Rat c = -f.constant / scale;  // sum(k v) <= c form
    LinForm neg = f;
    for (auto& [v, k] : neg.coeffs) k = -k;

    auto leq_atom = [&](const LinForm& form, const Rat& bound) -> NormGuard {
        auto oc = octagonal_leq(form, bound);
        return oc ? NormGuard::of(*oc) : NormGuard::truth(true);
    };

    switch (op) {
        case CmpOp::Le:
            return leq_atom(f, c);
        case CmpOp::Lt:
            return leq_atom(f, strict_upper(c, policy));
        case CmpOp::Ge:
            return leq_atom(neg, -c);
        case CmpOp::Gt:
            return leq_atom(neg, strict_upper(-c, policy));
        case CmpOp::Eq:
            return NormGuard::conj(leq_atom(f, c), leq_atom(neg, -c));
        case CmpOp::Ne:
            if (policy == StrictPolicy::RationalRelax) return NormGuard::truth(true);
            return NormGuard::disj(leq_atom(f, strict_upper(c, policy)),
                                   leq_atom(neg, strict_upper(-c, policy)));
    }
    return NormGuard::truth(true);
}

NormGuard normalize(const Guard& g, bool negated, StrictPolicy policy) {
    return std::visit(
        [&](const auto& n) -> NormGuard {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AtomGuard>) {
                return normalize_atom(n, negated, policy);
            } else if constexpr (std::is_same_v<T, AndGuard>) {
                NormGuard a = normalize(*n.lhs, negated, policy);
                NormGuard b = normalize(*n.rhs, negated, policy);
                return negated ? NormGuard::disj(std::move(a), std::move(b))
                               : NormGuard::conj(std::move(a), std::move(b));
            } else if constexpr (std::is_same_v<T, OrGuard>) {
                NormGuard a = normalize(*n.lhs, negated, policy);
                NormGuard b = normalize(*n.rhs, negated, policy);
                return negated ? NormGuard::conj(std::move(a), std::move(b))
                               : NormGuard::disj(std::move(a), std::move(b));
            } else if constexpr (std::is_same_v<T, NotGuard>) {
                return normalize(*n.arg, !negated, policy);
            } else {
                return NormGuard::truth(true);  // NonDet: either branch possible
            }
        },
        g.node);
}

Octagon apply_norm(const Octagon& m, const NormGuard& g) {
    switch (g.kind) {
        case NormGuard::Kind::True:
            return m;
        case NormGuard::Kind::False:
            return Octagon::bottom(m.var_count());
        case NormGuard::Kind::Atom:
            return guard_constraint(m, g.atom);
        case NormGuard::Kind::And:
            return meet(apply_norm(m, g.kids[0]), apply_norm(m, g.kids[1]));
        case NormGuard::Kind::Or:
            return join(apply_norm(m, g.kids[0]), apply_norm(m, g.kids[1]));
    }
    return m;
}

}  // namespace

Octagon guard_constraint(const Octagon& m, const OctConstraint& c) {
    if (m.is_bottom()) return m;
    CoherentDbm r = from_constraints(m.var_count(), {c});
    r.matrix() = pointwise_min(m.dbm().matrix(), r.matrix());
    if (is_empty(r)) return Octagon::bottom(m.var_count());
    return Octagon::of(std::move(r));
}

Octagon guard(const Octagon& m, const Guard& g, StrictPolicy policy) {
    if (m.is_bottom()) return m;
    return apply_norm(m, normalize(g, false, policy));
}

Octagon guard_negated(const Octagon& m, const Guard& g, StrictPolicy policy) {
    if (m.is_bottom()) return m;
    return apply_norm(m, normalize(g, true, policy));
}

namespace {

// v <- v + c: every finite entry moves by (alpha + beta) c where alpha
// depends on the column and beta on the row.
Octagon assign_shift(const Octagon& m, VarId v, const Rat& c) {
    CoherentDbm r = m.dbm();
    const std::size_t p = pos_index(v), n = neg_index(v);
    for (std::size_t i = 0; i < r.dim(); ++i) {
        for (std::size_t j = 0; j < r.dim(); ++j) {
            Bound& b = r.at(i, j);
            if (b.is_infinite()) continue;
            int alpha = j == p ? 1 : (j == n ? -1 : 0);
            int beta = i == p ? -1 : (i == n ? 1 : 0);
            if (alpha + beta != 0) b = Bound::finite(b.value() + (alpha + beta) * c);
        }
    }
    return Octagon::of(std::move(r));
}

// v <- w + c with w != v: rebuild v's rows/columns from scratch, keep the
// closure-implied constraints between the others.
Octagon assign_relocate(const Octagon& m, VarId v, VarId w, const Rat& c) {
    Octagon closed = strong_closure(m);
    if (closed.is_bottom()) return closed;
    CoherentDbm r = closed.dbm();
    const std::size_t p = pos_index(v), n = neg_index(v);
    for (std::size_t i = 0; i < r.dim(); ++i) {
        r.at(i, p) = Bound::infinity();
        r.at(i, n) = Bound::infinity();
        r.at(p, i) = Bound::infinity();
        r.at(n, i) = Bound::infinity();
    }
    r.at(p, p) = Bound::zero();
    r.at(n, n) = Bound::zero();
    // v - w <= c and w - v <= -c, in both encodings.
    r.at(pos_index(w), p) = Bound::finite(c);
    r.at(n, neg_index(w)) = Bound::finite(c);
    r.at(p, pos_index(w)) = Bound::finite(-c);
    r.at(neg_index(w), n) = Bound::finite(-c);
    return Octagon::of(std::move(r));
}

// General case: interval fallback. Entries not involving v come from the
// strong closure; v itself gets the interval bounds of e.
Octagon assign_general(const Octagon& m, VarId v, const Expr& e) {
    Octagon closed = strong_closure(m);
    if (closed.is_bottom()) return closed;
    Interval range = interval_eval(e, closed);
    CoherentDbm r = closed.dbm();
    const std::size_t p = pos_index(v), n = neg_index(v);
    for (std::size_t i = 0; i < r.dim(); ++i) {
        r.at(i, p) = Bound::infinity();
        r.at(i, n) = Bound::infinity();
        r.at(p, i) = Bound::infinity();
        r.at(n, i) = Bound::infinity();
    }
    r.at(p, p) = Bound::zero();
    r.at(n, n) = Bound::zero();
    if (range.hi) r.at(n, p) = Bound::finite(2 * *range.hi);
    if (range.lo) r.at(p, n) = Bound::finite(-2 * *range.lo);
    return Octagon::of(std::move(r));
}

}  // namespace

Octagon assign(const Octagon& m, VarId v, const Expr& e) {
    if (m.is_bottom()) return m;
    if (v >= m.var_count()) throw std::invalid_argument("assignment to out-of-range variable");
    if (auto f = linearize(e)) {
        LinForm lin = *f;
        drop_zero_coeffs(lin);
        if (lin.coeffs.empty()) return assign_general(m, v, e);
        if (lin.coeffs.size() == 1) {
            const auto& [w, k] = *lin.coeffs.begin();
            if (k == 1) {
                return w == v ? assign_shift(m, v, lin.constant)
                              : assign_relocate(m, v, w, lin.constant);
            }
        }
    }
    return assign_general(m, v, e);
}

Interval interval_eval(const Expr& e, const Octagon& m) {
    Octagon closed = strong_closure(m);
    if (closed.is_bottom()) throw std::logic_error("interval evaluation on an empty octagon");
    const Dbm& d = closed.dbm().matrix();
    auto var_range = [&](VarId v) {
        Interval r = Interval::whole();
        const Bound& lo2 = d.at(pos_index(v), neg_index(v));
        const Bound& hi2 = d.at(neg_index(v), pos_index(v));
        if (lo2.is_finite()) r.lo = -(lo2.value() / 2);
        if (hi2.is_finite()) r.hi = hi2.value() / 2;
        return r;
    };
    auto eval = [&](const auto& self, const Expr& x) -> Interval {
        return std::visit(
            [&](const auto& n) -> Interval {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ConstExpr>) {
                    return Interval::point(n.value);
                } else if constexpr (std::is_same_v<T, VarExpr>) {
                    return var_range(n.var);
                } else if constexpr (std::is_same_v<T, NegExpr>) {
                    return self(self, *n.arg).negated();
                } else if constexpr (std::is_same_v<T, AddExpr>) {
                    return self(self, *n.lhs) + self(self, *n.rhs);
                } else if constexpr (std::is_same_v<T, SubExpr>) {
                    return self(self, *n.lhs) - self(self, *n.rhs);
                } else if constexpr (std::is_same_v<T, MulConstExpr>) {
                    return self(self, *n.arg).scaled(n.factor);
                } else {
                    return Interval::whole();  // MulExpr, RandomExpr
                }
            },
            x.node);
    };
    return eval(eval, e);
}

}  // namespace oct
