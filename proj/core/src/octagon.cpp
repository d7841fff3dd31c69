#include "oct/octagon.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace oct {

namespace {

void require_same_vars(std::size_t a, std::size_t b) {
    if (a != b) {
        throw std::invalid_argument("octagon variable-count mismatch: " + std::to_string(a) +
                                    " vs " + std::to_string(b));
    }
}

void install(Dbm& m, std::size_t i, std::size_t j, const Rat& c) {
    Bound b = Bound::finite(c);
    if (b < m.at(i, j)) m.at(i, j) = b;
    if (b < m.at(bar(j), bar(i))) m.at(bar(j), bar(i)) = std::move(b);
}

}  // namespace

CoherentDbm::CoherentDbm(std::size_t n_vars, Dbm mat) : n_vars_(n_vars), mat_(std::move(mat)) {
    if (mat_.dim() != 2 * n_vars_) {
        throw std::invalid_argument("coherent DBM needs a 2N x 2N matrix");
    }
    assert(is_coherent());
}

bool CoherentDbm::is_coherent() const {
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            if (!(mat_.at(i, j) == mat_.at(bar(j), bar(i)))) return false;
        }
    }
    return true;
}

const CoherentDbm& Octagon::dbm() const {
    if (!m_) throw std::logic_error("bottom octagon has no matrix");
    return *m_;
}

CoherentDbm from_constraints(std::size_t n_vars, std::span<const OctConstraint> cs) {
    CoherentDbm m(n_vars);
    Dbm& d = m.matrix();
    for (const OctConstraint& c : cs) {
        if (c.a >= n_vars || (!c.is_unary() && c.b >= n_vars)) {
            throw std::invalid_argument("constraint variable out of range: " + c.to_string());
        }
        const std::size_t pa = pos_index(c.a), na = neg_index(c.a);
        const std::size_t pb = pos_index(c.b), nb = neg_index(c.b);
        switch (c.kind) {
            case ConstraintKind::DiffLeq:  // a - b <= c: a+ - b+ and b- - a-
                install(d, pb, pa, c.c);
                break;
            case ConstraintKind::SumLeq:  // a + b <= c: a+ - b- and b+ - a-
                install(d, nb, pa, c.c);
                break;
            case ConstraintKind::NegSumLeq:  // -a - b <= c: b- - a+ and a- - b+
                install(d, pa, nb, c.c);
                break;
            case ConstraintKind::UpperBound:  // a <= c: a+ - a- <= 2c
                install(d, na, pa, 2 * c.c);
                break;
            case ConstraintKind::LowerBound:  // a >= c: a- - a+ <= -2c
                install(d, pa, na, -2 * c.c);
                break;
        }
    }
    return m;
}

CoherentDbm from_constraints(std::size_t n_vars, std::initializer_list<OctConstraint> cs) {
    return from_constraints(n_vars, std::span<const OctConstraint>(cs.begin(), cs.size()));
}

std::vector<OctConstraint> to_constraints(const CoherentDbm& m) {
    std::vector<OctConstraint> out;
    const std::size_t dim = m.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (i == j) continue;
            const Bound& b = m.at(i, j);
            if (b.is_infinite()) continue;
            // Emit each twin class once; (i, j) and (bar j, bar i) carry the
            // same constraint.
            const std::size_t ti = bar(j), tj = bar(i);
            if (std::make_pair(ti, tj) < std::make_pair(i, j)) continue;
            const VarId va = j / 2, vb = i / 2;
            const bool pa = j % 2 == 0, pb = i % 2 == 0;
            // at(i, j) = c reads (col as va, row as vb): ±va ∓vb <= c.
            if (va == vb) {
                out.push_back(pa ? OctConstraint::upper(va, b.value() / 2)
                                 : OctConstraint::lower(va, -(b.value() / 2)));
            } else if (pa && pb) {
                out.push_back(OctConstraint::diff(va, vb, b.value()));
            } else if (pa && !pb) {
                out.push_back(OctConstraint::sum(va, vb, b.value()));
            } else if (!pa && pb) {
                out.push_back(OctConstraint::neg_sum(va, vb, b.value()));
            } else {
                out.push_back(OctConstraint::diff(vb, va, b.value()));
            }
        }
    }
    std::sort(out.begin(), out.end(), constraint_order);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_empty(const CoherentDbm& m) { return m.matrix().has_negative_cycle(); }

Octagon strong_closure(const CoherentDbm& m) {
    if (is_empty(m)) return Octagon::bottom(m.var_count());
    CoherentDbm r(m);
    Dbm& d = r.matrix();
    const std::size_t dim = d.dim();
    Bound scratch;
    auto tighten_sum = [&scratch](Bound& cur, const Bound& a, const Bound& b) {
        scratch.set_sum(a, b);
        if (scratch < cur) swap(cur, scratch);
    };
    for (std::size_t v = 0; v < m.var_count(); ++v) {
        const std::size_t k = 2 * v, kb = k + 1;
        // Closure step on the pivot pair {k, bar k}: for i != j take the
        // minimum of the five path combinations through k and bar k, then
        // reset the diagonal.
        for (std::size_t i = 0; i < dim; ++i) {
            const Bound ik = d.at(i, k);
            const Bound ikb = d.at(i, kb);
            if (ik.is_infinite() && ikb.is_infinite()) continue;
            Bound ik_kkb;
            ik_kkb.set_sum(ik, d.at(k, kb));
            Bound ikb_kbk;
            ikb_kbk.set_sum(ikb, d.at(kb, k));
            for (std::size_t j = 0; j < dim; ++j) {
                if (i == j) continue;
                Bound& cur = d.at(i, j);
                const Bound& kj = d.at(k, j);
                const Bound& kbj = d.at(kb, j);
                if (!kj.is_infinite()) {
                    tighten_sum(cur, ik, kj);
                    tighten_sum(cur, ikb_kbk, kj);
                }
                if (!kbj.is_infinite()) {
                    tighten_sum(cur, ikb, kbj);
                    tighten_sum(cur, ik_kkb, kbj);
                }
            }
        }
        for (std::size_t i = 0; i < dim; ++i) d.at(i, i) = Bound::zero();
        // Unary-combination step: at(i,j) <- min(at(i,j),
        // (at(i, bar i) + at(bar j, j)) / 2).
        for (std::size_t i = 0; i < dim; ++i) {
            const Bound& ii = d.at(i, bar(i));
            if (ii.is_infinite()) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                const Bound& jj = d.at(bar(j), j);
                if (jj.is_infinite()) continue;
                Bound& cur = d.at(i, j);
                scratch.set_sum(ii, jj);
                scratch.halve_in_place();
                if (scratch < cur) swap(cur, scratch);
            }
        }
    }
    assert(r.is_coherent());
    return Octagon::of(std::move(r));
}

Octagon strong_closure(const Octagon& m) {
    if (m.is_bottom()) return m;
    return strong_closure(m.dbm());
}

bool is_strongly_closed(const CoherentDbm& m) {
    if (!m.is_coherent() || !m.matrix().is_closed()) return false;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Bound& ii = m.at(i, bar(i));
        if (ii.is_infinite()) continue;
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Bound& jj = m.at(bar(j), j);
            if (jj.is_infinite()) continue;
            if ((ii + jj).half() < m.at(i, j)) return false;
        }
    }
    return true;
}

bool leq(const Octagon& a, const Octagon& b) {
    require_same_vars(a.var_count(), b.var_count());
    if (a.is_bottom()) return true;
    Octagon ac = strong_closure(a);
    if (ac.is_bottom()) return true;
    if (b.is_bottom()) return false;
    return ac.dbm().matrix().leq(b.dbm().matrix());
}

bool equals(const Octagon& a, const Octagon& b) {
    require_same_vars(a.var_count(), b.var_count());
    Octagon ac = strong_closure(a);
    Octagon bc = strong_closure(b);
    if (ac.is_bottom() || bc.is_bottom()) return ac.is_bottom() == bc.is_bottom();
    return ac.dbm() == bc.dbm();
}

Interval project(const Octagon& m, VarId v) {
    if (v >= m.var_count()) throw std::invalid_argument("projection of an out-of-range variable");
    Octagon c = strong_closure(m);
    if (c.is_bottom()) throw std::logic_error("projection of an empty octagon");
    const Dbm& d = c.dbm().matrix();
    Interval r = Interval::whole();
    const Bound& lo2 = d.at(pos_index(v), neg_index(v));  // v- - v+ <= -2 lo
    const Bound& hi2 = d.at(neg_index(v), pos_index(v));  // v+ - v- <= 2 hi
    if (lo2.is_finite()) r.lo = -(lo2.value() / 2);
    if (hi2.is_finite()) r.hi = hi2.value() / 2;
    return r;
}

Octagon meet(const Octagon& a, const Octagon& b) {
    require_same_vars(a.var_count(), b.var_count());
    if (a.is_bottom() || b.is_bottom()) return Octagon::bottom(a.var_count());
    CoherentDbm m(a.var_count(), pointwise_min(a.dbm().matrix(), b.dbm().matrix()));
    if (is_empty(m)) return Octagon::bottom(a.var_count());
    return Octagon::of(std::move(m));
}

Octagon join(const Octagon& a, const Octagon& b) {
    require_same_vars(a.var_count(), b.var_count());
    if (a.is_bottom()) return strong_closure(b);
    if (b.is_bottom()) return strong_closure(a);
    Octagon ac = strong_closure(a);
    Octagon bc = strong_closure(b);
    if (ac.is_bottom()) return bc;
    if (bc.is_bottom()) return ac;
    return Octagon::of(
        CoherentDbm(a.var_count(), pointwise_max(ac.dbm().matrix(), bc.dbm().matrix())));
}

CoherentDbm widen(const CoherentDbm& m, const CoherentDbm& n) {
    require_same_vars(m.var_count(), n.var_count());
    CoherentDbm r(m);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (!(n.at(i, j) <= m.at(i, j))) r.at(i, j) = Bound::infinity();
        }
    }
    return r;
}

Octagon widen(const Octagon& m, const Octagon& n) {
    require_same_vars(m.var_count(), n.var_count());
    if (m.is_bottom()) return n;
    if (n.is_bottom()) return m;
    return Octagon::of(widen(m.dbm(), n.dbm()));
}

Octagon forget(const Octagon& m, VarId v) {
    if (v >= m.var_count()) throw std::invalid_argument("forget of an out-of-range variable");
    if (m.is_bottom()) return m;
    Octagon c = strong_closure(m);
    if (c.is_bottom()) return c;
    CoherentDbm r = c.dbm();
    const std::size_t p = pos_index(v), n = neg_index(v);
    for (std::size_t i = 0; i < r.dim(); ++i) {
        r.at(i, p) = Bound::infinity();
        r.at(i, n) = Bound::infinity();
        r.at(p, i) = Bound::infinity();
        r.at(n, i) = Bound::infinity();
    }
    r.at(p, p) = Bound::zero();
    r.at(n, n) = Bound::zero();
    return Octagon::of(std::move(r));
}

}  // namespace oct
