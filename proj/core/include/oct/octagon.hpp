#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oct/constraint.hpp"
#include "oct/dbm.hpp"

namespace oct {

// Matrix index of the positive form of variable v is 2v, of the negative
// form 2v+1; bar maps each form to its twin.
constexpr std::size_t pos_index(VarId v) { return 2 * v; }
constexpr std::size_t neg_index(VarId v) { return 2 * v + 1; }
constexpr std::size_t bar(std::size_t i) { return i ^ 1; }

// A DBM over the doubled variable set. Coherent means the matrix carries
// both encodings of every octagonal constraint: at(i,j) == at(bar(j),bar(i)).
class CoherentDbm {
  public:
    explicit CoherentDbm(std::size_t n_vars) : n_vars_(n_vars), mat_(2 * n_vars) {}
    CoherentDbm(std::size_t n_vars, Dbm mat);

    std::size_t var_count() const { return n_vars_; }
    std::size_t dim() const { return mat_.dim(); }

    const Dbm& matrix() const { return mat_; }
    Dbm& matrix() { return mat_; }

    const Bound& at(std::size_t i, std::size_t j) const { return mat_.at(i, j); }
    Bound& at(std::size_t i, std::size_t j) { return mat_.at(i, j); }

    bool is_coherent() const;

    friend bool operator==(const CoherentDbm&, const CoherentDbm&) = default;

  private:
    std::size_t n_vars_;
    Dbm mat_;
};

// Lattice element: Bottom (empty set) or a coherent DBM. Matrices held in
// NonBottom values are not kept in any normal form; operations that need the
// strong closure compute it on a copy.
class Octagon {
  public:
    static Octagon bottom(std::size_t n_vars) { return Octagon(n_vars); }
    static Octagon top(std::size_t n_vars) { return Octagon(CoherentDbm(n_vars)); }
    static Octagon of(CoherentDbm m) { return Octagon(std::move(m)); }

    bool is_bottom() const { return !m_.has_value(); }
    std::size_t var_count() const { return n_vars_; }

    const CoherentDbm& dbm() const;

    friend bool operator==(const Octagon&, const Octagon&) = default;

  private:
    explicit Octagon(std::size_t n_vars) : n_vars_(n_vars) {}
    explicit Octagon(CoherentDbm m) : n_vars_(m.var_count()), m_(std::move(m)) {}

    std::size_t n_vars_;
    std::optional<CoherentDbm> m_;
};

// Builds the coherent DBM for a conjunction of octagonal constraints,
// starting from all-+oo and installing each constraint by point-wise min.
// Throws std::invalid_argument on out-of-range variables.
CoherentDbm from_constraints(std::size_t n_vars, std::span<const OctConstraint> cs);
CoherentDbm from_constraints(std::size_t n_vars, std::initializer_list<OctConstraint> cs);

// Emits one constraint per class of finite off-diagonal entries (coherent
// twins merged, unary rows halved), in the deterministic order of
// constraint_order.
std::vector<OctConstraint> to_constraints(const CoherentDbm& m);

// Emptiness of the octagon (interpretation over Q): negative cycle in the
// potential graph.
bool is_empty(const CoherentDbm& m);

// Strong closure: Bottom if the octagon is empty, otherwise the smallest
// coherent DBM with the same octagon, computed by n_vars rounds of the
// closure step on pivot pair {2k, 2k+1} followed by the unary-combination
// step  at(i,j) <- min(at(i,j), (at(i,bar i) + at(bar j, j)) / 2).
Octagon strong_closure(const CoherentDbm& m);
Octagon strong_closure(const Octagon& m);

bool is_strongly_closed(const CoherentDbm& m);

// Set inclusion D(a) ⊆ D(b) and set equality, decided through the strong
// closure normal form.
bool leq(const Octagon& a, const Octagon& b);
bool equals(const Octagon& a, const Octagon& b);

// Range of one variable, read off the strong closure. Requires a non-empty
// argument (throws std::logic_error on Bottom).
Interval project(const Octagon& m, VarId v);

// Exact intersection (point-wise min, then emptiness test).
Octagon meet(const Octagon& a, const Octagon& b);

// Smallest octagon containing the union: point-wise max of the strong
// closures.
Octagon join(const Octagon& a, const Octagon& b);

// Widening: keeps stable entries, discards the rest to +oo. The left
// argument must be the accumulator of the iteration and must not be
// strongly closed between steps, or termination is lost.
CoherentDbm widen(const CoherentDbm& m, const CoherentDbm& n);
Octagon widen(const Octagon& m, const Octagon& n);

// Drops every constraint mentioning v, keeping what the strong closure
// implies between the remaining variables.
Octagon forget(const Octagon& m, VarId v);

}  // namespace oct
