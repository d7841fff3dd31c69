#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "oct/bound.hpp"

namespace oct {

// Dense square matrix of Bounds. Entry (i, j) carries the potential
// constraint v_j - v_i <= at(i, j); a missing constraint is +oo. The finite
// entries form the arc set of the matrix's potential graph, which is what
// the negative-cycle test and the shortest-path closure operate on.
//
// Values are immutable from the caller's point of view: every operation
// returns a fresh matrix and may be used concurrently on shared inputs.
class Dbm {
  public:
    explicit Dbm(std::size_t dim) : dim_(dim), cells_(dim * dim) {}

    static Dbm top(std::size_t dim) { return Dbm(dim); }

    std::size_t dim() const { return dim_; }

    const Bound& at(std::size_t i, std::size_t j) const { return cells_[i * dim_ + j]; }
    Bound& at(std::size_t i, std::size_t j) { return cells_[i * dim_ + j]; }

    friend bool operator==(const Dbm&, const Dbm&) = default;

    // Point-wise partial order: every entry of *this <= the entry of o.
    bool leq(const Dbm& o) const;

    // True iff the potential graph has a cycle of strictly negative weight,
    // i.e. the V-domain is empty. Bellman-Ford from a virtual super-source
    // connected to every node with weight 0, so disconnected graphs are
    // covered; a final relaxation pass detects the cycle.
    bool has_negative_cycle() const;

    // Shortest-path closure (Floyd-Warshall schedule, pivots in increasing
    // order, diagonal forced to 0 at each step). Requires the absence of
    // negative cycles; callers must decide emptiness first.
    Dbm closed() const;

    // Local characterization of closedness: zero diagonal and
    // at(i,j) <= at(i,k) + at(k,j) for all triples.
    bool is_closed() const;

    // Debug rendering: header "dbm <dim>" followed by one row per line.
    std::string dump() const;

  private:
    std::size_t dim_;
    std::vector<Bound> cells_;
};

Dbm pointwise_min(const Dbm& a, const Dbm& b);
Dbm pointwise_max(const Dbm& a, const Dbm& b);

}  // namespace oct
