#include "oct/dbm.hpp"

#include <sstream>
#include <stdexcept>

namespace oct {

namespace {

void require_same_dim(const Dbm& a, const Dbm& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dbm dimension mismatch: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    }
}

}  // namespace

bool Dbm::leq(const Dbm& o) const {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (!(cells_[i] <= o.cells_[i])) return false;
    }
    return true;
}

bool Dbm::has_negative_cycle() const {
    // dist[] starts all zero, which is the state after relaxing the
    // super-source arcs once.
    std::vector<Rat> dist(dim_, Rat(0));
    Rat cand;
    for (std::size_t round = 0; round < dim_; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                const Bound& w = at(i, j);
                if (w.is_infinite()) continue;
                cand = dist[i] + w.value();
                if (cand < dist[j]) {
                    dist[j] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) return false;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            const Bound& w = at(i, j);
            if (w.is_infinite()) continue;
            if (dist[i] + w.value() < dist[j]) return true;
        }
    }
    return false;
}

Dbm Dbm::closed() const {
    if (has_negative_cycle()) {
        throw std::logic_error("closure of a DBM with a negative cycle");
    }
    Dbm r(*this);
    for (std::size_t i = 0; i < dim_; ++i) r.at(i, i) = Bound::zero();
    Bound scratch;
    for (std::size_t k = 0; k < dim_; ++k) {
        for (std::size_t i = 0; i < dim_; ++i) {
            if (i == k) continue;  // row k is stable during pivot k
            const Bound& ik = r.at(i, k);
            if (ik.is_infinite()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (i == j) continue;
                const Bound& kj = r.at(k, j);
                if (kj.is_infinite()) continue;
                scratch.set_sum(ik, kj);
                Bound& cur = r.at(i, j);
                if (scratch < cur) swap(cur, scratch);
            }
        }
    }
    return r;
}

bool Dbm::is_closed() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!(at(i, i) == Bound::zero())) return false;
    }
    for (std::size_t k = 0; k < dim_; ++k) {
        for (std::size_t i = 0; i < dim_; ++i) {
            const Bound& ik = at(i, k);
            if (ik.is_infinite()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                const Bound& kj = at(k, j);
                if (kj.is_infinite()) continue;
                if (ik + kj < at(i, j)) return false;
            }
        }
    }
    return true;
}

std::string Dbm::dump() const {
    std::ostringstream out;
    out << "dbm " << dim_ << '\n';
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            if (j) out << ' ';
            out << at(i, j).to_string();
        }
        out << '\n';
    }
    return out.str();
}

Dbm pointwise_min(const Dbm& a, const Dbm& b) {
    require_same_dim(a, b);
    Dbm r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            r.at(i, j) = min(a.at(i, j), b.at(i, j));
        }
    }
    return r;
}

Dbm pointwise_max(const Dbm& a, const Dbm& b) {
    require_same_dim(a, b);
    Dbm r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            r.at(i, j) = max(a.at(i, j), b.at(i, j));
        }
    }
    return r;
}

}  // namespace oct
