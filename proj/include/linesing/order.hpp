#ifndef LINESING_ORDER_HPP
#define LINESING_ORDER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "linesing/monomial.hpp"
#include "linesing/ring.hpp"

namespace linesing {

/// Block monomial order. Blocks compare left to right; a global block ranks
/// higher degree first, a local block ranks lower degree first (so 1 is the
/// largest monomial of a purely local block, as in the ring of germs).
/// Mixed orders must keep every global block in front of every local block,
/// otherwise eliminating the front variables over a local base is unsound.
class MonomialOrder {
  public:
    enum class Tie { DegRevLex, Lex };

    struct Block {
        std::vector<size_t> vars;
        bool global = true;
        Tie tie = Tie::DegRevLex;
    };

    MonomialOrder(RingPtr ring, std::vector<Block> blocks)
        : ring_(std::move(ring)), blocks_(std::move(blocks)) {
        std::vector<int> seen(ring_->arity(), 0);
        bool local_seen = false;
        for (const auto& b : blocks_) {
            if (b.global && local_seen)
                throw std::invalid_argument("global block after local block is unsound");
            if (!b.global) local_seen = true;
            for (size_t v : b.vars) {
                if (v >= ring_->arity() || seen[v]++)
                    throw std::invalid_argument("order blocks must partition the ring variables");
            }
        }
        for (int s : seen)
            if (s != 1) throw std::invalid_argument("order blocks must partition the ring variables");
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    bool is_global() const {
        for (const auto& b : blocks_)
            if (!b.global) return false;
        return true;
    }

    /// Three-way compare; positive when a is larger.
    int cmp(const Mono& a, const Mono& b) const {
        for (const auto& blk : blocks_) {
            long da = 0, db = 0;
            for (size_t v : blk.vars) {
                da += a[v];
                db += b[v];
            }
            if (blk.tie == Tie::DegRevLex) {
                if (da != db) {
                    bool bigger = da > db;
                    if (!blk.global) bigger = !bigger;
                    return bigger ? 1 : -1;
                }
                // revlex tie-break: last differing block variable, smaller
                // exponent wins.
                for (size_t k = blk.vars.size(); k-- > 0;) {
                    size_t v = blk.vars[k];
                    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
                }
            } else {  // Lex
                for (size_t v : blk.vars) {
                    if (a[v] != b[v]) {
                        bool bigger = a[v] > b[v];
                        if (!blk.global) bigger = !bigger;
                        return bigger ? 1 : -1;
                    }
                }
            }
        }
        return 0;
    }
    bool less(const Mono& a, const Mono& b) const { return cmp(a, b) < 0; }

    std::string describe() const {
        std::string s;
        for (const auto& b : blocks_) {
            if (!s.empty()) s += ",";
            s += b.global ? (b.tie == Tie::Lex ? "lex(" : "dp(") : "ds(";
            for (size_t i = 0; i < b.vars.size(); ++i)
                s += (i ? "," : "") + ring_->name(b.vars[i]);
            s += ")";
        }
        return s;
    }

    /// Cache/dispatch key: equal keys mean identical comparators.
    std::string key() const { return describe(); }

  private:
    RingPtr ring_;
    std::vector<Block> blocks_;
};

namespace orders {

namespace detail {
inline std::vector<size_t> split_front(const Ring& r, std::vector<size_t>& rest) {
    // auxiliary and deformation variables always sit in a leading global
    // block; only coordinate variables may be ordered locally.
    std::vector<size_t> front;
    for (size_t i = 0; i < r.arity(); ++i) {
        if (r.kind(i) == Ring::VarKind::Coordinate)
            rest.push_back(i);
        else
            front.push_back(i);
    }
    return front;
}
}  // namespace detail

/// Degree reverse lexicographic on everything (polynomial ring).
inline MonomialOrder global_degrevlex(RingPtr ring) {
    std::vector<size_t> all(ring->arity());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return MonomialOrder(ring, {{all, true, MonomialOrder::Tie::DegRevLex}});
}

/// Pure lexicographic (global).
inline MonomialOrder global_lex(RingPtr ring) {
    std::vector<size_t> all(ring->arity());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return MonomialOrder(ring, {{all, true, MonomialOrder::Tie::Lex}});
}

/// Local order for germ computations: coordinates get negative-degree revlex
/// (smaller total degree = larger monomial); deformation/auxiliary variables,
/// when present, lead in a global block.
inline MonomialOrder local_ds(RingPtr ring) {
    std::vector<size_t> coords;
    std::vector<size_t> front = detail::split_front(*ring, coords);
    std::vector<MonomialOrder::Block> blocks;
    if (!front.empty()) blocks.push_back({front, true, MonomialOrder::Tie::DegRevLex});
    blocks.push_back({coords, false, MonomialOrder::Tie::DegRevLex});
    return MonomialOrder(ring, std::move(blocks));
}

/// Elimination order for the given front variables: they form a leading
/// global block; the remaining variables keep global or local flavor.
inline MonomialOrder elimination(RingPtr ring, const std::vector<size_t>& eliminate, bool base_local) {
    std::vector<bool> front(ring->arity(), false);
    for (size_t v : eliminate) front.at(v) = true;
    std::vector<size_t> head, tail_global, tail_local;
    for (size_t i = 0; i < ring->arity(); ++i) {
        if (front[i]) {
            head.push_back(i);
        } else if (!base_local || ring->kind(i) != Ring::VarKind::Coordinate) {
            tail_global.push_back(i);
        } else {
            tail_local.push_back(i);
        }
    }
    if (head.empty()) throw std::invalid_argument("elimination order without variables");
    std::vector<MonomialOrder::Block> blocks;
    blocks.push_back({head, true, MonomialOrder::Tie::DegRevLex});
    if (!tail_global.empty()) blocks.push_back({tail_global, true, MonomialOrder::Tie::DegRevLex});
    if (!tail_local.empty()) blocks.push_back({tail_local, false, MonomialOrder::Tie::DegRevLex});
    return MonomialOrder(ring, std::move(blocks));
}

}  // namespace orders

}  // namespace linesing

#endif
