#ifndef LINESING_IDEAL_HPP
#define LINESING_IDEAL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linesing/stdbasis.hpp"

namespace linesing {

/// Generator list plus cached standard bases. The flag distinguishes the two
/// ambient rings we compute in: the polynomial ring (global orders) and the
/// ring of germs at the origin (local orders).
class IdealHandle {
  public:
    IdealHandle() = default;
    IdealHandle(RingPtr ring, std::vector<MultiPoly> gens, bool local)
        : ring_(std::move(ring)), local_(local) {
        for (auto& g : gens)
            if (!g.is_zero()) gens_.push_back(std::move(g));
        cache_ = std::make_shared<Cache>();
    }

    static IdealHandle span(RingPtr ring, std::vector<MultiPoly> gens, bool local) {
        return IdealHandle(std::move(ring), std::move(gens), local);
    }

    const RingPtr& ring() const { return ring_; }
    bool local() const { return local_; }
    const std::vector<MultiPoly>& generators() const { return gens_; }
    bool has_generators() const { return !gens_.empty(); }

    MonomialOrder default_order() const {
        return local_ ? orders::local_ds(ring_) : orders::global_degrevlex(ring_);
    }

    /// Standard basis under the given order, memoized per order key.
    std::shared_ptr<const StdBasis> basis(const MonomialOrder& ord) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->bases.find(ord.key());
        if (it != cache_->bases.end()) return it->second;
        auto b = std::make_shared<StdBasis>(std_basis(gens_, ord));
        cache_->bases.emplace(ord.key(), b);
        return b;
    }
    std::shared_ptr<const StdBasis> basis() const { return basis(default_order()); }

    std::optional<long> vdim() const { return basis()->vdim(); }
    bool is_zero_dim() const { return vdim().has_value(); }
    bool is_unit() const { return basis()->is_unit(); }
    int krull_dim() const { return basis()->krull_dim(); }

    bool contains(const MultiPoly& f) const {
        if (f.is_zero()) return true;
        if (!has_generators()) return false;
        return normal_form(f.lift_to(ring_), *basis()).is_zero();
    }
    bool contains_ideal(const IdealHandle& other) const {
        for (const auto& g : other.gens_)
            if (!contains(g)) return false;
        return true;
    }
    bool equals(const IdealHandle& other) const {
        return contains_ideal(other) && other.contains_ideal(*this);
    }

    IdealHandle plus(const std::vector<MultiPoly>& extra) const {
        std::vector<MultiPoly> g = gens_;
        for (const auto& e : extra) g.push_back(e.lift_to(ring_));
        return IdealHandle(ring_, std::move(g), local_);
    }
    IdealHandle with_locality(bool local) const { return IdealHandle(ring_, gens_, local); }

  private:
    struct Cache {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const StdBasis>> bases;
    };

    RingPtr ring_;
    std::vector<MultiPoly> gens_;
    bool local_ = false;
    std::shared_ptr<Cache> cache_;
};

namespace ideal_detail {

inline std::string fresh_aux_name(const Ring& r) {
    for (int k = 0;; ++k) {
        std::string name = "@u" + std::to_string(k);
        if (!r.index_of(name)) return name;
    }
}

/// Exact multivariate division h / g (throws when not exact).
inline MultiPoly exact_divide(const MultiPoly& h, const MultiPoly& g) {
    if (g.is_zero()) throw std::domain_error("division by zero polynomial");
    MonomialOrder ord = orders::global_degrevlex(h.ring());
    auto lead = [&](const MultiPoly& p) {
        const Term* best = nullptr;
        for (const auto& t : p.terms())
            if (!best || ord.cmp(t.m, best->m) > 0) best = &t;
        return *best;
    };
    MultiPoly rem = h;
    MultiPoly quot = MultiPoly::zero(h.ring());
    Term lg = lead(g);
    while (!rem.is_zero()) {
        Term lr = lead(rem);
        if (!lg.m.divides(lr.m)) throw std::domain_error("polynomial division is not exact");
        MultiPoly q = MultiPoly::monomial(h.ring(), lr.m.quotient_by(lg.m), lr.c / lg.c);
        quot = quot + q;
        rem = rem - q * g;
    }
    return quot;
}

}  // namespace ideal_detail

/// J ∩ K by the single auxiliary variable u: <u·J, (1-u)·K> ∩ R. The u-block
/// is global on top, so the mechanism is sound over both ambient rings.
inline IdealHandle intersect(const IdealHandle& J, const IdealHandle& K) {
    if (!J.has_generators() || !K.has_generators())
        return IdealHandle(J.ring(), {}, J.local());
    RingPtr ext = J.ring()->with_auxiliary(ideal_detail::fresh_aux_name(*J.ring()));
    size_t u = ext->arity() - 1;
    MultiPoly uvar = MultiPoly::variable(ext, u);
    MultiPoly one_minus_u = MultiPoly::constant(ext, Rat(1)) - uvar;
    std::vector<MultiPoly> gens;
    for (const auto& g : J.generators()) gens.push_back(uvar * g.lift_to(ext));
    for (const auto& g : K.generators()) gens.push_back(one_minus_u * g.lift_to(ext));
    MonomialOrder ord = orders::elimination(ext, {u}, J.local());
    StdBasis b = std_basis(gens, ord);
    std::vector<MultiPoly> out;
    for (const auto& g : b.generators())
        if (g.degree_in(u) == 0) out.push_back(g.contract_to(J.ring()));
    return IdealHandle(J.ring(), std::move(out), J.local());
}

/// Colon ideal (J : g) = {h : h·g in J}, via J ∩ <g> divided by g.
inline IdealHandle quotient_by_element(const IdealHandle& J, const MultiPoly& g0) {
    MultiPoly g = g0.lift_to(J.ring());
    if (g.is_zero()) throw std::domain_error("colon by the zero element");
    if (g.is_constant()) return J;
    IdealHandle gid(J.ring(), {g}, J.local());
    IdealHandle meet = intersect(J, gid);
    std::vector<MultiPoly> out;
    for (const auto& h : meet.generators()) out.push_back(ideal_detail::exact_divide(h, g));
    return IdealHandle(J.ring(), std::move(out), J.local());
}

/// Colon ideal (J : K): intersection of the element colons over K's
/// generators.
inline IdealHandle quotient_by_ideal(const IdealHandle& J, const IdealHandle& K) {
    if (!K.has_generators()) throw std::domain_error("colon by the zero ideal");
    std::optional<IdealHandle> acc;
    for (const auto& g : K.generators()) {
        if (g.is_zero()) continue;
        IdealHandle q = quotient_by_element(J, g);
        acc = acc ? intersect(*acc, q) : q;
    }
    if (!acc) throw std::domain_error("colon by the zero ideal");
    return *acc;
}

struct SaturationResult {
    IdealHandle ideal;
    int steps = 0;
};

/// Iterated colon until fixpoint: (J : K^infinity).
inline SaturationResult saturate(const IdealHandle& J, const IdealHandle& K, int max_steps = 64) {
    IdealHandle cur = J;
    for (int s = 0; s < max_steps; ++s) {
        IdealHandle next = quotient_by_ideal(cur, K);
        if (next.contains_ideal(cur) && cur.contains_ideal(next)) return {cur, s};
        cur = next;
    }
    throw std::runtime_error("saturation did not reach a fixpoint within the step cap");
}

inline SaturationResult saturate(const IdealHandle& J, const MultiPoly& g, int max_steps = 64) {
    return saturate(J, IdealHandle(J.ring(), {g.lift_to(J.ring())}, J.local()), max_steps);
}

/// Elimination ideal J ∩ Q[vars not in `vars`], returned in the same ring.
/// Over the germ ring only auxiliary/deformation variables are eliminable;
/// eliminating a local coordinate this way would be unsound and is rejected.
inline IdealHandle eliminate(const IdealHandle& J, const std::vector<size_t>& vars) {
    const Ring& R = *J.ring();
    if (J.local()) {
        for (size_t v : vars)
            if (R.kind(v) == Ring::VarKind::Coordinate)
                throw std::invalid_argument(
                    "cannot eliminate the local variable '" + R.name(v) +
                    "' over the germ ring");
    }
    MonomialOrder ord = orders::elimination(J.ring(), vars, J.local());
    StdBasis b = std_basis(J.generators(), ord);
    std::vector<MultiPoly> out;
    for (const auto& g : b.generators()) {
        bool free = true;
        for (size_t v : vars)
            if (g.degree_in(v) > 0) free = false;
        if (free) out.push_back(g);
    }
    return IdealHandle(J.ring(), std::move(out), J.local());
}

/// Radical membership g in sqrt(J) by the Rabinowitsch trick in the
/// polynomial ring.
inline bool radical_member(const MultiPoly& g0, const IdealHandle& J) {
    MultiPoly g = g0.lift_to(J.ring());
    if (g.is_zero()) throw std::domain_error("radical membership of the zero element");
    RingPtr ext = J.ring()->with_auxiliary(ideal_detail::fresh_aux_name(*J.ring()));
    size_t u = ext->arity() - 1;
    std::vector<MultiPoly> gens;
    for (const auto& f : J.generators()) gens.push_back(f.lift_to(ext));
    gens.push_back(MultiPoly::constant(ext, Rat(1)) -
                   MultiPoly::variable(ext, u) * g.lift_to(ext));
    StdBasis b = std_basis(gens, orders::global_degrevlex(ext));
    return b.is_unit();
}

}  // namespace linesing

#endif
