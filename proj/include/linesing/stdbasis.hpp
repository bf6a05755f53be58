#ifndef LINESING_STDBASIS_HPP
#define LINESING_STDBASIS_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "linesing/multipoly.hpp"
#include "linesing/order.hpp"

namespace linesing {

namespace sb_detail {

/// Working polynomial: terms sorted descending in the active order.
struct EP {
    std::vector<Term> t;
    bool is_zero() const { return t.empty(); }
    const Mono& lm() const { return t.front().m; }
    const Rat& lc() const { return t.front().c; }
    long max_deg() const {
        long d = 0;
        for (const auto& x : t) d = std::max(d, static_cast<long>(x.m.degree()));
        return d;
    }
    long ecart() const { return max_deg() - static_cast<long>(lm().degree()); }
};

inline EP to_ordered(const MultiPoly& f, const MonomialOrder& ord, long trunc) {
    EP p;
    p.t.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        if (trunc > 0 && static_cast<long>(t.m.degree()) >= trunc) continue;
        p.t.push_back(t);
    }
    std::sort(p.t.begin(), p.t.end(),
              [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
    return p;
}

inline MultiPoly from_ordered(const EP& p, const RingPtr& ring) {
    std::vector<Term> ts = p.t;
    return MultiPoly::from_unsorted(ring, std::move(ts));
}

/// Scale to integer coefficients with content 1 and positive leading
/// coefficient. A unit-constant rescale, harmless for ideal membership and
/// the basis itself.
inline void normalize_primitive(EP& p) {
    if (p.is_zero()) return;
    Int den(1);
    for (const auto& t : p.t) den = den / gcd(den, t.c.get_den()) * t.c.get_den();
    Int num(0);
    for (const auto& t : p.t) {
        num = gcd(num, t.c.get_num() * (den / t.c.get_den()));
        if (num == 1) break;
    }
    Rat scale = Rat(den) / Rat(num);
    if (p.t.front().c * scale < 0) scale = -scale;
    if (scale != 1)
        for (auto& t : p.t) t.c *= scale;
}

/// r := a + c * x^shift * b, dropping terms of total degree >= trunc when
/// trunc > 0.
inline EP add_scaled_shifted(const EP& a, const Rat& c, const Mono& shift, const EP& b,
                             const MonomialOrder& ord, long trunc) {
    EP r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    auto emit_b = [&](size_t jj) -> std::optional<Term> {
        Term t{b.t[jj].m * shift, c * b.t[jj].c};
        if (trunc > 0 && static_cast<long>(t.m.degree()) >= trunc) return std::nullopt;
        return t;
    };
    while (i < a.t.size() && j < b.t.size()) {
        Mono mb = b.t[j].m * shift;
        int cmp = ord.cmp(a.t[i].m, mb);
        if (cmp > 0) {
            r.t.push_back(a.t[i++]);
        } else if (cmp < 0) {
            if (auto t = emit_b(j)) r.t.push_back(*t);
            ++j;
        } else {
            Rat s = a.t[i].c + c * b.t[j].c;
            if (s != 0 && !(trunc > 0 && static_cast<long>(a.t[i].m.degree()) >= trunc))
                r.t.push_back({a.t[i].m, s});
            ++i;
            ++j;
        }
    }
    while (i < a.t.size()) r.t.push_back(a.t[i++]);
    while (j < b.t.size()) {
        if (auto t = emit_b(j)) r.t.push_back(*t);
        ++j;
    }
    return r;
}

}  // namespace sb_detail

/// Standard basis of an ideal under a fixed monomial order. For global orders
/// this is the reduced Groebner basis; for local or mixed orders generators
/// are minimal (pairwise non-divisible leading monomials) but tails are not
/// fully reduced, as usual over local rings.
class StdBasis {
  public:
    StdBasis(MonomialOrder order, long trunc) : order_(std::move(order)), trunc_(trunc) {}

    const MonomialOrder& order() const { return order_; }
    const RingPtr& ring() const { return order_.ring(); }
    long truncation_degree() const { return trunc_; }  // 0 = none
    const std::vector<MultiPoly>& generators() const { return gens_; }
    const std::vector<Mono>& staircase() const { return stair_; }

    bool is_unit() const {
        return stair_.size() == 1 && stair_[0].is_one();
    }

    /// Dimension of the quotient as a Q-vector space; nullopt when infinite.
    std::optional<long> vdim() const {
        size_t n = ring()->arity();
        std::vector<long> bound(n, -1);
        for (const auto& m : stair_) {
            // pure power of variable i caps that exponent
            size_t support = 0, var = 0;
            for (size_t i = 0; i < n; ++i)
                if (m[i] > 0) {
                    ++support;
                    var = i;
                }
            if (support == 0) return 0;  // unit ideal
            if (support == 1 && (bound[var] < 0 || static_cast<long>(m[var]) < bound[var]))
                bound[var] = m[var];
        }
        for (size_t i = 0; i < n; ++i)
            if (bound[i] < 0) return std::nullopt;
        long count = 0;
        Mono m(n);
        enumerate_box(m, 0, bound, [&](const Mono& cand) {
            if (!divisible_by_staircase(cand)) ++count;
        });
        return count;
    }

    /// Number of monomials outside the leading ideal with total degree below
    /// the bound. For the degree-compatible local order this equals
    /// dim of the quotient by (ideal + m^bound).
    long count_complement_below(long deg_bound) const {
        if (deg_bound <= 0) return 0;
        size_t n = ring()->arity();
        long count = 0;
        Mono m(n);
        count_rec(m, 0, deg_bound - 1, count);
        return count;
    }

    /// Combinatorial dimension of the leading-term staircase: the largest
    /// variable subset meeting no staircase support. -1 for the unit ideal.
    int krull_dim() const {
        if (is_unit()) return -1;
        size_t n = ring()->arity();
        int best = -1;
        for (uint32_t mask = 0; mask < (1u << n); ++mask) {
            bool ok = true;
            for (const auto& m : stair_) {
                bool inside = true;
                for (size_t i = 0; i < n && inside; ++i)
                    if (m[i] > 0 && !(mask & (1u << i))) inside = false;
                if (inside) {
                    ok = false;
                    break;
                }
            }
            if (ok) best = std::max(best, static_cast<int>(__builtin_popcount(mask)));
        }
        return best;
    }

    bool divisible_by_staircase(const Mono& m) const {
        for (const auto& s : stair_)
            if (s.divides(m)) return true;
        return false;
    }

  private:
    template <typename F>
    static void enumerate_box(Mono& m, size_t var, const std::vector<long>& bound, F&& f) {
        if (var == bound.size()) {
            f(m);
            return;
        }
        for (long e = 0; e < bound[var]; ++e) {
            m.set(var, static_cast<uint32_t>(e));
            enumerate_box(m, var + 1, bound, f);
        }
        m.set(var, 0);
    }

    void count_rec(Mono& m, size_t var, long budget, long& count) const {
        if (divisible_by_staircase(m)) return;  // monomial multiples stay divisible
        if (var == m.arity()) {
            ++count;
            return;
        }
        for (long e = 0; e < budget + 1; ++e) {
            m.set(var, static_cast<uint32_t>(e));
            if (e > 0 && divisible_by_staircase(m)) break;
            count_rec(m, var + 1, budget - e, count);
        }
        m.set(var, 0);
    }

    friend class StdBasisEngine;
    MonomialOrder order_;
    long trunc_ = 0;
    std::vector<MultiPoly> gens_;
    std::vector<Mono> stair_;
};

/// Buchberger / Mora driver. One instance per computation; deterministic.
class StdBasisEngine {
  public:
    explicit StdBasisEngine(MonomialOrder order, long trunc = 0)
        : ord_(std::move(order)), trunc_(trunc) {
        if (trunc_ > 0 && !ord_.is_global())
            throw std::logic_error("degree truncation requires a global order");
    }

    StdBasis compute(const std::vector<MultiPoly>& gens) {
        using namespace sb_detail;
        std::vector<EP> g;
        for (const auto& f : gens) {
            EP p = to_ordered(f, ord_, trunc_);
            if (p.is_zero()) continue;
            normalize_primitive(p);
            g.push_back(std::move(p));
        }
        buchberger(g);
        minimalize(g);
        if (ord_.is_global()) tail_reduce_all(g);
        for (auto& p : g) normalize_primitive(p);
        std::sort(g.begin(), g.end(), [&](const EP& a, const EP& b) {
            return ord_.cmp(a.lm(), b.lm()) > 0;
        });

        StdBasis b(ord_, trunc_);
        for (const auto& p : g) {
            b.gens_.push_back(from_ordered(p, ord_.ring()));
            b.stair_.push_back(p.lm());
        }
        return b;
    }

    /// Weak normal form (Mora's algorithm). For global orders the ecart test
    /// never fires and this is plain top reduction; a unit multiplier is
    /// implicit for local orders. After the top loop, tail terms up to a
    /// degree window are cleared by plain reductions, which leave the unit
    /// untouched.
    MultiPoly weak_normal_form(const MultiPoly& f, const StdBasis& basis) const {
        using namespace sb_detail;
        check_compatible(f, basis);
        std::vector<EP> base;
        base.reserve(basis.generators().size());
        for (const auto& p : basis.generators()) base.push_back(to_ordered(p, ord_, trunc_));
        EP h = to_ordered(f, ord_, trunc_);
        EP r = mora_reduce(std::move(h), base, /*keep_value=*/true);
        return from_ordered(r, ord_.ring());
    }

    /// Strong normal form for global orders: the exact coset representative
    /// supported outside the leading ideal.
    MultiPoly strong_normal_form(const MultiPoly& f, const StdBasis& basis) const {
        using namespace sb_detail;
        if (!ord_.is_global())
            throw std::logic_error("strong normal form needs a global order");
        check_compatible(f, basis);
        std::vector<EP> base;
        base.reserve(basis.generators().size());
        for (const auto& p : basis.generators()) base.push_back(to_ordered(p, ord_, trunc_));
        EP h = to_ordered(f, ord_, trunc_);
        EP out;
        while (!h.is_zero()) {
            bool reduced = false;
            for (const auto& g : base) {
                if (g.lm().divides(h.lm())) {
                    Rat c = -h.lc() / g.lc();
                    h = add_scaled_shifted(h, c, h.lm().quotient_by(g.lm()), g, ord_, trunc_);
                    reduced = true;
                    break;
                }
            }
            if (!reduced) {
                out.t.push_back(h.t.front());
                h.t.erase(h.t.begin());
            }
        }
        return from_ordered(out, ord_.ring());
    }

    /// Buchberger closure re-check: every S-polynomial of the basis has weak
    /// normal form zero.
    bool closure_holds(const StdBasis& basis) const {
        using namespace sb_detail;
        std::vector<EP> base;
        for (const auto& p : basis.generators()) base.push_back(to_ordered(p, ord_, trunc_));
        for (size_t i = 0; i < base.size(); ++i)
            for (size_t j = i + 1; j < base.size(); ++j) {
                EP s = spoly(base[i], base[j]);
                EP r = mora_reduce(std::move(s), base, false);
                if (!r.is_zero()) return false;
            }
        return true;
    }

  private:
    void check_compatible(const MultiPoly& f, const StdBasis& basis) const {
        if (basis.order().key() != ord_.key())
            throw std::invalid_argument("normal form under a different monomial order");
        if (!f.ring()->same_vars(*ord_.ring()))
            throw std::invalid_argument("normal form: ring mismatch");
    }

    sb_detail::EP spoly(const sb_detail::EP& a, const sb_detail::EP& b) const {
        using namespace sb_detail;
        Mono l = lcm(a.lm(), b.lm());
        EP left = add_scaled_shifted(EP{}, b.lc(), l.quotient_by(a.lm()), a, ord_, trunc_);
        EP s = add_scaled_shifted(left, -a.lc(), l.quotient_by(b.lm()), b, ord_, trunc_);
        normalize_primitive(s);
        return s;
    }

    /// Mora weak normal form of h against base (plus self-insertions). With
    /// keep_value the result is exactly h minus an ideal combination divided
    /// by the implicit unit; otherwise intermediate content is stripped,
    /// which rescales the result by a nonzero constant (fine inside basis
    /// construction and membership tests).
    sb_detail::EP mora_reduce(sb_detail::EP h, const std::vector<sb_detail::EP>& base,
                              bool keep_value) const {
        using namespace sb_detail;
        std::deque<EP> extra;  // Mora self-insertions; deque keeps references stable
        auto pick = [&](const Mono& lm) -> const EP* {
            const EP* best = nullptr;
            long best_ecart = 0;
            for (const auto& g : base)
                if (g.lm().divides(lm)) {
                    long e = g.ecart();
                    if (!best || e < best_ecart) {
                        best = &g;
                        best_ecart = e;
                    }
                }
            for (const auto& g : extra)
                if (g.lm().divides(lm)) {
                    long e = g.ecart();
                    if (!best || e < best_ecart) {
                        best = &g;
                        best_ecart = e;
                    }
                }
            return best;
        };

        EP out;
        // top loop: Mora with self-insertion
        while (!h.is_zero()) {
            const EP* g = pick(h.lm());
            if (!g) {
                if (ord_.is_global()) {
                    // move the irreducible leading term to the result and keep
                    // reducing: yields the fully reduced form
                    out.t.push_back(h.t.front());
                    h.t.erase(h.t.begin());
                    continue;
                }
                break;
            }
            if (!ord_.is_global() && g->ecart() > h.ecart()) extra.push_back(h);
            Rat c = -h.lc() / g->lc();
            h = add_scaled_shifted(h, c, h.lm().quotient_by(g->lm()), *g, ord_, trunc_);
            if (!keep_value) normalize_primitive(h);
        }
        if (ord_.is_global()) return out;
        if (h.is_zero()) return h;

        // bounded tail pass for local orders: plain reductions only (they do
        // not disturb the accumulated unit), restricted to a degree window so
        // the walk stays finite
        long cap = h.max_deg() + 4;
        for (const auto& g : base) cap = std::max(cap, g.max_deg() + 4);
        EP tail_out;
        while (!h.is_zero()) {
            if (static_cast<long>(h.lm().degree()) <= cap) {
                const EP* g = nullptr;
                for (const auto& gg : base)
                    if (gg.lm().divides(h.lm())) {
                        g = &gg;
                        break;
                    }
                if (g) {
                    Rat c = -h.lc() / g->lc();
                    h = add_scaled_shifted(h, c, h.lm().quotient_by(g->lm()), *g, ord_, trunc_);
                    if (!keep_value) normalize_primitive(h);
                    continue;
                }
            }
            tail_out.t.push_back(h.t.front());
            h.t.erase(h.t.begin());
        }
        return tail_out;
    }

    void buchberger(std::vector<sb_detail::EP>& g) const {
        using namespace sb_detail;
        // pending S-pairs keyed by (lcm degree, i, j): normal selection
        // strategy
        std::set<std::tuple<long, size_t, size_t>> pending;
        std::set<std::pair<size_t, size_t>> pending_flat;
        auto push_pair = [&](size_t i, size_t j) {
            if (i > j) std::swap(i, j);
            // S-polynomial of two monomials vanishes identically
            if (g[i].t.size() == 1 && g[j].t.size() == 1) return;
            Mono l = lcm(g[i].lm(), g[j].lm());
            pending.insert({static_cast<long>(l.degree()), i, j});
            pending_flat.insert({i, j});
        };
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = i + 1; j < g.size(); ++j) push_pair(i, j);

        while (!pending.empty()) {
            auto it = pending.begin();
            auto [ldeg, i, j] = *it;
            pending.erase(it);
            pending_flat.erase({i, j});

            // product criterion: proof needs tails below the lead monomial,
            // so only trust it under global orders
            if (ord_.is_global() && coprime(g[i].lm(), g[j].lm())) continue;
            // chain criterion
            Mono l = lcm(g[i].lm(), g[j].lm());
            bool skip = false;
            for (size_t k = 0; k < g.size() && !skip; ++k) {
                if (k == i || k == j) continue;
                if (!g[k].lm().divides(l)) continue;
                auto p1 = std::minmax(i, k);
                auto p2 = std::minmax(j, k);
                if (!pending_flat.count({p1.first, p1.second}) &&
                    !pending_flat.count({p2.first, p2.second}))
                    skip = true;
            }
            if (skip) continue;

            EP s = spoly(g[i], g[j]);
            EP r = mora_reduce(std::move(s), g, false);
            if (r.is_zero()) continue;
            normalize_primitive(r);
            g.push_back(std::move(r));
            size_t newi = g.size() - 1;
            for (size_t k = 0; k < newi; ++k) push_pair(k, newi);
        }
    }

    void minimalize(std::vector<sb_detail::EP>& g) const {
        using namespace sb_detail;
        std::vector<EP> keep;
        for (size_t i = 0; i < g.size(); ++i) {
            bool redundant = false;
            for (size_t j = 0; j < g.size() && !redundant; ++j) {
                if (i == j) continue;
                if (g[j].lm().divides(g[i].lm())) {
                    if (g[j].lm() == g[i].lm() && j > i) continue;  // keep the first
                    redundant = true;
                }
            }
            if (!redundant) keep.push_back(g[i]);
        }
        g = std::move(keep);
    }

    void tail_reduce_all(std::vector<sb_detail::EP>& g) const {
        using namespace sb_detail;
        for (size_t i = 0; i < g.size(); ++i) {
            bool changed = true;
            while (changed) {
                changed = false;
                // reduce any term of g[i] by some other leading monomial
                for (size_t ti = 0; ti < g[i].t.size() && !changed; ++ti) {
                    for (size_t j = 0; j < g.size(); ++j) {
                        if (i == j) continue;
                        if (g[j].lm().divides(g[i].t[ti].m)) {
                            Rat c = -g[i].t[ti].c / g[j].lc();
                            g[i] = add_scaled_shifted(g[i], c, g[i].t[ti].m.quotient_by(g[j].lm()),
                                                      g[j], ord_, trunc_);
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
    }

    MonomialOrder ord_;
    long trunc_;
};

inline StdBasis std_basis(const std::vector<MultiPoly>& gens, const MonomialOrder& ord,
                          long trunc = 0) {
    return StdBasisEngine(ord, trunc).compute(gens);
}

/// Prepared strong-normal-form context for repeated reductions against one
/// global basis (the generators are sorted into the active order once).
class NFKernel {
  public:
    explicit NFKernel(std::shared_ptr<const StdBasis> basis)
        : basis_(std::move(basis)),
          ord_(basis_->order()),
          trunc_(basis_->truncation_degree()) {
        if (!ord_.is_global()) throw std::logic_error("NFKernel requires a global order");
        for (const auto& p : basis_->generators())
            base_.push_back(sb_detail::to_ordered(p, ord_, trunc_));
    }

    const StdBasis& basis() const { return *basis_; }

    MultiPoly reduce(const MultiPoly& f) const {
        using namespace sb_detail;
        EP h = to_ordered(f, ord_, trunc_);
        EP out;
        while (!h.is_zero()) {
            bool reduced = false;
            for (const auto& g : base_) {
                if (g.lm().divides(h.lm())) {
                    Rat c = -h.lc() / g.lc();
                    h = add_scaled_shifted(h, c, h.lm().quotient_by(g.lm()), g, ord_, trunc_);
                    reduced = true;
                    break;
                }
            }
            if (!reduced) {
                out.t.push_back(h.t.front());
                h.t.erase(h.t.begin());
            }
        }
        return from_ordered(out, ord_.ring());
    }

  private:
    std::shared_ptr<const StdBasis> basis_;
    MonomialOrder ord_;
    long trunc_;
    std::vector<sb_detail::EP> base_;
};

/// Weak normal form against a computed basis (strong for global orders).
inline MultiPoly normal_form(const MultiPoly& f, const StdBasis& basis) {
    StdBasisEngine e(basis.order(), basis.truncation_degree());
    if (basis.order().is_global()) return e.strong_normal_form(f, basis);
    return e.weak_normal_form(f, basis);
}

/// All monomials of the ring with total degree exactly d.
inline std::vector<MultiPoly> monomials_of_degree(const RingPtr& ring, long d) {
    std::vector<MultiPoly> out;
    Mono m(ring->arity());
    struct Rec {
        const RingPtr& ring;
        std::vector<MultiPoly>& out;
        void run(Mono& m, size_t var, long left) {
            if (var + 1 == m.arity()) {
                m.set(var, static_cast<uint32_t>(left));
                out.push_back(MultiPoly::monomial(ring, m, Rat(1)));
                m.set(var, 0);
                return;
            }
            for (long e = 0; e <= left; ++e) {
                m.set(var, static_cast<uint32_t>(e));
                run(m, var + 1, left - e);
            }
            m.set(var, 0);
        }
    } rec{ring, out};
    rec.run(m, 0, d);
    return out;
}

}  // namespace linesing

#endif
