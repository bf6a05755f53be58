#ifndef LINESING_MULTIPOLY_HPP
#define LINESING_MULTIPOLY_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linesing/monomial.hpp"
#include "linesing/rational.hpp"
#include "linesing/ring.hpp"

namespace linesing {

struct Term {
    Mono m;
    Rat c;
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted descending in
/// a ring-intrinsic exponent-lex order, so values compare and hash the same
/// way regardless of which semantic monomial order is active.
class MultiPoly {
  public:
    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly zero(RingPtr ring) { return MultiPoly(std::move(ring)); }
    static MultiPoly constant(RingPtr ring, const Rat& c) {
        MultiPoly p(std::move(ring));
        if (c != 0) p.terms_.push_back({Mono(p.ring_->arity()), c});
        return p;
    }
    static MultiPoly variable(RingPtr ring, size_t index) {
        MultiPoly p(std::move(ring));
        Mono m(p.ring_->arity());
        m.set(index, 1);
        p.terms_.push_back({m, Rat(1)});
        return p;
    }
    static MultiPoly monomial(RingPtr ring, const Mono& m, const Rat& c) {
        MultiPoly p(std::move(ring));
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_[0].c;
    }

    long total_degree() const {
        long d = -1;
        for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.m.degree()));
        return d;
    }

    bool operator==(const MultiPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator-() const {
        MultiPoly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.m, -t.c});
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check_ring(b);
        MultiPoly r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = Mono::lex_cmp(a.terms_[i].m, b.terms_[j].m);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                Rat s = a.terms_[i].c + b.terms_[j].c;
                if (s != 0) r.terms_.push_back({a.terms_[i].m, s});
                ++i;
                ++j;
            }
        }
        while (i < a.terms_.size()) r.terms_.push_back(a.terms_[i++]);
        while (j < b.terms_.size()) r.terms_.push_back(b.terms_[j++]);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_ring(b);
        MultiPoly r(a.ring_);
        if (a.is_zero() || b.is_zero()) return r;
        std::vector<Term> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) acc.push_back({ta.m * tb.m, ta.c * tb.c});
        std::sort(acc.begin(), acc.end(),
                  [](const Term& x, const Term& y) { return Mono::lex_cmp(x.m, y.m) > 0; });
        for (auto& t : acc) {
            if (!r.terms_.empty() && r.terms_.back().m == t.m) {
                r.terms_.back().c += t.c;
                if (r.terms_.back().c == 0) r.terms_.pop_back();
            } else if (t.c != 0) {
                r.terms_.push_back(std::move(t));
            }
        }
        return r;
    }
    friend MultiPoly operator*(const Rat& s, const MultiPoly& a) {
        MultiPoly r(a.ring_);
        if (s == 0) return r;
        r.terms_.reserve(a.terms_.size());
        for (const auto& t : a.terms_) r.terms_.push_back({t.m, s * t.c});
        return r;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(ring_, Rat(1));
        MultiPoly base = *this;
        while (e) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    MultiPoly derivative(size_t var) const {
        if (var >= ring_->arity()) throw std::invalid_argument("derivative: unknown variable");
        MultiPoly r(ring_);
        for (const auto& t : terms_) {
            uint32_t e = t.m[var];
            if (e == 0) continue;
            Mono m = t.m;
            m.set(var, e - 1);
            r.terms_.push_back({m, Rat(static_cast<long>(e)) * t.c});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return Mono::lex_cmp(x.m, y.m) > 0; });
        return r;
    }

    /// var := value.
    MultiPoly substitute(size_t var, const Rat& value) const {
        MultiPoly r(ring_);
        std::vector<Term> acc;
        for (const auto& t : terms_) {
            uint32_t e = t.m[var];
            Mono m = t.m;
            m.set(var, 0);
            acc.push_back({m, t.c * rat_pow(value, e)});
        }
        return from_unsorted(ring_, std::move(acc));
    }

    /// var := g (same ring).
    MultiPoly substitute(size_t var, const MultiPoly& g) const {
        check_ring(g);
        MultiPoly r = zero(ring_);
        for (const auto& t : terms_) {
            Mono m = t.m;
            uint32_t e = m[var];
            m.set(var, 0);
            r = r + monomial(ring_, m, t.c) * g.pow(e);
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& point) const {
        if (point.size() != ring_->arity()) throw std::invalid_argument("eval: point arity mismatch");
        Rat acc(0);
        for (const auto& t : terms_) {
            Rat v = t.c;
            for (size_t i = 0; i < ring_->arity(); ++i)
                if (t.m[i]) v *= rat_pow(point[i], t.m[i]);
            acc += v;
        }
        return acc;
    }

    /// Order of vanishing along I = <x_1,...,x_{n-1}>: the minimum over the
    /// terms of their total degree in the section variables. Exact because
    /// I^p is generated by monomials.
    long i_order() const {
        if (is_zero()) throw std::domain_error("I-order of the zero polynomial");
        const Ring& R = *ring_;
        long best = -1;
        for (const auto& t : terms_) {
            long d = t.m.degree_where([&](size_t i) { return R.is_line_section_var(i); });
            if (best < 0 || d < best) best = d;
        }
        return best;
    }

    /// Image under a variable map into another ring: exponent of variable i
    /// goes to variable var_map[i].
    MultiPoly map_vars(RingPtr target, const std::vector<size_t>& var_map) const {
        if (var_map.size() != ring_->arity()) throw std::invalid_argument("map_vars: bad map size");
        std::vector<Term> acc;
        acc.reserve(terms_.size());
        for (const auto& t : terms_) {
            Mono m(target->arity());
            for (size_t i = 0; i < ring_->arity(); ++i) {
                if (t.m[i] == 0) continue;
                size_t j = var_map[i];
                if (j >= target->arity()) throw std::invalid_argument("map_vars: target out of range");
                m.set(j, m[j] + t.m[i]);
            }
            acc.push_back({m, t.c});
        }
        return from_unsorted(target, std::move(acc));
    }

    /// Lift into a superring that contains all our variable names.
    MultiPoly lift_to(RingPtr target) const {
        std::vector<size_t> map(ring_->arity());
        for (size_t i = 0; i < ring_->arity(); ++i) map[i] = target->index_of_checked(ring_->name(i));
        return map_vars(target, map);
    }

    /// Push down to a subring; every used variable must exist there.
    MultiPoly contract_to(RingPtr target) const {
        std::vector<size_t> map(ring_->arity(), 0);
        for (size_t i = 0; i < ring_->arity(); ++i) {
            auto j = target->index_of(ring_->name(i));
            if (!j) {
                for (const auto& t : terms_)
                    if (t.m[i] != 0)
                        throw std::invalid_argument("contract_to: polynomial uses '" +
                                                    ring_->name(i) + "'");
                map[i] = 0;  // unused, any slot works
            } else {
                map[i] = *j;
            }
        }
        return map_vars(target, map);
    }

    /// Exact division by a monomial; throws when any term is not divisible.
    MultiPoly divide_by_monomial(const Mono& d) const {
        MultiPoly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!d.divides(t.m))
                throw std::domain_error("monomial division leaves a remainder");
            r.terms_.push_back({t.m.quotient_by(d), t.c});
        }
        return r;  // lex order preserved by monomial shift
    }

    /// Collect the coefficient (a polynomial in the other variables) of
    /// var^k.
    MultiPoly coeff_of(size_t var, uint32_t k) const {
        MultiPoly r(ring_);
        for (const auto& t : terms_) {
            if (t.m[var] != k) continue;
            Mono m = t.m;
            m.set(var, 0);
            r.terms_.push_back({m, t.c});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return Mono::lex_cmp(x.m, y.m) > 0; });
        return r;
    }

    uint32_t degree_in(size_t var) const {
        uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.m[var]);
        return d;
    }

    static MultiPoly from_unsorted(RingPtr ring, std::vector<Term> acc) {
        std::sort(acc.begin(), acc.end(),
                  [](const Term& x, const Term& y) { return Mono::lex_cmp(x.m, y.m) > 0; });
        MultiPoly r(std::move(ring));
        for (auto& t : acc) {
            if (!r.terms_.empty() && r.terms_.back().m == t.m) {
                r.terms_.back().c += t.c;
                if (r.terms_.back().c == 0) r.terms_.pop_back();
            } else if (t.c != 0) {
                r.terms_.push_back(std::move(t));
            }
        }
        return r;
    }

  private:
    void check_ring(const MultiPoly& o) const {
        if (ring_.get() == o.ring_.get()) return;
        if (!ring_ || !o.ring_ || !ring_->same_vars(*o.ring_))
            throw std::invalid_argument("polynomials from different rings");
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Partial derivatives with respect to the coordinate variables x_1..x_n.
inline std::vector<MultiPoly> jacobian(const MultiPoly& f) {
    const Ring& R = *f.ring();
    std::vector<MultiPoly> out;
    out.reserve(R.coordinate_count());
    for (size_t i = 0; i < R.arity(); ++i)
        if (R.kind(i) == Ring::VarKind::Coordinate) out.push_back(f.derivative(i));
    return out;
}

/// Determinant of the coordinate Hessian, as a polynomial.
inline MultiPoly hessian_det(const MultiPoly& f) {
    const Ring& R = *f.ring();
    std::vector<size_t> coords;
    for (size_t i = 0; i < R.arity(); ++i)
        if (R.kind(i) == Ring::VarKind::Coordinate) coords.push_back(i);
    size_t n = coords.size();
    std::vector<std::vector<MultiPoly>> h(n, std::vector<MultiPoly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            h[i][j] = f.derivative(coords[i]).derivative(coords[j]);
            if (j != i) h[j][i] = h[i][j];
        }
    // cofactor expansion; n stays tiny here
    std::vector<size_t> cols(n);
    for (size_t i = 0; i < n; ++i) cols[i] = i;
    struct Rec {
        const std::vector<std::vector<MultiPoly>>& h;
        RingPtr ring;
        MultiPoly run(size_t row, std::vector<size_t>& cols) {
            if (cols.empty()) return MultiPoly::constant(ring, Rat(1));
            MultiPoly acc = MultiPoly::zero(ring);
            for (size_t k = 0; k < cols.size(); ++k) {
                size_t c = cols[k];
                if (h[row][c].is_zero()) continue;
                std::vector<size_t> rest;
                rest.reserve(cols.size() - 1);
                for (size_t l = 0; l < cols.size(); ++l)
                    if (l != k) rest.push_back(cols[l]);
                MultiPoly sub = run(row + 1, rest);
                MultiPoly contrib = h[row][c] * sub;
                acc = (k % 2 == 0) ? acc + contrib : acc - contrib;
            }
            return acc;
        }
    } rec{h, f.ring()};
    return rec.run(0, cols);
}

}  // namespace linesing

#endif
