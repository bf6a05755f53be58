#ifndef LINESING_QUOTIENT_HPP
#define LINESING_QUOTIENT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linesing/ideal.hpp"
#include "linesing/matrix.hpp"
#include "linesing/stdbasis.hpp"
#include "linesing/unipoly.hpp"

namespace linesing {

namespace quot_detail {

/// dim_Q of Q[x]/(J + m^N): Groebner basis of the generators together with
/// the degree-N monomials, with all arithmetic truncated below degree N.
inline StdBasis truncated_basis(const std::vector<MultiPoly>& gens, const RingPtr& ring, long N) {
    std::vector<MultiPoly> all = gens;
    for (auto& m : monomials_of_degree(ring, N)) all.push_back(std::move(m));
    // cutoff strictly above N so the m^N generators themselves survive
    return std_basis(all, orders::global_degrevlex(ring), N + 1);
}

inline long truncated_vdim(const std::vector<MultiPoly>& gens, const RingPtr& ring, long N) {
    return truncated_basis(gens, ring, N).count_complement_below(N);
}

}  // namespace quot_detail

/// Finite-dimensional quotient algebra with its monomial basis and the
/// multiplication matrices of the ring variables.
///
/// Local (germ) ideals are realized through truncation: once dim C{x}/J = d
/// is known from the Mora staircase, m^N lands inside J for the first N whose
/// truncated dimension reaches d, and Q[x]/(J + m^N) is the same algebra with
/// honest global normal forms. The monomial basis below is the one of that
/// truncated presentation.
class QuotientAlgebra {
  public:
    static QuotientAlgebra build(const IdealHandle& J, const MonomialOrder& ord) {
        QuotientAlgebra A;
        A.ring_ = J.ring();
        A.order_key_ = ord.key();
        if (ord.is_global()) {
            A.basis_ = std::make_shared<StdBasis>(*J.basis(ord));
            auto d = A.basis_->vdim();
            if (!d) throw std::domain_error("quotient algebra of an infinite-dimensional ideal");
            A.collect_basis_monomials(/*bound=*/-1);
        } else {
            auto localbasis = J.basis(ord);
            auto d = localbasis->vdim();
            if (!d) throw std::domain_error("quotient algebra of an infinite-dimensional ideal");
            long N = 1;
            while (localbasis->count_complement_below(N) < *d) ++N;
            StdBasis tb = quot_detail::truncated_basis(J.generators(), A.ring_, N);
            if (tb.count_complement_below(N) != *d)
                throw std::logic_error(
                    "truncated presentation disagrees with the Mora staircase dimension");
            A.basis_ = std::make_shared<StdBasis>(std::move(tb));
            A.collect_basis_monomials(N);
        }
        A.nf_ = std::make_shared<NFKernel>(A.basis_);
        A.build_matrices();
        return A;
    }

    const RingPtr& ring() const { return ring_; }
    size_t dimension() const { return basis_monomials_.size(); }
    const std::vector<Mono>& basis_monomials() const { return basis_monomials_; }
    const RatMatrix& mult_matrix(size_t var) const { return mult_.at(var); }
    const StdBasis& presentation() const { return *basis_; }

    /// Coordinates of the class of f in the monomial basis.
    std::vector<Rat> coordinates(const MultiPoly& f) const {
        MultiPoly nf = nf_->reduce(f.lift_to(ring_));
        std::vector<Rat> v(dimension(), Rat(0));
        for (const auto& t : nf.terms()) {
            auto it = index_.find(key_of(t.m));
            if (it == index_.end())
                throw std::logic_error("normal form left the monomial basis");
            v[it->second] = t.c;
        }
        return v;
    }

    /// Matrix of multiplication by (the class of) g.
    RatMatrix operator_of(const MultiPoly& g) const {
        size_t d = dimension();
        RatMatrix M(d, d);
        MultiPoly gl = nf_->reduce(g.lift_to(ring_));
        for (size_t j = 0; j < d; ++j) {
            MultiPoly prod = gl * MultiPoly::monomial(ring_, basis_monomials_[j], Rat(1));
            MultiPoly nf = nf_->reduce(prod);
            for (const auto& t : nf.terms()) {
                auto it = index_.find(key_of(t.m));
                if (it == index_.end())
                    throw std::logic_error("normal form left the monomial basis");
                M.at(it->second, j) = t.c;
            }
        }
        return M;
    }

    size_t mult_operator_rank(const MultiPoly& g) const { return operator_of(g).rank(); }

    /// Monic characteristic polynomial of multiplication by a ring variable,
    /// written in that variable. For a finite module over the x_n-line this
    /// generates the zeroth Fitting ideal of the pushforward, by the
    /// elementary-divisor decomposition into generalized eigenspaces.
    UniPoly char_poly_of_mult(size_t var) const {
        return char_poly(mult_.at(var), ring_->name(var));
    }
    UniPoly char_poly_of_mult(const std::string& var_name) const {
        return char_poly_of_mult(ring_->index_of_checked(var_name));
    }

    bool matrices_commute() const {
        for (size_t a = 0; a < mult_.size(); ++a)
            for (size_t b = a + 1; b < mult_.size(); ++b)
                if (!(mult_[a] * mult_[b] == mult_[b] * mult_[a])) return false;
        return true;
    }

  private:
    void collect_basis_monomials(long bound) {
        // Deterministic basis order: by total degree, then exponent-lex.
        size_t n = ring_->arity();
        std::vector<long> box(n, -1);
        for (const auto& m : basis_->staircase()) {
            size_t support = 0, var = 0;
            for (size_t i = 0; i < n; ++i)
                if (m[i] > 0) {
                    ++support;
                    var = i;
                }
            if (support == 1 && (box[var] < 0 || static_cast<long>(m[var]) < box[var]))
                box[var] = m[var];
            if (support == 0) {  // unit ideal: empty algebra
                basis_monomials_.clear();
                return;
            }
        }
        for (size_t i = 0; i < n; ++i)
            if (box[i] < 0) throw std::domain_error("quotient algebra of an infinite-dimensional ideal");
        std::vector<Mono> out;
        Mono m(n);
        collect_rec(m, 0, box, bound, out);
        std::sort(out.begin(), out.end(), [](const Mono& a, const Mono& b) {
            if (a.degree() != b.degree()) return a.degree() < b.degree();
            return Mono::lex_cmp(a, b) < 0;
        });
        basis_monomials_ = std::move(out);
        for (size_t i = 0; i < basis_monomials_.size(); ++i)
            index_[key_of(basis_monomials_[i])] = i;
    }

    void collect_rec(Mono& m, size_t var, const std::vector<long>& box, long bound,
                     std::vector<Mono>& out) const {
        if (basis_->divisible_by_staircase(m)) return;
        if (bound > 0 && static_cast<long>(m.degree()) >= bound) return;
        if (var == m.arity()) {
            out.push_back(m);
            return;
        }
        for (long e = 0; e < box[var]; ++e) {
            m.set(var, static_cast<uint32_t>(e));
            if (e > 0 && basis_->divisible_by_staircase(m)) break;
            if (bound > 0 && static_cast<long>(m.degree()) >= bound) break;
            collect_rec(m, var + 1, box, bound, out);
        }
        m.set(var, 0);
    }

    void build_matrices() {
        size_t n = ring_->arity();
        mult_.assign(n, RatMatrix(dimension(), dimension()));
        for (size_t v = 0; v < n; ++v)
            mult_[v] = operator_of(MultiPoly::variable(ring_, v));
    }

    static std::string key_of(const Mono& m) {
        std::string k;
        for (size_t i = 0; i < m.arity(); ++i) k += std::to_string(m[i]) + ",";
        return k;
    }

    RingPtr ring_;
    std::string order_key_;
    std::shared_ptr<const StdBasis> basis_;
    std::shared_ptr<const NFKernel> nf_;
    std::vector<Mono> basis_monomials_;
    std::map<std::string, size_t> index_;
    std::vector<RatMatrix> mult_;
};

/// Stabilized dimension of Q[x]/(J + m^N) over increasing N: the local
/// multiplicity of V(J) at the origin when the origin is an isolated point.
/// Independent of the Mora staircase route, so the two can cross-check each
/// other. `hint` seeds the ladder; correctness only needs two consecutive
/// equal values, which forces J + m^N to have stabilized.
inline long local_multiplicity_at_origin(const IdealHandle& J, long hint = 0) {
    long apriori = 1;
    for (const auto& g : J.generators()) apriori += std::max<long>(g.total_degree(), 1);
    long cap = 4 * apriori;
    long N = std::max<long>(1, hint);
    long prev = -1;
    long prev_n = -1;
    for (; N <= cap; ++N) {
        long v = quot_detail::truncated_vdim(J.generators(), J.ring(), N);
        if (prev_n == N - 1 && v == prev) return v;
        prev = v;
        prev_n = N;
    }
    throw std::runtime_error(
        "local multiplicity did not stabilize below the truncation cap (origin not isolated?)");
}

}  // namespace linesing

#endif
