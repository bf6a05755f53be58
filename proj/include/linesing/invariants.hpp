#ifndef LINESING_INVARIANTS_HPP
#define LINESING_INVARIANTS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linesing/blowup.hpp"
#include "linesing/ideal.hpp"
#include "linesing/parse.hpp"
#include "linesing/quotient.hpp"

namespace linesing {

/// Standing-hypothesis check for a germ with one-dimensional singular locus.
struct GermProfile {
    MultiPoly f;
    long p = 0;                      // I-order
    size_t n = 0;                    // number of coordinates
    bool sing_locus_is_line = false; // Sing(V(f)) = V(I) as germs at 0
    bool generic_ordinary = false;   // transversal type ordinary multiple point
    std::vector<std::string> diagnostics;

    bool passes() const { return p >= 2 && sing_locus_is_line && generic_ordinary; }
};

namespace inv_detail {

inline MultiPoly ideal_I_gen(const RingPtr& ring, size_t i) {
    return MultiPoly::variable(ring, i);
}

inline IdealHandle line_ideal(const RingPtr& ring, bool local) {
    std::vector<MultiPoly> gens;
    for (size_t i = 0; i + 1 < ring->coordinate_count(); ++i)
        gens.push_back(MultiPoly::variable(ring, i));
    return IdealHandle(ring, std::move(gens), local);
}

inline MultiPoly line_power(const RingPtr& ring, long k) {
    Mono m(ring->arity());
    m.set(ring->line_var(), static_cast<uint32_t>(k));
    return MultiPoly::monomial(ring, m, Rat(1));
}

inline UniPoly to_unipoly(const MultiPoly& f, size_t var) {
    const Ring& R = *f.ring();
    std::vector<Rat> coeffs;
    for (const auto& t : f.terms()) {
        for (size_t i = 0; i < R.arity(); ++i)
            if (i != var && t.m[i] != 0)
                throw std::domain_error("polynomial is not supported on the line");
        size_t e = t.m[var];
        if (coeffs.size() <= e) coeffs.resize(e + 1, Rat(0));
        coeffs[e] = t.c;
    }
    return UniPoly(R.name(var), std::move(coeffs));
}

inline long int_pow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace inv_detail

inline GermProfile check_singular_locus(const MultiPoly& f) {
    if (f.is_zero()) throw std::domain_error("zero polynomial has no singular-locus profile");
    GermProfile pr;
    pr.f = f;
    pr.n = f.ring()->coordinate_count();
    pr.p = f.i_order();
    if (pr.p < 2) {
        pr.sing_locus_is_line = false;
        pr.diagnostics.push_back("I-order " + std::to_string(pr.p) +
                                 " < 2: the line is not contained in the singular locus");
        return pr;
    }
    // Sing(V(f)) = V(Jac(f), f); saturating out V(I) must leave nothing
    // through the origin.
    std::vector<MultiPoly> gens = jacobian(f);
    gens.push_back(f);
    IdealHandle sing(f.ring(), std::move(gens), /*local=*/true);
    IdealHandle I = inv_detail::line_ideal(f.ring(), true);
    auto sat = saturate(sing, I);
    pr.sing_locus_is_line = sat.ideal.is_unit();
    if (!pr.sing_locus_is_line)
        pr.diagnostics.push_back("a singular component through the origin lies outside V(I)");
    pr.generic_ordinary = is_generic_ordinary(f);
    if (!pr.generic_ordinary)
        pr.diagnostics.push_back(
            "the critical locus of the exceptional projection is not finite: "
            "the generic transversal type is not an ordinary multiple point");
    return pr;
}

/// Milnor number of an isolated singularity at the origin: the Mora staircase
/// count, cross-checked against the independent truncation route.
inline long milnor_local(const MultiPoly& g) {
    IdealHandle jac(g.ring(), jacobian(g), /*local=*/true);
    auto basis = jac.basis();
    auto v = basis->vdim();
    if (!v)
        throw std::domain_error("Milnor number undefined: the critical locus is not isolated at 0");
    long hint = 1;
    while (basis->count_complement_below(hint) < *v) ++hint;
    long trunc = local_multiplicity_at_origin(jac, hint);
    if (trunc != *v)
        throw std::logic_error("Milnor cross-check failed: Mora staircase " + std::to_string(*v) +
                               " vs truncation " + std::to_string(trunc));
    return *v;
}

/// Generic Jacobian ideal: the contraction of Jac(f) localized at the line,
/// computed as the saturation by x_n. The two testable consequences (x_n a
/// non zero-divisor modulo the result; Krull dimension one) are re-verified.
inline IdealHandle jac_gen(const MultiPoly& f) {
    IdealHandle jac(f.ring(), jacobian(f), /*local=*/true);
    MultiPoly xn = MultiPoly::variable(f.ring(), f.ring()->line_var());
    IdealHandle sat = saturate(jac, xn).ideal;
    IdealHandle again = quotient_by_element(sat, xn);
    if (!again.equals(sat))
        throw std::logic_error("generic Jacobian ideal: x_n is a zero-divisor after saturation");
    if (sat.krull_dim() != 1)
        throw std::logic_error("generic Jacobian ideal: expected Krull dimension 1, got " +
                               std::to_string(sat.krull_dim()));
    return sat;
}

struct YomdinSeries {
    long k_star = 0;                 // least k with two consecutive steps (p-1)^{n-1}
    long step = 0;                   // (p-1)^{n-1}
    std::map<long, long> mu;         // k -> Milnor number of f + x_n^k
    std::vector<long> non_isolated;  // k values where f + x_n^k stays non-isolated
};

inline long yomdin_mu(const MultiPoly& f, long k) {
    return milnor_local(f + inv_detail::line_power(f.ring(), k));
}

inline YomdinSeries yomdin_stabilize(const MultiPoly& f, const GermProfile& pr, long k_min = 2,
                                     long k_cap = 24) {
    YomdinSeries s;
    s.step = inv_detail::int_pow(pr.p - 1, static_cast<long>(pr.n) - 1);
    auto mu_at = [&](long k) -> std::optional<long> {
        auto it = s.mu.find(k);
        if (it != s.mu.end()) return it->second;
        for (long bad : s.non_isolated)
            if (bad == k) return std::nullopt;
        try {
            long m = yomdin_mu(f, k);
            s.mu[k] = m;
            return m;
        } catch (const std::domain_error&) {
            s.non_isolated.push_back(k);
            return std::nullopt;
        }
    };
    for (long k = std::max<long>(2, k_min); k + 2 <= k_cap + 2; ++k) {
        auto a = mu_at(k), b = mu_at(k + 1), c = mu_at(k + 2);
        if (a && b && c && *b - *a == s.step && *c - *b == s.step) {
            s.k_star = k;
            return s;
        }
        if (k >= k_cap)
            throw std::runtime_error("Yomdin series did not stabilize below the k cap");
    }
    throw std::runtime_error("Yomdin series did not stabilize below the k cap");
}

/// delta at one Yomdin level k, by the two prescribed routes: the rank of
/// multiplication by d_n f on C{x}/Jac(f+x_n^k), and the colon-ideal
/// dimension dim C{x}/(Jac(f+x_n^k) : d_n f). They must agree.
inline long delta_at_k(const MultiPoly& f, long k) {
    MultiPoly dnf = f.derivative(f.ring()->line_var());
    if (dnf.is_zero()) return 0;
    MultiPoly fk = f + inv_detail::line_power(f.ring(), k);
    IdealHandle jk(f.ring(), jacobian(fk), /*local=*/true);
    QuotientAlgebra A = QuotientAlgebra::build(jk, orders::local_ds(f.ring()));
    long route_a = static_cast<long>(A.mult_operator_rank(dnf));
    IdealHandle colon = quotient_by_element(jk, dnf);
    auto vb = colon.vdim();
    if (!vb) throw std::logic_error("delta colon route is infinite-dimensional");
    if (*vb != route_a)
        throw std::logic_error("delta routes disagree at k=" + std::to_string(k) + ": rank " +
                               std::to_string(route_a) + " vs colon " + std::to_string(*vb));
    return route_a;
}

struct DeltaResult {
    long at_k_star = 0;
    long at_k_star_plus_1 = 0;
    bool k_independent = false;
    bool zero_by_lemma = false;  // d_n f lies in <d_1 f, ..., d_{n-1} f>
    long value() const {
        if (!k_independent)
            throw std::logic_error("delta did not stabilize between k* and k*+1");
        return at_k_star;
    }
    /// Certified positivity even without stabilization: d_n f outside
    /// J_{n-1}(f) forces delta > 0 at every Yomdin level.
    bool positive() const { return !zero_by_lemma && (at_k_star > 0 || at_k_star_plus_1 > 0); }
};

inline DeltaResult delta_invariant(const MultiPoly& f, const YomdinSeries& ys) {
    DeltaResult d;
    d.at_k_star = delta_at_k(f, ys.k_star);
    d.at_k_star_plus_1 = delta_at_k(f, ys.k_star + 1);
    d.k_independent = d.at_k_star == d.at_k_star_plus_1;
    MultiPoly dnf = f.derivative(f.ring()->line_var());
    if (dnf.is_zero()) {
        d.zero_by_lemma = true;
    } else {
        std::vector<MultiPoly> jnm1;
        for (size_t i = 0; i + 1 < f.ring()->coordinate_count(); ++i)
            jnm1.push_back(f.derivative(i));
        IdealHandle J(f.ring(), std::move(jnm1), /*local=*/true);
        d.zero_by_lemma = J.contains(dnf);
    }
    return d;
}

struct JacobiResult {
    long route_a = 0;                 // truncation route (always defined)
    std::optional<long> route_b;      // mu-formula route, when delta stabilized
    long stabilized_N = 0;            // truncation level of route A
    bool agree() const { return !route_b || *route_b == route_a; }
    long value() const { return route_a; }
};

/// Jacobi number j(f) = dim Jac_gen(f)/Jac(f).
/// Route A: difference of truncated dimensions, stabilized over the degree
/// cutoff (for the degree-compatible local order these are staircase counts).
/// Route B: mu(f+x_n^k) - (k-1)(p-1)^{n-1} - delta at the stabilized k.
inline JacobiResult jacobi_number(const MultiPoly& f, const GermProfile& pr,
                                  const YomdinSeries& ys, const DeltaResult& delta) {
    IdealHandle jac(f.ring(), jacobian(f), /*local=*/true);
    IdealHandle jg = jac_gen(f);
    auto bj = jac.basis();
    auto bg = jg.basis();

    MultiPoly xn = MultiPoly::variable(f.ring(), f.ring()->line_var());
    auto nv = jac.plus({xn}).vdim();
    if (!nv) throw std::logic_error("Jac(f) + <x_n> is not zero-dimensional");
    long N0 = std::max<long>(*nv, 2);

    JacobiResult out;
    long cap = 4 * N0 + 64;
    long prev = -1;
    bool found = false;
    for (long N = N0; N <= cap; ++N) {
        long jn = bj->count_complement_below(N) - bg->count_complement_below(N);
        if (jn == prev) {
            out.route_a = jn;
            out.stabilized_N = N;
            found = true;
            break;
        }
        prev = jn;
    }
    if (!found) throw std::runtime_error("Jacobi truncation route did not stabilize");

    if (delta.k_independent) {
        long mu = ys.mu.at(ys.k_star);
        out.route_b = mu - (ys.k_star - 1) * ys.step - delta.value();
        if (!out.agree())
            throw std::logic_error("Jacobi number routes disagree: truncation " +
                                   std::to_string(out.route_a) + " vs mu-formula " +
                                   std::to_string(*out.route_b));
    }
    return out;
}

/// p = 2 specialization: write f = sum a_ij x_i x_j (two lexicographically
/// least section variables of each monomial, symmetrized), restrict the
/// matrix to the line and take its determinant.
inline DivisorOnLine reduced_case_divisor(const MultiPoly& f) {
    const Ring& R = *f.ring();
    if (f.i_order() != 2) throw std::domain_error("reduced-case divisor needs I-order exactly 2");
    size_t nsec = R.coordinate_count() - 1;
    std::vector<std::vector<MultiPoly>> a(nsec,
                                          std::vector<MultiPoly>(nsec, MultiPoly::zero(f.ring())));
    for (const auto& t : f.terms()) {
        Mono m = t.m;
        size_t i1 = nsec, i2 = nsec;
        for (size_t i = 0; i < nsec; ++i)
            if (m[i] > 0) {
                i1 = i;
                break;
            }
        if (i1 == nsec) throw std::logic_error("term of I-degree < 2 in an I^2 polynomial");
        m.set(i1, m[i1] - 1);
        for (size_t i = 0; i < nsec; ++i)
            if (m[i] > 0) {
                i2 = i;
                break;
            }
        if (i2 == nsec) throw std::logic_error("term of I-degree < 2 in an I^2 polynomial");
        m.set(i2, m[i2] - 1);
        MultiPoly rest = MultiPoly::monomial(f.ring(), m, t.c);
        if (i1 == i2) {
            a[i1][i1] = a[i1][i1] + rest;
        } else {
            MultiPoly half = Rat(1, 2) * rest;
            a[i1][i2] = a[i1][i2] + half;
            a[i2][i1] = a[i2][i1] + half;
        }
    }
    // restrict to the line
    for (auto& row : a)
        for (auto& e : row)
            for (size_t i = 0; i < nsec; ++i) e = e.substitute(i, Rat(0));
    // determinant by cofactor expansion (n-1 is tiny)
    struct Det {
        const std::vector<std::vector<MultiPoly>>& a;
        RingPtr ring;
        MultiPoly run(std::vector<size_t> rows, std::vector<size_t> cols) {
            if (rows.empty()) return MultiPoly::constant(ring, Rat(1));
            MultiPoly acc = MultiPoly::zero(ring);
            size_t r = rows.front();
            std::vector<size_t> rest_rows(rows.begin() + 1, rows.end());
            for (size_t k = 0; k < cols.size(); ++k) {
                if (a[r][cols[k]].is_zero()) continue;
                std::vector<size_t> rest_cols;
                for (size_t l = 0; l < cols.size(); ++l)
                    if (l != k) rest_cols.push_back(cols[l]);
                MultiPoly term = a[r][cols[k]] * run(rest_rows, rest_cols);
                acc = (k % 2 == 0) ? acc + term : acc - term;
            }
            return acc;
        }
    } det{a, f.ring()};
    std::vector<size_t> idx(nsec);
    for (size_t i = 0; i < nsec; ++i) idx[i] = i;
    MultiPoly d = det.run(idx, idx);
    if (d.is_zero())
        throw std::domain_error("reduced-case matrix is singular along the whole line");
    return DivisorOnLine::from_poly(inv_detail::to_unipoly(d, R.line_var()));
}

struct Verdict {
    std::string name;
    bool holds = false;
    std::string lhs, rhs;
    std::string note;
};

struct MorsificationEvidence {
    long a1_count = 0;
    std::vector<Rat> t_samples;
    MultiPoly g;
};

struct InvariantReport {
    GermProfile profile;
    JacobiResult jacobi;
    DeltaResult delta;
    DivisorOnLine divisor;
    YomdinSeries yomdin;
    std::vector<Verdict> verdicts;
    std::vector<std::string> caveats;
};

/// Central lazily-computed bundle of the invariants of one germ.
class GermAnalysis {
  public:
    explicit GermAnalysis(MultiPoly f, long k_cap = 24) : f_(std::move(f)), k_cap_(k_cap) {}

    const MultiPoly& f() const { return f_; }

    const GermProfile& profile() {
        if (!profile_) profile_ = check_singular_locus(f_);
        return *profile_;
    }
    void require_profile() {
        if (!profile().passes())
            throw std::domain_error("standing hypotheses fail: " + join_diags());
    }

    const DivisorOnLine& transversal() {
        if (!divisor_) divisor_ = transversal_divisor(f_);
        return *divisor_;
    }
    const YomdinSeries& yomdin(long k_min = 2) {
        if (!yomdin_) {
            require_profile();
            yomdin_ = yomdin_stabilize(f_, profile(), k_min, k_cap_);
        }
        return *yomdin_;
    }
    long mu(long k) {
        auto& ys = const_cast<YomdinSeries&>(yomdin());
        auto it = ys.mu.find(k);
        if (it != ys.mu.end()) return it->second;
        long v = yomdin_mu(f_, k);
        ys.mu[k] = v;
        return v;
    }
    const DeltaResult& delta() {
        if (!delta_) delta_ = delta_invariant(f_, yomdin());
        return *delta_;
    }
    const JacobiResult& jacobi() {
        if (!jacobi_) {
            require_profile();
            jacobi_ = jacobi_number(f_, profile(), yomdin(), delta());
        }
        return *jacobi_;
    }

    InvariantReport report(const std::optional<MorsificationEvidence>& evidence = std::nullopt,
                           long k_min = 2, long k_max = 0);

  private:
    std::string join_diags() {
        std::string s;
        for (const auto& d : profile().diagnostics) s += (s.empty() ? "" : "; ") + d;
        return s.empty() ? "unspecified" : s;
    }

    MultiPoly f_;
    long k_cap_;
    std::optional<GermProfile> profile_;
    std::optional<DivisorOnLine> divisor_;
    std::optional<YomdinSeries> yomdin_;
    std::optional<DeltaResult> delta_;
    std::optional<JacobiResult> jacobi_;
};

inline InvariantReport GermAnalysis::report(const std::optional<MorsificationEvidence>& evidence,
                                            long k_min, long k_max) {
    require_profile();
    InvariantReport rep;
    rep.profile = profile();
    rep.divisor = transversal();
    rep.yomdin = yomdin(k_min);
    for (long k = std::max<long>(2, k_min); k <= std::max(k_max, rep.yomdin.k_star + 2); ++k)
        mu(k);
    rep.yomdin = *yomdin_;
    rep.delta = delta();
    rep.jacobi = jacobi();

    long deg = rep.divisor.degree;
    long step = rep.yomdin.step;
    long kstar = rep.yomdin.k_star;
    long mu_star = rep.yomdin.mu.at(kstar);
    long j = rep.jacobi.value();

    auto num = [](long v) { return std::to_string(v); };

    if (evidence) {
        rep.verdicts.push_back({"jacobi >= a1 + deg_transversal",
                                j >= evidence->a1_count + deg, num(j),
                                num(evidence->a1_count) + " + " + num(deg), ""});
    }
    rep.verdicts.push_back(
        {"jacobi >= deg_transversal", j >= deg, num(j), num(deg), "a1 count omitted"});

    long delta_val = rep.delta.k_independent ? rep.delta.at_k_star
                                             : std::max(rep.delta.at_k_star, rep.delta.at_k_star_plus_1);
    rep.verdicts.push_back({"delta >= deg_transversal", delta_val >= deg, num(delta_val), num(deg),
                            rep.delta.k_independent ? "" : "delta read at k*+1 (not stabilized)"});

    long mu_bound = (kstar - 1) * step + 2 * deg + (evidence ? evidence->a1_count : 0);
    rep.verdicts.push_back({"mu(k*) >= a1 + (k*-1)(p-1)^{n-1} + 2 deg_transversal",
                            mu_star >= mu_bound, num(mu_star), num(mu_bound),
                            evidence ? "" : "a1 count omitted"});

    if (rep.delta.k_independent) {
        bool all = true;
        for (const auto& [k, m] : rep.yomdin.mu) {
            if (k < kstar) continue;
            if (m != j + (k - 1) * step + rep.delta.at_k_star) all = false;
        }
        rep.verdicts.push_back({"mu(k) == jacobi + (k-1)(p-1)^{n-1} + delta for k >= k*", all,
                                num(mu_star), num(j + (kstar - 1) * step + rep.delta.at_k_star),
                                ""});
    } else {
        rep.caveats.push_back(
            "delta did not stabilize between k* and k*+1; the Yomdin mu-formula regime was not "
            "reached at the sampled k (delta > 0 is still certified when d_n f lies outside "
            "J_{n-1}(f))");
    }

    if (evidence) {
        for (const auto& t0 : evidence->t_samples) {
            MultiPoly ft = f_ + t0 * evidence->g;
            long mu_t = milnor_local(ft + inv_detail::line_power(f_.ring(), kstar));
            bool ok = mu_star == evidence->a1_count + mu_t;
            rep.verdicts.push_back({"mu(f+x_n^k*) == a1 + mu(f_t0+x_n^k*) at t0=" + rat_to_string(t0),
                                    ok, num(mu_star), num(evidence->a1_count) + " + " + num(mu_t),
                                    ""});
        }
        rep.caveats.push_back(
            "morsification conditions were checked at finitely many parameter samples; the "
            "definition quantifies over all small t");
    }
    if (rep.profile.n == 4)
        rep.caveats.push_back(
            "n = 4: the Jacobi inequality lies outside the proven regime (the smoothing argument "
            "is open in dimension 3); the verdict is evaluated but not backed by the theorem");
    rep.caveats.push_back(
        "the transversal divisor is computed for the polynomial input over the whole line; its "
        "order at the origin is reported separately");
    return rep;
}

}  // namespace linesing

#endif
