#ifndef LINESING_MORSIFY_HPP
#define LINESING_MORSIFY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "linesing/invariants.hpp"

namespace linesing {

/// Candidate deformation f_t = f + t*g.
struct MorsCandidate {
    MultiPoly f;
    MultiPoly g;
    std::string provenance;  // "preset:<id>", "seed:<s>:trial:<k>", "user"
    std::vector<std::pair<std::string, Rat>> drawn;  // named drawn coefficients
};

struct SampleCheck {
    Rat t0;
    bool sing_and_order = false;   // (a) Sing(V(f_t0)) = V(I) and I-order preserved
    bool morse_outside = false;    // (b) only Morse critical points off V(I)
    bool divisor_reduced = false;  // (c) transversal divisor of f_t0 reduced
    std::optional<long> a1;
    std::string divisor_h;
    long divisor_degree = -1;
    std::string eliminant;  // where the off-line critical points sit over the line
    std::string diagnostic;
    bool all() const { return sing_and_order && morse_outside && divisor_reduced; }
};

struct MorsReport {
    MorsCandidate candidate;
    std::vector<SampleCheck> samples;
    bool verdict = false;
    bool counts_stable = false;
    std::optional<long> a1_count;
    std::vector<std::string> caveats;
};

struct CountA1Error : std::runtime_error {
    explicit CountA1Error(const std::string& what) : std::runtime_error(what) {}
};

namespace mors_detail {

inline std::string gens_text(const IdealHandle& J) {
    std::string s;
    for (const auto& g : J.generators()) s += (s.empty() ? "" : ", ") + to_string(g);
    return s.empty() ? "0" : s;
}

}  // namespace mors_detail

/// Number of Morse (A_1) critical points of f_t0 outside V(I), counted over
/// the whole affine space with exact multiplicity-one certification via the
/// Hessian determinant.
inline long count_A1(const MultiPoly& ft, std::string* eliminant_out = nullptr) {
    const RingPtr& R = ft.ring();
    IdealHandle jac(R, jacobian(ft), /*local=*/false);
    IdealHandle I = inv_detail::line_ideal(R, false);
    IdealHandle A = saturate(jac, I).ideal;
    if (A.is_unit() || !A.has_generators()) {
        if (!A.has_generators())
            throw CountA1Error("the critical locus saturation produced the zero ideal");
        if (eliminant_out) *eliminant_out = "1";
        return 0;
    }
    if (!A.is_zero_dim())
        throw CountA1Error(
            "the critical locus off V(I) is positive-dimensional; saturated ideal: <" +
            mors_detail::gens_text(A) + ">");
    IdealHandle with_hessian = A.plus({hessian_det(ft)});
    if (!with_hessian.is_unit())
        throw CountA1Error("a critical point off V(I) has a singular Hessian (not Morse)");
    if (eliminant_out) {
        std::vector<size_t> drop;
        for (size_t i = 0; i < R->arity(); ++i)
            if (i != R->line_var()) drop.push_back(i);
        *eliminant_out = mors_detail::gens_text(eliminate(A, drop));
    }
    return *A.vdim();
}

/// The explicit deformation family from the morsification existence proof:
/// g = -( sum_{i,j<n} a_ij x_j^{p-2} x_i^2 + sum_{k<=n, l<n, k!=l} b_kl x_k x_l^p ),
/// with small deterministic rational draws. Every monomial has I-degree >= p.
inline MorsCandidate candidate_family(const MultiPoly& f, uint64_t seed, const GermProfile& pr) {
    if (!pr.passes()) throw std::domain_error("candidate family requires the standing hypotheses");
    const RingPtr& R = f.ring();
    size_t n = R->coordinate_count();
    long p = pr.p;
    std::mt19937_64 rng(seed);
    auto draw = [&](bool nonzero) {
        long num = static_cast<long>(rng() % 17) - 8;
        if (nonzero && num == 0) num = 1 + static_cast<long>(rng() % 8);
        long den = 1 + static_cast<long>(rng() % 32);
        return Rat(num, den);
    };

    MorsCandidate cand;
    cand.f = f;
    cand.provenance = "seed:" + std::to_string(seed);
    MultiPoly g = MultiPoly::zero(R);
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = 0; j + 1 < n; ++j) {
            Rat a = draw(/*nonzero=*/true);
            a.canonicalize();
            cand.drawn.push_back({"a[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]", a});
            Mono m(R->arity());
            m.set(i, m[i] + 2);
            m.set(j, m[j] + static_cast<uint32_t>(p - 2));
            g = g + MultiPoly::monomial(R, m, a);
        }
    for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l + 1 < n; ++l) {
            if (k == l) continue;
            Rat b = draw(/*nonzero=*/false);
            if (b == 0) continue;
            cand.drawn.push_back({"b[" + std::to_string(k + 1) + "," + std::to_string(l + 1) + "]", b});
            Mono m(R->arity());
            m.set(k, m[k] + 1);
            m.set(l, m[l] + static_cast<uint32_t>(p));
            g = g + MultiPoly::monomial(R, m, b);
        }
    cand.g = -g;
    for (const auto& t : cand.g.terms()) {
        long d = t.m.degree_where([&](size_t i) { return R->is_line_section_var(i); });
        if (d < p) throw std::logic_error("family term escapes I^p");
    }
    return cand;
}

/// Check the three conditions of a relative morsification at the sampled
/// parameters.
inline MorsReport verify_relative_morsification(const MorsCandidate& cand,
                                                const std::vector<Rat>& t_samples) {
    if (t_samples.size() < 2)
        throw std::invalid_argument("verification needs at least two parameter samples");
    for (const auto& t : t_samples)
        if (t == 0) throw std::invalid_argument("parameter samples must be nonzero");
    if (!cand.g.is_zero()) {
        long p = cand.f.i_order();
        for (const auto& t : cand.g.terms()) {
            long d = t.m.degree_where(
                [&](size_t i) { return cand.f.ring()->is_line_section_var(i); });
            if (d < p)
                throw std::invalid_argument("deformation direction leaves I^p: term " +
                                            to_string(MultiPoly::monomial(cand.g.ring(), t.m, t.c)));
        }
    }

    MorsReport rep;
    rep.candidate = cand;
    long p = cand.f.i_order();
    for (const auto& t0 : t_samples) {
        SampleCheck sc;
        sc.t0 = t0;
        MultiPoly ft = cand.f + t0 * cand.g;
        GermProfile pr = check_singular_locus(ft);
        sc.sing_and_order = pr.sing_locus_is_line && ft.i_order() == p;
        if (!sc.sing_and_order && !pr.diagnostics.empty()) sc.diagnostic = pr.diagnostics.front();
        try {
            sc.a1 = count_A1(ft, &sc.eliminant);
            sc.morse_outside = true;
        } catch (const CountA1Error& e) {
            sc.morse_outside = false;
            sc.diagnostic = e.what();
        }
        try {
            DivisorOnLine d = transversal_divisor(ft);
            sc.divisor_h = d.h.to_string();
            sc.divisor_degree = d.degree;
            sc.divisor_reduced = d.squarefree;
            if (!d.squarefree && sc.diagnostic.empty())
                sc.diagnostic = "transversal discriminant " + sc.divisor_h + " is not reduced";
        } catch (const std::exception& e) {
            sc.divisor_reduced = false;
            if (sc.diagnostic.empty()) sc.diagnostic = e.what();
        }
        rep.samples.push_back(std::move(sc));
    }

    rep.counts_stable = true;
    std::optional<long> count;
    for (const auto& sc : rep.samples) {
        if (!sc.a1) continue;
        if (count && *count != *sc.a1) rep.counts_stable = false;
        count = sc.a1;
    }
    rep.a1_count = count;
    rep.verdict = rep.counts_stable;
    for (const auto& sc : rep.samples)
        if (!sc.all()) rep.verdict = false;
    rep.caveats.push_back(
        "conditions were verified at the sampled parameters only; the definition quantifies over "
        "all small nonzero t");
    rep.caveats.push_back(
        "Morse points are counted over the whole affine chart; the eliminant over the line and "
        "count stability across samples stand in for germ localization");
    return rep;
}

struct SearchResult {
    std::optional<MorsReport> found;
    long trials_run = 0;
    long fail_sing = 0, fail_morse = 0, fail_divisor = 0, fail_stability = 0;
    std::vector<std::string> diagnostics;
    bool success() const { return found.has_value(); }
};

/// Randomized realization of the existence theorem: draw candidates from the
/// explicit family until one verifies.
inline SearchResult search_morsification(const MultiPoly& f, uint64_t seed, long max_trials,
                                         const std::vector<Rat>& t_samples,
                                         const std::optional<MultiPoly>& first_guess = std::nullopt) {
    SearchResult out;
    GermProfile pr = check_singular_locus(f);
    if (!pr.passes()) {
        for (const auto& d : pr.diagnostics) out.diagnostics.push_back(d);
        if (out.diagnostics.empty()) out.diagnostics.push_back("standing hypotheses fail");
        return out;
    }
    for (long trial = 0; trial < max_trials; ++trial) {
        MorsCandidate cand;
        if (trial == 0 && first_guess) {
            cand.f = f;
            cand.g = *first_guess;
            cand.provenance = "preset";
        } else {
            cand = candidate_family(f, seed * 1000003ULL + static_cast<uint64_t>(trial), pr);
            cand.provenance = "seed:" + std::to_string(seed) + ":trial:" + std::to_string(trial);
        }
        ++out.trials_run;
        MorsReport rep = verify_relative_morsification(cand, t_samples);
        if (rep.verdict) {
            out.found = std::move(rep);
            return out;
        }
        for (const auto& sc : rep.samples) {
            if (!sc.sing_and_order) ++out.fail_sing;
            if (!sc.morse_outside) ++out.fail_morse;
            if (!sc.divisor_reduced) ++out.fail_divisor;
            if (!sc.diagnostic.empty()) out.diagnostics.push_back(sc.diagnostic);
        }
        if (!rep.counts_stable) ++out.fail_stability;
    }
    return out;
}

/// Preset deformations for the worked n = 3 rows, plus the boundary cases.
struct Preset {
    std::string id;
    std::string f_text;
    std::string g_text;
    std::string description;
    long expected_j = -1;    // -1: not applicable
    long expected_deg = -1;
    long expected_a1 = -1;
    bool expect_verdict = true;
};

inline const std::vector<Preset>& preset_table() {
    static const std::vector<Preset> table = {
        {"row1-p2", "x^2+y^2*z", "x^2+y^2", "x^p+y^p z at p=2", 1, 1, 0, true},
        {"row1-p3", "x^3+y^3*z", "x^2*y+y^2*x", "x^p+y^p z at p=3", 2, 2, 0, true},
        {"row2-p2-q1", "x^2+y^2*z+y^3", "x^2+y^2-y^2*z", "x^p+y^p z^q+y^{p+1} at (2,1)", 1, 1, 0,
         true},
        {"row2-p2-q2", "x^2+y^2*z^2+y^3", "x^2+y^2-y^2*z", "x^p+y^p z^q+y^{p+1} at (2,2)", 3, 2, 1,
         true},
        {"row2-p3-q1", "x^3+y^3*z+y^4", "x^2*y+y^2*x-y^3*z", "x^p+y^p z^q+y^{p+1} at (3,1)", 2, 2,
         0, true},
        {"row2-p3-q2", "x^3+y^3*z^2+y^4", "x^2*y+y^2*x-y^3*z", "x^p+y^p z^q+y^{p+1} at (3,2)", 6,
         4, 2, true},
        {"row3-p3-q11", "x^3*z+y^3*z+y^4+x^4", "x^2*y+y^2*x-x^3*z-y^3*z",
         "x^p z^{q1}+y^p z^{q2}+y^{p+1}+x^{p+1} at (3,1,1)", 7, 4, 3, true},
        {"sum-of-squares", "x^2+y^2", "0", "trivial deformation, empty discriminant", 0, 0, 0,
         true},
        {"nonexample", "x^3+y^2", "x^2", "x^{p+1}+y^p deformed by t x^p: rejected", -1, -1, -1,
         false},
        {"counterexample", "4*(x^6+y^6)-6*z^2*x^4*y^4", "0",
         "empty discriminant with positive Jacobi number", -1, 0, 0, true},
    };
    return table;
}

inline const Preset* find_preset(const std::string& id) {
    for (const auto& p : preset_table())
        if (p.id == id) return &p;
    return nullptr;
}

/// Instantiate a preset positionally in a three-coordinate ring.
inline MorsCandidate preset_candidate(const Preset& p, const RingPtr& ring) {
    if (ring->coordinate_count() != 3)
        throw std::invalid_argument("presets are three-variable instances");
    auto canonical = Ring::make({"x", "y", "z"});
    MultiPoly f = parse_poly(p.f_text, canonical);
    MultiPoly g = parse_poly(p.g_text, canonical);
    std::vector<size_t> map = {0, 1, 2};
    MorsCandidate cand;
    cand.f = f.map_vars(ring, map);
    cand.g = g.map_vars(ring, map);
    cand.provenance = "preset:" + p.id;
    return cand;
}

/// Preset lookup by polynomial: used to seed the search with the worked
/// deformation when the input matches a table row.
inline std::optional<MorsCandidate> preset_for(const MultiPoly& f) {
    if (f.ring()->coordinate_count() != 3) return std::nullopt;
    for (const auto& p : preset_table()) {
        MorsCandidate cand = preset_candidate(p, f.ring());
        if (cand.f == f) return cand;
    }
    return std::nullopt;
}

}  // namespace linesing

#endif
