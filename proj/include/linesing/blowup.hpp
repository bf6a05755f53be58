#ifndef LINESING_BLOWUP_HPP
#define LINESING_BLOWUP_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linesing/ideal.hpp"
#include "linesing/quotient.hpp"
#include "linesing/unipoly.hpp"

namespace linesing {

/// Monic generator of a divisor on the x_n-line. h = 1 encodes the empty
/// divisor.
struct DivisorOnLine {
    UniPoly h;
    long degree = 0;
    bool squarefree = true;
    bool empty = true;
    long order_at_origin = 0;

    static DivisorOnLine from_poly(const UniPoly& raw) {
        if (raw.is_zero())
            throw std::domain_error("divisor generator vanishes identically on the line");
        DivisorOnLine d;
        d.h = raw.monic();
        d.degree = d.h.degree();
        d.empty = d.degree == 0;
        d.squarefree = is_squarefree(d.h);
        d.order_at_origin = 0;
        while (d.order_at_origin <= d.degree && d.h.coeff(static_cast<int>(d.order_at_origin)) == 0)
            ++d.order_at_origin;
        if (d.empty) d.order_at_origin = 0;
        return d;
    }
};

/// One affine chart of the blow-up of C^n along the line V(I): chart j keeps
/// x_j and x_n and replaces x_i by sigma_i * x_j for the other section
/// variables.
struct ChartModel {
    size_t chart_index;                  // 1-based, over the section variables
    RingPtr chart_ring;                  // sigma..., x_j, x_n
    RingPtr cell_ring;                   // sigma..., x_n (x_j already set to 0)
    std::vector<size_t> sigma_of;        // section var index -> chart ring slot (or npos)
    size_t xj_slot = 0, xn_slot = 0;
};

/// Scheme-theoretic critical contribution of one chart, restricted to its
/// cell of the exceptional projective space.
struct CritCell {
    size_t chart_index = 0;
    IdealHandle ideal;        // in the cell ring
    bool finite = false;      // zero-dimensional (or empty)
    bool unit = false;
    long dimension = 0;       // vdim when finite
};

namespace blowup_detail {

inline std::string unique_name(const Ring& r, std::string base) {
    while (r.index_of(base)) base = "s" + base;
    return base;
}

inline void require_plain_coordinates(const Ring& r, const char* what) {
    for (size_t i = 0; i < r.arity(); ++i)
        if (r.kind(i) != Ring::VarKind::Coordinate)
            throw std::invalid_argument(std::string(what) +
                                        ": specialize deformation parameters first");
    if (r.coordinate_count() < 2)
        throw std::invalid_argument(std::string(what) + ": needs at least two variables");
}

inline Mono power_mono(size_t arity, size_t var, long e) {
    Mono m(arity);
    m.set(var, static_cast<uint32_t>(e));
    return m;
}

/// Artinian part supported at {var = 0}: stabilized J + <var^M>. Two equal
/// consecutive dimensions force the ideal chain constant, so the window is
/// exact, not heuristic.
inline std::optional<IdealHandle> part_at_zero(const IdealHandle& J, size_t var, long cap) {
    long prev = -1;
    for (long M = 1; M <= cap; ++M) {
        MultiPoly pw = MultiPoly::monomial(J.ring(), power_mono(J.ring()->arity(), var, M), Rat(1));
        IdealHandle cand = J.plus({pw});
        auto v = cand.vdim();
        if (!v) return std::nullopt;  // a positive-dimensional branch sticks to {var=0}
        if (*v == prev) return cand;
        prev = *v;
    }
    return std::nullopt;
}

}  // namespace blowup_detail

inline ChartModel chart_model(const RingPtr& ring, size_t chart_index) {
    blowup_detail::require_plain_coordinates(*ring, "blow-up chart");
    size_t n = ring->coordinate_count();
    if (chart_index < 1 || chart_index >= n)
        throw std::invalid_argument("chart index out of range");
    ChartModel cm;
    cm.chart_index = chart_index;
    std::vector<std::string> chart_names, cell_names;
    cm.sigma_of.assign(n, static_cast<size_t>(-1));
    for (size_t i = 0; i + 1 < n; ++i) {
        if (i + 1 == chart_index) continue;
        std::string nm = blowup_detail::unique_name(*ring, "s" + std::to_string(i + 1));
        chart_names.push_back(nm);
        cell_names.push_back(nm);
        cm.sigma_of[i] = chart_names.size() - 1;
    }
    cm.xj_slot = chart_names.size();
    chart_names.push_back(ring->name(chart_index - 1));
    cm.xn_slot = chart_names.size();
    chart_names.push_back(ring->name(ring->line_var()));
    cell_names.push_back(ring->name(ring->line_var()));
    cm.chart_ring = Ring::make(chart_names);
    cm.cell_ring = Ring::make(cell_names);
    return cm;
}

/// f(sigma * x_j, x_j, x_n) / x_j^p in the chart ring; exact by the meaning
/// of the I-order p.
inline MultiPoly strict_transform(const MultiPoly& f, const ChartModel& cm, long p) {
    const Ring& R = *f.ring();
    size_t n = R.coordinate_count();
    std::vector<Term> acc;
    acc.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        Mono m(cm.chart_ring->arity());
        long section_deg = 0;
        for (size_t i = 0; i + 1 < n; ++i) {
            section_deg += t.m[i];
            if (i + 1 == cm.chart_index) continue;
            m.set(cm.sigma_of[i], t.m[i]);
        }
        if (section_deg < p) throw std::domain_error("strict transform: division leaves a remainder");
        m.set(cm.xj_slot, static_cast<uint32_t>(section_deg - p));
        m.set(cm.xn_slot, t.m[R.line_var()]);
        acc.push_back({m, t.c});
    }
    return MultiPoly::from_unsorted(cm.chart_ring, std::move(acc));
}

inline MultiPoly strict_transform(const MultiPoly& f, size_t chart_index) {
    long p = f.i_order();
    if (p < 2) throw std::domain_error("strict transform needs I-order at least 2");
    return strict_transform(f, chart_model(f.ring(), chart_index), p);
}

/// Critical cells of the exceptional projection, one per chart. With the
/// default chart order, chart j is restricted to its cell
/// sigma_1 = ... = sigma_{j-1} = 0 of the exceptional projective space, so
/// every critical point is counted exactly once with its multiplicity. Any
/// permutation of the charts yields another disjoint decomposition; the total
/// divisor must not depend on it.
inline std::vector<CritCell> crit_cells(const MultiPoly& f,
                                        const std::vector<size_t>& chart_order = {}) {
    blowup_detail::require_plain_coordinates(*f.ring(), "critical cells");
    long p = f.i_order();
    if (p < 2) throw std::domain_error("critical cells need I-order at least 2");
    size_t n = f.ring()->coordinate_count();

    std::vector<size_t> perm = chart_order;
    if (perm.empty())
        for (size_t j = 1; j < n; ++j) perm.push_back(j);
    if (perm.size() != n - 1) throw std::invalid_argument("chart order must list every chart once");

    std::vector<CritCell> cells;
    for (size_t pos = 0; pos < perm.size(); ++pos) {
        size_t j = perm[pos];
        ChartModel cm = chart_model(f.ring(), j);
        MultiPoly ft = strict_transform(f, cm, p);
        std::vector<MultiPoly> gens;
        MultiPoly f0 = ft.substitute(cm.xj_slot, Rat(0));
        gens.push_back(f0.contract_to(cm.cell_ring));
        for (size_t i = 0; i + 1 < n; ++i) {
            if (i + 1 == j) continue;
            MultiPoly d = ft.derivative(cm.sigma_of[i]).substitute(cm.xj_slot, Rat(0));
            gens.push_back(d.contract_to(cm.cell_ring));
        }

        CritCell cell;
        cell.chart_index = j;
        IdealHandle J(cm.cell_ring, gens, /*local=*/false);

        // cell slots of the vanishing sigmas: the charts already processed
        std::vector<size_t> zero_slots;
        for (size_t q = 0; q < pos; ++q) {
            size_t i = perm[q] - 1;  // section-variable index of that chart
            zero_slots.push_back(cm.cell_ring->index_of_checked(cm.chart_ring->name(cm.sigma_of[i])));
        }

        // set-level restriction first: an infinite cell shows up immediately
        std::vector<MultiPoly> flat = gens;
        for (size_t slot : zero_slots) flat.push_back(MultiPoly::variable(cm.cell_ring, slot));
        IdealHandle set_restricted(cm.cell_ring, flat, false);
        if (!set_restricted.is_zero_dim()) {
            cell.ideal = set_restricted;
            cell.finite = false;
            cells.push_back(std::move(cell));
            continue;
        }

        // scheme structure: peel off, one sigma at a time, the part of the
        // critical scheme supported on this cell; a ladder that fails to
        // stabilize witnesses a positive-dimensional component through it
        long cap = 8;
        for (const auto& g : gens) cap += std::max<long>(g.total_degree(), 1);
        cap *= 4;
        IdealHandle part = J;
        bool ok = true;
        for (size_t slot : zero_slots) {
            auto res = blowup_detail::part_at_zero(part, slot, cap);
            if (!res) {
                ok = false;
                break;
            }
            part = *res;
        }
        if (!ok || !part.is_zero_dim()) {
            cell.ideal = set_restricted;
            cell.finite = false;
            cells.push_back(std::move(cell));
            continue;
        }
        cell.ideal = part;
        cell.finite = true;
        cell.unit = part.is_unit();
        cell.dimension = *part.vdim();
        cells.push_back(std::move(cell));
    }
    return cells;
}

/// Generic transversal type is an ordinary multiple point exactly when the
/// generic exceptional fiber is smooth: no chart's critical ideal dominates
/// the x_n-line. (The critical scheme may still contain whole fibers over
/// finitely many points, where the transversal multiplicity jumps.)
inline bool is_generic_ordinary(const MultiPoly& f) {
    blowup_detail::require_plain_coordinates(*f.ring(), "generic-ordinary test");
    long p = f.i_order();
    if (p < 2) throw std::domain_error("generic-ordinary test needs I-order at least 2");
    size_t n = f.ring()->coordinate_count();
    for (size_t j = 1; j < n; ++j) {
        ChartModel cm = chart_model(f.ring(), j);
        MultiPoly ft = strict_transform(f, cm, p);
        std::vector<MultiPoly> gens;
        gens.push_back(ft.substitute(cm.xj_slot, Rat(0)).contract_to(cm.cell_ring));
        for (size_t i = 0; i + 1 < n; ++i) {
            if (i + 1 == j) continue;
            gens.push_back(ft.derivative(cm.sigma_of[i])
                               .substitute(cm.xj_slot, Rat(0))
                               .contract_to(cm.cell_ring));
        }
        IdealHandle J(cm.cell_ring, gens, /*local=*/false);
        if (!J.has_generators()) return false;  // fiber identically critical
        if (J.is_unit()) continue;
        std::vector<size_t> sigmas;
        for (size_t i = 0; i + 1 < cm.cell_ring->arity(); ++i) sigmas.push_back(i);
        if (sigmas.empty()) {
            // n = 2: the critical "fiber" is the scheme itself
            if (!J.is_zero_dim()) return false;
            continue;
        }
        IdealHandle onto_line = eliminate(J, sigmas);
        if (!onto_line.has_generators()) return false;  // dominates the line
    }
    return true;
}

/// The divisor of the I-leading form family: the discriminant of the binary
/// form F_p(x_1, x_2; x_n) via the homogeneous resultant of its two partials.
/// Defined for n = 3; this is the explicit generator of the transversal
/// discriminant and stays correct across multiplicity jumps.
inline DivisorOnLine leading_form_divisor(const MultiPoly& f) {
    const Ring& R = *f.ring();
    if (R.coordinate_count() != 3)
        throw std::domain_error("leading-form divisor route is specific to three variables");
    long p = f.i_order();
    if (p < 2) throw std::domain_error("leading-form divisor needs I-order at least 2");
    const std::string zname = R.name(R.line_var());
    // coefficients c_i(x_n) of x_1^i x_2^{p-i} in the I-degree-p part
    std::vector<UniPoly> c(static_cast<size_t>(p) + 1, UniPoly::zero(zname));
    for (const auto& t : f.terms()) {
        long d = t.m[0] + t.m[1];
        if (d != p) continue;
        c[t.m[0]] = c[t.m[0]] + UniPoly::monomial(zname, t.c, static_cast<int>(t.m[2]));
    }
    std::vector<UniPoly> gx(static_cast<size_t>(p), UniPoly::zero(zname));
    std::vector<UniPoly> gy(static_cast<size_t>(p), UniPoly::zero(zname));
    for (long i = 0; i + 1 <= p; ++i) {
        gx[i] = Rat(i + 1) * c[i + 1];          // d/dx: coeff of x^i y^{p-1-i}
        gy[i] = Rat(p - i) * c[i];              // d/dy
    }
    UniPoly res = homogeneous_resultant(gx, p - 1, gy, p - 1, zname);
    return DivisorOnLine::from_poly(res);
}

/// The transversal discriminant as a divisor on the x_n-line: the product
/// over the cells of the characteristic polynomial of multiplication by x_n
/// on the cell algebra (the zeroth Fitting ideal of the pushed-forward
/// critical algebra, via elementary divisors).
inline DivisorOnLine transversal_divisor(const MultiPoly& f,
                                         const std::vector<size_t>& chart_order = {}) {
    std::vector<CritCell> cells = crit_cells(f, chart_order);
    const std::string xn = f.ring()->name(f.ring()->line_var());
    bool cells_finite = true;
    for (const auto& c : cells) cells_finite = cells_finite && c.finite;
    if (!cells_finite) {
        // a whole exceptional fiber degenerates (transversal multiplicity
        // jump); the divisor is still defined as long as the generic fiber
        // is smooth, and the leading-form discriminant computes it
        if (!is_generic_ordinary(f))
            throw std::domain_error(
                "transversal discriminant undefined: the critical locus dominates the line "
                "(generic transversal type is not an ordinary multiple point)");
        if (f.ring()->coordinate_count() == 3) return leading_form_divisor(f);
        throw std::domain_error(
            "transversal multiplicity jump with more than three variables is not supported");
    }
    UniPoly h = UniPoly::constant(xn, Rat(1));
    for (const auto& c : cells) {
        if (c.unit || c.dimension == 0) continue;
        QuotientAlgebra A =
            QuotientAlgebra::build(c.ideal, orders::global_degrevlex(c.ideal.ring()));
        UniPoly cp = A.char_poly_of_mult(c.ideal.ring()->index_of_checked(xn));
        h = h * cp;
    }
    return DivisorOnLine::from_poly(h);
}

}  // namespace linesing

#endif
