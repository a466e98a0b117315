#ifndef LIOUVILLE_VERIFIER_HPP
#define LIOUVILLE_VERIFIER_HPP

// Finite-region evidence for the Liouville theorem: hypothesis checks, the
// cutoff machinery of the capacity argument replayed as numbers, and the
// strong maximum principle.

#include "liouville/calculus.hpp"
#include "liouville/error.hpp"
#include "liouville/graph.hpp"
#include "liouville/metric_volume.hpp"
#include "liouville/parallel.hpp"
#include "liouville/supersolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace liouville {

// ---------------------------------------------------------------------------
// Cutoff

/// psi = 1 on [0,1], 1 - s5(t-1) on [1,2] with s5(x) = 6x^5 - 15x^4 + 10x^3,
/// 0 on [2,inf). C^2, non-increasing.
struct CutoffProfile {
    double first_bound = 15.0 / 8.0;            // M1 >= sup |psi'|, attained at 1.5
    double second_bound = 10.0 / std::sqrt(3.0);  // M2 >= sup |psi''|, attained at 1.5 -+ 1/(2 sqrt 3)

    double value(double t) const noexcept;
    double derivative(double t) const noexcept;
    double second_derivative(double t) const noexcept;
};

CutoffProfile default_cutoff();

/// 2 sigma / (sigma - 1), safely above the strict threshold sigma/(sigma-1).
inline double default_cutoff_power(double sigma) { return 2.0 * sigma / (sigma - 1.0); }

// ---------------------------------------------------------------------------
// Problem data

template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
struct ProblemSpec {
    using vertex_type = vertex_t<G>;

    const G& graph;
    const M& metric;
    vertex_type base;
    VertexFunction<vertex_type> potential;
    double sigma = 2.0;
    double alpha = 1.0;
    double r0 = 2.0;
    double s = 0.0;       // cutoff power; 0 selects 2 sigma / (sigma - 1)
    double jump = 1.0;    // jump size j
    double margin = 1.0;  // ball enumeration margin
    unsigned workers = 1;
    std::size_t budget = kDefaultVertexBudget;
    CutoffProfile cutoff{};

    double power() const noexcept { return s > 0.0 ? s : default_cutoff_power(sigma); }

    void validate() const {
        std::vector<std::string> problems;
        if (!(sigma > 1.0)) problems.push_back("sigma must exceed 1");
        if (!(alpha >= 0.0 && alpha <= 1.0)) problems.push_back("alpha must lie in [0, 1]");
        if (!(r0 > 1.0)) problems.push_back("R0 must exceed 1");
        if (sigma > 1.0 && !(power() > sigma / (sigma - 1.0))) problems.push_back("s must exceed sigma/(sigma-1)");
        if (!(jump > 0.0)) problems.push_back("jump size must be positive");
        if (!(margin >= 0.0)) problems.push_back("margin must be nonnegative");
        if (!problems.empty()) {
            std::string what = "invalid problem:";
            for (const auto& p : problems) what += " " + p + ";";
            throw ContractError(what);
        }
    }

    double phi(const vertex_type& x, double R) const { return cutoff.value(metric.distance(x, base) / R); }
};

// ---------------------------------------------------------------------------
// Hypotheses

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) noexcept {
    return v == Verdict::pass ? "pass" : v == Verdict::fail ? "fail" : "inconclusive";
}

struct HypothesisCheck {
    std::string name;
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> measured;
    std::string detail;
};

struct HypothesisReport {
    double explored_radius = 0.0;
    double margin = 0.0;
    std::size_t explored = 0;
    std::vector<HypothesisCheck> assumptions;  // (i) .. (v)
    std::optional<VolumeGrowthReport> volume_growth;
    Verdict volume_growth_verdict = Verdict::inconclusive;
    bool theorem_applies = false;
    std::string scope = "finite-region evidence only";
};

namespace detail {

/// Plain BFS over an explicit finite graph; returns the number of vertices
/// reachable from x0.
template <WeightedGraph G>
std::size_t reachable_count(const G& g, const vertex_t<G>& x0) {
    std::set<vertex_t<G>> seen{x0};
    std::deque<vertex_t<G>> queue{x0};
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        g.for_each_neighbor(x, [&](const vertex_t<G>& y, double) {
            if (seen.insert(y).second) queue.push_back(y);
        });
    }
    return seen.size();
}

/// omega_xy == omega_yx and x not in N(x), on every edge out of the region.
template <WeightedGraph G>
std::optional<std::string> structural_defect(const G& g, std::span<const vertex_t<G>> region) {
    using V = vertex_t<G>;
    std::optional<std::string> defect;
    for (const V& x : region) {
        if (!(g.measure(x) > 0.0)) return "mu(" + to_string(x) + ") is not positive";
        g.for_each_neighbor(x, [&](const V& y, double w) {
            if (defect) return;
            if (y == x) defect = "self-loop at " + to_string(x);
            else if (!(w > 0.0)) defect = "non-positive weight on " + to_string(x) + "-" + to_string(y);
            else {
                double back = 0.0;
                g.for_each_neighbor(y, [&](const V& z, double wz) {
                    if (z == x) back = wz;
                });
                if (back != w) defect = "asymmetric weight on " + to_string(x) + "-" + to_string(y);
            }
        });
        if (defect) return defect;
    }
    return std::nullopt;
}

}  // namespace detail

struct HypothesisOptions {
    std::optional<double> analytic_jump;
    VolumeGrowthOptions volume{};
};

/// Checks assumptions (i)-(v) and the volume-growth condition on B_{2 max R}.
/// A budget overrun makes every verdict inconclusive, never a pass.
template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
HypothesisReport check_hypotheses(const ProblemSpec<G, M>& spec, std::span<const double> radii,
                                  const HypothesisOptions& options = {}) {
    using V = vertex_t<G>;
    spec.validate();
    if (radii.empty()) throw ContractError("hypothesis check needs at least one radius");
    const double top = 2.0 * *std::max_element(radii.begin(), radii.end());

    HypothesisReport report;
    report.explored_radius = top;
    report.margin = spec.margin;
    const char* names[] = {"(i) connected, locally finite, undirected", "(ii) row-sum bound",
                           "(iii) finite jump size", "(iv) finite balls", "(v) distance-Laplacian decay"};
    for (const char* n : names) report.assumptions.push_back({n, Verdict::inconclusive, std::nullopt, ""});

    std::optional<BallRegion<V>> region;
    try {
        region = ball(spec.graph, spec.metric, spec.base, top, spec.margin, spec.budget);
    } catch (const BudgetExceededError& e) {
        for (auto& a : report.assumptions) a.detail = e.what();
        report.explored = e.explored();
        return report;
    }
    report.explored = region->explored;
    const std::span<const V> vertices(region->vertices);

    auto& connected = report.assumptions[0];
    if (auto defect = detail::structural_defect(spec.graph, vertices)) {
        connected.verdict = Verdict::fail;
        connected.detail = *defect;
    } else {
        if constexpr (requires { spec.graph.size(); }) {
            const std::size_t reach = detail::reachable_count(spec.graph, spec.base);
            connected.verdict = reach == spec.graph.size() ? Verdict::pass : Verdict::fail;
            connected.measured = static_cast<double>(reach);
            connected.detail = std::to_string(reach) + " of " + std::to_string(spec.graph.size()) +
                               " vertices reachable from the base point";
        } else {
            connected.verdict = Verdict::pass;
            connected.detail = "explored region is connected by construction; symmetric, loop-free on " +
                               std::to_string(region->size()) + " vertices";
        }
    }

    auto& rows = report.assumptions[1];
    rows.measured = check_row_sum_bound(spec.graph, vertices);
    rows.verdict = std::isfinite(*rows.measured) ? Verdict::pass : Verdict::fail;
    rows.detail = "max over the region of sum omega / mu";

    auto& jump = report.assumptions[2];
    const auto j = jump_size(spec.graph, spec.metric, vertices, options.analytic_jump);
    jump.measured = j.explored_sup;
    jump.verdict = std::isfinite(j.explored_sup) ? Verdict::pass : Verdict::fail;
    jump.detail = j.analytic ? "explored supremum; analytic value " + std::to_string(*j.analytic)
                             : "explored supremum";

    auto& finite = report.assumptions[3];
    finite.verdict = Verdict::pass;
    finite.measured = static_cast<double>(region->size());
    finite.detail = "B_" + std::to_string(top) + " enumerated with " + std::to_string(region->explored) +
                    " vertices explored (margin " + std::to_string(spec.margin) + ")";

    auto& decay = report.assumptions[4];
    try {
        const auto fit = fit_distance_laplacian_bound_on(spec.graph, spec.metric, *region, spec.alpha, spec.r0, top,
                                                         spec.workers);
        decay.measured = fit.constant;
        decay.verdict = std::isfinite(fit.constant) ? Verdict::pass : Verdict::fail;
        decay.detail = "smallest C with Delta d <= C / d^alpha on R0 < d <= " + std::to_string(top);
    } catch (const DomainError& e) {
        decay.detail = e.what();
    }

    if (radii.size() >= 4) {
        VolumeGrowthOptions vo = options.volume;
        vo.workers = spec.workers;
        report.volume_growth =
            volume_growth_on(spec.graph, *region, spec.potential, spec.sigma, spec.alpha, radii, vo);
        report.volume_growth_verdict = report.volume_growth->consistent ? Verdict::pass : Verdict::fail;
    }

    bool all = report.volume_growth_verdict == Verdict::pass;
    for (const auto& a : report.assumptions) all = all && a.verdict == Verdict::pass;
    report.theorem_applies = all;
    return report;
}

// ---------------------------------------------------------------------------
// Cutoff Laplacian

template <class V>
struct CutoffEstimate {
    double radius = 0.0;
    double c_hat = 0.0;      // max(0, max over A_R of -Delta phi R^{1+alpha})
    double c_hat_raw = 0.0;  // before clamping
    std::optional<V> argmax;
    std::size_t annulus_size = 0;
    bool vanishes_outside_annulus = true;
    std::optional<V> first_offender;
    bool convexity_holds = true;
    double worst_convexity_gap = INFINITY;  // min over edges of lhs - rhs (>= -slack)
    std::size_t edges_checked = 0;
    bool annulus_inclusion = false;  // A_R inside B_{4R} \ B_{R/2}
    std::size_t explored = 0;
};

namespace detail {

template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
CutoffEstimate<vertex_t<G>> cutoff_estimate_on(const ProblemSpec<G, M>& spec, const BallRegion<vertex_t<G>>& region,
                                               double R, std::span<const double> exponents) {
    using V = vertex_t<G>;
    const double j = spec.jump;
    const double scale = std::pow(R, 1.0 + spec.alpha);
    const auto phi = [&](const V& y) { return spec.phi(y, R); };

    CutoffEstimate<V> e;
    e.radius = R;
    e.explored = region.explored;
    e.annulus_inclusion = R - j >= R / 2.0 && 2.0 * R + j <= 4.0 * R;

    struct Chunk {
        double best = -INFINITY;
        std::size_t at = 0;
        std::size_t annulus = 0;
        std::size_t offender = SIZE_MAX;
        double gap = INFINITY;
        std::size_t edges = 0;
    };
    const double limit = 2.0 * R + 2.0 * j;
    std::vector<Chunk> chunks(chunk_count(region.size()));
    parallel_chunks(region.size(), spec.workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
        Chunk k;
        for (std::size_t i = begin; i < end; ++i) {
            const double dist = region.distances[i];
            if (dist > limit) continue;
            const V& x = region.vertices[i];
            const double lap = laplacian(spec.graph, phi, x);
            if (dist > R - j && dist <= 2.0 * R + j) {
                ++k.annulus;
                const double value = -lap * scale;
                if (value > k.best) k.best = value, k.at = i;
            } else if (lap != 0.0 && k.offender == SIZE_MAX) {
                k.offender = i;
            }
            const double px = phi(x);
            spec.graph.for_each_neighbor(x, [&](const V& y, double) {
                const double py = phi(y);
                for (double s : exponents) {
                    const double lhs = std::pow(py, s) - std::pow(px, s);
                    const double rhs = s * std::pow(px, s - 1.0) * (py - px);
                    const double slack = 4e-16 * (std::pow(py, s) + std::pow(px, s) + std::abs(rhs));
                    k.gap = std::min(k.gap, lhs - rhs + slack);
                    ++k.edges;
                }
            });
        }
        chunks[c] = k;
    });
    double best = -INFINITY;
    for (const auto& k : chunks) {
        if (k.best > best) best = k.best, e.argmax = region.vertices[k.at];
        e.annulus_size += k.annulus;
        if (k.offender != SIZE_MAX && !e.first_offender) e.first_offender = region.vertices[k.offender];
        e.worst_convexity_gap = std::min(e.worst_convexity_gap, k.gap);
        e.edges_checked += k.edges;
    }
    e.vanishes_outside_annulus = !e.first_offender.has_value();
    e.convexity_holds = !(e.worst_convexity_gap < 0.0);
    e.c_hat_raw = e.annulus_size > 0 ? best : 0.0;
    e.c_hat = std::max(0.0, e.c_hat_raw);
    return e;
}

}  // namespace detail

/// Empirical constant of the cutoff estimate at scale R on B_{2R+2j}, plus the
/// support and per-edge convexity checks. `extra_exponents` adds powers to the
/// convexity check besides the problem's s.
template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
CutoffEstimate<vertex_t<G>> cutoff_laplacian_estimate(const ProblemSpec<G, M>& spec, double R,
                                                      std::span<const double> extra_exponents = {}) {
    spec.validate();
    if (!(R >= std::max(spec.r0, spec.jump))) throw ContractError("cutoff estimate needs R >= max{R0, j}");
    const auto region = ball(spec.graph, spec.metric, spec.base, 2.0 * R + 2.0 * spec.jump, spec.margin, spec.budget);
    std::vector<double> exponents{spec.power()};
    exponents.insert(exponents.end(), extra_exponents.begin(), extra_exponents.end());
    return detail::cutoff_estimate_on(spec, region, R, exponents);
}

// ---------------------------------------------------------------------------
// Capacity certificate

struct CertificateRow {
    double radius = 0.0;
    double lhs = 0.0;              // sum mu v phi^s u^sigma
    double descent = 0.0;          // -sum phi^s mu Delta u
    double transport = 0.0;        // -s sum u phi^{s-1} mu Delta phi
    double annulus_bound = 0.0;    // s C_hat R^{-1-alpha} sum_{A_R} mu u phi^{s-1}
    double young_bound = 0.0;      // Young's split of annulus_bound
    double hoelder_weighted = 0.0;  // Hoelder with the phi factors kept
    double hoelder_bound = 0.0;    // phi factors dropped (0 <= phi <= 1)
    double annulus_mass = 0.0;     // sum_{A_R} mu v^{-1/(sigma-1)}
    double c_hat = 0.0;
    double tail_mass = 0.0;        // sum_{B_R} mu v u^sigma
    bool annulus_inclusion = false;
    bool vanishes_outside_annulus = true;

    // Links of the chain. Only the first needs u to be a supersolution.
    bool supersolution_link = true;  // lhs <= descent
    bool convexity_link = true;      // descent <= transport
    bool cutoff_link = true;         // transport <= annulus_bound
    bool young_link = true;          // annulus_bound <= young_bound
    bool hoelder_link = true;        // annulus_bound <= hoelder_weighted
    bool weighting_link = true;      // hoelder_weighted <= hoelder_bound
};

struct CapacityCertificate {
    double sigma = 0.0;
    double alpha = 0.0;
    double s = 0.0;
    double jump = 0.0;
    double margin = 0.0;
    std::vector<CertificateRow> rows;
    bool tail_bounded = true;
    bool consistent = true;
    std::string verdict;
    std::vector<std::string> reasons;

    /// R,LHS,annulus_mass,hoelder_bound,C_hat,tail_mass
    std::string csv() const;
};

namespace detail {
void finish_certificate(CapacityCertificate& cert);
/// smaller <= larger up to rounding relative to the operands and `scale`.
bool within(double smaller, double larger, double scale);
}  // namespace detail

template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M, VertexCallable<vertex_t<G>> U>
CapacityCertificate capacity_certificate(const ProblemSpec<G, M>& spec, const U& u, std::span<const double> radii) {
    using V = vertex_t<G>;
    spec.validate();
    if (radii.empty()) throw ContractError("certificate needs at least one radius");
    for (double R : radii)
        if (!(R >= std::max(spec.r0, spec.jump))) throw ContractError("certificate radii must be >= max{R0, j}");

    const double sigma = spec.sigma, s = spec.power(), j = spec.jump;
    const double conj = sigma / (sigma - 1.0);
    const double top = *std::max_element(radii.begin(), radii.end());
    const auto region = ball(spec.graph, spec.metric, spec.base, 2.0 * top + 2.0 * j, spec.margin, spec.budget);

    const auto checked = [&](const V& y) {
        const double value = u(y);
        if (!(value >= 0.0))
            throw DomainError("u must be nonnegative: u(" + to_string(y) + ") = " + std::to_string(value));
        return value;
    };

    CapacityCertificate cert;
    cert.sigma = sigma;
    cert.alpha = spec.alpha;
    cert.s = s;
    cert.jump = j;
    cert.margin = spec.margin;
    const std::vector<double> exponents{s};
    for (double R : radii) {
        const auto est = detail::cutoff_estimate_on(spec, region, R, exponents);
        const double factor = s * est.c_hat / std::pow(R, 1.0 + spec.alpha);

        enum { LHS, DESCENT, TRANSPORT, MASS_U, AU_SIGMA_PHI, AMASS_PHI, AU_SIGMA, AMASS, TAIL, DESCENT_SCALE,
               TRANSPORT_SCALE, TERMS };
        std::vector<std::array<double, TERMS>> partial(chunk_count(region.size()));
        parallel_chunks(region.size(), spec.workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
            std::array<double, TERMS> t{};
            for (std::size_t i = begin; i < end; ++i) {
                const double dist = region.distances[i];
                if (dist > 2.0 * R + j) continue;
                const V& x = region.vertices[i];
                const double mu = spec.graph.measure(x);
                const double vx = spec.potential(x);
                if (!(vx > 0.0))
                    throw DomainError("potential must be positive: v(" + to_string(x) + ") = " + std::to_string(vx));
                const double ux = checked(x);
                const double usig = std::pow(ux, sigma);
                const double px = spec.phi(x, R);
                const double ps = std::pow(px, s);
                if (dist <= 2.0 * R) {
                    t[LHS] += mu * vx * ps * usig;
                    // The scales bound the rounding of the cancelling stencil sums.
                    const double lap_u = laplacian(spec.graph, checked, x);
                    const double lap_phi = laplacian(spec.graph, [&](const V& y) { return spec.phi(y, R); }, x);
                    const double weight = s * ux * std::pow(px, s - 1.0) * mu;
                    t[DESCENT] -= ps * mu * lap_u;
                    t[DESCENT_SCALE] += ps * mu * (std::abs(lap_u) + 2.0 * ux);
                    t[TRANSPORT] -= weight * lap_phi;
                    t[TRANSPORT_SCALE] += weight * (std::abs(lap_phi) + 2.0 * px);
                }
                if (dist <= R) t[TAIL] += mu * vx * usig;
                if (dist > R - j) {  // A_R
                    const double vneg = std::pow(vx, -1.0 / (sigma - 1.0));
                    t[MASS_U] += mu * ux * std::pow(px, s - 1.0);
                    t[AU_SIGMA_PHI] += mu * usig * ps * vx;
                    t[AMASS_PHI] += mu * std::pow(px, s - conj) * vneg;
                    t[AU_SIGMA] += mu * usig * vx;
                    t[AMASS] += mu * vneg;
                }
            }
            partial[c] = t;
        });
        std::array<double, TERMS> t{};
        for (const auto& p : partial)
            for (int k = 0; k < TERMS; ++k) t[k] += p[k];

        CertificateRow row;
        row.radius = R;
        row.lhs = t[LHS];
        row.descent = t[DESCENT];
        row.transport = t[TRANSPORT];
        row.annulus_bound = factor * t[MASS_U];
        row.young_bound = t[AU_SIGMA_PHI] / sigma + (sigma - 1.0) / sigma * std::pow(factor, conj) * t[AMASS_PHI];
        row.hoelder_weighted = factor * std::pow(t[AU_SIGMA_PHI], 1.0 / sigma) * std::pow(t[AMASS_PHI], 1.0 / conj);
        row.hoelder_bound = factor * std::pow(t[AU_SIGMA], 1.0 / sigma) * std::pow(t[AMASS], 1.0 / conj);
        row.annulus_mass = t[AMASS];
        row.c_hat = est.c_hat;
        row.tail_mass = t[TAIL];
        row.annulus_inclusion = est.annulus_inclusion;
        row.vanishes_outside_annulus = est.vanishes_outside_annulus;
        row.supersolution_link = detail::within(row.lhs, row.descent, t[DESCENT_SCALE]);
        row.convexity_link = detail::within(row.descent, row.transport, t[DESCENT_SCALE] + t[TRANSPORT_SCALE]);
        row.cutoff_link = detail::within(row.transport, row.annulus_bound, t[TRANSPORT_SCALE]);
        row.young_link = detail::within(row.annulus_bound, row.young_bound, 0.0);
        row.hoelder_link = detail::within(row.annulus_bound, row.hoelder_weighted, 0.0);
        row.weighting_link = detail::within(row.hoelder_weighted, row.hoelder_bound, 0.0);
        cert.rows.push_back(row);
    }
    detail::finish_certificate(cert);
    return cert;
}

// ---------------------------------------------------------------------------
// Strong maximum principle

enum class MaximumPrincipleKind { strictly_positive, identically_zero_on_component, violation };

const char* to_string(MaximumPrincipleKind kind) noexcept;

template <class V>
struct MaximumPrincipleVerdict {
    MaximumPrincipleKind kind = MaximumPrincipleKind::strictly_positive;
    std::optional<V> vertex;     // violation site, or the zero the propagation started from
    std::size_t component_size = 0;  // region vertices forced to zero
    std::string detail;
};

/// Superharmonicity (Delta u <= tol) is checked at every region vertex first;
/// then every zero of u in the region must spread to all neighbors, through
/// the region's connected components. u is evaluated on the region's one-hop
/// closure and must be nonnegative there.
template <WeightedGraph G, VertexCallable<vertex_t<G>> U>
MaximumPrincipleVerdict<vertex_t<G>> strong_maximum_principle_check(const G& g, const U& u,
                                                                    std::span<const vertex_t<G>> region,
                                                                    ToleranceRule tolerance = {}) {
    using V = vertex_t<G>;
    const auto checked = [&](const V& y) {
        const double value = u(y);
        if (!(value >= 0.0))
            throw DomainError("u must be nonnegative: u(" + to_string(y) + ") = " + std::to_string(value));
        return value;
    };

    MaximumPrincipleVerdict<V> verdict;
    for (const V& x : region) {
        const double lap = laplacian(g, checked, x);
        if (lap > tolerance.at(lap)) {
            verdict.kind = MaximumPrincipleKind::violation;
            verdict.vertex = x;
            verdict.detail = "not superharmonic: Delta u = " + std::to_string(lap);
            return verdict;
        }
    }

    const std::set<V> members(region.begin(), region.end());
    std::set<V> forced;
    for (const V& start : region) {
        if (checked(start) != 0.0 || forced.contains(start)) continue;
        if (!verdict.vertex) verdict.vertex = start;
        std::deque<V> queue{start};
        forced.insert(start);
        while (!queue.empty()) {
            const V x = queue.front();
            queue.pop_front();
            std::optional<V> positive;
            g.for_each_neighbor(x, [&](const V& y, double) {
                if (positive) return;
                if (checked(y) != 0.0) {
                    positive = y;
                    return;
                }
                if (members.contains(y) && forced.insert(y).second) queue.push_back(y);
            });
            if (positive) {
                verdict.kind = MaximumPrincipleKind::violation;
                verdict.vertex = x;
                verdict.detail = "u vanishes at " + to_string(x) + " but u(" + to_string(*positive) +
                                 ") > 0 although Delta u <= 0 there";
                return verdict;
            }
        }
    }
    if (forced.empty()) {
        verdict.kind = MaximumPrincipleKind::strictly_positive;
        verdict.detail = "u > 0 at every region vertex";
    } else {
        verdict.kind = MaximumPrincipleKind::identically_zero_on_component;
        verdict.component_size = forced.size();
        verdict.detail = "zero propagated to " + std::to_string(forced.size()) + " region vertices";
    }
    return verdict;
}

}  // namespace liouville

#endif
