#ifndef LIOUVILLE_METRIC_VOLUME_HPP
#define LIOUVILLE_METRIC_VOLUME_HPP

// Balls, volumes, jump size and the distance-Laplacian diagnostics.

#include "liouville/calculus.hpp"
#include "liouville/error.hpp"
#include "liouville/graph.hpp"
#include "liouville/parallel.hpp"
#include "liouville/slope.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace liouville {

/// Default cap on vertices discovered by one exploration.
inline constexpr std::size_t kDefaultVertexBudget = 25'000'000;

template <class V>
struct BallRegion {
    V center;
    double radius = 0.0;
    double margin = 0.0;
    std::vector<V> vertices;       // BFS discovery order
    std::vector<double> distances;  // d(vertices[i], center)
    std::size_t explored = 0;       // vertices discovered, including the margin shell

    std::size_t size() const noexcept { return vertices.size(); }
};

/// B_r(x0) by breadth-first search through vertices with d <= r + margin,
/// keeping those with d <= r.
///
/// The graph is undirected, so a vertex found from BFS layer k can only sit in
/// layers k-1, k or k+1; only those three layers are kept for deduplication.
template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
BallRegion<vertex_t<G>> ball(const G& g, const M& d, const vertex_t<G>& x0, double r, double margin,
                             std::size_t budget = kDefaultVertexBudget) {
    using V = vertex_t<G>;
    if (!(r >= 0.0) || !(margin >= 0.0)) throw ContractError("ball needs r >= 0 and margin >= 0");
    const double limit = r + margin;

    BallRegion<V> out{x0, r, margin, {}, {}, 1};
    out.vertices.push_back(x0);
    out.distances.push_back(0.0);

    std::unordered_set<V> previous, current{x0}, next;
    std::vector<V> frontier{x0}, upcoming;
    while (!frontier.empty()) {
        for (const V& x : frontier) {
            g.for_each_neighbor(x, [&](const V& y, double) {
                if (current.contains(y) || previous.contains(y) || next.contains(y)) return;
                const double dy = d.distance(y, x0);
                if (dy > limit) return;
                if (++out.explored > budget) throw BudgetExceededError(out.explored - 1, budget);
                next.insert(y);
                upcoming.push_back(y);
                if (dy <= r) {
                    out.vertices.push_back(y);
                    out.distances.push_back(dy);
                }
            });
        }
        previous = std::move(current);
        current = std::move(next);
        next.clear();
        frontier.swap(upcoming);
        upcoming.clear();
    }
    return out;
}

/// sum mu(x) over the region
template <WeightedGraph G>
double volume(const G& g, std::span<const vertex_t<G>> region) {
    double total = 0.0;
    for (const auto& x : region) total += g.measure(x);
    return total;
}

struct JumpSize {
    double explored_sup = 0.0;
    std::optional<double> analytic;  // known value for built-in families

    double value() const noexcept { return analytic.value_or(explored_sup); }
};

/// sup d(x, y) over edges leaving the region.
template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
JumpSize jump_size(const G& g, const M& d, std::span<const vertex_t<G>> region,
                   std::optional<double> analytic = std::nullopt) {
    JumpSize j{0.0, analytic};
    for (const auto& x : region)
        g.for_each_neighbor(x, [&](const vertex_t<G>& y, double) { j.explored_sup = std::max(j.explored_sup, d.distance(x, y)); });
    return j;
}

/// Delta[d(., x0)](x)
template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
double laplacian_of_distance(const G& g, const M& d, const vertex_t<G>& x0, const vertex_t<G>& x) {
    return laplacian(g, [&](const vertex_t<G>& y) { return d.distance(y, x0); }, x);
}

template <class V>
struct DistanceLaplacianFit {
    double constant = 0.0;     // smallest C with Delta d <= C / d^alpha on the annulus
    double raw_maximum = 0.0;  // before clamping at 0
    std::optional<V> argmax;
    std::size_t annulus_size = 0;
};

/// max of Delta d(x) d(x)^alpha over R0 < d(x) <= R_max, clamped below at 0,
/// on an already enumerated ball of radius >= R_max.
template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
DistanceLaplacianFit<vertex_t<G>> fit_distance_laplacian_bound_on(const G& g, const M& d,
                                                                  const BallRegion<vertex_t<G>>& region,
                                                                  double alpha, double r0, double r_max,
                                                                  unsigned workers = 1) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractError("alpha must lie in [0, 1]");
    if (!(r0 >= 1.0)) throw ContractError("R0 must be >= 1");
    if (!(r_max > r0)) throw ContractError("R_max must exceed R0");
    if (region.radius < r_max) throw ContractError("enumerated ball is smaller than R_max");

    std::vector<std::size_t> annulus;
    for (std::size_t i = 0; i < region.size(); ++i)
        if (region.distances[i] > r0 && region.distances[i] <= r_max) annulus.push_back(i);
    if (annulus.empty())
        throw DomainError("annulus " + std::to_string(r0) + " < d <= " + std::to_string(r_max) + " is empty");

    const auto [best, at] = parallel_argmax(annulus.size(), workers, [&](std::size_t k) {
        const std::size_t i = annulus[k];
        return laplacian_of_distance(g, d, region.center, region.vertices[i]) * std::pow(region.distances[i], alpha);
    });
    return {std::max(0.0, best), best, region.vertices[annulus[at]], annulus.size()};
}

template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
DistanceLaplacianFit<vertex_t<G>> fit_distance_laplacian_bound(const G& g, const M& d, const vertex_t<G>& x0,
                                                               double alpha, double r0, double r_max,
                                                               double margin, unsigned workers = 1,
                                                               std::size_t budget = kDefaultVertexBudget) {
    if (!(r_max > r0)) throw ContractError("R_max must exceed R0");
    return fit_distance_laplacian_bound_on(g, d, ball(g, d, x0, r_max, margin, budget), alpha, r0, r_max, workers);
}

template <class V>
struct PowerDistanceReport {
    double exponent = 0.0;
    double maximum = 0.0;  // max of Delta[d^p] over the region
    std::optional<V> argmax;
    double implied_alpha = 0.0;  // min{p - 1, 1}
    // Convexity gives Delta d <= Delta[d^p] / (p d^{p-1}) <= maximum / (p d^{p-1});
    // the largest excess of Delta d over that bound, over vertices with d > 0.
    double worst_convexity_excess = -INFINITY;
    bool convexity_bound_holds = true;
};

template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
PowerDistanceReport<vertex_t<G>> check_power_distance_bound(const G& g, const M& d, const vertex_t<G>& x0,
                                                            double p, std::span<const vertex_t<G>> region) {
    using V = vertex_t<G>;
    if (!(p > 1.0)) throw ContractError("power-distance bound needs p > 1");
    if (region.empty()) throw ContractError("power-distance bound needs a nonempty region");

    bool informative = region.size() == 1;
    for (const V& x : region)
        if (d.distance(x, x0) > 0.0) informative = true;
    if (!informative) throw DomainError("metric vanishes on the whole region; distance bounds carry no information");

    PowerDistanceReport<V> r;
    r.exponent = p;
    r.implied_alpha = std::min(p - 1.0, 1.0);
    r.maximum = -INFINITY;
    const auto power = [&](const V& y) { return std::pow(d.distance(y, x0), p); };
    for (const V& x : region) {
        const double value = laplacian(g, power, x);
        if (value > r.maximum) {
            r.maximum = value;
            r.argmax = x;
        }
    }
    for (const V& x : region) {
        const double dx = d.distance(x, x0);
        if (dx <= 0.0) continue;
        const double bound = r.maximum / (p * std::pow(dx, p - 1.0));
        const double lap = laplacian_of_distance(g, d, x0, x);
        const double excess = lap - bound;
        r.worst_convexity_excess = std::max(r.worst_convexity_excess, excess);
        if (excess > 1e-12 * std::max(1.0, std::abs(bound))) r.convexity_bound_holds = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Volume growth

struct VolumeGrowthOptions {
    double margin = 1.0;  // one jump for every built-in family
    double slope_tolerance = 0.1;
    double ratio_growth_allowance = 1.05;
    unsigned workers = 1;
    std::size_t budget = kDefaultVertexBudget;
};

struct VolumeGrowthRow {
    double radius = 0.0;
    double mass = 0.0;   // W(R) = sum over B_2R \ B_R of v^{-1/(sigma-1)} mu
    double ratio = 0.0;  // W(R) / R^target
    std::optional<double> slope_so_far;
};

struct VolumeGrowthReport {
    double sigma = 0.0;
    double alpha = 0.0;
    double target_exponent = 0.0;  // (1 + alpha) sigma / (sigma - 1)
    double slope = 0.0;
    double slope_tolerance = 0.0;
    double margin = 0.0;
    std::size_t explored = 0;
    std::vector<VolumeGrowthRow> rows;
    double bottom_max_ratio = 0.0;
    double top_max_ratio = 0.0;
    bool ratios_bounded = false;
    bool slope_within_target = false;
    bool consistent = false;

    /// R,W,ratio,slope_so_far
    std::string csv() const;
};

namespace detail {
void finish_volume_growth(VolumeGrowthReport& report, const VolumeGrowthOptions& options);
}

/// W(R) for each radius from an already enumerated ball of radius >= 2 max R.
template <WeightedGraph G>
VolumeGrowthReport volume_growth_on(const G& g, const BallRegion<vertex_t<G>>& region,
                                    const VertexFunction<vertex_t<G>>& v, double sigma, double alpha,
                                    std::span<const double> radii, const VolumeGrowthOptions& options = {}) {
    if (!(sigma > 1.0)) throw ContractError("volume growth needs sigma > 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractError("alpha must lie in [0, 1]");
    if (radii.size() < 4) throw ContractError("volume growth slope needs at least 4 radii");
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
            throw ContractError("radii must be positive and strictly increasing");
    if (region.radius < 2.0 * radii.back()) throw ContractError("enumerated ball is smaller than 2 max R");

    const double power = -1.0 / (sigma - 1.0);
    VolumeGrowthReport report;
    report.sigma = sigma;
    report.alpha = alpha;
    report.target_exponent = (1.0 + alpha) * sigma / (sigma - 1.0);
    report.slope_tolerance = options.slope_tolerance;
    report.margin = region.margin;
    report.explored = region.explored;
    for (double R : radii) {
        const double mass = parallel_sum(region.size(), options.workers, [&](std::size_t i) {
            const double dist = region.distances[i];
            if (!(dist > R && dist <= 2.0 * R)) return 0.0;
            const auto& x = region.vertices[i];
            const double vx = v(x);
            if (!(vx > 0.0))
                throw DomainError("potential must be positive: v(" + to_string(x) + ") = " + std::to_string(vx));
            return std::pow(vx, power) * g.measure(x);
        });
        report.rows.push_back({R, mass, mass / std::pow(R, report.target_exponent), std::nullopt});
    }
    detail::finish_volume_growth(report, options);
    return report;
}

template <WeightedGraph G, PseudoMetricOn<vertex_t<G>> M>
VolumeGrowthReport volume_growth_report(const G& g, const M& d, const vertex_t<G>& x0,
                                        const VertexFunction<vertex_t<G>>& v, double sigma, double alpha,
                                        std::span<const double> radii, const VolumeGrowthOptions& options = {}) {
    if (radii.empty()) throw ContractError("volume growth slope needs at least 4 radii");
    const auto region = ball(g, d, x0, 2.0 * radii.back(), options.margin, options.budget);
    return volume_growth_on(g, region, v, sigma, alpha, radii, options);
}

}  // namespace liouville

#endif
