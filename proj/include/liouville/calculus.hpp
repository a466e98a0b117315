#ifndef LIOUVILLE_CALCULUS_HPP
#define LIOUVILLE_CALCULUS_HPP

// Difference operator, weighted Laplacian, gradient squared and the
// identities they satisfy (product rule, integration by parts).

#include "liouville/error.hpp"
#include "liouville/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <span>
#include <vector>

namespace liouville {

/// nabla_xy f = f(y) - f(x)
template <class V, VertexCallable<V> F>
double difference(const F& f, const V& x, const V& y) {
    return f(y) - f(x);
}

namespace detail {

template <WeightedGraph G, class F>
double stencil_sum(const G& g, const F& f, const vertex_t<G>& x, bool squared) {
    const double fx = f(x);
    double sum = 0.0;
    g.for_each_neighbor(x, [&](const vertex_t<G>& y, double w) {
        double fy;
        try {
            fy = f(y);
        } catch (const EvaluationError&) {
            throw StencilIncompleteError(to_string(y));
        }
        const double diff = fy - fx;
        sum += squared ? w * diff * diff : w * diff;
    });
    return sum / g.measure(x);
}

}  // namespace detail

/// (1/mu(x)) sum_{y~x} omega_xy (f(y) - f(x))
template <WeightedGraph G, VertexCallable<vertex_t<G>> F>
double laplacian(const G& g, const F& f, const vertex_t<G>& x) {
    return detail::stencil_sum(g, f, x, false);
}

/// (1/mu(x)) sum_{y~x} omega_xy (f(y) - f(x))^2, always >= 0.
template <WeightedGraph G, VertexCallable<vertex_t<G>> F>
double gradient_squared(const G& g, const F& f, const vertex_t<G>& x) {
    return detail::stencil_sum(g, f, x, true);
}

/// |nabla_xy(f g) - f(x) nabla_xy g - (nabla_xy f) g(y)|
template <class V, VertexCallable<V> F, VertexCallable<V> H>
double check_product_rule(const F& f, const H& h, const V& x, const V& y) {
    const double fx = f(x), fy = f(y), hx = h(x), hy = h(y);
    const double lhs = fy * hy - fx * hx;
    const double rhs = fx * (hy - hx) + (fy - fx) * hy;
    return std::abs(lhs - rhs);
}

struct IntegrationByPartsReport {
    double laplacian_f_times_g = 0.0;  // sum (Delta f) g mu
    double gradient_pairing = 0.0;     // -1/2 sum_{x,y} omega (nabla f)(nabla g)
    double f_times_laplacian_g = 0.0;  // sum f (Delta g) mu
    double scale = 0.0;                // sum of absolute summands, for relative gaps
    double gap_first_second = 0.0;
    double gap_first_third = 0.0;
    double gap_second_third = 0.0;

    double max_gap() const noexcept {
        return std::max({gap_first_second, gap_first_third, gap_second_third});
    }
    double max_relative_gap() const noexcept { return max_gap() / std::max(1.0, scale); }
};

/// Evaluates the three members of the integration-by-parts identity. One of
/// f, g must carry a finite-support hint contained in `support`, and
/// `support` must contain every neighbor of that function's support.
template <WeightedGraph G>
IntegrationByPartsReport check_integration_by_parts(const G& g,
                                                    const VertexFunction<vertex_t<G>>& f,
                                                    const VertexFunction<vertex_t<G>>& h,
                                                    std::span<const vertex_t<G>> support) {
    using V = vertex_t<G>;
    const VertexFunction<V>* finite = f.finitely_supported() ? &f
                                      : h.finitely_supported() ? &h
                                                               : nullptr;
    if (finite == nullptr)
        throw ContractError("integration by parts needs one finitely supported function");

    const std::set<V> region(support.begin(), support.end());
    for (const V& x : *finite->support) {
        if (!region.contains(x))
            throw ContractError("support hint vertex " + to_string(x) + " lies outside the region");
        g.for_each_neighbor(x, [&](const V& y, double) {
            if (!region.contains(y))
                throw ContractError("region is not closed under one hop: missing " + to_string(y));
        });
    }

    IntegrationByPartsReport r;
    double pairing = 0.0;
    for (const V& x : region) {
        const double fx = f(x), hx = h(x);
        double lap_f = 0.0, lap_h = 0.0;
        g.for_each_neighbor(x, [&](const V& y, double w) {
            const double df = f(y) - fx, dh = h(y) - hx;
            lap_f += w * df;
            lap_h += w * dh;
            pairing += w * df * dh;
            r.scale += std::abs(w * df * dh) / 2.0;
        });
        r.laplacian_f_times_g += lap_f * hx;
        r.f_times_laplacian_g += fx * lap_h;
        r.scale += std::abs(lap_f * hx) + std::abs(fx * lap_h);
    }
    r.gradient_pairing = -0.5 * pairing;
    r.gap_first_second = std::abs(r.laplacian_f_times_g - r.gradient_pairing);
    r.gap_first_third = std::abs(r.laplacian_f_times_g - r.f_times_laplacian_g);
    r.gap_second_third = std::abs(r.gradient_pairing - r.f_times_laplacian_g);
    return r;
}

/// Smallest C with sum_{y~x} omega_xy <= C mu(x) on the region.
template <WeightedGraph G>
double check_row_sum_bound(const G& g, std::span<const vertex_t<G>> region) {
    if (region.empty()) throw ContractError("row-sum bound needs a nonempty region");
    double best = 0.0;
    for (const auto& x : region) best = std::max(best, weight_sum(g, x) / g.measure(x));
    return best;
}

}  // namespace liouville

#endif
