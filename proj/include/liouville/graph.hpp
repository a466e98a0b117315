#ifndef LIOUVILLE_GRAPH_HPP
#define LIOUVILLE_GRAPH_HPP

// Core abstractions for locally finite weighted graphs (V, omega, mu).
//
// A graph type exposes
//   using vertex_type = ...;           totally ordered, hashable, copyable
//   static constexpr GraphFlavor flavor;
//   double measure(const vertex_type&) const;
//   void for_each_neighbor(const vertex_type&, Fn&&) const;
// where Fn is called as fn(const vertex_type& y, double omega_xy) once per
// neighbor, in ascending vertex order. Graphs are immutable after
// construction and safe for concurrent reads.

#include "liouville/error.hpp"

#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace liouville {

enum class GraphFlavor { finite_explicit, lazy_procedural };

inline const char* to_string(GraphFlavor f) noexcept {
    return f == GraphFlavor::finite_explicit ? "finite-explicit" : "lazy-procedural";
}

template <class V>
struct Neighbor {
    V vertex;
    double weight;
};

namespace detail {
template <class V>
struct NeighborProbe {
    void operator()(const V&, double) const {}
};
}  // namespace detail

template <class G>
concept WeightedGraph = requires(const G& g, const typename G::vertex_type& x) {
    typename G::vertex_type;
    { G::flavor } -> std::convertible_to<GraphFlavor>;
    { g.measure(x) } -> std::convertible_to<double>;
    g.for_each_neighbor(x, detail::NeighborProbe<typename G::vertex_type>{});
} && std::totally_ordered<typename G::vertex_type>;

template <class G>
using vertex_t = typename G::vertex_type;

/// A pseudo-metric d on the vertices of some graph.
template <class M, class V>
concept PseudoMetricOn = requires(const M& m, const V& x) {
    { m.distance(x, x) } -> std::convertible_to<double>;
    { m.kind() } -> std::convertible_to<const char*>;
};

template <class F, class V>
concept VertexCallable = std::regular_invocable<const F&, const V&> &&
                         std::convertible_to<std::invoke_result_t<const F&, const V&>, double>;

template <WeightedGraph G>
std::vector<Neighbor<vertex_t<G>>> neighbors(const G& g, const vertex_t<G>& x) {
    std::vector<Neighbor<vertex_t<G>>> out;
    g.for_each_neighbor(x, [&](const vertex_t<G>& y, double w) { out.push_back({y, w}); });
    return out;
}

template <WeightedGraph G>
double weight_sum(const G& g, const vertex_t<G>& x) {
    double sum = 0.0;
    g.for_each_neighbor(x, [&](const vertex_t<G>&, double w) { sum += w; });
    return sum;
}

/// Real-valued function on vertices with an optional finite-support hint.
///
/// When `support` is set the function is declared to vanish outside it; this
/// is what the integration-by-parts check relies on.
template <class V>
struct VertexFunction {
    std::function<double(const V&)> evaluate;
    std::optional<std::vector<V>> support;

    double operator()(const V& x) const { return evaluate(x); }

    bool finitely_supported() const noexcept { return support.has_value(); }
};

template <class V>
VertexFunction<V> constant_function(double c) {
    return {[c](const V&) { return c; }, std::nullopt};
}

/// Table-backed function. Vertices missing from the table are either zero
/// (finite support) or undefined, in which case evaluation throws.
template <class V>
class TableFunction {
public:
    enum class Outside { zero, undefined };

    TableFunction(std::map<V, double> values, Outside outside)
        : values_(std::move(values)), outside_(outside) {}

    double operator()(const V& x) const {
        auto it = values_.find(x);
        if (it != values_.end()) return it->second;
        if (outside_ == Outside::zero) return 0.0;
        throw EvaluationError("no table entry for vertex " + to_string(x));
    }

    const std::map<V, double>& values() const noexcept { return values_; }

    /// Finite support hint; only meaningful when Outside::zero.
    std::vector<V> support() const {
        std::vector<V> s;
        for (const auto& [x, value] : values_)
            if (value != 0.0) s.push_back(x);
        return s;
    }

    VertexFunction<V> as_vertex_function() const {
        auto self = *this;
        std::optional<std::vector<V>> hint;
        if (outside_ == Outside::zero) hint = support();
        return {[self](const V& x) { return self(x); }, std::move(hint)};
    }

private:
    std::map<V, double> values_;
    Outside outside_;
};

}  // namespace liouville

#endif
