#ifndef LIOUVILLE_FINITE_GRAPH_HPP
#define LIOUVILLE_FINITE_GRAPH_HPP

#include "liouville/graph.hpp"

#include <nlohmann/json.hpp>

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace liouville {

/// Vertex of an explicit finite graph. Indices follow the sorted order of the
/// string ids; `id` points into the owning graph's name table.
struct FiniteVertex {
    std::uint32_t index = 0;
    const std::string* id = nullptr;

    friend std::strong_ordering operator<=>(const FiniteVertex& a, const FiniteVertex& b) noexcept {
        return a.index <=> b.index;
    }
    friend bool operator==(const FiniteVertex& a, const FiniteVertex& b) noexcept { return a.index == b.index; }
};

std::string to_string(const FiniteVertex& x);

class FiniteGraph {
public:
    using vertex_type = FiniteVertex;
    static constexpr GraphFlavor flavor = GraphFlavor::finite_explicit;

    class Builder {
    public:
        Builder& add_vertex(std::string id, double mu);
        /// Adds omega_ab = omega_ba = w. Listing the reverse direction again is
        /// accepted only with the same weight.
        Builder& add_edge(const std::string& a, const std::string& b, double w);
        FiniteGraph build() const;

    private:
        std::map<std::string, double> measure_;
        std::map<std::pair<std::string, std::string>, double> edges_;  // key ordered a < b
    };

    std::size_t size() const noexcept { return names_->size(); }
    FiniteVertex vertex(std::uint32_t index) const { return {index, &(*names_)[index]}; }
    std::optional<FiniteVertex> find(const std::string& id) const;
    std::vector<FiniteVertex> vertices() const;
    std::size_t edge_count() const noexcept { return edge_count_; }

    double measure(const FiniteVertex& x) const { return measure_[x.index]; }

    template <class Fn>
    void for_each_neighbor(const FiniteVertex& x, Fn&& fn) const {
        for (const auto& [y, w] : (*adjacency_)[x.index]) fn(vertex(y), w);
    }

    /// omega_xy, zero when x and y are not adjacent.
    double weight(const FiniteVertex& x, const FiniteVertex& y) const;

    using Adjacency = std::vector<std::vector<std::pair<std::uint32_t, double>>>;

private:
    friend class FiniteMetric;
    FiniteGraph() = default;

    std::shared_ptr<const std::vector<std::string>> names_;
    std::vector<double> measure_;
    std::shared_ptr<const Adjacency> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Hop distance or an explicit distance table on a finite graph.
class FiniteMetric {
public:
    static FiniteMetric hop(const FiniteGraph& g);
    /// `table` must list every unordered pair of distinct vertices.
    static FiniteMetric table(const FiniteGraph& g, const std::map<std::pair<std::string, std::string>, double>& table);

    double distance(const FiniteVertex& x, const FiniteVertex& y) const;
    const char* kind() const noexcept { return table_.empty() ? "hop-distance" : "explicit-table"; }

private:
    struct HopCache {
        std::mutex mutex;
        std::map<std::uint32_t, std::vector<double>> rows;
    };

    const std::vector<double>& hop_row(std::uint32_t source) const;

    std::shared_ptr<const FiniteGraph::Adjacency> adjacency_;
    std::shared_ptr<HopCache> cache_;
    std::vector<double> table_;  // row-major n x n
    std::size_t n_ = 0;
};

struct FiniteGraphFamily {
    FiniteGraph graph;
    FiniteMetric metric;
};

/// Parses {"vertices":[{"id","mu"}], "edges":[{"a","b","w"}], "metric":{...}}.
/// The optional metric is {"kind":"hop"} or
/// {"kind":"table","distances":[{"a","b","d"}]}.
FiniteGraphFamily parse_graph_json(const nlohmann::json& doc);
FiniteGraphFamily load_graph_json(const std::filesystem::path& path);

}  // namespace liouville

template <>
struct std::hash<liouville::FiniteVertex> {
    std::size_t operator()(const liouville::FiniteVertex& x) const noexcept { return x.index; }
};

#endif
