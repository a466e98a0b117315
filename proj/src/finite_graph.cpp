#include "liouville/finite_graph.hpp"

#include "liouville/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <set>

namespace liouville {

const char* to_string(LoadDiagnostic kind) noexcept {
    switch (kind) {
        case LoadDiagnostic::schema: return "schema";
        case LoadDiagnostic::duplicate_vertex: return "duplicate-vertex";
        case LoadDiagnostic::unknown_vertex: return "unknown-vertex";
        case LoadDiagnostic::self_loop: return "self-loop";
        case LoadDiagnostic::asymmetric_edge: return "asymmetric-edge";
        case LoadDiagnostic::non_positive_weight: return "non-positive-weight";
        case LoadDiagnostic::non_positive_measure: return "non-positive-measure";
        case LoadDiagnostic::metric: return "metric";
    }
    return "unknown";
}

std::string to_string(const FiniteVertex& x) { return x.id ? *x.id : "#" + std::to_string(x.index); }

FiniteGraph::Builder& FiniteGraph::Builder::add_vertex(std::string id, double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw LoadError(LoadDiagnostic::non_positive_measure, "vertex '" + id + "' has mu = " + std::to_string(mu));
    if (!measure_.emplace(id, mu).second)
        throw LoadError(LoadDiagnostic::duplicate_vertex, "vertex '" + id + "' listed twice");
    return *this;
}

FiniteGraph::Builder& FiniteGraph::Builder::add_edge(const std::string& a, const std::string& b, double w) {
    if (a == b) throw LoadError(LoadDiagnostic::self_loop, "edge '" + a + "'-'" + b + "'");
    if (!(w > 0.0) || !std::isfinite(w))
        throw LoadError(LoadDiagnostic::non_positive_weight,
                        "edge '" + a + "'-'" + b + "' has w = " + std::to_string(w));
    auto key = a < b ? std::pair{a, b} : std::pair{b, a};
    auto [it, inserted] = edges_.emplace(key, w);
    if (!inserted && it->second != w)
        throw LoadError(LoadDiagnostic::asymmetric_edge, "edge '" + a + "'-'" + b + "' listed with weights " +
                                                             std::to_string(it->second) + " and " + std::to_string(w));
    return *this;
}

FiniteGraph FiniteGraph::Builder::build() const {
    FiniteGraph g;
    auto names = std::make_shared<std::vector<std::string>>();
    std::map<std::string, std::uint32_t> index;
    for (const auto& [id, mu] : measure_) {
        index.emplace(id, static_cast<std::uint32_t>(names->size()));
        names->push_back(id);
        g.measure_.push_back(mu);
    }
    auto adjacency = std::make_shared<Adjacency>(names->size());
    for (const auto& [key, w] : edges_) {
        const auto ia = index.find(key.first);
        const auto ib = index.find(key.second);
        if (ia == index.end() || ib == index.end())
            throw LoadError(LoadDiagnostic::unknown_vertex,
                            "edge '" + key.first + "'-'" + key.second + "' references an undeclared vertex");
        (*adjacency)[ia->second].emplace_back(ib->second, w);
        (*adjacency)[ib->second].emplace_back(ia->second, w);
    }
    for (auto& row : *adjacency) std::sort(row.begin(), row.end());
    g.names_ = std::move(names);
    g.adjacency_ = std::move(adjacency);
    g.edge_count_ = edges_.size();
    return g;
}

std::optional<FiniteVertex> FiniteGraph::find(const std::string& id) const {
    auto it = std::lower_bound(names_->begin(), names_->end(), id);
    if (it == names_->end() || *it != id) return std::nullopt;
    return vertex(static_cast<std::uint32_t>(it - names_->begin()));
}

std::vector<FiniteVertex> FiniteGraph::vertices() const {
    std::vector<FiniteVertex> out;
    out.reserve(size());
    for (std::uint32_t i = 0; i < size(); ++i) out.push_back(vertex(i));
    return out;
}

double FiniteGraph::weight(const FiniteVertex& x, const FiniteVertex& y) const {
    const auto& row = (*adjacency_)[x.index];
    auto it = std::lower_bound(row.begin(), row.end(), std::pair{y.index, 0.0},
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    return it != row.end() && it->first == y.index ? it->second : 0.0;
}

// ---------------------------------------------------------------------------

FiniteMetric FiniteMetric::hop(const FiniteGraph& g) {
    FiniteMetric m;
    m.adjacency_ = g.adjacency_;
    m.cache_ = std::make_shared<HopCache>();
    m.n_ = g.size();
    return m;
}

FiniteMetric FiniteMetric::table(const FiniteGraph& g,
                                 const std::map<std::pair<std::string, std::string>, double>& table) {
    const std::size_t n = g.size();
    constexpr double unset = -1.0;
    FiniteMetric m;
    m.n_ = n;
    m.table_.assign(n * n, unset);
    for (std::size_t i = 0; i < n; ++i) m.table_[i * n + i] = 0.0;
    for (const auto& [key, d] : table) {
        const auto a = g.find(key.first), b = g.find(key.second);
        if (!a || !b)
            throw LoadError(LoadDiagnostic::unknown_vertex,
                            "distance '" + key.first + "'-'" + key.second + "' references an undeclared vertex");
        if (!(d >= 0.0) || !std::isfinite(d))
            throw LoadError(LoadDiagnostic::metric, "distance '" + key.first + "'-'" + key.second + "' is negative");
        if (a == b && d != 0.0)
            throw LoadError(LoadDiagnostic::metric, "nonzero diagonal distance at '" + key.first + "'");
        double& ab = m.table_[a->index * n + b->index];
        double& ba = m.table_[b->index * n + a->index];
        if ((ab != unset && ab != d) || (ba != unset && ba != d))
            throw LoadError(LoadDiagnostic::metric, "asymmetric distance '" + key.first + "'-'" + key.second + "'");
        ab = ba = d;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m.table_[i * n + j] == unset)
                throw LoadError(LoadDiagnostic::metric, "distance table misses pair '" + to_string(g.vertex(i)) +
                                                            "'-'" + to_string(g.vertex(j)) + "'");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (m.table_[i * n + j] > m.table_[i * n + k] + m.table_[k * n + j] + 1e-12)
                    throw LoadError(LoadDiagnostic::metric,
                                    "triangle inequality fails for '" + to_string(g.vertex(i)) + "', '" +
                                        to_string(g.vertex(j)) + "' via '" + to_string(g.vertex(k)) + "'");
    return m;
}

const std::vector<double>& FiniteMetric::hop_row(std::uint32_t source) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->rows.find(source);
    if (it != cache_->rows.end()) return it->second;
    std::vector<double> dist(n_, std::numeric_limits<double>::infinity());
    std::deque<std::uint32_t> queue{source};
    dist[source] = 0.0;
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        for (const auto& [y, w] : (*adjacency_)[x]) {
            if (std::isinf(dist[y])) {
                dist[y] = dist[x] + 1.0;
                queue.push_back(y);
            }
        }
    }
    return cache_->rows.emplace(source, std::move(dist)).first->second;
}

double FiniteMetric::distance(const FiniteVertex& x, const FiniteVertex& y) const {
    if (!table_.empty()) return table_[x.index * n_ + y.index];
    if (x == y) return 0.0;
    return hop_row(y.index)[x.index];
}

// ---------------------------------------------------------------------------

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw LoadError(LoadDiagnostic::schema, where + ": missing key '" + key + "'");
    return obj.at(key);
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_string()) throw LoadError(LoadDiagnostic::schema, where + "." + key + " must be a string");
    return v.get<std::string>();
}

double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number()) throw LoadError(LoadDiagnostic::schema, where + "." + key + " must be a number");
    return v.get<double>();
}

}  // namespace

FiniteGraphFamily parse_graph_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw LoadError(LoadDiagnostic::schema, "document must be an object");
    for (const auto& [key, value] : doc.items())
        if (key != "vertices" && key != "edges" && key != "metric")
            throw LoadError(LoadDiagnostic::schema, "unknown key '" + key + "'");
    const auto& vertices = require(doc, "vertices", "document");
    const auto& edges = require(doc, "edges", "document");
    if (!vertices.is_array() || !edges.is_array())
        throw LoadError(LoadDiagnostic::schema, "'vertices' and 'edges' must be arrays");

    FiniteGraph::Builder builder;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string where = "vertices[" + std::to_string(i) + "]";
        builder.add_vertex(require_string(vertices[i], "id", where), require_number(vertices[i], "mu", where));
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        builder.add_edge(require_string(edges[i], "a", where), require_string(edges[i], "b", where),
                         require_number(edges[i], "w", where));
    }
    FiniteGraph graph = builder.build();

    std::string kind = "hop";
    if (doc.contains("metric")) kind = require_string(doc.at("metric"), "kind", "metric");
    if (kind == "hop") {
        FiniteMetric metric = FiniteMetric::hop(graph);
        return {std::move(graph), std::move(metric)};
    }
    if (kind != "table") throw LoadError(LoadDiagnostic::schema, "metric.kind must be 'hop' or 'table'");
    const auto& distances = require(doc.at("metric"), "distances", "metric");
    if (!distances.is_array()) throw LoadError(LoadDiagnostic::schema, "metric.distances must be an array");
    std::map<std::pair<std::string, std::string>, double> table;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const std::string where = "metric.distances[" + std::to_string(i) + "]";
        const auto a = require_string(distances[i], "a", where);
        const auto b = require_string(distances[i], "b", where);
        const double d = require_number(distances[i], "d", where);
        auto [it, inserted] = table.emplace(a < b ? std::pair{a, b} : std::pair{b, a}, d);
        if (!inserted && it->second != d)
            throw LoadError(LoadDiagnostic::metric, "distance '" + a + "'-'" + b + "' listed twice with different values");
    }
    FiniteMetric metric = FiniteMetric::table(graph, table);
    return {std::move(graph), std::move(metric)};
}

FiniteGraphFamily load_graph_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError(LoadDiagnostic::schema, "cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(LoadDiagnostic::schema, path.string() + ": " + e.what());
    }
    return parse_graph_json(doc);
}

}  // namespace liouville
