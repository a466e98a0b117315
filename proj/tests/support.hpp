#ifndef LIOUVILLE_TESTS_SUPPORT_HPP
#define LIOUVILLE_TESTS_SUPPORT_HPP

#include "liouville/finite_graph.hpp"
#include "liouville/lattice.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace liouville::testing {

inline std::string vertex_name(std::size_t i) {
    std::string s = std::to_string(i);
    return "v" + std::string(4 - std::min<std::size_t>(4, s.size()), '0') + s;
}

/// Connected random graph: a random spanning tree plus `extra` random edges,
/// weights in [0.1, 2]. With `row_sum_measure` mu is the weight sum,
/// otherwise an independent positive number.
inline FiniteGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra,
                                          bool row_sum_measure) {
    std::uniform_real_distribution<double> weight(0.1, 2.0);
    std::vector<double> sums(n, 0.0);
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    const auto add = [&](std::size_t a, std::size_t b) {
        if (a == b || used[a][b]) return;
        used[a][b] = used[b][a] = true;
        const double w = weight(rng);
        edges.emplace_back(a, b, w);
        sums[a] += w;
        sums[b] += w;
    };
    for (std::size_t i = 1; i < n; ++i) add(i, std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < extra; ++k) add(pick(rng), pick(rng));

    FiniteGraph::Builder b;
    std::uniform_real_distribution<double> measure(0.2, 3.0);
    for (std::size_t i = 0; i < n; ++i) b.add_vertex(vertex_name(i), row_sum_measure ? sums[i] : measure(rng));
    for (const auto& [a, c, w] : edges) b.add_edge(vertex_name(a), vertex_name(c), w);
    return b.build();
}

/// Every integer point of the box [-r, r]^N with |x - x0|^2 <= r^2.
inline std::size_t box_count(int dim, std::int64_t r) {
    std::size_t count = 0;
    std::vector<std::int64_t> x(static_cast<std::size_t>(dim), -r);
    for (;;) {
        std::int64_t s = 0;
        for (auto c : x) s += c * c;
        if (s <= r * r) ++count;
        std::size_t k = 0;
        while (k < x.size() && x[k] == r) x[k++] = -r;
        if (k == x.size()) return count;
        ++x[k];
    }
}

}  // namespace liouville::testing

#endif
