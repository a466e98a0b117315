#include "liouville/calculus.hpp"
#include "liouville/finite_graph.hpp"
#include "liouville/lattice.hpp"
#include "liouville/tree.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace liouville {
namespace {

double norm2(const LatticePoint& x) { return static_cast<double>(x.squared_norm()); }

TEST(Difference, ConstantAndCoordinates) {
    const auto seven = [](const LatticePoint&) { return 7.0; };
    EXPECT_EQ(difference(seven, LatticePoint{1, 2, 3}, LatticePoint{0, 0, 0}), 0.0);

    const EuclideanMetric d;
    const LatticePoint origin{0, 0, 0};
    const auto dist = [&](const LatticePoint& x) { return d.distance(x, origin); };
    EXPECT_EQ(difference(dist, origin, LatticePoint{1, 0, 0}), 1.0);

    const auto first = [](const LatticePoint& x) { return static_cast<double>(x[0]); };
    EXPECT_EQ(difference(first, LatticePoint{1, 0, 0}, origin), -1.0);
}

TEST(Laplacian, LatticeConstantsAreHarmonic) {
    for (int n = 1; n <= 4; ++n) {
        const LatticeGraph g(n);
        LatticePoint x(n);
        x[0] = 3;
        EXPECT_EQ(laplacian(g, [](const LatticePoint&) { return 2.5; }, x), 0.0);
    }
}

TEST(Laplacian, SquaredNormHasUnitLaplacian) {
    const LatticeGraph g(3);
    EXPECT_EQ(laplacian(g, norm2, LatticePoint{4, -1, 2}), 1.0);
    EXPECT_EQ(laplacian(g, norm2, LatticePoint{0, 0, 0}), 1.0);
}

TEST(Laplacian, LatticeSupersolutionAtOrigin) {
    const double delta = 0.1, K = 20.0;
    const LatticeGraph g(3);
    const auto u = [&](const LatticePoint& x) { return delta * std::pow(K + norm2(x), -1.0 / 3.0); };
    // six neighbours, each at |y|^2 = 1
    const double oracle = delta * (std::pow(K + 1.0, -1.0 / 3.0) - std::pow(K, -1.0 / 3.0));
    EXPECT_NEAR(laplacian(g, u, LatticePoint{0, 0, 0}), oracle, 1e-17);
    EXPECT_NEAR(oracle, -5.943e-4, 5e-7);
}

TEST(Laplacian, MissingNeighbourNamesTheVertex) {
    const auto g = FiniteGraph::Builder().add_vertex("a", 1).add_vertex("b", 1).add_edge("a", "b", 1).build();
    const TableFunction<FiniteVertex> f({{*g.find("a"), 1.0}}, TableFunction<FiniteVertex>::Outside::undefined);
    try {
        laplacian(g, f, *g.find("a"));
        FAIL() << "expected a stencil error";
    } catch (const StencilIncompleteError& e) {
        EXPECT_EQ(e.vertex(), "b");
    }
}

TEST(GradientSquared, Examples) {
    const LatticeGraph g(3);
    const auto first = [](const LatticePoint& x) { return static_cast<double>(x[0]); };
    EXPECT_DOUBLE_EQ(gradient_squared(g, first, LatticePoint{5, -2, 7}), 1.0 / 3.0);
    EXPECT_EQ(gradient_squared(g, norm2, LatticePoint{0, 0, 0}), 1.0);
    EXPECT_EQ(gradient_squared(g, [](const LatticePoint&) { return -4.0; }, LatticePoint{1, 1, 1}), 0.0);
}

TEST(ProductRule, Identities) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(-10, 10);
    const LatticePoint x{0, 0}, y{1, 0};
    for (int k = 0; k < 1000; ++k) {
        const double fx = value(rng), fy = value(rng), hx = value(rng), hy = value(rng);
        const auto f = [&](const LatticePoint& p) { return p == x ? fx : fy; };
        const auto h = [&](const LatticePoint& p) { return p == x ? hx : hy; };
        EXPECT_LT(check_product_rule(f, h, x, y), 1e-12);
        EXPECT_EQ(check_product_rule([](const LatticePoint&) { return 1.0; }, h, x, y), 0.0);
    }
    const auto f = [](const LatticePoint& p) { return p[0] == 0 ? 3.0 : 5.0; };
    EXPECT_EQ(check_product_rule(f, f, x, y), 0.0);
}

TEST(IntegrationByParts, NeedsAFinitelySupportedFunction) {
    const LatticeGraph g(2);
    const auto one = constant_function<LatticePoint>(1.0);
    const std::vector<LatticePoint> region{LatticePoint{0, 0}};
    EXPECT_THROW(check_integration_by_parts(g, one, one, std::span<const LatticePoint>(region)), ContractError);
}

TEST(IntegrationByParts, ZeroFunction) {
    const LatticeGraph g(3);
    const VertexFunction<LatticePoint> zero{[](const LatticePoint&) { return 0.0; }, std::vector<LatticePoint>{}};
    const VertexFunction<LatticePoint> sq{norm2, std::nullopt};
    const std::vector<LatticePoint> region{LatticePoint{0, 0, 0}};
    const auto r = check_integration_by_parts(g, zero, sq, std::span<const LatticePoint>(region));
    EXPECT_EQ(r.laplacian_f_times_g, 0.0);
    EXPECT_EQ(r.gradient_pairing, 0.0);
    EXPECT_EQ(r.f_times_laplacian_g, 0.0);
    EXPECT_EQ(r.max_gap(), 0.0);
}

TEST(IntegrationByParts, OriginIndicatorOnLattice) {
    const LatticeGraph g(3);
    const LatticePoint origin{0, 0, 0};
    const VertexFunction<LatticePoint> f{[&](const LatticePoint& x) { return x == origin ? 1.0 : 0.0; },
                                         std::vector<LatticePoint>{origin}};
    const VertexFunction<LatticePoint> sq{norm2, std::nullopt};
    std::vector<LatticePoint> closure{origin};
    g.for_each_neighbor(origin, [&](const LatticePoint& y, double) { closure.push_back(y); });
    const auto r = check_integration_by_parts(g, f, sq, std::span<const LatticePoint>(closure));
    // sum f (Delta |x|^2) mu = mu(0) = 6
    EXPECT_NEAR(r.f_times_laplacian_g, 6.0, 1e-12);
    EXPECT_LT(r.max_gap(), 1e-12);
}

// Sum over every vertex of a finite graph, written out independently of the
// library: the double sum -1/2 sum_{x,y} omega (f(y)-f(x)) (h(y)-h(x)).
double pairing_oracle(const FiniteGraph& g, const std::vector<double>& f, const std::vector<double>& h) {
    double s = 0.0;
    for (std::uint32_t i = 0; i < g.size(); ++i)
        for (std::uint32_t j = 0; j < g.size(); ++j)
            s += g.weight(g.vertex(i), g.vertex(j)) * (f[j] - f[i]) * (h[j] - h[i]);
    return -0.5 * s;
}

TEST(IntegrationByParts, RandomFiniteInstances) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> value(-3, 3);
    for (int instance = 0; instance < 200; ++instance) {
        const std::size_t n = 4 + instance % 20;
        const auto g = testing::random_connected_graph(rng, n, n, instance % 2 == 0);
        std::vector<double> fv(n), hv(n);
        for (auto& x : fv) x = value(rng);
        for (auto& x : hv) x = value(rng);
        const VertexFunction<FiniteVertex> f{[&](const FiniteVertex& x) { return fv[x.index]; }, g.vertices()};
        const VertexFunction<FiniteVertex> h{[&](const FiniteVertex& x) { return hv[x.index]; }, std::nullopt};
        const auto all = g.vertices();
        const auto r = check_integration_by_parts(g, f, h, std::span<const FiniteVertex>(all));
        EXPECT_LE(r.max_relative_gap(), 1e-10) << "instance " << instance;
        EXPECT_NEAR(r.gradient_pairing, pairing_oracle(g, fv, hv), 1e-10 * std::max(1.0, r.scale));
    }
}

TEST(Invariants, LinearityOnRandomGraphs) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> value(-2, 2);
    for (int instance = 0; instance < 50; ++instance) {
        const auto g = testing::random_connected_graph(rng, 15, 20, false);
        std::vector<double> fv(15), hv(15);
        for (auto& x : fv) x = value(rng);
        for (auto& x : hv) x = value(rng);
        const double a = value(rng), b = value(rng);
        const auto f = [&](const FiniteVertex& x) { return fv[x.index]; };
        const auto h = [&](const FiniteVertex& x) { return hv[x.index]; };
        const auto combo = [&](const FiniteVertex& x) { return a * fv[x.index] + b * hv[x.index]; };
        for (const auto& x : g.vertices()) {
            const double lhs = laplacian(g, combo, x);
            const double rhs = a * laplacian(g, f, x) + b * laplacian(g, h, x);
            EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(lhs)));
            EXPECT_GE(gradient_squared(g, f, x), 0.0);
            EXPECT_LE(std::abs(laplacian(g, [](const FiniteVertex&) { return 1.25; }, x)), 1e-14);
        }
    }
}

TEST(Invariants, GradientVanishesOnlyOnLocallyConstantFunctions) {
    const LatticeGraph g(2);
    const auto bump = [](const LatticePoint& x) { return x == LatticePoint{3, 3} ? 1.0 : 0.0; };
    EXPECT_EQ(gradient_squared(g, bump, LatticePoint{0, 0}), 0.0);
    EXPECT_GT(gradient_squared(g, bump, LatticePoint{2, 3}), 0.0);
    EXPECT_GT(gradient_squared(g, bump, LatticePoint{3, 3}), 0.0);
}

TEST(Invariants, SymmetryAndNoLoopsOnSampledEdges) {
    std::mt19937_64 rng(5);
    const auto g = testing::random_connected_graph(rng, 30, 40, true);
    for (const auto& x : g.vertices()) {
        g.for_each_neighbor(x, [&](const FiniteVertex& y, double w) {
            EXPECT_NE(x, y);
            EXPECT_EQ(g.weight(y, x), w);
        });
    }
    const LatticeGraph lattice(3);
    const LatticePoint p{2, -5, 1};
    lattice.for_each_neighbor(p, [&](const LatticePoint& y, double w) {
        EXPECT_NE(y, p);
        bool back = false;
        lattice.for_each_neighbor(y, [&](const LatticePoint& z, double w2) { back |= (z == p && w2 == w); });
        EXPECT_TRUE(back);
    });
}

TEST(Invariants, NeighbourOrderIsCanonical) {
    const LatticeGraph g(3);
    const auto list = neighbors(g, LatticePoint{1, 2, 3});
    for (std::size_t i = 1; i < list.size(); ++i) EXPECT_LT(list[i - 1].vertex, list[i].vertex);
    std::mt19937_64 rng(3);
    const auto fg = testing::random_connected_graph(rng, 20, 30, true);
    for (const auto& x : fg.vertices()) {
        const auto row = neighbors(fg, x);
        for (std::size_t i = 1; i < row.size(); ++i) EXPECT_LT(row[i - 1].vertex, row[i].vertex);
    }
}

TEST(RowSumBound, Examples) {
    const LatticeGraph lattice(4);
    const std::vector<LatticePoint> region{LatticePoint{0, 0, 0, 0}, LatticePoint{1, 2, 3, 4}};
    EXPECT_EQ(check_row_sum_bound(lattice, std::span<const LatticePoint>(region)), 1.0);

    const FactorialTree tree(12);
    std::vector<TreePath> levels{TreePath{}};
    for (int n = 1; n <= 10; ++n) levels.push_back(levels.back().child(0));
    EXPECT_DOUBLE_EQ(check_row_sum_bound(tree, std::span<const TreePath>(levels)), 1.0);

    // mu doubled after load
    const auto doubled = FiniteGraph::Builder()
                             .add_vertex("a", 4)
                             .add_vertex("b", 2)
                             .add_vertex("c", 2)
                             .add_edge("a", "b", 1)
                             .add_edge("a", "c", 1)
                             .build();
    const auto all = doubled.vertices();
    EXPECT_EQ(check_row_sum_bound(doubled, std::span<const FiniteVertex>(all)), 0.5);
    EXPECT_THROW(check_row_sum_bound(doubled, std::span<const FiniteVertex>{}), ContractError);
}

// ---------------------------------------------------------------------------
// Loader

LoadDiagnostic diagnostic_of(const std::string& text) {
    try {
        parse_graph_json(nlohmann::json::parse(text));
    } catch (const LoadError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "document was accepted: " << text;
    return LoadDiagnostic::schema;
}

TEST(Loader, AcceptsMinimalGraphAndSymmetrises) {
    const auto family = parse_graph_json(nlohmann::json::parse(
        R"({"vertices":[{"id":"a","mu":1},{"id":"b","mu":1}],"edges":[{"a":"a","b":"b","w":1}]})"));
    const auto a = *family.graph.find("a");
    const auto b = *family.graph.find("b");
    EXPECT_EQ(family.graph.weight(a, b), 1.0);
    EXPECT_EQ(family.graph.weight(b, a), 1.0);
    EXPECT_EQ(family.metric.distance(a, b), 1.0);
    EXPECT_STREQ(family.metric.kind(), "hop-distance");
}

TEST(Loader, DistinctDiagnostics) {
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":1}],"edges":[{"a":"a","b":"a","w":1}]})"),
              LoadDiagnostic::self_loop);
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":0}],"edges":[]})"), LoadDiagnostic::non_positive_measure);
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":1},{"id":"b","mu":1}],"edges":[{"a":"a","b":"b","w":-1}]})"),
              LoadDiagnostic::non_positive_weight);
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":1},{"id":"b","mu":1}],
                                "edges":[{"a":"a","b":"b","w":1},{"a":"b","b":"a","w":2}]})"),
              LoadDiagnostic::asymmetric_edge);
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":1},{"id":"a","mu":2}],"edges":[]})"),
              LoadDiagnostic::duplicate_vertex);
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":1}],"edges":[{"a":"a","b":"z","w":1}]})"),
              LoadDiagnostic::unknown_vertex);
    EXPECT_EQ(diagnostic_of(R"({"vertices":[],"edges":[],"extra":1})"), LoadDiagnostic::schema);
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a"}],"edges":[]})"), LoadDiagnostic::schema);
}

TEST(Loader, ExplicitTableMetric) {
    const auto family = parse_graph_json(nlohmann::json::parse(R"({
        "vertices":[{"id":"a","mu":1},{"id":"b","mu":1},{"id":"c","mu":1}],
        "edges":[{"a":"a","b":"b","w":1},{"a":"b","b":"c","w":1}],
        "metric":{"kind":"table","distances":[{"a":"a","b":"b","d":2.5},{"a":"b","b":"c","d":0},{"a":"a","b":"c","d":2.5}]}})"));
    const auto a = *family.graph.find("a"), b = *family.graph.find("b"), c = *family.graph.find("c");
    EXPECT_EQ(family.metric.distance(a, b), 2.5);
    EXPECT_EQ(family.metric.distance(c, b), 0.0);
    EXPECT_STREQ(family.metric.kind(), "explicit-table");

    // missing pair
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":1},{"id":"b","mu":1},{"id":"c","mu":1}],"edges":[],
        "metric":{"kind":"table","distances":[{"a":"a","b":"b","d":1}]}})"),
              LoadDiagnostic::metric);
    // triangle inequality
    EXPECT_EQ(diagnostic_of(R"({"vertices":[{"id":"a","mu":1},{"id":"b","mu":1},{"id":"c","mu":1}],"edges":[],
        "metric":{"kind":"table","distances":[{"a":"a","b":"b","d":1},{"a":"b","b":"c","d":1},{"a":"a","b":"c","d":3}]}})"),
              LoadDiagnostic::metric);
}

TEST(Loader, HopMetricOnConnectedGraphHasUnitJumps) {
    std::mt19937_64 rng(11);
    const auto g = testing::random_connected_graph(rng, 25, 10, true);
    const auto d = FiniteMetric::hop(g);
    for (const auto& x : g.vertices())
        g.for_each_neighbor(x, [&](const FiniteVertex& y, double) { EXPECT_EQ(d.distance(x, y), 1.0); });
}

}  // namespace
}  // namespace liouville
