#include "liouville/radial.hpp"
#include "liouville/supersolution.hpp"

#include "support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <map>

namespace liouville {
namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

const auto one = [](const LatticePoint&) { return 1.0; };

// Residual of the lattice family at x, summed neighbour by neighbour in wide
// precision straight from the formula.
Wide lattice_residual_oracle(const LatticeSupersolution& u, const LatticePoint& x) {
    const auto value = [&](std::int64_t s) { return Wide(u.delta) * pow(Wide(u.shift) + s, -Wide(u.gamma)); };
    const std::int64_t s = x.squared_norm();
    Wide sum = 0;
    for (int k = 0; k < u.dim; ++k) {
        const std::int64_t c = x[static_cast<std::size_t>(k)];
        sum += value(s + 2 * c + 1) - value(s);  // x + e_k
        sum += value(s - 2 * c + 1) - value(s);  // x - e_k
    }
    return sum / (2 * u.dim) + pow(value(s), Wide(u.sigma));
}

TEST(LatticeFamily, DerivedConstants) {
    const auto u = make_lattice_supersolution(3, 4.0, 0.1, 20.0);
    EXPECT_DOUBLE_EQ(u.gamma, 1.0 / 3.0);
    EXPECT_NEAR(u.lambda, 1.0 / 54.0, 1e-15);
    EXPECT_NEAR(u(LatticePoint{0, 0, 0}), 0.1 * std::pow(20.0, -1.0 / 3.0), 1e-16);
    EXPECT_NEAR(u(LatticePoint{0, 0, 0}), 0.03684, 5e-6);
    EXPECT_GT(u(LatticePoint{1000, 1000, 1000}), 0.0);
    // lambda > 0 exactly on the supercritical range
    for (int n = 3; n <= 6; ++n) {
        const double critical = lattice_critical_exponent(n);
        EXPECT_GT(lattice_family_member(n, critical * 1.01, 1, 1).lambda, 0.0);
        EXPECT_LT(lattice_family_member(n, critical * 0.99, 1, 1).lambda, 0.0);
    }
}

TEST(LatticeFamily, SubcriticalExponentsAreRejected) {
    EXPECT_THROW(make_lattice_supersolution(4, 2.0, 0.1, 1.0), SubcriticalError);
    EXPECT_THROW(make_lattice_supersolution(3, 2.5, 0.1, 1.0), SubcriticalError);
    EXPECT_THROW(make_lattice_supersolution(2, 50.0, 0.1, 1.0), SubcriticalError);
    EXPECT_THROW(tune_lattice_parameters(3, 2.5, 10.0), SubcriticalError);
    EXPECT_THROW(make_lattice_supersolution(3, 4.0, -1.0, 1.0), SpecError);
    try {
        make_lattice_supersolution(3, 2.5, 0.1, 1.0);
    } catch (const SubcriticalError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("subcritical", 0), 0u);
    }
}

TEST(ResidualScan, ZeroFunctionPasses) {
    const LatticeGraph g(3);
    const auto region = ball(g, EuclideanMetric{}, g.origin(), 5, 1.0);
    const auto scan = verify_supersolution(g, [](const LatticePoint&) { return 0.0; }, one, 2.0,
                                           std::span<const LatticePoint>(region.vertices), "B_5");
    EXPECT_TRUE(scan.pass);
    EXPECT_EQ(scan.max_residual, 0.0);
    for (double r : scan.residuals) EXPECT_EQ(r, 0.0);
}

TEST(ResidualScan, NegativeValuesAreADomainError) {
    const LatticeGraph g(2);
    const std::vector<LatticePoint> region{LatticePoint{0, 0}};
    const auto u = [](const LatticePoint& x) { return x[0] == 1 ? -1e-3 : 1.0; };
    EXPECT_THROW(verify_supersolution(g, u, [](const LatticePoint&) { return 1.0; }, 2.0,
                                      std::span<const LatticePoint>(region), "origin"),
                 DomainError);
}

TEST(ResidualScan, StencilLocality) {
    // u known on the region's one-hop closure only
    const LatticeGraph g(2);
    const auto region = ball(g, EuclideanMetric{}, g.origin(), 3, 0.0);
    const auto closure = ball(g, EuclideanMetric{}, g.origin(), 4, 1.0);
    std::map<LatticePoint, double> table;
    for (const auto& x : closure.vertices) table[x] = 1.0 / (5.0 + x.squared_norm());
    const TableFunction<LatticePoint> on_closure(table, TableFunction<LatticePoint>::Outside::undefined);
    const auto v = [](const LatticePoint&) { return 1.0; };
    EXPECT_NO_THROW(verify_supersolution(g, on_closure, v, 2.0, std::span<const LatticePoint>(region.vertices), "B_3"));

    std::map<LatticePoint, double> inner;
    for (const auto& x : region.vertices) inner[x] = 1.0;
    const TableFunction<LatticePoint> on_region(inner, TableFunction<LatticePoint>::Outside::undefined);
    EXPECT_THROW(verify_supersolution(g, on_region, v, 2.0, std::span<const LatticePoint>(region.vertices), "B_3"),
                 StencilIncompleteError);
}

TEST(ResidualScan, WorkerCountDoesNotChangeTheVerdict) {
    const LatticeGraph g(3);
    const auto region = ball(g, EuclideanMetric{}, g.origin(), 20, 1.0);
    const auto u = make_lattice_supersolution(3, 4.0, 0.25, 9.0);
    ScanOptions one_worker, four_workers;
    four_workers.workers = 4;
    const auto a = verify_supersolution(g, u, one, 4.0, std::span<const LatticePoint>(region.vertices), "B", one_worker);
    const auto b = verify_supersolution(g, u, one, 4.0, std::span<const LatticePoint>(region.vertices), "B", four_workers);
    EXPECT_EQ(a.max_residual, b.max_residual);
    EXPECT_EQ(a.argmax, b.argmax);
    EXPECT_EQ(a.residuals, b.residuals);
}

TEST(LatticeTuning, ThreeDimensionsSigmaFour) {
    const auto t = tune_lattice_parameters(3, 4.0, 50.0);
    EXPECT_TRUE(t.scan.pass);
    EXPECT_LE(t.scan.worst_excess, 0.0);
    EXPECT_FALSE(t.trace.empty());
    EXPECT_TRUE(t.trace.back().pass);
    // starting point of the recipe
    EXPECT_NEAR(std::pow(t.initial_delta, 3.0), 1.0 / 54.0, 1e-15);
    EXPECT_NEAR(t.initial_shift, 6.0 + 1.0 / 3.0 + 1.0, 1e-12);

    // independent wide-precision residuals on a sample of the ball
    const auto& u = t.solution;
    for (std::int32_t a = 0; a <= 50; a += 5)
        for (std::int32_t b = -a; b <= a; b += 7) {
            const LatticePoint x{a, b, (a + b) % 11};
            if (x.squared_norm() > 2500) continue;
            const Wide exact = lattice_residual_oracle(u, x);
            const double computed = laplacian(LatticeGraph(3), u, x) + std::pow(u(x), 4.0);
            EXPECT_NEAR(computed, exact.convert_to<double>(), 1e-15) << to_string(x);
            EXPECT_LE(exact, Wide(1e-12)) << to_string(x);
        }
}

TEST(LatticeTuning, OrbitRepresentativesCoverTheBall) {
    for (int n = 1; n <= 5; ++n) {
        for (int r : {0, 1, 3, 7}) {
            std::uint64_t covered = 0;
            for (const auto& x : lattice_orbit_representatives(n, r)) covered += lattice_orbit_size(x);
            EXPECT_EQ(covered, testing::box_count(n, r)) << "N=" << n << " r=" << r;
        }
    }
}

TEST(LatticeTuning, OrbitScanAgreesWithFullScan) {
    LatticeTuningOptions reduced;
    reduced.orbit_representatives = true;
    const auto full = tune_lattice_parameters(3, 4.0, 25.0);
    const auto orbit = tune_lattice_parameters(3, 4.0, 25.0, reduced);
    EXPECT_EQ(full.solution.delta, orbit.solution.delta);
    EXPECT_EQ(full.solution.shift, orbit.solution.shift);
    EXPECT_EQ(full.trace.size(), orbit.trace.size());
    EXPECT_NEAR(full.scan.max_residual, orbit.scan.max_residual, 1e-16);
}

TEST(LatticeTuning, FiveDimensionsSigmaTwo) {
    LatticeTuningOptions options;
    options.orbit_representatives = true;
    const auto t = tune_lattice_parameters(5, 2.0, 30.0, options);
    EXPECT_TRUE(t.scan.pass);
    // the pair also passes a full scan of a smaller ball
    const LatticeGraph g(5);
    const auto region = ball(g, EuclideanMetric{}, g.origin(), 8, 1.0);
    EXPECT_TRUE(verify_supersolution(g, t.solution, [](const LatticePoint&) { return 1.0; }, 2.0,
                                     std::span<const LatticePoint>(region.vertices), "B_8", {ToleranceRule{}, 1, false})
                    .pass);
}

// Doubling K or halving delta keeps a passing member passing.
TEST(LatticeTuning, PassingIsMonotoneInTheParameters) {
    const LatticeGraph g(3);
    const auto region = ball(g, EuclideanMetric{}, g.origin(), 20, 1.0);
    const std::span<const LatticePoint> vertices(region.vertices);
    const ScanOptions quiet{ToleranceRule{}, 1, false};
    int passing = 0;
    for (double delta : {0.3, 0.2, 0.1, 0.05})
        for (double shift : {4.0, 8.0, 16.0, 64.0}) {
            const auto u = make_lattice_supersolution(3, 4.0, delta, shift);
            if (!verify_supersolution(g, u, one, 4.0, vertices, "B_20", quiet).pass) continue;
            ++passing;
            EXPECT_TRUE(verify_supersolution(g, make_lattice_supersolution(3, 4.0, delta, 2 * shift), one, 4.0,
                                             vertices, "B_20", quiet)
                            .pass);
            EXPECT_TRUE(verify_supersolution(g, make_lattice_supersolution(3, 4.0, delta / 2, shift), one, 4.0,
                                             vertices, "B_20", quiet)
                            .pass);
        }
    EXPECT_GT(passing, 0);
}

TEST(FamilyGrid, SmallGridIsLabelledEvidence) {
    FamilyGridOptions options;
    options.delta_points = 3;
    options.shift_points = 3;
    const auto sub = scan_lattice_family_grid(3, 2.5, 8.0, options);
    EXPECT_EQ(sub.cells.size(), 9u);
    EXPECT_EQ(sub.interpretation.rfind("finite-region evidence, not proof", 0), 0u);
    EXPECT_EQ(sub.critical_exponent, 3.0);

    const auto super = scan_lattice_family_grid(3, 4.0, 8.0, options);
    EXPECT_GT(super.passing, 0u);
    EXPECT_FALSE(super.every_member_fails);

    // grid cells agree with the direct scan
    const LatticeGraph g(3);
    const auto region = ball(g, EuclideanMetric{}, g.origin(), 8.0, 1.0);
    for (const auto& cell : super.cells) {
        const auto u = lattice_family_member(3, 4.0, cell.delta, cell.shift);
        const auto scan = verify_supersolution(g, u, one, 4.0, std::span<const LatticePoint>(region.vertices), "B_8");
        EXPECT_EQ(scan.pass, cell.pass);
        EXPECT_NEAR(scan.max_residual, cell.max_residual, 1e-15);
    }
}

// ---------------------------------------------------------------------------
// Tree family

TEST(TreeFamily, ProfileValues) {
    const HomogeneousTreeSpec spec{3, 2.0, 0.5, 10, 40};
    const auto u = make_tree_supersolution(spec, 2.0, 0.5, 10, 0.05);
    EXPECT_NEAR(u.level_value(0), 5e-4, 1e-18);
    for (std::int64_t n = 0; n < 100; ++n) {
        const double ratio = u.level_value(n) / u.level_value(n + 1);
        EXPECT_NEAR(ratio, std::pow((n + 11.0) / (n + 10.0), 2.0), 1e-13);
        EXPECT_GT(ratio, 1.0);
    }
    TreePath x;
    x = x.child(2).child(1);
    EXPECT_EQ(u(x), u.level_value(2));
}

TEST(TreeFamily, BindingMismatch) {
    const HomogeneousTreeSpec spec{3, 2.0, 0.5, 10, 40};
    EXPECT_THROW(make_tree_supersolution(spec, 3.0, 0.5, 10, 0.05), BindingError);
    EXPECT_THROW(make_tree_supersolution(spec, 2.0, 0.25, 10, 0.05), BindingError);
    EXPECT_THROW(make_tree_supersolution(spec, 2.0, 0.5, 11, 0.05), BindingError);
    EXPECT_THROW(make_tree_supersolution(spec, 2.0, 0.5, 10, 0.0), SpecError);
}

TEST(TreeFamily, RootThresholdIsSharp) {
    for (double sigma : {1.5, 2.0, 3.0})
        for (std::int64_t n0 : {1, 2, 10, 1000}) {
            const double lambda = root_threshold(sigma, n0);
            const double a = 2.0 / (sigma - 1.0);
            const Wide k(n0);
            const Wide oracle = k * k * (pow(k + 1, Wide(a)) - pow(k, Wide(a))) / pow(k + 1, Wide(a));
            EXPECT_NEAR(lambda, oracle.convert_to<double>(), 1e-12 * lambda);
            // root residual u_1 - u_0 + u_0^sigma changes sign at the threshold
            const auto residual = [&](double scale) {
                const double delta = std::pow(lambda * scale, 1.0 / (sigma - 1.0));
                const double u0 = delta * std::pow(static_cast<double>(n0), -a);
                const double u1 = delta * std::pow(n0 + 1.0, -a);
                return u1 - u0 + std::pow(u0, sigma);
            };
            EXPECT_LE(residual(1.0 - 1e-6), 0.0);
            EXPECT_GT(residual(1.0 + 1e-6), 0.0);
        }
}

TEST(TreeFamily, LevelFeasibilityMatchesWideOracle) {
    for (double sigma : {1.5, 2.0, 4.0})
        for (double eps : {0.01, 0.5, 2.0})
            for (double k : {2.0, 3.0, 17.0, 1e3, 1e5}) {
                const double a = 2.0 / (sigma - 1.0), p = (sigma + 1.0) / (sigma - 1.0) + eps;
                const Wide K(k);
                const Wide r = pow((K - 1) / K, Wide(p));
                const Wide bracket = (1 - pow(K / (K + 1), Wide(a))) + r * (1 - pow(K / (K - 1), Wide(a)));
                const Wide oracle = K * K * bracket / (1 + r);
                const double got = level_feasibility(sigma, eps, k);
                // the O(1/k) terms cancel down to O(eps/k^2): about k/eps ulps are lost
                const double tol = 1e-15 * (1.0 + k / eps) * std::abs(oracle.convert_to<double>());
                EXPECT_NEAR(got, oracle.convert_to<double>(), tol)
                    << sigma << " " << eps << " " << k;
            }
    // tends to eps / (sigma - 1), and collapses with eps
    EXPECT_NEAR(level_feasibility(2.0, 0.5, 1e6), 0.5, 1e-4);
    EXPECT_NEAR(level_feasibility(3.0, 0.5, 1e6), 0.25, 1e-4);
    EXPECT_LT(std::abs(level_feasibility(2.0, 1e-6, 1e6)), 1e-5);
}

TEST(TreeTuning, DegreeThreeSigmaTwo) {
    const auto t = tune_tree_parameters(3, 2.0, 0.5);
    EXPECT_TRUE(t.scan.pass);
    EXPECT_EQ(t.scan.size, 10'001u);
    EXPECT_EQ(t.solution.offset, 2);  // regression
    EXPECT_NEAR(t.solution.delta, 0.2501, 1e-3);
    EXPECT_GE(t.lower_bracket, 0.5 * t.limit);
    EXPECT_LE(t.upper_bracket, 2.0 * t.limit);
    EXPECT_TRUE(std::isfinite(t.upper_constant / t.lower_constant));
    // delta^{sigma-1} = delta at sigma = 2
    EXPECT_LE(t.solution.delta, std::min(t.root_threshold, t.lower_bracket));
    // the level-wise scan, recomputed from the tree's own weights where they
    // are representable
    const auto tree = build_homogeneous_tree({3, 2.0, 0.5, t.solution.offset, 0});
    const std::int64_t depth = max_representable_depth(3) - 1;
    const auto u = [&](std::int64_t n) { return t.solution.level_value(n); };
    EXPECT_THROW(level_residuals(tree.graph, u, 2.0, depth + 1), ContractError);
    const auto direct = level_residuals(tree.graph, u, 2.0, depth);
    for (std::size_t n = 0; n < direct.size(); ++n) {
        const double tol = 1e-12 * std::abs(direct[n] - std::pow(t.solution.level_value(static_cast<std::int64_t>(n)), 2.0));
        EXPECT_LE(direct[n], tol) << n;
    }
}

TEST(TreeTuning, Failures) {
    EXPECT_THROW(tune_tree_parameters(1, 2.0, 0.5), SpecError);
    EXPECT_THROW(tune_tree_parameters(3, 1.0, 0.5), SpecError);
    TreeTuningOptions tight;
    tight.band_low = 0.999;
    tight.band_high = 1.001;
    tight.max_offset = 64;
    EXPECT_THROW(tune_tree_parameters(3, 2.0, 0.5, tight), TuningError);
}

TEST(TreeTuning, SpotChecksAgreeWithTheQuotient) {
    const auto t = tune_tree_parameters(3, 2.0, 0.5);
    const auto check = spot_check_tree_stencil(t.solution, 3, 100, 900, 7);
    EXPECT_EQ(check.samples, 100u);
    EXPECT_TRUE(check.agree);
    EXPECT_LE(check.worst_gap, 1e-12);
}

}  // namespace
}  // namespace liouville
