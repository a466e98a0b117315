#ifndef LIOUVILLE_SUPERSOLUTION_HPP
#define LIOUVILLE_SUPERSOLUTION_HPP

// Explicit positive supersolutions of Delta u + v u^sigma <= 0 on the lattice
// and on the weighted homogeneous tree, their parameter tuning, and the
// pointwise residual scan that certifies them on a finite region.

#include "liouville/calculus.hpp"
#include "liouville/error.hpp"
#include "liouville/graph.hpp"
#include "liouville/lattice.hpp"
#include "liouville/metric_volume.hpp"
#include "liouville/parallel.hpp"
#include "liouville/tree.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace liouville {

// ---------------------------------------------------------------------------
// Residual scan

/// Per-vertex tolerance rel * max(floor, |Delta u(x)|). floor = 0 makes the
/// check purely scale-relative, which the tree needs: its residuals decay
/// like n^{-2 sigma/(sigma-1)}.
struct ToleranceRule {
    double relative = 1e-12;
    double floor = 1.0;

    double at(double laplacian_value) const noexcept {
        return relative * std::max(floor, std::abs(laplacian_value));
    }
};

template <class V>
struct ResidualScan {
    std::string region;
    std::size_t size = 0;
    double sigma = 0.0;
    ToleranceRule tolerance;
    std::vector<double> residuals;  // r(x) = Delta u(x) + v(x) u(x)^sigma, region order
    double max_residual = -INFINITY;
    std::optional<V> argmax;
    double worst_excess = -INFINITY;  // max of r(x) - tol(x); pass iff <= 0
    std::optional<V> worst_vertex;
    bool pass = true;
};

struct ScanOptions {
    ToleranceRule tolerance;
    unsigned workers = 1;
    bool keep_residuals = true;
};

template <WeightedGraph G, VertexCallable<vertex_t<G>> U, VertexCallable<vertex_t<G>> P>
ResidualScan<vertex_t<G>> verify_supersolution(const G& g, const U& u, const P& v, double sigma,
                                               std::span<const vertex_t<G>> region, std::string label,
                                               const ScanOptions& options = {}) {
    using V = vertex_t<G>;
    if (!(sigma > 1.0)) throw ContractError("residual scan needs sigma > 1");

    const auto checked = [&](const V& y) {
        const double value = u(y);
        if (!(value >= 0.0))
            throw DomainError("u must be nonnegative: u(" + to_string(y) + ") = " + std::to_string(value));
        return value;
    };

    ResidualScan<V> scan;
    scan.region = std::move(label);
    scan.size = region.size();
    scan.sigma = sigma;
    scan.tolerance = options.tolerance;
    if (options.keep_residuals) scan.residuals.assign(region.size(), 0.0);

    struct ChunkResult {
        double max_residual = -INFINITY;
        std::size_t argmax = 0;
        double worst_excess = -INFINITY;
        std::size_t worst = 0;
    };
    std::vector<ChunkResult> chunks(chunk_count(region.size()));
    parallel_chunks(region.size(), options.workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
        ChunkResult best;
        for (std::size_t i = begin; i < end; ++i) {
            const V& x = region[i];
            const double vx = v(x);
            if (!(vx > 0.0))
                throw DomainError("potential must be positive: v(" + to_string(x) + ") = " + std::to_string(vx));
            const double lap = laplacian(g, checked, x);
            const double r = lap + vx * std::pow(checked(x), sigma);
            const double excess = r - options.tolerance.at(lap);
            if (options.keep_residuals) scan.residuals[i] = r;
            if (r > best.max_residual) best.max_residual = r, best.argmax = i;
            if (excess > best.worst_excess) best.worst_excess = excess, best.worst = i;
        }
        chunks[c] = best;
    });
    for (const auto& c : chunks) {
        if (c.max_residual > scan.max_residual) scan.max_residual = c.max_residual, scan.argmax = region[c.argmax];
        if (c.worst_excess > scan.worst_excess) scan.worst_excess = c.worst_excess, scan.worst_vertex = region[c.worst];
    }
    scan.pass = region.empty() || scan.worst_excess <= 0.0;
    return scan;
}

// ---------------------------------------------------------------------------
// Lattice family u = delta / (K + |x|^2)^gamma

struct LatticeSupersolution {
    int dim = 3;
    double sigma = 0.0;
    double delta = 0.0;
    double shift = 0.0;   // K
    double gamma = 0.0;   // 1 / (sigma - 1)
    double lambda = 0.0;  // (gamma - 2 gamma (gamma + 1) / N) / 2

    double operator()(const LatticePoint& x) const {
        return delta * std::pow(shift + static_cast<double>(x.squared_norm()), -gamma);
    }
};

/// N / (N - 2); infinite for N <= 2.
double lattice_critical_exponent(int dim);

/// Throws SubcriticalError when sigma <= N/(N-2) (including N <= 2).
LatticeSupersolution make_lattice_supersolution(int dim, double sigma, double delta, double shift);

/// The same formula without the exponent constraint: used to probe the
/// subcritical range, where every member is expected to fail the scan.
LatticeSupersolution lattice_family_member(int dim, double sigma, double delta, double shift);

struct LatticeTuningStep {
    double delta = 0.0;
    double shift = 0.0;
    double max_residual = 0.0;
    double worst_excess = 0.0;
    std::string worst_vertex;
    bool pass = false;
};

struct LatticeTuningOptions {
    double proof_constant = 1.0;  // C0 in K >= 2 C0 / gamma + gamma + 1
    double max_shift = 1e8;
    int max_delta_halvings = 4;
    double margin = 1.0;
    std::size_t budget = kDefaultVertexBudget;
    ScanOptions scan{ToleranceRule{}, 1, false};
    // Scan one point per orbit of the coordinate symmetries instead of the
    // whole ball. Every member depends on |x|^2 only, so the residual is
    // constant on orbits and the reduced scan decides the same verdict.
    bool orbit_representatives = false;
};

struct LatticeTuning {
    LatticeSupersolution solution;
    double initial_delta = 0.0;
    double initial_shift = 0.0;
    double check_radius = 0.0;
    std::size_t region_size = 0;
    ResidualScan<LatticePoint> scan;
    std::vector<LatticeTuningStep> trace;
};

/// Starts from delta^{sigma-1} = min{lambda, gamma/2} and K = 2 C0/gamma +
/// gamma + 1, doubles K until the scan over B_R passes, and halves delta when
/// K runs past its cap.
LatticeTuning tune_lattice_parameters(int dim, double sigma, double check_radius,
                                      const LatticeTuningOptions& options = {});

struct FamilyGridOptions {
    int delta_points = 20;
    double delta_low = 1e-4;
    double delta_high = 1.0;
    int shift_points = 20;
    double shift_low = 1.0;
    double shift_high = 1e6;
    double margin = 1.0;
    std::size_t budget = kDefaultVertexBudget;
    ScanOptions scan{ToleranceRule{}, 1, false};
};

struct FamilyGridCell {
    double delta = 0.0;
    double shift = 0.0;
    double max_residual = 0.0;
    double worst_excess = 0.0;
    std::string argmax;
    bool pass = false;
};

struct FamilyGridScan {
    int dim = 3;
    double sigma = 0.0;
    double critical_exponent = 0.0;
    double radius = 0.0;
    double margin = 0.0;
    std::size_t region_size = 0;
    std::vector<FamilyGridCell> cells;  // delta-major
    std::size_t passing = 0;
    bool every_member_fails = false;
    std::string interpretation;  // always labelled as finite-region evidence
};

/// Scans u = delta / (K + |x|^2)^{1/(sigma-1)} over a logarithmic (delta, K)
/// grid on B_R, with no exponent restriction. Below the critical exponent a
/// failing member everywhere is what the nonexistence theorem predicts; the
/// report says so only as evidence.
FamilyGridScan scan_lattice_family_grid(int dim, double sigma, double radius, const FamilyGridOptions& options = {});

// ---------------------------------------------------------------------------
// Tree family u_n = delta / (n + n0)^{2/(sigma-1)}

struct TreeSupersolution {
    double sigma = 0.0;
    double epsilon = 0.0;
    std::int64_t offset = 1;  // n0
    double delta = 0.0;
    double decay = 0.0;  // 2 / (sigma - 1)

    double level_value(std::int64_t n) const {
        return delta * std::pow(static_cast<double>(n + offset), -decay);
    }
    double operator()(const TreePath& x) const { return level_value(static_cast<std::int64_t>(x.depth())); }
    double operator()(const Level& x) const { return level_value(x.n); }
};

/// Binds to a tree spec; throws BindingError when sigma, epsilon or n0 differ.
TreeSupersolution make_tree_supersolution(const HomogeneousTreeSpec& tree, double sigma, double epsilon,
                                          std::int64_t offset, double delta);

/// Largest delta^{sigma-1} for which the root inequality holds:
/// n0^2 [(1+n0)^a - n0^a] / (1+n0)^a, a = 2/(sigma-1).
double root_threshold(double sigma, std::int64_t offset);

/// Largest delta^{sigma-1} for which the inequality holds at a vertex of
/// level n >= 1, as a function of k = n + n0. Tends to epsilon/(sigma-1).
double level_feasibility(double sigma, double epsilon, double k);

struct TreeTuningStep {
    std::int64_t offset = 0;
    double lower = 0.0;  // min feasibility over the checked levels
    double upper = 0.0;  // max feasibility over the checked levels
    bool accepted = false;
};

struct TreeTuningOptions {
    std::int64_t check_depth = 10'000;
    std::int64_t max_offset = 100'000;
    double band_low = 0.5;   // accept when every level lies in
    double band_high = 2.0;  // [band_low tau, band_high tau], tau = eps/(sigma-1)
    ScanOptions scan{ToleranceRule{1e-12, 0.0}, 1, false};
};

struct TreeTuning {
    int degree = 3;
    TreeSupersolution solution;
    double limit = 0.0;           // tau = epsilon / (sigma - 1)
    double lower_bracket = 0.0;   // min feasibility, measured
    double upper_bracket = 0.0;   // max feasibility, measured
    double lower_constant = 0.0;  // C1 = lower / epsilon
    double upper_constant = 0.0;  // C2 = upper / epsilon
    double root_threshold = 0.0;
    ResidualScan<Level> scan;     // level-wise, through the radial quotient
    std::vector<TreeTuningStep> trace;
};

TreeTuning tune_tree_parameters(int degree, double sigma, double epsilon, const TreeTuningOptions& options = {});

struct StencilSpotCheck {
    std::size_t samples = 0;
    std::int64_t max_depth = 0;
    double worst_gap = 0.0;  // |full-stencil residual - level residual| / scale
    std::string worst_vertex;
    double tolerance = 0.0;
    bool agree = true;
};

/// Evaluates the residual at `samples` random vertices of the explicit tree
/// (depths uniform in [0, max_depth], child indices uniform) from the full
/// stencil and compares it with the radial-quotient residual of the same
/// level. The gap is relative to |Delta u| + v u^sigma at that vertex.
StencilSpotCheck spot_check_tree_stencil(const TreeSupersolution& u, int degree, std::size_t samples,
                                         std::int64_t max_depth, std::uint64_t seed, double tolerance = 1e-12);

}  // namespace liouville

#endif
