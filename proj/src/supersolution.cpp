#include "liouville/supersolution.hpp"

#include "liouville/format.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace liouville {

double lattice_critical_exponent(int dim) {
    return dim <= 2 ? std::numeric_limits<double>::infinity() : static_cast<double>(dim) / (dim - 2);
}

LatticeSupersolution lattice_family_member(int dim, double sigma, double delta, double shift) {
    if (dim < 1 || dim > kMaxLatticeDim) throw SpecError("lattice dimension out of range");
    if (!(sigma > 1.0)) throw SpecError("sigma must exceed 1");
    if (!(delta > 0.0) || !(shift > 0.0)) throw SpecError("delta and K must be positive");
    LatticeSupersolution u;
    u.dim = dim;
    u.sigma = sigma;
    u.delta = delta;
    u.shift = shift;
    u.gamma = 1.0 / (sigma - 1.0);
    u.lambda = (u.gamma - 2.0 * u.gamma * (u.gamma + 1.0) / dim) / 2.0;
    return u;
}

LatticeSupersolution make_lattice_supersolution(int dim, double sigma, double delta, double shift) {
    const double critical = lattice_critical_exponent(dim);
    if (dim <= 2)
        throw SubcriticalError("subcritical: Z^" + std::to_string(dim) +
                               " has no supercritical range; the nonexistence theorem forbids a positive "
                               "supersolution for every sigma > 1");
    if (!(sigma > critical))
        throw SubcriticalError("subcritical: sigma = " + format_number(sigma) + " <= N/(N-2) = " +
                               format_number(critical) +
                               "; the nonexistence theorem forbids a positive supersolution");
    return lattice_family_member(dim, sigma, delta, shift);
}

LatticeTuning tune_lattice_parameters(int dim, double sigma, double check_radius, const LatticeTuningOptions& options) {
    // Validates the exponent before any enumeration.
    const auto probe = make_lattice_supersolution(dim, sigma, 1.0, 1.0);
    const double gamma = probe.gamma;
    const double lambda = probe.lambda;

    LatticeTuning result;
    result.initial_delta = std::pow(std::min(lambda, gamma / 2.0), 1.0 / (sigma - 1.0));
    result.initial_shift = 2.0 * options.proof_constant / gamma + gamma + 1.0;
    result.check_radius = check_radius;

    const auto family = build_lattice({dim});
    std::vector<LatticePoint> points;
    std::string label = "B_" + format_number(check_radius) + "(0) in Z^" + std::to_string(dim);
    if (options.orbit_representatives) {
        points = lattice_orbit_representatives(dim, check_radius);
        if (points.size() > options.budget) throw BudgetExceededError(points.size(), options.budget);
        label += ", one point per symmetry orbit, " + std::to_string(points.size()) + " points";
    } else {
        points = ball(family.graph, family.metric, family.graph.origin(), check_radius, options.margin, options.budget)
                     .vertices;
        label += ", margin " + format_number(options.margin) + ", " + std::to_string(points.size()) + " vertices";
    }
    result.region_size = points.size();
    const std::span<const LatticePoint> region(points);
    const auto one = [](const LatticePoint&) { return 1.0; };

    double delta = result.initial_delta;
    for (int halving = 0; halving <= options.max_delta_halvings; ++halving, delta /= 2.0) {
        for (double shift = result.initial_shift; shift <= options.max_shift; shift *= 2.0) {
            const auto u = make_lattice_supersolution(dim, sigma, delta, shift);
            auto scan = verify_supersolution(family.graph, u, one, sigma, region, label, options.scan);
            result.trace.push_back({delta, shift, scan.max_residual, scan.worst_excess,
                                    scan.worst_vertex ? to_string(*scan.worst_vertex) : "", scan.pass});
            if (scan.pass) {
                result.solution = u;
                result.scan = std::move(scan);
                return result;
            }
        }
    }
    const auto& last = result.trace.back();
    throw TuningError("lattice tuning exhausted: no (delta, K) with K <= " + format_number(options.max_shift) +
                          " passes on " + label + "; worst residual " + format_number(last.max_residual) + " at " +
                          last.worst_vertex,
                      last.worst_vertex, last.max_residual);
}

namespace {

std::vector<double> log_grid(double low, double high, int points) {
    if (points < 1 || !(low > 0.0) || !(high >= low)) throw SpecError("grid needs points >= 1 and 0 < low <= high");
    std::vector<double> out;
    for (int i = 0; i < points; ++i)
        out.push_back(points == 1 ? low : std::exp(std::log(low) + (std::log(high) - std::log(low)) * i / (points - 1)));
    return out;
}

}  // namespace

FamilyGridScan scan_lattice_family_grid(int dim, double sigma, double radius, const FamilyGridOptions& options) {
    const auto deltas = log_grid(options.delta_low, options.delta_high, options.delta_points);
    const auto shifts = log_grid(options.shift_low, options.shift_high, options.shift_points);

    FamilyGridScan result;
    result.dim = dim;
    result.sigma = sigma;
    result.critical_exponent = lattice_critical_exponent(dim);
    result.radius = radius;
    result.margin = options.margin;

    const auto family = build_lattice({dim});
    const auto region = ball(family.graph, family.metric, family.graph.origin(), radius, options.margin,
                             options.budget);
    result.region_size = region.size();
    const std::string label = "B_" + format_number(radius) + "(0) in Z^" + std::to_string(dim) + ", margin " +
                              format_number(options.margin);

    // Members depend on |x|^2 only; stencils of the region reach |x|^2 <= (R + margin + 1)^2.
    std::int64_t top = 0;
    for (const auto& x : region.vertices) top = std::max(top, x.squared_norm());
    top += 2 * static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(top)))) + 1;
    std::vector<double> profile(static_cast<std::size_t>(top) + 1);
    const auto one = [](const LatticePoint&) { return 1.0; };

    for (double delta : deltas) {
        for (double shift : shifts) {
            const auto member = lattice_family_member(dim, sigma, delta, shift);
            for (std::size_t s = 0; s < profile.size(); ++s)
                profile[s] = delta * std::pow(shift + static_cast<double>(s), -member.gamma);
            const auto u = [&](const LatticePoint& x) { return profile[static_cast<std::size_t>(x.squared_norm())]; };
            const auto scan = verify_supersolution(family.graph, u, one, sigma,
                                                   std::span<const LatticePoint>(region.vertices), label, options.scan);
            result.cells.push_back({delta, shift, scan.max_residual, scan.worst_excess,
                                    scan.argmax ? to_string(*scan.argmax) : "", scan.pass});
            if (scan.pass) ++result.passing;
        }
    }
    result.every_member_fails = result.passing == 0;
    const std::string where = " on " + label + " (" + std::to_string(result.region_size) + " vertices)";
    result.interpretation =
        "finite-region evidence, not proof: " +
        (result.every_member_fails
             ? "every one of " + std::to_string(result.cells.size()) + " sampled members fails" + where
             : std::to_string(result.passing) + " of " + std::to_string(result.cells.size()) +
                   " sampled members pass" + where + "; a finite ball cannot rule out positive supersolutions") +
        (sigma <= result.critical_exponent ? "; sigma is at or below the critical exponent" : "");
    return result;
}

// ---------------------------------------------------------------------------

TreeSupersolution make_tree_supersolution(const HomogeneousTreeSpec& tree, double sigma, double epsilon,
                                          std::int64_t offset, double delta) {
    if (!(sigma > 1.0)) throw SpecError("tree supersolution needs sigma > 1");
    if (!(epsilon > 0.0)) throw SpecError("tree supersolution needs epsilon > 0");
    if (offset < 1) throw SpecError("tree supersolution needs n0 >= 1");
    if (!(delta > 0.0)) throw SpecError("tree supersolution needs delta > 0");
    if (tree.sigma != sigma || tree.epsilon != epsilon || tree.n0 != offset)
        throw BindingError("profile (sigma, epsilon, n0) = (" + format_number(sigma) + ", " + format_number(epsilon) +
                           ", " + std::to_string(offset) + ") does not match the tree's (" +
                           format_number(tree.sigma) + ", " + format_number(tree.epsilon) + ", " +
                           std::to_string(tree.n0) + ")");
    return {sigma, epsilon, offset, delta, 2.0 / (sigma - 1.0)};
}

double root_threshold(double sigma, std::int64_t offset) {
    const double a = 2.0 / (sigma - 1.0);
    const double n0 = static_cast<double>(offset);
    // n0^2 [1 - (n0/(1+n0))^a], with the bracket as -expm1 for large n0.
    return n0 * n0 * -std::expm1(a * std::log1p(-1.0 / (1.0 + n0)));
}

double level_feasibility(double sigma, double epsilon, double k) {
    // Dividing the level inequality by (N-1) omega_n delta k^{-a} leaves
    //   delta^{sigma-1} <= k^2 [(1 - (k/(k+1))^a) + r (1 - (k/(k-1))^a)] / (1 + r),
    // r = ((k-1)/k)^p. Both differences are O(1/k) and cancel to O(1/k^2), so
    // numerator and denominator are multiplied by e^{a (l + q)},
    // l = log(1 - 1/k), q = log(1 + 1/k), and formed with expm1.
    const double a = 2.0 / (sigma - 1.0);
    const double p = (sigma + 1.0) / (sigma - 1.0) + epsilon;
    const double l = std::log1p(-1.0 / k);
    const double q = std::log1p(1.0 / k);
    const double numerator = std::exp(a * l) * std::expm1(a * q) + std::exp(p * l + a * q) * std::expm1(a * l);
    const double denominator = (1.0 + std::exp(p * l)) * std::exp(a * (l + q));
    return k * k * numerator / denominator;
}

TreeTuning tune_tree_parameters(int degree, double sigma, double epsilon, const TreeTuningOptions& options) {
    if (degree < 2) throw SpecError("homogeneous tree degree must be >= 2");
    if (!(sigma > 1.0)) throw SpecError("tree tuning needs sigma > 1");
    if (!(epsilon > 0.0)) throw SpecError("tree tuning needs epsilon > 0");
    if (options.check_depth < 1) throw SpecError("tree tuning needs a positive check depth");

    TreeTuning result;
    result.degree = degree;
    result.limit = epsilon / (sigma - 1.0);
    const double low = options.band_low * result.limit;
    const double high = options.band_high * result.limit;

    std::int64_t offset = 1;
    for (;; offset *= 2) {
        if (offset > options.max_offset)
            throw TuningError("tree tuning: level feasibility did not settle in [" + format_number(low) + ", " +
                                  format_number(high) + "] for any n0 <= " + std::to_string(options.max_offset),
                              "n0=" + std::to_string(result.trace.back().offset), result.trace.back().lower);
        TreeTuningStep step{offset, INFINITY, -INFINITY, false};
        for (std::int64_t n = 1; n <= options.check_depth; ++n) {
            const double f = level_feasibility(sigma, epsilon, static_cast<double>(n + offset));
            step.lower = std::min(step.lower, f);
            step.upper = std::max(step.upper, f);
        }
        step.accepted = step.lower >= low && step.upper <= high;
        result.trace.push_back(step);
        if (step.accepted) break;
    }

    const auto& accepted = result.trace.back();
    result.lower_bracket = accepted.lower;
    result.upper_bracket = accepted.upper;
    result.lower_constant = accepted.lower / epsilon;
    result.upper_constant = accepted.upper / epsilon;
    result.root_threshold = root_threshold(sigma, offset);
    const double delta = std::pow(0.5 * std::min(result.root_threshold, accepted.lower), 1.0 / (sigma - 1.0));

    HomogeneousTreeSpec spec{degree, sigma, epsilon, offset, 0};
    const auto family = build_homogeneous_tree(spec);
    result.solution = make_tree_supersolution(spec, sigma, epsilon, offset, delta);

    std::vector<Level> levels;
    levels.reserve(static_cast<std::size_t>(options.check_depth) + 1);
    for (std::int64_t n = 0; n <= options.check_depth; ++n) levels.push_back({n});
    const auto& u = result.solution;
    result.scan = verify_supersolution(
        family.quotient, [&](const Level& x) { return u(x); }, [](const Level&) { return 1.0; }, sigma,
        std::span<const Level>(levels), "levels 0.." + std::to_string(options.check_depth) + " of " +
                                             family.quotient.label() + " (radial quotient)",
        options.scan);
    if (!result.scan.pass)
        throw TuningError("tree tuning: level-wise scan fails at " + to_string(*result.scan.worst_vertex),
                          to_string(*result.scan.worst_vertex), result.scan.max_residual);
    return result;
}

StencilSpotCheck spot_check_tree_stencil(const TreeSupersolution& u, int degree, std::size_t samples,
                                         std::int64_t max_depth, std::uint64_t seed, double tolerance) {
    const HomogeneousTreeSpec spec{degree, u.sigma, u.epsilon, u.offset, max_depth + 1};
    const auto family = build_homogeneous_tree(spec);
    const double sigma = u.sigma;

    StencilSpotCheck check;
    check.samples = samples;
    check.max_depth = max_depth;
    check.tolerance = tolerance;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> depth_of(0, max_depth);
    for (std::size_t i = 0; i < samples; ++i) {
        TreePath x;
        const auto depth = depth_of(rng);
        for (std::int64_t k = 0; k < depth; ++k) {
            std::uniform_int_distribution<std::uint32_t> child(0, family.graph.children_at(x.depth()) - 1);
            x = x.child(child(rng));
        }
        const double power = std::pow(u(x), sigma);
        const double full = laplacian(family.graph, u, x);
        const double level = laplacian(family.quotient, u, Level{depth});
        const double gap = std::abs(full - level) / (std::abs(full) + power);
        if (gap > check.worst_gap || check.worst_vertex.empty()) {
            check.worst_gap = gap;
            check.worst_vertex = to_string(x);
        }
    }
    check.agree = check.worst_gap <= tolerance;
    return check;
}

}  // namespace liouville
