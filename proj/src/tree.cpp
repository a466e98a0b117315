#include "liouville/tree.hpp"

#include "liouville/error.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

namespace liouville {

std::string to_string(const TreePath& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.steps.size(); ++i) {
        if (i > 0) s += '.';
        s += std::to_string(x.steps[i]);
    }
    return s + "]";
}

std::string to_string(const Level& x) { return "level:" + std::to_string(x.n); }

double RadialQuotient::inward_ratio(std::int64_t n) const {
    return std::exp(log_edge_mass_(n - 1) - log_edge_mass_(n));
}

// ---------------------------------------------------------------------------

FactorialTree::FactorialTree(int max_depth) : max_depth_(max_depth) {
    if (max_depth < 0 || max_depth > kMaxFactorialDepth)
        throw SpecError("factorial tree depth must lie in [0, " + std::to_string(kMaxFactorialDepth) +
                        "], got " + std::to_string(max_depth));
    // Exact integer factorials. Up to 26! the odd part fits a 64-bit
    // mantissa, so the long double conversion is exact and the quotient is
    // rounded to double once more at the end; the tests check each value is
    // the correctly rounded rational.
    unsigned __int128 factorial = 1;
    for (int n = 0; n <= kMaxFactorialDepth + 1; ++n) {
        if (n > 0) factorial *= static_cast<unsigned>(n);
        inverse_factorial_.push_back(static_cast<double>(1.0L / static_cast<long double>(factorial)));
    }
    factorial = 1;
    measure_.push_back(1.0);
    for (int n = 1; n <= kMaxFactorialDepth + 2; ++n) {
        if (n > 1) factorial *= static_cast<unsigned>(n - 1);
        measure_.push_back(static_cast<double>(2.0L / static_cast<long double>(factorial)));
    }
}

void FactorialTree::check_generable(std::size_t depth) const {
    if (depth > static_cast<std::size_t>(max_depth_))
        throw SpecError("factorial tree vertex at depth " + std::to_string(depth) +
                        " exceeds the generation cap " + std::to_string(max_depth_));
}

double FactorialTree::edge_weight(std::size_t n) const {
    if (n >= inverse_factorial_.size()) throw SpecError("factorial tree level out of range");
    return inverse_factorial_[n];
}

double FactorialTree::level_measure(std::size_t n) const {
    if (n >= measure_.size()) throw SpecError("factorial tree level out of range");
    return measure_[n];
}

LevelProfile FactorialTree::level_profile(std::int64_t n) const {
    return {n, n == 0 ? 0.0 : std::lgamma(static_cast<double>(n)), edge_weight(static_cast<std::size_t>(n)),
            level_measure(static_cast<std::size_t>(n))};
}

FactorialTreeFamily build_factorial_tree(const FactorialTreeSpec& spec) {
    // |E_n| omega_n = |D_n| n / n! = 1 for n >= 1, and the root edge has weight 1.
    RadialQuotient quotient([](std::int64_t) { return 1.0; }, [](std::int64_t) { return 0.0; },
                            "factorial-tree");
    return {FactorialTree(spec.max_depth), TreeHopMetric{}, std::move(quotient), 1.0};
}

// ---------------------------------------------------------------------------

std::int64_t max_representable_depth(int degree) {
    if (degree <= 2) return std::int64_t{100'000'000};
    // (N-1)^{-n} must stay a normal double.
    return static_cast<std::int64_t>(std::floor((DBL_MAX_EXP - 3) / std::log2(degree - 1.0)));
}

HomogeneousTree::HomogeneousTree(const HomogeneousTreeSpec& spec) : spec_(spec), exponent_(spec.weight_exponent()) {
    if (spec.degree < 2) throw SpecError("homogeneous tree degree must be >= 2");
    if (!(spec.sigma > 1.0)) throw SpecError("homogeneous tree needs sigma > 1");
    if (!(spec.epsilon > 0.0)) throw SpecError("homogeneous tree needs epsilon > 0");
    if (spec.n0 < 1) throw SpecError("homogeneous tree needs offset n0 >= 1");
    if (spec.max_depth < 0 || spec.max_depth > max_representable_depth(spec.degree))
        throw SpecError("homogeneous tree depth " + std::to_string(spec.max_depth) +
                        " outside [0, " + std::to_string(max_representable_depth(spec.degree)) +
                        "] where vertex weights are representable");
}

void HomogeneousTree::check_generable(std::int64_t depth) const {
    if (depth > spec_.max_depth)
        throw SpecError("homogeneous tree vertex at depth " + std::to_string(depth) +
                        " exceeds the generation cap " + std::to_string(spec_.max_depth));
}

double HomogeneousTree::edge_weight(std::int64_t n) const {
    return std::pow(static_cast<double>(n + spec_.n0), exponent_) *
           std::pow(static_cast<double>(spec_.degree - 1), -static_cast<double>(n));
}

double HomogeneousTree::level_measure(std::int64_t n) const {
    if (n == 0) return spec_.degree * edge_weight(0);
    return (spec_.degree - 1) * edge_weight(n) + edge_weight(n - 1);
}

LevelProfile HomogeneousTree::level_profile(std::int64_t n) const {
    const double log_count =
        n == 0 ? 0.0 : std::log(static_cast<double>(spec_.degree)) + (n - 1) * std::log(spec_.degree - 1.0);
    return {n, log_count, edge_weight(n), level_measure(n)};
}

HomogeneousTreeFamily build_homogeneous_tree(const HomogeneousTreeSpec& spec) {
    HomogeneousTree graph(spec);
    const double p = spec.weight_exponent();
    const double degree = spec.degree;
    const auto n0 = spec.n0;
    // |E_n| omega_n = N (N-1)^n (n+n0)^p / (N-1)^n = N (n+n0)^p.
    RadialQuotient quotient(
        [=](std::int64_t n) { return degree * std::pow(static_cast<double>(n + n0), p); },
        [=](std::int64_t n) { return std::log(degree) + p * std::log(static_cast<double>(n + n0)); },
        "homogeneous-tree");
    return {std::move(graph), TreeHopMetric{}, std::move(quotient), 1.0};
}

RadialQuotient flat_homogeneous_quotient(int degree) {
    if (degree < 2) throw SpecError("homogeneous tree degree must be >= 2");
    const double N = degree;
    return RadialQuotient(
        [=](std::int64_t n) { return N * std::pow(N - 1.0, static_cast<double>(n)); },
        [=](std::int64_t n) { return std::log(N) + static_cast<double>(n) * std::log(N - 1.0); },
        "flat-homogeneous-tree");
}

}  // namespace liouville
