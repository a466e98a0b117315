#ifndef LIOUVILLE_TREE_HPP
#define LIOUVILLE_TREE_HPP

// Rooted trees whose weights depend only on the level, and their radial
// quotient: the weighted path on levels 0, 1, 2, ... that carries the total
// edge mass W_n = |E_n| omega_n and the level mass M_n = sum_{x in D_n} mu(x).
// Radial functions have identical Laplacians on the tree and on the quotient,
// so the quotient reaches depths where per-vertex weights under/overflow.

#include "liouville/graph.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace liouville {

/// Child-index path from the root; the root is the empty path. Ordered by
/// depth, then lexicographically.
struct TreePath {
    std::vector<std::uint32_t> steps;

    std::size_t depth() const noexcept { return steps.size(); }

    TreePath parent() const {
        TreePath p{steps};
        p.steps.pop_back();
        return p;
    }
    TreePath child(std::uint32_t i) const {
        TreePath c{steps};
        c.steps.push_back(i);
        return c;
    }

    friend std::strong_ordering operator<=>(const TreePath& a, const TreePath& b) {
        if (auto c = a.steps.size() <=> b.steps.size(); c != 0) return c;
        return std::lexicographical_compare_three_way(a.steps.begin(), a.steps.end(),
                                                      b.steps.begin(), b.steps.end());
    }
    friend bool operator==(const TreePath&, const TreePath&) = default;
};

std::string to_string(const TreePath& x);

/// Hop distance |x| + |y| - 2 |common prefix|.
class TreeHopMetric {
public:
    double distance(const TreePath& x, const TreePath& y) const noexcept {
        const auto mismatch = std::mismatch(x.steps.begin(), x.steps.end(), y.steps.begin(), y.steps.end());
        const auto common = static_cast<std::size_t>(mismatch.first - x.steps.begin());
        return static_cast<double>(x.depth() + y.depth() - 2 * common);
    }
    const char* kind() const noexcept { return "hop-distance"; }
};

/// Per-level data of a level-homogeneous tree.
struct LevelProfile {
    std::int64_t level = 0;
    double log_count = 0.0;    // log |D_n|
    double edge_weight = 0.0;  // omega across E_n (D_n -> D_{n+1})
    double measure = 0.0;      // mu on D_n
};

// ---------------------------------------------------------------------------
// Radial quotient

/// Vertex of the radial quotient: a tree level.
struct Level {
    std::int64_t n = 0;
    friend auto operator<=>(const Level&, const Level&) = default;
};

std::string to_string(const Level& x);

class RadialQuotient {
public:
    using vertex_type = Level;
    static constexpr GraphFlavor flavor = GraphFlavor::lazy_procedural;

    /// `edge_mass(n)` is W_n and `log_edge_mass(n)` its logarithm; both must
    /// describe the same sequence.
    RadialQuotient(std::function<double(std::int64_t)> edge_mass,
                   std::function<double(std::int64_t)> log_edge_mass, std::string label)
        : edge_mass_(std::move(edge_mass)),
          log_edge_mass_(std::move(log_edge_mass)),
          label_(std::move(label)) {}

    double edge_mass(std::int64_t n) const { return edge_mass_(n); }
    double log_edge_mass(std::int64_t n) const { return log_edge_mass_(n); }
    /// W_{n-1} / W_n for n >= 1, computed in log space.
    double inward_ratio(std::int64_t n) const;
    const std::string& label() const noexcept { return label_; }

    double measure(const Level& x) const {
        return x.n == 0 ? edge_mass_(0) : edge_mass_(x.n) + edge_mass_(x.n - 1);
    }

    template <class Fn>
    void for_each_neighbor(const Level& x, Fn&& fn) const {
        if (x.n > 0) fn(Level{x.n - 1}, edge_mass_(x.n - 1));
        fn(Level{x.n + 1}, edge_mass_(x.n));
    }

private:
    std::function<double(std::int64_t)> edge_mass_;
    std::function<double(std::int64_t)> log_edge_mass_;
    std::string label_;
};

/// |n - m|; on the quotient this is the tree distance to the root.
class LevelMetric {
public:
    double distance(const Level& a, const Level& b) const noexcept {
        return static_cast<double>(a.n > b.n ? a.n - b.n : b.n - a.n);
    }
    const char* kind() const noexcept { return "hop-distance"; }
};

// ---------------------------------------------------------------------------
// Factorial tree: the root has one child, every vertex of D_n (n >= 1) has n
// children, omega = 1/min{h!, k!} and mu = sum of incident weights.

inline constexpr int kMaxFactorialDepth = 25;

struct FactorialTreeSpec {
    int max_depth = 12;
};

class FactorialTree {
public:
    using vertex_type = TreePath;
    static constexpr GraphFlavor flavor = GraphFlavor::lazy_procedural;

    explicit FactorialTree(int max_depth);

    int max_depth() const noexcept { return max_depth_; }
    TreePath root() const { return {}; }

    static std::uint32_t children_at(std::size_t depth) noexcept {
        return depth == 0 ? 1u : static_cast<std::uint32_t>(depth);
    }
    /// omega across E_n, i.e. 1/n!.
    double edge_weight(std::size_t n) const;
    double level_measure(std::size_t n) const;
    LevelProfile level_profile(std::int64_t n) const;

    double measure(const TreePath& x) const { return level_measure(x.depth()); }

    template <class Fn>
    void for_each_neighbor(const TreePath& x, Fn&& fn) const {
        const std::size_t n = x.depth();
        check_generable(n);
        if (n > 0) fn(x.parent(), edge_weight(n - 1));
        const double w = edge_weight(n);
        for (std::uint32_t i = 0; i < children_at(n); ++i) fn(x.child(i), w);
    }

private:
    void check_generable(std::size_t depth) const;

    int max_depth_;
    std::vector<double> inverse_factorial_;  // 1/n!, n = 0 .. kMaxFactorialDepth + 1
    std::vector<double> measure_;            // mu on D_n
};

struct FactorialTreeFamily {
    FactorialTree graph;
    TreeHopMetric metric;
    RadialQuotient quotient;
    double analytic_jump_size = 1.0;
};

FactorialTreeFamily build_factorial_tree(const FactorialTreeSpec& spec);

// ---------------------------------------------------------------------------
// Homogeneous tree of degree N with omega_n = (n + n0)^p / (N-1)^n,
// p = (sigma+1)/(sigma-1) + epsilon.

struct HomogeneousTreeSpec {
    int degree = 3;
    double sigma = 2.0;
    double epsilon = 0.5;
    std::int64_t n0 = 1;
    std::int64_t max_depth = 64;

    double weight_exponent() const noexcept { return (sigma + 1.0) / (sigma - 1.0) + epsilon; }
};

/// Largest depth at which omega_n is a normal double for this degree.
std::int64_t max_representable_depth(int degree);

class HomogeneousTree {
public:
    using vertex_type = TreePath;
    static constexpr GraphFlavor flavor = GraphFlavor::lazy_procedural;

    explicit HomogeneousTree(const HomogeneousTreeSpec& spec);

    const HomogeneousTreeSpec& spec() const noexcept { return spec_; }
    TreePath root() const { return {}; }

    std::uint32_t children_at(std::size_t depth) const noexcept {
        return static_cast<std::uint32_t>(depth == 0 ? spec_.degree : spec_.degree - 1);
    }
    double edge_weight(std::int64_t n) const;
    double level_measure(std::int64_t n) const;
    LevelProfile level_profile(std::int64_t n) const;

    double measure(const TreePath& x) const { return level_measure(static_cast<std::int64_t>(x.depth())); }

    template <class Fn>
    void for_each_neighbor(const TreePath& x, Fn&& fn) const {
        const auto n = static_cast<std::int64_t>(x.depth());
        check_generable(n);
        if (n > 0) fn(x.parent(), edge_weight(n - 1));
        const double w = edge_weight(n);
        for (std::uint32_t i = 0; i < children_at(x.depth()); ++i) fn(x.child(i), w);
    }

private:
    void check_generable(std::int64_t depth) const;

    HomogeneousTreeSpec spec_;
    double exponent_;
};

struct HomogeneousTreeFamily {
    HomogeneousTree graph;
    TreeHopMetric metric;
    RadialQuotient quotient;
    double analytic_jump_size = 1.0;
};

HomogeneousTreeFamily build_homogeneous_tree(const HomogeneousTreeSpec& spec);

/// Radial quotient of the homogeneous tree of degree N with omega_n = 1.
RadialQuotient flat_homogeneous_quotient(int degree);

}  // namespace liouville

template <>
struct std::hash<liouville::TreePath> {
    std::size_t operator()(const liouville::TreePath& x) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ x.steps.size();
        for (auto s : x.steps) {
            h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

template <>
struct std::hash<liouville::Level> {
    std::size_t operator()(const liouville::Level& x) const noexcept {
        return std::hash<std::int64_t>{}(x.n);
    }
};

#endif
