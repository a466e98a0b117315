#ifndef LIOUVILLE_LATTICE_HPP
#define LIOUVILLE_LATTICE_HPP

#include "liouville/graph.hpp"

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>

namespace liouville {

inline constexpr int kMaxLatticeDim = 6;

/// Integer coordinate tuple in Z^N, N <= kMaxLatticeDim. Unused trailing
/// coordinates are zero.
struct LatticePoint {
    std::uint8_t dim = 0;
    std::array<std::int32_t, kMaxLatticeDim> coords{};

    LatticePoint() = default;
    explicit LatticePoint(int n) : dim(static_cast<std::uint8_t>(n)) {}
    LatticePoint(std::initializer_list<std::int32_t> c) : dim(static_cast<std::uint8_t>(c.size())) {
        std::size_t i = 0;
        for (auto v : c) coords[i++] = v;
    }

    std::int32_t operator[](std::size_t i) const { return coords[i]; }
    std::int32_t& operator[](std::size_t i) { return coords[i]; }

    std::int64_t squared_norm() const noexcept {
        std::int64_t s = 0;
        for (int i = 0; i < dim; ++i) s += std::int64_t{coords[i]} * coords[i];
        return s;
    }

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

std::string to_string(const LatticePoint& x);

struct LatticeSpec {
    int dim = 3;
};

/// Z^N with omega_xy = 1 on unit steps and mu = 2N.
class LatticeGraph {
public:
    using vertex_type = LatticePoint;
    static constexpr GraphFlavor flavor = GraphFlavor::lazy_procedural;

    explicit LatticeGraph(int dim) : dim_(dim) {}

    int dim() const noexcept { return dim_; }
    LatticePoint origin() const { return LatticePoint(dim_); }

    double measure(const LatticePoint&) const noexcept { return 2.0 * dim_; }

    // Ascending lexicographic order: x-e_0 < ... < x-e_{N-1} < x+e_{N-1} < ... < x+e_0.
    template <class Fn>
    void for_each_neighbor(const LatticePoint& x, Fn&& fn) const {
        LatticePoint y = x;
        for (int k = 0; k < dim_; ++k) {
            --y.coords[k];
            fn(static_cast<const LatticePoint&>(y), 1.0);
            ++y.coords[k];
        }
        for (int k = dim_ - 1; k >= 0; --k) {
            ++y.coords[k];
            fn(static_cast<const LatticePoint&>(y), 1.0);
            --y.coords[k];
        }
    }

private:
    int dim_;
};

class EuclideanMetric {
public:
    double distance(const LatticePoint& x, const LatticePoint& y) const noexcept {
        std::int64_t s = 0;
        for (int i = 0; i < x.dim; ++i) {
            const std::int64_t d = std::int64_t{x.coords[i]} - y.coords[i];
            s += d * d;
        }
        return std::sqrt(static_cast<double>(s));
    }
    const char* kind() const noexcept { return "coordinate-euclidean"; }
};

struct LatticeFamily {
    LatticeGraph graph;
    EuclideanMetric metric;
    double analytic_jump_size = 1.0;
};

/// Lazy lattice over Z^N with the Euclidean metric; 1 <= N <= 6.
LatticeFamily build_lattice(const LatticeSpec& spec);

/// One point per orbit of the coordinate permutations and sign flips inside
/// |x| <= r: the points with 0 <= x_1 <= ... <= x_N. Lexicographic order.
std::vector<LatticePoint> lattice_orbit_representatives(int dim, double r);

/// Number of lattice points in the orbit of x.
std::uint64_t lattice_orbit_size(const LatticePoint& x);

}  // namespace liouville

template <>
struct std::hash<liouville::LatticePoint> {
    std::size_t operator()(const liouville::LatticePoint& x) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (int i = 0; i < x.dim; ++i) {
            h ^= static_cast<std::uint32_t>(x.coords[i]);
            h *= 0xff51afd7ed558ccdULL;
            h ^= h >> 32;
        }
        return static_cast<std::size_t>(h);
    }
};

#endif
