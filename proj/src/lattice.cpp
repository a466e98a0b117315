#include "liouville/lattice.hpp"

#include "liouville/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace liouville {

std::string to_string(const LatticePoint& x) {
    std::string s = "(";
    for (int i = 0; i < x.dim; ++i) {
        if (i > 0) s += ',';
        s += std::to_string(x.coords[i]);
    }
    return s + ")";
}

LatticeFamily build_lattice(const LatticeSpec& spec) {
    if (spec.dim < 1 || spec.dim > kMaxLatticeDim)
        throw SpecError("lattice dimension must lie in [1, " + std::to_string(kMaxLatticeDim) + "], got " +
                        std::to_string(spec.dim));
    return {LatticeGraph(spec.dim), EuclideanMetric{}, 1.0};
}

std::vector<LatticePoint> lattice_orbit_representatives(int dim, double r) {
    if (dim < 1 || dim > kMaxLatticeDim) throw SpecError("lattice dimension out of range");
    if (!(r >= 0.0)) throw ContractError("orbit enumeration needs r >= 0");
    const auto limit = static_cast<std::int64_t>(std::floor(r * r + 1e-9));
    std::vector<LatticePoint> out;
    LatticePoint x(dim);
    // fill coordinates left to right, each at least the previous one
    const auto fill = [&](auto&& self, int k, std::int32_t low, std::int64_t used) -> void {
        if (k == dim) {
            out.push_back(x);
            return;
        }
        // the remaining dim - k coordinates are all >= c
        for (std::int32_t c = low; used + std::int64_t{c} * c * (dim - k) <= limit; ++c) {
            x[static_cast<std::size_t>(k)] = c;
            self(self, k + 1, c, used + std::int64_t{c} * c);
        }
    };
    fill(fill, 0, 0, 0);
    return out;
}

std::uint64_t lattice_orbit_size(const LatticePoint& x) {
    std::uint64_t size = 1;
    std::vector<std::int32_t> a(x.coords.begin(), x.coords.begin() + x.dim);
    for (auto& c : a) {
        if (c != 0) size *= 2;
        c = std::abs(c);
    }
    std::sort(a.begin(), a.end());
    for (int k = 2; k <= x.dim; ++k) size *= static_cast<std::uint64_t>(k);
    for (std::size_t i = 0; i < a.size();) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        for (std::size_t m = 2; m <= j - i; ++m) size /= m;
        i = j;
    }
    return size;
}

}  // namespace liouville
