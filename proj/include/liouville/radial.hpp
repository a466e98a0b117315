#ifndef LIOUVILLE_RADIAL_HPP
#define LIOUVILLE_RADIAL_HPP

// Radial profiles on trees. A level function solving Delta u + u^sigma = 0
// with equality is marched outward from the root:
//
//   root:   W_0 (u_1 - u_0) / M_0 + u_0^sigma = 0, and M_0 = W_0, so
//           u_1 = u_0 - u_0^sigma;
//   n >= 1: [W_n (u_{n+1} - u_n) + W_{n-1} (u_{n-1} - u_n)] / M_n + u_n^sigma = 0
//           with M_n = W_n + W_{n-1}, i.e. with rho_n = W_{n-1} / W_n
//           u_{n+1} = u_n - (1 + rho_n) u_n^sigma - rho_n (u_{n-1} - u_n).
//
// On the homogeneous tree W_n = |D_n| (N-1) omega_n and W_{n-1} = |D_n| omega_{n-1},
// so this is the tree's own level relation divided through by |D_n|.

#include "liouville/tree.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace liouville {

inline constexpr double kBlowUpMagnitude = 1e300;

enum class StopReason { max_depth, crossed_zero, blow_up };

const char* to_string(StopReason r) noexcept;

struct RadialProfile {
    std::string label;
    double sigma = 0.0;
    std::int64_t max_depth = 0;
    std::vector<double> values;     // u_0, u_1, ...; a crossing value is kept as the last entry
    std::vector<double> residuals;  // level residual, defined where u_{n+1} exists and u_n > 0
    StopReason stop = StopReason::max_depth;

    double initial() const { return values.front(); }
    std::int64_t last_level() const { return static_cast<std::int64_t>(values.size()) - 1; }
    bool positive_through_depth() const noexcept { return stop == StopReason::max_depth; }

    /// n,u_n,residual
    std::string csv() const;
};

/// Marches the equality relation from u_0 up to level max_depth, stopping at
/// the first u <= 0 or at |u| > 1e300.
RadialProfile shoot(const RadialQuotient& levels, double sigma, double u0, std::int64_t max_depth);

/// Level residual Delta u(n) + u_n^sigma on the quotient for n = 0..depth;
/// needs u at depth + 1.
std::vector<double> level_residuals(const RadialQuotient& levels, const std::function<double(std::int64_t)>& u,
                                    double sigma, std::int64_t depth);

/// The same residual from the tree's per-vertex weights and measures; depth + 1
/// must not exceed max_representable_depth.
std::vector<double> level_residuals(const HomogeneousTree& tree, const std::function<double(std::int64_t)>& u,
                                    double sigma, std::int64_t depth);

struct PositiveThreshold {
    double threshold = 0.0;   // geometric midpoint of the final bracket
    double lower = 0.0;       // final bracket
    double upper = 0.0;
    bool positive_below = true;  // profiles from u_0 < threshold stay positive
    int rounds = 0;
    RadialProfile positive_witness;
    RadialProfile crossing_witness;
    // Larger start stays above the smaller one on every level before the
    // larger profile's final entry; a failure is a numerical pathology flag.
    bool comparison_holds = true;
    std::optional<std::int64_t> comparison_violation;
};

/// Bisection in u_0 (geometric, to relative width 1e-10) between the outcome
/// "crosses zero before depth" and "positive through depth". The endpoints
/// must disagree, otherwise BracketError. With workers > 1 each round shoots
/// `workers` interior points concurrently.
PositiveThreshold bisect_positive_threshold(const RadialQuotient& levels, double sigma, std::int64_t depth,
                                            double lower, double upper, unsigned workers = 1,
                                            double relative_width = 1e-10);

}  // namespace liouville

#endif
