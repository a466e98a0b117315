#include "liouville/radial.hpp"

#include "liouville/error.hpp"
#include "liouville/format.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace liouville {

const char* to_string(StopReason r) noexcept {
    switch (r) {
        case StopReason::max_depth: return "max-depth";
        case StopReason::crossed_zero: return "crossed-zero";
        case StopReason::blow_up: return "blow-up";
    }
    return "unknown";
}

std::string RadialProfile::csv() const {
    std::string out = "n,u_n,residual\n";
    for (std::size_t n = 0; n < values.size(); ++n) {
        out += std::to_string(n) + ',' + format_number(values[n]) + ',';
        if (n < residuals.size()) out += format_number(residuals[n]);
        out += '\n';
    }
    return out;
}

namespace {

double quotient_residual(const RadialQuotient& q, std::int64_t n, double prev, double here, double next,
                         double sigma) {
    const double out = q.edge_mass(n) * (next - here);
    const double in = n > 0 ? q.edge_mass(n - 1) * (prev - here) : 0.0;
    return (out + in) / q.measure(Level{n}) + std::pow(here, sigma);
}

}  // namespace

RadialProfile shoot(const RadialQuotient& levels, double sigma, double u0, std::int64_t max_depth) {
    if (!(u0 > 0.0)) throw ContractError("shooting needs u0 > 0");
    if (!(sigma > 1.0)) throw ContractError("shooting needs sigma > 1");
    if (max_depth < 1) throw ContractError("shooting needs max_depth >= 1");

    RadialProfile p;
    p.label = levels.label();
    p.sigma = sigma;
    p.max_depth = max_depth;
    p.values.push_back(u0);
    for (std::int64_t n = 0; n < max_depth; ++n) {
        const double here = p.values[static_cast<std::size_t>(n)];
        double next;
        if (n == 0) {
            next = here - std::pow(here, sigma);
        } else {
            const double prev = p.values[static_cast<std::size_t>(n - 1)];
            const double rho = levels.inward_ratio(n);
            next = here - (1.0 + rho) * std::pow(here, sigma) - rho * (prev - here);
        }
        p.values.push_back(next);
        const double prev = n > 0 ? p.values[static_cast<std::size_t>(n - 1)] : here;
        p.residuals.push_back(quotient_residual(levels, n, prev, here, next, sigma));
        if (!(std::abs(next) <= kBlowUpMagnitude)) {
            p.stop = StopReason::blow_up;
            return p;
        }
        if (next <= 0.0) {
            p.stop = StopReason::crossed_zero;
            return p;
        }
    }
    p.stop = StopReason::max_depth;
    return p;
}

std::vector<double> level_residuals(const RadialQuotient& levels, const std::function<double(std::int64_t)>& u,
                                    double sigma, std::int64_t depth) {
    std::vector<double> out;
    for (std::int64_t n = 0; n <= depth; ++n)
        out.push_back(quotient_residual(levels, n, n > 0 ? u(n - 1) : 0.0, u(n), u(n + 1), sigma));
    return out;
}

std::vector<double> level_residuals(const HomogeneousTree& tree, const std::function<double(std::int64_t)>& u,
                                    double sigma, std::int64_t depth) {
    if (depth + 1 > max_representable_depth(tree.spec().degree))
        throw ContractError("per-vertex tree weights are not representable beyond depth " +
                            std::to_string(max_representable_depth(tree.spec().degree)) +
                            "; use the radial quotient");
    std::vector<double> out;
    const double branching = tree.spec().degree - 1.0;
    for (std::int64_t n = 0; n <= depth; ++n) {
        const auto level = tree.level_profile(n);
        double sum;
        if (n == 0) {
            sum = tree.spec().degree * level.edge_weight * (u(1) - u(0));
        } else {
            sum = branching * level.edge_weight * (u(n + 1) - u(n)) + tree.edge_weight(n - 1) * (u(n - 1) - u(n));
        }
        out.push_back(sum / level.measure + std::pow(u(n), sigma));
    }
    return out;
}

PositiveThreshold bisect_positive_threshold(const RadialQuotient& levels, double sigma, std::int64_t depth,
                                            double lower, double upper, unsigned workers, double relative_width) {
    if (!(lower > 0.0) || !(upper > lower)) throw ContractError("bracket needs 0 < lower < upper");
    workers = std::max(1u, workers);

    auto low = shoot(levels, sigma, lower, depth);
    auto high = shoot(levels, sigma, upper, depth);
    if (low.positive_through_depth() == high.positive_through_depth())
        throw BracketError("bracket [" + format_number(lower) + ", " + format_number(upper) + "] does not straddle " +
                           "the threshold: both ends " +
                           (low.positive_through_depth() ? "stay positive" : "lose positivity") + " by depth " +
                           std::to_string(depth));

    PositiveThreshold t;
    t.positive_below = low.positive_through_depth();
    while (high.initial() / low.initial() - 1.0 > relative_width) {
        ++t.rounds;
        // workers interior points, evenly spaced in log u0
        const double a = std::log(low.initial()), b = std::log(high.initial());
        std::vector<std::future<RadialProfile>> trials;
        for (unsigned k = 1; k <= workers; ++k) {
            const double u0 = std::exp(a + (b - a) * k / (workers + 1.0));
            trials.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                        [&, u0] { return shoot(levels, sigma, u0, depth); }));
        }
        std::vector<RadialProfile> shots;
        for (auto& f : trials) shots.push_back(f.get());
        // first trial whose outcome differs from the lower end closes the bracket
        std::size_t k = 0;
        while (k < shots.size() && shots[k].positive_through_depth() == low.positive_through_depth()) ++k;
        if (k > 0) low = std::move(shots[k - 1]);
        if (k < shots.size()) high = std::move(shots[k]);
    }
    t.lower = low.initial();
    t.upper = high.initial();
    t.threshold = std::sqrt(t.lower * t.upper);

    const RadialProfile& big = high;
    const RadialProfile& small = low;
    const auto common = std::min(big.values.size(), small.values.size());
    for (std::size_t n = 0; n + 1 < common; ++n) {
        if (big.values[n] < small.values[n]) {
            t.comparison_holds = false;
            t.comparison_violation = static_cast<std::int64_t>(n);
            break;
        }
    }
    if (t.positive_below) {
        t.positive_witness = std::move(low);
        t.crossing_witness = std::move(high);
    } else {
        t.positive_witness = std::move(high);
        t.crossing_witness = std::move(low);
    }
    return t;
}

}  // namespace liouville
