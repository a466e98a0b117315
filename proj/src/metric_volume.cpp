#include "liouville/metric_volume.hpp"

#include "liouville/format.hpp"

#include <algorithm>

namespace liouville {

namespace detail {

void finish_volume_growth(VolumeGrowthReport& report, const VolumeGrowthOptions& options) {
    auto& rows = report.rows;
    std::vector<double> xs, ys;
    for (auto& row : rows) {
        xs.push_back(row.radius);
        ys.push_back(row.mass);
        const bool positive = std::all_of(ys.begin(), ys.end(), [](double y) { return y > 0.0; });
        if (xs.size() >= 2 && positive) row.slope_so_far = loglog_slope(xs, ys);
    }
    if (rows.back().slope_so_far) {
        report.slope = *rows.back().slope_so_far;
        report.slope_within_target = report.slope <= report.target_exponent + options.slope_tolerance;
    } else {
        // Some annulus carries no mass: a log-log fit is undefined and the
        // slope criterion cannot certify anything on its own.
        report.slope = NAN;
        report.slope_within_target = false;
    }

    const std::size_t half = rows.size() / 2;
    report.bottom_max_ratio = 0.0;
    report.top_max_ratio = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double& slot = i < half ? report.bottom_max_ratio : report.top_max_ratio;
        slot = std::max(slot, rows[i].ratio);
    }
    report.ratios_bounded = report.top_max_ratio <= options.ratio_growth_allowance * report.bottom_max_ratio;
    report.consistent = report.ratios_bounded || report.slope_within_target;
}

}  // namespace detail

std::string VolumeGrowthReport::csv() const {
    std::string out = "R,W,ratio,slope_so_far\n";
    for (const auto& row : rows) {
        out += format_number(row.radius) + ',' + format_number(row.mass) + ',' + format_number(row.ratio) + ',';
        if (row.slope_so_far) out += format_number(*row.slope_so_far);
        out += '\n';
    }
    return out;
}

}  // namespace liouville
