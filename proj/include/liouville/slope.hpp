#ifndef LIOUVILLE_SLOPE_HPP
#define LIOUVILLE_SLOPE_HPP

#include <span>

namespace liouville {

/// Ordinary least-squares slope of log y against log x. Needs at least two
/// points, all strictly positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace liouville

#endif
