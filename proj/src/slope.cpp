#include "liouville/slope.hpp"

#include "liouville/error.hpp"

#include <cmath>

namespace liouville {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ContractError("slope fit needs matching x and y");
    if (x.size() < 2) throw ContractError("slope fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw DomainError("log-log fit needs distinct abscissae");
    return sxy / sxx;
}

}  // namespace liouville
