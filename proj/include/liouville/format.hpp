#ifndef LIOUVILLE_FORMAT_HPP
#define LIOUVILLE_FORMAT_HPP

#include <string>

namespace liouville {

/// Shortest decimal text that reads back to the same double; "nan", "inf".
std::string format_number(double x);

}  // namespace liouville

#endif
