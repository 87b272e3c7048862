#include "fracseries/numeric_format.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace fracseries {

std::string format_double(double v) {
  char buf[40];
  // Try increasing precision until the value round-trips; 17 significant
  // digits always do, shorter often does and reads better.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace fracseries
