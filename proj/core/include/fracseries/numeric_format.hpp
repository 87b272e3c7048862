#pragma once

#include <string>

namespace fracseries {

/// Shortest decimal string that parses back to exactly the same double.
/// Used everywhere a value is rendered (expression text, CSV cells) so that
/// output is deterministic and round-trips losslessly.
std::string format_double(double v);

}  // namespace fracseries
