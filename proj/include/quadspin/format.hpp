#pragma once

#include <string>

namespace quadspin {

/// Locale-free decimal text with 17 significant digits; "nan" and
/// "inf"/"-inf" for non-finite values.
std::string format_double(double value);

}  // namespace quadspin
