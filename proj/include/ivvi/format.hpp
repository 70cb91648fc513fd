#pragma once

#include <span>
#include <string>

namespace ivvi {

/// Shortest decimal text that reads back to the same double.
std::string format_real(double x);

/// "(a, b, ...)" using format_real for each coordinate.
std::string format_point(std::span<const double> p);

}  // namespace ivvi
