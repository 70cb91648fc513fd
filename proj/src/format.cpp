#include "ivvi/format.hpp"

#include <charconv>

namespace ivvi {

std::string format_real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_point(std::span<const double> p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += format_real(p[i]);
    }
    out += ")";
    return out;
}

}  // namespace ivvi
