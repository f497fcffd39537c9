#include "shearlab/grid.hpp"

#include <numbers>

#include "shearlab/common.hpp"

namespace shearlab {

namespace {
bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}
}  // namespace

Grid1D::Grid1D(std::size_t n, Domain domain) : n_(n), domain_(domain) {
    if (n < 8) throw BadParameter("Grid1D: n must be >= 8, got " + std::to_string(n));
    if (domain == Domain::Torus && !is_power_of_two(n))
        throw BadParameter("Grid1D: torus grids need n a power of two, got " + std::to_string(n));
    if (domain == Domain::Interval) {
        left_ = 0.0;
        length_ = std::numbers::pi;
    } else {
        left_ = -std::numbers::pi;
        length_ = 2.0 * std::numbers::pi;
    }
    spacing_ = length_ / static_cast<double>(n);
}

std::string to_string(Domain d) {
    return d == Domain::Interval ? "interval" : "torus";
}

Domain domain_from_string(const std::string& s) {
    if (s == "interval") return Domain::Interval;
    if (s == "torus") return Domain::Torus;
    throw BadParameter("unknown domain: " + s);
}

}  // namespace shearlab
