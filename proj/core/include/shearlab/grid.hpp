#pragma once

#include <cstddef>
#include <string>

namespace shearlab {

/// Discretized 1D domain: either the interval [0, pi] or the torus
/// identified with [-pi, pi). Points are left + j*spacing, j = 0..n-1;
/// the right endpoint is excluded so FFT conventions stay unambiguous.
enum class Domain { Interval, Torus };

class Grid1D {
public:
    Grid1D(std::size_t n, Domain domain);

    std::size_t size() const { return n_; }
    Domain domain() const { return domain_; }
    double spacing() const { return spacing_; }
    double left() const { return left_; }
    double right() const { return left_ + length_; }  ///< excluded on the torus
    double length() const { return length_; }
    double point(std::size_t j) const { return left_ + static_cast<double>(j) * spacing_; }

    bool operator==(const Grid1D& other) const {
        return n_ == other.n_ && domain_ == other.domain_;
    }

    static Grid1D interval(std::size_t n) { return Grid1D(n, Domain::Interval); }
    static Grid1D torus(std::size_t n) { return Grid1D(n, Domain::Torus); }

private:
    std::size_t n_;
    Domain domain_;
    double left_;
    double length_;
    double spacing_;
};

std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);

}  // namespace shearlab
