#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace eckhaus {

// Uniform periodic grid on [0, L). Wavenumbers follow FFT storage order:
// index j holds k = 2*pi*s/L with s = j for j < n/2 and s = j - n otherwise,
// so s runs over {-n/2, ..., n/2 - 1} and j = n/2 is the lone Nyquist mode.
class Grid {
  public:
    Grid(int n, double length) : n_(n), length_(length) {
        if (n < 16 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 16");
        if (!(length > 0.0))
            throw std::invalid_argument("Grid: length must be positive");
        k_.resize(n);
        const double dk = 2.0 * std::numbers::pi / length;
        for (int j = 0; j < n; ++j) k_[j] = dk * signed_index(j);
    }

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    double dk() const { return 2.0 * std::numbers::pi / length_; }
    double x(int i) const { return dx() * i; }
    int signed_index(int j) const { return j < n_ / 2 ? j : j - n_; }
    double wavenumber(int j) const { return k_[j]; }
    const std::vector<double>& wavenumbers() const { return k_; }
    double nyquist() const { return dk() * (n_ / 2); }

    bool operator==(const Grid& o) const {
        return n_ == o.n_ && length_ == o.length_;
    }

  private:
    int n_;
    double length_;
    std::vector<double> k_;
};

}  // namespace eckhaus
