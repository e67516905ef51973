#pragma once

// Discretization of the torus [0,2pi)^2: collocation points and the
// integer wavenumber lattice in FFT index order.

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace obtoy {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

class Grid {
  public:
    Grid(int nx, int ny) : nx_(nx), ny_(ny) {
        check_axis(nx, "nx");
        check_axis(ny, "ny");
        kx_.resize(nx);
        ky_.resize(ny);
        kdx_.resize(nx);
        kdy_.resize(ny);
        for (int i = 0; i < nx; ++i) {
            kx_[i] = i < nx / 2 ? i : i - nx;
            // Nyquist derivative multiplier is zeroed so odd-order
            // derivatives of real fields stay real.
            kdx_[i] = kx_[i] == -nx / 2 ? 0.0 : double(kx_[i]);
        }
        for (int j = 0; j < ny; ++j) {
            ky_[j] = j < ny / 2 ? j : j - ny;
            kdy_[j] = ky_[j] == -ny / 2 ? 0.0 : double(ky_[j]);
        }
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t size() const { return std::size_t(nx_) * ny_; }

    // idx = i*ny + j, i the x index (slow), j the y index (fast)
    std::size_t index(int i, int j) const { return std::size_t(i) * ny_ + j; }

    int kx(int i) const { return kx_[i]; }
    int ky(int j) const { return ky_[j]; }
    double kdx(int i) const { return kdx_[i]; }
    double kdy(int j) const { return kdy_[j]; }
    double k2(int i, int j) const {
        return double(kx_[i]) * kx_[i] + double(ky_[j]) * ky_[j];
    }
    bool nyquist(int i, int j) const {
        return kx_[i] == -nx_ / 2 || ky_[j] == -ny_ / 2;
    }

    // FFT array index of wavenumber pair (k1,k2), k in [-n/2, n/2)
    std::size_t index_of_mode(int k1, int k2) const {
        int i = k1 >= 0 ? k1 : k1 + nx_;
        int j = k2 >= 0 ? k2 : k2 + ny_;
        return index(i, j);
    }

    // index of -k with wrap-around (Nyquist maps to itself)
    std::size_t conj_index(int i, int j) const {
        return index((nx_ - i) % nx_, (ny_ - j) % ny_);
    }

    double x(int i) const { return two_pi * i / nx_; }
    double y(int j) const { return two_pi * j / ny_; }

    bool operator==(const Grid& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }

  private:
    static void check_axis(int n, const char* name) {
        if (n % 2 != 0)
            throw std::invalid_argument(std::string(name) + " must be even, got " +
                                        std::to_string(n));
        if (n < 8 || n > 4096)
            throw std::invalid_argument(std::string(name) + " must be in [8, 4096], got " +
                                        std::to_string(n));
    }

    int nx_, ny_;
    std::vector<int> kx_, ky_;
    std::vector<double> kdx_, kdy_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(int nx, int ny) { return std::make_shared<const Grid>(nx, ny); }

}  // namespace obtoy
