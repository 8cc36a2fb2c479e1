#ifndef XSB_GRID_HPP
#define XSB_GRID_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "xsb/errors.hpp"
#include "xsb/util.hpp"

namespace xsb {

// Uniform anisotropic lattice on [-xi_max, xi_max)^2 x [-tau_max, tau_max).
// Cell centers sit on the lattice xi_i = -xi_max + i*d_xi (the origin is a
// center), so sums of two centers are again centers of the doubled grid --
// convolution bookkeeping stays exact.
class FrequencyGrid {
public:
    FrequencyGrid(int n_xi, int n_tau, double xi_max, double tau_max);

    int n_xi() const { return n_xi_; }
    int n_tau() const { return n_tau_; }
    double xi_max() const { return xi_max_; }
    double tau_max() const { return tau_max_; }
    double d_xi() const { return d_xi_; }
    double d_tau() const { return d_tau_; }
    double cell_volume() const { return d_xi_ * d_xi_ * d_tau_; }

    double xi(int i) const { return -xi_max_ + i * d_xi_; }
    double tau(int l) const { return -tau_max_ + l * d_tau_; }

    // Nearest lattice index; may fall outside [0,n).
    int xi_index(double x) const { return int(std::lround((x + xi_max_) / d_xi_)); }
    int tau_index(double t) const { return int(std::lround((t + tau_max_) / d_tau_)); }
    bool xi_in_range(int i) const { return i >= 0 && i < n_xi_; }
    bool tau_in_range(int l) const { return l >= 0 && l < n_tau_; }

    std::int64_t cell_count() const {
        return std::int64_t(n_xi_) * n_xi_ * n_tau_;
    }
    std::int64_t flatten(int ix, int iy, int l) const {
        return (std::int64_t(ix) * n_xi_ + iy) * n_tau_ + l;
    }
    void unflatten(std::int64_t idx, int& ix, int& iy, int& l) const {
        l = int(idx % n_tau_);
        idx /= n_tau_;
        iy = int(idx % n_xi_);
        ix = int(idx / n_xi_);
    }

    bool same_layout(const FrequencyGrid& o) const {
        return n_xi_ == o.n_xi_ && n_tau_ == o.n_tau_ && xi_max_ == o.xi_max_ &&
               tau_max_ == o.tau_max_;
    }

private:
    int n_xi_, n_tau_;
    double xi_max_, tau_max_, d_xi_, d_tau_;
};

using GridPtr = std::shared_ptr<const FrequencyGrid>;

GridPtr build_grid(int n_xi, int n_tau, double xi_max, double tau_max);

// Nonnegative real samples on a FrequencyGrid. The artifact works with |f|
// throughout; signed/complex data never reaches this type.
class GridFunction {
public:
    explicit GridFunction(GridPtr grid);

    const FrequencyGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }

    double at(std::int64_t idx) const { return values_[std::size_t(idx)]; }
    double at(int ix, int iy, int l) const { return values_[std::size_t(grid_->flatten(ix, iy, l))]; }
    void set(std::int64_t idx, double v);
    void add(std::int64_t idx, double v);

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    std::int64_t nonzero_count() const;
    double total_mass() const; // sum(v) * cell_volume
    void scale(double c);      // c >= 0

    // Throws if any value is negative beyond roundoff or non-finite.
    void validate() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

} // namespace xsb

#endif
