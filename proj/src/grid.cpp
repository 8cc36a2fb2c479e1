#include "xsb/grid.hpp"

#include <cmath>
#include <sstream>

namespace xsb {

namespace {
// Dense storage cap: ~70M cells (~560 MB of doubles).
constexpr std::int64_t kMaxCells = 70'000'000;
} // namespace

FrequencyGrid::FrequencyGrid(int n_xi, int n_tau, double xi_max, double tau_max)
    : n_xi_(n_xi), n_tau_(n_tau), xi_max_(xi_max), tau_max_(tau_max) {
    if (!is_power_of_two(n_xi) || !is_power_of_two(n_tau))
        throw ConfigError("grid sizes must be powers of two");
    if (n_xi < 2 || n_tau < 2) throw ConfigError("grid sizes must be >= 2");
    if (!(xi_max > 0) || !(tau_max > 0)) throw ConfigError("grid extents must be positive");
    if (tau_max < xi_max * xi_max + 4.0) {
        std::ostringstream os;
        os << "parabola-clipping: tau_max = " << tau_max << " < xi_max^2 + 4 = "
           << xi_max * xi_max + 4.0;
        throw ParabolaClipError(os.str());
    }
    d_xi_ = 2.0 * xi_max / n_xi;
    d_tau_ = 2.0 * tau_max / n_tau;
    if (std::int64_t(n_xi) * n_xi * n_tau > kMaxCells)
        throw ConfigError("grid too large for dense storage");
}

GridPtr build_grid(int n_xi, int n_tau, double xi_max, double tau_max) {
    return std::make_shared<const FrequencyGrid>(n_xi, n_tau, xi_max, tau_max);
}

GridFunction::GridFunction(GridPtr grid)
    : grid_(std::move(grid)), values_(std::size_t(grid_->cell_count()), 0.0) {}

void GridFunction::set(std::int64_t idx, double v) {
    if (!(v >= 0.0)) {
        if (v > -1e-12) v = 0.0; // quadrature roundoff
        else throw Error("GridFunction values must be nonnegative");
    }
    values_[std::size_t(idx)] = v;
}

void GridFunction::add(std::int64_t idx, double v) {
    double nv = values_[std::size_t(idx)] + v;
    if (nv < 0.0) nv = 0.0;
    values_[std::size_t(idx)] = nv;
}

std::int64_t GridFunction::nonzero_count() const {
    std::int64_t c = 0;
    for (double v : values_)
        if (v != 0.0) ++c;
    return c;
}

double GridFunction::total_mass() const {
    double acc = 0.0;
    for (double v : values_) acc += v;
    return acc * grid_->cell_volume();
}

void GridFunction::scale(double c) {
    if (!(c >= 0.0)) throw Error("scale factor must be nonnegative");
    for (double& v : values_) v *= c;
}

void GridFunction::validate() const {
    for (double v : values_)
        if (!std::isfinite(v) || v < 0.0)
            throw Error("GridFunction invariant violated: values must be finite and >= 0");
}

} // namespace xsb
