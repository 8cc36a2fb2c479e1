#include "xsb/synth.hpp"

namespace xsb {

namespace {

GridFunction make_delta(GridPtr grid, const shapes::Delta& s) {
    const FrequencyGrid& g = *grid;
    int ix = g.xi_index(s.xi1), iy = g.xi_index(s.xi2), l = g.tau_index(s.tau);
    if (!g.xi_in_range(ix) || !g.xi_in_range(iy) || !g.tau_in_range(l))
        throw RegionOutOfRangeError("delta location outside grid");
    GridFunction f(grid);
    f.set(g.flatten(ix, iy, l), 1.0);
    return f;
}

GridFunction make_bump(GridPtr grid, const shapes::GaussBump& s) {
    const FrequencyGrid& g = *grid;
    GridFunction f(grid);
    for (int ix = 0; ix < g.n_xi(); ++ix) {
        double dx1 = g.xi(ix) - s.c_xi1;
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double dx2 = g.xi(iy) - s.c_xi2;
            double qxi = (dx1 * dx1 + dx2 * dx2) / (2.0 * s.sigma_xi * s.sigma_xi);
            if (qxi > 80.0) continue;
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double dt = g.tau(l) - s.c_tau;
                double q = qxi + dt * dt / (2.0 * s.sigma_tau * s.sigma_tau);
                if (q > 80.0) continue;
                f.set(base + l, s.amplitude * std::exp(-q));
            }
        }
    }
    return f;
}

} // namespace

GridFunction synthesize(GridPtr grid, const ShapeSpec& shape) {
    return std::visit(
        [&](auto&& s) -> GridFunction {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shapes::Delta>) {
                return make_delta(grid, s);
            } else if constexpr (std::is_same_v<T, shapes::GaussBump>) {
                return make_bump(grid, s);
            } else if constexpr (std::is_same_v<T, shapes::ParabolaSlab>) {
                int j = s.j, dlo = s.d_lo, dhi = s.d_hi;
                return fill_where(grid, [=](double x1, double x2, double tau) {
                    if (annulus_of(x1, x2) != j) return false;
                    int d = modulation_shell_of(x1, x2, tau);
                    return d >= dlo && d <= dhi;
                });
            } else if constexpr (std::is_same_v<T, shapes::ReflectedSlab>) {
                int j = s.j;
                double hw = s.half_width;
                return fill_where(grid, [=](double x1, double x2, double tau) {
                    if (annulus_of(x1, x2) != j) return false;
                    return std::fabs(tau + x1 * x1 + x2 * x2) <= hw;
                });
            } else if constexpr (std::is_same_v<T, shapes::TauColumn>) {
                double bmax = s.xi_bracket_max, lo = s.tau_lo, hi = s.tau_hi;
                return fill_where(grid, [=](double x1, double x2, double tau) {
                    return jbracket(std::hypot(x1, x2)) < bmax && tau >= lo && tau <= hi;
                });
            } else {
                static_assert(std::is_same_v<T, shapes::RandomOnMask>);
                if (!s.mask) throw ConfigError("RandomOnMask: null mask");
                if (!s.mask->grid().same_layout(*grid))
                    throw ConfigError("RandomOnMask: mask grid mismatch");
                if (s.mask->empty())
                    throw RegionOutOfRangeError("random synthesis mask is empty");
                GridFunction f(grid);
                Rng rng(s.seed);
                const auto& bits = s.mask->bits();
                for (std::int64_t i = 0; i < std::int64_t(bits.size()); ++i) {
                    if (bits[std::size_t(i)]) f.set(i, 1.0 - rng.uniform()); // (0,1]
                }
                return f;
            }
        },
        shape);
}

} // namespace xsb
