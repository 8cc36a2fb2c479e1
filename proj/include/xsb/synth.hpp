#ifndef XSB_SYNTH_HPP
#define XSB_SYNTH_HPP

#include <cstdint>
#include <variant>

#include "xsb/grid.hpp"
#include "xsb/regions.hpp"

namespace xsb {

// Test-function catalog. Every synthesized function is nonnegative and
// deterministic (random shapes take an explicit seed).
namespace shapes {

struct Delta { // single cell nearest to (xi, tau), value 1
    double xi1, xi2, tau;
};

struct GaussBump { // exp(-|xi-c|^2/(2 sx^2) - (tau-ct)^2/(2 st^2))
    double c_xi1 = 0, c_xi2 = 0, c_tau = 0;
    double sigma_xi = 1, sigma_tau = 1;
    double amplitude = 1;
};

struct ParabolaSlab { // constant 1 on A_j cap B_{d_lo..d_hi}
    int j;
    int d_lo = 0, d_hi = 0;
};

struct ReflectedSlab { // constant 1 on cells of A_j with |tau + |xi|^2| <= half_width
    int j;
    double half_width = 2.0;
};

struct TauColumn { // constant 1 on cells with <xi> < xi_bracket_max, tau in [tau_lo, tau_hi]
    double xi_bracket_max = 2.0;
    double tau_lo, tau_hi;
};

struct RandomOnMask { // iid uniform(0,1] values on the mask cells
    const RegionMask* mask;
    std::uint64_t seed;
};

} // namespace shapes

using ShapeSpec = std::variant<shapes::Delta, shapes::GaussBump, shapes::ParabolaSlab,
                               shapes::ReflectedSlab, shapes::TauColumn, shapes::RandomOnMask>;

// Throws RegionOutOfRangeError when the requested support has no cells on
// this grid.
GridFunction synthesize(GridPtr grid, const ShapeSpec& shape);

// General helper shared by probes and lemma builders: constant value on all
// cells passing the predicate. Throws if the support is empty and
// require_nonempty is set.
template <class Pred>
GridFunction fill_where(GridPtr grid, Pred&& pred, double value = 1.0,
                        bool require_nonempty = true) {
    GridFunction f(grid);
    const FrequencyGrid& g = *grid;
    std::int64_t count = 0;
    for (int ix = 0; ix < g.n_xi(); ++ix) {
        double x1 = g.xi(ix);
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double x2 = g.xi(iy);
            for (int l = 0; l < g.n_tau(); ++l) {
                if (pred(x1, x2, g.tau(l))) {
                    f.set(g.flatten(ix, iy, l), value);
                    ++count;
                }
            }
        }
    }
    if (require_nonempty && count == 0)
        throw RegionOutOfRangeError("requested support is empty on this grid");
    return f;
}

} // namespace xsb

#endif
