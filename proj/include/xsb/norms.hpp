#ifndef XSB_NORMS_HPP
#define XSB_NORMS_HPP

#include <string>
#include <vector>

#include "xsb/grid.hpp"

namespace xsb {

enum class MixedNormKind { L2, L2xi_L1tau, Linf };

// Riemann-sum mixed Lebesgue norms with cell-center quadrature.
double mixed_norm(const GridFunction& f, MixedNormKind kind);

// Same, but with a cellwise multiplier applied on the fly (so no weighted
// copy of f is materialized). weight(x1,x2,tau) must be >= 0.
template <class W>
double weighted_l2(const GridFunction& f, W&& weight) {
    const FrequencyGrid& g = f.grid();
    double acc = 0.0;
    for (int ix = 0; ix < g.n_xi(); ++ix)
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double v = f.at(base + l);
                if (v == 0.0) continue;
                double wv = v * weight(g.xi(ix), g.xi(iy), g.tau(l));
                acc += wv * wv;
            }
        }
    return std::sqrt(acc * g.cell_volume());
}

// || <xi>^s f ||_{L2_xi L1_tau}, the energy-estimate left-hand side.
double weighted_l2l1_norm(const GridFunction& f, double s);

// Lower-half-plane penalty w(xi,tau) = max(1,-tau)^10 and its log2 form.
double weight_w(double tau);
double weight_w_log2(double tau);
inline constexpr double kWeightConvolutionConstant = 1024.0; // 2^10 in w(x+y) <= C w(x) w(y)

enum class SpaceKind { Xsb_direct, Xsb_dyadic, Xsb_besov, Ys, Zs_surrogate, Ws };

std::string space_kind_name(SpaceKind k);

struct SpaceSpec {
    SpaceKind kind;
    double s = -0.75;
    double b = 0.5; // used by the Xsb kinds; Zs/Ws fix b = 1/2
};

struct NormBreakdown {
    std::string kind;
    double s = 0, b = 0;
    double total = 0;
    std::vector<std::pair<int, double>> per_shell; // (annulus j, shell contribution)
    double part_K = 0, part_Kc = 0;                // Zs/Ws split

    // Term-resolved per-annulus data; enables exact recombination for the
    // sum-type norms where a single scalar per shell cannot.
    std::vector<double> besov_per_j;  // K-side or pure Besov/X terms
    std::vector<double> y_l2l1_per_j; // <xi>^s L2_xi L1_tau per annulus
    std::vector<double> y_l2_per_j;   // <(xi,tau)>^{s+1} L2 per annulus

    // Recomputes the total from the per-annulus data by the defining formula
    // of `kind`; equals `total` to roundoff.
    double recombine() const;
};

// Evaluates the requested norm. Ws applies w cellwise with overflow
// signalling. The boundary_warning flag is set when f touches the outermost
// annulus or tau rows of the grid.
NormBreakdown space_norm(const GridFunction& f, const SpaceSpec& spec);

bool touches_boundary(const GridFunction& f);

struct PastingReport {
    double zs = 0;
    double ys = 0;
    double besov = 0;
    double ratio_ys_over_zs = 0;    // meaningful for outer-supported f
    double ratio_besov_over_zs = 0; // meaningful for inner-supported f
    bool outer_precondition = false; // supp f within B_{>= 2j-100} (clamped)
    bool inner_precondition = false; // supp f within B_{<= 2j+100}
    bool clamped = false;            // some cutoff index was clamped at 0
};

// Ratios behind the two halves of the pasting relation at regularity s.
PastingReport pasting_check(const GridFunction& f, double s);

} // namespace xsb

#endif
