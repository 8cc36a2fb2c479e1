#ifndef XSB_BILINEAR_HPP
#define XSB_BILINEAR_HPP

#include "xsb/grid.hpp"
#include "xsb/norms.hpp"

namespace xsb {

enum class ConvolvePath { Auto, Fft, Direct };

struct ConvolveOptions {
    ConvolvePath path = ConvolvePath::Auto;
    // Fraction of |f*g| mass allowed to fall outside the grid before
    // signalling support-overflow. The convolution is linear (zero-padded),
    // never circular, so escaped mass is detected exactly.
    double crop_threshold = 1e-6;
};

struct ConvolveResult {
    GridFunction value;
    double cropped_fraction = 0.0;
};

// Space-time convolution with quadrature scaling d_xi^2 * d_tau, so the
// discrete result approximates the integral convolution. Throws
// SupportOverflowError when cropped mass exceeds the threshold.
ConvolveResult convolve_full(const GridFunction& f, const GridFunction& g,
                             const ConvolveOptions& opts = {});

inline GridFunction convolve(const GridFunction& f, const GridFunction& g,
                             const ConvolveOptions& opts = {}) {
    return convolve_full(f, g, opts).value;
}

// Cellwise multiplication by 1/<tau - |xi|^2>.
GridFunction duhamel_apply(const GridFunction& h);

// B(f,g) = w * <tau-|xi|^2>^{-1} ((f/w) * (g/w)).
GridFunction bilinear_map(const GridFunction& f, const GridFunction& g,
                          const ConvolveOptions& opts = {});

struct EstimateRatio {
    double ratio = 0.0;
    NormBreakdown numerator;   // Zs-surrogate breakdown of B(f,g)
    double denom_f = 0.0, denom_g = 0.0;
    double cropped_fraction = 0.0;
};

// R = ||B(f,g)||_{Zs-surrogate} / (||f||_{Zs-surrogate} ||g||_{Zs-surrogate}).
EstimateRatio estimate_ratio(const GridFunction& f, const GridFunction& g, double s,
                             const ConvolveOptions& opts = {});

// Cellwise division / multiplication by the weight w (log-safe: w >= 1).
GridFunction divide_by_w(const GridFunction& f);
GridFunction multiply_by_w(const GridFunction& f);

} // namespace xsb

#endif
