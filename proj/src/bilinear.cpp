#include "xsb/bilinear.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "xsb/regions.hpp"

namespace xsb {

namespace {

std::mutex g_fftw_mutex; // FFTW planning is not thread-safe

struct SparseCell {
    int ix, iy, l;
    double v;
};

std::vector<SparseCell> nonzeros(const GridFunction& f) {
    const FrequencyGrid& g = f.grid();
    std::vector<SparseCell> out;
    for (int ix = 0; ix < g.n_xi(); ++ix)
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double v = f.at(base + l);
                if (v != 0.0) out.push_back({ix, iy, l, v});
            }
        }
    return out;
}

// Direct O(nnz_f * nnz_g) summation. Output index k = i + j - n/2 per axis.
ConvolveResult convolve_direct(const GridFunction& f, const GridFunction& g,
                               const ConvolveOptions& opts) {
    const FrequencyGrid& gr = f.grid();
    int n = gr.n_xi(), nt = gr.n_tau();
    auto fs = nonzeros(f);
    auto gs = nonzeros(g);
    GridFunction out(f.grid_ptr());
    double scale = gr.cell_volume();
    double kept = 0.0, cropped = 0.0;
    for (const auto& a : fs)
        for (const auto& b : gs) {
            int ox = a.ix + b.ix - n / 2;
            int oy = a.iy + b.iy - n / 2;
            int ol = a.l + b.l - nt / 2;
            double m = a.v * b.v * scale;
            if (ox >= 0 && ox < n && oy >= 0 && oy < n && ol >= 0 && ol < nt) {
                out.add(gr.flatten(ox, oy, ol), m);
                kept += m;
            } else {
                cropped += m;
            }
        }
    double total = kept + cropped;
    double frac = total > 0 ? cropped / total : 0.0;
    if (frac > opts.crop_threshold)
        throw SupportOverflowError("convolution support overflow", frac);
    return {std::move(out), frac};
}

ConvolveResult convolve_fft(const GridFunction& f, const GridFunction& g,
                            const ConvolveOptions& opts) {
    const FrequencyGrid& gr = f.grid();
    int n = gr.n_xi(), nt = gr.n_tau();
    int pn = 2 * n, pt = 2 * nt;
    std::int64_t real_count = std::int64_t(pn) * pn * pt;
    std::int64_t cplx_count = std::int64_t(pn) * pn * (pt / 2 + 1);

    auto real_at = [&](double* buf, int x, int y, int t) -> double& {
        return buf[(std::int64_t(x) * pn + y) * pt + t];
    };

    double* a = fftw_alloc_real(std::size_t(real_count));
    double* b = fftw_alloc_real(std::size_t(real_count));
    fftw_complex* fa = fftw_alloc_complex(std::size_t(cplx_count));
    fftw_complex* fb = fftw_alloc_complex(std::size_t(cplx_count));
    if (!a || !b || !fa || !fb) throw Error("fftw allocation failed");
    std::memset(a, 0, std::size_t(real_count) * sizeof(double));
    std::memset(b, 0, std::size_t(real_count) * sizeof(double));

    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            std::int64_t base = gr.flatten(ix, iy, 0);
            for (int l = 0; l < nt; ++l) {
                double vf = f.at(base + l), vg = g.at(base + l);
                if (vf != 0.0) real_at(a, ix, iy, l) = vf;
                if (vg != 0.0) real_at(b, ix, iy, l) = vg;
            }
        }

    fftw_plan pf, pb, pinv;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        pf = fftw_plan_dft_r2c_3d(pn, pn, pt, a, fa, FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_3d(pn, pn, pt, b, fb, FFTW_ESTIMATE);
        pinv = fftw_plan_dft_c2r_3d(pn, pn, pt, fa, a, FFTW_ESTIMATE);
    }
    fftw_execute(pf);
    fftw_execute(pb);
    for (std::int64_t i = 0; i < cplx_count; ++i) {
        double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
        double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
        fa[i][0] = re;
        fa[i][1] = im;
    }
    fftw_execute(pinv);

    double scale = gr.cell_volume() / double(real_count);
    GridFunction out(f.grid_ptr());
    double kept = 0.0, cropped = 0.0;
    // padded conv index p corresponds to output index k = p - n/2 (per axis)
    for (int px = 0; px < pn; ++px) {
        int ox = px - n / 2;
        bool x_in = ox >= 0 && ox < n;
        for (int py = 0; py < pn; ++py) {
            int oy = py - n / 2;
            bool y_in = x_in && oy >= 0 && oy < n;
            for (int ptau = 0; ptau < pt; ++ptau) {
                double v = real_at(a, px, py, ptau) * scale;
                if (std::fabs(v) < 1e-300) continue;
                int ol = ptau - nt / 2;
                if (y_in && ol >= 0 && ol < nt) {
                    if (v < 0.0) v = 0.0; // FFT roundoff noise
                    if (v != 0.0) out.add(gr.flatten(ox, oy, ol), v);
                    kept += v;
                } else {
                    cropped += std::fabs(v);
                }
            }
        }
    }
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(pf);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pinv);
    }
    fftw_free(a);
    fftw_free(b);
    fftw_free(fa);
    fftw_free(fb);

    double total = kept + cropped;
    double frac = total > 0 ? cropped / total : 0.0;
    if (frac > opts.crop_threshold)
        throw SupportOverflowError("convolution support overflow", frac);
    return {std::move(out), frac};
}

} // namespace

ConvolveResult convolve_full(const GridFunction& f, const GridFunction& g,
                             const ConvolveOptions& opts) {
    if (!f.grid().same_layout(g.grid())) throw Error("convolve: grid mismatch");
    ConvolvePath path = opts.path;
    if (path == ConvolvePath::Auto) {
        std::int64_t nf = f.nonzero_count(), ng = g.nonzero_count();
        // direct wins when the pair count is small relative to an FFT of the
        // doubled grid
        double fft_cost = 6.0 * double(f.grid().cell_count()) * 8.0;
        path = (double(nf) * double(ng) < fft_cost) ? ConvolvePath::Direct : ConvolvePath::Fft;
    }
    return path == ConvolvePath::Direct ? convolve_direct(f, g, opts) : convolve_fft(f, g, opts);
}

GridFunction duhamel_apply(const GridFunction& h) {
    const FrequencyGrid& g = h.grid();
    GridFunction out(h.grid_ptr());
    for (int ix = 0; ix < g.n_xi(); ++ix) {
        double x1 = g.xi(ix);
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double xi_sq = x1 * x1 + g.xi(iy) * g.xi(iy);
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double v = h.at(base + l);
                if (v == 0.0) continue;
                out.set(base + l, v / jbracket(g.tau(l) - xi_sq));
            }
        }
    }
    return out;
}

GridFunction divide_by_w(const GridFunction& f) {
    const FrequencyGrid& g = f.grid();
    GridFunction out(f.grid_ptr());
    for (int ix = 0; ix < g.n_xi(); ++ix)
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double v = f.at(base + l);
                if (v == 0.0) continue;
                out.set(base + l, v / weight_w(g.tau(l)));
            }
        }
    return out;
}

GridFunction multiply_by_w(const GridFunction& f) {
    const FrequencyGrid& g = f.grid();
    GridFunction out(f.grid_ptr());
    for (int ix = 0; ix < g.n_xi(); ++ix)
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double v = f.at(base + l);
                if (v == 0.0) continue;
                double wv = v * weight_w(g.tau(l));
                if (!std::isfinite(wv))
                    throw WeightOverflowError("w*f exceeds representable range");
                out.set(base + l, wv);
            }
        }
    return out;
}

GridFunction bilinear_map(const GridFunction& f, const GridFunction& g,
                          const ConvolveOptions& opts) {
    GridFunction conv = convolve(divide_by_w(f), divide_by_w(g), opts);
    return multiply_by_w(duhamel_apply(conv));
}

EstimateRatio estimate_ratio(const GridFunction& f, const GridFunction& g, double s,
                             const ConvolveOptions& opts) {
    EstimateRatio r;
    r.denom_f = space_norm(f, {SpaceKind::Zs_surrogate, s}).total;
    r.denom_g = space_norm(g, {SpaceKind::Zs_surrogate, s}).total;
    if (r.denom_f == 0.0 || r.denom_g == 0.0)
        throw Error("estimate_ratio: input norm is zero");
    ConvolveResult conv = convolve_full(divide_by_w(f), divide_by_w(g), opts);
    r.cropped_fraction = conv.cropped_fraction;
    GridFunction b = multiply_by_w(duhamel_apply(conv.value));
    r.numerator = space_norm(b, {SpaceKind::Zs_surrogate, s});
    r.ratio = r.numerator.total / (r.denom_f * r.denom_g);
    return r;
}

} // namespace xsb
