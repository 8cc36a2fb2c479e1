#include "xsb/norms.hpp"

#include <algorithm>
#include <cmath>

#include "xsb/regions.hpp"

namespace xsb {

double mixed_norm(const GridFunction& f, MixedNormKind kind) {
    const FrequencyGrid& g = f.grid();
    switch (kind) {
        case MixedNormKind::L2: {
            double acc = 0.0;
            for (double v : f.values()) acc += v * v;
            return std::sqrt(acc * g.cell_volume());
        }
        case MixedNormKind::L2xi_L1tau: {
            double acc = 0.0;
            for (int ix = 0; ix < g.n_xi(); ++ix)
                for (int iy = 0; iy < g.n_xi(); ++iy) {
                    std::int64_t base = g.flatten(ix, iy, 0);
                    double col = 0.0;
                    for (int l = 0; l < g.n_tau(); ++l) col += f.at(base + l);
                    col *= g.d_tau();
                    acc += col * col;
                }
            return std::sqrt(acc * g.d_xi() * g.d_xi());
        }
        case MixedNormKind::Linf: {
            double m = 0.0;
            for (double v : f.values()) m = std::max(m, v);
            return m;
        }
    }
    return 0.0;
}

double weighted_l2l1_norm(const GridFunction& f, double s) {
    const FrequencyGrid& g = f.grid();
    double acc = 0.0;
    for (int ix = 0; ix < g.n_xi(); ++ix)
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double xib = jbracket(std::hypot(g.xi(ix), g.xi(iy)));
            std::int64_t base = g.flatten(ix, iy, 0);
            double col = 0.0;
            for (int l = 0; l < g.n_tau(); ++l) col += f.at(base + l);
            if (col == 0.0) continue;
            double term = std::pow(xib, s) * col * g.d_tau();
            acc += term * term;
        }
    return std::sqrt(acc * g.d_xi() * g.d_xi());
}

double weight_w(double tau) {
    double base = std::max(1.0, -tau);
    double w = std::pow(base, 10.0);
    if (!std::isfinite(w)) throw WeightOverflowError("weight w overflow at tau");
    return w;
}

double weight_w_log2(double tau) { return 10.0 * std::log2(std::max(1.0, -tau)); }

std::string space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::Xsb_direct: return "Xsb_direct";
        case SpaceKind::Xsb_dyadic: return "Xsb_dyadic";
        case SpaceKind::Xsb_besov: return "Xsb_besov";
        case SpaceKind::Ys: return "Ys";
        case SpaceKind::Zs_surrogate: return "Zs_surrogate";
        case SpaceKind::Ws: return "Ws";
    }
    return "?";
}

namespace {

struct ShellTable {
    // squared L2 mass per (j, d), separately for K and K^c cells
    std::vector<std::vector<double>> k_sq, kc_sq;
    // Y^s ingredients on K^c cells
    std::vector<double> y_l2l1_sq;  // per j: sum over columns of (<xi>^s * tau-sum)^2 * d_xi^2
    std::vector<double> y_l2_sq;    // per j: sum of (<(xi,tau)>^{s+1} v)^2 * dV
    // direct-norm squared mass per j
    std::vector<double> direct_sq;
    int jmax = 0, dmax = 0;
};

void ensure_jd(std::vector<std::vector<double>>& t, int j, int d) {
    if (int(t.size()) <= j) t.resize(std::size_t(j + 1));
    if (int(t[std::size_t(j)].size()) <= d) t[std::size_t(j)].resize(std::size_t(d + 1), 0.0);
}
void ensure_j(std::vector<double>& t, int j) {
    if (int(t.size()) <= j) t.resize(std::size_t(j + 1), 0.0);
}

// One pass over f collecting everything any space norm needs. `apply_w`
// multiplies samples by w(tau) on the fly (Ws), with overflow signalling.
ShellTable scan(const GridFunction& f, double s, double b, bool apply_w) {
    const FrequencyGrid& g = f.grid();
    ShellTable t;
    double vol = g.cell_volume(), dxi2 = g.d_xi() * g.d_xi();
    for (int ix = 0; ix < g.n_xi(); ++ix) {
        double x1 = g.xi(ix);
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double x2 = g.xi(iy);
            double xi_sq = x1 * x1 + x2 * x2;
            double xib = jbracket(std::sqrt(xi_sq));
            int j = shell_index(xib);
            std::int64_t base = g.flatten(ix, iy, 0);
            double col_sum = 0.0; // K^c part of the column
            bool col_any = false;
            for (int l = 0; l < g.n_tau(); ++l) {
                double v = f.at(base + l);
                if (v == 0.0) continue;
                double tau = g.tau(l);
                if (apply_w) {
                    v *= weight_w(tau);
                    if (!std::isfinite(v))
                        throw WeightOverflowError("w*f exceeds representable range; shrink tau support");
                }
                double lam = tau - xi_sq;
                double lamb = jbracket(lam);
                int d = shell_index(lamb);
                double vv = v * v;
                ensure_j(t.direct_sq, j);
                {
                    double wd = std::pow(xib, s) * std::pow(lamb, b) * v;
                    t.direct_sq[std::size_t(j)] += wd * wd * vol;
                }
                if (d <= 2 * j - 4) {
                    ensure_jd(t.k_sq, j, d);
                    t.k_sq[std::size_t(j)][std::size_t(d)] += vv * vol;
                } else {
                    ensure_jd(t.kc_sq, j, d);
                    t.kc_sq[std::size_t(j)][std::size_t(d)] += vv * vol;
                    col_sum += v;
                    col_any = true;
                    double br = 1.0 + std::sqrt(std::fabs(tau) + xi_sq);
                    double wv = std::pow(br, s + 1.0) * v;
                    ensure_j(t.y_l2_sq, j);
                    t.y_l2_sq[std::size_t(j)] += wv * wv * vol;
                }
                t.jmax = std::max(t.jmax, j);
                t.dmax = std::max(t.dmax, d);
                if (!std::isfinite(t.direct_sq[std::size_t(j)]))
                    throw WeightOverflowError("norm accumulation overflow");
            }
            if (col_any) {
                double term = std::pow(xib, s) * col_sum * g.d_tau();
                ensure_j(t.y_l2l1_sq, j);
                t.y_l2l1_sq[std::size_t(j)] += term * term * dxi2;
            }
        }
    }
    return t;
}

double sum_all(const std::vector<std::vector<double>>& t) {
    double acc = 0.0;
    for (auto& row : t)
        for (double v : row) acc += v;
    return acc;
}

// per-annulus Besov terms 2^{sj} * sum_d 2^{bd} ||f_{j,d}||_2 over the given table
std::vector<double> besov_terms(const std::vector<std::vector<double>>& sq, double s, double b) {
    std::vector<double> out(sq.size(), 0.0);
    for (std::size_t j = 0; j < sq.size(); ++j) {
        double inner = 0.0;
        for (std::size_t d = 0; d < sq[j].size(); ++d)
            if (sq[j][d] > 0.0) inner += std::exp2(b * double(d)) * std::sqrt(sq[j][d]);
        out[j] = std::exp2(s * double(j)) * inner;
    }
    return out;
}

std::vector<double> dyadic_terms(const std::vector<std::vector<double>>& sq, double s, double b) {
    std::vector<double> out(sq.size(), 0.0);
    for (std::size_t j = 0; j < sq.size(); ++j) {
        double inner = 0.0;
        for (std::size_t d = 0; d < sq[j].size(); ++d)
            inner += std::exp2(2.0 * b * double(d)) * sq[j][d];
        out[j] = std::sqrt(std::exp2(2.0 * s * double(j)) * inner);
    }
    return out;
}

double l2_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

std::vector<std::vector<double>> merged(const std::vector<std::vector<double>>& a,
                                        const std::vector<std::vector<double>>& b) {
    std::vector<std::vector<double>> m = a;
    if (m.size() < b.size()) m.resize(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (m[j].size() < b[j].size()) m[j].resize(b[j].size(), 0.0);
        for (std::size_t d = 0; d < b[j].size(); ++d) m[j][d] += b[j][d];
    }
    return m;
}

std::vector<double> sqrt_each(std::vector<double> v) {
    for (double& x : v) x = std::sqrt(x);
    return v;
}

} // namespace

double NormBreakdown::recombine() const {
    if (kind == "Xsb_direct" || kind == "Xsb_dyadic" || kind == "Xsb_besov") {
        double acc = 0.0;
        for (auto& [j, c] : per_shell) acc += c * c;
        return std::sqrt(acc);
    }
    if (kind == "Ys") return l2_of(y_l2l1_per_j) + l2_of(y_l2_per_j);
    // Zs_surrogate / Ws
    return l2_of(besov_per_j) + l2_of(y_l2l1_per_j) + l2_of(y_l2_per_j);
}

NormBreakdown space_norm(const GridFunction& f, const SpaceSpec& spec) {
    NormBreakdown out;
    out.kind = space_kind_name(spec.kind);
    out.s = spec.s;
    bool zs_like = spec.kind == SpaceKind::Zs_surrogate || spec.kind == SpaceKind::Ws;
    out.b = zs_like ? 0.5 : spec.b;

    ShellTable t = scan(f, spec.s, out.b, spec.kind == SpaceKind::Ws);

    auto fill_shells = [&](const std::vector<double>& terms) {
        for (std::size_t j = 0; j < terms.size(); ++j)
            if (terms[j] != 0.0) out.per_shell.emplace_back(int(j), terms[j]);
    };

    switch (spec.kind) {
        case SpaceKind::Xsb_direct: {
            std::vector<double> terms = sqrt_each(t.direct_sq);
            fill_shells(terms);
            out.total = l2_of(terms);
            break;
        }
        case SpaceKind::Xsb_dyadic: {
            std::vector<double> terms = dyadic_terms(merged(t.k_sq, t.kc_sq), spec.s, out.b);
            fill_shells(terms);
            out.total = l2_of(terms);
            break;
        }
        case SpaceKind::Xsb_besov: {
            std::vector<double> terms = besov_terms(merged(t.k_sq, t.kc_sq), spec.s, out.b);
            fill_shells(terms);
            out.total = l2_of(terms);
            break;
        }
        case SpaceKind::Ys: {
            // Y^s of the whole f runs over all cells; the scan's Y
            // accumulators only saw K^c cells, so rescan when K mass exists.
            double k_mass = sum_all(t.k_sq);
            if (k_mass == 0.0) {
                out.y_l2l1_per_j = sqrt_each(t.y_l2l1_sq);
                out.y_l2_per_j = sqrt_each(t.y_l2_sq);
            } else {
                // full-function Y terms, computed directly
                const FrequencyGrid& g = f.grid();
                std::vector<double> l2l1_sq, l2_sq;
                double vol = g.cell_volume(), dxi2 = g.d_xi() * g.d_xi();
                for (int ix = 0; ix < g.n_xi(); ++ix) {
                    double x1 = g.xi(ix);
                    for (int iy = 0; iy < g.n_xi(); ++iy) {
                        double x2 = g.xi(iy);
                        double xi_sq = x1 * x1 + x2 * x2;
                        double xib = jbracket(std::sqrt(xi_sq));
                        int j = shell_index(xib);
                        std::int64_t base = g.flatten(ix, iy, 0);
                        double col = 0.0;
                        bool any = false;
                        for (int l = 0; l < g.n_tau(); ++l) {
                            double v = f.at(base + l);
                            if (v == 0.0) continue;
                            any = true;
                            col += v;
                            double br = 1.0 + std::sqrt(std::fabs(g.tau(l)) + xi_sq);
                            double wv = std::pow(br, spec.s + 1.0) * v;
                            ensure_j(l2_sq, j);
                            l2_sq[std::size_t(j)] += wv * wv * vol;
                        }
                        if (any) {
                            double term = std::pow(xib, spec.s) * col * g.d_tau();
                            ensure_j(l2l1_sq, j);
                            l2l1_sq[std::size_t(j)] += term * term * dxi2;
                        }
                    }
                }
                out.y_l2l1_per_j = sqrt_each(l2l1_sq);
                out.y_l2_per_j = sqrt_each(l2_sq);
            }
            std::size_t nj = std::max(out.y_l2l1_per_j.size(), out.y_l2_per_j.size());
            std::vector<double> terms(nj, 0.0);
            for (std::size_t j = 0; j < nj; ++j) {
                double a = j < out.y_l2l1_per_j.size() ? out.y_l2l1_per_j[j] : 0.0;
                double c = j < out.y_l2_per_j.size() ? out.y_l2_per_j[j] : 0.0;
                terms[j] = a + c;
            }
            fill_shells(terms);
            out.total = l2_of(out.y_l2l1_per_j) + l2_of(out.y_l2_per_j);
            break;
        }
        case SpaceKind::Zs_surrogate:
        case SpaceKind::Ws: {
            out.besov_per_j = besov_terms(t.k_sq, spec.s, 0.5);
            out.y_l2l1_per_j = sqrt_each(t.y_l2l1_sq);
            out.y_l2_per_j = sqrt_each(t.y_l2_sq);
            out.part_K = l2_of(out.besov_per_j);
            out.part_Kc = l2_of(out.y_l2l1_per_j) + l2_of(out.y_l2_per_j);
            out.total = out.part_K + out.part_Kc;
            std::size_t nj = std::max(out.besov_per_j.size(),
                                      std::max(out.y_l2l1_per_j.size(), out.y_l2_per_j.size()));
            std::vector<double> terms(nj, 0.0);
            for (std::size_t j = 0; j < nj; ++j) {
                double a = j < out.besov_per_j.size() ? out.besov_per_j[j] : 0.0;
                double b2 = j < out.y_l2l1_per_j.size() ? out.y_l2l1_per_j[j] : 0.0;
                double c = j < out.y_l2_per_j.size() ? out.y_l2_per_j[j] : 0.0;
                terms[j] = a + b2 + c;
            }
            fill_shells(terms);
            break;
        }
    }
    return out;
}

bool touches_boundary(const GridFunction& f) {
    const FrequencyGrid& g = f.grid();
    for (int ix = 0; ix < g.n_xi(); ++ix)
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            bool edge_xi = ix == 0 || iy == 0 || ix == g.n_xi() - 1 || iy == g.n_xi() - 1;
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                if (f.at(base + l) == 0.0) continue;
                if (edge_xi || l == 0 || l == g.n_tau() - 1) return true;
            }
        }
    return false;
}

PastingReport pasting_check(const GridFunction& f, double s) {
    if (s < -1.0 || s >= 0.0) throw ConfigError("pasting_check requires -1 <= s < 0");
    const FrequencyGrid& g = f.grid();
    PastingReport r;
    r.outer_precondition = true;
    r.inner_precondition = true;
    for (int ix = 0; ix < g.n_xi(); ++ix) {
        double x1 = g.xi(ix);
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double x2 = g.xi(iy);
            int j = annulus_of(x1, x2);
            double xi_sq = x1 * x1 + x2 * x2;
            int outer_cut = std::max(0, 2 * j - 100);
            int inner_cut = 2 * j + 100;
            if (2 * j - 100 < 0) r.clamped = true;
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                if (f.at(base + l) == 0.0) continue;
                int d = shell_index(jbracket(g.tau(l) - xi_sq));
                if (d < outer_cut) r.outer_precondition = false;
                if (d > inner_cut) r.inner_precondition = false;
            }
        }
    }
    if (!r.outer_precondition && !r.inner_precondition)
        throw RegionOutOfRangeError("pasting_check: support violates both half-region preconditions");
    r.zs = space_norm(f, {SpaceKind::Zs_surrogate, s}).total;
    r.ys = space_norm(f, {SpaceKind::Ys, s}).total;
    r.besov = space_norm(f, {SpaceKind::Xsb_besov, s, 0.5}).total;
    if (r.zs > 0) {
        r.ratio_ys_over_zs = r.ys / r.zs;
        r.ratio_besov_over_zs = r.besov / r.zs;
    }
    return r;
}

} // namespace xsb
