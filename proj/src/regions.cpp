#include "xsb/regions.hpp"

#include <map>

namespace xsb {

std::string region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::A: return "A";
        case RegionKind::B: return "B";
        case RegionKind::C: return "C";
        case RegionKind::K: return "K";
        case RegionKind::Kprime: return "Kprime";
        case RegionKind::Complement: return "complement";
        case RegionKind::Intersection: return "intersection";
    }
    return "?";
}

RegionMask::RegionMask(GridPtr grid, RegionKind kind, int index, std::vector<std::uint8_t> bits)
    : grid_(std::move(grid)), kind_(kind), index_(index), bits_(std::move(bits)) {}

RegionMask::RegionMask(GridPtr grid, RegionKind kind, int index)
    : grid_(std::move(grid)), kind_(kind), index_(index) {
    const FrequencyGrid& g = *grid_;
    bits_.assign(std::size_t(g.cell_count()), 0);
    for (int ix = 0; ix < g.n_xi(); ++ix) {
        double x1 = g.xi(ix);
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double x2 = g.xi(iy);
            int j = annulus_of(x1, x2);
            double xi_sq = x1 * x1 + x2 * x2;
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double tau = g.tau(l);
                bool in = false;
                switch (kind) {
                    case RegionKind::A: in = (j == index); break;
                    case RegionKind::B:
                        in = (shell_index(jbracket(tau - xi_sq)) == index);
                        break;
                    case RegionKind::C: in = (tau_shell_of(tau) == index); break;
                    case RegionKind::K:
                        in = (shell_index(jbracket(tau - xi_sq)) <= 2 * j - 4);
                        break;
                    case RegionKind::Kprime:
                        in = (shell_index(jbracket(tau - xi_sq)) <= 2 * j + 4);
                        break;
                    default:
                        throw Error("region_mask: composite kinds are built via complement/intersection");
                }
                if (in) bits_[std::size_t(base + l)] = 1;
            }
        }
    }
}

RegionMask RegionMask::complement(const RegionMask& m) {
    std::vector<std::uint8_t> bits(m.bits_.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = m.bits_[i] ? 0 : 1;
    return RegionMask(m.grid_, RegionKind::Complement, m.index_, std::move(bits));
}

RegionMask RegionMask::intersection(const RegionMask& a, const RegionMask& b) {
    if (!a.grid_->same_layout(*b.grid_)) throw Error("mask intersection: grid mismatch");
    std::vector<std::uint8_t> bits(a.bits_.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (a.bits_[i] && b.bits_[i]) ? 1 : 0;
    return RegionMask(a.grid_, RegionKind::Intersection, -1, std::move(bits));
}

std::int64_t RegionMask::count() const {
    std::int64_t c = 0;
    for (auto b : bits_) c += b;
    return c;
}

std::vector<std::pair<std::int64_t, std::int64_t>> RegionMask::run_length_encode() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    std::int64_t n = std::int64_t(bits_.size());
    std::int64_t i = 0;
    while (i < n) {
        if (bits_[std::size_t(i)]) {
            std::int64_t start = i;
            while (i < n && bits_[std::size_t(i)]) ++i;
            runs.emplace_back(start, i - start);
        } else {
            ++i;
        }
    }
    return runs;
}

RegionMask region_mask(GridPtr grid, RegionKind kind, std::optional<int> index) {
    if (kind == RegionKind::A || kind == RegionKind::B || kind == RegionKind::C) {
        if (!index) throw ConfigError("region_mask: A/B/C kinds require an index");
        if (*index < 0) throw ConfigError("region_mask: index must be >= 0");
        return RegionMask(std::move(grid), kind, *index);
    }
    return RegionMask(std::move(grid), kind, index.value_or(-1));
}

DyadicDecomposition dyadic_decompose(const GridFunction& f, int jmax, int dmax) {
    const FrequencyGrid& g = f.grid();
    DyadicDecomposition out;
    std::map<std::pair<int, int>, double> sq;
    double overflow = 0.0, total = 0.0;
    for (int ix = 0; ix < g.n_xi(); ++ix) {
        double x1 = g.xi(ix);
        for (int iy = 0; iy < g.n_xi(); ++iy) {
            double x2 = g.xi(iy);
            int j = annulus_of(x1, x2);
            double xi_sq = x1 * x1 + x2 * x2;
            std::int64_t base = g.flatten(ix, iy, 0);
            for (int l = 0; l < g.n_tau(); ++l) {
                double v = f.at(base + l);
                if (v == 0.0) continue;
                double vv = v * v;
                total += vv;
                int d = shell_index(jbracket(g.tau(l) - xi_sq));
                if (j <= jmax && d <= dmax) sq[{j, d}] += vv;
                else overflow += vv;
            }
        }
    }
    double vol = g.cell_volume();
    for (auto& [jd, val] : sq)
        out.pieces.push_back({jd.first, jd.second, std::sqrt(val * vol)});
    out.overflow_sq = overflow * vol;
    out.total_l2 = std::sqrt(total * vol);
    return out;
}

} // namespace xsb
