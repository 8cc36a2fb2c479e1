#ifndef XSB_REGIONS_HPP
#define XSB_REGIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "xsb/grid.hpp"

namespace xsb {

// Point classifiers (cell-center membership). All shells are indexed from 0;
// indices coming out negative in K-style cutoffs are clamped by the callers.
inline int annulus_of(double xi1, double xi2) {
    return shell_index(jbracket(std::hypot(xi1, xi2)));
}
inline double modulation(double xi1, double xi2, double tau) {
    return tau - (xi1 * xi1 + xi2 * xi2);
}
inline int modulation_shell_of(double xi1, double xi2, double tau) {
    return shell_index(jbracket(modulation(xi1, xi2, tau)));
}
inline int tau_shell_of(double tau) { return shell_index(jbracket(tau)); }

// K = union over j of A_j x B_{<= 2j-4}; K' relaxes the cutoff to 2j+4.
inline bool in_K(double xi1, double xi2, double tau) {
    int j = annulus_of(xi1, xi2);
    int d = modulation_shell_of(xi1, xi2, tau);
    return d <= 2 * j - 4;
}
inline bool in_Kprime(double xi1, double xi2, double tau) {
    int j = annulus_of(xi1, xi2);
    int d = modulation_shell_of(xi1, xi2, tau);
    return d <= 2 * j + 4;
}

enum class RegionKind { A, B, C, K, Kprime, Complement, Intersection };

std::string region_kind_name(RegionKind k);

class RegionMask {
public:
    RegionMask(GridPtr grid, RegionKind kind, int index);

    static RegionMask complement(const RegionMask& m);
    static RegionMask intersection(const RegionMask& a, const RegionMask& b);

    const FrequencyGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    RegionKind kind() const { return kind_; }
    int index() const { return index_; }

    bool test(std::int64_t idx) const { return bits_[std::size_t(idx)] != 0; }
    std::int64_t count() const;
    bool empty() const { return count() == 0; }

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    // Run-length encoding over the flattened index space: rows (start, len).
    std::vector<std::pair<std::int64_t, std::int64_t>> run_length_encode() const;

private:
    RegionMask(GridPtr grid, RegionKind kind, int index, std::vector<std::uint8_t> bits);
    GridPtr grid_;
    RegionKind kind_;
    int index_;
    std::vector<std::uint8_t> bits_;
};

// index is required for A/B/C and ignored for K/K'. An empty result is legal
// (callers that need support should check and warn).
RegionMask region_mask(GridPtr grid, RegionKind kind, std::optional<int> index = std::nullopt);

struct DyadicPiece {
    int j, d;
    double l2_norm;
};

// Norms of the restrictions f_{j,d} = chi_{A_j cap B_d} f up to the given
// depth. Pieces with indices past the depth are folded into the overflow sum
// so the Pythagorean identity stays exact.
struct DyadicDecomposition {
    std::vector<DyadicPiece> pieces;
    double overflow_sq = 0.0; // squared L2 mass beyond (jmax, dmax)
    double total_l2 = 0.0;
};

DyadicDecomposition dyadic_decompose(const GridFunction& f, int jmax, int dmax);

} // namespace xsb

#endif
