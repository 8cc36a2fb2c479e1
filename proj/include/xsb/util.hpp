#ifndef XSB_UTIL_HPP
#define XSB_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace xsb {

inline bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Japanese bracket <a> = 1 + |a|.
inline double jbracket(double a) { return 1.0 + std::fabs(a); }

// Dyadic shell index of x >= 1: largest e with 2^e <= x.
inline int shell_index(double x) { return std::ilogb(x); }

// Deterministic splittable RNG. We avoid std distributions so that streams
// are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) { // inclusive ends
        return lo + std::int64_t(next_u64() % std::uint64_t(hi - lo + 1));
    }

    double normal() {
        // Box-Muller; deterministic
        double u1 = uniform(), u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    Rng split() { return Rng(next_u64() ^ 0xd1b54a32d192ed03ULL); }

private:
    std::uint64_t state_;
};

// Run fn(i) for i in [0,n) on `workers` threads, preserving result order.
void parallel_for(std::int64_t n, int workers, const std::function<void(std::int64_t)>& fn);

// Fixed-width float formatting used by every CSV/plotdata writer so that
// identical runs emit identical bytes.
std::string format_double(double v);

} // namespace xsb

#endif
