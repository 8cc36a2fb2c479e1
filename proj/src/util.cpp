#include "xsb/util.hpp"

#include <atomic>
#include <cstdio>
#include <thread>

namespace xsb {

void parallel_for(std::int64_t n, int workers, const std::function<void(std::int64_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    int nw = int(std::min<std::int64_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nw));
    std::atomic<std::int64_t> next{0};
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::int64_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace xsb
