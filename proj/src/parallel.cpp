#include "grassfault/parallel.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

namespace grassfault {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(n, threads > 1 ? static_cast<std::size_t>(threads) : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    // Workers record the first exception they hit; the caller rethrows the one
    // with the lowest index so failures are reported independently of the
    // thread count.
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> error_index(workers, std::numeric_limits<std::size_t>::max());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, w, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                    error_index[w] = i;
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::exception_ptr first;
    for (std::size_t w = 0; w < errors.size(); ++w) {
        if (errors[w] && error_index[w] < best) {
            best = error_index[w];
            first = errors[w];
        }
    }
    if (first) std::rethrow_exception(first);
}

}  // namespace grassfault
