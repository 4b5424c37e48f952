#pragma once

#include <cstddef>
#include <functional>

namespace grassfault {

// Runs fn(i) for i in [0, n) over at most `threads` workers using a static
// block partition. Each index must write only its own output slot, which
// keeps results identical for any thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace grassfault
