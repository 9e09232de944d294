#pragma once

#include <cstddef>
#include <functional>

namespace biadmm {

/// Run fn(i) for i in [0, count) on up to `threads` workers. Tasks must be
/// independent; callers get determinism by writing results into per-index
/// slots. threads <= 1 runs inline.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace biadmm
