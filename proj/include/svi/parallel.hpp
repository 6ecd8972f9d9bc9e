#ifndef SVI_PARALLEL_HPP
#define SVI_PARALLEL_HPP

#include <functional>

#include "svi/types.hpp"

namespace svi {

/// Worker cap for parallel loops (CLI --jobs). Default 1.
void set_max_workers(int jobs);
int max_workers();

/// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
/// results are identical for any worker count.
void parallel_for(Index n, const std::function<void(Index)>& fn);

} // namespace svi

#endif
