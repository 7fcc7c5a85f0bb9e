#include "spikesr/execution.hpp"

#ifdef SPIKESR_HAVE_OPENMP
#include <omp.h>
#endif

namespace spikesr {

Execution default_execution() noexcept {
#ifdef SPIKESR_HAVE_OPENMP
  return Execution::OpenMP;
#else
  return Execution::Serial;
#endif
}

int available_threads() noexcept {
#ifdef SPIKESR_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace spikesr
