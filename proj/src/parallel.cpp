#include "jetframe/parallel.hpp"

#include <omp.h>

namespace jetframe {

int worker_count() { return omp_get_max_threads(); }

}  // namespace jetframe
