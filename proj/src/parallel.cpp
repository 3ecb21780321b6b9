#include "moyal/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace moyal {

int configure_threads_from_env() {
  if (const char* v = std::getenv("MOYAL_SPIN_THREADS")) {
    try {
      const int n = std::stoi(v);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace moyal
