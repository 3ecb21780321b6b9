#pragma once

namespace moyal {

// Caps the OpenMP thread count from MOYAL_SPIN_THREADS when it holds a
// positive integer. Returns the resulting maximum.
int configure_threads_from_env();

int max_threads();

}  // namespace moyal
