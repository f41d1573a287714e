#pragma once

namespace szego {

/// Applies SZEGO_THREADS (integer >= 1) to the OpenMP pool if set and returns
/// the thread count in effect. Throws ConfigInvalid on a malformed value.
int configure_threads_from_env();

int max_threads();

}  // namespace szego
