#include "szego/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "szego/errors.hpp"

namespace szego {

int configure_threads_from_env() {
  if (const char* env = std::getenv("SZEGO_THREADS")) {
    const std::string s(env);
    std::size_t used = 0;
    long n = 0;
    try {
      n = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || n < 1 || n > 4096)
      throw ConfigInvalid("SZEGO_THREADS must be an integer >= 1, got '" + s + "'");
    omp_set_num_threads(static_cast<int>(n));
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace szego
