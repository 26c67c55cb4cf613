#include "strata/parallel.hpp"

#include <cstdlib>
#include <string>

namespace strata {

int resolve_jobs(int requested) {
  if (requested >= 1) return requested;
  if (const char* env = std::getenv("STRATA_CONES_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace strata
