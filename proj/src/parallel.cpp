#include "nsse/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nsse {

unsigned thread_count_from_env() {
  unsigned n = 0;
  if (const char* env = std::getenv("NSSE_THREADS")) {
    try {
      n = static_cast<unsigned>(std::stoul(env));
    } catch (...) {
      n = 0;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

}  // namespace nsse
