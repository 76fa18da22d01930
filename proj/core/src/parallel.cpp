#include "wellposed/parallel.hpp"

#include <cstdlib>
#include <string>

namespace wellposed {

unsigned worker_count() {
  if (const char* env = std::getenv("WELLPOSED_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to auto
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace wellposed
