#include "koszul/parallel.hpp"

#include <cstdlib>
#include <string>

namespace koszul {

std::size_t thread_count() {
  if (const char* env = std::getenv("KOSZUL_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace koszul
