#include "lpns/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lpns {

int thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("LPNS_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) return std::min(hw, cap);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return hw;
}

}  // namespace lpns
