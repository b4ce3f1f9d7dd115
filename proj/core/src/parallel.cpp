#include <cstdlib>
#include <string>

#include "dilcp/parallel.hpp"

namespace dilcp {

std::size_t default_workers() {
  if (const char* env = std::getenv("DILCP_WORKERS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
}

}  // namespace dilcp
