#include "knotscope/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace knotscope {

unsigned default_threads() {
  if (const char* env = std::getenv("KNOTSCOPE_THREADS")) {
    std::string_view s(env);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace knotscope
