#include "equisched/caps.hpp"

#include <cstdlib>
#include <string>

namespace equisched {

const Caps& Caps::defaults() {
  static const Caps caps = [] {
    Caps c;
    if (const char* env = std::getenv("EQUISCHED_CAP")) {
      try {
        long long v = std::stoll(env);
        if (v > 0) {
          c.table_cells = v;
          c.search_nodes = v;
        }
      } catch (const std::exception&) {
        // ignore malformed values, keep defaults
      }
    }
    return c;
  }();
  return caps;
}

}  // namespace equisched
