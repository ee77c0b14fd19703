#include "infnc/limits.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

#include "infnc/error.hpp"

namespace infnc {

const EnumerationCaps& enumeration_caps() {
  static const EnumerationCaps caps = [] {
    EnumerationCaps c;
    if (const char* env = std::getenv("INFNC_MAX_N"); env && *env) {
      int v = std::atoi(env);
      if (v > 0) {
        std::cerr << "warning: INFNC_MAX_N=" << v << " overrides the enumeration caps\n";
        c.nc = c.annular = c.all_through = v;
      }
    }
    return c;
  }();
  return caps;
}

void require_within_cap(const char* what, int n, int cap) {
  if (n > cap)
    throw CapExceeded(std::string(what) + ": n=" + std::to_string(n) + " exceeds the cap " +
                      std::to_string(cap) + " (set INFNC_MAX_N to override)");
}

}  // namespace infnc
