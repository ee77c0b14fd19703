#pragma once

namespace infnc {

// Enumeration caps. INFNC_MAX_N, when set, replaces every default cap and a
// warning is printed once to stderr.
struct EnumerationCaps {
  int nc = 12;
  int annular = 8;
  int all_through = 10;
};

const EnumerationCaps& enumeration_caps();

// Throws CapExceeded when n > cap.
void require_within_cap(const char* what, int n, int cap);

}  // namespace infnc
