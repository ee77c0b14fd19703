// Published values used as golden data.
#pragma once

#include <utility>
#include <vector>

#include "infnc/polynomial.hpp"

namespace reference {

using Row = std::vector<std::pair<long, std::vector<int>>>;

inline infnc::Polynomial polynomial(const Row& row) {
  infnc::Polynomial p;
  for (const auto& [c, m] : row) p.add_term(m, c);
  return p;
}

// kappa_dot_n of a single symmetric variable in terms of its moments m_i.
inline const std::vector<Row>& kappa_dot_moment_rows() {
  static const std::vector<Row> rows = {
      {},
      {},
      {{1, {2}}, {-1, {1, 1}}},
      {{3, {3}}, {-9, {1, 2}}, {6, {1, 1, 1}}},
      {{6, {4}}, {-24, {1, 3}}, {-11, {2, 2}}, {58, {1, 1, 2}}, {-29, {1, 1, 1, 1}}},
      {{10, {5}}, {-50, {1, 4}}, {-45, {2, 3}}, {145, {1, 1, 3}}, {135, {1, 2, 2}},
       {-325, {1, 1, 1, 2}}, {130, {1, 1, 1, 1, 1}}},
      {{15, {6}}, {-90, {1, 5}}, {-81, {2, 4}}, {306, {1, 1, 4}}, {-39, {3, 3}},
       {558, {1, 2, 3}}, {-780, {1, 1, 1, 3}}, {88, {2, 2, 2}}, {-1101, {1, 1, 2, 2}},
       {1686, {1, 1, 1, 1, 2}}, {-562, {1, 1, 1, 1, 1, 1}}},
  };
  return rows;
}

// kappa_dot_n of a single symmetric variable in terms of its free cumulants.
inline const std::vector<Row>& kappa_dot_cumulant_rows() {
  static const std::vector<Row> rows = {
      {},
      {},
      {{1, {2}}},
      {{3, {3}}},
      {{6, {4}}, {1, {2, 2}}},
      {{10, {5}}, {5, {2, 3}}},
      {{15, {6}}, {9, {2, 4}}, {6, {3, 3}}, {1, {2, 2, 2}}},
      {{21, {7}}, {14, {2, 5}}, {21, {3, 4}}, {7, {2, 2, 3}}},
      {{28, {8}}, {20, {2, 6}}, {32, {3, 5}}, {18, {4, 4}}, {12, {2, 2, 4}}, {1, {2, 2, 2, 2}}},
      {{36, {9}}, {27, {2, 7}}, {45, {3, 6}}, {54, {4, 5}}, {18, {2, 2, 5}}, {54, {2, 3, 4}},
       {12, {3, 3, 3}}, {9, {2, 2, 2, 3}}},
      {{45, {10}}, {35, {2, 8}}, {60, {3, 7}}, {75, {4, 6}}, {25, {2, 2, 6}}, {40, {5, 5}},
       {80, {2, 3, 5}}, {45, {2, 4, 4}}, {60, {3, 3, 4}}, {15, {2, 2, 2, 4}}, {30, {2, 2, 3, 3}},
       {1, {2, 2, 2, 2, 2}}},
  };
  return rows;
}

// The printed n = 8 row lacks this term. Without it the coefficients sum to
// 111, not |S^{delta,a}(8)| = 127, and the generating function disagrees.
inline constexpr int omission_n = 8;
inline const Row& published_omission() {
  static const Row row{{16, {2, 3, 3}}};
  return row;
}

// Infinitesimal moments of the GOE limit: tau'(s^2), tau'(s^4), tau'(s^6).
inline constexpr long goe_tau_prime[] = {0, 0, 1, 0, 5, 0, 22};

}  // namespace reference
