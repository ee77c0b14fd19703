#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "infnc/annular.hpp"
#include "infnc/cumulants.hpp"
#include "infnc/partition.hpp"
#include "infnc/perm.hpp"

namespace infnc {

// Grouping of m letters into products A_l = a_{I_l} with |I_l| = m_l.
class GroupingSpec {
 public:
  explicit GroupingSpec(std::vector<int> parts);
  // "2,2,1"
  static GroupingSpec parse(const std::string& text);

  const std::vector<int>& parts() const { return parts_; }
  int r() const { return static_cast<int>(parts_.size()); }
  int m() const { return m_; }

  // M = {m1, m1 + m2, ..., m}, increasing.
  const std::vector<int>& last_points() const { return last_; }
  // M followed by -M.
  std::vector<int> signed_last_points() const;
  // psi(k) = m1 + ... + mk, psi(-k) = -psi(k)
  int psi(int k) const;
  Block interval(int l) const;

  Permutation gamma() const;
  Partition intervals() const;
  // pi in NC(r) blown up to pi_m in NC(m).
  Partition blow_up(const Partition& pi) const;

  // A restriction to M (or ±M) pulled back along psi to [r] (or [±r]).
  Permutation pull_back(const SubsetPermutation& p) const;
  SignedPermutation pull_back_signed(const SubsetPermutation& p) const;

  std::string str() const;

 private:
  std::vector<int> parts_;
  std::vector<int> last_;
  int m_ = 0;
};

// K(pi) = pi^-1 gamma_m separates M.
bool kreweras_separates(const Partition& pi, const GroupingSpec& g);
// K^delta(sigma) separates ±M.
bool kdelta_separates(const SignedPermutation& sigma, const GroupingSpec& g);

// kappa_r(A_1, ..., A_r): sum of kappa_rho over rho in NC(m) with
// rho v gamma_m = 1_m.
Rational product_cumulant(const GroupingSpec& g, const Entries& letters, const Cumulants& c);

// The surviving index sets of the real product rule and their contributions.
struct ProductTerms {
  Rational value = 0;
  Rational partition_part = 0;
  Rational annular_part = 0;
  std::vector<Partition> partitions;
  std::vector<AnnularSymPermutation> annular;

  nlohmann::json to_json() const;
};

// kappa'_r(A_1, ..., A_r) = sum over pi in NC(m) with K(pi) sep. M of dkappa_pi
// plus sum over sigma in S_NC^delta(m,-m) with K^delta(sigma) sep. ±M of
// kappa_sigma_half.
ProductTerms product_cumulant_prime_terms(const GroupingSpec& g, const Entries& letters,
                                          const Cumulants& c);
Rational product_cumulant_prime(const GroupingSpec& g, const Entries& letters,
                                const Cumulants& c);
// First sum only, over pi v gamma_m = 1_m.
Rational complex_product_cumulant_prime(const GroupingSpec& g, const Entries& letters,
                                        const Cumulants& c);

// (0_tau, tau) <= (U, beta) as partitioned permutations of [±m]: the cycles of
// tau and beta generate U and |tau| + |tau^-1 beta| = 2|U| - |beta|, where
// |U| is 2m minus the number of blocks.
bool partitioned_below(const SignedPermutation& tau, const Partition& U,
                       const SignedPermutation& beta);

// U_V: the cycles of delta pi_m^-1 delta pi_m with V_m and -V_m joined.
Partition joined_blocks(const Partition& pi_m, const Block& v_m);

// Checks of the index set decompositions behind the product rule. Every
// mismatch is recorded in failures.
struct DecompositionReport {
  std::vector<int> parts;
  int nc_total = 0, n1 = 0, n2 = 0, n2_tilde = 0;
  int sncd_total = 0, s1 = 0, s2 = 0, s3 = 0, s2_tilde = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

DecompositionReport decomposition_check(const GroupingSpec& g);

}  // namespace infnc
