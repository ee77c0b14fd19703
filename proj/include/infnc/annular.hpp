#pragma once

#include <compare>
#include <string>
#include <vector>

#include "infnc/partition.hpp"
#include "infnc/perm.hpp"

namespace infnc {

// Element of S_NC^delta(n,-n): a permutation sigma of [±n] that is
// non-crossing on the (n,-n)-annulus, connects both circles, and for which
// sigma * delta is a pairing.
class AnnularSymPermutation {
 public:
  // Throws Error if sigma fails any of the three conditions.
  explicit AnnularSymPermutation(SignedPermutation sigma);

  static bool is_member(const SignedPermutation& sigma);

  const SignedPermutation& permutation() const { return sigma_; }
  int n() const { return sigma_.n(); }
  CycleList cycles() const { return sigma_.cycles(); }
  std::string str() const { return sigma_.str(); }
  bool all_through() const;
  bool is_pairing() const;

  auto operator<=>(const AnnularSymPermutation&) const = default;

 private:
  SignedPermutation sigma_;
};

// Brute force over the (2n-1)!! pairings q with sigma = q delta. Sorted by
// cycle notation. Cached.
const std::vector<AnnularSymPermutation>& enumerate_sncd(int n);

// Elements whose cycles all meet both halves. Built directly from arcs of the
// two circles, each candidate checked with AnnularSymPermutation::is_member.
const std::vector<AnnularSymPermutation>& enumerate_sncd_all_through(int n);

// K^delta(sigma) = delta gamma_n^-1 delta sigma^-1 gamma_n
SignedPermutation kdelta(const SignedPermutation& sigma);

// K^delta_rho(tau) = delta rho^-1 delta tau^-1 rho, rho a permutation of [n]
// embedded so that it fixes the negatives.
SignedPermutation relative_kreweras(const SignedPermutation& tau, const Permutation& rho);

bool is_through(const Cycle& cycle);

struct ConjugatePair {
  Cycle representative;  // smaller minimal positive element
  Cycle partner;         // delta representative^-1 delta
  bool self_conjugate = false;
};

// Throws Error unless sigma * delta is a pairing.
std::vector<ConjugatePair> conjugate_pairs(const SignedPermutation& sigma);

// Requires n even: cycles (k, -(n/2 + k)), indices mod n.
AnnularSymPermutation spoke(int n);

struct Classification {
  Partition pi;         // through block V plus the positive non-through cycles
  Block through_block;  // V
};

Classification classify(const AnnularSymPermutation& sigma);

// The defining condition of the class S_{pi,V}: every cycle of sigma is either
// a cycle of pi delta pi^-1 delta lying outside V and -V, or a through cycle
// inside V and -V.
bool in_reduction_class(const SignedPermutation& sigma, const Partition& pi, const Block& V);

// The through cycles of sigma relabelled order-preservingly onto [±|V|].
SignedPermutation through_part(const AnnularSymPermutation& sigma);

}  // namespace infnc
