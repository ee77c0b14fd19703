#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "infnc/perm.hpp"
#include "infnc/rational.hpp"

namespace infnc {

using Block = std::vector<int>;

// Set partition of a finite set of nonzero integers, stored in block form:
// blocks sorted internally and ordered by their smallest element.
class Partition {
 public:
  Partition() = default;

  static Partition from_blocks(std::vector<Block> blocks);
  // One block per cycle.
  static Partition from_cycles(const CycleList& cycles);
  static Partition of(const Permutation& p) { return from_cycles(p.cycles()); }
  static Partition of(const SignedPermutation& p) { return from_cycles(p.cycles()); }
  // "{1,4}{2,3}"
  static Partition parse(const std::string& text);

  const std::vector<Block>& blocks() const { return blocks_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int size() const;
  std::vector<int> points() const;

  // Requires the point set to be [n]. Each block becomes a cycle traversed in
  // increasing order.
  Permutation to_permutation() const;

  // Every block of *this lies inside a block of other.
  bool refines(const Partition& other) const;
  std::string str() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<Block> blocks_;
};

Partition zero_partition(int n);
Partition one_partition(int n);
// Consecutive intervals of the given lengths, the partition form of gamma_vec.
Partition interval_partition(std::span<const int> parts);

// Finest partition coarser than both; connected components of the union.
Partition join(const Partition& a, const Partition& b);

// Point set must be [n]. Decided by |pi| + |pi^-1 gamma_n| = n - 1.
bool is_noncrossing(const Partition& p);

// All non-crossing partitions of [n], in lexicographic order of restricted
// growth strings. Cached; the reference stays valid for the program lifetime.
const std::vector<Partition>& enumerate_nc(int n);

// K(pi) = pi^-1 gamma_n
Partition kreweras(const Partition& pi);
Permutation kreweras_permutation(const Partition& pi);

mpz_class catalan(int n);

// mu(pi, 1_n)
Rational mobius_to_top(const Partition& pi);

// Block V of pi becomes the union of the intervals I_k, k in V.
Partition blow_up(const Partition& pi, std::span<const int> parts);

}  // namespace infnc
