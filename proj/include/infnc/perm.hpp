#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace infnc {

using Cycle = std::vector<int>;
using CycleList = std::vector<Cycle>;

// Rotates each cycle so that its leader (smallest |x|, positive first on ties)
// comes first, then sorts the cycles by leader.
CycleList canonical_cycles(CycleList cycles);

// "(1,-4)(-1,4)(2,3)(-2,-3)"
std::string format_cycles(const CycleList& cycles);

// Inverse of format_cycles. Whitespace is ignored.
CycleList parse_cycles(const std::string& text);

// Permutation of [n] = {1, ..., n}.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n);

  // images[k - 1] = p(k)
  static Permutation from_images(std::vector<int> images);
  // Missing points are fixed.
  static Permutation from_cycles(int n, const CycleList& cycles);
  // n = 0 means the largest point mentioned.
  static Permutation parse(const std::string& text, int n = 0);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_[k - 1]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  CycleList cycles() const;
  int num_cycles() const;
  // n - #cycles, the minimal number of transpositions.
  int length() const { return n() - num_cycles(); }
  bool is_identity() const;
  std::string str() const { return format_cycles(cycles()); }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// (p * q)(k) = p(q(k))
Permutation operator*(const Permutation& p, const Permutation& q);

// Permutation of [±n] = {±1, ..., ±n}.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  explicit SignedPermutation(int n);

  static SignedPermutation from_cycles(int n, const CycleList& cycles);
  static SignedPermutation parse(const std::string& text, int n = 0);

  int n() const { return n_; }
  int operator()(int k) const { return images_[index(k)]; }
  void set(int k, int image) { images_[index(k)] = image; }

  SignedPermutation inverse() const;
  CycleList cycles() const;
  int num_cycles() const;
  int length() const { return 2 * n_ - num_cycles(); }
  bool is_identity() const;
  std::string str() const { return format_cycles(cycles()); }

  // 1..n then -1..-n
  std::vector<int> points() const;

  auto operator<=>(const SignedPermutation&) const = default;

 private:
  int index(int k) const { return k > 0 ? k - 1 : n_ - k - 1; }

  int n_ = 0;
  std::vector<int> images_;
};

SignedPermutation operator*(const SignedPermutation& p, const SignedPermutation& q);

// Permutation of an arbitrary finite set of nonzero integers, as produced by
// first-return restriction.
class SubsetPermutation {
 public:
  SubsetPermutation() = default;
  explicit SubsetPermutation(std::map<int, int> images);
  static SubsetPermutation from_cycles(const CycleList& cycles);

  int operator()(int k) const { return images_.at(k); }
  const std::map<int, int>& images() const { return images_; }
  CycleList cycles() const;
  bool is_identity() const;
  std::string str() const { return format_cycles(cycles()); }

  auto operator<=>(const SubsetPermutation&) const = default;

 private:
  std::map<int, int> images_;
};

// The first-return map of p on M.
SubsetPermutation restrict_first_return(const Permutation& p, std::span<const int> M);
SubsetPermutation restrict_first_return(const SignedPermutation& p, std::span<const int> M);

// No two points of M share a cycle of p.
bool separates(const Permutation& p, std::span<const int> M);
bool separates(const SignedPermutation& p, std::span<const int> M);

// gamma_n = (1, 2, ..., n)
Permutation gamma(int n);
// (1..m1)(m1+1..m1+m2)...
Permutation gamma_vec(std::span<const int> parts);

// delta(k) = -k
SignedPermutation delta(int n);
// p on the positives, identity on the negatives.
SignedPermutation embed(const Permutation& p);
// delta * embed(p) * delta: acts as -k -> -p(k), identity on the positives.
SignedPermutation mirror(const Permutation& p);
// embed(p) * mirror(p^-1), i.e. p delta p^-1 delta.
SignedPermutation doubled(const Permutation& p);

struct StandardElements {
  SignedPermutation delta;
  SignedPermutation gamma;           // gamma_n embedded
  SignedPermutation gamma_annulus;   // gamma_n delta gamma_n^-1 delta
};

StandardElements standard_elements(int n);

}  // namespace infnc
