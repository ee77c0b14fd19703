#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "infnc/rational.hpp"

namespace infnc {

// Commutative polynomial with rational coefficients in variables x_1, x_2, ...
// A monomial is the sorted list of its variable indices with multiplicity,
// so x_2^2 x_3 is {2, 2, 3}.
class Polynomial {
 public:
  using Monomial = std::vector<int>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(int index);

  void add_term(Monomial m, const Rational& c);
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;

  Rational evaluate(const std::function<Rational(int)>& value) const;
  // Replaces each x_i by image(i).
  Polynomial substitute(const std::function<Polynomial(int)>& image) const;

  // "6k4 + k2^2" with prefix "k"; highest index first within each degree.
  std::string str(const std::string& prefix) const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::map<Monomial, Rational> terms_;
};

}  // namespace infnc
