#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "infnc/cumulants.hpp"
#include "infnc/distribution.hpp"

namespace infnc {

// generator -> index of the subalgebra it belongs to
using Labeling = std::map<int, int>;

// Formal linear combination of words; the empty word is the unit.
using Element = std::map<Word, Rational>;

Element element(const Word& w);
Element operator*(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element transpose(const Element& a);
Rational tau(const Element& a, const Distribution& d);
Rational tau_prime(const Element& a, const Distribution& d);
// w - tau(w) 1
Element center(const Word& w, const Distribution& d);

struct Marginal {
  std::string label;
  CumulantTable table;
};

// Marginal cumulant tables over pairwise disjoint generator sets.
class MarginalFamily {
 public:
  void add(const std::string& label, CumulantTable table);
  // Cumulants of d in real mode.
  void add(const std::string& label, const Distribution& d);

  const std::vector<Marginal>& marginals() const { return marginals_; }
  Labeling labeling() const;
  // Minimum degree over the marginals.
  int degree() const;

 private:
  std::vector<Marginal> marginals_;
  std::map<int, int> owner_;
};

// Joint cumulants of the free product: marginal values on single-label
// tuples, zero on mixed ones. Entries must be single letters.
class FreeProductCumulants : public Cumulants {
 public:
  explicit FreeProductCumulants(const MarginalFamily& family);
  Rational kappa(const Entries& e) const override;
  Rational kappa_prime(const Entries& e) const override;
  bool tracial_and_symmetric() const override { return tracial_and_symmetric_; }

 private:
  // Marginal owning every letter of e, or -1 for a mixed tuple.
  int owner(const Entries& e) const;

  const MarginalFamily& family_;
  Labeling labeling_;
  bool tracial_and_symmetric_ = true;
};

// Joint (tau, tau') on every canonical word up to the degree, rebuilt from the
// joint cumulants by the moment-cumulant formulas.
Distribution free_product(const MarginalFamily& family, int degree);

struct Violation {
  std::string condition;
  std::string elements;  // the centred words, e.g. "[1 1] [2]"
  Rational lhs, rhs;
};

struct FreenessReport {
  int sequences = 0;
  int max_element_degree = 0;
  int degree = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  nlohmann::json to_json(std::size_t max_listed = 20) const;
};

// Conditions (i)-(iv) of real infinitesimal freeness on every alternating
// sequence of centred single-label words a_i = w_i - tau(w_i), with
// 1 <= |w_i| <= max_element_degree, n >= 2 and total length <= degree.
FreenessReport check_definition(const Distribution& d, const Labeling& labels, int degree,
                                int max_element_degree = 3);

// For tracial tau and tau': freeness with respect to tau on alternating
// sequences, and on cyclically alternating ones tau' = 0 for n = 2 or odd n,
// tau'(a_1 ... a_2k) = tau(a_1 a_{k+1}^t) ... tau(a_k a_2k^t) for even n >= 4.
FreenessReport check_cyclic_form(const Distribution& d, const Labeling& labels, int degree,
                                 int max_element_degree = 3);

// Nonzero kappa or kappa' on mixed letter tuples up to the degree.
FreenessReport check_mixed_cumulants(const Distribution& d, const Labeling& labels, int degree);

}  // namespace infnc
