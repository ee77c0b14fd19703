#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <json.hpp>

#include "infnc/annular.hpp"
#include "infnc/distribution.hpp"
#include "infnc/partition.hpp"
#include "infnc/polynomial.hpp"
#include "infnc/rational.hpp"
#include "infnc/word.hpp"

namespace infnc {

// Arguments of a multilinear functional. Each entry is a word, so products
// of letters can be used as arguments.
using Entries = std::vector<Word>;

Entries letters_of(const Word& w);
Word concatenate(const Entries& e);
Entries restrict_entries(const Entries& e, const Block& positions);

// Least representative of e under rotation (if tracial) and under
// (e1, ..., en) -> (en^t, ..., e1^t) (if transpose symmetric).
Entries canonical_entries(const Entries& e, const CanonicalForm& form);

enum class Mode { Real, Complex };

// Source of free cumulants kappa_n and infinitesimal cumulants kappa'_n.
class Cumulants {
 public:
  virtual ~Cumulants() = default;
  virtual Rational kappa(const Entries& e) const = 0;
  virtual Rational kappa_prime(const Entries& e) const = 0;
  // Needed by every annular term: the value of kappa_sigma_half does not
  // depend on the chosen representatives only in this case.
  virtual bool tracial_and_symmetric() const = 0;
};

// Cumulants of a distribution by Moebius inversion, computed on demand and
// memoized. In real mode kappa'_n = sum_pi mu(pi, 1) dtau_pi - kappa_dot_n; in
// complex mode the kappa_dot term is dropped.
class MomentCumulants : public Cumulants {
 public:
  explicit MomentCumulants(Distribution dist, Mode mode = Mode::Real);

  Rational kappa(const Entries& e) const override;
  Rational kappa_prime(const Entries& e) const override;
  bool tracial_and_symmetric() const override {
    return dist_.tracial() && dist_.transpose_symmetric();
  }

  const Distribution& distribution() const { return dist_; }
  Mode mode() const { return mode_; }

 private:
  Distribution dist_;
  Mode mode_;
  mutable std::mutex mutex_;
  mutable std::map<Entries, Rational> kappa_memo_;
  mutable std::map<Entries, Rational> prime_memo_;
};

// Explicit cumulants on tuples of letters.
class CumulantTable : public Cumulants {
 public:
  CumulantTable() = default;
  CumulantTable(int degree, CanonicalForm form, bool sparse = false);

  int degree() const { return degree_; }
  const CanonicalForm& form() const { return form_; }
  const std::set<int>& generators() const { return generators_; }

  void set_kappa(const Word& letters, const Rational& v);
  void set_kappa_prime(const Word& letters, const Rational& v);

  // Entries must be single letters. Missing tuples throw MissingValue unless
  // the table is sparse.
  Rational kappa(const Entries& e) const override;
  Rational kappa_prime(const Entries& e) const override;
  bool tracial_and_symmetric() const override {
    return form_.tracial && form_.transpose_symmetric;
  }

  const std::map<Word, Rational>& kappa_values() const { return kappa_; }
  const std::map<Word, Rational>& kappa_prime_values() const { return kappa_prime_; }

  nlohmann::json to_json() const;
  static CumulantTable from_json(const nlohmann::json& j, bool sparse = false);

 private:
  Word key(const Entries& e) const;
  Word key(const Word& letters) const;

  int degree_ = 0;
  CanonicalForm form_;
  bool sparse_ = false;
  std::set<int> generators_;
  std::map<Word, Rational> kappa_;
  std::map<Word, Rational> kappa_prime_;
};

// kappa_n for every canonical letter tuple up to the degree bound.
CumulantTable kappa_from_moments(const Distribution& dist);
// kappa_n and kappa'_n for every canonical letter tuple up to the degree bound.
CumulantTable infinitesimal_cumulants_from_distribution(const Distribution& dist,
                                                        Mode mode = Mode::Real);

// tau_pi and dtau_pi: each block V contributes tau of the product of its
// entries in increasing position order.
Rational tau_pi(const Partition& pi, const Entries& e, const Distribution& dist);
Rational dtau_pi(const Partition& pi, const Entries& e, const Distribution& dist);

Rational kappa_pi(const Partition& pi, const Entries& e, const Cumulants& c);
Rational dkappa_pi(const Partition& pi, const Entries& e, const Cumulants& c);
Rational delta_kappa_pi(const Partition& pi, const Entries& e, const Cumulants& c);
Rational nabla_kappa_pi(const Partition& pi, const Entries& e, const Cumulants& c);

// One cumulant per conjugate pair of cycles, read from the representative
// cycle (i1..ik, -jl..-j1) as kappa(a_i1, ..., a_ik, a_jl^t, ..., a_j1^t).
Rational kappa_sigma_half(const AnnularSymPermutation& sigma, const Entries& e,
                          const Cumulants& c);

// Sum of kappa_sigma_half over all-through sigma; 0 for n = 1.
Rational kappa_dot(const Entries& e, const Cumulants& c);

Rational tau_from_cumulants(const Entries& e, const Cumulants& c);
Rational tau_prime_from_cumulants(const Entries& e, const Cumulants& c);
Rational complex_tau_prime_from_cumulants(const Entries& e, const Cumulants& c);

// kappa_dot_n for one symmetric variable, as a polynomial in k2, ..., kn.
Polynomial kappa_dot_polynomial(int n);
// kappa_n of one variable as a polynomial in the moments m1, ..., mn.
Polynomial kappa_in_moments(int n);

// The positions read for each factor of kappa_sigma_half: (index, transposed).
using AnnularFactor = std::vector<std::pair<int, bool>>;
std::vector<AnnularFactor> annular_reading(const AnnularSymPermutation& sigma);

}  // namespace infnc
