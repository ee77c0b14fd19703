#pragma once

#include <map>
#include <set>

#include <json.hpp>

#include "infnc/rational.hpp"
#include "infnc/word.hpp"

namespace infnc {

// Infinitesimal distribution (tau, tau') on words of length <= degree. Values
// are stored under canonical words only; lookups canonicalize first.
class Distribution {
 public:
  Distribution() = default;
  Distribution(int degree, CanonicalForm form, bool sparse = false);

  int degree() const { return degree_; }
  const CanonicalForm& form() const { return form_; }
  bool tracial() const { return form_.tracial; }
  bool transpose_symmetric() const { return form_.transpose_symmetric; }
  bool sparse() const { return sparse_; }
  void set_sparse(bool sparse) { sparse_ = sparse; }

  // Generators that occur in a stored word or were declared.
  const std::set<int>& generators() const { return generators_; }
  void declare_generator(int g) { generators_.insert(g); }

  Word canonicalize(const Word& w) const { return infnc::canonicalize(w, form_); }

  // Throws Error if w is not canonical or longer than the degree bound.
  void set_tau(const Word& w, const Rational& value);
  void set_tau_prime(const Word& w, const Rational& value);

  // tau(1) = 1 and tau'(1) = 0. Missing words throw MissingValue unless sparse.
  Rational tau(const Word& w) const;
  Rational tau_prime(const Word& w) const;

  const std::map<Word, Rational>& tau_values() const { return tau_; }
  const std::map<Word, Rational>& tau_prime_values() const { return tau_prime_; }

  nlohmann::json to_json() const;
  // Without a "symmetric" field, generators never written with a transpose
  // flag are taken to be symmetric.
  static Distribution from_json(const nlohmann::json& j, bool sparse = false);

  bool operator==(const Distribution& o) const;

 private:
  void check_key(const Word& w) const;
  Rational lookup(const std::map<Word, Rational>& table, const Word& w, const char* name) const;

  int degree_ = 0;
  CanonicalForm form_;
  bool sparse_ = false;
  std::set<int> generators_;
  std::map<Word, Rational> tau_;
  std::map<Word, Rational> tau_prime_;
};

Distribution load_distribution(const std::string& path, bool sparse = false);
void save_distribution(const Distribution& d, const std::string& path);

}  // namespace infnc
