#include "infnc/cumulants.hpp"

#include <algorithm>

#include "infnc/error.hpp"

namespace infnc {

Entries letters_of(const Word& w) {
  Entries e;
  for (const auto& l : w) e.push_back({l});
  return e;
}

Word concatenate(const Entries& e) {
  Word w;
  for (const auto& x : e) w.insert(w.end(), x.begin(), x.end());
  return w;
}

Entries restrict_entries(const Entries& e, const Block& positions) {
  Entries out;
  out.reserve(positions.size());
  for (int i : positions) out.push_back(e[i - 1]);
  return out;
}

namespace {

Word clear_symmetric(Word w, const CanonicalForm& form) {
  for (auto& l : w)
    if (form.symmetric.count(l.generator)) l.transposed = false;
  return w;
}

void least_rotation(const Entries& e, bool tracial, Entries& best, bool& have) {
  Entries r = e;
  for (std::size_t i = 0; i < (tracial ? std::max<std::size_t>(e.size(), 1) : 1); ++i) {
    if (!have || r < best) {
      best = r;
      have = true;
    }
    if (!r.empty()) std::rotate(r.begin(), r.begin() + 1, r.end());
  }
}

const std::vector<Rational>& mobius_table(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<Rational>> cache;
  const auto& all = enumerate_nc(n);
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Rational> mu;
  for (const auto& p : all) mu.push_back(mobius_to_top(p));
  return cache.emplace(n, std::move(mu)).first->second;
}

const std::vector<std::vector<AnnularFactor>>& readings(int n, bool all_through) {
  static std::mutex mutex;
  static std::map<std::pair<int, bool>, std::vector<std::vector<AnnularFactor>>> cache;
  const auto& all = all_through ? enumerate_sncd_all_through(n) : enumerate_sncd(n);
  std::lock_guard lock(mutex);
  auto it = cache.find({n, all_through});
  if (it != cache.end()) return it->second;
  std::vector<std::vector<AnnularFactor>> r;
  for (const auto& s : all) r.push_back(annular_reading(s));
  return cache.emplace(std::make_pair(n, all_through), std::move(r)).first->second;
}

Rational evaluate_reading(const std::vector<AnnularFactor>& factors, const Entries& e,
                          const Cumulants& c) {
  Rational product = 1;
  for (const auto& f : factors) {
    Entries args;
    args.reserve(f.size());
    for (auto [i, t] : f) args.push_back(t ? transpose(e[i - 1]) : e[i - 1]);
    product *= c.kappa(args);
    if (product == 0) break;
  }
  return product;
}

void require_annular_ready(const Cumulants& c) {
  if (!c.tracial_and_symmetric())
    throw Error("annular terms need a tracial, transpose-symmetric distribution");
}

}  // namespace

Entries canonical_entries(const Entries& e, const CanonicalForm& form) {
  Entries a;
  a.reserve(e.size());
  for (const auto& w : e) a.push_back(clear_symmetric(w, form));
  Entries best;
  bool have = false;
  least_rotation(a, form.tracial, best, have);
  if (form.transpose_symmetric) {
    Entries b;
    b.reserve(a.size());
    for (auto it = a.rbegin(); it != a.rend(); ++it) b.push_back(clear_symmetric(transpose(*it), form));
    least_rotation(b, form.tracial, best, have);
  }
  return best;
}

std::vector<AnnularFactor> annular_reading(const AnnularSymPermutation& sigma) {
  std::vector<AnnularFactor> out;
  for (const auto& pair : conjugate_pairs(sigma.permutation())) {
    Cycle c = pair.representative;
    if (is_through(c)) {
      // start at a positive point entered from a negative one
      std::size_t start = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        int prev = c[(i + c.size() - 1) % c.size()];
        if (c[i] > 0 && prev < 0) {
          start = i;
          break;
        }
      }
      std::rotate(c.begin(), c.begin() + start, c.end());
    }
    AnnularFactor f;
    for (int x : c) f.emplace_back(std::abs(x), x < 0);
    out.push_back(std::move(f));
  }
  return out;
}

// ---- MomentCumulants ----

MomentCumulants::MomentCumulants(Distribution dist, Mode mode) : dist_(std::move(dist)), mode_(mode) {}

Rational MomentCumulants::kappa(const Entries& e) const {
  if (e.empty()) throw Error("kappa of an empty tuple");
  Entries key = canonical_entries(e, dist_.form());
  {
    std::lock_guard lock(mutex_);
    auto it = kappa_memo_.find(key);
    if (it != kappa_memo_.end()) return it->second;
  }
  int n = static_cast<int>(e.size());
  const auto& all = enumerate_nc(n);
  const auto& mu = mobius_table(n);
  Rational total = 0;
  for (std::size_t i = 0; i < all.size(); ++i) total += mu[i] * tau_pi(all[i], key, dist_);
  std::lock_guard lock(mutex_);
  kappa_memo_.emplace(std::move(key), total);
  return total;
}

Rational MomentCumulants::kappa_prime(const Entries& e) const {
  if (e.empty()) throw Error("kappa' of an empty tuple");
  Entries key = canonical_entries(e, dist_.form());
  {
    std::lock_guard lock(mutex_);
    auto it = prime_memo_.find(key);
    if (it != prime_memo_.end()) return it->second;
  }
  int n = static_cast<int>(e.size());
  Rational total = 0;
  if (n == 1) {
    total = dist_.tau_prime(key[0]);
  } else {
    const auto& all = enumerate_nc(n);
    const auto& mu = mobius_table(n);
    for (std::size_t i = 0; i < all.size(); ++i) total += mu[i] * dtau_pi(all[i], key, dist_);
    if (mode_ == Mode::Real) total -= kappa_dot(key, *this);
  }
  std::lock_guard lock(mutex_);
  prime_memo_.emplace(std::move(key), total);
  return total;
}

// ---- CumulantTable ----

CumulantTable::CumulantTable(int degree, CanonicalForm form, bool sparse)
    : degree_(degree), form_(std::move(form)), sparse_(sparse) {
  for (int g : form_.symmetric) generators_.insert(g);
}

Word CumulantTable::key(const Word& letters) const {
  if (letters.empty()) throw Error("cumulant of an empty tuple");
  return canonicalize(letters, form_);
}

Word CumulantTable::key(const Entries& e) const {
  Word letters;
  for (const auto& w : e) {
    if (w.size() != 1) throw Error("a cumulant table only holds cumulants of single letters");
    letters.push_back(w[0]);
  }
  return key(letters);
}

void CumulantTable::set_kappa(const Word& letters, const Rational& v) {
  for (const auto& l : letters) generators_.insert(l.generator);
  kappa_[key(letters)] = v;
}

void CumulantTable::set_kappa_prime(const Word& letters, const Rational& v) {
  for (const auto& l : letters) generators_.insert(l.generator);
  kappa_prime_[key(letters)] = v;
}

Rational CumulantTable::kappa(const Entries& e) const {
  Word k = key(e);
  auto it = kappa_.find(k);
  if (it != kappa_.end()) return it->second;
  if (sparse_ && static_cast<int>(k.size()) <= degree_) return 0;
  throw MissingValue("kappa(" + format_word(k) + ") is not in the table");
}

Rational CumulantTable::kappa_prime(const Entries& e) const {
  Word k = key(e);
  auto it = kappa_prime_.find(k);
  if (it != kappa_prime_.end()) return it->second;
  if (sparse_ && static_cast<int>(k.size()) <= degree_) return 0;
  throw MissingValue("kappa'(" + format_word(k) + ") is not in the table");
}

nlohmann::json CumulantTable::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  j["tracial"] = form_.tracial;
  j["transpose_symmetric"] = form_.transpose_symmetric;
  j["symmetric"] = std::vector<int>(form_.symmetric.begin(), form_.symmetric.end());
  j["kappa"] = nlohmann::json::object();
  j["kappa_prime"] = nlohmann::json::object();
  for (const auto& [w, v] : kappa_) j["kappa"][format_word(w)] = format_rational(v);
  for (const auto& [w, v] : kappa_prime_) j["kappa_prime"][format_word(w)] = format_rational(v);
  return j;
}

CumulantTable CumulantTable::from_json(const nlohmann::json& j, bool sparse) {
  try {
    CanonicalForm form;
    form.tracial = j.value("tracial", true);
    form.transpose_symmetric = j.value("transpose_symmetric", true);
    std::set<int> mentioned, transposed;
    for (const char* k : {"kappa", "kappa_prime"}) {
      if (!j.contains(k)) continue;
      for (const auto& [key, v] : j.at(k).items())
        for (const auto& l : parse_word(key)) {
          mentioned.insert(l.generator);
          if (l.transposed) transposed.insert(l.generator);
        }
    }
    if (j.contains("symmetric")) {
      for (int g : j.at("symmetric").get<std::vector<int>>()) form.symmetric.insert(g);
    } else {
      for (int g : mentioned)
        if (!transposed.count(g)) form.symmetric.insert(g);
    }
    CumulantTable t(j.at("degree").get<int>(), form, sparse);
    auto value = [](const nlohmann::json& v) {
      return v.is_string() ? parse_rational(v.get<std::string>())
                           : parse_rational(std::to_string(v.get<long long>()));
    };
    if (j.contains("kappa"))
      for (const auto& [k, v] : j.at("kappa").items()) t.set_kappa(parse_word(k), value(v));
    if (j.contains("kappa_prime"))
      for (const auto& [k, v] : j.at("kappa_prime").items()) t.set_kappa_prime(parse_word(k), value(v));
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad cumulant table JSON: ") + e.what());
  }
}

CumulantTable kappa_from_moments(const Distribution& dist) {
  MomentCumulants mc(dist);
  CumulantTable t(dist.degree(), dist.form());
  for (const auto& w : canonical_words(dist.generators(), dist.form(), dist.degree()))
    t.set_kappa(w, mc.kappa(letters_of(w)));
  return t;
}

CumulantTable infinitesimal_cumulants_from_distribution(const Distribution& dist, Mode mode) {
  MomentCumulants mc(dist, mode);
  CumulantTable t(dist.degree(), dist.form());
  for (const auto& w : canonical_words(dist.generators(), dist.form(), dist.degree())) {
    t.set_kappa(w, mc.kappa(letters_of(w)));
    t.set_kappa_prime(w, mc.kappa_prime(letters_of(w)));
  }
  return t;
}

// ---- formulas ----

Rational tau_pi(const Partition& pi, const Entries& e, const Distribution& dist) {
  Rational product = 1;
  for (const auto& v : pi.blocks()) {
    product *= dist.tau(concatenate(restrict_entries(e, v)));
    if (product == 0) break;
  }
  return product;
}

Rational dtau_pi(const Partition& pi, const Entries& e, const Distribution& dist) {
  std::vector<Rational> t, tp;
  for (const auto& v : pi.blocks()) {
    Word w = concatenate(restrict_entries(e, v));
    t.push_back(dist.tau(w));
    tp.push_back(dist.tau_prime(w));
  }
  Rational total = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Rational term = tp[i];
    for (std::size_t j = 0; j < t.size() && term != 0; ++j)
      if (j != i) term *= t[j];
    total += term;
  }
  return total;
}

Rational kappa_pi(const Partition& pi, const Entries& e, const Cumulants& c) {
  Rational product = 1;
  for (const auto& v : pi.blocks()) {
    product *= c.kappa(restrict_entries(e, v));
    if (product == 0) break;
  }
  return product;
}

namespace {

template <class Replace>
Rational replace_one_block(const Partition& pi, const Entries& e, const Cumulants& c,
                           Replace&& replace) {
  std::vector<Rational> k;
  for (const auto& v : pi.blocks()) k.push_back(c.kappa(restrict_entries(e, v)));
  Rational total = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    Rational rest = 1;
    for (std::size_t j = 0; j < k.size() && rest != 0; ++j)
      if (j != i) rest *= k[j];
    if (rest == 0) continue;
    total += rest * replace(restrict_entries(e, pi.blocks()[i]));
  }
  return total;
}

}  // namespace

Rational dkappa_pi(const Partition& pi, const Entries& e, const Cumulants& c) {
  return replace_one_block(pi, e, c, [&](const Entries& sub) { return c.kappa_prime(sub); });
}

Rational delta_kappa_pi(const Partition& pi, const Entries& e, const Cumulants& c) {
  return replace_one_block(pi, e, c, [&](const Entries& sub) { return kappa_dot(sub, c); });
}

Rational nabla_kappa_pi(const Partition& pi, const Entries& e, const Cumulants& c) {
  return dkappa_pi(pi, e, c) + delta_kappa_pi(pi, e, c);
}

Rational kappa_sigma_half(const AnnularSymPermutation& sigma, const Entries& e,
                          const Cumulants& c) {
  if (static_cast<int>(e.size()) != sigma.n()) throw Error("kappa_sigma_half: size mismatch");
  require_annular_ready(c);
  return evaluate_reading(annular_reading(sigma), e, c);
}

Rational kappa_dot(const Entries& e, const Cumulants& c) {
  int n = static_cast<int>(e.size());
  if (n < 1) throw Error("kappa_dot of an empty tuple");
  if (n == 1) return 0;
  require_annular_ready(c);
  Rational total = 0;
  for (const auto& r : readings(n, true)) total += evaluate_reading(r, e, c);
  return total;
}

Rational tau_from_cumulants(const Entries& e, const Cumulants& c) {
  if (e.empty()) return 1;
  Rational total = 0;
  for (const auto& p : enumerate_nc(static_cast<int>(e.size()))) total += kappa_pi(p, e, c);
  return total;
}

Rational complex_tau_prime_from_cumulants(const Entries& e, const Cumulants& c) {
  if (e.empty()) return 0;
  Rational total = 0;
  for (const auto& p : enumerate_nc(static_cast<int>(e.size()))) total += dkappa_pi(p, e, c);
  return total;
}

Rational tau_prime_from_cumulants(const Entries& e, const Cumulants& c) {
  Rational total = complex_tau_prime_from_cumulants(e, c);
  int n = static_cast<int>(e.size());
  if (n >= 2) {
    require_annular_ready(c);
    for (const auto& r : readings(n, false)) total += evaluate_reading(r, e, c);
  }
  return total;
}

Polynomial kappa_dot_polynomial(int n) {
  if (n < 2) throw Error("kappa_dot_polynomial needs n >= 2");
  Polynomial p;
  for (const auto& r : readings(n, true)) {
    Polynomial::Monomial m;
    for (const auto& f : r) m.push_back(static_cast<int>(f.size()));
    p.add_term(std::move(m), 1);
  }
  return p;
}

Polynomial kappa_in_moments(int n) {
  const auto& all = enumerate_nc(n);
  const auto& mu = mobius_table(n);
  Polynomial p;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Polynomial::Monomial m;
    for (const auto& v : all[i].blocks()) m.push_back(static_cast<int>(v.size()));
    p.add_term(std::move(m), mu[i]);
  }
  return p;
}

}  // namespace infnc
