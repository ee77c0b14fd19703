#include "infnc/distribution.hpp"

#include <fstream>

#include "infnc/error.hpp"

namespace infnc {

Distribution::Distribution(int degree, CanonicalForm form, bool sparse)
    : degree_(degree), form_(std::move(form)), sparse_(sparse) {
  if (degree < 0) throw Error("negative degree bound");
  for (int g : form_.symmetric) generators_.insert(g);
}

void Distribution::check_key(const Word& w) const {
  if (static_cast<int>(w.size()) > degree_)
    throw Error("word '" + format_word(w) + "' exceeds the degree bound " + std::to_string(degree_));
  if (w.empty()) throw Error("the unit's values are fixed and cannot be stored");
  if (canonicalize(w) != w)
    throw Error("non-canonical key '" + format_word(w) + "' (canonical form '" +
                format_word(canonicalize(w)) + "')");
}

void Distribution::set_tau(const Word& w, const Rational& value) {
  check_key(w);
  for (const auto& l : w) generators_.insert(l.generator);
  tau_[w] = value;
}

void Distribution::set_tau_prime(const Word& w, const Rational& value) {
  check_key(w);
  for (const auto& l : w) generators_.insert(l.generator);
  tau_prime_[w] = value;
}

Rational Distribution::lookup(const std::map<Word, Rational>& table, const Word& w,
                              const char* name) const {
  Word c = canonicalize(w);
  auto it = table.find(c);
  if (it != table.end()) return it->second;
  if (static_cast<int>(w.size()) > degree_)
    throw MissingValue(std::string(name) + "('" + format_word(w) + "') is beyond the degree bound " +
                       std::to_string(degree_));
  if (sparse_) return 0;
  throw MissingValue(std::string(name) + "('" + format_word(c) + "') is missing");
}

Rational Distribution::tau(const Word& w) const {
  if (w.empty()) return 1;
  return lookup(tau_, w, "tau");
}

Rational Distribution::tau_prime(const Word& w) const {
  if (w.empty()) return 0;
  return lookup(tau_prime_, w, "tau'");
}

nlohmann::json Distribution::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  j["tracial"] = form_.tracial;
  j["transpose_symmetric"] = form_.transpose_symmetric;
  j["symmetric"] = std::vector<int>(form_.symmetric.begin(), form_.symmetric.end());
  j["generators"] = std::vector<int>(generators_.begin(), generators_.end());
  j["tau"] = nlohmann::json::object();
  j["tau_prime"] = nlohmann::json::object();
  for (const auto& [w, v] : tau_) j["tau"][format_word(w)] = format_rational(v);
  for (const auto& [w, v] : tau_prime_) j["tau_prime"][format_word(w)] = format_rational(v);
  return j;
}

Distribution Distribution::from_json(const nlohmann::json& j, bool sparse) {
  try {
    CanonicalForm form;
    form.tracial = j.value("tracial", true);
    form.transpose_symmetric = j.value("transpose_symmetric", true);
    std::set<int> mentioned, transposed;
    for (const char* key : {"tau", "tau_prime"}) {
      if (!j.contains(key)) continue;
      for (const auto& [k, v] : j.at(key).items())
        for (const auto& l : parse_word(k)) {
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
    Distribution d(j.at("degree").get<int>(), form, sparse);
    if (j.contains("generators"))
      for (int g : j.at("generators").get<std::vector<int>>()) d.declare_generator(g);
    for (int g : mentioned) d.declare_generator(g);
    auto value = [](const nlohmann::json& v) {
      return v.is_string() ? parse_rational(v.get<std::string>())
                           : parse_rational(std::to_string(v.get<long long>()));
    };
    if (j.contains("tau"))
      for (const auto& [k, v] : j.at("tau").items()) d.set_tau(parse_word(k), value(v));
    if (j.contains("tau_prime"))
      for (const auto& [k, v] : j.at("tau_prime").items()) d.set_tau_prime(parse_word(k), value(v));
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad distribution JSON: ") + e.what());
  }
}

bool Distribution::operator==(const Distribution& o) const {
  return degree_ == o.degree_ && form_.tracial == o.form_.tracial &&
         form_.transpose_symmetric == o.form_.transpose_symmetric &&
         form_.symmetric == o.form_.symmetric && generators_ == o.generators_ && tau_ == o.tau_ &&
         tau_prime_ == o.tau_prime_;
}

Distribution load_distribution(const std::string& path, bool sparse) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  return Distribution::from_json(j, sparse);
}

void save_distribution(const Distribution& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << d.to_json().dump(2) << "\n";
}

}  // namespace infnc
