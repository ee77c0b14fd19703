#include "infnc/polynomial.hpp"

#include <algorithm>

namespace infnc {

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(int index) {
  Polynomial p;
  p.add_term({index}, 1);
  return p;
}

void Polynomial::add_term(Monomial m, const Rational& c) {
  std::sort(m.begin(), m.end());
  Rational& slot = terms_[m];
  slot += c;
  if (slot == 0) terms_.erase(m);
}

Rational Polynomial::coefficient(const Monomial& m) const {
  Monomial s = m;
  std::sort(s.begin(), s.end());
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      r.add_term(std::move(m), c1 * c2);
    }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

Rational Polynomial::evaluate(const std::function<Rational(int)>& value) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i : m) t *= value(i);
    total += t;
  }
  return total;
}

Polynomial Polynomial::substitute(const std::function<Polynomial(int)>& image) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(c);
    for (int i : m) t = t * image(i);
    r = r + t;
  }
  return r;
}

std::string Polynomial::str(const std::string& prefix) const {
  if (terms_.empty()) return "0";
  // Fewer factors first, then lexicographic on the indices.
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.first.size() < b.first.size();
  });
  std::string out;
  for (std::size_t t = 0; t < sorted.size(); ++t) {
    const auto& [m, c] = sorted[t];
    Rational mag = abs(c);
    if (t == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || m.empty()) out += format_rational(mag);
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      out += prefix + std::to_string(m[i]);
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
  }
  return out;
}

}  // namespace infnc
