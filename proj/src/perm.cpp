#include "infnc/perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "infnc/error.hpp"

namespace infnc {
namespace {

std::pair<int, bool> leader_key(int x) { return {std::abs(x), x < 0}; }

template <class Map>
CycleList cycles_of(const std::vector<int>& points, Map&& image) {
  std::set<int> seen;
  CycleList out;
  for (int start : points) {
    if (seen.count(start)) continue;
    Cycle c;
    int k = start;
    do {
      c.push_back(k);
      seen.insert(k);
      k = image(k);
    } while (k != start);
    out.push_back(std::move(c));
  }
  return canonical_cycles(std::move(out));
}

void check_bijection(const std::vector<int>& images, const std::set<int>& domain) {
  std::set<int> seen(images.begin(), images.end());
  if (seen != domain || images.size() != domain.size())
    throw Error("images do not form a bijection of the domain");
}

}  // namespace

CycleList canonical_cycles(CycleList cycles) {
  for (auto& c : cycles) {
    auto lead = std::min_element(c.begin(), c.end(), [](int a, int b) {
      return leader_key(a) < leader_key(b);
    });
    std::rotate(c.begin(), lead, c.end());
  }
  std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) {
    return leader_key(a.front()) < leader_key(b.front());
  });
  return cycles;
}

std::string format_cycles(const CycleList& cycles) {
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out;
}

CycleList parse_cycles(const std::string& text) {
  CycleList out;
  Cycle current;
  bool open = false;
  std::string number;
  auto flush = [&] {
    if (number.empty()) throw Error("bad cycle notation: " + text);
    int v = std::stoi(number);
    if (v == 0) throw Error("0 is not a valid point: " + text);
    current.push_back(v);
    number.clear();
  };
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\n') continue;
    if (ch == '(') {
      if (open) throw Error("nested parenthesis: " + text);
      open = true;
    } else if (ch == ')') {
      if (!open) throw Error("unbalanced parenthesis: " + text);
      flush();
      out.push_back(std::move(current));
      current.clear();
      open = false;
    } else if (ch == ',') {
      if (!open) throw Error("comma outside a cycle: " + text);
      flush();
    } else if (ch == '-' || (ch >= '0' && ch <= '9')) {
      if (!open) throw Error("point outside a cycle: " + text);
      number += ch;
    } else {
      throw Error("unexpected character in cycle notation: " + text);
    }
  }
  if (open) throw Error("unterminated cycle: " + text);
  std::set<int> seen;
  for (const auto& c : out)
    for (int x : c)
      if (!seen.insert(x).second) throw Error("point repeated in cycle notation: " + text);
  return out;
}

// ---- Permutation ----

Permutation::Permutation(int n) : images_(n) {
  for (int k = 1; k <= n; ++k) images_[k - 1] = k;
}

Permutation Permutation::from_images(std::vector<int> images) {
  std::set<int> domain;
  for (int k = 1; k <= static_cast<int>(images.size()); ++k) domain.insert(k);
  check_bijection(images, domain);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(int n, const CycleList& cycles) {
  Permutation p(n);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int a = c[i], b = c[(i + 1) % c.size()];
      if (a < 1 || a > n) throw Error("point out of range for permutation of [" + std::to_string(n) + "]");
      p.images_[a - 1] = b;
    }
  }
  return p;
}

Permutation Permutation::parse(const std::string& text, int n) {
  CycleList cycles = parse_cycles(text);
  if (n == 0)
    for (const auto& c : cycles)
      for (int x : c) n = std::max(n, x);
  return from_cycles(n, cycles);
}

Permutation Permutation::inverse() const {
  Permutation q(n());
  for (int k = 1; k <= n(); ++k) q.images_[images_[k - 1] - 1] = k;
  return q;
}

CycleList Permutation::cycles() const {
  std::vector<int> pts(n());
  for (int k = 1; k <= n(); ++k) pts[k - 1] = k;
  return cycles_of(pts, [this](int k) { return (*this)(k); });
}

int Permutation::num_cycles() const {
  std::vector<char> seen(n(), 0);
  int count = 0;
  for (int k = 1; k <= n(); ++k) {
    if (seen[k - 1]) continue;
    ++count;
    for (int j = k; !seen[j - 1]; j = images_[j - 1]) seen[j - 1] = 1;
  }
  return count;
}

bool Permutation::is_identity() const {
  for (int k = 1; k <= n(); ++k)
    if (images_[k - 1] != k) return false;
  return true;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.n() != q.n()) throw Error("composing permutations of different sizes");
  std::vector<int> images(p.n());
  for (int k = 1; k <= p.n(); ++k) images[k - 1] = p(q(k));
  return Permutation::from_images(std::move(images));
}

// ---- SignedPermutation ----

SignedPermutation::SignedPermutation(int n) : n_(n), images_(2 * n) {
  for (int k = 1; k <= n; ++k) {
    images_[index(k)] = k;
    images_[index(-k)] = -k;
  }
}

SignedPermutation SignedPermutation::from_cycles(int n, const CycleList& cycles) {
  SignedPermutation p(n);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int a = c[i], b = c[(i + 1) % c.size()];
      if (a == 0 || std::abs(a) > n)
        throw Error("point out of range for permutation of [±" + std::to_string(n) + "]");
      p.set(a, b);
    }
  }
  return p;
}

SignedPermutation SignedPermutation::parse(const std::string& text, int n) {
  CycleList cycles = parse_cycles(text);
  if (n == 0)
    for (const auto& c : cycles)
      for (int x : c) n = std::max(n, std::abs(x));
  return from_cycles(n, cycles);
}

std::vector<int> SignedPermutation::points() const {
  std::vector<int> pts;
  pts.reserve(2 * n_);
  for (int k = 1; k <= n_; ++k) pts.push_back(k);
  for (int k = 1; k <= n_; ++k) pts.push_back(-k);
  return pts;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation q(n_);
  for (int k : points()) q.set((*this)(k), k);
  return q;
}

CycleList SignedPermutation::cycles() const {
  return cycles_of(points(), [this](int k) { return (*this)(k); });
}

int SignedPermutation::num_cycles() const {
  std::vector<char> seen(2 * n_, 0);
  int count = 0;
  for (int k : points()) {
    if (seen[index(k)]) continue;
    ++count;
    for (int j = k; !seen[index(j)]; j = (*this)(j)) seen[index(j)] = 1;
  }
  return count;
}

bool SignedPermutation::is_identity() const {
  for (int k : points())
    if ((*this)(k) != k) return false;
  return true;
}

SignedPermutation operator*(const SignedPermutation& p, const SignedPermutation& q) {
  if (p.n() != q.n()) throw Error("composing signed permutations of different sizes");
  SignedPermutation r(p.n());
  for (int k : r.points()) r.set(k, p(q(k)));
  return r;
}

// ---- SubsetPermutation ----

SubsetPermutation::SubsetPermutation(std::map<int, int> images) : images_(std::move(images)) {
  std::set<int> dom, img;
  for (auto [k, v] : images_) {
    dom.insert(k);
    img.insert(v);
  }
  if (dom != img) throw Error("subset permutation is not a bijection");
}

SubsetPermutation SubsetPermutation::from_cycles(const CycleList& cycles) {
  std::map<int, int> images;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) images[c[i]] = c[(i + 1) % c.size()];
  return SubsetPermutation(std::move(images));
}

CycleList SubsetPermutation::cycles() const {
  std::vector<int> pts;
  for (auto [k, v] : images_) pts.push_back(k);
  return cycles_of(pts, [this](int k) { return images_.at(k); });
}

bool SubsetPermutation::is_identity() const {
  for (auto [k, v] : images_)
    if (k != v) return false;
  return true;
}

namespace {

template <class P>
SubsetPermutation first_return(const P& p, std::span<const int> M) {
  std::set<int> in(M.begin(), M.end());
  std::map<int, int> images;
  for (int a : in) {
    int b = p(a);
    while (!in.count(b)) b = p(b);
    images[a] = b;
  }
  return SubsetPermutation(std::move(images));
}

}  // namespace

SubsetPermutation restrict_first_return(const Permutation& p, std::span<const int> M) {
  for (int a : M)
    if (a < 1 || a > p.n()) throw Error("restriction set leaves the domain");
  return first_return(p, M);
}

SubsetPermutation restrict_first_return(const SignedPermutation& p, std::span<const int> M) {
  for (int a : M)
    if (a == 0 || std::abs(a) > p.n()) throw Error("restriction set leaves the domain");
  return first_return(p, M);
}

bool separates(const Permutation& p, std::span<const int> M) {
  return restrict_first_return(p, M).is_identity();
}

bool separates(const SignedPermutation& p, std::span<const int> M) {
  return restrict_first_return(p, M).is_identity();
}

// ---- standard elements ----

Permutation gamma(int n) {
  std::vector<int> images(n);
  for (int k = 1; k <= n; ++k) images[k - 1] = k % n + 1;
  return Permutation::from_images(std::move(images));
}

Permutation gamma_vec(std::span<const int> parts) {
  std::vector<int> images;
  int start = 1;
  for (int m : parts) {
    if (m < 1) throw Error("gamma_vec parts must be positive");
    for (int j = 0; j < m; ++j) images.push_back(start + (j + 1) % m);
    start += m;
  }
  return Permutation::from_images(std::move(images));
}

SignedPermutation delta(int n) {
  SignedPermutation d(n);
  for (int k = 1; k <= n; ++k) {
    d.set(k, -k);
    d.set(-k, k);
  }
  return d;
}

SignedPermutation embed(const Permutation& p) {
  SignedPermutation s(p.n());
  for (int k = 1; k <= p.n(); ++k) s.set(k, p(k));
  return s;
}

SignedPermutation mirror(const Permutation& p) {
  SignedPermutation s(p.n());
  for (int k = 1; k <= p.n(); ++k) s.set(-k, -p(k));
  return s;
}

SignedPermutation doubled(const Permutation& p) {
  SignedPermutation s(p.n());
  Permutation inv = p.inverse();
  for (int k = 1; k <= p.n(); ++k) {
    s.set(k, p(k));
    s.set(-k, -inv(k));
  }
  return s;
}

StandardElements standard_elements(int n) {
  if (n < 1) throw Error("standard_elements needs n >= 1");
  Permutation g = gamma(n);
  return {delta(n), embed(g), doubled(g)};
}

}  // namespace infnc
