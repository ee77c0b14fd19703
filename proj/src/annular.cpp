#include "infnc/annular.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>

#include "infnc/error.hpp"
#include "infnc/limits.hpp"

namespace infnc {
namespace {

// Dense encoding of [±n]: k > 0 -> k - 1, -k -> n + k - 1.
struct Dense {
  int n;
  int idx(int k) const { return k > 0 ? k - 1 : n - k - 1; }
  int pt(int i) const { return i < n ? i + 1 : -(i - n + 1); }
  int gamma_annulus(int k) const { return k > 0 ? k % n + 1 : -((-k + n - 2) % n + 1); }
};

int count_cycles(const std::vector<int>& f) {
  std::vector<char> seen(f.size(), 0);
  int count = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    for (std::size_t j = i; !seen[j]; j = f[j]) seen[j] = 1;
  }
  return count;
}

// sig[i] is the index of sigma(pt(i)).
bool dense_member(const Dense& d, const std::vector<int>& sig) {
  int n = d.n;
  bool connected = false;
  for (int i = 0; i < n; ++i)
    if (sig[i] >= n) connected = true;
  if (!connected) return false;
  // sigma delta is a pairing: sigma(-k) != k and sigma(-sigma(-k)) = k
  for (int i = 0; i < 2 * n; ++i) {
    int k = d.pt(i);
    int j = sig[d.idx(-k)];
    if (j == i) return false;
    if (sig[d.idx(-d.pt(j))] != i) return false;
  }
  std::vector<int> inv(2 * n), h(2 * n);
  for (int i = 0; i < 2 * n; ++i) inv[sig[i]] = i;
  for (int i = 0; i < 2 * n; ++i) h[i] = inv[d.idx(d.gamma_annulus(d.pt(i)))];
  return count_cycles(sig) + count_cycles(h) == 2 * n;
}

std::vector<int> to_dense(const SignedPermutation& s) {
  Dense d{s.n()};
  std::vector<int> sig(2 * s.n());
  for (int i = 0; i < 2 * s.n(); ++i) sig[i] = d.idx(s(d.pt(i)));
  return sig;
}

SignedPermutation from_dense(const Dense& d, const std::vector<int>& sig) {
  SignedPermutation s(d.n);
  for (int i = 0; i < 2 * d.n; ++i) s.set(d.pt(i), d.pt(sig[i]));
  return s;
}

void sort_by_notation(std::vector<AnnularSymPermutation>& v) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < v.size(); ++i) keys.emplace_back(v[i].str(), i);
  std::sort(keys.begin(), keys.end());
  std::vector<AnnularSymPermutation> sorted;
  sorted.reserve(v.size());
  for (auto& [key, i] : keys) sorted.push_back(v[i]);
  v = std::move(sorted);
}

void pairings(const Dense& d, std::vector<int>& q, std::vector<AnnularSymPermutation>& out) {
  int size = 2 * d.n;
  int i = 0;
  while (i < size && q[i] >= 0) ++i;
  if (i == size) {
    std::vector<int> sig(size);
    for (int j = 0; j < size; ++j) sig[j] = q[d.idx(-d.pt(j))];
    if (dense_member(d, sig)) out.emplace_back(from_dense(d, sig));
    return;
  }
  for (int j = i + 1; j < size; ++j) {
    if (q[j] >= 0) continue;
    q[i] = j;
    q[j] = i;
    pairings(d, q, out);
    q[i] = q[j] = -1;
  }
}

template <class Build>
const std::vector<AnnularSymPermutation>& cached(std::map<int, std::vector<AnnularSymPermutation>>& cache,
                                                 std::mutex& mutex, int n, Build&& build) {
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto v = build();
  sort_by_notation(v);
  return cache.emplace(n, std::move(v)).first->second;
}

}  // namespace

AnnularSymPermutation::AnnularSymPermutation(SignedPermutation sigma) : sigma_(std::move(sigma)) {
  if (!is_member(sigma_))
    throw Error("not a symmetric non-crossing annular permutation: " + sigma_.str());
}

bool AnnularSymPermutation::is_member(const SignedPermutation& sigma) {
  if (sigma.n() < 1) return false;
  return dense_member(Dense{sigma.n()}, to_dense(sigma));
}

bool AnnularSymPermutation::all_through() const {
  for (const auto& c : cycles())
    if (!is_through(c)) return false;
  return true;
}

bool AnnularSymPermutation::is_pairing() const {
  for (const auto& c : cycles())
    if (c.size() != 2) return false;
  return true;
}

const std::vector<AnnularSymPermutation>& enumerate_sncd(int n) {
  if (n < 2) throw Error("enumerate_sncd needs n >= 2");
  require_within_cap("annular enumeration", n, enumeration_caps().annular);
  static std::mutex mutex;
  static std::map<int, std::vector<AnnularSymPermutation>> cache;
  return cached(cache, mutex, n, [n] {
    Dense d{n};
    std::vector<int> q(2 * n, -1);
    std::vector<AnnularSymPermutation> out;
    pairings(d, q, out);
    return out;
  });
}

const std::vector<AnnularSymPermutation>& enumerate_sncd_all_through(int n) {
  if (n < 2) throw Error("enumerate_sncd_all_through needs n >= 2");
  require_within_cap("all-through annular enumeration", n, enumeration_caps().all_through);
  static std::mutex mutex;
  static std::map<int, std::vector<AnnularSymPermutation>> cache;
  return cached(cache, mutex, n, [n] {
    // Every cycle meets both circles, so the positive parts of the cycles are
    // cyclic arcs of (1..n) and the negative parts are arcs of the inner
    // circle. Choose t arcs on each circle and match them cyclically.
    Dense d{n};
    std::vector<int> inner(n);  // inner circle in gamma-annulus order
    for (int k = 0, x = -1; k < n; ++k, x = d.gamma_annulus(x)) inner[k] = x;
    std::set<std::vector<int>> found;
    std::vector<int> outer_cuts, inner_cuts;
    auto arcs = [n](const std::vector<int>& cuts) {
      std::vector<std::vector<int>> out;
      for (std::size_t a = 0; a < cuts.size(); ++a) {
        std::vector<int> arc;
        int end = a + 1 < cuts.size() ? cuts[a + 1] : cuts[0] + n;
        for (int p = cuts[a]; p < end; ++p) arc.push_back(p % n);
        out.push_back(std::move(arc));
      }
      return out;
    };
    auto subsets = [n](int t) {
      std::vector<std::vector<int>> out;
      std::vector<int> cur;
      auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == t) {
          out.push_back(cur);
          return;
        }
        for (int p = start; p < n; ++p) {
          cur.push_back(p);
          self(self, p + 1);
          cur.pop_back();
        }
      };
      rec(rec, 0);
      return out;
    };
    for (int t = 1; t <= n; ++t) {
      auto cut_sets = subsets(t);
      for (const auto& oc : cut_sets) {
        auto outer_arcs = arcs(oc);
        for (const auto& ic : cut_sets) {
          auto inner_arcs = arcs(ic);
          for (int offset = 0; offset < t; ++offset) {
            for (int orientation = 0; orientation < 2; ++orientation) {
              for (int direction = 0; direction < 2; ++direction) {
                std::vector<int> sig(2 * n, -1);
                for (int a = 0; a < t; ++a) {
                  int b = orientation ? ((offset - a) % t + t) % t : (a + offset) % t;
                  std::vector<int> cyc;
                  for (int p : outer_arcs[a]) cyc.push_back(p + 1);
                  std::vector<int> neg;
                  for (int p : inner_arcs[b]) neg.push_back(inner[p]);
                  if (direction) std::reverse(neg.begin(), neg.end());
                  cyc.insert(cyc.end(), neg.begin(), neg.end());
                  for (std::size_t i = 0; i < cyc.size(); ++i)
                    sig[d.idx(cyc[i])] = d.idx(cyc[(i + 1) % cyc.size()]);
                }
                if (dense_member(d, sig)) found.insert(sig);
              }
            }
          }
        }
      }
    }
    std::vector<AnnularSymPermutation> out;
    for (const auto& sig : found) out.emplace_back(from_dense(d, sig));
    return out;
  });
}

SignedPermutation kdelta(const SignedPermutation& sigma) {
  Permutation g = gamma(sigma.n());
  return mirror(g.inverse()) * sigma.inverse() * embed(g);
}

SignedPermutation relative_kreweras(const SignedPermutation& tau, const Permutation& rho) {
  if (tau.n() != rho.n()) throw Error("relative Kreweras complement of different sizes");
  return mirror(rho.inverse()) * tau.inverse() * embed(rho);
}

bool is_through(const Cycle& cycle) {
  bool pos = false, neg = false;
  for (int x : cycle) (x > 0 ? pos : neg) = true;
  return pos && neg;
}

namespace {

int min_positive(const Cycle& c) {
  int best = 0;
  for (int x : c)
    if (x > 0 && (best == 0 || x < best)) best = x;
  return best;
}

}  // namespace

std::vector<ConjugatePair> conjugate_pairs(const SignedPermutation& sigma) {
  for (int k : sigma.points()) {
    int j = sigma(-k);
    if (j == k || sigma(-j) != k) throw Error("sigma delta is not a pairing: " + sigma.str());
  }
  CycleList cycles = sigma.cycles();
  std::map<Cycle, std::size_t> position;
  for (std::size_t i = 0; i < cycles.size(); ++i) position[cycles[i]] = i;
  std::vector<char> used(cycles.size(), 0);
  std::vector<ConjugatePair> out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (used[i]) continue;
    const Cycle& c = cycles[i];
    Cycle conj(c.rbegin(), c.rend());
    for (int& x : conj) x = -x;
    conj = canonical_cycles({conj}).front();
    auto it = position.find(conj);
    if (it == position.end()) throw Error("cycle without a conjugate partner in " + sigma.str());
    used[i] = used[it->second] = 1;
    ConjugatePair pair{c, conj, it->second == i};
    int a = min_positive(c), b = min_positive(conj);
    if (a == 0 || (b != 0 && b < a)) std::swap(pair.representative, pair.partner);
    out.push_back(std::move(pair));
  }
  return out;
}

AnnularSymPermutation spoke(int n) {
  if (n < 2 || n % 2) throw Error("spoke needs an even n >= 2");
  CycleList cycles;
  for (int k = 1; k <= n; ++k) cycles.push_back({k, -((n / 2 + k - 1) % n + 1)});
  return AnnularSymPermutation(SignedPermutation::from_cycles(n, cycles));
}

Classification classify(const AnnularSymPermutation& sigma) {
  Block V;
  std::vector<Block> blocks;
  for (const auto& c : sigma.cycles()) {
    if (is_through(c)) {
      for (int x : c)
        if (x > 0) V.push_back(x);
    } else if (c.front() > 0) {
      blocks.push_back(c);
    }
  }
  std::sort(V.begin(), V.end());
  blocks.push_back(V);
  Partition pi = Partition::from_blocks(std::move(blocks));
  if (!is_noncrossing(pi)) throw Error("classification produced a crossing partition");
  return {pi, V};
}

bool in_reduction_class(const SignedPermutation& sigma, const Partition& pi, const Block& V) {
  std::set<int> inside;
  for (int x : V) {
    inside.insert(x);
    inside.insert(-x);
  }
  std::set<Cycle> allowed;
  for (const auto& c : doubled(pi.to_permutation()).cycles()) allowed.insert(c);
  for (const auto& c : sigma.cycles()) {
    bool contained = std::all_of(c.begin(), c.end(), [&](int x) { return inside.count(x) > 0; });
    bool ok = contained ? is_through(c) : allowed.count(c) > 0;
    if (!ok) return false;
  }
  return true;
}

SignedPermutation through_part(const AnnularSymPermutation& sigma) {
  Block V = classify(sigma).through_block;
  std::map<int, int> relabel;
  for (std::size_t i = 0; i < V.size(); ++i) {
    relabel[V[i]] = static_cast<int>(i) + 1;
    relabel[-V[i]] = -(static_cast<int>(i) + 1);
  }
  CycleList cycles;
  for (const auto& c : sigma.cycles()) {
    if (!is_through(c)) continue;
    Cycle r;
    for (int x : c) r.push_back(relabel.at(x));
    cycles.push_back(std::move(r));
  }
  return SignedPermutation::from_cycles(static_cast<int>(V.size()), cycles);
}

}  // namespace infnc
