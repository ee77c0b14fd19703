#include "infnc/partition.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "infnc/error.hpp"
#include "infnc/limits.hpp"

namespace infnc {

Partition Partition::from_blocks(std::vector<Block> blocks) {
  std::set<int> seen;
  for (auto& b : blocks) {
    if (b.empty()) throw Error("empty block in partition");
    std::sort(b.begin(), b.end());
    for (int x : b) {
      if (x == 0) throw Error("0 is not a valid point");
      if (!seen.insert(x).second) throw Error("point repeated in partition");
    }
  }
  std::sort(blocks.begin(), blocks.end());
  Partition p;
  p.blocks_ = std::move(blocks);
  return p;
}

Partition Partition::from_cycles(const CycleList& cycles) {
  return from_blocks(std::vector<Block>(cycles.begin(), cycles.end()));
}

Partition Partition::parse(const std::string& text) {
  std::vector<Block> blocks;
  Block current;
  std::string number;
  bool open = false;
  auto flush = [&] {
    if (number.empty()) throw Error("bad partition notation: " + text);
    current.push_back(std::stoi(number));
    number.clear();
  };
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch == '{' && !open) {
      open = true;
    } else if (ch == '}' && open) {
      flush();
      blocks.push_back(std::move(current));
      current.clear();
      open = false;
    } else if (ch == ',' && open) {
      flush();
    } else if ((ch == '-' || (ch >= '0' && ch <= '9')) && open) {
      number += ch;
    } else {
      throw Error("bad partition notation: " + text);
    }
  }
  if (open) throw Error("unterminated block: " + text);
  return from_blocks(std::move(blocks));
}

int Partition::size() const {
  int s = 0;
  for (const auto& b : blocks_) s += static_cast<int>(b.size());
  return s;
}

std::vector<int> Partition::points() const {
  std::vector<int> pts;
  for (const auto& b : blocks_) pts.insert(pts.end(), b.begin(), b.end());
  std::sort(pts.begin(), pts.end());
  return pts;
}

Permutation Partition::to_permutation() const {
  int n = size();
  std::vector<int> images(n, 0);
  for (const auto& b : blocks_) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < 1 || b[i] > n) throw Error("partition is not of [n]");
      images[b[i] - 1] = b[(i + 1) % b.size()];
    }
  }
  return Permutation::from_images(std::move(images));
}

bool Partition::refines(const Partition& other) const {
  std::map<int, int> owner;
  for (int i = 0; i < other.num_blocks(); ++i)
    for (int x : other.blocks_[i]) owner[x] = i;
  for (const auto& b : blocks_) {
    auto it = owner.find(b.front());
    if (it == owner.end()) return false;
    for (int x : b) {
      auto jt = owner.find(x);
      if (jt == owner.end() || jt->second != it->second) return false;
    }
  }
  return true;
}

std::string Partition::str() const {
  std::string out;
  for (const auto& b : blocks_) {
    out += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(b[i]);
    }
    out += '}';
  }
  return out;
}

Partition zero_partition(int n) {
  std::vector<Block> blocks;
  for (int k = 1; k <= n; ++k) blocks.push_back({k});
  return Partition::from_blocks(std::move(blocks));
}

Partition one_partition(int n) {
  Block b(n);
  std::iota(b.begin(), b.end(), 1);
  return Partition::from_blocks({b});
}

Partition interval_partition(std::span<const int> parts) {
  return Partition::of(gamma_vec(parts));
}

Partition join(const Partition& a, const Partition& b) {
  std::vector<int> pts = a.points();
  if (pts != b.points()) throw Error("join of partitions of different sets");
  std::map<int, int> parent;
  for (int x : pts) parent[x] = x;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Partition* p : {&a, &b})
    for (const auto& blk : p->blocks())
      for (int x : blk) parent[find(x)] = find(blk.front());
  std::map<int, Block> groups;
  for (int x : pts) groups[find(x)].push_back(x);
  std::vector<Block> blocks;
  for (auto& [root, blk] : groups) blocks.push_back(std::move(blk));
  return Partition::from_blocks(std::move(blocks));
}

bool is_noncrossing(const Partition& p) {
  int n = p.size();
  if (n == 0) return true;
  Permutation pi = p.to_permutation();
  return pi.length() + (pi.inverse() * gamma(n)).length() == n - 1;
}

namespace {

void extend_nc(int n, std::vector<int>& rgs, std::vector<int>& last, std::vector<int>& first,
               std::vector<Partition>& out) {
  int i = static_cast<int>(rgs.size()) + 1;  // next point to place
  if (i > n) {
    std::vector<Block> blocks(last.size());
    for (int k = 1; k <= n; ++k) blocks[rgs[k - 1]].push_back(k);
    out.push_back(Partition::from_blocks(std::move(blocks)));
    return;
  }
  int nb = static_cast<int>(last.size());
  for (int b = 0; b <= nb; ++b) {
    if (b < nb) {
      // Joining block b is crossing iff some point strictly between last(b)
      // and i belongs to a block starting before last(b).
      bool crossing = false;
      for (int c = last[b] + 1; c < i && !crossing; ++c)
        if (first[rgs[c - 1]] < last[b]) crossing = true;
      if (crossing) continue;
      int saved = last[b];
      rgs.push_back(b);
      last[b] = i;
      extend_nc(n, rgs, last, first, out);
      last[b] = saved;
      rgs.pop_back();
    } else {
      rgs.push_back(b);
      last.push_back(i);
      first.push_back(i);
      extend_nc(n, rgs, last, first, out);
      first.pop_back();
      last.pop_back();
      rgs.pop_back();
    }
  }
}

}  // namespace

const std::vector<Partition>& enumerate_nc(int n) {
  if (n < 1) throw Error("enumerate_nc needs n >= 1");
  require_within_cap("non-crossing partition enumeration", n, enumeration_caps().nc);
  static std::mutex mutex;
  static std::map<int, std::vector<Partition>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Partition> out;
  std::vector<int> rgs, last, first;
  extend_nc(n, rgs, last, first, out);
  return cache.emplace(n, std::move(out)).first->second;
}

Permutation kreweras_permutation(const Partition& pi) {
  if (!is_noncrossing(pi)) throw Error("Kreweras complement of a crossing partition");
  Permutation p = pi.to_permutation();
  return p.inverse() * gamma(p.n());
}

Partition kreweras(const Partition& pi) { return Partition::of(kreweras_permutation(pi)); }

mpz_class catalan(int n) {
  mpz_class c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

Rational mobius_to_top(const Partition& pi) {
  Rational mu = 1;
  Partition k = kreweras(pi);
  for (const auto& v : k.blocks()) {
    int s = static_cast<int>(v.size());
    mpz_class term = catalan(s - 1);
    if ((s - 1) % 2) term = -term;
    mu *= Rational(term);
  }
  return mu;
}

Partition blow_up(const Partition& pi, std::span<const int> parts) {
  if (pi.size() != static_cast<int>(parts.size()))
    throw Error("blow_up needs one part per point");
  if (!is_noncrossing(pi)) throw Error("blow_up of a crossing partition");
  std::vector<int> start(parts.size() + 1, 1);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] < 1) throw Error("blow_up parts must be positive");
    start[k + 1] = start[k] + parts[k];
  }
  std::vector<Block> blocks;
  for (const auto& v : pi.blocks()) {
    Block b;
    for (int k : v)
      for (int x = start[k - 1]; x < start[k]; ++x) b.push_back(x);
    blocks.push_back(std::move(b));
  }
  return Partition::from_blocks(std::move(blocks));
}

}  // namespace infnc
