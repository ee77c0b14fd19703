#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "infnc/partition.hpp"
#include "oracles.hpp"

using namespace infnc;

TEST_CASE("non-crossing test") {
  CHECK_FALSE(is_noncrossing(Partition::parse("{1,3}{2,4}")));
  CHECK(is_noncrossing(Partition::parse("{1,4}{2,3}")));
  for (int n = 1; n <= 7; ++n) {
    int count = 0;
    for (const auto& blocks : oracle::set_partitions(n)) {
      bool nc = is_noncrossing(Partition::from_blocks(blocks));
      CHECK(nc == !oracle::crossing(blocks));
      count += nc;
    }
    CHECK(count == oracle::catalan_table(n)[n]);
  }
}

TEST_CASE("enumeration") {
  auto cat = oracle::catalan_table(10);
  for (int n = 1; n <= 9; ++n) {
    const auto& all = enumerate_nc(n);
    CHECK(all.size() == static_cast<std::size_t>(cat[n]));
    std::set<Partition> distinct(all.begin(), all.end());
    CHECK(distinct.size() == all.size());
    if (n <= 7)
      for (const auto& p : all) CHECK(is_noncrossing(p));
  }
  CHECK(enumerate_nc(1).front().str() == "{1}");
  CHECK(enumerate_nc(3).size() == 5);
  // restricted growth strings 000, 001, 010, 011, 012
  CHECK(enumerate_nc(3).front() == one_partition(3));
  CHECK(enumerate_nc(3).back() == zero_partition(3));
  CHECK_THROWS(enumerate_nc(13));
}

TEST_CASE("Kreweras complement") {
  CHECK(kreweras(zero_partition(5)) == one_partition(5));
  CHECK(kreweras(one_partition(5)) == zero_partition(5));
  for (int n = 1; n <= 8; ++n)
    for (const auto& p : enumerate_nc(n)) {
      auto k = kreweras(p);
      CHECK(p.num_blocks() + k.num_blocks() == n + 1);
      CHECK(is_noncrossing(k));
    }
  CHECK_THROWS(kreweras(Partition::parse("{1,3}{2,4}")));
}

TEST_CASE("Moebius function") {
  CHECK(mobius_to_top(one_partition(4)) == 1);
  CHECK(mobius_to_top(zero_partition(2)) == -1);
  CHECK(mobius_to_top(zero_partition(4)) == -5);
  auto cat = oracle::catalan_table(10);
  for (int n = 1; n <= 8; ++n) {
    Rational sum = 0;
    for (const auto& p : enumerate_nc(n)) sum += mobius_to_top(p);
    CHECK(sum == (n == 1 ? 1 : 0));
    Rational expected = static_cast<long>((n % 2 ? 1 : -1) * cat[n - 1]);
    CHECK(mobius_to_top(zero_partition(n)) == expected);
  }
}

TEST_CASE("Moebius function against the lattice recursion") {
  // mu(pi, 1) = -sum_{sigma > pi} mu(sigma, 1), with mu(1, 1) = 1
  for (int n = 1; n <= 6; ++n) {
    const auto& all = enumerate_nc(n);
    std::map<Partition, Rational> mu;
    std::vector<Partition> by_blocks(all.begin(), all.end());
    std::sort(by_blocks.begin(), by_blocks.end(),
              [](const Partition& a, const Partition& b) { return a.num_blocks() < b.num_blocks(); });
    for (const auto& p : by_blocks) {
      Rational s = 0;
      for (const auto& q : by_blocks)
        if (q != p && p.refines(q)) s += mu.at(q);
      mu[p] = p.num_blocks() == 1 ? Rational(1) : Rational(-s);
      CHECK(mu[p] == mobius_to_top(p));
    }
  }
}

TEST_CASE("join") {
  auto p = Partition::parse("{1,3}{2}{4}");
  CHECK(join(p, zero_partition(4)) == p);
  CHECK(join(p, Partition::parse("{1,2}{3,4}")) == one_partition(4));
  CHECK(join(Partition::parse("{1,2}{3,4}"), Partition::parse("{2,3}{1}{4}")) == one_partition(4));
  // against union-find on random pairs
  for (int n = 1; n <= 5; ++n) {
    auto all = oracle::set_partitions(n);
    for (std::size_t i = 0; i < all.size(); i += 3)
      for (std::size_t j = 0; j < all.size(); j += 5) {
        oracle::UnionFind uf;
        for (int k = 1; k <= n; ++k) uf.find(k);
        for (const auto* blocks : {&all[i], &all[j]})
          for (const auto& b : *blocks)
            for (int x : b) uf.unite(x, b.front());
        auto J = join(Partition::from_blocks(all[i]), Partition::from_blocks(all[j]));
        for (const auto& b : J.blocks())
          for (int x : b) CHECK(uf.find(x) == uf.find(b.front()));
        std::set<int> roots;
        for (int k = 1; k <= n; ++k) roots.insert(uf.find(k));
        CHECK(static_cast<int>(roots.size()) == J.num_blocks());
      }
  }
}

TEST_CASE("blow-up") {
  std::vector<int> parts{2, 1, 3};
  CHECK(blow_up(one_partition(3), parts) == one_partition(6));
  CHECK(blow_up(zero_partition(3), parts) == interval_partition(parts));
  CHECK(blow_up(Partition::parse("{1,3}{2}"), parts).str() == "{1,2,4,5,6}{3}");
  for (const auto& p : enumerate_nc(4)) {
    std::vector<int> q{1, 2, 2, 1};
    CHECK(is_noncrossing(blow_up(p, q)));
  }
}

TEST_CASE("separation and joins with interval partitions") {
  // K(rho) sep M  <=>  rho v gamma_m = 1_m
  for (int m = 1; m <= 6; ++m) {
    for (int mask = 0; mask < (1 << (m - 1)); ++mask) {
      std::vector<int> parts;
      int run = 1;
      for (int k = 1; k < m; ++k) {
        if (mask >> (k - 1) & 1) {
          parts.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      parts.push_back(run);
      std::vector<int> M;
      int acc = 0;
      for (int x : parts) M.push_back(acc += x);
      auto gm = interval_partition(parts);
      for (const auto& rho : enumerate_nc(m)) {
        bool sep = separates(kreweras_permutation(rho), M);
        CHECK(sep == (join(rho, gm) == one_partition(m)));
      }
    }
  }
}

TEST_CASE("text format") {
  auto p = Partition::parse("{2,3}{1,4}");
  CHECK(p.str() == "{1,4}{2,3}");
  CHECK_THROWS(Partition::parse("{1,2}{2}"));
  CHECK_THROWS(Partition::parse("{1,2"));
}
