#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "infnc/perm.hpp"
#include "oracles.hpp"

using namespace infnc;

namespace {

SignedPermutation random_signed(int n, std::mt19937_64& rng) {
  std::vector<int> pts;
  for (int k = 1; k <= n; ++k) {
    pts.push_back(k);
    pts.push_back(-k);
  }
  auto images = pts;
  std::shuffle(images.begin(), images.end(), rng);
  SignedPermutation p(n);
  for (std::size_t i = 0; i < pts.size(); ++i) p.set(pts[i], images[i]);
  return p;
}

}  // namespace

TEST_CASE("composition reads right to left") {
  auto d = delta(3);
  CHECK((d * d).is_identity());
  CHECK((SignedPermutation(2) * SignedPermutation(2)).is_identity());
  auto g = embed(gamma(3));
  auto gd = g * d;
  // gamma_3 delta: 1 -> -1 -> -1, -1 -> 1 -> 2
  CHECK(gd(1) == -1);
  CHECK(gd(-1) == 2);
  CHECK(gd(-3) == 1);
  CHECK_THROWS(delta(2) * delta(3));
}

TEST_CASE("canonical cycle listing") {
  CHECK(delta(2).str() == "(1,-1)(2,-2)");
  CHECK(standard_elements(6).gamma_annulus.str() == "(1,2,3,4,5,6)(-1,-6,-5,-4,-3,-2)");
  auto s1 = SignedPermutation::parse("(1,-4)(-1,4)(2,3)(-2,-3)");
  CHECK(s1.str() == "(1,-4)(-1,4)(2,3)(-2,-3)");
  CHECK(s1.cycles().size() == 4);
  // fixed points are printed
  CHECK(SignedPermutation::parse("(1,2)", 2).str() == "(1,2)(-1)(-2)");
  CHECK(s1.str() == s1.str());
}

TEST_CASE("parse errors") {
  CHECK_THROWS(parse_cycles("(1,0)"));
  CHECK_THROWS(parse_cycles("(1,2"));
  CHECK_THROWS(parse_cycles("(1,2)(2,3)"));
  CHECK_THROWS(parse_cycles("(1,x)"));
  CHECK_THROWS(Permutation::from_images({1, 1}));
}

TEST_CASE("length") {
  CHECK(SignedPermutation(3).length() == 0);
  CHECK(delta(3).length() == 3);
  CHECK(gamma(5).length() == 4);
}

TEST_CASE("length equals transposition distance on S_4") {
  std::vector<int> images{1, 2, 3, 4};
  do {
    auto p = Permutation::from_images(images);
    CHECK(p.length() == oracle::transposition_distance(images));
  } while (std::next_permutation(images.begin(), images.end()));
}

TEST_CASE("inverse, involution and triangle inequality on random elements") {
  auto rng = oracle::rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 6;
    auto p = random_signed(n, rng), q = random_signed(n, rng);
    CHECK((p * p.inverse()).is_identity());
    CHECK((p.inverse() * p).is_identity());
    CHECK((p * q).length() <= p.length() + q.length());
    CHECK(SignedPermutation::parse(p.str(), n) == p);
  }
}

TEST_CASE("standard elements") {
  for (int n = 1; n <= 7; ++n) {
    auto e = standard_elements(n);
    CHECK((e.delta * e.delta).is_identity());
    CHECK(e.gamma_annulus == e.gamma * e.delta * e.gamma.inverse() * e.delta);
    if (n >= 2) {
      auto cycles = e.gamma_annulus.cycles();
      REQUIRE(cycles.size() == 2);
      CHECK(cycles[0].size() == static_cast<std::size_t>(n));
      CHECK(cycles[1].size() == static_cast<std::size_t>(n));
    }
  }
  CHECK(standard_elements(1).gamma.is_identity());
  std::vector<int> p22{2, 2};
  CHECK(gamma_vec(p22).str() == "(1,2)(3,4)");
  std::vector<int> p3{3, 3, 3, 3, 3};
  CHECK(gamma_vec(p3).str() == "(1,2,3)(4,5,6)(7,8,9)(10,11,12)(13,14,15)");
}

TEST_CASE("first-return restriction") {
  std::vector<int> M{2, 4, 5};
  CHECK(restrict_first_return(Permutation(5), M).is_identity());
  // against direct iteration of gamma: the cyclic successor within M
  for (int n = 2; n <= 6; ++n) {
    auto g = gamma(n);
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> S;
      for (int k = 1; k <= n; ++k)
        if (mask >> (k - 1) & 1) S.push_back(k);
      auto r = restrict_first_return(g, S);
      for (std::size_t i = 0; i < S.size(); ++i) CHECK(r(S[i]) == S[(i + 1) % S.size()]);
    }
  }
}

TEST_CASE("separation agrees with cycle membership") {
  auto rng = oracle::rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + trial % 5;
    std::vector<int> images(n);
    for (int k = 0; k < n; ++k) images[k] = k + 1;
    std::shuffle(images.begin(), images.end(), rng);
    auto p = Permutation::from_images(images);
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> S;
      for (int k = 1; k <= n; ++k)
        if (mask >> (k - 1) & 1) S.push_back(k);
      bool distinct = true;
      for (const auto& c : p.cycles()) {
        int hits = 0;
        for (int x : c) hits += std::count(S.begin(), S.end(), x);
        if (hits > 1) distinct = false;
      }
      CHECK(separates(p, S) == distinct);
    }
  }
}
