#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "infnc/cumulants.hpp"
#include "infnc/error.hpp"
#include "models.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

using namespace infnc;

namespace {

Word w(const char* text) { return parse_word(text); }
Entries e(const char* text) { return letters_of(parse_word(text)); }

// Truncated power series with rational coefficients.
using Series = std::vector<Rational>;

Series multiply(const Series& a, const Series& b, std::size_t order) {
  Series c(order + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series inverse(const Series& a, std::size_t order) {
  Series b(order + 1, 0);
  b[0] = 1 / a[0];
  for (std::size_t n = 1; n <= order; ++n) {
    Rational s = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * b[n - k];
    b[n] = -s / a[0];
  }
  return b;
}

CumulantTable single_variable_table(const std::vector<Rational>& kappa) {
  CumulantTable t(static_cast<int>(kappa.size()) - 1, models::symmetric_form({1}));
  for (std::size_t n = 1; n < kappa.size(); ++n) t.set_kappa(models::power(1, n), kappa[n]);
  return t;
}

}  // namespace

TEST_CASE("canonical words") {
  CanonicalForm tracial{true, false, {}};
  CanonicalForm symmetric{false, true, {}};
  CHECK(canonicalize(w("2 1"), tracial) == w("1 2"));
  CHECK(canonicalize(w("1t 2t"), symmetric) == w("2 1"));
  CHECK(canonicalize(w("1t 1"), CanonicalForm{true, true, {1}}) == w("1 1"));
  CHECK(transpose(w("1 2t 3")) == w("3t 2 1t"));
  auto rng = oracle::rng(3);
  std::uniform_int_distribution<int> len(0, 7), gen(1, 3), flag(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    Word x;
    int n = len(rng);
    for (int i = 0; i < n; ++i) x.push_back({gen(rng), flag(rng) == 1});
    for (bool tr : {false, true})
      for (bool ts : {false, true}) {
        CanonicalForm f{tr, ts, {3}};
        auto c = canonicalize(x, f);
        CHECK(canonicalize(c, f) == c);
        if (tr && !x.empty()) {
          Word r = x;
          std::rotate(r.begin(), r.begin() + 1, r.end());
          CHECK(canonicalize(r, f) == c);
        }
        if (ts) CHECK(canonicalize(transpose(x), f) == c);
      }
  }
  CHECK(parse_word("") == Word{});
  CHECK(format_word(w("1 2t")) == "1 2t");
  CHECK_THROWS(parse_word("0"));
  CHECK_THROWS(parse_word("a"));
}

TEST_CASE("distribution storage and JSON") {
  auto d = models::goe();
  CHECK(d.tau({}) == 1);
  CHECK(d.tau_prime({}) == 0);
  CHECK(d.tau(w("1 1 1 1")) == 2);
  auto j = d.to_json();
  CHECK(Distribution::from_json(j) == d);
  CHECK(Distribution::from_json(nlohmann::json::parse(j.dump())) == d);
  // inference of symmetric generators
  auto k = nlohmann::json::parse(
      R"({"degree": 2, "tracial": true, "transpose_symmetric": true,
          "tau": {"1 1": "1", "1": "0", "2": "1/2", "2 2t": "3"}, "tau_prime": {"1 1": "1"}})");
  auto d2 = Distribution::from_json(k, true);
  CHECK(d2.form().symmetric == std::set<int>{1});
  CHECK(d2.tau(w("2t")) == Rational(1, 2));
  CHECK(d2.tau(w("2t 2")) == 3);
  CHECK(d2.tau(w("1 2")) == 0);
  CHECK_THROWS_AS(Distribution::from_json(k).tau(w("1 2")), MissingValue);
  // non-canonical key
  auto bad = nlohmann::json::parse(R"({"degree": 2, "tau": {"2 1": "1"}, "tau_prime": {}})");
  CHECK_THROWS_AS(Distribution::from_json(bad), Error);
  CHECK_THROWS(d.tau(w("1 1 1 1 1 1 1")));
  auto rng = oracle::rng(5);
  auto r = models::random_distribution(rng, 4, {1, 2}, {1});
  CHECK(Distribution::from_json(r.to_json()) == r);
}

TEST_CASE("tau_pi and its derivative") {
  auto d = models::goe();
  auto s4 = e("1 1 1 1");
  CHECK(tau_pi(one_partition(4), s4, d) == d.tau(w("1 1 1 1")));
  CHECK(tau_pi(zero_partition(4), s4, d) == 0);
  CHECK(tau_pi(Partition::parse("{1,2}{3,4}"), s4, d) == 1);
  CHECK(dtau_pi(zero_partition(4), s4, d) == 0);
  CHECK(dtau_pi(Partition::parse("{1,2}{3,4}"), s4, d) == 2);
  auto rng = oracle::rng(9);
  auto r = models::random_distribution(rng, 2, {1, 2}, {});
  auto a = e("1 2t");
  CHECK(dtau_pi(zero_partition(2), a, r) ==
        r.tau_prime(w("1")) * r.tau(w("2t")) + r.tau(w("1")) * r.tau_prime(w("2t")));
}

TEST_CASE("free cumulants by Moebius inversion") {
  MomentCumulants goe(models::goe());
  for (int n = 1; n <= 6; ++n)
    CHECK(goe.kappa(letters_of(models::power(1, n))) == (n == 2 ? 1 : 0));
  MomentCumulants poisson(models::goe_square());
  for (int n = 1; n <= 3; ++n) CHECK(poisson.kappa(letters_of(models::power(1, n))) == 1);
  Distribution one(5, models::symmetric_form({1}));
  for (int n = 1; n <= 5; ++n) one.set_tau(models::power(1, n), 1);
  MomentCumulants c(one);
  for (int n = 1; n <= 5; ++n) CHECK(c.kappa(letters_of(models::power(1, n))) == (n == 1 ? 1 : 0));
  // a free Poisson law with rate 1 has Catalan moments, checked to degree 6
  Distribution mp(6, models::symmetric_form({1}));
  for (int n = 1; n <= 6; ++n) mp.set_tau(models::power(1, n), catalan(n));
  MomentCumulants mpc(mp);
  for (int n = 1; n <= 6; ++n) CHECK(mpc.kappa(letters_of(models::power(1, n))) == 1);
}

TEST_CASE("Moebius inversion re-sums to the moments") {
  auto rng = oracle::rng(21);
  auto d = models::random_distribution(rng, 5, {1, 2}, {1});
  MomentCumulants c(d);
  for (const auto& x : canonical_words(d.generators(), d.form(), 5))
    CHECK(tau_from_cumulants(letters_of(x), c) == d.tau(x));
}

TEST_CASE("annular terms") {
  MomentCumulants goe(models::goe());
  for (int k = 1; k <= 3; ++k)
    CHECK(kappa_sigma_half(spoke(2 * k), letters_of(models::power(1, 2 * k)), goe) == 1);
  auto s1 = AnnularSymPermutation(SignedPermutation::parse("(1,-4)(-1,4)(2,3)(-2,-3)"));
  CHECK(kappa_sigma_half(s1, e("1 1 1 1"), goe) == 1);
  MomentCumulants poisson(models::goe_square());
  for (const auto& s : enumerate_sncd(3)) CHECK(kappa_sigma_half(s, e("1 1 1"), poisson) == 1);
  // single symmetric letter with arbitrary kappa_2: spoke gives kappa_2^k
  auto t = single_variable_table({0, Rational(1, 3), Rational(7, 2), 2, 5, -1, 3});
  for (int k = 1; k <= 3; ++k) {
    Rational expected = 1;
    for (int i = 0; i < k; ++i) expected *= Rational(7, 2);
    CHECK(kappa_sigma_half(spoke(2 * k), letters_of(models::power(1, 2 * k)), t) == expected);
  }
  // spoke reading pairs k with -(n/2 + k)
  auto reading = annular_reading(spoke(4));
  REQUIRE(reading.size() == 2);
  CHECK(reading[0] == AnnularFactor{{1, false}, {3, true}});
  CHECK(reading[1] == AnnularFactor{{2, false}, {4, true}});
}

TEST_CASE("conjugate representative does not matter") {
  auto rng = oracle::rng(33);
  auto d = models::random_distribution(rng, 4, {1, 2}, {});
  MomentCumulants c(d);
  for (int n = 2; n <= 4; ++n)
    for (const auto& s : enumerate_sncd(n)) {
      Entries a;
      for (int i = 0; i < n; ++i) a.push_back({{1 + i % 2, i % 3 == 0}});
      Rational swapped = 1;
      for (const auto& pair : conjugate_pairs(s.permutation())) {
        Cycle cyc = pair.partner;
        std::size_t start = 0;
        for (std::size_t i = 0; i < cyc.size(); ++i)
          if (cyc[i] > 0 && cyc[(i + cyc.size() - 1) % cyc.size()] < 0) start = i;
        std::rotate(cyc.begin(), cyc.begin() + start, cyc.end());
        Entries args;
        for (int x : cyc) args.push_back(x > 0 ? a[x - 1] : transpose(a[-x - 1]));
        swapped *= c.kappa(args);
      }
      CHECK(swapped == kappa_sigma_half(s, a, c));
    }
}

TEST_CASE("spatial derivative") {
  auto rng = oracle::rng(41);
  auto d = models::random_distribution(rng, 2, {1, 2}, {});
  MomentCumulants c(d);
  for (const char* pair : {"1 2", "1t 2", "2 2", "1 1t"}) {
    auto a = e(pair);
    Entries flipped{a[0], transpose(a[1])};
    CHECK(kappa_dot(a, c) == c.kappa(flipped));
    CHECK(kappa_dot(a, c) == d.tau(concatenate(flipped)) - d.tau(a[0]) * d.tau(transpose(a[1])));
  }
  CHECK(kappa_dot(e("1"), c) == 0);
  auto t = single_variable_table({0, Rational(1, 3), Rational(7, 2), 2, 5, -1, 3});
  Rational k2(7, 2), k3 = 2, k4 = 5, k6 = 3;
  CHECK(kappa_dot(letters_of(models::power(1, 4)), t) == 6 * k4 + k2 * k2);
  CHECK(kappa_dot(letters_of(models::power(1, 6)), t) == 15 * k6 + 9 * k2 * k4 + 6 * k3 * k3 + k2 * k2 * k2);
}

TEST_CASE("derivative operators") {
  auto rng = oracle::rng(43);
  auto d = models::random_distribution(rng, 3, {1, 2}, {});
  MomentCumulants c(d);
  auto a = e("1");
  CHECK(dkappa_pi(zero_partition(1), a, c) == c.kappa_prime(a));
  CHECK(c.kappa_prime(a) == d.tau_prime(w("1")));
  auto b = e("1 2t");
  CHECK(dkappa_pi(zero_partition(2), b, c) ==
        c.kappa_prime({b[0]}) * c.kappa({b[1]}) + c.kappa({b[0]}) * c.kappa_prime({b[1]}));
  CHECK(delta_kappa_pi(one_partition(2), b, c) == kappa_dot(b, c));
  CHECK(delta_kappa_pi(zero_partition(2), b, c) == 0);
  auto x = e("1 2 1t");
  for (const auto& p : enumerate_nc(3))
    CHECK(nabla_kappa_pi(p, x, c) == dkappa_pi(p, x, c) + delta_kappa_pi(p, x, c));
}

TEST_CASE("infinitesimal moment-cumulant relations") {
  auto rng = oracle::rng(47);
  auto d = models::random_distribution(rng, 2, {1, 2}, {});
  MomentCumulants c(d);
  auto a = e("1 2");
  auto x = a[0], y = a[1];
  // n = 2 real and complex forms
  CHECK(tau_prime_from_cumulants(a, c) ==
        c.kappa_prime(a) + c.kappa_prime({x}) * c.kappa({y}) + c.kappa({x}) * c.kappa_prime({y}) +
            c.kappa({x, transpose(y)}));
  MomentCumulants cc(d, Mode::Complex);
  CHECK(complex_tau_prime_from_cumulants(a, cc) ==
        cc.kappa_prime(a) + cc.kappa_prime({x}) * cc.kappa({y}) + cc.kappa({x}) * cc.kappa_prime({y}));
  CHECK(tau_prime_from_cumulants({x}, c) == c.kappa_prime({x}));
  CHECK(cc.kappa_prime({x}) == c.kappa_prime({x}));
  CHECK(tau_prime_from_cumulants(a, c) == d.tau_prime(w("1 2")));
  CHECK(complex_tau_prime_from_cumulants(a, cc) == d.tau_prime(w("1 2")));
}

TEST_CASE("GOE and Wishart infinitesimal cumulants") {
  MomentCumulants goe(models::goe());
  for (int n = 1; n <= 6; ++n) CHECK(goe.kappa_prime(letters_of(models::power(1, n))) == 0);
  MomentCumulants complex_goe(models::goe(), Mode::Complex);
  CHECK(complex_goe.kappa_prime(e("1 1")) == 1);
  // x = s^2
  MomentCumulants x(models::goe_square());
  CHECK(x.kappa_prime(e("1 1")) == 2);
  CHECK(x.kappa_prime(e("1 1 1")) == 4);
  CHECK(tau_prime_from_cumulants(e("1 1 1"), x) == 22);
  // the three terms of tau'(x^3) apart from kappa'_3
  Rational rest = 0;
  for (const auto& p : enumerate_nc(3))
    if (p != one_partition(3)) rest += dkappa_pi(p, e("1 1 1"), x);
  for (const auto& s : enumerate_sncd(3)) rest += kappa_sigma_half(s, e("1 1 1"), x);
  CHECK(rest == 18);
  // real Wishart, M = N: E tr W = 1 and E tr W^2 = 2 + 1/N
  Distribution wishart(2, models::symmetric_form({1}));
  wishart.set_tau(w("1"), 1);
  wishart.set_tau(w("1 1"), 2);
  wishart.set_tau_prime(w("1"), 0);
  wishart.set_tau_prime(w("1 1"), 1);
  CHECK(MomentCumulants(wishart).kappa_prime(e("1 1")) == 0);
  CHECK(MomentCumulants(wishart, Mode::Complex).kappa_prime(e("1 1")) == 1);
}

TEST_CASE("memoized cumulants agree with direct evaluation on every tuple") {
  auto rng = oracle::rng(51);
  auto d = models::random_distribution(rng, 4, {1, 2}, {1});
  MomentCumulants c(d);
  auto letters = alphabet(d.generators(), d.form());
  letters.push_back({1, true});  // a symmetric letter written with a flag
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      Entries a;
      for (auto i : idx) a.push_back({letters[i]});
      Rational direct = 0, direct_prime = 0;
      const auto& all = enumerate_nc(n);
      for (const auto& p : all) {
        direct += mobius_to_top(p) * tau_pi(p, a, d);
        direct_prime += mobius_to_top(p) * dtau_pi(p, a, d);
      }
      if (n >= 2) direct_prime -= kappa_dot(a, c);
      CHECK(c.kappa(a) == direct);
      CHECK(c.kappa_prime(a) == direct_prime);
      int k = 0;
      while (k < n && ++idx[k] == letters.size()) idx[k++] = 0;
      if (k == n) break;
    }
  }
}

TEST_CASE("round trip through cumulant tables") {
  auto rng = oracle::rng(57);
  for (int trial = 0; trial < 3; ++trial) {
    auto d = models::random_distribution(rng, 5, {1, 2}, {1});
    auto table = infinitesimal_cumulants_from_distribution(d);
    auto j = table.to_json();
    auto reread = CumulantTable::from_json(j);
    for (const auto& x : canonical_words(d.generators(), d.form(), 5)) {
      CHECK(tau_from_cumulants(letters_of(x), reread) == d.tau(x));
      CHECK(tau_prime_from_cumulants(letters_of(x), reread) == d.tau_prime(x));
    }
    auto complex_table = infinitesimal_cumulants_from_distribution(d, Mode::Complex);
    for (const auto& x : canonical_words(d.generators(), d.form(), 5))
      CHECK(complex_tau_prime_from_cumulants(letters_of(x), complex_table) == d.tau_prime(x));
  }
}

TEST_CASE("cumulant tables") {
  CumulantTable t(3, models::symmetric_form({1}));
  t.set_kappa(w("1 1"), 1);
  CHECK(t.kappa(e("1 1")) == 1);
  CHECK_THROWS_AS(t.kappa(e("1 1 1")), MissingValue);
  CHECK_THROWS(t.kappa({w("1 1")}));
  CumulantTable sparse(3, models::symmetric_form({1}), true);
  CHECK(sparse.kappa(e("1 1 1")) == 0);
}

TEST_CASE("annular terms need a tracial symmetric source") {
  Distribution d(2, CanonicalForm{false, true, {1}});
  d.set_tau(w("1"), 0);
  d.set_tau(w("1 1"), 1);
  d.set_tau_prime(w("1"), 0);
  d.set_tau_prime(w("1 1"), 1);
  MomentCumulants c(d);
  CHECK_THROWS(c.kappa_prime(e("1 1")));
  CHECK(c.kappa(e("1 1")) == 1);
}

TEST_CASE("kappa_dot polynomials") {
  for (int n = 2; n <= 10; ++n) {
    auto published = reference::polynomial(reference::kappa_dot_cumulant_rows()[n]);
    if (n == reference::omission_n) {
      CHECK(kappa_dot_polynomial(n) != published);
      published = published + reference::polynomial(reference::published_omission());
    }
    CHECK(kappa_dot_polynomial(n) == published);
    // coefficients count the all-through elements
    CHECK(kappa_dot_polynomial(n).evaluate([](int) { return Rational(1); }) ==
          Rational((1L << (n - 1)) - 1));
  }
  CHECK(kappa_dot_polynomial(5).str("k") == "10k5 + 5k2k3");
  for (int n = 2; n <= 6; ++n) {
    auto moments = kappa_dot_polynomial(n).substitute([](int j) { return kappa_in_moments(j); });
    CHECK(moments == reference::polynomial(reference::kappa_dot_moment_rows()[n]));
  }
  CHECK(kappa_in_moments(2).str("m") == "m2 - m1^2");
}

TEST_CASE("kappa_dot polynomial against the engine") {
  // with a random single-variable distribution the engine's kappa_dot equals
  // the moment polynomial evaluated at the moments
  auto rng = oracle::rng(61);
  auto d = models::random_distribution(rng, 6, {1}, {1});
  MomentCumulants c(d);
  for (int n = 2; n <= 6; ++n) {
    auto moments = kappa_dot_polynomial(n).substitute([](int j) { return kappa_in_moments(j); });
    Rational v = moments.evaluate([&](int i) { return d.tau(models::power(1, i)); });
    CHECK(v == kappa_dot(letters_of(models::power(1, n)), c));
  }
}

TEST_CASE("generating function of kappa_dot") {
  auto rng = oracle::rng(67);
  const std::size_t order = 8;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Rational> kappa(order + 1, 0);
    for (std::size_t n = 1; n <= order; ++n) kappa[n] = models::random_rational(rng);
    Series C(order + 1, 0), D(order + 1, 0), x2C2(order + 1, 0);
    C[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) C[n] = kappa[n];
    // C - x C'
    for (std::size_t n = 0; n <= order; ++n) D[n] = C[n] * (1 - static_cast<long>(n));
    // x^2 C'' / 2
    for (std::size_t n = 2; n <= order; ++n) x2C2[n] = C[n] * static_cast<long>(n * (n - 1)) / 2;
    Series series = multiply(x2C2, inverse(D, order), order);
    for (int n = 2; n <= static_cast<int>(order); ++n) {
      Rational v = kappa_dot_polynomial(n).evaluate([&](int i) { return kappa[i]; });
      CHECK(v == series[n]);
    }
  }
}
