#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "infnc/error.hpp"
#include "infnc/freeness.hpp"
#include "models.hpp"
#include "oracles.hpp"

using namespace infnc;

namespace {

Word w(const char* text) { return parse_word(text); }

MarginalFamily two_semicircles(int degree = 6) {
  MarginalFamily f;
  f.add("a", models::goe(1, degree));
  f.add("b", models::goe(2, degree));
  return f;
}

MarginalFamily random_pair(std::mt19937_64& rng, int degree) {
  MarginalFamily f;
  f.add("a", models::random_distribution(rng, degree, {1}, {}));
  f.add("b", models::random_distribution(rng, degree, {2}, {2}));
  return f;
}

}  // namespace

TEST_CASE("elements and centring") {
  auto d = models::goe();
  CHECK(center(w("1"), d) == element(w("1")));
  CHECK(center(w("1 1"), d) == (element(w("1 1")) - Element{{Word{}, Rational(1)}}));
  auto rng = oracle::rng(97);
  auto r = models::random_distribution(rng, 4, {1, 2}, {});
  for (const auto& x : canonical_words(r.generators(), r.form(), 4)) CHECK(tau(center(x, r), r) == 0);
  Element a = center(w("1 2t"), r);
  CHECK(transpose(transpose(a)) == a);
  CHECK(tau(a * a, r) == r.tau(w("1 2t 1 2t")) - r.tau(w("1 2t")) * r.tau(w("1 2t")));
}

TEST_CASE("marginal families") {
  MarginalFamily f = two_semicircles();
  CHECK(f.labeling() == Labeling{{1, 0}, {2, 1}});
  CHECK(f.degree() == 6);
  CHECK_THROWS_AS(f.add("a", models::goe(3)), Error);
  CHECK_THROWS_AS(f.add("c", models::goe(2)), Error);
  FreeProductCumulants c(f);
  CHECK(c.kappa({w("1"), w("1")}) == 1);
  CHECK(c.kappa({w("1"), w("2")}) == 0);
  CHECK(c.kappa_prime({w("1"), w("2"), w("1")}) == 0);
  CHECK_THROWS_AS(c.kappa({w("3")}), Error);
  CHECK_THROWS_AS(c.kappa({w("1 1")}), Error);
  CHECK_THROWS_AS(free_product(f, 7), Error);
}

TEST_CASE("two semicircles") {
  auto joint = free_product(two_semicircles(), 6);
  CHECK(joint.tau_prime(w("1 2 1 2")) == 1);
  CHECK(joint.tau_prime(w("1 2 1")) == 0);
  CHECK(joint.tau(w("1 2 1 2")) == 0);
  CHECK(joint.tau(w("1 1 2 2")) == 1);
  CHECK(joint.tau_prime(w("1 1")) == 1);
  auto labels = two_semicircles().labeling();
  auto rep = check_definition(joint, labels, 6);
  CHECK(rep.ok());
  CHECK(rep.sequences > 0);
  CHECK(check_cyclic_form(joint, labels, 6).ok());
  CHECK(check_mixed_cumulants(joint, labels, 5).ok());

  auto corrupted = joint;
  corrupted.set_tau_prime(w("1 2 1 2"), joint.tau_prime(w("1 2 1 2")) + 1);
  rep = check_definition(corrupted, labels, 6);
  REQUIRE_FALSE(rep.ok());
  bool saw_iv = false;
  for (const auto& v : rep.violations) saw_iv = saw_iv || v.condition == "(iv)";
  CHECK(saw_iv);
  CHECK_FALSE(check_cyclic_form(corrupted, labels, 6).ok());
  CHECK_FALSE(check_mixed_cumulants(corrupted, labels, 4).ok());
  CHECK(rep.to_json()["ok"] == false);
}

TEST_CASE("single marginal") {
  auto rng = oracle::rng(101);
  auto d = models::random_distribution(rng, 5, {1, 2}, {1});
  MarginalFamily f;
  f.add("only", d);
  CHECK(free_product(f, 5) == d);
  Labeling one{{1, 0}, {2, 0}};
  auto rep = check_definition(d, one, 5);
  CHECK(rep.ok());
  CHECK(rep.sequences == 0);
}

TEST_CASE("free products of random marginals") {
  auto rng = oracle::rng(103);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_pair(rng, 5);
    auto joint = free_product(f, 5);
    auto labels = f.labeling();
    // marginal restriction
    for (const auto& m : f.marginals()) {
      Distribution marginal(5, m.table.form());
      for (const auto& x : canonical_words(m.table.generators(), m.table.form(), 5)) {
        CHECK(joint.tau(x) == tau_from_cumulants(letters_of(x), m.table));
        CHECK(joint.tau_prime(x) == tau_prime_from_cumulants(letters_of(x), m.table));
      }
    }
    auto def = check_definition(joint, labels, 5);
    auto cyc = check_cyclic_form(joint, labels, 5);
    CHECK(def.ok());
    CHECK(cyc.ok());
    CHECK(check_mixed_cumulants(joint, labels, 5).ok());
    // a perturbation of tau' on a mixed word breaks both forms together
    auto broken = joint;
    Word mixed = canonicalize(w("1 2 1t 2"), joint.form());
    broken.set_tau_prime(mixed, joint.tau_prime(mixed) + Rational(1, 3));
    CHECK(check_definition(broken, labels, 5).ok() == check_cyclic_form(broken, labels, 5).ok());
    CHECK_FALSE(check_definition(broken, labels, 5).ok());
  }
}

TEST_CASE("relabelling and associativity") {
  auto rng = oracle::rng(107);
  auto a = models::random_distribution(rng, 5, {1}, {1});
  auto b = models::random_distribution(rng, 5, {2}, {});
  auto c = models::random_distribution(rng, 5, {3}, {3});
  MarginalFamily abc, cab, bc, a_bc;
  abc.add("a", a);
  abc.add("b", b);
  abc.add("c", c);
  cab.add("c", c);
  cab.add("a", a);
  cab.add("b", b);
  CHECK(free_product(abc, 5) == free_product(cab, 5));
  bc.add("b", b);
  bc.add("c", c);
  a_bc.add("a", a);
  a_bc.add("bc", free_product(bc, 5));
  CHECK(free_product(a_bc, 5) == free_product(abc, 5));
}

TEST_CASE("a non-free joint fails the checks") {
  auto rng = oracle::rng(109);
  auto d = models::random_distribution(rng, 4, {1, 2}, {});
  Labeling labels{{1, 0}, {2, 1}};
  CHECK_FALSE(check_definition(d, labels, 4).ok());
  CHECK_FALSE(check_mixed_cumulants(d, labels, 4).ok());
  Distribution non_tracial(2, CanonicalForm{false, true, {}});
  CHECK_THROWS_AS(check_cyclic_form(non_tracial, labels, 2), Error);
}
