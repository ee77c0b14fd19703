#include "infnc/product.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "infnc/error.hpp"
#include "infnc/limits.hpp"

namespace infnc {

GroupingSpec::GroupingSpec(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error("grouping needs at least one part");
  for (int p : parts_) {
    if (p < 1) throw Error("grouping parts must be positive");
    m_ += p;
    last_.push_back(m_);
  }
}

GroupingSpec GroupingSpec::parse(const std::string& text) {
  std::vector<int> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw Error("");
      parts.push_back(v);
    } catch (const std::exception&) {
      throw Error("bad grouping: '" + text + "'");
    }
  }
  return GroupingSpec(std::move(parts));
}

std::vector<int> GroupingSpec::signed_last_points() const {
  std::vector<int> out = last_;
  for (int x : last_) out.push_back(-x);
  return out;
}

int GroupingSpec::psi(int k) const {
  if (k == 0 || std::abs(k) > r()) throw Error("psi: index out of range");
  int v = last_[std::abs(k) - 1];
  return k > 0 ? v : -v;
}

Block GroupingSpec::interval(int l) const {
  if (l < 1 || l > r()) throw Error("interval: index out of range");
  Block out(parts_[l - 1]);
  std::iota(out.begin(), out.end(), last_[l - 1] - parts_[l - 1] + 1);
  return out;
}

Permutation GroupingSpec::gamma() const { return gamma_vec(parts_); }

Partition GroupingSpec::intervals() const { return interval_partition(parts_); }

Partition GroupingSpec::blow_up(const Partition& pi) const { return infnc::blow_up(pi, parts_); }

namespace {

int psi_inverse(const GroupingSpec& g, int x) {
  const auto& last = g.last_points();
  auto it = std::lower_bound(last.begin(), last.end(), std::abs(x));
  if (it == last.end() || *it != std::abs(x)) throw Error("point outside ±M");
  int k = static_cast<int>(it - last.begin()) + 1;
  return x > 0 ? k : -k;
}

}  // namespace

Permutation GroupingSpec::pull_back(const SubsetPermutation& p) const {
  std::vector<int> images(r());
  for (int k = 1; k <= r(); ++k) images[k - 1] = psi_inverse(*this, p(psi(k)));
  return Permutation::from_images(std::move(images));
}

SignedPermutation GroupingSpec::pull_back_signed(const SubsetPermutation& p) const {
  SignedPermutation out(r());
  for (int k = 1; k <= r(); ++k) {
    out.set(k, psi_inverse(*this, p(psi(k))));
    out.set(-k, psi_inverse(*this, p(psi(-k))));
  }
  return out;
}

std::string GroupingSpec::str() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + std::to_string(parts_[i]);
  return out;
}

bool kreweras_separates(const Partition& pi, const GroupingSpec& g) {
  return separates(kreweras_permutation(pi), g.last_points());
}

bool kdelta_separates(const SignedPermutation& sigma, const GroupingSpec& g) {
  return separates(kdelta(sigma), g.signed_last_points());
}

namespace {

void require_letters(const GroupingSpec& g, const Entries& letters) {
  if (static_cast<int>(letters.size()) != g.m())
    throw Error("grouping " + g.str() + " needs " + std::to_string(g.m()) + " entries, got " +
                std::to_string(letters.size()));
}

}  // namespace

Rational product_cumulant(const GroupingSpec& g, const Entries& letters, const Cumulants& c) {
  require_letters(g, letters);
  const Partition top = one_partition(g.m());
  const Partition groups = g.intervals();
  Rational total = 0;
  for (const auto& rho : enumerate_nc(g.m()))
    if (join(rho, groups) == top) total += kappa_pi(rho, letters, c);
  return total;
}

ProductTerms product_cumulant_prime_terms(const GroupingSpec& g, const Entries& letters,
                                          const Cumulants& c) {
  require_letters(g, letters);
  require_within_cap("annular enumeration", g.m(), enumeration_caps().annular);
  ProductTerms t;
  for (const auto& pi : enumerate_nc(g.m())) {
    if (!kreweras_separates(pi, g)) continue;
    t.partitions.push_back(pi);
    t.partition_part += dkappa_pi(pi, letters, c);
  }
  if (g.m() >= 2) {
    for (const auto& sigma : enumerate_sncd(g.m())) {
      if (!kdelta_separates(sigma.permutation(), g)) continue;
      t.annular.push_back(sigma);
      t.annular_part += kappa_sigma_half(sigma, letters, c);
    }
  }
  t.value = t.partition_part + t.annular_part;
  return t;
}

Rational product_cumulant_prime(const GroupingSpec& g, const Entries& letters,
                                const Cumulants& c) {
  return product_cumulant_prime_terms(g, letters, c).value;
}

Rational complex_product_cumulant_prime(const GroupingSpec& g, const Entries& letters,
                                        const Cumulants& c) {
  require_letters(g, letters);
  const Partition top = one_partition(g.m());
  const Partition groups = g.intervals();
  Rational total = 0;
  for (const auto& pi : enumerate_nc(g.m()))
    if (join(pi, groups) == top) total += dkappa_pi(pi, letters, c);
  return total;
}

nlohmann::json ProductTerms::to_json() const {
  nlohmann::json j;
  j["value"] = format_rational(value);
  j["partition_part"] = format_rational(partition_part);
  j["annular_part"] = format_rational(annular_part);
  j["partitions"] = nlohmann::json::array();
  for (const auto& p : partitions) j["partitions"].push_back(p.str());
  j["annular"] = nlohmann::json::array();
  for (const auto& s : annular) j["annular"].push_back(s.str());
  return j;
}

bool partitioned_below(const SignedPermutation& tau, const Partition& U,
                       const SignedPermutation& beta) {
  const int n = tau.n();
  auto idx = [n](int k) { return k > 0 ? k - 1 : n - k - 1; };
  std::vector<int> label(2 * n, -1);
  for (int b = 0; b < U.num_blocks(); ++b)
    for (int x : U.blocks()[b]) label[idx(x)] = b;
  if (std::count(label.begin(), label.end(), -1) != 0) throw Error("U must cover [±n]");
  // the join of the cycles of tau and beta must be U itself
  std::vector<int> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  int components = 2 * n;
  for (const auto* p : {&tau, &beta})
    for (int x : tau.points()) {
      int i = idx(x), j = idx((*p)(x));
      if (label[i] != label[j]) return false;
      int a = find(i), b = find(j);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  if (components != U.num_blocks()) return false;
  int u_length = 2 * n - U.num_blocks();
  return tau.length() + (tau.inverse() * beta).length() == 2 * u_length - beta.length();
}

Partition joined_blocks(const Partition& pi_m, const Block& v_m) {
  std::vector<Block> blocks;
  for (const auto& b : pi_m.blocks()) {
    Block neg;
    for (int x : b) neg.push_back(-x);
    if (b == v_m) {
      Block both = b;
      both.insert(both.end(), neg.begin(), neg.end());
      blocks.push_back(std::move(both));
    } else {
      blocks.push_back(b);
      blocks.push_back(std::move(neg));
    }
  }
  return Partition::from_blocks(std::move(blocks));
}

namespace {

// pi = gamma_r k^-1, the inverse Kreweras complement read on [r].
Partition inverse_kreweras(const Permutation& k, std::vector<std::string>& failures,
                           const std::string& context) {
  Permutation pi = gamma(k.n()) * k.inverse();
  Partition p = Partition::of(pi);
  if (p.to_permutation() != pi || !is_noncrossing(p))
    failures.push_back(context + ": " + pi.str() + " is not a non-crossing partition");
  return p;
}

struct Witness {
  Partition pi;
  Block v;
};

}  // namespace

DecompositionReport decomposition_check(const GroupingSpec& g) {
  require_within_cap("annular enumeration", g.m(), enumeration_caps().annular);
  DecompositionReport rep;
  rep.parts = g.parts();
  const int m = g.m();
  const int r = g.r();
  const auto& M = g.last_points();
  const auto pmM = g.signed_last_points();
  const Partition top_r = one_partition(r);
  auto& failures = rep.failures;

  // N1 and N2
  const auto& nc = enumerate_nc(m);
  rep.nc_total = static_cast<int>(nc.size());
  std::set<Partition> n2;
  for (const auto& rho : nc) {
    Permutation k = kreweras_permutation(rho);
    bool sep = separates(k, M);
    if (sep != restrict_first_return(k, M).is_identity())
      failures.push_back("separation disagrees with restriction for " + rho.str());
    if (sep)
      ++rep.n1;
    else
      n2.insert(rho);
  }
  rep.n2 = static_cast<int>(n2.size());

  std::map<Partition, std::vector<Partition>> n2_witness;
  for (const auto& pi : enumerate_nc(r)) {
    if (pi == top_r) continue;
    Partition pi_m = g.blow_up(pi);
    Permutation pi_m_perm = pi_m.to_permutation();
    for (const auto& rho : nc) {
      if (!rho.refines(pi_m)) continue;
      if (separates(rho.to_permutation().inverse() * pi_m_perm, M)) n2_witness[rho].push_back(pi);
    }
  }
  rep.n2_tilde = static_cast<int>(n2_witness.size());
  for (const auto& [rho, witnesses] : n2_witness) {
    if (!n2.count(rho)) failures.push_back("N2~ element outside N2: " + rho.str());
    if (witnesses.size() != 1) {
      failures.push_back("N2~ element with " + std::to_string(witnesses.size()) +
                         " witnesses: " + rho.str());
      continue;
    }
    Permutation k = g.pull_back(restrict_first_return(kreweras_permutation(rho), M));
    if (inverse_kreweras(k, failures, "N2 " + rho.str()) != witnesses[0])
      failures.push_back("pi recovered from " + rho.str() + " differs from its witness");
  }
  for (const auto& rho : n2)
    if (!n2_witness.count(rho)) failures.push_back("N2 element outside N2~: " + rho.str());

  // S1, S2, S3
  if (m < 2) return rep;
  const auto& sncd = enumerate_sncd(m);
  rep.sncd_total = static_cast<int>(sncd.size());
  std::set<SignedPermutation> s2;
  for (const auto& s : sncd) {
    SignedPermutation k = kdelta(s.permutation());
    SubsetPermutation restricted = restrict_first_return(k, pmM);
    bool through = false;
    for (const auto& c : restricted.cycles()) through = through || is_through(c);
    if (separates(k, pmM) != restricted.is_identity())
      failures.push_back("separation disagrees with restriction for " + s.str());
    if (restricted.is_identity()) {
      ++rep.s1;
    } else if (!through) {
      s2.insert(s.permutation());
    } else {
      ++rep.s3;
      // sigma = gamma_r (psi^-1 K^delta(tau)|±M psi)^-1 delta gamma_r^-1 delta
      SignedPermutation pulled = g.pull_back_signed(restricted);
      SignedPermutation sigma = embed(gamma(r)) * pulled.inverse() * mirror(gamma(r).inverse());
      if (r < 2 || !AnnularSymPermutation::is_member(sigma))
        failures.push_back("S3 element " + s.str() + " maps outside S_NC^delta(r,-r): " +
                           sigma.str());
    }
  }
  rep.s2 = static_cast<int>(s2.size());

  std::map<SignedPermutation, std::vector<Witness>> s2_witness;
  for (const auto& pi : enumerate_nc(r)) {
    if (pi == top_r) continue;
    Partition pi_m = g.blow_up(pi);
    Permutation pi_m_perm = pi_m.to_permutation();
    SignedPermutation beta = doubled(pi_m_perm);
    for (const auto& v : pi.blocks()) {
      Block v_m;
      for (const auto& b : pi_m.blocks())
        if (std::binary_search(b.begin(), b.end(), g.psi(v.front()))) v_m = b;
      Partition U = joined_blocks(pi_m, v_m);
      for (const auto& s : sncd) {
        const auto& tau = s.permutation();
        if (!partitioned_below(tau, U, beta)) continue;
        if (!separates(relative_kreweras(tau, pi_m_perm), pmM)) continue;
        s2_witness[tau].push_back({pi, v});
      }
    }
  }
  rep.s2_tilde = static_cast<int>(s2_witness.size());
  for (const auto& [tau, witnesses] : s2_witness) {
    if (!s2.count(tau)) failures.push_back("S2~ element outside S2: " + tau.str());
    if (witnesses.size() != 1) {
      failures.push_back("S2~ element with " + std::to_string(witnesses.size()) +
                         " witnesses: " + tau.str());
      continue;
    }
    Permutation k = g.pull_back(restrict_first_return(kdelta(tau), M));
    if (inverse_kreweras(k, failures, "S2 " + tau.str()) != witnesses[0].pi)
      failures.push_back("pi recovered from " + tau.str() + " differs from its witness");
  }
  for (const auto& tau : s2)
    if (!s2_witness.count(tau)) failures.push_back("S2 element outside S2~: " + tau.str());

  if (rep.s1 + rep.s2 + rep.s3 != rep.sncd_total) failures.push_back("S1, S2, S3 do not cover");
  return rep;
}

nlohmann::json DecompositionReport::to_json() const {
  nlohmann::json j;
  j["parts"] = parts;
  j["nc"] = {{"total", nc_total}, {"N1", n1}, {"N2", n2}, {"N2_tilde", n2_tilde}};
  j["annular"] = {{"total", sncd_total}, {"S1", s1}, {"S2", s2}, {"S3", s3}, {"S2_tilde", s2_tilde}};
  j["ok"] = ok();
  j["failures"] = failures;
  return j;
}

}  // namespace infnc
