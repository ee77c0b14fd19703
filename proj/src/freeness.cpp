#include "infnc/freeness.hpp"

#include <algorithm>

#include "infnc/error.hpp"

namespace infnc {

Element element(const Word& w) { return {{w, Rational(1)}}; }

namespace {

void add_to(Element& a, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = a.emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) a.erase(it);
}

}  // namespace

Element operator*(const Element& a, const Element& b) {
  Element out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      add_to(out, w, x * y);
    }
  return out;
}

Element operator-(const Element& a, const Element& b) {
  Element out = a;
  for (const auto& [w, c] : b) add_to(out, w, -c);
  return out;
}

Element transpose(const Element& a) {
  Element out;
  for (const auto& [w, c] : a) add_to(out, transpose(w), c);
  return out;
}

Rational tau(const Element& a, const Distribution& d) {
  Rational total = 0;
  for (const auto& [w, c] : a) total += c * d.tau(w);
  return total;
}

Rational tau_prime(const Element& a, const Distribution& d) {
  Rational total = 0;
  for (const auto& [w, c] : a) total += c * d.tau_prime(w);
  return total;
}

Element center(const Word& w, const Distribution& d) {
  Element out = element(w);
  add_to(out, {}, -d.tau(w));
  return out;
}

void MarginalFamily::add(const std::string& label, CumulantTable table) {
  for (const auto& m : marginals_)
    if (m.label == label) throw Error("duplicate marginal label '" + label + "'");
  int index = static_cast<int>(marginals_.size());
  for (int g : table.generators()) {
    if (owner_.count(g))
      throw Error("generator " + std::to_string(g) + " appears in marginals '" +
                  marginals_[owner_[g]].label + "' and '" + label + "'");
  }
  for (int g : table.generators()) owner_[g] = index;
  marginals_.push_back({label, std::move(table)});
}

void MarginalFamily::add(const std::string& label, const Distribution& d) {
  add(label, infinitesimal_cumulants_from_distribution(d));
}

Labeling MarginalFamily::labeling() const { return owner_; }

int MarginalFamily::degree() const {
  if (marginals_.empty()) return 0;
  int degree = marginals_.front().table.degree();
  for (const auto& m : marginals_) degree = std::min(degree, m.table.degree());
  return degree;
}

FreeProductCumulants::FreeProductCumulants(const MarginalFamily& family)
    : family_(family), labeling_(family.labeling()) {
  for (const auto& m : family.marginals())
    tracial_and_symmetric_ = tracial_and_symmetric_ && m.table.tracial_and_symmetric();
}

int FreeProductCumulants::owner(const Entries& e) const {
  int label = -2;
  for (const auto& entry : e) {
    if (entry.size() != 1) throw Error("free product cumulants take single letters");
    auto it = labeling_.find(entry.front().generator);
    if (it == labeling_.end())
      throw Error("letter " + format_letter(entry.front()) + " belongs to no marginal");
    if (label == -2)
      label = it->second;
    else if (label != it->second)
      return -1;
  }
  return label;
}

Rational FreeProductCumulants::kappa(const Entries& e) const {
  int o = owner(e);
  return o < 0 ? Rational(0) : family_.marginals()[o].table.kappa(e);
}

Rational FreeProductCumulants::kappa_prime(const Entries& e) const {
  int o = owner(e);
  return o < 0 ? Rational(0) : family_.marginals()[o].table.kappa_prime(e);
}

Distribution free_product(const MarginalFamily& family, int degree) {
  if (family.marginals().empty()) throw Error("free product of no marginals");
  if (degree > family.degree())
    throw Error("marginals are only known to degree " + std::to_string(family.degree()));
  CanonicalForm form;
  std::set<int> generators;
  for (const auto& m : family.marginals()) {
    form.tracial = form.tracial && m.table.form().tracial;
    form.transpose_symmetric = form.transpose_symmetric && m.table.form().transpose_symmetric;
    form.symmetric.insert(m.table.form().symmetric.begin(), m.table.form().symmetric.end());
    generators.insert(m.table.generators().begin(), m.table.generators().end());
  }
  if (!form.tracial || !form.transpose_symmetric)
    throw Error("free product needs tracial, transpose-symmetric marginals");
  FreeProductCumulants c(family);
  Distribution joint(degree, form);
  for (int g : generators) joint.declare_generator(g);
  for (const auto& w : canonical_words(generators, form, degree)) {
    auto e = letters_of(w);
    joint.set_tau(w, tau_from_cumulants(e, c));
    joint.set_tau_prime(w, tau_prime_from_cumulants(e, c));
  }
  return joint;
}

nlohmann::json FreenessReport::to_json(std::size_t max_listed) const {
  nlohmann::json j;
  j["ok"] = ok();
  j["sequences"] = sequences;
  j["degree"] = degree;
  j["max_element_degree"] = max_element_degree;
  j["violation_count"] = violations.size();
  j["violations"] = nlohmann::json::array();
  for (std::size_t i = 0; i < violations.size() && i < max_listed; ++i) {
    const auto& v = violations[i];
    j["violations"].push_back({{"condition", v.condition},
                               {"elements", v.elements},
                               {"lhs", format_rational(v.lhs)},
                               {"rhs", format_rational(v.rhs)}});
  }
  return j;
}

namespace {

struct Piece {
  int label;
  Word word;
  Element centred;
};

std::string describe(const std::vector<const Piece*>& seq) {
  std::string out;
  for (const auto* p : seq) out += (out.empty() ? "[" : " [") + format_word(p->word) + "]";
  return out;
}

// All words of length 1..max_len in the letters of each label, centred.
std::vector<Piece> pieces(const Distribution& d, const Labeling& labels, int max_len) {
  std::map<int, std::set<int>> by_label;
  for (const auto& [g, l] : labels) by_label[l].insert(g);
  std::vector<Piece> out;
  for (const auto& [label, gens] : by_label) {
    auto letters = alphabet(gens, d.form());
    std::vector<Word> layer{Word{}};
    for (int len = 1; len <= max_len; ++len) {
      std::vector<Word> next;
      for (const auto& w : layer)
        for (const auto& l : letters) {
          Word x = w;
          x.push_back(l);
          next.push_back(x);
        }
      for (const auto& w : next) out.push_back({label, w, center(w, d)});
      layer = std::move(next);
    }
  }
  return out;
}

// Calls visit on every alternating sequence with n >= 2 and total length <= degree.
template <class Visit>
void alternating(const std::vector<Piece>& all, int degree, Visit&& visit) {
  std::vector<const Piece*> seq;
  auto rec = [&](auto&& self, int used) -> void {
    if (seq.size() >= 2) visit(seq);
    for (const auto& p : all) {
      if (!seq.empty() && seq.back()->label == p.label) continue;
      int len = static_cast<int>(p.word.size());
      if (used + len > degree) continue;
      seq.push_back(&p);
      self(self, used + len);
      seq.pop_back();
    }
  };
  rec(rec, 0);
}

Element product(const std::vector<const Piece*>& seq, std::size_t from, std::size_t to) {
  Element out = element({});
  for (std::size_t i = from; i < to; ++i) out = out * seq[i]->centred;
  return out;
}

// prod_i tau(a_i a_{i+shift}^t) over i = first..last (0-based).
Rational transpose_pairs(const std::vector<const Piece*>& seq, std::size_t first, std::size_t last,
                         std::size_t shift, const Distribution& d) {
  Rational out = 1;
  for (std::size_t i = first; i <= last && out != 0; ++i)
    out *= tau(seq[i]->centred * transpose(seq[i + shift]->centred), d);
  return out;
}

void require_labels(const Distribution& d, const Labeling& labels) {
  for (int g : d.generators())
    if (!labels.count(g)) throw Error("generator " + std::to_string(g) + " has no label");
}

}  // namespace

FreenessReport check_definition(const Distribution& d, const Labeling& labels, int degree,
                                int max_element_degree) {
  require_labels(d, labels);
  FreenessReport rep;
  rep.degree = degree;
  rep.max_element_degree = max_element_degree;
  auto all = pieces(d, labels, max_element_degree);
  alternating(all, degree, [&](const std::vector<const Piece*>& seq) {
    ++rep.sequences;
    const std::size_t n = seq.size();
    Element whole = product(seq, 0, n);
    Rational t = tau(whole, d);
    if (t != 0) rep.violations.push_back({"(i)", describe(seq), t, 0});
    Rational lhs = tau_prime(whole, d);
    Rational rhs = 0;
    std::string condition;
    if (n == 2) {
      condition = "(ii)";
    } else {
      Rational time = tau_prime(product(seq, 1, n - 1), d) *
                      tau(seq.front()->centred * seq.back()->centred, d);
      Rational space;
      if (n % 2 == 1) {
        condition = "(iii)";
        std::size_t k = (n + 1) / 2;
        // tau(a_1 a_k^t a_n) tau(a_2 a_{k+1}^t) ... tau(a_{k-1} a_{n-1}^t)
        space = tau(seq[0]->centred * transpose(seq[k - 1]->centred) * seq[n - 1]->centred, d);
        if (k >= 3) space *= transpose_pairs(seq, 1, k - 2, k - 1, d);
      } else {
        condition = "(iv)";
        std::size_t k = n / 2;
        space = transpose_pairs(seq, 0, k - 1, k, d);
      }
      rhs = time + space;
    }
    if (lhs != rhs) rep.violations.push_back({condition, describe(seq), lhs, rhs});
  });
  return rep;
}

FreenessReport check_cyclic_form(const Distribution& d, const Labeling& labels, int degree,
                                 int max_element_degree) {
  if (!d.tracial()) throw Error("the cyclic form needs tracial tau and tau'");
  require_labels(d, labels);
  FreenessReport rep;
  rep.degree = degree;
  rep.max_element_degree = max_element_degree;
  auto all = pieces(d, labels, max_element_degree);
  alternating(all, degree, [&](const std::vector<const Piece*>& seq) {
    ++rep.sequences;
    const std::size_t n = seq.size();
    Element whole = product(seq, 0, n);
    Rational t = tau(whole, d);
    if (t != 0) rep.violations.push_back({"free", describe(seq), t, 0});
    if (seq.front()->label == seq.back()->label) return;
    Rational lhs = tau_prime(whole, d);
    Rational rhs = 0;
    std::string condition = "(i)";
    if (n >= 4 && n % 2 == 0) {
      condition = "(ii)";
      rhs = transpose_pairs(seq, 0, n / 2 - 1, n / 2, d);
    }
    if (lhs != rhs) rep.violations.push_back({condition, describe(seq), lhs, rhs});
  });
  return rep;
}

FreenessReport check_mixed_cumulants(const Distribution& d, const Labeling& labels, int degree) {
  require_labels(d, labels);
  if (degree > d.degree()) throw Error("distribution only known to degree " + std::to_string(d.degree()));
  FreenessReport rep;
  rep.degree = degree;
  MomentCumulants c(d);
  for (const auto& w : canonical_words(d.generators(), d.form(), degree)) {
    std::set<int> seen;
    for (const auto& l : w) seen.insert(labels.at(l.generator));
    if (seen.size() < 2) continue;
    ++rep.sequences;
    auto e = letters_of(w);
    Rational k = c.kappa(e);
    if (k != 0) rep.violations.push_back({"kappa", format_word(w), k, 0});
    Rational kp = c.kappa_prime(e);
    if (kp != 0) rep.violations.push_back({"kappa'", format_word(w), kp, 0});
  }
  return rep;
}

}  // namespace infnc
