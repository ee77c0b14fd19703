#include "infnc/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>

#include "infnc/annular.hpp"
#include "infnc/cumulants.hpp"
#include "infnc/distribution.hpp"
#include "infnc/error.hpp"
#include "infnc/freeness.hpp"
#include "infnc/partition.hpp"
#include "infnc/product.hpp"
#include "infnc/rmt.hpp"

namespace infnc::cli {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

Mode parse_mode(const std::string& s) { return s == "complex" ? Mode::Complex : Mode::Real; }

// generator -> label, labels given as strings or integers
Labeling read_labels(const std::string& path) {
  auto j = read_json(path);
  if (!j.is_object()) throw Error(path + ": expected an object of generator: label");
  std::map<std::string, int> index;
  Labeling out;
  for (const auto& [key, value] : j.items()) {
    std::string label = value.is_string() ? value.get<std::string>() : value.dump();
    auto it = index.emplace(label, static_cast<int>(index.size())).first;
    int g = 0;
    try {
      g = std::stoi(key);
    } catch (const std::exception&) {
      throw Error(path + ": '" + key + "' is not a generator");
    }
    out[g] = it->second;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw Error("");
    } catch (const std::exception&) {
      throw Error("bad list entry '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

struct EnumerateArgs {
  int annular = 0, nc = 0;
  bool all_through = false, pairings_only = false;
};

int enumerate(const EnumerateArgs& a, std::ostream& out) {
  std::size_t count = 0;
  if (a.nc > 0) {
    for (const auto& p : enumerate_nc(a.nc)) {
      out << p.str() << "\n";
      ++count;
    }
  } else {
    const auto& all = a.all_through ? enumerate_sncd_all_through(a.annular) : enumerate_sncd(a.annular);
    for (const auto& s : all) {
      if (a.pairings_only && !s.is_pairing()) continue;
      out << s.str() << "\n";
      ++count;
    }
  }
  out << "count: " << count << "\n";
  return kOk;
}

struct CumulantArgs {
  std::string dist, output, mode = "real";
  int degree = 0, kappa_dot = 0;
  bool infinitesimal = false, moments = false;
};

int cumulants(const CumulantArgs& a, std::ostream& out) {
  if (a.kappa_dot > 0) {
    Polynomial p = kappa_dot_polynomial(a.kappa_dot);
    if (a.moments) p = p.substitute([](int i) { return kappa_in_moments(i); });
    out << (a.moments ? p.str("m") : p.str("k")) << "\n";
    return kOk;
  }
  if (a.dist.empty()) throw Error("cumulants needs --dist or --kappa-dot");
  Distribution d = load_distribution(a.dist);
  int degree = a.degree > 0 ? a.degree : d.degree();
  if (degree > d.degree()) throw Error("distribution only known to degree " + std::to_string(d.degree()));
  CumulantTable t = a.infinitesimal ? infinitesimal_cumulants_from_distribution(d, parse_mode(a.mode))
                                    : kappa_from_moments(d);
  if (!a.output.empty()) write_json(t.to_json(), a.output);
  for (const auto& [w, v] : t.kappa_values())
    if (static_cast<int>(w.size()) <= degree) out << "kappa(" << format_word(w) << ") = " << format_rational(v) << "\n";
  if (a.infinitesimal)
    for (const auto& [w, v] : t.kappa_prime_values())
      if (static_cast<int>(w.size()) <= degree)
        out << "kappa'(" << format_word(w) << ") = " << format_rational(v) << "\n";
  return kOk;
}

struct TauPrimeArgs {
  std::string table, dist, word, mode = "real";
};

int tauprime(const TauPrimeArgs& a, std::ostream& out) {
  if (a.table.empty() == a.dist.empty()) throw Error("tauprime needs exactly one of --cumulants or --dist");
  Mode mode = parse_mode(a.mode);
  CumulantTable t = a.table.empty() ? infinitesimal_cumulants_from_distribution(load_distribution(a.dist), mode)
                                    : CumulantTable::from_json(read_json(a.table));
  Entries e = letters_of(parse_word(a.word));
  out << "tau = " << format_rational(tau_from_cumulants(e, t)) << "\n";
  Rational tp = mode == Mode::Complex ? complex_tau_prime_from_cumulants(e, t) : tau_prime_from_cumulants(e, t);
  out << "tau' = " << format_rational(tp) << "\n";
  return kOk;
}

struct ProductArgs {
  std::string parts, letters, dist, mode = "real";
  bool explain = false, first_order = false, decomposition = false;
};

int product(const ProductArgs& a, std::ostream& out) {
  GroupingSpec g = GroupingSpec::parse(a.parts);
  if (a.decomposition) {
    auto rep = decomposition_check(g);
    out << rep.to_json().dump(2) << "\n";
    return rep.ok() ? kOk : kCheckFailed;
  }
  if (a.letters.empty() || a.dist.empty()) throw Error("product needs --letters and --dist");
  Word w = parse_word(a.letters);
  if (static_cast<int>(w.size()) != g.m())
    throw Error("--letters has " + std::to_string(w.size()) + " letters but --parts sums to " + std::to_string(g.m()));
  Mode mode = parse_mode(a.mode);
  MomentCumulants c(load_distribution(a.dist), mode);
  Entries e = letters_of(w);
  if (a.first_order) {
    out << format_rational(product_cumulant(g, e, c)) << "\n";
    return kOk;
  }
  if (mode == Mode::Complex) {
    out << format_rational(complex_product_cumulant_prime(g, e, c)) << "\n";
    return kOk;
  }
  ProductTerms terms = product_cumulant_prime_terms(g, e, c);
  out << format_rational(terms.value) << "\n";
  if (a.explain) {
    // separating terms that contribute, with their values
    std::vector<std::string> lines;
    for (const auto& p : terms.partitions)
      if (Rational v = dkappa_pi(p, e, c); v != 0) lines.push_back("  " + p.str() + "  " + format_rational(v));
    out << "partitions: " << lines.size() << " nonzero of " << terms.partitions.size() << ", sum "
        << format_rational(terms.partition_part) << "\n";
    for (const auto& l : lines) out << l << "\n";
    lines.clear();
    for (const auto& s : terms.annular)
      if (Rational v = kappa_sigma_half(s, e, c); v != 0) lines.push_back("  " + s.str() + "  " + format_rational(v));
    out << "annular: " << lines.size() << " nonzero of " << terms.annular.size() << ", sum "
        << format_rational(terms.annular_part) << "\n";
    for (const auto& l : lines) out << l << "\n";
  }
  return kOk;
}

struct FreeProdArgs {
  std::vector<std::string> marginals, labels;
  std::string output, labels_output;
  int degree = 0;
};

int freeprod(const FreeProdArgs& a, std::ostream& out) {
  if (!a.labels.empty() && a.labels.size() != a.marginals.size())
    throw Error("give one --label per --marginal");
  MarginalFamily family;
  nlohmann::json labels = nlohmann::json::object();
  for (std::size_t i = 0; i < a.marginals.size(); ++i) {
    std::string label = a.labels.empty() ? std::filesystem::path(a.marginals[i]).stem().string() : a.labels[i];
    Distribution d = load_distribution(a.marginals[i]);
    family.add(label, d);
    for (int g : d.generators()) labels[std::to_string(g)] = label;
  }
  Distribution joint = free_product(family, a.degree > 0 ? a.degree : family.degree());
  if (!a.labels_output.empty()) write_json(labels, a.labels_output);
  if (a.output.empty())
    out << joint.to_json().dump(2) << "\n";
  else
    save_distribution(joint, a.output);
  return kOk;
}

struct CheckArgs {
  std::string dist, labels, form = "all";
  int degree = 0, max_element_degree = 3;
  bool json = false;
};

int check(const CheckArgs& a, std::ostream& out) {
  Distribution d = load_distribution(a.dist);
  Labeling labels = read_labels(a.labels);
  int degree = a.degree > 0 ? a.degree : d.degree();
  std::vector<std::pair<std::string, FreenessReport>> reports;
  if (a.form == "definition" || a.form == "all")
    reports.emplace_back("definition", check_definition(d, labels, degree, a.max_element_degree));
  if (a.form == "cyclic" || (a.form == "all" && d.tracial()))
    reports.emplace_back("cyclic", check_cyclic_form(d, labels, degree, a.max_element_degree));
  if (a.form == "cumulants" || a.form == "all")
    reports.emplace_back("cumulants", check_mixed_cumulants(d, labels, degree));
  bool ok = true;
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, rep] : reports) {
    ok = ok && rep.ok();
    j[name] = rep.to_json();
    if (a.json) continue;
    out << name << ": " << (rep.ok() ? "free" : "NOT free") << " (" << rep.sequences << " checked, "
        << rep.violations.size() << " violations)\n";
    for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
      const auto& v = rep.violations[i];
      out << "  " << v.condition << " " << v.elements << ": " << format_rational(v.lhs)
          << " != " << format_rational(v.rhs) << "\n";
    }
  }
  if (a.json) out << j.dump(2) << "\n";
  return ok ? kOk : kCheckFailed;
}

struct McArgs {
  std::string scenario, Ns = "40,80,160", json_output;
  std::uint64_t seed = 42;
  long samples = 100000;
  int workers = 1;
};

int mc_verify(const McArgs& a, std::ostream& out) {
  Scenario s = Scenario::from_json(read_json(a.scenario));
  McOptions opt;
  opt.seed = a.seed;
  opt.samples = a.samples;
  opt.workers = a.workers;
  auto rep = verify_asymptotic_freeness(s, parse_int_list(a.Ns), opt);
  if (!a.json_output.empty()) write_json(rep.to_json(), a.json_output);
  out << rep.table();
  return rep.ok() ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real infinitesimal free probability toolkit", "infnc"};
  app.require_subcommand(1);
  const std::vector<std::string> modes{"real", "complex"};
  std::function<int()> action;

  EnumerateArgs en;
  auto* e = app.add_subcommand("enumerate", "List NC(n) or the symmetric annular permutations of (n, -n)");
  auto* annular = e->add_option("--annular", en.annular, "annular size n")->check(CLI::PositiveNumber);
  auto* nc = e->add_option("--nc", en.nc, "non-crossing partitions of [n]")->check(CLI::PositiveNumber);
  annular->excludes(nc);
  e->add_flag("--all-through", en.all_through, "only elements whose cycles are all through cycles")->needs(annular);
  e->add_flag("--pairings-only", en.pairings_only, "only pairings")->needs(annular);
  e->callback([&] {
    if (!en.annular && !en.nc) throw CLI::RequiredError("--annular or --nc");
    action = [&] { return enumerate(en, out); };
  });

  CumulantArgs cu;
  auto* c = app.add_subcommand("cumulants", "Free cumulants of a distribution, or the kappa_dot polynomial");
  c->add_option("--dist", cu.dist, "distribution JSON")->check(CLI::ExistingFile);
  c->add_option("--degree", cu.degree, "highest word length printed")->check(CLI::PositiveNumber);
  c->add_flag("--infinitesimal", cu.infinitesimal, "also print kappa'");
  c->add_option("--mode", cu.mode, "real or complex")->check(CLI::IsMember(modes));
  c->add_option("-o,--output", cu.output, "write the table as JSON");
  c->add_option("--kappa-dot", cu.kappa_dot, "print kappa_dot_n in cumulants")->check(CLI::Range(1, 64));
  c->add_flag("--moments", cu.moments, "with --kappa-dot, expand in moments");
  c->callback([&] { action = [&] { return cumulants(cu, out); }; });

  TauPrimeArgs tp;
  auto* t = app.add_subcommand("tauprime", "tau and tau' of a word from cumulants");
  t->add_option("--cumulants", tp.table, "cumulant table JSON")->check(CLI::ExistingFile);
  t->add_option("--dist", tp.dist, "distribution JSON; cumulants are computed first")->check(CLI::ExistingFile);
  t->add_option("--word", tp.word, "word, e.g. \"1 2t 1\"")->required();
  t->add_option("--mode", tp.mode, "real or complex")->check(CLI::IsMember(modes));
  t->callback([&] { action = [&] { return tauprime(tp, out); }; });

  ProductArgs pr;
  auto* p = app.add_subcommand("product", "Cumulants with products as entries");
  p->add_option("--parts", pr.parts, "part sizes, e.g. 2,1,3")->required();
  p->add_option("--letters", pr.letters, "the m letters");
  p->add_option("--dist", pr.dist, "distribution JSON")->check(CLI::ExistingFile);
  p->add_option("--mode", pr.mode, "real or complex")->check(CLI::IsMember(modes));
  p->add_flag("--explain", pr.explain, "list the surviving partitions and annular permutations");
  p->add_flag("--first-order", pr.first_order, "print kappa_r instead of kappa'_r");
  p->add_flag("--decomposition", pr.decomposition, "check the set decompositions for the grouping");
  p->callback([&] { action = [&] { return product(pr, out); }; });

  FreeProdArgs fp;
  auto* f = app.add_subcommand("freeprod", "Free product of marginal distributions");
  f->add_option("--marginal", fp.marginals, "marginal distribution JSON (repeat)")->required()->check(CLI::ExistingFile);
  f->add_option("--label", fp.labels, "label per marginal (default: file stem)");
  f->add_option("--degree", fp.degree, "degree of the joint")->check(CLI::PositiveNumber);
  f->add_option("-o,--output", fp.output, "write the joint distribution here");
  f->add_option("--labels-out", fp.labels_output, "write generator labels here");
  f->callback([&] { action = [&] { return freeprod(fp, out); }; });

  CheckArgs ck;
  auto* k = app.add_subcommand("check", "Check real infinitesimal freeness of a joint distribution");
  k->add_option("--dist", ck.dist, "joint distribution JSON")->required()->check(CLI::ExistingFile);
  k->add_option("--labels", ck.labels, "generator -> label JSON")->required()->check(CLI::ExistingFile);
  k->add_option("--degree", ck.degree, "longest word checked")->check(CLI::PositiveNumber);
  k->add_option("--max-element-degree", ck.max_element_degree, "longest single-label piece")->check(CLI::PositiveNumber);
  k->add_option("--form", ck.form, "definition, cyclic, cumulants or all")
      ->check(CLI::IsMember({"definition", "cyclic", "cumulants", "all"}));
  k->add_flag("--json", ck.json, "print JSON reports");
  k->callback([&] { action = [&] { return check(ck, out); }; });

  McArgs mc;
  auto* m = app.add_subcommand("mc-verify", "Monte Carlo check of asymptotic infinitesimal freeness");
  m->add_option("--scenario", mc.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
  m->add_option("--seed", mc.seed, "RNG seed");
  m->add_option("--samples", mc.samples, "samples per N")->check(CLI::Range(2L, 1000000000L));
  m->add_option("--Ns", mc.Ns, "comma separated dimensions");
  m->add_option("--workers", mc.workers, "worker threads")->check(CLI::Range(1, kSubstreams));
  m->add_option("--json", mc.json_output, "write the JSON report here");
  m->callback([&] { action = [&] { return mc_verify(mc, out); }; });

  std::vector<std::string> storage{"infnc"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err) == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  }
}

}  // namespace infnc::cli
