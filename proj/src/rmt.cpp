#include "infnc/rmt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "infnc/error.hpp"
#include "infnc/freeness.hpp"

namespace infnc {

namespace {

using Normal = boost::random::normal_distribution<double>;

Matrix gaussian(int rows, int cols, Engine& rng) {
  Normal z;
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = z(rng);
  return g;
}

void require_dimension(int N) {
  if (N < 2) throw Error("matrix dimension must be at least 2");
}

}  // namespace

Matrix sample_goe(int N, Engine& rng) {
  require_dimension(N);
  // Same law as (G + G^t) / sqrt(2N), drawing only the upper triangle.
  Normal z;
  const double off = 1 / std::sqrt(static_cast<double>(N));
  const double diag = std::sqrt(2.0 / N);
  Matrix x(N, N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < j; ++i) x(i, j) = x(j, i) = off * z(rng);
    x(j, j) = diag * z(rng);
  }
  return x;
}

Matrix sample_haar_orthogonal(int N, Engine& rng) {
  require_dimension(N);
  Eigen::HouseholderQR<Matrix> qr(gaussian(N, N, rng));
  Matrix q = qr.householderQ();
  auto r = qr.matrixQR().diagonal();
  for (int j = 0; j < N; ++j)
    if (r(j) < 0) q.col(j) *= -1;
  return q;
}

int wishart_columns(int N, const Rational& c) {
  if (c <= 0) throw Error("Wishart aspect ratio must be positive");
  Rational ratio = Rational(N) / c;
  // round half up
  mpz_class m = (ratio.get_num() * 2 + ratio.get_den()) / (ratio.get_den() * 2);
  int M = static_cast<int>(m.get_si());
  if (M < 2) throw Error("Wishart matrix needs at least 2 columns");
  return M;
}

Matrix sample_wishart(int N, const Rational& c, Engine& rng) {
  require_dimension(N);
  int M = wishart_columns(N, c);
  Matrix g = gaussian(N, M, rng);
  // lower triangle only, mirrored so that the sample is exactly symmetric
  Matrix w = Matrix::Zero(N, N);
  w.selfadjointView<Eigen::Lower>().rankUpdate(g, 1.0 / M);
  w.triangularView<Eigen::StrictlyUpper>() = w.transpose();
  return w;
}

Matrix EnsembleSpec::diagonal(int N) const {
  if (spectrum.empty()) throw Error("spectral ensemble without a spectrum");
  const int k = static_cast<int>(spectrum.size());
  Matrix d = Matrix::Zero(N, N);
  for (int i = 0; i < N; ++i) d(i, i) = spectrum[static_cast<std::size_t>(i) * k / N].get_d();
  return d;
}

Matrix EnsembleSpec::sample(int N, Engine& rng) const {
  Matrix x;
  switch (kind) {
    case Kind::Goe:
      x = sample_goe(N, rng);
      break;
    case Kind::Wishart:
      x = sample_wishart(N, c, rng);
      break;
    case Kind::HaarConjugated: {
      Matrix o = sample_haar_orthogonal(N, rng);
      x = o * diagonal(N) * o.transpose();
      break;
    }
    case Kind::Deterministic:
      x = diagonal(N);
      break;
  }
  if (shift != 0) x.diagonal().array() -= shift.get_d();
  return x;
}

CumulantTable EnsembleSpec::limit_table(int g, int degree) const {
  CanonicalForm form{true, true, {g}};
  auto power = [g](int n) { return Word(n, Letter{g, false}); };
  if (kind == Kind::Goe || kind == Kind::Wishart) {
    CumulantTable t(degree, form);
    Rational cn = 1;
    for (int n = 1; n <= degree; ++n) {
      Rational k = 0;
      if (kind == Kind::Goe)
        k = n == 2 ? 1 : 0;
      else
        k = cn;  // c^(n-1)
      if (n == 1) k -= shift;
      t.set_kappa(power(n), k);
      t.set_kappa_prime(power(n), 0);
      cn *= c;
    }
    return t;
  }
  Distribution d(degree, form);
  for (int n = 1; n <= degree; ++n) {
    Rational m = 0;
    for (const auto& l : spectrum) {
      Rational p = 1;
      for (int i = 0; i < n; ++i) p *= l - shift;
      m += p;
    }
    d.set_tau(power(n), m / static_cast<long>(spectrum.size()));
    d.set_tau_prime(power(n), 0);
  }
  return infinitesimal_cumulants_from_distribution(d);
}

namespace {

const char* kind_name(EnsembleSpec::Kind k) {
  switch (k) {
    case EnsembleSpec::Kind::Goe:
      return "goe";
    case EnsembleSpec::Kind::Wishart:
      return "wishart";
    case EnsembleSpec::Kind::HaarConjugated:
      return "haar_conjugated";
    case EnsembleSpec::Kind::Deterministic:
      return "deterministic";
  }
  return "";
}

Rational rational_field(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error("expected an integer or a \"p/q\" string, got " + v.dump());
}

}  // namespace

nlohmann::json EnsembleSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind);
  if (kind == Kind::Wishart) j["c"] = format_rational(c);
  if (shift != 0) j["shift"] = format_rational(shift);
  if (!spectrum.empty()) {
    j["spectrum"] = nlohmann::json::array();
    for (const auto& l : spectrum) j["spectrum"].push_back(format_rational(l));
  }
  return j;
}

EnsembleSpec EnsembleSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error("ensemble needs a \"kind\"");
  EnsembleSpec e;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "goe")
    e.kind = Kind::Goe;
  else if (kind == "wishart")
    e.kind = Kind::Wishart;
  else if (kind == "haar_conjugated")
    e.kind = Kind::HaarConjugated;
  else if (kind == "deterministic")
    e.kind = Kind::Deterministic;
  else
    throw Error("unknown ensemble kind '" + kind + "'");
  if (j.contains("c")) e.c = rational_field(j["c"]);
  if (e.c <= 0) throw Error("Wishart aspect ratio must be positive");
  if (j.contains("shift")) e.shift = rational_field(j["shift"]);
  if (j.contains("spectrum"))
    for (const auto& v : j["spectrum"]) e.spectrum.push_back(rational_field(v));
  bool spectral = e.kind == Kind::HaarConjugated || e.kind == Kind::Deterministic;
  if (spectral && e.spectrum.empty()) throw Error("ensemble '" + kind + "' needs a spectrum");
  return e;
}

namespace {

// Running mean and sum of squared deviations.
struct Moments {
  long n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    long total = n + o.n;
    double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * o.n / total;
    n = total;
  }
  double std_error() const { return n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0; }
};

// Runs draw(rng, values) over all samples, substream by substream, and merges
// the per-substream moments in substream order.
template <class Draw>
std::vector<Moments> run_streams(std::size_t count, int N, const McOptions& opt, Draw&& draw) {
  if (opt.samples < 2) throw Error("need at least 2 samples");
  std::vector<std::vector<Moments>> partial(kSubstreams, std::vector<Moments>(count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    std::vector<double> values(count);
    for (int s; (s = next++) < kSubstreams;) {
      try {
        long n = opt.samples / kSubstreams + (s < opt.samples % kSubstreams ? 1 : 0);
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(N)};
        Engine rng(seq);
        for (long i = 0; i < n; ++i) {
          draw(rng, values);
          for (std::size_t k = 0; k < count; ++k) partial[s][k].add(values[k]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  int workers = std::clamp(opt.workers, 1, kSubstreams);
  std::vector<std::thread> threads;
  for (int t = 1; t < workers; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<Moments> total(count);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < count; ++k) total[k].merge(p[k]);
  return total;
}

// Products of sub-words of the words of one draw, memoized.
class DrawEvaluator {
 public:
  DrawEvaluator(const Ensembles& ens, int N, Engine& rng, const std::set<int>& used) : N_(N) {
    for (int g : used) {
      auto it = ens.find(g);
      if (it == ens.end()) throw Error("no ensemble for generator " + std::to_string(g));
      memo_[Word{Letter{g, false}}] = it->second.sample(N, rng);
    }
  }

  double trace(const Word& w) {
    if (w.empty()) return N_;
    if (w.size() == 1) return product(w).trace();
    std::size_t h = w.size() / 2;
    const Matrix& a = product(Word(w.begin(), w.begin() + h));
    const Matrix& b = product(Word(w.begin() + h, w.end()));
    // Tr(AB) = sum_ij A_ij B_ji
    return a.cwiseProduct(b.transpose()).sum();
  }

 private:
  const Matrix& product(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    Matrix out;
    if (w.size() == 1) {
      out = product(Word{w.front().transpose()}).transpose();
    } else {
      std::size_t h = w.size() / 2;
      const Matrix& a = product(Word(w.begin(), w.begin() + h));
      const Matrix& b = product(Word(w.begin() + h, w.end()));
      out.noalias() = a * b;
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

  int N_;
  std::map<Word, Matrix> memo_;
};

}  // namespace

std::vector<TraceEstimate> mc_expected_trace(const std::vector<Word>& words, const Ensembles& ens,
                                             int N, const McOptions& opt) {
  require_dimension(N);
  std::set<int> used;
  for (const auto& w : words)
    for (const auto& l : w) used.insert(l.generator);
  for (int g : used)
    if (!ens.count(g)) throw Error("no ensemble for generator " + std::to_string(g));
  auto moments = run_streams(words.size(), N, opt, [&](Engine& rng, std::vector<double>& out) {
    DrawEvaluator e(ens, N, rng, used);
    for (std::size_t k = 0; k < words.size(); ++k) out[k] = e.trace(words[k]);
  });
  std::vector<TraceEstimate> result;
  for (const auto& m : moments) result.push_back({m.mean, m.std_error(), m.n, N});
  return result;
}

FitResult infinitesimal_fit(const std::vector<TraceEstimate>& per_N) {
  if (per_N.size() < 3) throw Error("the 1/N fit needs at least three values of N");
  std::set<int> distinct;
  for (const auto& e : per_N) distinct.insert(e.N);
  if (distinct.size() < 3) throw Error("the 1/N fit needs at least three distinct values of N");
  const auto rows = static_cast<Eigen::Index>(per_N.size());
  Matrix X(rows, 3);
  Eigen::VectorXd y(rows), se(rows);
  bool weighted = true;
  for (Eigen::Index i = 0; i < rows; ++i) {
    double inv = 1.0 / per_N[i].N;
    X(i, 0) = 1;
    X(i, 1) = inv;
    X(i, 2) = inv * inv;
    y(i) = per_N[i].tr_mean();
    se(i) = per_N[i].tr_std_error();
    weighted = weighted && se(i) > 0;
  }
  Eigen::VectorXd w = weighted ? Eigen::VectorXd(se.array().square().inverse()) : Eigen::VectorXd::Ones(rows);
  Matrix xtw = X.transpose() * w.asDiagonal();
  Matrix normal = xtw * X;
  // beta = A y with A = (X^t W X)^-1 X^t W; cov = A diag(se^2) A^t
  Matrix A = normal.inverse() * xtw;
  Eigen::VectorXd beta = A * y;
  Matrix cov = A * se.array().square().matrix().asDiagonal() * A.transpose();
  FitResult f;
  f.tau = beta(0);
  f.tau_prime = beta(1);
  f.gamma = beta(2);
  f.tau_se = std::sqrt(std::max(0.0, cov(0, 0)));
  f.tau_prime_se = std::sqrt(std::max(0.0, cov(1, 1)));
  f.gamma_se = std::sqrt(std::max(0.0, cov(2, 2)));
  f.per_N = per_N;
  return f;
}

std::vector<FitResult> infinitesimal_fit(const std::vector<Word>& words, const Ensembles& ens,
                                         const std::vector<int>& Ns, const McOptions& opt) {
  if (Ns.size() < 3) throw Error("the 1/N fit needs at least three values of N");
  std::vector<std::vector<TraceEstimate>> by_word(words.size());
  for (int N : Ns) {
    auto est = mc_expected_trace(words, ens, N, opt);
    for (std::size_t k = 0; k < words.size(); ++k) by_word[k].push_back(est[k]);
  }
  std::vector<FitResult> out;
  for (const auto& est : by_word) out.push_back(infinitesimal_fit(est));
  return out;
}

nlohmann::json FitResult::to_json() const {
  nlohmann::json j;
  j["tau"] = tau;
  j["tau_se"] = tau_se;
  j["tau_prime"] = tau_prime;
  j["tau_prime_se"] = tau_prime_se;
  j["gamma"] = gamma;
  j["gamma_se"] = gamma_se;
  j["per_N"] = nlohmann::json::array();
  for (const auto& e : per_N)
    j["per_N"].push_back({{"N", e.N}, {"samples", e.samples}, {"tr", e.tr_mean()}, {"tr_se", e.tr_std_error()}});
  return j;
}

IbpReport verify_ibp(const std::vector<Matrix>& Ms, const McOptions& opt) {
  const int n = static_cast<int>(Ms.size());
  if (n < 2 || n % 2 != 0) throw Error("integration by parts needs an even number of matrices");
  const int N = static_cast<int>(Ms.front().rows());
  require_dimension(N);
  for (const auto& m : Ms)
    if (m.rows() != N || m.cols() != N) throw Error("matrices must all be N x N");

  // values: lhs, rhs, four sums, lhs - rhs, lhs(O^t) - lhs(O)
  auto moments = run_streams(8, N, opt, [&](Engine& rng, std::vector<double>& out) {
    Matrix o = sample_haar_orthogonal(N, rng);
    auto sides = [&](const Matrix& u, double& lhs, double* sums) {
      std::vector<Matrix> p(n + 2);
      for (int k = 1; k <= n; ++k) p[k] = k % 2 == 1 ? Matrix(u * Ms[k - 1] * u.transpose()) : Ms[k - 1];
      // left[k] = P_1 ... P_k, right[k] = P_k ... P_n
      std::vector<Matrix> left(n + 1), right(n + 2);
      left[0] = Matrix::Identity(N, N);
      for (int k = 1; k <= n; ++k) left[k] = left[k - 1] * p[k];
      right[n + 1] = Matrix::Identity(N, N);
      for (int k = n; k >= 1; --k) right[k] = p[k] * right[k + 1];
      lhs = (N - 1) * left[n].trace();
      if (!sums) return;
      std::fill(sums, sums + 4, 0.0);
      // Tr(A B^t) = sum_ij A_ij B_ij
      for (int k = 1; k <= n - 1; k += 2) {
        sums[0] += left[k].cwiseProduct(right[k + 1]).sum();
        sums[1] += left[k].trace() * right[k + 1].trace();
        if (k >= 3) {
          sums[2] += left[k - 1].cwiseProduct(right[k]).sum();
          sums[3] += left[k - 1].trace() * right[k].trace();
        }
      }
    };
    double lhs, lhs_t, s[4];
    sides(o, lhs, s);
    sides(o.transpose(), lhs_t, nullptr);
    double rhs = -s[0] + s[1] + s[2] - s[3];
    out = {lhs, rhs, s[0], s[1], s[2], s[3], lhs - rhs, lhs_t - lhs};
  });
  IbpReport r;
  r.N = N;
  r.samples = moments[0].n;
  r.lhs = moments[0].mean;
  r.rhs = moments[1].mean;
  for (int i = 0; i < 4; ++i) r.sums[i] = moments[2 + i].mean;
  r.diff = moments[6].mean;
  r.transpose_diff = moments[7].mean;
  // Rounding floor: when both sides agree on every draw the sample spread is
  // pure floating-point noise.
  double floor = 64 * std::numeric_limits<double>::epsilon() * (std::abs(r.lhs) + 1);
  r.diff_se = std::max(moments[6].std_error(), floor);
  r.transpose_diff_se = std::max(moments[7].std_error(), floor);
  return r;
}

nlohmann::json IbpReport::to_json() const {
  return {{"N", N},
          {"samples", samples},
          {"lhs", lhs},
          {"rhs", rhs},
          {"sums", {sums[0], sums[1], sums[2], sums[3]}},
          {"diff", diff},
          {"diff_se", diff_se},
          {"z", z()},
          {"transpose_diff", transpose_diff},
          {"transpose_z", transpose_z()}};
}

Scenario Scenario::from_json(const nlohmann::json& j) {
  Scenario s;
  if (!j.contains("ensembles") || !j["ensembles"].is_object()) throw Error("scenario needs \"ensembles\"");
  for (const auto& [key, spec] : j["ensembles"].items()) {
    int g = 0;
    try {
      std::size_t used = 0;
      g = std::stoi(key, &used);
      if (used != key.size() || g < 1) throw Error("");
    } catch (const std::exception&) {
      throw Error("ensemble key '" + key + "' is not a generator number");
    }
    s.ensembles[g] = EnsembleSpec::from_json(spec);
  }
  if (!j.contains("checks") || !j["checks"].is_array()) throw Error("scenario needs \"checks\"");
  for (const auto& c : j["checks"]) {
    FreenessCheck fc;
    fc.word = parse_word(c.at("word").get<std::string>());
    if (fc.word.empty()) throw Error("empty word in scenario");
    if (c.contains("tolerance")) fc.tolerance = c["tolerance"].get<double>();
    if (c.contains("expected")) {
      fc.has_expected = true;
      fc.expected = rational_field(c["expected"]);
    }
    s.checks.push_back(fc);
  }
  return s;
}

bool FreenessCheckResult::pass() const {
  return expected_matches_prediction && std::abs(z_tau) <= tolerance && std::abs(z_tau_prime) <= tolerance;
}

bool AsymptoticFreenessReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass(); });
}

nlohmann::json AsymptoticFreenessReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (const auto& r : results)
    j["checks"].push_back({{"word", format_word(r.word)},
                           {"predicted_tau", format_rational(r.predicted_tau)},
                           {"predicted_tau_prime", format_rational(r.predicted_tau_prime)},
                           {"fit", r.fit.to_json()},
                           {"z_tau", r.z_tau},
                           {"z_tau_prime", r.z_tau_prime},
                           {"tolerance", r.tolerance},
                           {"expected_matches_prediction", r.expected_matches_prediction},
                           {"pass", r.pass()}});
  return j;
}

std::string AsymptoticFreenessReport::table() const {
  std::ostringstream out;
  out << std::left << std::setw(16) << "word" << std::setw(10) << "tau'" << std::setw(26) << "fit tau' +- se"
      << std::setw(10) << "z" << "result\n";
  for (const auto& r : results) {
    std::ostringstream fit;
    fit << std::setprecision(6) << r.fit.tau_prime << " +- " << std::setprecision(2) << r.fit.tau_prime_se;
    std::ostringstream z;
    z << std::setprecision(3) << r.z_tau_prime;
    out << std::setw(16) << format_word(r.word) << std::setw(10) << format_rational(r.predicted_tau_prime)
        << std::setw(26) << fit.str() << std::setw(10) << z.str() << (r.pass() ? "PASS" : "FAIL") << "\n";
  }
  return out.str();
}

AsymptoticFreenessReport verify_asymptotic_freeness(const Scenario& s, const std::vector<int>& Ns,
                                                    const McOptions& opt) {
  if (s.checks.empty()) throw Error("scenario has no checks");
  int degree = 1;
  std::vector<Word> words;
  for (const auto& c : s.checks) {
    degree = std::max(degree, static_cast<int>(c.word.size()));
    words.push_back(c.word);
  }
  MarginalFamily family;
  for (const auto& [g, spec] : s.ensembles) family.add(std::to_string(g), spec.limit_table(g, degree));
  Distribution joint = free_product(family, degree);
  auto fits = infinitesimal_fit(words, s.ensembles, Ns, opt);
  AsymptoticFreenessReport rep;
  for (std::size_t k = 0; k < s.checks.size(); ++k) {
    const auto& c = s.checks[k];
    FreenessCheckResult r;
    r.word = c.word;
    r.predicted_tau = joint.tau(c.word);
    r.predicted_tau_prime = joint.tau_prime(c.word);
    r.fit = fits[k];
    r.tolerance = c.tolerance;
    r.expected_matches_prediction = !c.has_expected || c.expected == r.predicted_tau_prime;
    auto z = [](double est, const Rational& target, double se) {
      double d = est - target.get_d();
      return se > 0 ? d / se : (d == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    };
    r.z_tau = z(r.fit.tau, r.predicted_tau, r.fit.tau_se);
    r.z_tau_prime = z(r.fit.tau_prime, r.predicted_tau_prime, r.fit.tau_prime_se);
    rep.results.push_back(r);
  }
  return rep;
}

}  // namespace infnc
