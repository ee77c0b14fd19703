#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "infnc/cumulants.hpp"
#include "infnc/rational.hpp"
#include "infnc/word.hpp"

namespace infnc {

using Matrix = Eigen::MatrixXd;
using Engine = std::mt19937_64;

// X = (G + G^t) / sqrt(2N): off-diagonal entries have variance 1/N, diagonal
// entries 2/N, so E tr X^2 = 1 + 1/N.
Matrix sample_goe(int N, Engine& rng);
// Q from the QR factorization of a Gaussian matrix, with the signs fixed so
// that R has a positive diagonal.
Matrix sample_haar_orthogonal(int N, Engine& rng);
// W = G G^t / M, G of shape N x M with M = round(N / c).
Matrix sample_wishart(int N, const Rational& c, Engine& rng);
int wishart_columns(int N, const Rational& c);

struct EnsembleSpec {
  enum class Kind { Goe, Wishart, HaarConjugated, Deterministic };
  Kind kind = Kind::Goe;
  Rational c = 1;                 // Wishart aspect ratio
  Rational shift = 0;             // the sample is X - shift * I
  std::vector<Rational> spectrum;  // eigenvalues, each taking an equal share of [N]

  Matrix sample(int N, Engine& rng) const;
  // The N x N diagonal matrix of the spectral kinds.
  Matrix diagonal(int N) const;
  // Cumulants of the N -> infinity limit, as a table in generator g.
  CumulantTable limit_table(int g, int degree) const;

  nlohmann::json to_json() const;
  static EnsembleSpec from_json(const nlohmann::json& j);
};

// generator -> independent ensemble
using Ensembles = std::map<int, EnsembleSpec>;

struct McOptions {
  std::uint64_t seed = 42;
  long samples = 10000;
  int workers = 1;
};

// Samples are split over this many RNG substreams whatever the worker count,
// and partial results are combined in substream order.
inline constexpr int kSubstreams = 64;

// Estimate of E[Tr(P_1 ... P_k)].
struct TraceEstimate {
  double mean = 0;
  double std_error = 0;
  long samples = 0;
  int N = 0;

  double tr_mean() const { return mean / N; }
  double tr_std_error() const { return std_error / N; }
};

// One estimate per word, all words evaluated on the same draws. Letters with
// the same generator share a draw; a transposed letter uses its transpose.
std::vector<TraceEstimate> mc_expected_trace(const std::vector<Word>& words, const Ensembles& ens,
                                             int N, const McOptions& opt);

// E tr = tau + tau'/N + gamma/N^2, weighted least squares over N.
struct FitResult {
  double tau = 0, tau_se = 0;
  double tau_prime = 0, tau_prime_se = 0;
  double gamma = 0, gamma_se = 0;
  std::vector<TraceEstimate> per_N;

  nlohmann::json to_json() const;
};

FitResult infinitesimal_fit(const std::vector<TraceEstimate>& per_N);
std::vector<FitResult> infinitesimal_fit(const std::vector<Word>& words, const Ensembles& ens,
                                         const std::vector<int>& Ns, const McOptions& opt);

// Both sides of the orthogonal integration by parts identity on shared Haar
// draws. Each sum is the mean of its per-draw value.
struct IbpReport {
  int N = 0;
  long samples = 0;
  double lhs = 0, rhs = 0;
  double diff = 0, diff_se = 0;
  double sums[4] = {0, 0, 0, 0};
  // LHS with O replaced by O^t, minus LHS, on the same draws
  double transpose_diff = 0, transpose_diff_se = 0;

  double z() const { return diff_se > 0 ? diff / diff_se : (diff == 0 ? 0 : 1e300); }
  double transpose_z() const {
    return transpose_diff_se > 0 ? transpose_diff / transpose_diff_se : (transpose_diff == 0 ? 0 : 1e300);
  }
  nlohmann::json to_json() const;
};

IbpReport verify_ibp(const std::vector<Matrix>& Ms, const McOptions& opt);

struct FreenessCheck {
  Word word;
  double tolerance = 3;  // in standard errors
  bool has_expected = false;
  Rational expected;     // tau' stated by the scenario
};

struct Scenario {
  Ensembles ensembles;
  std::vector<FreenessCheck> checks;

  static Scenario from_json(const nlohmann::json& j);
};

struct FreenessCheckResult {
  Word word;
  Rational predicted_tau, predicted_tau_prime;
  FitResult fit;
  double z_tau = 0, z_tau_prime = 0;
  double tolerance = 3;
  bool expected_matches_prediction = true;

  bool pass() const;
};

struct AsymptoticFreenessReport {
  std::vector<FreenessCheckResult> results;

  bool ok() const;
  nlohmann::json to_json() const;
  std::string table() const;
};

// Predictions come from the free product of the ensembles' limit tables.
AsymptoticFreenessReport verify_asymptotic_freeness(const Scenario& s, const std::vector<int>& Ns,
                                                    const McOptions& opt);

}  // namespace infnc
