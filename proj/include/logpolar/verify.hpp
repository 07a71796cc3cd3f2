#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logpolar/linalg.hpp"

namespace logpolar {

/// Positive reals sorted descending: eigenvalues x of a comparison matrix and
/// the reference values d they are compared against.
struct ComparisonTriple {
  RVec x;
  RVec d;
};

struct SsliResult {
  bool hypotheses_hold = false;
  double conclusion_slack = 0.0;  // sum (log x)^2 - sum (log d)^2
};

/// ||exp sym X||^2 - ||exp X||^2. Throws Overflow when ||X||_F > 20.
double check_bhatia(const CMat& x, Norm norm);

/// tr exp(X + X*) - tr(exp X exp X*).
double check_bernstein_trace(const CMat& x);

/// tr(exp X exp Y) - tr exp(X + Y) for Hermitian X, Y.
double check_golden_thompson(const CMat& x, const CMat& y);

/// Hypotheses sum x^2 >= sum d^2, sum x^-2 >= sum d^-2, prod x = prod d
/// (inequalities to 1e-12 relative, product to 1e-10 relative).
/// Throws BadLength unless both have length 2 or 3, NonPositive on entries
/// <= 0.
SsliResult check_ssli(const ComparisonTriple& t);

/// x1 >= d1, 1/x_n >= 1/d_n, prod x = prod d, the ordering
/// x_n <= d_n <= d_1 <= x_1 and max |log d| <= max |log x|.
bool check_spectral_conditions(const ComparisonTriple& t);

/// x = eigenvalues of exp(sym log(Q* D)) for unitary Q and D = diag(d).
/// Throws NegativeRealEigenvalue when Q* D has no principal logarithm.
ComparisonTriple comparison_triple(const CMat& q, const RVec& d);

/// Replayable record of a suite input that violated (or illustrates) a
/// property.
struct Witness {
  std::string label;
  std::uint64_t seed = 0;
  int trial = 0;
  std::vector<std::pair<std::string, CMat>> matrices;
  std::vector<std::pair<std::string, double>> values;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  int violations = 0;
  double worst_slack = 0.0;
  std::vector<Witness> witnesses;
  /// Named summary numbers (counts, worst deviations) in a fixed order.
  std::vector<std::pair<std::string, double>> metrics;
  /// Informational outcomes that are not violations.
  std::vector<std::string> findings;
  /// The suite never fails (probes of open conjectures).
  bool informational = false;
};

/// Spectral non-uniqueness family U diag(1, Q22) V* (or diag(Q22, 1) when
/// the smallest singular value carries the largest |log|).
struct NonuniquenessFamily {
  CMat a;
  CMat polar_factor;
  double reference = 0.0;
  std::vector<CMat> members;
  std::vector<double> values;
  std::vector<double> parameters;
  double max_deviation = 0.0;
};

/// Throws DegenerateCase when all singular values coincide.
NonuniquenessFamily nonuniqueness_spectral_witness(const CMat& a, std::uint64_t seed, int samples = 16);

/// Members Q = U diag(D_1, ..., D_k) V* with unitary blocks over groups of
/// equal singular values (phases when they are distinct). The sym objective
/// is checked in the Frobenius and the spectral norm.
struct SymFamily {
  CMat a;
  CMat polar_factor;
  std::vector<int> multiplicities;
  double reference_fro = 0.0;
  double reference_spec = 0.0;
  std::vector<CMat> members;
  double max_deviation = 0.0;
};

SymFamily nonuniqueness_sym_witness(const CMat& a, std::uint64_t seed, int samples = 16);

/// g(xi) = arcosh(xi)^2 / (xi^2 - 1).
double appendix_g(double xi);

/// Suites. `trials` is per configuration (per dimension and norm where a
/// suite sweeps those).
SuiteReport bhatia_suite(int trials, std::uint64_t seed);
SuiteReport bernstein_suite(int trials, std::uint64_t seed);
SuiteReport golden_thompson_suite(int trials, std::uint64_t seed);
SuiteReport ssli_suite(int trials, std::uint64_t seed);
SuiteReport spectral_conditions_suite(int trials, std::uint64_t seed);
SuiteReport optimality_suite(int trials, std::uint64_t seed, int restarts);
SuiteReport uniqueness_frobenius_suite(int trials, std::uint64_t seed, int restarts = 8);
SuiteReport nonuniqueness_suite(int trials, std::uint64_t seed);
SuiteReport scalar_suite(int trials, std::uint64_t seed);
SuiteReport appendix_g_monotone(int samples);
SuiteReport conjecture_probe_general_norms(int trials, int n, std::uint64_t seed, int restarts = 4);

struct SuiteOptions {
  int trials = 0;  // 0 selects the suite default
  std::uint64_t seed = 42;
  int restarts = 0;
  int dim = 4;
};

/// Names accepted by run_suite, in a fixed order.
const std::vector<std::string_view>& suite_names();
int default_trials(std::string_view suite);

/// Throws UnknownSuite for names outside suite_names().
SuiteReport run_suite(std::string_view name, const SuiteOptions& opts);

}  // namespace logpolar
