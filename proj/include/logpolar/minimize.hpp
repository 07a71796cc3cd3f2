#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logpolar/linalg.hpp"

namespace logpolar {

enum class Family { Euclidean, Logarithmic };
enum class Part { Full, SymOnly, SkewOnly, SymPlusSkew, DevSym, DevFull };
enum class Group { SO, U };

std::string_view to_string(Family family);
std::string_view to_string(Part part);
std::string_view to_string(Group group);
std::optional<Family> parse_family(std::string_view name);
std::optional<Part> parse_part(std::string_view name);
std::optional<Group> parse_group(std::string_view name);

/// Weighted functional on Y = Q*A - I (Euclidean family) or on a logarithm
/// Y of Q*A (logarithmic family):
///
///   full        mu ||Y||^2
///   sym         mu ||sym Y||^2
///   skew        muc ||skew Y||^2
///   symskew     mu ||sym Y||^2 + muc ||skew Y||^2
///   devsym      mu ||dev sym Y||^2
///   devfull     mu ||dev Y||^2
///
/// For the logarithmic family the value is the minimum over the enumerated
/// logarithms of Q*A.
struct WeightedFunctional {
  double mu = 1.0;
  double muc = 0.0;
  Norm norm = Norm::frobenius();
  Family family = Family::Logarithmic;
  Part part = Part::Full;

  void validate() const;
};

/// The functional applied to a single matrix Y.
double apply_part(const CMat& y, const WeightedFunctional& f);

/// Throws BranchDomain when Q*A cannot be diagonalized reliably and
/// NegativeRealEigenvalue when branch_range = 0 and the principal logarithm
/// does not exist.
double eval_functional(const CMat& a, const CMat& q, const WeightedFunctional& f, int branch_range);

/// Closed-form value of the functional at the polar factor computed from the
/// singular values of A (logarithmic family only; NaN otherwise).
double predicted_minimum(const CMat& a, const WeightedFunctional& f);

/// Point on SO(n) or U(n) with its skew-symmetric (skew-Hermitian) chart
/// coordinate relative to the identity.
struct RotationChart {
  Group group = Group::SO;
  Eigen::Index dim = 0;
  CMat w;
  CMat q;

  static RotationChart from_generator(Group group, const CMat& w);
};

struct SearchConfig {
  std::uint64_t seed = 42;
  int restarts = 32;
  int max_iters = 500;
  /// Relative improvement below which an outer iteration counts as stalled;
  /// three stalled iterations in a row end a restart.
  double tol = 1e-12;
  int branch_range = 1;
  Group group = Group::SO;
  double tol_violation = 1e-6;
  double cluster_value_tol = 1e-6;
  double cluster_distance = 1e-4;
};

struct MinimizationReport {
  CMat best_q;
  double best_value = 0.0;
  double value_at_polar = 0.0;
  double predicted_value = 0.0;
  double gap = 0.0;
  int restarts = 0;
  long evaluations = 0;
  long skipped_probes = 0;
  int reseeds = 0;
  bool converged = false;
  bool violation = false;
  bool polar_improper = false;
  bool repeated_eigenvalues = false;
  std::string branch_policy;
  std::vector<CMat> distinct_minimizers;
  std::vector<double> restart_values;
};

/// Multi-start derivative-free search over SO(n) or U(n). Each restart starts
/// from a Haar-random point and runs coordinate-wise golden-section line
/// searches in the Lie algebra, re-centred at the current iterate. Results
/// are independent of execution order.
MinimizationReport minimize_over_rotations(const CMat& a, const WeightedFunctional& f,
                                           const SearchConfig& cfg);
MinimizationReport minimize_over_rotations(const RMat& a, const WeightedFunctional& f,
                                           const SearchConfig& cfg);

struct ScalarThetaResult {
  double theta = 0.0;
  double value = 0.0;
  /// Every minimizing angle found, in (-pi, pi].
  std::vector<double> minimizers;
  /// The objective is constant in theta (any angle is optimal).
  bool theta_unconstrained = false;
};

/// Minimizes theta -> f(e^{-i theta} z) over (-pi, pi] on a grid of
/// grid_size points followed by golden-section refinement of every grid
/// local minimum. Throws ZeroArgument for z = 0.
ScalarThetaResult minimize_scalar_theta(Complex z, const WeightedFunctional& f, int grid_size = 4096);

/// Minimum over SO(3) of ||dev_3 Log(Q^T A)||^2 (part = DevFull) or
/// ||dev_3 sym Log(Q^T A)||^2 (part = DevSym) for A in GL+(3).
MinimizationReport minimize_dev3(const RMat& a, Part part, const SearchConfig& cfg);

/// Rotation angle of a 3x3 rotation, acos((tr Q - 1) / 2).
double rotation_angle(const RMat& q);

}  // namespace logpolar
