#include "logpolar/matfun.hpp"

#include <cmath>

namespace logpolar {
namespace {

constexpr double kSingularDet = 1e-14;
constexpr double kNegativeAxisTol = 1e-12;
constexpr double kNormalTol = 1e-12;

bool on_negative_axis(Complex lambda) {
  return std::abs(lambda.imag()) < kNegativeAxisTol * std::abs(lambda) && lambda.real() < 0.0;
}

double strict_upper_norm(const CMat& t) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) acc += std::norm(t(i, j));
  return std::sqrt(acc);
}

// Principal square root of an upper triangular matrix (Bjorck-Hammarling).
CMat sqrtm_upper(const CMat& t) {
  const auto n = t.rows();
  CMat r = CMat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r(j, j) = std::sqrt(t(j, j));
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex acc = 0.0;
      for (Eigen::Index k = i + 1; k < j; ++k) acc += r(i, k) * r(k, j);
      r(i, j) = (t(i, j) - acc) / (r(i, i) + r(j, j));
    }
  }
  return r;
}

// log of an upper triangular matrix with no eigenvalue on (-inf, 0] by
// inverse scaling and squaring.
CMat logm_upper(CMat t) {
  const auto n = t.rows();
  const CMat id = CMat::Identity(n, n);
  int roots = 0;
  while ((t - id).cwiseAbs().colwise().sum().maxCoeff() > 0.25) {
    if (++roots > 64) throw Error(ErrorKind::NoConvergence, "logm: square-root budget exhausted");
    t = sqrtm_upper(t);
  }
  const CMat e = t - id;
  CMat power = e;
  CMat sum = e;
  for (int k = 2; k <= 200; ++k) {
    power = (power * e).eval();
    const CMat term = power / static_cast<double>(k);
    if (k % 2 == 0) sum -= term; else sum += term;
    if (term.norm() <= 1e-18 * std::max(1.0, sum.norm())) break;
  }
  return std::ldexp(1.0, roots) * sum;
}

// Unit-norm eigenvectors of an upper triangular matrix, column k belongs to
// t(k, k).
CMat triangular_eigenvectors(const CMat& t) {
  const auto n = t.rows();
  const double tiny = 1e-300;
  CMat y = CMat::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    y(k, k) = 1.0;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      Complex acc = 0.0;
      for (Eigen::Index j = i + 1; j <= k; ++j) acc += t(i, j) * y(j, k);
      Complex denom = t(i, i) - t(k, k);
      if (std::abs(denom) < tiny) denom = tiny;
      y(i, k) = -acc / denom;
    }
    y.col(k).normalize();
  }
  return y;
}

Complex principal_scalar_log(Complex z) {
  double arg = std::arg(z);
  if (arg == -std::numbers::pi) arg = std::numbers::pi;
  return {std::log(std::abs(z)), arg};
}

void check_invertible(const CMat& m, const char* who) {
  const Complex det = m.partialPivLu().determinant();
  if (!(std::abs(det) >= kSingularDet)) throw Error(ErrorKind::Singular, who);
}

}  // namespace

CMat logm_principal(const CMat& m) {
  require_square(m.rows(), m.cols(), "logm_principal");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, "logm_principal: non-finite entries");
  check_invertible(m, "logm_principal");

  Eigen::ComplexSchur<CMat> schur(m);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "logm_principal: Schur");
  const CMat& t = schur.matrixT();
  const CMat& u = schur.matrixU();
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    if (on_negative_axis(t(i, i)))
      throw Error(ErrorKind::NegativeRealEigenvalue, "logm_principal");

  CMat log_t;
  if (strict_upper_norm(t) <= kNormalTol * t.norm()) {
    log_t = CMat::Zero(t.rows(), t.cols());
    for (Eigen::Index i = 0; i < t.rows(); ++i) log_t(i, i) = principal_scalar_log(t(i, i));
  } else {
    log_t = logm_upper(t.triangularView<Eigen::Upper>());
  }
  return u * log_t * u.adjoint();
}

RMat logm_principal(const RMat& m) {
  const CMat out = logm_principal(CMat(m.cast<Complex>()));
  return out.real();
}

template <typename Scalar>
Mat<Scalar> logm_hpd(const Mat<Scalar>& h) {
  const auto eig = hermitian_eigen(h);
  if (!(eig.values.minCoeff() > 1e-12)) throw Error(ErrorKind::NotPositiveDefinite, "logm_hpd");
  const RVec logs = eig.values.array().log();
  return sym(Mat<Scalar>(eig.vectors * logs.asDiagonal() * eig.vectors.adjoint()));
}

template <typename Scalar>
Mat<Scalar> powm_hpd(const Mat<Scalar>& h, double exponent) {
  const auto eig = hermitian_eigen(h);
  if (!(eig.values.minCoeff() > 1e-12)) throw Error(ErrorKind::NotPositiveDefinite, "powm_hpd");
  const RVec powers = eig.values.array().pow(exponent);
  return sym(Mat<Scalar>(eig.vectors * powers.asDiagonal() * eig.vectors.adjoint()));
}

template RMat logm_hpd(const RMat&);
template CMat logm_hpd(const CMat&);
template RMat powm_hpd(const RMat&, double);
template CMat powm_hpd(const CMat&, double);

CMat LogEigenbasis::materialize(const std::vector<int>& shifts) const {
  CVec logs = principal_logs;
  for (std::size_t j = 0; j < shifts.size(); ++j)
    logs(static_cast<Eigen::Index>(j)) += Complex(0.0, kTwoPi * shifts[j]);
  return basis * logs.asDiagonal() * basis_inv;
}

CMat LogEigenbasis::materialize_principal() const {
  return basis * principal_logs.asDiagonal() * basis_inv;
}

LogEigenbasis log_eigenbasis(const CMat& m, double max_condition) {
  require_square(m.rows(), m.cols(), "log_eigenbasis");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, "log_eigenbasis: non-finite entries");

  Eigen::ComplexSchur<CMat> schur(m);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "log_eigenbasis: Schur");
  const CMat& t = schur.matrixT();
  const CMat& u = schur.matrixU();
  const auto n = t.rows();
  if (!(std::abs(t.diagonal().prod()) >= kSingularDet)) throw Error(ErrorKind::Singular, "log_eigenbasis");

  LogEigenbasis out;
  out.eigenvalues = t.diagonal();
  out.principal_logs.resize(n);
  double max_mag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.principal_logs(i) = principal_scalar_log(t(i, i));
    out.touches_negative_axis = out.touches_negative_axis || on_negative_axis(t(i, i));
    max_mag = std::max(max_mag, std::abs(t(i, i)));
  }
  for (Eigen::Index i = 0; i < n && !out.repeated; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(t(i, i) - t(j, j)) <= 1e-8 * max_mag) {
        out.repeated = true;
        break;
      }

  if (strict_upper_norm(t) <= kNormalTol * t.norm()) {
    out.normal = true;
    out.basis = u;
    out.basis_inv = u.adjoint();
    out.condition = 1.0;
    return out;
  }

  const CMat y = triangular_eigenvectors(t);
  const CMat y_inv = y.triangularView<Eigen::Upper>().solve(CMat::Identity(n, n));
  const double cond = y.norm() * y_inv.norm() / static_cast<double>(n);
  if (!std::isfinite(cond) || cond >= max_condition)
    throw Error(ErrorKind::NotDiagonalizable, "log_eigenbasis: eigenvector condition estimate too large");
  out.condition = cond;
  out.basis = u * y;
  out.basis_inv = y_inv * u.adjoint();
  return out;
}

CMat LogBranch::materialize() const {
  CVec logs = principal_logs;
  for (std::size_t j = 0; j < shifts.size(); ++j)
    logs(static_cast<Eigen::Index>(j)) += Complex(0.0, kTwoPi * shifts[j]);
  return basis * logs.asDiagonal() * basis_inv;
}

void for_each_log_branch(const LogEigenbasis& basis, int shift_range,
                         const std::function<void(const CMat&, const std::vector<int>&)>& visit) {
  if (shift_range < 0) throw Error(ErrorKind::InvalidArgument, "shift range must be >= 0");
  const auto n = basis.basis.rows();
  const CMat principal = basis.materialize_principal();
  std::vector<int> shifts(static_cast<std::size_t>(n), -shift_range);
  if (shift_range == 0) {
    visit(principal, shifts);
    return;
  }
  std::vector<CMat> rank_one(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    rank_one[static_cast<std::size_t>(j)] =
        Complex(0.0, kTwoPi) * basis.basis.col(j) * basis.basis_inv.row(j);

  CMat branch(n, n);
  while (true) {
    branch = principal;
    for (std::size_t j = 0; j < shifts.size(); ++j)
      if (shifts[j] != 0) branch += static_cast<double>(shifts[j]) * rank_one[j];
    visit(branch, shifts);
    std::size_t d = 0;
    while (d < shifts.size() && shifts[d] == shift_range) shifts[d++] = -shift_range;
    if (d == shifts.size()) break;
    ++shifts[d];
  }
}

std::vector<LogBranch> log_branches(const CMat& m, int shift_range) {
  if (shift_range < 0) throw Error(ErrorKind::InvalidArgument, "shift range must be >= 0");
  const double count = std::pow(2.0 * shift_range + 1.0, static_cast<double>(m.rows()));
  if (count > 2e6) throw Error(ErrorKind::InvalidArgument, "log_branches: too many branches requested");
  const LogEigenbasis eb = log_eigenbasis(m);
  const CMat principal = eb.materialize_principal();
  std::vector<LogBranch> out;
  out.reserve(static_cast<std::size_t>(count));
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<int> shifts(n, -shift_range);
  while (true) {
    out.push_back({principal, shifts, eb.basis, eb.basis_inv, eb.principal_logs});
    std::size_t d = 0;
    while (d < n && shifts[d] == shift_range) shifts[d++] = -shift_range;
    if (d == n) break;
    ++shifts[d];
  }
  return out;
}

RMat sl2_exp(const RMat& x) {
  if (x.rows() != 2 || x.cols() != 2) throw Error(ErrorKind::NotSquare, "sl2_exp expects 2x2");
  if (std::abs(x.trace()) > 1e-12) throw Error(ErrorKind::NotTraceless, "sl2_exp");
  const double det = x.determinant();
  double c = 1.0;
  double f = 1.0;
  if (det < 0.0) {
    const double s = std::sqrt(-det);
    c = std::cosh(s);
    f = s < 1e-4 ? 1.0 + s * s / 6.0 + s * s * s * s / 120.0 : std::sinh(s) / s;
  } else if (det > 0.0) {
    const double s = std::sqrt(det);
    c = std::cos(s);
    f = s < 1e-4 ? 1.0 - s * s / 6.0 + s * s * s * s / 120.0 : std::sin(s) / s;
  }
  return c * RMat::Identity(2, 2) + f * x;
}

RMat sl2_log(const RMat& s) {
  if (s.rows() != 2 || s.cols() != 2) throw Error(ErrorKind::NotSquare, "sl2_log expects 2x2");
  if (std::abs(s.determinant() - 1.0) > 1e-10) throw Error(ErrorKind::NotSpecialLinear, "sl2_log: det != 1");
  const double tr = s.trace();
  if (tr <= -2.0 + 1e-12) throw Error(ErrorKind::OutsideDomain, "sl2_log: tr S <= -2");
  const double c = 0.5 * tr;
  double factor = 1.0;
  if (c > 1.0) {
    const double sh = std::sqrt((c - 1.0) * (c + 1.0));
    const double arg = std::log1p((c - 1.0) + sh);
    factor = arg < 1e-4 ? 1.0 - arg * arg / 6.0 + 7.0 * std::pow(arg, 4) / 360.0 : arg / sh;
  } else if (c < 1.0) {
    const double sn = std::sqrt((1.0 - c) * (1.0 + c));
    const double theta = std::acos(c);
    factor = theta < 1e-4 ? 1.0 + theta * theta / 6.0 + 7.0 * std::pow(theta, 4) / 360.0 : theta / sn;
  }
  return factor * (s - c * RMat::Identity(2, 2));
}

RMat co2_embed(Complex z) {
  if (z == Complex(0.0, 0.0)) throw Error(ErrorKind::ZeroArgument, "co2_embed");
  RMat m(2, 2);
  m << z.real(), z.imag(), -z.imag(), z.real();
  return m;
}

Complex co2_extract(const RMat& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorKind::NotCO2, "co2_extract expects 2x2");
  const double tol = 1e-12 * tol_scale(m);
  if (std::abs(m(0, 0) - m(1, 1)) > tol || std::abs(m(0, 1) + m(1, 0)) > tol)
    throw Error(ErrorKind::NotCO2, "co2_extract: not of the form [[a, b], [-b, a]]");
  return {0.5 * (m(0, 0) + m(1, 1)), 0.5 * (m(0, 1) - m(1, 0))};
}

std::vector<Complex> scalar_log_branches(Complex z, int shift_range) {
  if (z == Complex(0.0, 0.0)) throw Error(ErrorKind::ZeroArgument, "scalar_log_branches");
  if (shift_range < 0) throw Error(ErrorKind::InvalidArgument, "shift range must be >= 0");
  const Complex principal = principal_scalar_log(z);
  std::vector<Complex> out;
  for (int k = -shift_range; k <= shift_range; ++k)
    out.emplace_back(principal.real(), principal.imag() + kTwoPi * k);
  return out;
}

}  // namespace logpolar
