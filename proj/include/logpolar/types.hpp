#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace logpolar {

using Complex = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RMat = Mat<double>;
using CMat = Mat<Complex>;
using RVec = Vec<double>;
using CVec = Vec<Complex>;

enum class ErrorKind {
  NotHermitian,
  NotSquare,
  NoConvergence,
  Overflow,
  Singular,
  NegativeRealEigenvalue,
  NotDiagonalizable,
  NotTraceless,
  NotSpecialLinear,
  OutsideDomain,
  NotCO2,
  ZeroArgument,
  NotRealPositiveDet,
  NotPositiveDefinite,
  NotOrthogonal,
  AntipodalSpectrum,
  OutsideDSharp,
  BranchDomain,
  BadLength,
  NonPositive,
  DegenerateCase,
  InvalidArgument,
  ParseError,
  UnknownSuite,
};

std::string_view to_string(ErrorKind kind);

/// Every numerical precondition failure in the library surfaces as this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class NormKind { Frobenius, Spectral, KyFan, Schatten };

/// Unitarily invariant norm selector. `k` is the order for Ky-Fan norms
/// (sum of the k largest singular values) and the exponent p for Schatten
/// norms (l_p norm of the singular values).
struct Norm {
  NormKind kind = NormKind::Frobenius;
  int k = 1;

  static constexpr Norm frobenius() { return {NormKind::Frobenius, 1}; }
  static constexpr Norm spectral() { return {NormKind::Spectral, 1}; }
  static constexpr Norm ky_fan(int k) { return {NormKind::KyFan, k}; }
  static constexpr Norm schatten(int p) { return {NormKind::Schatten, p}; }
};

std::string to_string(const Norm& norm);

/// True when every imaginary part is exactly zero.
template <typename Derived>
bool is_real(const Eigen::MatrixBase<Derived>& m) {
  if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
    return (m.imag().array() == 0.0).all();
  } else {
    return true;
  }
}

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

inline void require_square(Eigen::Index rows, Eigen::Index cols, const char* who) {
  if (rows != cols || rows == 0) throw Error(ErrorKind::NotSquare, who);
}

}  // namespace logpolar
