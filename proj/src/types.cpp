#include "logpolar/types.hpp"

namespace logpolar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NegativeRealEigenvalue: return "NegativeRealEigenvalue";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::NotTraceless: return "NotTraceless";
    case ErrorKind::NotSpecialLinear: return "NotSpecialLinear";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::NotCO2: return "NotCO2";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::NotRealPositiveDet: return "NotRealPositiveDet";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::AntipodalSpectrum: return "AntipodalSpectrum";
    case ErrorKind::OutsideDSharp: return "OutsideDSharp";
    case ErrorKind::BranchDomain: return "BranchDomain";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::DegenerateCase: return "DegenerateCase";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

std::string to_string(const Norm& norm) {
  switch (norm.kind) {
    case NormKind::Frobenius: return "fro";
    case NormKind::Spectral: return "spec";
    case NormKind::KyFan: return "kyfan" + std::to_string(norm.k);
    case NormKind::Schatten: return "schatten" + std::to_string(norm.k);
  }
  return "?";
}

}  // namespace logpolar
