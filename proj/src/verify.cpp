#include "logpolar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "logpolar/matfun.hpp"
#include "logpolar/minimize.hpp"
#include "logpolar/polar.hpp"
#include "logpolar/random.hpp"
#include "parallel.hpp"

namespace logpolar {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxWitnesses = 20;

CMat exp_hermitian(const CMat& h) {
  return hermitian_function(CMat(sym(h)), [](double v) { return std::exp(v); });
}

double squared(double v) { return v * v; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct TrialOutcome {
  double slack = 0.0;
  bool violation = false;
  std::optional<Witness> witness;
  std::vector<double> extras;
};

template <typename Fn>
std::vector<TrialOutcome> run_trials(int count, Fn&& fn) {
  std::vector<TrialOutcome> out(static_cast<std::size_t>(std::max(count, 0)));
  detail::parallel_for(count, [&](int i) { out[static_cast<std::size_t>(i)] = fn(i); });
  return out;
}

void absorb(SuiteReport& rep, const std::vector<TrialOutcome>& outcomes) {
  for (const auto& o : outcomes) {
    ++rep.trials;
    rep.worst_slack = std::min(rep.worst_slack, o.slack);
    if (o.violation) {
      ++rep.violations;
      if (o.witness && rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back(*o.witness);
    }
  }
}

// Max of extras[k] over all outcomes (extras missing count as -inf).
double max_extra(const std::vector<TrialOutcome>& outcomes, std::size_t k) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes)
    if (k < o.extras.size()) m = std::max(m, o.extras[k]);
  return m;
}

double sum_extra(const std::vector<TrialOutcome>& outcomes, std::size_t k) {
  double s = 0.0;
  for (const auto& o : outcomes)
    if (k < o.extras.size()) s += o.extras[k];
  return s;
}

SuiteReport make_report(std::string name, std::uint64_t seed) {
  SuiteReport rep;
  rep.name = std::move(name);
  rep.seed = seed;
  return rep;
}

Witness make_witness(std::string label, std::uint64_t seed, int trial) {
  Witness w;
  w.label = std::move(label);
  w.seed = seed;
  w.trial = trial;
  return w;
}

void require_positive(const RVec& v, const char* who) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v(i) > 0.0) || !std::isfinite(v(i))) throw Error(ErrorKind::NonPositive, who);
}

RVec sorted_desc(RVec v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

bool rel_leq(double a, double b, double tol) { return a <= b + tol * std::max(std::abs(a), std::abs(b)); }

CMat diag_matrix(std::initializer_list<double> values) {
  RVec d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return d.cast<Complex>().asDiagonal();
}

WeightedFunctional log_full(Norm norm) {
  WeightedFunctional f;
  f.norm = norm;
  return f;
}

WeightedFunctional log_sym(Norm norm) {
  WeightedFunctional f;
  f.norm = norm;
  f.part = Part::SymOnly;
  return f;
}

// Random unitary exp(i t H) with ||H||_F = 1.
CMat small_unitary(Rng& rng, Eigen::Index n, double t) {
  CMat h = sym(gaussian_complex(rng, n));
  h /= h.norm();
  return expm(CMat(Complex(0.0, t) * h));
}

}  // namespace

double check_bhatia(const CMat& x, Norm norm) {
  require_square(x.rows(), x.cols(), "check_bhatia");
  if (!x.allFinite()) throw Error(ErrorKind::InvalidArgument, "check_bhatia: non-finite entries");
  if (x.norm() > 20.0) throw Error(ErrorKind::Overflow, "check_bhatia: ||X||_F > 20");
  const double lhs = squared(logpolar::norm(exp_hermitian(sym(x)), norm));
  const double rhs = squared(logpolar::norm(CMat(expm(x)), norm));
  return lhs - rhs;
}

double check_bernstein_trace(const CMat& x) {
  require_square(x.rows(), x.cols(), "check_bernstein_trace");
  if (!x.allFinite()) throw Error(ErrorKind::InvalidArgument, "check_bernstein_trace: non-finite entries");
  if (x.norm() > 20.0) throw Error(ErrorKind::Overflow, "check_bernstein_trace: ||X||_F > 20");
  const CMat e = expm(x);
  const CMat e_star = expm(CMat(x.adjoint()));
  const Complex lhs = expm(CMat(x + x.adjoint())).trace();
  const Complex rhs = (e * e_star).trace();
  return lhs.real() - rhs.real();
}

double check_golden_thompson(const CMat& x, const CMat& y) {
  if (!is_hermitian(x) || !is_hermitian(y)) throw Error(ErrorKind::NotHermitian, "check_golden_thompson");
  if (x.rows() != y.rows()) throw Error(ErrorKind::NotSquare, "check_golden_thompson: size mismatch");
  const CMat ex = exp_hermitian(x);
  const CMat ey = exp_hermitian(y);
  const double lhs = (ex * ey).trace().real();
  const double rhs = exp_hermitian(CMat(x + y)).trace().real();
  return lhs - rhs;
}

SsliResult check_ssli(const ComparisonTriple& t) {
  if (t.x.size() != t.d.size() || (t.x.size() != 2 && t.x.size() != 3))
    throw Error(ErrorKind::BadLength, "check_ssli: lengths must agree and be 2 or 3");
  require_positive(t.x, "check_ssli");
  require_positive(t.d, "check_ssli");
  const double sx2 = t.x.squaredNorm();
  const double sd2 = t.d.squaredNorm();
  const double ix2 = t.x.cwiseInverse().squaredNorm();
  const double id2 = t.d.cwiseInverse().squaredNorm();
  const double px = t.x.prod();
  const double pd = t.d.prod();
  SsliResult r;
  r.hypotheses_hold = rel_leq(sd2, sx2, 1e-12) && rel_leq(id2, ix2, 1e-12) &&
                      std::abs(px - pd) <= 1e-10 * std::max(px, pd);
  r.conclusion_slack = t.x.array().log().square().sum() - t.d.array().log().square().sum();
  return r;
}

bool check_spectral_conditions(const ComparisonTriple& t) {
  if (t.x.size() != t.d.size() || t.x.size() == 0)
    throw Error(ErrorKind::BadLength, "check_spectral_conditions: lengths must agree");
  require_positive(t.x, "check_spectral_conditions");
  require_positive(t.d, "check_spectral_conditions");
  const RVec x = sorted_desc(t.x);
  const RVec d = sorted_desc(t.d);
  const auto n = x.size();
  const double tol = 1e-12;
  const bool top = rel_leq(d(0), x(0), tol);
  const bool bottom = rel_leq(1.0 / d(n - 1), 1.0 / x(n - 1), tol);
  const bool product = std::abs(x.prod() - d.prod()) <= 1e-10 * std::max(x.prod(), d.prod());
  const bool ordering = rel_leq(x(n - 1), d(n - 1), tol) && d(n - 1) <= d(0) && rel_leq(d(0), x(0), tol);
  const double log_d = std::max(std::abs(std::log(d(n - 1))), std::abs(std::log(d(0))));
  const double log_x = std::max(std::abs(std::log(x(n - 1))), std::abs(std::log(x(0))));
  return top && bottom && product && ordering && log_d <= log_x + 1e-12 * std::max(1.0, log_x);
}

ComparisonTriple comparison_triple(const CMat& q, const RVec& d) {
  require_positive(d, "comparison_triple");
  if (q.rows() != d.size() || q.cols() != d.size())
    throw Error(ErrorKind::NotSquare, "comparison_triple: size mismatch");
  const CMat m = q.adjoint() * d.cast<Complex>().asDiagonal();
  const CMat s = sym(logm_principal(m));
  Eigen::SelfAdjointEigenSolver<CMat> es(s, Eigen::EigenvaluesOnly);
  return {sorted_desc(es.eigenvalues().array().exp()), sorted_desc(d)};
}

NonuniquenessFamily nonuniqueness_spectral_witness(const CMat& a, std::uint64_t seed, int samples) {
  require_square(a.rows(), a.cols(), "nonuniqueness_spectral_witness");
  const auto n = a.rows();
  if (n < 2) throw Error(ErrorKind::DegenerateCase, "nonuniqueness_spectral_witness: n < 2");
  const Svd<Complex> s = svd(a);
  if (!(s.sigma(n - 1) > 0.0)) throw Error(ErrorKind::Singular, "nonuniqueness_spectral_witness");
  if (s.sigma(0) - s.sigma(n - 1) <= 1e-12 * s.sigma(0))
    throw Error(ErrorKind::DegenerateCase, "nonuniqueness_spectral_witness: all singular values coincide");

  NonuniquenessFamily fam;
  fam.a = a;
  fam.polar_factor = s.u * s.v.adjoint();
  const WeightedFunctional f = log_full(Norm::spectral());
  fam.reference = eval_functional(a, fam.polar_factor, f, 0);
  const double radius = std::sqrt(fam.reference);

  // Keep the singular value carrying the largest |log| fixed and rotate the
  // complementary block.
  const bool keep_top = std::abs(std::log(s.sigma(0))) >= std::abs(std::log(s.sigma(n - 1)));
  const Eigen::Index off = keep_top ? 1 : 0;
  const RVec rest = s.sigma.segment(off, n - 1);
  Rng rng = Rng::stream(seed, 0);
  for (int i = 0; i < samples; ++i) {
    CMat q22;
    double param = 0.0;
    if (n == 2) {
      // Scalar block e^{i theta}: |log(e^{-i theta} sigma)|^2 =
      // log(sigma)^2 + theta^2 must not exceed the reference.
      const double room = std::sqrt(std::max(0.0, fam.reference - squared(std::log(rest(0)))));
      param = samples == 1 ? room : room * (-1.0 + 2.0 * i / (samples - 1));
      q22 = CMat::Constant(1, 1, std::polar(1.0, param));
    } else {
      double t = 0.5 * radius;
      for (int shrink = 0; shrink < 60; ++shrink, t *= 0.5) {
        q22 = small_unitary(rng, n - 1, t);
        const CMat block = q22.adjoint() * rest.cast<Complex>().asDiagonal();
        if (norm(logm_principal(block), Norm::spectral()) <= radius) break;
      }
      param = t;
    }
    CMat mid = CMat::Identity(n, n);
    mid.block(off, off, n - 1, n - 1) = q22;
    const CMat q = s.u * mid * s.v.adjoint();
    const double value = eval_functional(a, q, f, 0);
    fam.members.push_back(q);
    fam.values.push_back(value);
    fam.parameters.push_back(param);
    fam.max_deviation = std::max(fam.max_deviation, std::abs(value - fam.reference));
  }
  return fam;
}

SymFamily nonuniqueness_sym_witness(const CMat& a, std::uint64_t seed, int samples) {
  require_square(a.rows(), a.cols(), "nonuniqueness_sym_witness");
  const auto n = a.rows();
  const Svd<Complex> s = svd(a);
  if (!(s.sigma(n - 1) > 0.0)) throw Error(ErrorKind::Singular, "nonuniqueness_sym_witness");

  SymFamily fam;
  fam.a = a;
  fam.polar_factor = s.u * s.v.adjoint();
  for (Eigen::Index i = 0; i < n;) {
    Eigen::Index j = i + 1;
    while (j < n && s.sigma(i) - s.sigma(j) <= 1e-10 * s.sigma(0)) ++j;
    fam.multiplicities.push_back(static_cast<int>(j - i));
    i = j;
  }
  const WeightedFunctional fro = log_sym(Norm::frobenius());
  const WeightedFunctional spec = log_sym(Norm::spectral());
  fam.reference_fro = eval_functional(a, fam.polar_factor, fro, 0);
  fam.reference_spec = eval_functional(a, fam.polar_factor, spec, 0);

  Rng rng = Rng::stream(seed, 1);
  for (int k = 0; k < samples; ++k) {
    CMat block_diag = CMat::Zero(n, n);
    Eigen::Index pos = 0;
    for (int m : fam.multiplicities) {
      // Blocks stay well inside the principal strip.
      const CMat blk = m == 1 ? CMat::Constant(1, 1, std::polar(1.0, rng.uniform(-2.5, 2.5)))
                              : small_unitary(rng, m, rng.uniform(0.0, 2.5));
      block_diag.block(pos, pos, m, m) = blk;
      pos += m;
    }
    const CMat q = s.u * block_diag * s.v.adjoint();
    fam.members.push_back(q);
    fam.max_deviation = std::max({fam.max_deviation, std::abs(eval_functional(a, q, fro, 0) - fam.reference_fro),
                                  std::abs(eval_functional(a, q, spec, 0) - fam.reference_spec)});
  }
  return fam;
}

double appendix_g(double xi) {
  if (!(xi > 1.0)) throw Error(ErrorKind::OutsideDomain, "appendix_g: xi must exceed 1");
  const double e = xi - 1.0;
  const double ac = std::log1p(e + std::sqrt(e * (xi + 1.0)));
  return ac * ac / (e * (xi + 1.0));
}

SuiteReport bhatia_suite(int trials, std::uint64_t seed) {
  SuiteReport rep = make_report("bhatia", seed);
  std::vector<TrialOutcome> all;
  int config = 0;
  for (Eigen::Index n = 2; n <= 6; ++n) {
    for (Norm nm : {Norm::frobenius(), Norm::spectral()}) {
      const int base = config++ * trials;
      auto outcomes = run_trials(trials, [&](int t) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(base + t));
        const CMat x = scaled_complex(rng, n, 0.1, 5.0);
        const double scale = squared(norm(exp_hermitian(sym(x)), nm));
        TrialOutcome o;
        o.slack = check_bhatia(x, nm) / scale;
        o.violation = o.slack < -1e-12;
        double equality_without_normality = 0.0;
        double normal_failure = 0.0;
        if (nm.kind == NormKind::Frobenius) {
          const double commutator = (x * x.adjoint() - x.adjoint() * x).norm();
          if (std::abs(o.slack) <= 1e-10 && commutator > 1e-5 * x.squaredNorm()) equality_without_normality = 1.0;
          // Converse direction on a normal matrix with the same scale.
          const CMat u = haar_unitary(rng, n);
          CVec z(n);
          for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.complex_normal();
          CMat normal = u * z.asDiagonal() * u.adjoint();
          normal *= rng.uniform(0.1, 5.0) / normal.norm();
          const double ns = check_bhatia(normal, nm) / squared(norm(exp_hermitian(sym(normal)), nm));
          if (std::abs(ns) > 1e-10) normal_failure = 1.0;
          o.violation = o.violation || equality_without_normality > 0.0 || normal_failure > 0.0;
        }
        o.extras = {equality_without_normality, normal_failure};
        if (o.violation) {
          Witness w = make_witness("bhatia n=" + std::to_string(n) + " " + to_string(nm), seed, base + t);
          w.matrices.emplace_back("X", x);
          w.values.emplace_back("relative_slack", o.slack);
          o.witness = w;
        }
        return o;
      });
      absorb(rep, outcomes);
      all.insert(all.end(), outcomes.begin(), outcomes.end());
    }
  }
  rep.metrics = {{"configurations", 10.0},
                 {"equality_without_normality", sum_extra(all, 0)},
                 {"normal_equality_failures", sum_extra(all, 1)}};
  return rep;
}

SuiteReport bernstein_suite(int trials, std::uint64_t seed) {
  SuiteReport rep = make_report("bernstein", seed);
  std::vector<TrialOutcome> all;
  for (Eigen::Index n = 2; n <= 6; ++n) {
    const int base = static_cast<int>(n - 2) * trials;
    auto outcomes = run_trials(trials, [&](int t) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(base + t));
      const CMat x = scaled_complex(rng, n, 0.1, 5.0);
      const double scale = squared(exp_hermitian(sym(x)).norm());
      TrialOutcome o;
      o.slack = check_bernstein_trace(x) / scale;
      const double cross = std::abs(o.slack - check_bhatia(x, Norm::frobenius()) / scale);
      o.violation = o.slack < -1e-12 || cross > 1e-10;
      o.extras = {cross};
      if (o.violation) {
        Witness w = make_witness("bernstein n=" + std::to_string(n), seed, base + t);
        w.matrices.emplace_back("X", x);
        w.values.emplace_back("relative_slack", o.slack);
        w.values.emplace_back("cross_oracle_difference", cross);
        o.witness = w;
      }
      return o;
    });
    absorb(rep, outcomes);
    all.insert(all.end(), outcomes.begin(), outcomes.end());
  }
  rep.metrics = {{"max_cross_oracle_difference", max_extra(all, 0)}};
  return rep;
}

SuiteReport golden_thompson_suite(int trials, std::uint64_t seed) {
  SuiteReport rep = make_report("goldenthompson", seed);
  for (Eigen::Index n = 2; n <= 6; ++n) {
    const int base = static_cast<int>(n - 2) * trials;
    absorb(rep, run_trials(trials, [&](int t) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(base + t));
      const CMat x = sym(scaled_complex(rng, n, 0.1, 5.0));
      const CMat y = sym(scaled_complex(rng, n, 0.1, 5.0));
      const double lhs = (exp_hermitian(x) * exp_hermitian(y)).trace().real();
      TrialOutcome o;
      o.slack = check_golden_thompson(x, y) / std::max(1.0, std::abs(lhs));
      o.violation = o.slack < -1e-10;
      if (o.violation) {
        Witness w = make_witness("goldenthompson n=" + std::to_string(n), seed, base + t);
        w.matrices.emplace_back("X", x);
        w.matrices.emplace_back("Y", y);
        w.values.emplace_back("relative_slack", o.slack);
        o.witness = w;
      }
      return o;
    }));
  }
  return rep;
}

SuiteReport ssli_suite(int trials, std::uint64_t seed) {
  SuiteReport rep = make_report("ssli", seed);
  std::vector<TrialOutcome> all;
  for (Eigen::Index n = 2; n <= 3; ++n) {
    const int base = static_cast<int>(n - 2) * trials;
    auto outcomes = run_trials(trials, [&](int t) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(base + t));
      const CMat q = haar_unitary(rng, n);
      const RVec d = log_uniform_descending(rng, n, 1e-2, 1e2);
      TrialOutcome o;
      ComparisonTriple tri;
      try {
        tri = comparison_triple(q, d);
      } catch (const Error&) {
        o.extras = {1.0, 0.0, 0.0, 0.0, 0.0};
        return o;
      }
      const SsliResult r = check_ssli(tri);
      const double larger = std::max({1.0, tri.x.array().log().square().sum(), d.array().log().square().sum()});
      o.slack = r.conclusion_slack / larger;
      const double linf = (tri.x - tri.d).cwiseAbs().maxCoeff() / tri.d.maxCoeff();
      const bool equality_misdetected = o.slack <= 1e-10 && linf > 1e-5;

      // Generator conditions in both norms and the determinant chain.
      const double fro_x = tri.x.norm(), fro_d = d.norm();
      const double inv_x = tri.x.cwiseInverse().norm(), inv_d = d.cwiseInverse().norm();
      const bool generator = rel_leq(fro_d, fro_x, 1e-9) && rel_leq(inv_d, inv_x, 1e-9) &&
                             rel_leq(d.maxCoeff(), tri.x.maxCoeff(), 1e-9) &&
                             rel_leq(1.0 / d.minCoeff(), 1.0 / tri.x.minCoeff(), 1e-9) &&
                             std::abs(tri.x.prod() - d.prod()) <= 1e-9 * d.prod();

      // Equality input x = d from a diagonal phase matrix.
      CVec phases(n);
      for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::polar(1.0, rng.uniform(-3.0, 3.0));
      const ComparisonTriple eq = comparison_triple(CMat(phases.asDiagonal()), d);
      const SsliResult re = check_ssli(eq);
      const bool equality_detected = re.hypotheses_hold && std::abs(re.conclusion_slack) <= 1e-10 * larger &&
                                     (eq.x - eq.d).cwiseAbs().maxCoeff() <= 1e-5 * d.maxCoeff();

      o.violation = !r.hypotheses_hold || o.slack < -1e-10 || equality_misdetected || !generator ||
                    !equality_detected;
      o.extras = {0.0, r.hypotheses_hold ? 0.0 : 1.0, equality_misdetected ? 1.0 : 0.0, generator ? 0.0 : 1.0,
                  equality_detected ? 1.0 : 0.0};
      if (o.violation) {
        Witness w = make_witness("ssli n=" + std::to_string(n), seed, base + t);
        w.matrices.emplace_back("Q", q);
        w.matrices.emplace_back("D", CMat(d.cast<Complex>().asDiagonal()));
        w.values.emplace_back("relative_slack", o.slack);
        o.witness = w;
      }
      return o;
    });
    absorb(rep, outcomes);
    all.insert(all.end(), outcomes.begin(), outcomes.end());
  }
  rep.metrics = {{"skipped_no_principal_log", sum_extra(all, 0)},
                 {"hypothesis_failures", sum_extra(all, 1)},
                 {"equality_misdetections", sum_extra(all, 2)},
                 {"generator_condition_failures", sum_extra(all, 3)},
                 {"equality_inputs_detected", sum_extra(all, 4)}};
  return rep;
}

SuiteReport spectral_conditions_suite(int trials, std::uint64_t seed) {
  SuiteReport rep = make_report("spectral", seed);
  for (Eigen::Index n = 2; n <= 6; ++n) {
    const int base = static_cast<int>(n - 2) * trials;
    absorb(rep, run_trials(trials, [&](int t) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(base + t));
      const CMat q = haar_unitary(rng, n);
      const RVec d = log_uniform_descending(rng, n, 1e-2, 1e2);
      TrialOutcome o;
      ComparisonTriple tri;
      try {
        tri = comparison_triple(q, d);
      } catch (const Error&) {
        return o;
      }
      const double log_x = std::max(std::abs(std::log(tri.x(n - 1))), std::abs(std::log(tri.x(0))));
      const double log_d = std::max(std::abs(std::log(d(n - 1))), std::abs(std::log(d(0))));
      o.slack = (log_x - log_d) / std::max(1.0, log_x);
      o.violation = !check_spectral_conditions(tri);
      if (o.violation) {
        Witness w = make_witness("spectral n=" + std::to_string(n), seed, base + t);
        w.matrices.emplace_back("Q", q);
        w.matrices.emplace_back("D", CMat(d.cast<Complex>().asDiagonal()));
        o.witness = w;
      }
      return o;
    }));
  }
  return rep;
}

SuiteReport optimality_suite(int trials, std::uint64_t seed, int restarts) {
  SuiteReport rep = make_report("optimality", seed);
  struct Config {
    Eigen::Index n;
    Part part;
    Norm norm;
    Group group;
  };
  const std::vector<Config> configs = {{2, Part::Full, Norm::frobenius(), Group::SO},
                                       {2, Part::SymOnly, Norm::frobenius(), Group::SO},
                                       {3, Part::Full, Norm::frobenius(), Group::SO},
                                       {3, Part::SymOnly, Norm::frobenius(), Group::SO},
                                       {2, Part::Full, Norm::spectral(), Group::U},
                                       {3, Part::Full, Norm::spectral(), Group::U},
                                       {4, Part::Full, Norm::spectral(), Group::U}};
  std::vector<TrialOutcome> all;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const Config& cf = configs[c];
    const int base = static_cast<int>(c) * trials;
    auto outcomes = run_trials(trials, [&](int t) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(base + t));
      const CMat a = cf.group == Group::SO ? CMat(random_gl_plus(rng, cf.n, 1e3).cast<Complex>())
                                           : random_gl_complex(rng, cf.n, 1e3);
      WeightedFunctional f;
      f.part = cf.part;
      f.norm = cf.norm;
      SearchConfig cfg;
      cfg.seed = seed + static_cast<std::uint64_t>(base + t);
      cfg.restarts = cf.group == Group::U ? std::max(1, restarts / 4) : restarts;
      cfg.group = cf.group;
      const MinimizationReport r = minimize_over_rotations(a, f, cfg);
      TrialOutcome o;
      o.slack = r.gap;
      const double dev = std::abs(r.best_value - r.predicted_value) / std::max(1.0, r.predicted_value);
      o.violation = r.violation;
      o.extras = {dev};
      if (o.violation) {
        Witness w = make_witness("optimality n=" + std::to_string(cf.n) + " " + std::string(to_string(cf.part)) +
                                     " " + to_string(cf.norm),
                                 seed, base + t);
        w.matrices.emplace_back("A", a);
        w.matrices.emplace_back("bestQ", r.best_q);
        w.values.emplace_back("gap", r.gap);
        o.witness = w;
      }
      return o;
    });
    absorb(rep, outcomes);
    all.insert(all.end(), outcomes.begin(), outcomes.end());
  }
  rep.metrics = {{"max_relative_deviation_from_prediction", max_extra(all, 0)}};
  return rep;
}

SuiteReport uniqueness_frobenius_suite(int trials, std::uint64_t seed, int restarts) {
  SuiteReport rep = make_report("uniqueness", seed);
  const WeightedFunctional f = log_full(Norm::frobenius());
  auto check = [&](const CMat& a, int trial, int branch_range, const std::string& label) {
    SearchConfig cfg;
    cfg.seed = seed + static_cast<std::uint64_t>(trial);
    cfg.restarts = restarts;
    cfg.group = Group::U;
    cfg.branch_range = branch_range;
    const MinimizationReport r = minimize_over_rotations(a, f, cfg);
    const CMat up = polar_decompose(a).up;
    TrialOutcome o;
    const double dist = (r.best_q - up).norm();
    o.slack = -dist;
    o.violation = r.distinct_minimizers.size() != 1 || dist > 1e-3 || r.violation;
    o.extras = {dist, static_cast<double>(r.distinct_minimizers.size())};
    if (o.violation) {
      Witness w = make_witness(label, seed, trial);
      w.matrices.emplace_back("A", a);
      w.matrices.emplace_back("bestQ", r.best_q);
      w.values.emplace_back("distance_to_polar", dist);
      w.values.emplace_back("clusters", static_cast<double>(r.distinct_minimizers.size()));
      o.witness = w;
    }
    return o;
  };
  auto outcomes = run_trials(trials, [&](int t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    CMat a;
    for (int attempt = 0; attempt < 100; ++attempt) {
      a = random_gl_complex(rng, 3, 1e2);
      const RVec s = singular_values(a);
      if ((s(0) - s(1)) > 1e-2 * s(0) && (s(1) - s(2)) > 1e-2 * s(0)) break;
    }
    return check(a, t, 1, "uniqueness random");
  });
  absorb(rep, outcomes);
  // Repeated singular value d1 = d2 and the identity at the principal branch.
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trials));
  const CMat u = haar_unitary(rng, 3);
  const CMat v = haar_unitary(rng, 3);
  const std::vector<TrialOutcome> special = {
      check(CMat(u * diag_matrix({2.0, 2.0, 1.0}) * v.adjoint()), trials, 1, "uniqueness repeated singular value"),
      check(CMat::Identity(3, 3), trials + 1, 0, "uniqueness identity")};
  absorb(rep, special);
  outcomes.insert(outcomes.end(), special.begin(), special.end());
  rep.metrics = {{"max_distance_to_polar", max_extra(outcomes, 0)}, {"max_clusters", max_extra(outcomes, 1)}};
  return rep;
}

SuiteReport nonuniqueness_suite(int trials, std::uint64_t seed) {
  SuiteReport rep = make_report("nonuniqueness", seed);
  constexpr double kTol = 1e-9;
  std::vector<TrialOutcome> outcomes;
  auto record_spectral = [&](const NonuniquenessFamily& fam, const std::string& label, int trial) {
    TrialOutcome o;
    o.slack = -fam.max_deviation;
    double spread = 0.0;
    for (const CMat& q : fam.members) spread = std::max(spread, (q - fam.polar_factor).norm());
    o.violation = fam.max_deviation > kTol * std::max(1.0, fam.reference) || spread < 1e-3;
    o.extras = {fam.max_deviation, spread};
    if (o.violation) {
      Witness w = make_witness(label, seed, trial);
      w.matrices.emplace_back("A", fam.a);
      w.values.emplace_back("max_deviation", fam.max_deviation);
      w.values.emplace_back("max_distance_to_polar", spread);
      o.witness = w;
    }
    outcomes.push_back(o);
  };
  auto record_sym = [&](const SymFamily& fam, const std::string& label, int trial) {
    TrialOutcome o;
    o.slack = -fam.max_deviation;
    o.violation = fam.max_deviation > kTol * std::max(1.0, fam.reference_fro);
    o.extras = {fam.max_deviation, 0.0};
    if (o.violation) {
      Witness w = make_witness(label, seed, trial);
      w.matrices.emplace_back("A", fam.a);
      w.values.emplace_back("max_deviation", fam.max_deviation);
      o.witness = w;
    }
    outcomes.push_back(o);
  };

  const double e = std::numbers::e;
  record_spectral(nonuniqueness_spectral_witness(diag_matrix({e, 1.0}), seed, 21), "spectral diag(e,1)", -1);
  record_spectral(nonuniqueness_spectral_witness(diag_matrix({e * e, e, 1.0}), seed, 16), "spectral diag(e^2,e,1)",
                  -2);
  record_sym(nonuniqueness_sym_witness(diag_matrix({2.0, 1.0, 0.5}), seed, 16), "sym diag(2,1,1/2)", -3);
  record_sym(nonuniqueness_sym_witness(CMat::Identity(3, 3), seed, 16), "sym identity", -4);

  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const Eigen::Index n = 2 + t % 3;
    const CMat a = random_gl_complex(rng, n, 1e2);
    record_spectral(nonuniqueness_spectral_witness(a, seed + static_cast<std::uint64_t>(t), 8), "spectral random", t);
    record_sym(nonuniqueness_sym_witness(a, seed + static_cast<std::uint64_t>(t), 8), "sym random", t);
  }

  // Real diagonal A and non-diagonal rotations: the sym objective must not
  // drop below its value at the identity.
  const CMat diag_a = diag_matrix({3.0, 1.5, 0.4});
  const WeightedFunctional fs = log_sym(Norm::frobenius());
  const double ref = eval_functional(diag_a, CMat::Identity(3, 3), fs, 1);
  int strictly_larger = 0;
  int below = 0;
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trials) + 7);
  const int rotations = std::max(trials, 16);
  for (int k = 0; k < rotations; ++k) {
    const RMat q = haar_rotation(rng, 3);
    double v;
    try {
      v = eval_functional(diag_a, CMat(q.cast<Complex>()), fs, 1);
    } catch (const Error&) {
      continue;
    }
    if (v > ref + kTol) ++strictly_larger;
    if (v < ref - kTol) ++below;
  }
  TrialOutcome rot;
  rot.violation = below > 0;
  rot.extras = {0.0, 0.0};
  if (rot.violation) {
    Witness w = make_witness("sym rotation below identity value", seed, trials + 7);
    w.matrices.emplace_back("A", diag_a);
    w.values.emplace_back("count", below);
    rot.witness = w;
  }
  outcomes.push_back(rot);

  absorb(rep, outcomes);
  rep.metrics = {{"max_objective_deviation", max_extra(outcomes, 0)},
                 {"max_member_distance_to_polar", max_extra(outcomes, 1)},
                 {"rotations_sampled", static_cast<double>(rotations)},
                 {"rotations_strictly_larger", static_cast<double>(strictly_larger)}};
  rep.findings.push_back("diag(e,1): Q = diag(1, e^{i theta}) attains spectral objective 1 for theta in [-1, 1]");
  return rep;
}

SuiteReport scalar_suite(int trials, std::uint64_t seed) {
  SuiteReport rep = make_report("scalar", seed);
  const WeightedFunctional f = log_full(Norm::frobenius());
  WeightedFunctional esym;
  esym.family = Family::Euclidean;
  esym.part = Part::SymOnly;
  auto outcomes = run_trials(trials, [&](int t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const Complex z = std::polar(std::exp(rng.uniform(-3.0, 3.0)), rng.uniform(-kPi, kPi));
    const ScalarThetaResult s = minimize_scalar_theta(z, f, 1000);
    const double expected = squared(std::log(std::abs(z)));
    TrialOutcome o;
    const double err = std::abs(s.value - expected);

    // Matrix side: ||Log(Q(theta)^T co2(z))||_F^2 = 2 |Log(e^{-i theta} z)|^2.
    const RMat rot = co2_embed(std::polar(1.0, s.theta));
    const CMat a = co2_embed(z).cast<Complex>();
    const double matrix_value = 0.5 * eval_functional(a, CMat(rot.cast<Complex>()), f, 1);
    const double consistency = std::abs(matrix_value - s.value);

    double optimizer_gap = 0.0;
    double angle_gap = 0.0;
    if (t % 10 == 0) {
      SearchConfig cfg;
      cfg.seed = seed + static_cast<std::uint64_t>(t);
      cfg.restarts = 2;
      const MinimizationReport r = minimize_over_rotations(a, f, cfg);
      optimizer_gap = std::abs(0.5 * r.best_value - s.value);
      const double theta = std::atan2(r.best_q(0, 1).real(), r.best_q(0, 0).real());
      angle_gap = std::abs(std::remainder(theta - s.theta, 2.0 * kPi));
    }

    // Euclidean sym with |z| > 1: two roots of cos(arg z - theta) = 1/|z|.
    double euclid_err = 0.0;
    if (std::abs(z) > 1.05) {
      const ScalarThetaResult es = minimize_scalar_theta(z, esym, 1000);
      const double delta = std::acos(1.0 / std::abs(z));
      double worst = es.minimizers.size() == 2 ? 0.0 : 1.0;
      for (double th : es.minimizers) {
        const double d1 = std::abs(std::remainder(th - (std::arg(z) - delta), 2.0 * kPi));
        const double d2 = std::abs(std::remainder(th - (std::arg(z) + delta), 2.0 * kPi));
        worst = std::max(worst, std::min(d1, d2));
      }
      euclid_err = std::max(worst > 1e-6 ? worst : 0.0, es.value);
    }

    o.slack = -err;
    o.violation = err > 1e-9 || consistency > 1e-8 || optimizer_gap > 1e-8 || angle_gap > 1e-5 || euclid_err > 1e-9;
    o.extras = {err, consistency, optimizer_gap, angle_gap, euclid_err};
    if (o.violation) {
      Witness w = make_witness("scalar", seed, t);
      w.values = {{"re_z", z.real()}, {"im_z", z.imag()}, {"value", s.value}, {"expected", expected},
                  {"matrix_consistency", consistency}, {"optimizer_gap", optimizer_gap}};
      o.witness = w;
    }
    return o;
  });
  absorb(rep, outcomes);
  rep.metrics = {{"max_value_error", max_extra(outcomes, 0)},
                 {"max_co2_consistency_error", max_extra(outcomes, 1)},
                 {"max_optimizer_gap", max_extra(outcomes, 2)},
                 {"max_angle_gap", max_extra(outcomes, 3)},
                 {"max_euclid_sym_error", max_extra(outcomes, 4)}};
  return rep;
}

SuiteReport appendix_g_monotone(int samples) {
  SuiteReport rep = make_report("appendix", 0);
  samples = std::max(samples, 2);
  std::vector<double> xi(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    xi[static_cast<std::size_t>(i)] = 1.0 + 1e-6 * std::pow(49.0 / 1e-6, s);
  }
  double worst_step = -std::numeric_limits<double>::infinity();
  int increases = 0;
  double prev = appendix_g(xi[0]);
  for (std::size_t i = 1; i < xi.size(); ++i) {
    const double g = appendix_g(xi[i]);
    worst_step = std::max(worst_step, g - prev);
    if (!(g < prev)) ++increases;
    prev = g;
  }
  const double limit_err = std::abs(appendix_g(1.0 + 1e-6) - 1.0);
  rep.trials = samples;
  rep.violations = increases + (limit_err > 1e-5 ? 1 : 0);
  rep.worst_slack = -worst_step;

  // By-hand SL(2) minimum over a dense theta grid.
  double worst_value_err = 0.0;
  double worst_argmin = 0.0;
  const int grid = 4000;
  for (double lambda : {1.1, 2.0, 10.0}) {
    RMat d = RMat::Zero(2, 2);
    d(0, 0) = lambda;
    d(1, 1) = 1.0 / lambda;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int j = 0; j <= grid; ++j) {
      const double theta = -kPi + 2.0 * kPi * j / grid;
      const RMat q = co2_embed(std::polar(1.0, theta));
      const RMat s = q.transpose() * d;
      double v;
      try {
        v = sl2_log(s).squaredNorm();
      } catch (const Error&) {
        continue;
      }
      if (v < best) {
        best = v;
        best_theta = theta;
      }
    }
    const double expected = 2.0 * squared(std::log(lambda));
    worst_value_err = std::max(worst_value_err, std::abs(best - expected));
    worst_argmin = std::max(worst_argmin, std::abs(best_theta));
    if (std::abs(best - expected) > 1e-12 * std::max(1.0, expected) || std::abs(best_theta) > 1e-12) {
      ++rep.violations;
      Witness w = make_witness("appendix sl2 lambda=" + fmt(lambda), 0, 0);
      w.values = {{"grid_minimum", best}, {"expected", expected}, {"argmin", best_theta}};
      rep.witnesses.push_back(w);
    }
  }
  rep.metrics = {{"g_limit_error", limit_err},
                 {"largest_step", worst_step},
                 {"sl2_value_error", worst_value_err},
                 {"sl2_argmin", worst_argmin}};
  return rep;
}

SuiteReport conjecture_probe_general_norms(int trials, int n, std::uint64_t seed, int restarts) {
  if (n < 1 || n > 6) throw Error(ErrorKind::InvalidArgument, "conjecture probe: 1 <= n <= 6");
  SuiteReport rep = make_report("conjecture", seed);
  rep.informational = true;
  for (int k = 1; k <= n; ++k) {
    const Norm nm = Norm::ky_fan(k);
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(k * trials + t));
      const CMat a = random_gl_complex(rng, n, 1e2);
      double slack;
      if (n == 1) {
        slack = 0.0;
      } else {
        SearchConfig cfg;
        cfg.seed = seed + static_cast<std::uint64_t>(k * trials + t);
        cfg.restarts = restarts;
        cfg.group = Group::U;
        const MinimizationReport r = minimize_over_rotations(a, log_full(nm), cfg);
        slack = r.gap;
      }
      ++rep.trials;
      worst = std::min(worst, slack);
      rep.worst_slack = std::min(rep.worst_slack, slack);
      if (slack < -1e-6)
        rep.findings.push_back("kyfan" + std::to_string(k) + " trial " + std::to_string(t) +
                               ": optimizer beat the polar factor by " + fmt(-slack));
    }
    rep.metrics.emplace_back("min_slack_kyfan" + std::to_string(k), worst);
  }
  return rep;
}

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names = {"bhatia",       "bernstein",  "goldenthompson", "ssli",
                                                      "spectral",     "optimality", "uniqueness",     "nonuniqueness",
                                                      "scalar",       "appendix",   "conjecture"};
  return names;
}

int default_trials(std::string_view suite) {
  if (suite == "ssli" || suite == "scalar") return 10000;
  if (suite == "optimality" || suite == "uniqueness") return 10;
  if (suite == "nonuniqueness") return 20;
  if (suite == "appendix") return 2000;
  if (suite == "conjecture") return 3;
  return 1000;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& opts) {
  const int trials = opts.trials > 0 ? opts.trials : default_trials(name);
  const std::uint64_t seed = opts.seed;
  if (name == "bhatia") return bhatia_suite(trials, seed);
  if (name == "bernstein") return bernstein_suite(trials, seed);
  if (name == "goldenthompson") return golden_thompson_suite(trials, seed);
  if (name == "ssli") return ssli_suite(trials, seed);
  if (name == "spectral") return spectral_conditions_suite(trials, seed);
  if (name == "optimality") return optimality_suite(trials, seed, opts.restarts > 0 ? opts.restarts : 16);
  if (name == "uniqueness") return uniqueness_frobenius_suite(trials, seed, opts.restarts > 0 ? opts.restarts : 8);
  if (name == "nonuniqueness") return nonuniqueness_suite(trials, seed);
  if (name == "scalar") return scalar_suite(trials, seed);
  if (name == "appendix") return appendix_g_monotone(trials);
  if (name == "conjecture")
    return conjecture_probe_general_norms(trials, opts.dim, seed, opts.restarts > 0 ? opts.restarts : 4);
  throw Error(ErrorKind::UnknownSuite, "unknown suite: " + std::string(name));
}

}  // namespace logpolar
