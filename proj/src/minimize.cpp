#include "logpolar/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "logpolar/matfun.hpp"
#include "logpolar/polar.hpp"
#include "logpolar/random.hpp"
#include "parallel.hpp"

namespace logpolar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498949;
constexpr double kPi = std::numbers::pi;

double squared(double x) { return x * x; }

// Every non-Frobenius norm used here dominates sigma_1, which in turn
// dominates each column norm and ||M||_F / sqrt(n).
double cheap_bound_sq(const CMat& m) {
  return std::max(m.colwise().squaredNorm().maxCoeff(), m.squaredNorm() / static_cast<double>(m.cols()));
}

// ||M||^2 for a matrix known to be Hermitian (or i times one), where the
// singular values are the absolute eigenvalues. Returns a lower bound
// >= cutoff instead when one is cheaply available.
double hermitian_norm_sq(const CMat& m, Norm norm, double cutoff) {
  if (norm.kind == NormKind::Frobenius) return m.squaredNorm();
  if (const double lb = cheap_bound_sq(m); lb >= cutoff) return lb;
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  RVec sigma = es.eigenvalues().cwiseAbs();
  std::sort(sigma.data(), sigma.data() + sigma.size(), std::greater<>());
  return squared(norm_from_singular_values(sigma, norm));
}

double general_norm_sq(const CMat& m, Norm norm, double cutoff) {
  if (norm.kind == NormKind::Frobenius) return m.squaredNorm();
  if (const double lb = cheap_bound_sq(m); lb >= cutoff) return lb;
  if (norm.kind == NormKind::KyFan) return squared(logpolar::norm(m, norm));
  // The leading singular values are accurate enough through M*M.
  Eigen::SelfAdjointEigenSolver<CMat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  RVec sigma = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().reverse();
  return squared(norm_from_singular_values(sigma, norm));
}

// weight * norm_sq(m) where the evaluation may stop early once the result
// is known to reach cutoff.
template <typename NormSq>
double weighted(double weight, NormSq&& norm_sq, double cutoff) {
  if (weight == 0.0) return 0.0;
  return weight * norm_sq(cutoff / weight);
}

double apply_part_bounded(const CMat& y, const WeightedFunctional& f, double cutoff) {
  const Norm nm = f.norm;
  switch (f.part) {
    case Part::Full:
      return weighted(f.mu, [&](double c) { return general_norm_sq(y, nm, c); }, cutoff);
    case Part::SymOnly:
      return weighted(f.mu, [&](double c) { return hermitian_norm_sq(sym(y), nm, c); }, cutoff);
    case Part::SkewOnly:
      return weighted(f.muc, [&](double c) { return hermitian_norm_sq(skew(y), nm, c); }, cutoff);
    case Part::SymPlusSkew: {
      const double v = weighted(f.mu, [&](double c) { return hermitian_norm_sq(sym(y), nm, c); }, cutoff);
      if (v >= cutoff) return v;
      return v + weighted(f.muc, [&](double c) { return hermitian_norm_sq(skew(y), nm, c); }, cutoff - v);
    }
    case Part::DevSym:
      return weighted(f.mu, [&](double c) { return hermitian_norm_sq(dev(sym(y)), nm, c); }, cutoff);
    case Part::DevFull:
      return weighted(f.mu, [&](double c) { return general_norm_sq(dev(y), nm, c); }, cutoff);
  }
  return kInf;
}

// Lower bound for mu ||Y||^2 (part full) or mu ||dev Y||^2 (part devfull)
// from the eigenvalues of Y: Schur for Frobenius, Weyl majorization
// otherwise.
double eigenvalue_bound(const CVec& mu_vals, const WeightedFunctional& f, RVec& scratch) {
  const Complex shift = f.part == Part::DevFull ? mu_vals.mean() : Complex(0.0);
  double acc = 0.0;
  switch (f.norm.kind) {
    case NormKind::Frobenius:
      for (Eigen::Index j = 0; j < mu_vals.size(); ++j) acc += std::norm(mu_vals(j) - shift);
      return f.mu * acc;
    case NormKind::Spectral:
      for (Eigen::Index j = 0; j < mu_vals.size(); ++j) acc = std::max(acc, std::norm(mu_vals(j) - shift));
      return f.mu * acc;
    default:
      for (Eigen::Index j = 0; j < mu_vals.size(); ++j) scratch(j) = std::abs(mu_vals(j) - shift);
      std::sort(scratch.data(), scratch.data() + scratch.size(), std::greater<>());
      return f.mu * squared(norm_from_singular_values(scratch, f.norm));
  }
}

bool part_has_eigenvalue_bound(Part part) { return part == Part::Full || part == Part::DevFull; }

double min_over_branches(const LogEigenbasis& eb, const WeightedFunctional& f, int range) {
  const Eigen::Index n = eb.eigenvalues.size();
  const CMat principal = eb.materialize_principal();
  double best = apply_part(principal, f);
  if (range == 0) return best;

  std::vector<CMat> rank_ones(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    rank_ones[static_cast<std::size_t>(j)] =
        Complex(0.0, kTwoPi) * eb.basis.col(j) * eb.basis_inv.row(j);

  const bool bounded = part_has_eigenvalue_bound(f.part);
  // |mu_j|^2 alone bounds every norm used here from below (for the full
  // part), so shifts that already fail it are dropped per eigenvalue.
  std::vector<std::vector<int>> allowed(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& list = allowed[static_cast<std::size_t>(j)];
    for (int kj = -range; kj <= range; ++kj) {
      const double lb = f.mu * std::norm(eb.principal_logs(j) + Complex(0.0, kTwoPi * kj));
      if (kj == 0 || f.part != Part::Full || lb < best) list.push_back(kj);
    }
  }

  // Odometer over the allowed shifts; b tracks principal + sum k_j R_j
  // incrementally.
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  CMat b = principal;
  for (std::size_t j = 0; j < allowed.size(); ++j) b += static_cast<double>(allowed[j][0]) * rank_ones[j];
  CVec logs(n);
  RVec scratch(n);
  while (true) {
    bool zero = true;
    for (std::size_t j = 0; j < idx.size(); ++j) zero = zero && allowed[j][idx[j]] == 0;
    if (!zero) {
      bool skip = false;
      if (bounded) {
        for (Eigen::Index j = 0; j < n; ++j) {
          const auto uj = static_cast<std::size_t>(j);
          logs(j) = eb.principal_logs(j) + Complex(0.0, kTwoPi * allowed[uj][idx[uj]]);
        }
        skip = eigenvalue_bound(logs, f, scratch) >= best;
      }
      if (!skip) best = std::min(best, apply_part_bounded(b, f, best));
    }
    std::size_t pos = 0;
    while (pos < idx.size() && idx[pos] + 1 == allowed[pos].size()) {
      b += static_cast<double>(allowed[pos].front() - allowed[pos].back()) * rank_ones[pos];
      idx[pos] = 0;
      ++pos;
    }
    if (pos == idx.size()) break;
    b += static_cast<double>(allowed[pos][idx[pos] + 1] - allowed[pos][idx[pos]]) * rank_ones[pos];
    ++idx[pos];
  }
  return best;
}

// A one-parameter subgroup t -> exp(t G) used as a search direction.
struct Direction {
  enum class Kind { RealPair, ImagPair, Phase, General } kind;
  Eigen::Index p = 0;
  Eigen::Index q = 0;
  CMat vectors;
  RVec angles;
};

std::vector<Direction> coordinate_directions(Group group, Eigen::Index n) {
  std::vector<Direction> dirs;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p + 1; q < n; ++q) dirs.push_back({Direction::Kind::RealPair, p, q, {}, {}});
  if (group == Group::U) {
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) dirs.push_back({Direction::Kind::ImagPair, p, q, {}, {}});
    for (Eigen::Index p = 0; p < n; ++p) dirs.push_back({Direction::Kind::Phase, p, p, {}, {}});
  }
  return dirs;
}

CMat random_generator(Rng& rng, Group group, Eigen::Index n) {
  CMat w = group == Group::SO ? CMat(gaussian_real(rng, n).cast<Complex>()) : gaussian_complex(rng, n);
  w = skew(w);
  const double len = w.norm();
  return len > 0.0 ? CMat(w * (std::numbers::sqrt2 / len)) : w;
}

Direction general_direction(const CMat& w) {
  // w = i H with H Hermitian, so exp(t w) = V diag(e^{i t lambda}) V*.
  const CMat h = Complex(0.0, -1.0) * w;
  Eigen::SelfAdjointEigenSolver<CMat> es(sym(h));
  return {Direction::Kind::General, 0, 0, es.eigenvectors(), es.eigenvalues()};
}

CMat moved(const CMat& q, const Direction& d, double t, bool real_group) {
  if (d.kind == Direction::Kind::General) {
    CVec phases(d.angles.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, t * d.angles(i));
    CMat step = d.vectors * phases.asDiagonal() * d.vectors.adjoint();
    if (real_group) step = step.real().cast<Complex>();
    return q * step;
  }
  CMat out = q;
  if (d.kind == Direction::Kind::Phase) {
    out.col(d.p) *= std::polar(1.0, t);
    return out;
  }
  const double c = std::cos(t);
  const double s = std::sin(t);
  // 2x2 block of exp(t G) in rows/cols (p, q).
  Complex epp = c, epq, eqp, eqq = c;
  if (d.kind == Direction::Kind::RealPair) {
    epq = s;
    eqp = -s;
  } else {
    epq = Complex(0.0, s);
    eqp = Complex(0.0, s);
  }
  out.col(d.p) = q.col(d.p) * epp + q.col(d.q) * eqp;
  out.col(d.q) = q.col(d.p) * epq + q.col(d.q) * eqq;
  return out;
}

// Golden-section search for the minimum of phi on [-h, h]; phi(0) = f0.
// Returns the best point seen, which is 0 when nothing beats f0.
template <typename Phi>
std::pair<double, double> golden_search(Phi&& phi, double h, double f0, double rel_width) {
  double best_t = 0.0;
  double best_v = f0;
  auto probe = [&](double t) {
    const double v = phi(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
    return v;
  };
  double a = -h;
  double b = h;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = probe(c);
  double fd = probe(d);
  while (b - a > rel_width * h) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = probe(d);
    }
  }
  return {best_t, best_v};
}

CMat reunitarize(const CMat& q) {
  const auto n = q.rows();
  return 0.5 * q * (3.0 * CMat::Identity(n, n) - q.adjoint() * q);
}

bool lexicographic_less(const CMat& a, const CMat& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex x = a.data()[i];
    const Complex y = b.data()[i];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

struct RestartResult {
  CMat q;
  double value = kInf;
  long evaluations = 0;
  long skipped = 0;
  int reseeds = 0;
  bool converged = false;
  Rng rng{0};
};

// Stall test and line-search settings for one descent phase.
struct Phase {
  double tol;
  double bracket;
  double width;
  int max_iters;
};

// Screening runs every restart to a loose tolerance; only endpoints that can
// still compete with the best one are polished to cfg.tol.
constexpr double kScreenTol = 1e-6;
constexpr double kPolishMargin = 1e-2;
constexpr int kScreenIters = 40;
constexpr std::size_t kRandomDivisor = 3;
constexpr std::size_t kHistory = 12;
constexpr int kSurrogateExponent = 4;
constexpr std::size_t kMaxPolished = 2;
constexpr double kDuplicateDistance = 1e-2;

class Descent {
 public:
  Descent(const CMat& a, const WeightedFunctional& f, const SearchConfig& cfg, RestartResult& r)
      : a_(a), f_(f), cfg_(cfg), r_(r), real_(cfg.group == Group::SO) {}

  double eval(const CMat& q) {
    ++r_.evaluations;
    try {
      return eval_functional(a_, q, f_, cfg_.branch_range);
    } catch (const Error&) {
      ++r_.skipped;
      return kInf;
    }
  }

  void start(int index) {
    r_.rng = Rng::stream(cfg_.seed, static_cast<std::uint64_t>(index));
    const Eigen::Index n = a_.rows();
    auto draw = [&] {
      return real_ ? CMat(haar_rotation(r_.rng, n).cast<Complex>()) : haar_unitary(r_.rng, n);
    };
    r_.q = draw();
    r_.value = eval(r_.q);
    for (int attempt = 0; !std::isfinite(r_.value) && attempt < 32; ++attempt) {
      ++r_.reseeds;
      r_.q = draw();
      r_.value = eval(r_.q);
    }
  }

  void run(const Phase& phase) {
    if (!std::isfinite(r_.value)) return;
    const Eigen::Index n = a_.rows();
    std::vector<Direction> dirs = coordinate_directions(cfg_.group, n);
    const std::size_t n_coord = dirs.size();
    const std::size_t n_random = std::max<std::size_t>(1, n_coord / kRandomDivisor);
    std::vector<double> bracket(n_coord + 1, phase.bracket);
    // Recent net displacements, searched again in later sweeps so that
    // progress along curved valleys does not stall (Powell-style).
    std::deque<std::pair<Direction, double>> history;
    CMat& q = r_.q;
    double& value = r_.value;

    r_.converged = false;
    int stalled = 0;
    for (int iter = 0; iter < phase.max_iters; ++iter) {
      const double before = value;
      const CMat q_before = q;
      dirs.resize(n_coord);
      for (std::size_t k = 0; k < n_random; ++k)
        dirs.push_back(general_direction(random_generator(r_.rng, cfg_.group, n)));

      auto search = [&](const Direction& d, double& h) {
        auto phi = [&](double t) { return eval(moved(q, d, t, real_)); };
        const auto [t_star, v_star] = golden_search(phi, h, value, phase.width);
        if (v_star < value) {
          q = moved(q, d, t_star, real_);
          value = v_star;
        }
        h = std::clamp(std::max(3.0 * std::abs(t_star), 0.25 * h), 1e-12, kPi);
      };
      for (std::size_t k = 0; k < dirs.size(); ++k) search(dirs[k], bracket[std::min(k, n_coord)]);
      for (auto& [d, h] : history) search(d, h);

      q = reunitarize(q);
      value = eval(q);

      const CMat step = logm_principal(CMat(q_before.adjoint() * q));
      const double len = skew(step).norm();
      if (len > 1e-13) {
        history.emplace_front(general_direction(CMat(skew(step) * (std::numbers::sqrt2 / len))),
                              std::clamp(2.0 * len / std::numbers::sqrt2, 1e-12, kPi));
        if (history.size() > std::min(n_coord, kHistory)) history.pop_back();
      }

      if (!(before - value > phase.tol * std::abs(before))) {
        if (++stalled >= 3) {
          r_.converged = true;
          return;
        }
      } else {
        stalled = 0;
      }
    }
  }

 private:
  const CMat& a_;
  const WeightedFunctional& f_;
  const SearchConfig& cfg_;
  RestartResult& r_;
  bool real_;
};

std::string branch_policy(const WeightedFunctional& f, int range) {
  if (f.family == Family::Euclidean) return "none (euclidean family)";
  if (range == 0) return "principal logarithm only";
  return "min over primary logarithms with per-eigenvalue shifts |k_j| <= " + std::to_string(range) +
         " (principal branch included)";
}

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::Euclidean ? "euclid" : "log";
}

std::string_view to_string(Part part) {
  switch (part) {
    case Part::Full: return "full";
    case Part::SymOnly: return "sym";
    case Part::SkewOnly: return "skew";
    case Part::SymPlusSkew: return "symskew";
    case Part::DevSym: return "devsym";
    case Part::DevFull: return "devfull";
  }
  return "?";
}

std::string_view to_string(Group group) { return group == Group::SO ? "SO" : "U"; }

std::optional<Family> parse_family(std::string_view name) {
  if (name == "euclid") return Family::Euclidean;
  if (name == "log") return Family::Logarithmic;
  return std::nullopt;
}

std::optional<Part> parse_part(std::string_view name) {
  for (auto p : {Part::Full, Part::SymOnly, Part::SkewOnly, Part::SymPlusSkew, Part::DevSym, Part::DevFull})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

std::optional<Group> parse_group(std::string_view name) {
  if (name == "SO") return Group::SO;
  if (name == "U") return Group::U;
  return std::nullopt;
}

void WeightedFunctional::validate() const {
  if (!(mu >= 0.0) || !(muc >= 0.0) || !std::isfinite(mu) || !std::isfinite(muc))
    throw Error(ErrorKind::InvalidArgument, "weights must be finite and nonnegative");
  if (part == Part::SymPlusSkew && mu == 0.0 && muc == 0.0)
    throw Error(ErrorKind::InvalidArgument, "symskew needs mu > 0 or muc > 0");
  if ((norm.kind == NormKind::KyFan || norm.kind == NormKind::Schatten) && norm.k < 1)
    throw Error(ErrorKind::InvalidArgument, "Ky-Fan order and Schatten exponent must be >= 1");
}

double apply_part(const CMat& y, const WeightedFunctional& f) {
  return apply_part_bounded(y, f, kInf);
}

double eval_functional(const CMat& a, const CMat& q, const WeightedFunctional& f, int branch_range) {
  f.validate();
  require_square(a.rows(), a.cols(), "eval_functional");
  if (q.rows() != a.rows() || q.cols() != a.cols())
    throw Error(ErrorKind::NotSquare, "eval_functional: Q and A differ in size");
  if (branch_range < 0) throw Error(ErrorKind::InvalidArgument, "branch range must be >= 0");
  const CMat m = q.adjoint() * a;
  if (f.family == Family::Euclidean)
    return apply_part(CMat(m - CMat::Identity(m.rows(), m.cols())), f);

  LogEigenbasis eb;
  try {
    eb = log_eigenbasis(m);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotDiagonalizable) throw Error(ErrorKind::BranchDomain, e.what());
    throw;
  }
  if (branch_range == 0 && eb.touches_negative_axis)
    throw Error(ErrorKind::NegativeRealEigenvalue, "eval_functional: principal logarithm undefined");
  return min_over_branches(eb, f, branch_range);
}

double predicted_minimum(const CMat& a, const WeightedFunctional& f) {
  f.validate();
  if (f.family != Family::Logarithmic) return std::numeric_limits<double>::quiet_NaN();
  RVec logs = singular_values(a).array().log();
  if (f.part == Part::SkewOnly) return 0.0;
  if (f.part == Part::DevSym || f.part == Part::DevFull) logs.array() -= logs.mean();
  RVec mags = logs.cwiseAbs();
  std::sort(mags.data(), mags.data() + mags.size(), std::greater<>());
  return f.mu * squared(norm_from_singular_values(mags, f.norm));
}

RotationChart RotationChart::from_generator(Group group, const CMat& w) {
  require_square(w.rows(), w.cols(), "RotationChart");
  if ((w + w.adjoint()).norm() > 1e-12 * tol_scale(w))
    throw Error(ErrorKind::InvalidArgument, "RotationChart: generator is not skew-Hermitian");
  if (group == Group::SO && !is_real(w))
    throw Error(ErrorKind::InvalidArgument, "RotationChart: SO generator must be real");
  RotationChart chart{group, w.rows(), w, CMat()};
  chart.q = moved(CMat::Identity(w.rows(), w.cols()), general_direction(w), 1.0, group == Group::SO);
  return chart;
}

MinimizationReport minimize_over_rotations(const CMat& a, const WeightedFunctional& f,
                                           const SearchConfig& cfg) {
  f.validate();
  require_square(a.rows(), a.cols(), "minimize_over_rotations");
  if (!a.allFinite()) throw Error(ErrorKind::InvalidArgument, "minimize_over_rotations: non-finite entries");
  if (cfg.restarts < 1 || cfg.max_iters < 1)
    throw Error(ErrorKind::InvalidArgument, "restarts and maxIters must be >= 1");
  if (cfg.branch_range < 0) throw Error(ErrorKind::InvalidArgument, "branch range must be >= 0");
  if (cfg.group == Group::SO && !is_real(a))
    throw Error(ErrorKind::InvalidArgument, "SO(n) search needs a real matrix");
  if (!(std::abs(a.partialPivLu().determinant()) > 1e-14))
    throw Error(ErrorKind::Singular, "minimize_over_rotations: A is singular");

  std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
  // The spectral norm is not differentiable where the top singular values
  // meet, which stalls line searches; screening runs on a Schatten-p
  // surrogate and the polish on the true objective.
  WeightedFunctional surrogate = f;
  const bool smoothed = f.norm.kind == NormKind::Spectral;
  if (smoothed) surrogate.norm = Norm::schatten(kSurrogateExponent);

  const Phase screen{std::max(cfg.tol, kScreenTol), 0.5, 5e-2, std::min(cfg.max_iters, kScreenIters)};
  const Phase polish{cfg.tol, 1e-2, 1e-2, cfg.max_iters};
  detail::parallel_for(cfg.restarts, [&](int i) {
    auto& r = results[static_cast<std::size_t>(i)];
    Descent d(a, surrogate, cfg, r);
    d.start(i);
    d.run(screen);
  });
  std::vector<std::size_t> ranked(results.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i] = i;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t x, std::size_t y) { return results[x].value < results[y].value; });
  const double screened = results[ranked.front()].value;
  const double margin = std::max(kPolishMargin * std::abs(screened), 10.0 * cfg.cluster_value_tol);
  std::vector<std::size_t> chosen;
  for (const std::size_t i : ranked) {
    if (chosen.size() >= (smoothed ? 1 : kMaxPolished) || !(results[i].value <= screened + margin)) break;
    const bool duplicate = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t j) {
      return (results[i].q - results[j].q).norm() <= kDuplicateDistance;
    });
    if (!duplicate) chosen.push_back(i);
  }
  detail::parallel_for(static_cast<int>(chosen.size()), [&](int c) {
    auto& r = results[chosen[static_cast<std::size_t>(c)]];
    Descent exact(a, f, cfg, r);
    if (smoothed) r.value = exact.eval(r.q);
    exact.run(polish);
  });
  if (smoothed) {
    // Unpolished endpoints carry surrogate values; report them on the true
    // objective so that every value in the report is comparable.
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end() || !std::isfinite(results[i].value))
        continue;
      results[i].value = Descent(a, f, cfg, results[i]).eval(results[i].q);
    }
  }

  MinimizationReport rep;
  rep.restarts = cfg.restarts;
  rep.branch_policy = branch_policy(f, cfg.branch_range);
  rep.converged = true;
  for (const auto& r : results) {
    rep.evaluations += r.evaluations;
    rep.skipped_probes += r.skipped;
    rep.reseeds += r.reseeds;
    rep.converged = rep.converged && r.converged;
    rep.restart_values.push_back(r.value);
  }

  std::vector<const RestartResult*> order;
  for (const auto& r : results)
    if (std::isfinite(r.value)) order.push_back(&r);
  if (order.empty()) throw Error(ErrorKind::BranchDomain, "every restart left the logarithm domain");
  std::sort(order.begin(), order.end(), [](const RestartResult* x, const RestartResult* y) {
    if (x->value != y->value) return x->value < y->value;
    return lexicographic_less(x->q, y->q);
  });
  rep.best_q = order.front()->q;
  rep.best_value = order.front()->value;
  // Screening endpoints are only located to kScreenTol, so clusters are
  // formed from polished endpoints.
  auto polished = [&](const RestartResult* r) {
    return std::any_of(chosen.begin(), chosen.end(), [&](std::size_t i) { return &results[i] == r; });
  };
  for (const RestartResult* r : order) {
    if (r->value > rep.best_value + cfg.cluster_value_tol) break;
    if (r != order.front() && !polished(r)) continue;
    const bool known = std::any_of(rep.distinct_minimizers.begin(), rep.distinct_minimizers.end(),
                                   [&](const CMat& m) { return (m - r->q).norm() <= cfg.cluster_distance; });
    if (!known) rep.distinct_minimizers.push_back(r->q);
  }

  const auto pd = polar_decompose(a);
  rep.polar_improper = cfg.group == Group::SO && is_real(a) && a.real().determinant() < 0.0;
  rep.value_at_polar = eval_functional(a, pd.up, f, 0);
  rep.predicted_value = rep.polar_improper ? std::numeric_limits<double>::quiet_NaN() : predicted_minimum(a, f);
  rep.gap = rep.best_value - rep.value_at_polar;
  rep.violation = rep.gap < -cfg.tol_violation;
  if (f.family == Family::Logarithmic) {
    try {
      rep.repeated_eigenvalues = log_eigenbasis(CMat(rep.best_q.adjoint() * a)).repeated;
    } catch (const Error&) {
      rep.repeated_eigenvalues = true;
    }
  }
  return rep;
}

MinimizationReport minimize_over_rotations(const RMat& a, const WeightedFunctional& f,
                                           const SearchConfig& cfg) {
  return minimize_over_rotations(CMat(a.cast<Complex>()), f, cfg);
}

ScalarThetaResult minimize_scalar_theta(Complex z, const WeightedFunctional& f, int grid_size) {
  f.validate();
  if (z == 0.0) throw Error(ErrorKind::ZeroArgument, "minimize_scalar_theta: z = 0");
  if (grid_size < 1000) throw Error(ErrorKind::InvalidArgument, "minimize_scalar_theta: grid size < 1000");

  auto part_value = [&](Complex y) {
    switch (f.part) {
      case Part::Full: return f.mu * std::norm(y);
      case Part::SymOnly: return f.mu * squared(y.real());
      case Part::SkewOnly: return f.muc * squared(y.imag());
      case Part::SymPlusSkew: return f.mu * squared(y.real()) + f.muc * squared(y.imag());
      case Part::DevSym:
      case Part::DevFull: return 0.0;
    }
    return kInf;
  };
  auto objective = [&](double theta) {
    const Complex w = std::polar(1.0, -theta) * z;
    if (f.family == Family::Euclidean) return part_value(w - 1.0);
    double best = kInf;
    for (const Complex y : scalar_log_branches(w, 1)) best = std::min(best, part_value(y));
    return best;
  };
  auto wrap = [](double t) {
    t = std::remainder(t, kTwoPi);
    return t <= -kPi ? t + kTwoPi : t;
  };

  const double step = kTwoPi / grid_size;
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) grid[static_cast<std::size_t>(j)] = objective(-kPi + step * (j + 1));
  const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());

  ScalarThetaResult res;
  if (*hi_it - *lo_it <= 1e-12 * std::max(1.0, std::abs(*lo_it))) {
    res.theta_unconstrained = true;
    res.theta = std::arg(z) <= -kPi ? kPi : std::arg(z);
    res.value = objective(res.theta);
    res.minimizers = {res.theta};
    return res;
  }

  std::vector<std::pair<double, double>> candidates;
  for (int j = 0; j < grid_size; ++j) {
    const double v = grid[static_cast<std::size_t>(j)];
    const double prev = grid[static_cast<std::size_t>((j + grid_size - 1) % grid_size)];
    const double next = grid[static_cast<std::size_t>((j + 1) % grid_size)];
    if (!(v <= prev && v <= next)) continue;
    const double centre = -kPi + step * (j + 1);
    auto phi = [&](double t) { return objective(centre + t); };
    const auto [t, value] = golden_search(phi, step, v, 1e-12 / step);
    candidates.emplace_back(wrap(centre + t), value);
  }
  double best = kInf;
  for (const auto& c : candidates) best = std::min(best, c.second);
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [theta, value] : candidates) {
    if (value > best + 1e-9 * std::max(1.0, best)) continue;
    const bool known = std::any_of(res.minimizers.begin(), res.minimizers.end(), [&](double m) {
      return std::abs(wrap(m - theta)) < 1e-6;
    });
    if (known) continue;
    res.minimizers.push_back(theta);
    if (res.minimizers.size() == 1 || value < res.value) {
      res.theta = theta;
      res.value = value;
    }
  }
  return res;
}

MinimizationReport minimize_dev3(const RMat& a, Part part, const SearchConfig& cfg) {
  if (a.rows() != 3 || a.cols() != 3 || !a.allFinite() || !(a.determinant() > 0.0))
    throw Error(ErrorKind::NotRealPositiveDet, "minimize_dev3: A must lie in GL+(3)");
  if (part != Part::DevFull && part != Part::DevSym)
    throw Error(ErrorKind::InvalidArgument, "minimize_dev3: part must be devfull or devsym");
  WeightedFunctional f;
  f.family = Family::Logarithmic;
  f.part = part;
  SearchConfig so = cfg;
  so.group = Group::SO;
  return minimize_over_rotations(a, f, so);
}

double rotation_angle(const RMat& q) {
  if (q.rows() != 3 || q.cols() != 3) throw Error(ErrorKind::NotSquare, "rotation_angle: 3x3 expected");
  return std::acos(std::clamp(0.5 * (q.trace() - 1.0), -1.0, 1.0));
}

}  // namespace logpolar
