#include "logpolar/cli.hpp"

#include <cmath>
#include <ostream>

#include "CLI11.hpp"
#include "logpolar/geodesy.hpp"
#include "logpolar/io.hpp"
#include "logpolar/matfun.hpp"
#include "logpolar/minimize.hpp"
#include "logpolar/polar.hpp"
#include "logpolar/strainlab.hpp"
#include "logpolar/verify.hpp"

namespace logpolar::cli {
namespace {

using io::Json;

struct RunConfig {
  std::uint64_t seed = 42;
  int trials = 0;
  int restarts = 32;
  std::string norm = "fro";
  std::string group = "SO";
  double mu = 1.0;
  double muc = 0.0;
  std::string family = "log";
  std::string part = "full";
  int branch_range = 1;
  double tol = 1e-8;
  int dim = 0;
  double m = 0.0;
  std::string metric;
  std::string out = "json";
  bool restarts_set = false;
};

Norm norm_of(const RunConfig& rc) { return rc.norm == "spec" ? Norm::spectral() : Norm::frobenius(); }

Eigen::Index literal_dim(const RunConfig& rc) { return rc.dim > 0 ? rc.dim : 3; }

RMat require_real(const CMat& m, const char* who) {
  if (!is_real(m)) throw Error(ErrorKind::InvalidArgument, std::string(who) + ": real input expected");
  return m.real();
}

Json config_json(const RunConfig& rc) {
  Json j;
  j["seed"] = rc.seed;
  j["restarts"] = rc.restarts;
  j["norm"] = rc.norm;
  j["group"] = rc.group;
  j["mu"] = rc.mu;
  j["muc"] = rc.muc;
  j["family"] = rc.family;
  j["part"] = rc.part;
  j["branchRange"] = rc.branch_range;
  j["tol"] = rc.tol;
  return j;
}

void emit(const Json& j, const RunConfig& rc, std::ostream& out) {
  if (rc.out == "csv")
    out << io::dump_csv(j);
  else
    out << io::dump_json(j) << "\n";
}

int cmd_polar(const RunConfig& rc, const std::string& file, std::ostream& out) {
  const CMat a = io::read_matrix(file, literal_dim(rc));
  const auto p = polar_decompose(a);
  Json j;
  j["command"] = "polar";
  j["up"] = io::matrix_json(p.up);
  j["h"] = io::matrix_json(p.h);
  j["improper"] = p.improper;
  j["residuals"] = {{"unitary", unitary_residual(p.up)},
                    {"hermitian", hermitian_residual(p.h)},
                    {"reconstruction", (a - p.up * p.h).norm() / a.norm()}};
  emit(j, rc, out);
  return kOk;
}

int cmd_expm(const RunConfig& rc, const std::string& file, std::ostream& out) {
  const CMat a = io::read_matrix(file, literal_dim(rc));
  Json j;
  j["command"] = "expm";
  j["result"] = io::matrix_json(CMat(expm(a)));
  emit(j, rc, out);
  return kOk;
}

int cmd_logm(const RunConfig& rc, const std::string& file, std::ostream& out) {
  const CMat a = io::read_matrix(file, literal_dim(rc));
  CMat l = is_real(a) ? CMat(logm_principal(RMat(a.real())).cast<Complex>()) : logm_principal(a);
  Json j;
  j["command"] = "logm";
  j["branch"] = "principal";
  j["result"] = io::matrix_json(l);
  emit(j, rc, out);
  return kOk;
}

int cmd_dist(const RunConfig& rc, const std::string& metric, const std::string& fa, const std::string& fb,
             std::ostream& out) {
  const auto kind = parse_distance_kind(metric);
  if (!kind) throw Error(ErrorKind::InvalidArgument, "unknown metric '" + metric + "'");
  const CMat a = io::read_matrix(fa, literal_dim(rc));
  const bool unary = *kind == DistanceKind::EuclidToRotations || *kind == DistanceKind::GeodesicStrain;
  if (!unary && fb.empty()) throw Error(ErrorKind::InvalidArgument, "metric '" + metric + "' needs two matrices");
  const CMat b = unary ? CMat() : io::read_matrix(fb, literal_dim(rc));
  double value = 0.0;
  switch (*kind) {
    case DistanceKind::EuclidToRotations: value = dist_euclid_to_rotations(require_real(a, "dist")); break;
    case DistanceKind::GeodesicStrain: value = geodesic_strain_distance(require_real(a, "dist")); break;
    case DistanceKind::GeoPosDef: value = dist_geo_posdef(a, b); break;
    case DistanceKind::LogEuclidPosDef: value = dist_logeuclid_posdef(a, b); break;
    case DistanceKind::GeoSpecialOrthogonal:
      value = dist_geo_so(require_real(a, "dist"), require_real(b, "dist"));
      break;
    case DistanceKind::OneParamPseudo: value = pseudo_dist_one_param(a, b); break;
    case DistanceKind::ScalarDSharp:
      if (a.rows() != 1 || b.rows() != 1) throw Error(ErrorKind::InvalidArgument, "dsharp takes 1x1 matrices");
      value = scalar_dsharp_dist(a(0, 0), b(0, 0));
      break;
  }
  Json j;
  j["command"] = "dist";
  j["metric"] = std::string(to_string(*kind));
  j["pseudo"] = is_pseudo(*kind);
  j["value"] = value;
  emit(j, rc, out);
  return kOk;
}

int cmd_minimize(const RunConfig& rc, const std::string& file, std::ostream& out) {
  const CMat a = io::read_matrix(file, literal_dim(rc));
  WeightedFunctional f;
  f.mu = rc.mu;
  f.muc = rc.muc;
  f.norm = norm_of(rc);
  f.family = *parse_family(rc.family);
  f.part = *parse_part(rc.part);
  f.validate();
  SearchConfig cfg;
  cfg.seed = rc.seed;
  cfg.restarts = rc.restarts;
  cfg.branch_range = rc.branch_range;
  cfg.group = *parse_group(rc.group);
  cfg.tol_violation = rc.tol;
  if (cfg.group == Group::SO && !is_real(a))
    throw Error(ErrorKind::InvalidArgument, "group SO needs a real matrix; use --group U");
  const MinimizationReport r = minimize_over_rotations(a, f, cfg);

  Json j;
  j["command"] = "minimize";
  j["config"] = config_json(rc);
  j["bestValue"] = r.best_value;
  j["valueAtPolar"] = r.value_at_polar;
  j["predictedValue"] = r.predicted_value;
  j["gap"] = r.gap;
  j["violation"] = r.violation;
  j["nonclassical"] = r.violation;
  j["bestQ"] = io::matrix_json(r.best_q);
  if (cfg.group == Group::SO && a.rows() == 3) {
    const double angle = rotation_angle(RMat(r.best_q.real()));
    j["rotationAngle"] = angle;
    j["cosRotationAngle"] = std::cos(angle);
  } else if (cfg.group == Group::SO && a.rows() == 2) {
    j["rotationAngle"] = std::atan2(r.best_q(0, 1).real(), r.best_q(0, 0).real());
  }
  j["converged"] = r.converged;
  j["restarts"] = r.restarts;
  j["evaluations"] = r.evaluations;
  j["skippedProbes"] = r.skipped_probes;
  j["reseeds"] = r.reseeds;
  j["polarImproper"] = r.polar_improper;
  j["repeatedEigenvalues"] = r.repeated_eigenvalues;
  j["branchPolicy"] = r.branch_policy;
  j["restartValues"] = r.restart_values;
  Json mins = Json::array();
  for (const CMat& q : r.distinct_minimizers) mins.push_back(io::matrix_json(q));
  j["distinctMinimizers"] = std::move(mins);
  emit(j, rc, out);
  return r.violation ? kViolation : kOk;
}

int cmd_strain(const RunConfig& rc, const std::string& file, std::ostream& out) {
  const RMat f = require_real(io::read_matrix(file, literal_dim(rc)), "strain");
  const StrainMeasureId id{rc.m};
  Json j;
  j["command"] = "strain";
  j["m"] = rc.m;
  j["strain"] = io::matrix_json(hill_strain(f, id));
  j["tensionCompressionAsymmetry"] = tension_compression_asymmetry(f, id);
  j["geodesicDistanceToRotations"] = geodesic_strain_distance(f);
  emit(j, rc, out);
  return kOk;
}

int cmd_procrustes(const RunConfig& rc, const std::string& fa, const std::string& fb, std::ostream& out) {
  const CMat a = io::read_matrix(fa, literal_dim(rc));
  const CMat b = io::read_matrix(fb, literal_dim(rc));
  const std::string metric = rc.metric.empty() ? "euclid" : rc.metric;
  Json j;
  j["command"] = "procrustes";
  j["metric"] = metric;
  if (metric == "geodesic") {
    const RMat ra = require_real(a, "procrustes"), rb = require_real(b, "procrustes");
    const RMat q = procrustes_geodesic(ra, rb);
    j["q"] = io::matrix_json(q);
    j["geodesicObjective"] = procrustes_geodesic_objective(ra, rb, q);
    j["euclidObjective"] = procrustes_euclid_objective(a, b, q.cast<Complex>());
  } else if (metric == "euclid") {
    const bool real = is_real(a) && is_real(b) && rc.group != "U";
    const CMat q = real ? CMat(procrustes_euclid(RMat(a.real()), RMat(b.real())).cast<Complex>())
                        : procrustes_euclid(a, b, ProcrustesGroup::U);
    j["group"] = real ? "O" : "U";
    j["q"] = io::matrix_json(q);
    j["euclidObjective"] = procrustes_euclid_objective(a, b, q);
  } else {
    throw Error(ErrorKind::InvalidArgument, "procrustes metric must be euclid or geodesic");
  }
  emit(j, rc, out);
  return kOk;
}

Json witness_json(const Witness& w) {
  Json j;
  j["label"] = w.label;
  j["seed"] = w.seed;
  j["trial"] = w.trial;
  Json mats = Json::object();
  for (const auto& [name, m] : w.matrices) mats[name] = io::matrix_json(m);
  j["matrices"] = std::move(mats);
  Json vals = Json::object();
  for (const auto& [name, v] : w.values) vals[name] = v;
  j["values"] = std::move(vals);
  return j;
}

int cmd_verify(const RunConfig& rc, const std::string& suite, std::ostream& out) {
  SuiteOptions opts;
  opts.trials = rc.trials;
  opts.seed = rc.seed;
  opts.restarts = rc.restarts_set ? rc.restarts : 0;
  if (rc.dim > 0) opts.dim = rc.dim;
  const SuiteReport r = run_suite(suite, opts);
  Json j;
  j["command"] = "verify";
  j["suite"] = r.name;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["worstSlack"] = r.worst_slack;
  j["informational"] = r.informational;
  Json metrics = Json::object();
  for (const auto& [name, v] : r.metrics) metrics[name] = v;
  j["metrics"] = std::move(metrics);
  j["findings"] = r.findings;
  Json ws = Json::array();
  for (const Witness& w : r.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = std::move(ws);
  emit(j, rc, out);
  return (r.violations == 0 || r.informational) ? kOk : kViolation;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownSuite:
    case ErrorKind::InvalidArgument: return kUsage;
    default: return kDomain;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Polar factors, matrix logarithms and their minimization properties", "logpolar"};
  app.require_subcommand(1);
  app.fallthrough();

  const std::vector<std::string> norms{"fro", "spec"}, groups{"SO", "U"}, families{"euclid", "log"},
      parts{"full", "sym", "skew", "symskew", "devsym", "devfull"}, outs{"json", "csv"};
  app.add_option("--norm", rc.norm, "fro or spec")->check(CLI::IsMember(norms));
  app.add_option("--group", rc.group, "SO or U")->check(CLI::IsMember(groups));
  app.add_option("--family", rc.family, "euclid or log")->check(CLI::IsMember(families));
  app.add_option("--part", rc.part, "full, sym, skew, symskew, devsym or devfull")->check(CLI::IsMember(parts));
  app.add_option("--mu", rc.mu, "weight of the symmetric part")->check(CLI::NonNegativeNumber);
  app.add_option("--muc", rc.muc, "weight of the skew part")->check(CLI::NonNegativeNumber);
  app.add_option("--branch-range", rc.branch_range, "largest |k| in enumerated logarithms")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--trials", rc.trials, "trials per configuration (0: suite default)")->check(CLI::NonNegativeNumber);
  CLI::Option* restarts_opt =
      app.add_option("--restarts", rc.restarts, "multi-start restarts")->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "random seed");
  app.add_option("--out", rc.out, "json or csv")->check(CLI::IsMember(outs));
  app.add_option("--tol", rc.tol, "violation tolerance for minimize")->check(CLI::NonNegativeNumber);
  app.add_option("--dim", rc.dim, "size of the literal I and of the conjecture probe")->check(CLI::PositiveNumber);
  app.add_option("--m", rc.m, "Hill strain exponent (0 = Hencky)");
  app.add_option("--metric", rc.metric, "procrustes metric: euclid or geodesic");

  std::string file, file_b, name;
  auto* polar = app.add_subcommand("polar", "polar decomposition A = Up H");
  polar->add_option("matrix", file, "matrix file, '-', I, eye:N or diag:a,b,...")->required();
  auto* expm_cmd = app.add_subcommand("expm", "matrix exponential");
  expm_cmd->add_option("matrix", file)->required();
  auto* logm_cmd = app.add_subcommand("logm", "principal matrix logarithm");
  logm_cmd->add_option("matrix", file)->required();
  auto* dist = app.add_subcommand("dist", "distances: euclid-so, geo-pd, logeuclid-pd, geo-so, pseudo, dsharp, "
                                          "geodesic-strain");
  dist->add_option("metric", name)->required();
  dist->add_option("a", file)->required();
  dist->add_option("b", file_b);
  auto* minimize = app.add_subcommand("minimize", "minimize a weighted functional over SO(n) or U(n)");
  minimize->add_option("matrix", file)->required();
  auto* strain = app.add_subcommand("strain", "Hill strain measure");
  strain->add_option("matrix", file)->required();
  auto* procrustes = app.add_subcommand("procrustes", "Euclidean or geodesic Procrustes");
  procrustes->add_option("a", file)->required();
  procrustes->add_option("b", file_b)->required();
  auto* verify = app.add_subcommand("verify", "randomized verification suites");
  verify->add_option("suite", name)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"logpolar"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  rc.restarts_set = restarts_opt->count() > 0;

  try {
    if (polar->parsed()) return cmd_polar(rc, file, out);
    if (expm_cmd->parsed()) return cmd_expm(rc, file, out);
    if (logm_cmd->parsed()) return cmd_logm(rc, file, out);
    if (dist->parsed()) return cmd_dist(rc, name, file, file_b, out);
    if (minimize->parsed()) return cmd_minimize(rc, file, out);
    if (strain->parsed()) return cmd_strain(rc, file, out);
    if (procrustes->parsed()) return cmd_procrustes(rc, file, file_b, out);
    if (verify->parsed()) return cmd_verify(rc, name, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  err << app.help();
  return kUsage;
}

}  // namespace logpolar::cli
