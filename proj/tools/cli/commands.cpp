#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "charmat/charmat.hpp"
#include "cli/files.hpp"
#include "cli/log.hpp"
#include "cli/report.hpp"

namespace charmat::cli {

namespace {

class FlagError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

struct GlobalOptions {
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";

  double tolerance(double fallback) const { return tol.value_or(fallback); }
};

// Extra files a command emits next to its report, by file name.
using Artifacts = std::map<std::string, std::string>;

std::string indexed_label(const char* prefix, int k) { return prefix + std::to_string(k); }

struct CharmatArgs {
  std::string input;
  int random = 0;
  bool oracle = false;
};

Report cmd_charmat(const CharmatArgs& a, const GlobalOptions& g, Artifacts& files) {
  Report report;
  report.command = "charmat";

  Matrix t;
  if (!a.input.empty() && a.random > 0) throw FlagError("charmat: give an input file or --random, not both");
  if (!a.input.empty()) {
    const std::string text = read_text(a.input);
    t = parse_matrix_file(text, a.input);
    report.inputs["source"] = a.input;
    report.inputs["digest"] = digest(text);
  } else if (a.random > 0) {
    Rng rng(g.seed);
    t = random_square(rng, a.random);
    report.inputs["source"] = "random";
    report.inputs["n"] = a.random;
    report.inputs["seed"] = g.seed;
    report.inputs["digest"] = digest(format_matrix_file(t));
  } else {
    throw FlagError("charmat: an input file or --random N is required");
  }
  require_square(t, "charmat");
  log(LogLevel::info, "charmat: dimension " + std::to_string(t.rows()));

  const double tol = g.tolerance(kIdentityTolerance);
  const CharacteristicMatrix p = char_matrix(t);
  const IdentityReport identities = verify_identities(t, p, tol);
  Json skipped = Json::object();
  for (const IdentityCheck& c : identities.checks) {
    const std::string label(to_string(c.kind));
    if (!c.applicable) {
      skipped[label] = c.note;
    } else if (c.lower_bound) {
      report.margin(label, c.value, c.threshold);
    } else {
      report.residual(label, c.value, c.threshold);
    }
  }
  if (a.oracle) {
    report.residual("oracle_equivalence", blockwise_distance(p, char_matrix_oracle(t)), tol);
  }
  report.details["dim"] = t.rows();
  report.details["skipped"] = std::move(skipped);

  files["p11.json"] = format_matrix_file(p.p11);
  files["p12.json"] = format_matrix_file(p.p12);
  files["p21.json"] = format_matrix_file(p.p21);
  files["p22.json"] = format_matrix_file(p.p22);
  return report;
}

Polynomial parse_polynomial(const std::string& spec) {
  Polynomial p;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw FlagError("--poly: \"" + item + "\" is not a number");
    }
    p.emplace_back(c, 0.0);
  }
  if (p.empty()) throw FlagError("--poly: no coefficients");
  return p;
}

struct VerifyArgs {
  std::string input;
  std::string poly = "0,-2,0,1";
};

Report cmd_verify(const VerifyArgs& a, const GlobalOptions& g, Artifacts&) {
  Report report;
  report.command = "verify";
  const Polynomial poly = parse_polynomial(a.poly);
  const std::string text = read_text(a.input);
  const OperatorFamily family = parse_family_file(text, a.input);
  report.inputs["source"] = a.input;
  report.inputs["digest"] = digest(text);
  log(LogLevel::info, "verify: " + std::to_string(family.size()) + " fibers of dimension " +
                          std::to_string(family.fiber_dim()));

  const FiberwiseCharacteristic fw = char_matrix_fiberwise(family);
  report.residual("fiberwise_characteristic", fw.residual, g.tolerance(kIdentityTolerance));

  const DecompositionReport suite =
      decomposition_suite(family, poly, g.tolerance(kDecompositionTolerance));
  Json skipped = Json::object();
  for (const DecompositionItem& item : suite.identities) {
    if (item.applicable) {
      report.residual("decomposition_" + item.name, item.residual, item.tolerance);
    } else {
      skipped[item.name] = item.note;
    }
  }
  Json properties = Json::object();
  for (const PropertyEquivalence& prop : suite.properties) {
    properties[prop.name] = {{"assembled", prop.assembled},
                             {"all_fibers", prop.all_fibers},
                             {"applicable", prop.applicable}};
    report.check("property_" + prop.name, prop.consistent());
  }

  const double norm = family_norm(family);
  const double assembled_norm = spectral_norm(direct_integral(family).assembled());
  report.residual("family_norm", std::abs(norm - assembled_norm) / std::max(1.0, assembled_norm),
                  g.tolerance(kIdentityTolerance));

  report.details["nodes"] = family.size();
  report.details["fiber_dim"] = family.fiber_dim();
  report.details["family_norm"] = norm;
  report.details["assembled_norm"] = assembled_norm;
  report.details["properties"] = std::move(properties);
  report.details["skipped"] = std::move(skipped);
  return report;
}

struct DirichletArgs {
  int n = 2000;
  int k = 5;
};

Report cmd_example_dirichlet(const DirichletArgs& a, const GlobalOptions& g, Artifacts& files) {
  if (a.n < 100) throw FlagError("example-dirichlet: --n must be at least 100");
  if (a.k < 1 || a.k > a.n / 10) throw FlagError("example-dirichlet: --k must lie in [1, n/10]");
  Report report;
  report.command = "example-dirichlet";
  report.inputs["n"] = a.n;
  report.inputs["k"] = a.k;
  report.inputs["digest"] = digest("example-dirichlet:" + std::to_string(a.n) + ":" + std::to_string(a.k));

  const double pi = std::numbers::pi;
  const auto interior = GridDiscretization::interior(a.n);
  const auto periodic = GridDiscretization::periodic(a.n);
  log(LogLevel::info, "example-dirichlet: dirichlet spectrum");
  const RealVector dir = eigvals_hermitian(laplacian(interior, BoundaryCondition::dirichlet));
  log(LogLevel::info, "example-dirichlet: periodic spectrum");
  const RealVector per = eigvals_hermitian(laplacian(periodic, BoundaryCondition::periodic));

  // Kernel: eigenvalues below a rounding threshold relative to the spectral radius.
  const double radius = per.cwiseAbs().maxCoeff();
  const auto kernel = std::count_if(per.begin(), per.end(),
                                    [&](double x) { return std::abs(x) <= 1e-10 * radius; });
  report.check("periodic_kernel_dimension_is_1", kernel == 1);

  std::string csv =
      "index,dirichlet,dirichlet_target,dirichlet_rel_error,periodic,periodic_target,periodic_error\n";
  Json dir_json = Json::array();
  Json per_json = Json::array();
  for (int j = 1; j <= a.k; ++j) {
    const double d = dir[j - 1];
    const double d_target = std::pow(j * pi, 2);
    const double d_err = std::abs(d - d_target) / d_target;
    report.residual(indexed_label("dirichlet_rel_error_", j), d_err, g.tolerance(j == 1 ? 5e-3 : 1e-2));

    // Periodic levels 0, 4pi^2, 4pi^2, 16pi^2, 16pi^2, ...; index j-1 counts from 0.
    const double p = per[j - 1];
    const double half = std::ceil((j - 1) / 2.0);
    const double p_target = 4.0 * pi * pi * half * half;
    double p_err = std::abs(p - p_target);
    if (p_target > 0.0) {
      p_err /= p_target;
      report.residual(indexed_label("periodic_rel_error_", j), p_err, g.tolerance(1e-2));
    }
    dir_json.push_back({{"value", d}, {"target", d_target}, {"rel_error", d_err}});
    per_json.push_back({{"value", p}, {"target", p_target}, {"error", p_err}});
    csv += std::to_string(j) + "," + format_double(d) + "," + format_double(d_target) + "," +
           format_double(d_err) + "," + format_double(p) + "," + format_double(p_target) + "," +
           format_double(p_err) + "\n";
  }

  log(LogLevel::info, "example-dirichlet: separation witness");
  const SeparationWitness w = separation_witness(a.n);
  report.residual("valP_deviation", std::abs(w.periodic - 1.0), g.tolerance(1e-8));
  report.check("valD_in_range", w.dirichlet >= 0.070 && w.dirichlet <= 0.081);
  report.margin("separation_gap", w.gap(), 0.8);

  const double mismatch = boundary_mismatch(deficiency_vector(periodic), periodic);
  const double mismatch_target =
      (1.0 - std::exp(-1.0)) / std::sqrt((1.0 - std::exp(-2.0)) / 2.0);
  report.residual("boundary_mismatch_deviation", std::abs(mismatch - mismatch_target),
                  g.tolerance(1e-3));

  report.details["dirichlet"] = std::move(dir_json);
  report.details["periodic"] = std::move(per_json);
  report.details["periodic_kernel_dimension"] = kernel;
  report.details["valD"] = w.dirichlet;
  report.details["valP"] = w.periodic;
  report.details["gap"] = w.gap();
  report.details["boundary_mismatch"] = mismatch;
  report.details["boundary_mismatch_target"] = mismatch_target;
  files["eigenvalues.csv"] = csv;
  return report;
}

struct SelfAdjointArgs {
  std::string input;
  std::string check;
  double lambda = 0.0;
  double z_re = 0.0;
  double z_im = 1.0;
  double s = 1.0;
  double epsilon = 1e-4;
  double delta = 1e-2;
  double smax = 20.0;
  int steps = kDefaultQuadratureSteps;
  int f = -1;
  int g = -1;
};

Vector pick_vector(int index, Index n, Rng& rng, const char* flag) {
  if (index < 0) return random_unit_vector(rng, n);
  if (index >= n) throw FlagError(std::string(flag) + ": basis index out of range");
  Vector v = Vector::Zero(n);
  v[index] = 1.0;
  return v;
}

Report cmd_selfadjoint(const SelfAdjointArgs& a, const GlobalOptions& g, Artifacts& files) {
  Report report;
  report.command = "selfadjoint " + a.check;
  const std::string text = read_text(a.input);
  const Matrix raw = parse_matrix_file(text, a.input);
  require_square(raw, "selfadjoint");
  const Matrix t = symmetrized(raw);
  const Index n = t.rows();
  report.inputs["source"] = a.input;
  report.inputs["digest"] = digest(text);

  Rng rng(g.seed);
  const Vector f = pick_vector(a.f, n, rng, "--f");
  const Vector gv = pick_vector(a.g, n, rng, "--g");
  const Complex z(a.z_re, a.z_im);
  Json params = Json::object();

  if (a.check == "resolvent") {
    const Matrix r = resolvent(t, z);
    const Matrix shifted = t - z * identity(n);
    const double scale = std::max(1.0, shifted.norm() * r.norm());
    report.residual("resolvent_identity", (shifted * r - identity(n)).norm() / scale,
                    g.tolerance(kIdentityTolerance));
    report.residual("resolvent_factorization", resolvent_factorization_check(t).max(),
                    g.tolerance(kIdentityTolerance));
    params = {{"z", {a.z_re, a.z_im}}};
    files["resolvent.json"] = format_matrix_file(r);
  } else if (a.check == "projection") {
    const Matrix e = spectral_projection(t, a.lambda);
    const double tol = g.tolerance(kIdentityTolerance);
    report.residual("projection_idempotent", (e * e - e).norm(), tol);
    report.residual("projection_hermitian", (e - e.adjoint()).norm(), tol);
    report.residual("projection_commutes", (t * e - e * t).norm() / std::max(1.0, t.norm()), tol);
    params = {{"lambda", a.lambda}};
    report.details["rank"] = std::lround(e.trace().real());
    report.details["projection"] = matrix_to_json(e);
    files["projection.json"] = format_matrix_file(e);
  } else if (a.check == "group") {
    const Matrix u = unitary_group(t, a.s);
    const double tol = g.tolerance(kIdentityTolerance);
    report.residual("group_unitary", (u.adjoint() * u - identity(n)).norm(), tol);
    report.residual("spectral_transform", spectral_transform_check(t, a.s, f, gv), tol);
    params = {{"s", a.s}};
    files["group.json"] = format_matrix_file(u);
  } else if (a.check == "transform") {
    report.residual("spectral_transform", spectral_transform_check(t, a.s, f, gv),
                    g.tolerance(kIdentityTolerance));
    params = {{"s", a.s}};
  } else if (a.check == "stone") {
    report.residual("stone_formula",
                    stone_formula_check(t, a.lambda, f, gv, a.epsilon, a.delta, a.steps),
                    g.tolerance(1e-3));
    params = {{"lambda", a.lambda}, {"epsilon", a.epsilon}, {"delta", a.delta}, {"steps", a.steps}};
  } else {
    report.residual("fourier_resolvent", fourier_resolvent_check(t, z, f, gv, a.smax, a.steps),
                    g.tolerance(1e-4));
    params = {{"z", {a.z_re, a.z_im}}, {"smax", a.smax}, {"steps", a.steps}};
  }
  report.details["dim"] = n;
  report.details["parameters"] = std::move(params);
  report.details["f"] = a.f < 0 ? Json("random") : Json(a.f);
  report.details["g"] = a.g < 0 ? Json("random") : Json(a.g);
  return report;
}

void emit(const Report& report, const Artifacts& files, const GlobalOptions& g, std::ostream& out) {
  const bool csv = g.format == "csv";
  const std::string text = csv ? report.to_csv() : to_text(report.to_json());
  out << text;
  if (g.out.empty()) return;
  const std::filesystem::path dir(g.out);
  for (const auto& [name, content] : files) {
    write_text(dir / name, content);
    log(LogLevel::debug, "wrote " + (dir / name).string());
  }
  write_text(dir / (csv ? "report.csv" : "report.json"), text);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic matrices of graph operators and related checks", "charmat"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "Override every tolerance of the command")
                      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for random instances and vectors");
  app.add_option("--out", g.out, "Directory for the report and emitted files");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  CharmatArgs ca;
  auto* charmat_cmd = app.add_subcommand("charmat", "Characteristic matrix of a MatrixFile");
  charmat_cmd->add_option("input", ca.input, "MatrixFile path");
  charmat_cmd->add_option("--random", ca.random, "Use a random N x N matrix")
      ->check(CLI::PositiveNumber);
  charmat_cmd->add_flag("--oracle", ca.oracle, "Compare against the Gram-Schmidt oracle");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Direct-integral checks on a FamilyFile");
  verify_cmd->add_option("input", va.input, "FamilyFile path")->required();
  verify_cmd->add_option("--poly", va.poly, "Ascending real coefficients, comma separated");

  DirichletArgs da;
  auto* dirichlet_cmd =
      app.add_subcommand("example-dirichlet", "Dirichlet versus periodic Laplacian on [0, 1]");
  dirichlet_cmd->add_option("--n", da.n, "Grid points (>= 100)");
  dirichlet_cmd->add_option("--k", da.k, "Eigenvalues to report (<= n/10)");

  SelfAdjointArgs sa;
  auto* sa_cmd = app.add_subcommand("selfadjoint", "Functional calculus checks on a Hermitian MatrixFile");
  sa_cmd->add_option("input", sa.input, "MatrixFile path")->required();
  sa_cmd->add_option("check", sa.check, "resolvent|projection|group|stone|fourier|transform")
      ->required()
      ->check(CLI::IsMember({"resolvent", "projection", "group", "stone", "fourier", "transform"}));
  sa_cmd->add_option("--lambda", sa.lambda, "Spectral cut for projection and stone")->capture_default_str();
  sa_cmd->add_option("--z-re", sa.z_re, "Real part of the resolvent point")->capture_default_str();
  sa_cmd->add_option("--z-im", sa.z_im, "Imaginary part of the resolvent point")->capture_default_str();
  sa_cmd->add_option("--s", sa.s, "Group parameter")->capture_default_str();
  sa_cmd->add_option("--epsilon", sa.epsilon, "Distance of the Stone contour from the real axis")->capture_default_str();
  sa_cmd->add_option("--delta", sa.delta, "Right offset of the Stone interval")->capture_default_str();
  sa_cmd->add_option("--smax", sa.smax, "Truncation of the Fourier integral")->capture_default_str();
  sa_cmd->add_option("--steps", sa.steps, "Trapezoid steps for the Fourier integral")->capture_default_str();
  sa_cmd->add_option("--f", sa.f, "Basis index for f (random unit vector if omitted)");
  sa_cmd->add_option("--g", sa.g, "Basis index for g (random unit vector if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInvariantViolation;
  }
  if (tol_opt->count() > 0) g.tol = tol;

  const auto start = std::chrono::steady_clock::now();
  try {
    Artifacts files;
    Report report;
    if (charmat_cmd->parsed()) {
      report = cmd_charmat(ca, g, files);
    } else if (verify_cmd->parsed()) {
      report = cmd_verify(va, g, files);
    } else if (dirichlet_cmd->parsed()) {
      report = cmd_example_dirichlet(da, g, files);
    } else {
      report = cmd_selfadjoint(sa, g, files);
    }
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(report, files, g, out);
    return report.pass() ? kExitPass : kExitResidualFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariantViolation;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace charmat::cli
