// Command-line front end. Exit codes: 0 success, 1 a verification failed,
// 2 bad usage or unreadable input.

#include "grothnorm/grothnorm.hpp"
#include "grothnorm/report_json.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace gn = grothnorm;
using gn::json;

namespace {

struct Globals {
  std::uint64_t seed = gn::OptConfig{}.seed;
  int restarts = gn::OptConfig{}.restarts;
  bool json_out = false;
  double tol = gn::OptConfig{}.tol_grad;

  gn::OptConfig config() const {
    gn::OptConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.tol_grad = tol;
    return c;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fmt(gn::Complex z, gn::Field f, int digits = 6) {
  if (f == gn::Field::Real) return fmt(z.real(), digits);
  return fmt(z.real(), digits) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag()), digits) + "i";
}

double round15(double v) { return std::stod(fmt(v, 15)); }

gn::SymMatrix load_sym(const std::string& path) {
  gn::AnyMatrix m = gn::read_matrix(path);
  if (auto* s = std::get_if<gn::SymMatrix>(&m)) return *s;
  throw UsageError(path + ": a symmetric (kind: sym) matrix is required");
}

gn::RectMatrix load_rect(const std::string& path) {
  gn::AnyMatrix m = gn::read_matrix(path);
  if (auto* r = std::get_if<gn::RectMatrix>(&m)) return *r;
  return gn::as_rect(std::get<gn::SymMatrix>(m));
}

gn::SymMatrix as_field(const gn::SymMatrix& a, gn::Field f) {
  if (a.field() == f) return a;
  if (f == gn::Field::Complex) return gn::SymMatrix::complex(a.entries());
  if (!a.is_real_valued()) throw UsageError("--field real given for a matrix with complex entries");
  return gn::SymMatrix::real(a.real_entries());
}

gn::RectMatrix as_field(const gn::RectMatrix& b, gn::Field f) {
  if (b.field() == f) return b;
  if (f == gn::Field::Complex) return gn::RectMatrix::complex(b.entries());
  if (b.entries().imag().cwiseAbs().maxCoeff() > 0.0)
    throw UsageError("--field real given for a matrix with complex entries");
  return gn::RectMatrix::real(b.entries().real());
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json_out) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

int cmd_compute(const Globals& g, const std::string& norm, int d, const std::string& field_name,
                const std::string& path) {
  const gn::OptConfig cfg = g.config();
  gn::AnyMatrix any = gn::read_matrix(path);
  const gn::Field field = field_name.empty() ? std::visit([](auto& m) { return m.field(); }, any)
                                              : gn::field_from_string(field_name);
  gn::NormEstimate est;
  if (norm == "G") {
    gn::RectMatrix b = std::holds_alternative<gn::RectMatrix>(any) ? std::get<gn::RectMatrix>(any)
                                                                   : gn::as_rect(std::get<gn::SymMatrix>(any));
    b = as_field(b, field);
    est = d > 0 ? gn::G_d_rect(b, d, cfg) : gn::G_full(b, cfg);
  } else {
    if (!std::holds_alternative<gn::SymMatrix>(any)) throw UsageError(norm + " needs a symmetric matrix");
    const gn::SymMatrix a = as_field(std::get<gn::SymMatrix>(any), field);
    if (norm == "gamma") {
      est = d > 0 ? gn::gamma_d(a, d, cfg) : gn::gamma_full(a, cfg);
    } else if (norm == "Gamma") {
      est = d > 0 ? gn::Gamma_d(a, d, cfg) : gn::Gamma_full(a, cfg);
    } else if (norm == "theta") {
      if (a.field() == gn::Field::Real && a.size() <= gn::kMaxSignEnumeration) {
        est.value = gn::theta_real_exact(a).value;
        est.kind = gn::CertificateKind::ExactEnumeration;
      } else {
        est = gn::gamma_d(a, 1, cfg);
        if (a.field() == gn::Field::Complex)
          est.value = std::max(est.value, gn::theta_complex_lower(a, 8, cfg.restarts, cfg.seed).value);
        est.kind = gn::CertificateKind::HeuristicLowerBound;
      }
    } else if (norm == "Theta") {
      if (a.field() == gn::Field::Real && a.size() <= gn::kMaxBoxEnumeration) {
        est.value = gn::Theta_real_exact(a);
        est.kind = gn::CertificateKind::ExactEnumeration;
      } else {
        est = gn::Gamma_d(a, 1, cfg);
        est.kind = gn::CertificateKind::HeuristicLowerBound;
      }
    } else {
      throw UsageError("unknown norm " + norm);
    }
  }
  std::string text = norm + " = " + fmt(est.value, 12) + "  (" + std::string(gn::to_string(est.kind)) + ")\n";
  if (!est.warning.empty()) text += "warning: " + est.warning + "\n";
  emit(g, gn::to_json(est, norm), text);
  return 0;
}

int cmd_verify(const Globals& g, const std::string& path) {
  const gn::VerifyReport rep = gn::verify_sgi(load_sym(path), g.config(), path);
  std::string text = "matrix " + rep.matrix_id + " (" + std::string(gn::to_string(rep.field)) + ")\ncones:";
  for (const auto& c : rep.cone_labels) text += " " + c;
  text += "\n";
  for (const auto& n : rep.norms) text += "  " + n.name + " = " + fmt(n.value, 12) + "  (" + n.certificate + ")\n";
  for (const auto& c : rep.checks)
    text += std::string(c.pass ? "  PASS " : "  FAIL ") + c.name + ": " + fmt(c.lhs) + " <= " + fmt(c.constant) +
            " * " + fmt(c.rhs) + (c.exact ? "" : "  [heuristic]") + "\n";
  for (const auto& w : rep.warnings) text += "warning: " + w + "\n";
  emit(g, rep, text);
  return rep.passed() ? 0 : 1;
}

int cmd_constants(const Globals& g) {
  json j = gn::to_json(gn::constants());
  std::string text;
  for (auto& [k, v] : j.items()) {
    if (v.is_array()) {
      text += k + " =";
      for (auto& x : v) {
        x = round15(x.get<double>());
        text += " " + fmt(x.get<double>(), 15);
      }
      text += "\n";
    } else {
      v = round15(v.get<double>());
      text += k + " = " + fmt(v.get<double>(), 15) + "\n";
    }
  }
  emit(g, j, text);
  return 0;
}

int cmd_maxcut(const Globals& g, const std::string& path, int draws) {
  const gn::MaxCutReport r = gn::maxcut(load_sym(path), g.config(), draws);
  std::string text;
  if (r.exact) text += "exact maxcut = " + fmt(*r.exact, 12) + "\n";
  text += "relaxation = " + fmt(r.relaxation, 12) + "  (" + r.relaxation_certificate + ")\n";
  text += "rounded cut = " + fmt(r.rounded, 12) + "  (best of " + std::to_string(r.draws) + " draws, mean " +
          fmt(r.rounded_mean) + ")\n";
  emit(g, gn::to_json(r), text);
  return 0;
}

int cmd_cutnorm(const Globals& g, const std::string& path) {
  const gn::CutNormReport r = gn::cutnorm_bracket(load_rect(path), g.config());
  std::string text = "bracket = [" + fmt(r.lower) + ", " + fmt(r.upper) + "]\n";
  if (r.theta_lower) text += "theta bracket = [" + fmt(*r.theta_lower) + ", " + fmt(*r.theta_upper) + "]\n";
  if (r.exact) text += "exact cut norm = " + fmt(*r.exact, 12) + "\n";
  emit(g, gn::to_json(r), text);
  return r.contains_exact() ? 0 : 1;
}

int cmd_stretch(const Globals& g, const std::string& path) {
  const gn::StretchReport r = gn::stretch_spread(load_sym(path), g.config());
  std::string text = "str = " + fmt(r.str, 12) + "\nspr = " + fmt(r.spr, 12) + "\nratio = " + fmt(r.ratio) + "\n";
  emit(g, gn::to_json(r), text);
  return r.str_le_spr && r.spr_le_bound ? 0 : 1;
}

int cmd_sharpness(const Globals& g, int n, int m, const std::string& field, const std::string& csv) {
  const gn::SharpnessReport r =
      gn::sharpness_experiment(n, m, gn::field_from_string(field), gn::RngStream(g.seed, 0), 32);
  if (!csv.empty()) {
    const bool fresh = !std::filesystem::exists(csv) || std::filesystem::file_size(csv) == 0;
    std::ofstream out(csv, std::ios::app);
    if (!out) throw UsageError("cannot open " + csv);
    if (fresh) out << "n,m,field,seed,gamma_lower,gamma_refined,theta_estimate,ratio_estimate,ratio_refined,bound\n";
    out << n << "," << m << "," << field << "," << g.seed << "," << fmt(r.gamma_lower, 17) << ","
        << fmt(r.gamma_refined, 17) << "," << fmt(r.theta_estimate, 17) << "," << fmt(r.ratio_estimate, 17) << "," << fmt(r.ratio_refined, 17) << ","
        << fmt(r.bound, 17) << "\n";
  }
  std::string text = "gamma lower bound = " + fmt(r.gamma_lower) + "\ngamma refined = " + fmt(r.gamma_refined) +
                     "\ntheta estimate = " + fmt(r.theta_estimate) + (r.theta_exact ? " (exact)" : "") +
                     "\nratio estimate = " + fmt(r.ratio_estimate) +
                     "\nratio with refined gamma = " + fmt(r.ratio_refined) + "\nbound = " + fmt(r.bound) +
                     "\nnote: " + r.caveat + "\n";
  emit(g, gn::to_json(r), text);
  return 0;
}

int cmd_identities(const Globals& g, int n, std::size_t samples, const std::string& field_name) {
  const gn::Field field = gn::field_from_string(field_name);
  gn::RngStream rng(g.seed, 0x6964ULL);
  const Eigen::VectorXcd u = gn::sample_sphere(n, field, rng);
  const Eigen::VectorXcd v = gn::sample_sphere(n, field, rng);
  const gn::McIdentityReport r = gn::mc_identities(u, v, field, samples, rng.substream(1));
  constexpr double k = 4.0;
  std::string text = "<u,v> = " + fmt(r.inner, field) + "\n";
  for (const gn::IdentityCheck* c : {&r.second_moment, &r.mixed_sign, &r.sign_sign}) {
    const auto& e = c->estimate;
    text += c->name + ": " + fmt(e.mean, field) + " +- " + fmt(std::max(e.stderr_re, e.stderr_im), 3) +
            "  expected " + fmt(c->expected, field);
    text += e.agrees(c->expected, k) ? "  ok\n" : "  OUTSIDE 4 sigma\n";
  }
  emit(g, gn::to_json(r, k), text);
  return r.all_within(k) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grothendieck d-norms, symmetric Grothendieck inequalities and related experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master RNG seed");
  app.add_option("--restarts", g.restarts, "optimizer restarts per sign")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json_out, "print JSON instead of text");
  app.add_option("--tol", g.tol, "optimizer stopping tolerance, relative to the Frobenius norm")
      ->check(CLI::PositiveNumber);

  std::function<int()> action;

  std::string norm, field, file;
  int d = 0;
  auto* compute = app.add_subcommand("compute", "compute one norm");
  compute->add_option("--norm", norm, "theta, Theta, gamma, Gamma or G")
      ->required()
      ->check(CLI::IsMember({"theta", "Theta", "gamma", "Gamma", "G"}));
  compute->add_option("--d", d, "rank d (default: large enough for the full norm)")->check(CLI::PositiveNumber);
  compute->add_option("--field", field, "real or complex (default: the file's field)")
      ->check(CLI::IsMember({"real", "complex"}));
  compute->add_option("FILE", file, "grothmat file")->required();
  compute->callback([&] { action = [&] { return cmd_compute(g, norm, d, field, file); }; });

  auto* verify = app.add_subcommand("verify", "check the Grothendieck inequalities that apply to a matrix");
  verify->add_option("FILE", file)->required();
  verify->callback([&] { action = [&] { return cmd_verify(g, file); }; });

  auto* consts = app.add_subcommand("constants", "print the constants table");
  consts->callback([&] { action = [&] { return cmd_constants(g); }; });

  int draws = 64;
  auto* mc = app.add_subcommand("maxcut", "max cut of a nonnegative zero-diagonal weight matrix");
  mc->add_option("FILE", file)->required();
  mc->add_option("--draws", draws, "rounding draws")->check(CLI::PositiveNumber);
  mc->callback([&] { action = [&] { return cmd_maxcut(g, file, draws); }; });

  auto* cn = app.add_subcommand("cutnorm", "bracket the cut norm of a real matrix");
  cn->add_option("FILE", file)->required();
  cn->callback([&] { action = [&] { return cmd_cutnorm(g, file); }; });

  auto* st = app.add_subcommand("stretch", "stretch and spread of a real symmetric matrix");
  st->add_option("FILE", file)->required();
  st->callback([&] { action = [&] { return cmd_stretch(g, file); }; });

  int n = 2, m = 512;
  std::string exp_field = "real", csv;
  auto* ex = app.add_subcommand("experiment", "numerical experiments");
  ex->require_subcommand(1);
  auto* sharp = ex->add_subcommand("sharpness", "PSD ratio gamma/theta for uniformly sampled points");
  sharp->add_option("--n", n, "dimension")->check(CLI::Range(2, 1 << 20));
  sharp->add_option("--m", m, "number of points")->check(CLI::PositiveNumber);
  sharp->add_option("--field", exp_field)->check(CLI::IsMember({"real", "complex"}));
  sharp->add_option("--csv", csv, "append a result row to this CSV file");
  sharp->callback([&] { action = [&] { return cmd_sharpness(g, n, m, exp_field, csv); }; });

  int id_n = 3;
  std::size_t samples = 100000;
  std::string id_field = "real";
  auto* ids = app.add_subcommand("identities", "Monte-Carlo check of the Gaussian sign identities");
  ids->add_option("--n", id_n, "dimension")->check(CLI::PositiveNumber);
  ids->add_option("--samples", samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  ids->add_option("--field", id_field)->check(CLI::IsMember({"real", "complex"}));
  ids->callback([&] { action = [&] { return cmd_identities(g, id_n, samples, id_field); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
