#include "cnoidal/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "cnoidal/error.hpp"
#include "cnoidal/profile.hpp"
#include "cnoidal/propagation.hpp"
#include "cnoidal/superposition.hpp"

namespace cnoidal {

namespace {

const std::map<std::string, Command> kCommands{
    {"elliptic", Command::Elliptic}, {"identity", Command::Identity},
    {"landen", Command::Landen},     {"feasibility", Command::Feasibility},
    {"solve", Command::Solve},       {"profile", Command::Profile},
    {"residual", Command::Residual}, {"simulate", Command::Simulate},
    {"figure", Command::Figure},
};

const std::map<std::string, Scheme> kSchemes{
    {"two-level", Scheme::TwoLevel}, {"v", Scheme::V}, {"lambda", Scheme::Lambda}, {"n", Scheme::N}};

const std::map<std::string, FigureId> kFigures{
    {"fig1", FigureId::Fig1},   {"fig2a", FigureId::Fig2a}, {"fig2b", FigureId::Fig2b},
    {"fig3a", FigureId::Fig3a}, {"fig3b", FigureId::Fig3b}, {"fig4a", FigureId::Fig4a},
    {"fig4b", FigureId::Fig4b},
};

template <class T>
void optional_option(CLI::App& app, const std::string& name, std::optional<T>& slot,
                     const std::string& desc, const CLI::Validator& check) {
  app.add_option_function<T>(name, [&slot](const T& v) { slot = v; }, desc)->check(check);
}

const CLI::Validator kFinite(
    [](const std::string& s) {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !std::isfinite(v)) return std::string("not a finite number");
      return std::string();
    },
    "FINITE");

const CLI::Validator kOddTerms(
    [](const std::string& s) {
      int v = 0;
      if (!CLI::detail::lexical_cast(s, v) || v < 1 || v > 9 || v % 2 == 0) {
        return std::string("p must be odd and in [1, 9]");
      }
      return std::string();
    },
    "ODD 1..9");

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"cnoidal_lab: cnoidal pulse trains in Lambda and N media", "cnoidal_lab"};
  app.set_config("--config", "", "flat key=value file; flags override it");
  app.allow_config_extras(false);

  std::string command;
  app.add_option("command", command, "elliptic|identity|landen|feasibility|solve|profile|residual|simulate|figure")
      ->required()
      ->check(CLI::IsMember(kCommands));

  optional_option(app, "--m", cfg.m, "modulus parameter", CLI::Range(0.0, 1.0));
  app.add_option("--gamma", cfg.gamma, "time scale Gamma")->check(CLI::PositiveNumber & kFinite);
  optional_option(app, "--mu-e", cfg.mu_e, "propagation constant mu_e", CLI::PositiveNumber & kFinite);
  optional_option(app, "--mu-f", cfg.mu_f, "propagation constant mu_f", CLI::PositiveNumber & kFinite);
  optional_option(app, "--mu-v", cfg.mu_v, "mu_v (N) or auxiliary mu (Lambda)", CLI::PositiveNumber & kFinite);
  optional_option(app, "--b-i", cfg.b_i, "ground-state amplitude b_i", CLI::Range(0.0, 1.0));
  optional_option(app, "--x", cfg.x, "elliptic argument, or fraction x to invert", kFinite);
  optional_option(app, "--mu-ratio", cfg.muRatio, "mu/mu_e for p = 1 Lambda trains", CLI::Range(0.0, 1.0));
  app.add_option("--p", cfg.p, "number of superposed terms")->check(kOddTerms);
  app.add_option("--variant", cfg.variant, "standard|exchanged")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Variant>{{"standard", Variant::Standard}, {"exchanged", Variant::Exchanged}}));
  std::string scheme;
  app.add_option("--scheme", scheme, "two-level|v|lambda|n")->check(CLI::IsMember(kSchemes));
  app.add_option("--family", cfg.family, "auto|superposed|pure")
      ->transform(CLI::CheckedTransformer(std::map<std::string, FamilyChoice>{
          {"auto", FamilyChoice::Auto}, {"superposed", FamilyChoice::Superposed}, {"pure", FamilyChoice::Pure}}));
  optional_option(app, "--grid-ntau", cfg.gridNTau, "tau samples", CLI::Range(256, 1 << 22));
  optional_option(app, "--grid-nzeta", cfg.gridNZeta, "zeta steps", CLI::Range(16, 1 << 22));
  optional_option(app, "--zeta-max", cfg.zetaMax, "propagation distance", CLI::NonNegativeNumber & kFinite);
  app.add_option("--points", cfg.points, "profile/identity grid points")->check(CLI::Range(2, 1 << 24));
  std::string figure;
  app.add_option("--id", figure, "figure id")->check(CLI::IsMember(kFigures));
  app.add_option("--out", cfg.out, "output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.help = true;
    cfg.helpText = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::Usage, e.what());
  }
  cfg.command = kCommands.at(command);
  if (!figure.empty()) cfg.figure = kFigures.at(figure);
  if (!scheme.empty()) cfg.scheme = kSchemes.at(scheme);
  cfg.precision = precision_from_env();
  return cfg;
}

Precision precision_from_env() {
  const char* v = std::getenv("CNOIDAL_LAB_PRECISION");
  if (v == nullptr || std::string(v).empty() || std::string(v) == "normal") return Precision::Normal;
  if (std::string(v) == "strict") return Precision::Strict;
  throw Error(ErrorKind::Usage, "CNOIDAL_LAB_PRECISION must be normal or strict, got " + std::string(v));
}

SolveOptions solve_options(Precision p) {
  SolveOptions o;
  if (p == Precision::Strict) {
    o.rootTolerance = 1e-14;
    o.certifyPoints = 8192;
  }
  return o;
}

namespace {

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw Error(ErrorKind::Usage, std::string("missing ") + flag);
  return *v;
}

}  // namespace

MediumSpec medium_from(const RunConfig& cfg) {
  const double mu_e = cfg.mu_e.value_or(1.0);
  switch (cfg.scheme) {
    case Scheme::TwoLevel: return MediumSpec::two_level(mu_e);
    case Scheme::V: return MediumSpec::v_system(mu_e, cfg.mu_f.value_or(mu_e));
    case Scheme::Lambda: return MediumSpec::lambda(mu_e, cfg.mu_f.value_or(mu_e), cfg.mu_v);
    case Scheme::N:
      return MediumSpec::n_system(need(cfg.mu_e, "--mu-e"), need(cfg.mu_f, "--mu-f"),
                                  need(cfg.mu_v, "--mu-v"));
  }
  throw Error(ErrorKind::Usage, "unknown scheme");
}

SolutionCoefficients solve_from(const RunConfig& cfg) {
  const MediumSpec medium = medium_from(cfg);
  const SolveOptions opts = solve_options(cfg.precision);
  FamilyChoice fam = cfg.family;
  if (fam == FamilyChoice::Auto) fam = cfg.p == 1 ? FamilyChoice::Pure : FamilyChoice::Superposed;

  if (fam == FamilyChoice::Superposed) {
    if (cfg.p == 1) throw Error(ErrorKind::Usage, "--family=superposed needs --p >= 3");
    switch (cfg.scheme) {
      case Scheme::Lambda:
        return solve_lambda_superposed(Modulus(need(cfg.m, "--m")), cfg.gamma, medium, cfg.p,
                                       cfg.variant, opts);
      case Scheme::N: return solve_n_superposed(cfg.gamma, medium, cfg.p, cfg.variant, opts);
      case Scheme::TwoLevel:
      case Scheme::V: {
        const ImpossibilityReport rep = check_impossibility(medium);
        throw Error(ErrorKind::NoSolution,
                    "superposed trains violate conservation in " + std::string(to_string(cfg.scheme)) +
                        " media; minimum margin " + std::to_string(rep.minMargin) + " at m = " +
                        std::to_string(rep.mAtMinMargin));
      }
    }
  }
  if (cfg.p != 1) throw Error(ErrorKind::Usage, "--family=pure needs --p=1");
  if (cfg.scheme == Scheme::Lambda) {
    double ratio = 0.0;
    if (cfg.muRatio) {
      ratio = *cfg.muRatio;
    } else if (medium.mu_v) {
      ratio = *medium.mu_v / medium.mu_e;
    } else {
      throw Error(ErrorKind::Usage, "p = 1 Lambda trains need --mu-ratio or --mu-v");
    }
    const Modulus m = cfg.m ? Modulus(*cfg.m)
                            : lambda_p1_modulus(need(cfg.b_i, "--m or --b-i"), ratio, cfg.variant);
    return solve_lambda_p1(m, cfg.gamma, ratio, medium, cfg.variant, opts);
  }
  PureCnoidalInput in;
  if (cfg.b_i) in.b_i = complex{*cfg.b_i, 0.0};
  in.m = cfg.m;
  return solve_n_pure_cnoidal(cfg.gamma, medium, in, cfg.variant, opts);
}

std::optional<FigureId> figure_id(const std::string& name) {
  const auto it = kFigures.find(name);
  if (it == kFigures.end()) return std::nullopt;
  return it->second;
}

namespace {

constexpr int kFigureRows = 500;

Figure constituents_figure(double m, WaveKind kind) {
  const SuperposedBasis basis(Modulus(m), 3);
  const double span = 4.0 * basis.quarter_period();
  Figure f;
  f.table.header = {"X", "superposed", "c1", "c2", "c3"};
  for (int k = 0; k < kFigureRows; ++k) {
    const double X = span * k / (kFigureRows - 1);
    const SuperposedSample s = basis(X);
    std::vector<double> row{X, kind == WaveKind::Dn ? s.d : s.s};
    for (const auto& t : basis.constituents(X)) row.push_back(kind == WaveKind::Dn ? t.dn : t.sn);
    f.table.rows.push_back(std::move(row));
  }
  return f;
}

Figure comparison_figure(double m, WaveKind kind) {
  const SuperposedBasis basis(Modulus(m), 3);
  const JacobiEvaluator jac{Modulus(m)};
  const double span = 4.0 * basis.quarter_period();
  Figure f;
  double scale = 1.0;
  if (kind == WaveKind::Dn) {
    f.table.header = {"X", "superposed", "pure"};
  } else {
    f.b_i = lambda_chain_occupancy(Modulus(m));
    scale = *f.b_i;
    f.table.header = {"X", "superposed", "b_i_sn"};
  }
  for (int k = 0; k < kFigureRows; ++k) {
    const double X = span * k / (kFigureRows - 1);
    const SuperposedSample s = basis(X);
    const EllipticTriple t = jac(X);
    if (kind == WaveKind::Dn) {
      f.table.rows.push_back({X, s.d, t.dn});
    } else {
      f.table.rows.push_back({X, s.s, scale * t.sn});
    }
  }
  return f;
}

}  // namespace

Figure build_figure(FigureId id) {
  switch (id) {
    case FigureId::Fig1: {
      const FeasibilityWindow w = feasibility_window();
      Figure f;
      f.table.header = {"x", "m"};
      for (int k = 0; k < kFigureRows; ++k) {
        const double x = w.xMin + (w.xMax - w.xMin) * (k + 1) / (kFigureRows + 1);
        f.table.rows.push_back({x, m_of_fraction_x(x).value()});
      }
      return f;
    }
    case FigureId::Fig2a: return constituents_figure(0.7, WaveKind::Dn);
    case FigureId::Fig2b: return constituents_figure(0.7, WaveKind::Sn);
    case FigureId::Fig3a: return comparison_figure(0.7, WaveKind::Dn);
    case FigureId::Fig3b: return comparison_figure(0.7, WaveKind::Sn);
    case FigureId::Fig4a: return comparison_figure(0.3, WaveKind::Dn);
    case FigureId::Fig4b: return comparison_figure(0.3, WaveKind::Sn);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown figure");
}

std::optional<double> emit_figure(FigureId id, std::ostream& os) {
  const Figure f = build_figure(id);
  write_table(os, f.table);
  return f.b_i;
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Io: return 3;
    case ErrorKind::InvalidModulus:
    case ErrorKind::DivergentPeriod:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InfeasibleFraction:
    case ErrorKind::SchemeMismatch:
    case ErrorKind::DegenerateModulus:
    case ErrorKind::DegenerateScheme:
    case ErrorKind::InvalidRatio:
    case ErrorKind::OrderingViolation:
    case ErrorKind::UnitOccupancy:
    case ErrorKind::PulseLimit:
    case ErrorKind::NoSolution:
    case ErrorKind::UnstableRun:
      return 4;
    default: return 1;
  }
}

namespace {

void kv(std::ostream& os, const std::string& key, double v) { os << key << '=' << format_double(v) << '\n'; }

void kv(std::ostream& os, const std::string& key, complex z) {
  kv(os, key + "_re", z.real());
  kv(os, key + "_im", z.imag());
}

// Writes to --out when given, otherwise to out.
template <class F>
void with_output(const RunConfig& cfg, std::ostream& out, F&& write) {
  if (cfg.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw Error(ErrorKind::Io, "cannot open " + cfg.out);
  write(file);
  file.flush();
  if (!file) throw Error(ErrorKind::Io, "write failed: " + cfg.out);
}

void print_coefficients(std::ostream& os, const SolutionCoefficients& c) {
  os << "family=" << to_string(c.family) << '\n';
  os << "p=" << c.p << '\n';
  kv(os, "m", c.m);
  kv(os, "gamma", c.Gamma);
  kv(os, "q", c.q);
  if (c.mu != 0.0) kv(os, "mu", c.mu);
  kv(os, "A_e", c.A_e);
  kv(os, "A_f", c.A_f);
  kv(os, "A_v", c.A_v);
  kv(os, "b_i", c.b_i);
  kv(os, "b_e", c.b_e);
  kv(os, "b_f", c.b_f);
  kv(os, "b_v", c.b_v);
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::Elliptic: {
      const Modulus m(need(cfg.m, "--m"));
      const EllipticTriple t = jacobi(need(cfg.x, "--x"), m);
      kv(out, "m", t.m);
      kv(out, "x", t.x);
      kv(out, "sn", t.sn);
      kv(out, "cn", t.cn);
      kv(out, "dn", t.dn);
      kv(out, "K", t.bigK);
      return 0;
    }
    case Command::Identity: {
      const Modulus m(need(cfg.m, "--m"));
      const double span = 4.0 * complete_K(m);
      std::vector<double> xs(static_cast<std::size_t>(cfg.points));
      for (int k = 0; k < cfg.points; ++k) xs[static_cast<std::size_t>(k)] = span * k / (cfg.points - 1);
      const IdentityResiduals r = identity_residuals(m, cfg.p, xs);
      kv(out, "sd", r.sd);
      kv(out, "cs", r.cs);
      kv(out, "cd", r.cd);
      kv(out, "max", r.max());
      return 0;
    }
    case Command::Landen: {
      const Modulus m(need(cfg.m, "--m"));
      const LandenParams lp = landen_params(m, cfg.p);
      const double span = 4.0 * complete_K(m);
      std::vector<double> xs(static_cast<std::size_t>(cfg.points));
      for (int k = 0; k < cfg.points; ++k) xs[static_cast<std::size_t>(k)] = span * k / (cfg.points - 1);
      const LandenResiduals r = landen_residual(m, cfg.p, xs);
      kv(out, "alpha", lp.alpha);
      kv(out, "beta", lp.beta);
      kv(out, "m_tilde", lp.mTilde);
      kv(out, "amplitude_identity", std::abs(lp.m * lp.beta * lp.beta - lp.alpha * lp.alpha * lp.mTilde));
      kv(out, "residual_dn", r.dn);
      kv(out, "residual_cn", r.cn);
      kv(out, "residual_sn", r.sn);
      return 0;
    }
    case Command::Feasibility: {
      if (cfg.x) {
        kv(out, "x", *cfg.x);
        kv(out, "m", m_of_fraction_x(*cfg.x, solve_options(cfg.precision)).value());
        return 0;
      }
      const FeasibilityWindow w = feasibility_window();
      kv(out, "x_min", w.xMin);
      kv(out, "m_at_min", w.mAtMin);
      kv(out, "x_max", w.xMax);
      out << "monotone=" << (w.monotone ? "true" : "false") << '\n';
      return 0;
    }
    case Command::Solve: {
      const SolutionCoefficients c = solve_from(cfg);
      const Certificate cert = certificate(c, solve_options(cfg.precision).certifyPoints);
      print_coefficients(out, c);
      kv(out, "residual", cert.residual.max_relative());
      kv(out, "probability_deviation", cert.probabilityDeviation);
      kv(out, "group_velocity", group_velocity(c));
      return 0;
    }
    case Command::Profile: {
      const SolutionCoefficients c = solve_from(cfg);
      const XGrid grid = default_grid(c, cfg.points);
      const Table t = profile_table(build_profile(c, grid), ode_residual(c, grid));
      with_output(cfg, out, [&](std::ostream& os) { write_table(os, t); });
      return 0;
    }
    case Command::Residual: {
      const SolutionCoefficients c = solve_from(cfg);
      const ResidualReport r = ode_residual(c, default_grid(c, cfg.points));
      for (const auto& e : r.perEquation) {
        kv(out, e.name + "_raw", e.raw);
        kv(out, e.name + "_relative", e.relative);
      }
      kv(out, "relative_scale", r.relativeScale);
      kv(out, "max_relative", r.max_relative());
      return 0;
    }
    case Command::Simulate: {
      const SolutionCoefficients c = solve_from(cfg);
      SimGrid grid = default_sim_grid(c);
      if (cfg.gridNTau) grid.nTau = *cfg.gridNTau;
      if (cfg.gridNZeta) grid.nZeta = *cfg.gridNZeta;
      if (cfg.zetaMax) grid.zetaMax = *cfg.zetaMax;
      grid.snapshots = std::min(grid.snapshots, grid.nZeta + 1);
      const SimHistory h = simulate(c, grid);
      const VelocityMeasurement v = measure_velocity(h, c);
      if (!cfg.out.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out, ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create " + cfg.out);
        for (std::size_t j = 0; j < h.snapshots.size(); ++j) {
          char name[32];
          std::snprintf(name, sizeof name, "snapshot_%03zu.csv", j);
          const auto path = std::filesystem::path(cfg.out) / name;
          std::ofstream f(path);
          if (!f) throw Error(ErrorKind::Io, "cannot open " + path.string());
          write_table(f, snapshot_table(h, h.snapshots[j]));
        }
      }
      kv(out, "normDrift", h.normDrift);
      kv(out, "shapeError", shape_preservation_error(h, c));
      kv(out, "measuredVelocity", v.measured);
      kv(out, "predictedVelocity", v.predicted);
      return 0;
    }
    case Command::Figure: {
      const FigureId id = need(cfg.figure, "--id");
      std::optional<double> bi;
      with_output(cfg, out, [&](std::ostream& os) { bi = emit_figure(id, os); });
      if (!cfg.out.empty() && bi) kv(out, "b_i", *bi);
      return 0;
    }
  }
  return 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.help) {
    out << cfg.helpText;
    return 0;
  }
  try {
    return dispatch(cfg, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  }
  return run(cfg, out, err);
}

}  // namespace cnoidal
