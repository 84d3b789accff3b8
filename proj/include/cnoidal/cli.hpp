#pragma once

// Command-line front end of cnoidal_lab.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnoidal/constraints.hpp"
#include "cnoidal/csv.hpp"
#include "cnoidal/error.hpp"
#include "cnoidal/solution.hpp"

namespace cnoidal {

enum class Command { Elliptic, Identity, Landen, Feasibility, Solve, Profile, Residual, Simulate, Figure };

enum class FamilyChoice { Auto, Superposed, Pure };

enum class FigureId { Fig1, Fig2a, Fig2b, Fig3a, Fig3b, Fig4a, Fig4b };

enum class Precision { Normal, Strict };

struct RunConfig {
  Command command = Command::Solve;
  std::optional<double> m;
  double gamma = 1.0;
  std::optional<double> mu_e, mu_f, mu_v;
  std::optional<double> b_i;
  /// Elliptic argument (elliptic) or fraction to invert (feasibility).
  std::optional<double> x;
  /// mu/mu_e for the p = 1 Lambda trains.
  std::optional<double> muRatio;
  int p = 3;
  Variant variant = Variant::Standard;
  Scheme scheme = Scheme::Lambda;
  FamilyChoice family = FamilyChoice::Auto;
  std::optional<int> gridNTau, gridNZeta;
  std::optional<double> zetaMax;
  int points = 4096;
  std::optional<FigureId> figure;
  std::string out;
  Precision precision = Precision::Normal;
  bool help = false;
  std::string helpText;
};

/// argv without the program name.  Throws Error(Usage) naming the offending
/// flag; --help sets help and helpText instead.
RunConfig parse_args(const std::vector<std::string>& args);

/// Reads CNOIDAL_LAB_PRECISION; throws Usage for values other than normal or
/// strict.
Precision precision_from_env();

SolveOptions solve_options(Precision p);

/// Builds the medium named by the scheme flags.
MediumSpec medium_from(const RunConfig& cfg);

/// Dispatches to the solver named by scheme, family, p and variant.
SolutionCoefficients solve_from(const RunConfig& cfg);

struct Figure {
  Table table;
  /// Ground-state amplitude recomputed from the constraint chain (fig3b, fig4b).
  std::optional<double> b_i;
};

/// Figure data, recomputed from the constraints on every call.
Figure build_figure(FigureId id);

std::optional<FigureId> figure_id(const std::string& name);

/// Writes one figure's CSV and returns the recomputed b_i, if any.
std::optional<double> emit_figure(FigureId id, std::ostream& os);

/// Runs a parsed configuration; returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// 0 success, 2 usage, 3 I/O, 4 infeasible parameters or unstable runs,
/// 1 anything else.
int exit_code(ErrorKind kind) noexcept;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cnoidal
