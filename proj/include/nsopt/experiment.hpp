#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsopt/core.hpp"
#include "nsopt/finite_diff.hpp"
#include "nsopt/ralg.hpp"

namespace nsopt {

enum class Method { DistancePenalty, ProjectivePenalty };
enum class ConstraintKind { Box, BoxSum };
enum class CellStatus { Converged, Infeasible, MaxIter, Error };

std::string to_string(Method m);
std::string to_string(CellStatus s);
Method parse_method(const std::string& text);          // "distance" | "projective"
ConstraintKind parse_constraint(const std::string& text);  // "box" | "boxsum"
FDScheme parse_fd_scheme(const std::string& text);     // "forward" | "central"

// Budget expressions over the dimension: "n", a number, or n with one
// arithmetic operator and a numeric operand ("n/2", "n-1", "n*0.25", "n+2").
double eval_budget_rule(const std::string& rule, int n);

struct StartRule {
  enum class Kind { BoxMidpoint, Zero, Given };
  Kind kind = Kind::BoxMidpoint;
  Vector point;  // Given only
};

struct ExperimentConfig {
  Method method = Method::DistancePenalty;
  std::vector<int> n_list;
  std::vector<double> M_list;
  ConstraintKind constraint = ConstraintKind::Box;
  std::string b_rule = "n/2";  // BoxSum only
  double gamma = 1.0;
  StartRule x0;
  // Solver overrides; anything unset falls back to the solver defaults, with
  // h0 defaulting to the box diagonal length.
  std::optional<double> h0;
  std::optional<double> epsx;
  std::optional<double> epsg;
  std::optional<int> maxitn;
  FDParams fd;
  unsigned seed = 0;
  std::function<void(int, double, double, double)> trace;

  void validate() const;
};

struct CellResult {
  Method method = Method::DistancePenalty;
  int n = 0;
  double M = 0.0;
  CellStatus status = CellStatus::Error;
  double delta = 0.0;
  double epsilon = 0.0;
  int itn = 0;
  double time_sec = 0.0;
  double feasibility_gap = 0.0;
  std::string message;
};

struct ExperimentResult {
  ConstraintKind constraint = ConstraintKind::Box;
  std::vector<CellResult> rows;
};

// Single (n, M) cell: builds the benchmark problem, wraps it in the chosen
// penalty, runs the solver, and scores the terminal point.
CellResult run_cell(const ExperimentConfig& config, int n, double M);

// Requires singleton n_list and M_list; produces the one-row result.
ExperimentResult run_solve(const ExperimentConfig& config);

// Full Cartesian grid in (n, M) order, one row per cell; per-cell errors are
// recorded in their row and the grid continues.
ExperimentResult run_grid(const ExperimentConfig& config);

// Fixed header, scientific notation with six digits after the point.
std::string render_csv(const ExperimentResult& result);

// Grid layout with one row per M and one column per n; infeasible cells render
// as an en dash, mirroring the usual presentation of failed runs.
std::string render_markdown(const ExperimentResult& result);

}  // namespace nsopt
