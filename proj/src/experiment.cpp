#include "nsopt/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "nsopt/penalties.hpp"
#include "nsopt/projections.hpp"
#include "nsopt/testbed.hpp"

namespace nsopt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Infeasibility is judged relative to the point's magnitude.
double feasibility_threshold(const Vector& z) { return 1e-4 * (1.0 + z.norm()); }

const Box& problem_box(const RavineProblem& p) {
  if (const Box* b = std::get_if<Box>(&p.set().variant())) return *b;
  return std::get<BoxHalfspace>(p.set().variant()).box;
}

Vector start_point(const StartRule& rule, const RavineProblem& p) {
  switch (rule.kind) {
    case StartRule::Kind::BoxMidpoint:
      return problem_box(p).midpoint();
    case StartRule::Kind::Zero:
      return Vector::Zero(p.dim());
    case StartRule::Kind::Given:
      if (rule.point.size() != p.dim()) {
        throw std::invalid_argument("start_point: given x0 has the wrong dimension");
      }
      return rule.point;
  }
  throw std::logic_error("start_point: unhandled rule");
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

}  // namespace

std::string to_string(Method m) {
  return m == Method::DistancePenalty ? "distance" : "projective";
}

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Converged: return "converged";
    case CellStatus::Infeasible: return "infeasible";
    case CellStatus::MaxIter: return "maxiter";
    case CellStatus::Error: return "error";
  }
  return "error";
}

Method parse_method(const std::string& text) {
  if (text == "distance") return Method::DistancePenalty;
  if (text == "projective") return Method::ProjectivePenalty;
  throw std::invalid_argument("parse_method: expected 'distance' or 'projective', got '" +
                              text + "'");
}

ConstraintKind parse_constraint(const std::string& text) {
  if (text == "box") return ConstraintKind::Box;
  if (text == "boxsum") return ConstraintKind::BoxSum;
  throw std::invalid_argument("parse_constraint: expected 'box' or 'boxsum', got '" + text +
                              "'");
}

FDScheme parse_fd_scheme(const std::string& text) {
  if (text == "forward") return FDScheme::Forward;
  if (text == "central") return FDScheme::Central;
  throw std::invalid_argument("parse_fd_scheme: expected 'forward' or 'central', got '" +
                              text + "'");
}

double eval_budget_rule(const std::string& rule, int n) {
  std::string s;
  for (char c : rule) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("eval_budget_rule: empty rule");

  auto number = [](const std::string& text) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("eval_budget_rule: bad number '" + text + "'");
    }
    if (pos != text.size()) {
      throw std::invalid_argument("eval_budget_rule: trailing characters in '" + text + "'");
    }
    return value;
  };

  if (s == "n") return static_cast<double>(n);
  if (s[0] == 'n' && s.size() > 1) {
    const double k = number(s.substr(2));
    switch (s[1]) {
      case '/':
        if (k == 0.0) throw std::invalid_argument("eval_budget_rule: division by zero");
        return n / k;
      case '*': return n * k;
      case '+': return n + k;
      case '-': return n - k;
      default:
        throw std::invalid_argument("eval_budget_rule: unknown operator in '" + rule + "'");
    }
  }
  return number(s);
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw std::invalid_argument("ExperimentConfig: n_list is empty");
  if (M_list.empty()) throw std::invalid_argument("ExperimentConfig: M_list is empty");
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("ExperimentConfig: n must be >= 1");
  }
  for (double M : M_list) {
    if (!(M > 0.0) || !std::isfinite(M)) {
      throw std::invalid_argument("ExperimentConfig: M must be positive and finite");
    }
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("ExperimentConfig: gamma must be positive");
  }
  if (constraint == ConstraintKind::BoxSum) {
    for (int n : n_list) {
      const double b = eval_budget_rule(b_rule, n);
      if (!(b >= 0.0) || !(b <= static_cast<double>(n))) {
        throw std::invalid_argument("ExperimentConfig: budget rule leaves [0, n] for n = " +
                                    std::to_string(n));
      }
    }
  }
  if (x0.kind == StartRule::Kind::Given) {
    if (n_list.size() != 1) {
      throw std::invalid_argument("ExperimentConfig: explicit x0 requires a single n");
    }
    if (x0.point.size() != n_list.front()) {
      throw std::invalid_argument("ExperimentConfig: x0 dimension does not match n");
    }
    if (!all_finite(x0.point)) {
      throw std::invalid_argument("ExperimentConfig: x0 is not finite");
    }
  }
  auto check_positive = [](const char* name, const std::optional<double>& v) {
    if (v && (!((*v) > 0.0) || !std::isfinite(*v))) {
      throw std::invalid_argument(std::string("ExperimentConfig: ") + name +
                                  " must be positive");
    }
  };
  check_positive("h0", h0);
  check_positive("epsx", epsx);
  check_positive("epsg", epsg);
  if (maxitn && *maxitn < 1) {
    throw std::invalid_argument("ExperimentConfig: maxitn must be >= 1");
  }
  if (!(fd.step > 0.0) || !std::isfinite(fd.step)) {
    throw std::invalid_argument("ExperimentConfig: fd step must be positive");
  }
}

CellResult run_cell(const ExperimentConfig& config, int n, double M) {
  CellResult cell;
  cell.method = config.method;
  cell.n = n;
  cell.M = M;
  cell.delta = kNaN;
  cell.epsilon = kNaN;
  cell.feasibility_gap = kNaN;

  try {
    const RavineProblem problem =
        config.constraint == ConstraintKind::Box
            ? RavineProblem::boxed(n)
            : RavineProblem::box_sum(n, eval_budget_rule(config.b_rule, n));

    PenaltyParams penalty{M, config.gamma};
    const PenalizedObjective objective =
        config.method == Method::DistancePenalty
            ? make_distance_penalty(ravine_oracle(problem), problem.set(), penalty)
            : make_projective_penalty(ravine_oracle(problem), problem.set(), penalty);

    RAlgParams ralg;
    ralg.h0 = config.h0.value_or(problem_box(problem).diagonal());
    if (config.epsx) ralg.epsx = *config.epsx;
    if (config.epsg) ralg.epsg = *config.epsg;
    if (config.maxitn) ralg.maxitn = *config.maxitn;
    ralg.trace = config.trace;
    // The projective objective only offers finite-difference subgradients,
    // which misreport at kink refinement points; keep refinement for the
    // analytically differentiated distance penalty.
    ralg.refine = config.method == Method::DistancePenalty;

    const Vector x0 = start_point(config.x0, problem);
    const SolveReport report = minimize(penalized_oracle(objective, config.fd), x0, ralg);

    cell.itn = report.itn;
    cell.time_sec = report.time_sec;
    cell.message = report.message;

    const Vector& z = report.x_final;
    if (report.termination == Termination::OracleFailure || !all_finite(z)) {
      cell.status = CellStatus::Error;
      return cell;
    }

    const Vector projected = project(z, problem.set());
    cell.feasibility_gap = (z - projected).norm();

    // The projective penalty's solution representative is the projected point;
    // the distance penalty is judged at the iterate itself.
    const Vector& scored =
        config.method == Method::ProjectivePenalty ? projected : z;
    const AccuracyReport acc = accuracy(scored, problem);
    cell.delta = acc.delta;
    cell.epsilon = acc.epsilon;

    if (cell.feasibility_gap > feasibility_threshold(z)) {
      cell.status = CellStatus::Infeasible;
    } else if (report.termination == Termination::MaxIterations) {
      cell.status = CellStatus::MaxIter;
    } else {
      cell.status = CellStatus::Converged;
    }
  } catch (const std::exception& err) {
    cell.status = CellStatus::Error;
    cell.message = err.what();
  }
  return cell;
}

ExperimentResult run_solve(const ExperimentConfig& config) {
  config.validate();
  if (config.n_list.size() != 1 || config.M_list.size() != 1) {
    throw std::invalid_argument("run_solve: config must carry exactly one n and one M");
  }
  ExperimentResult result;
  result.constraint = config.constraint;
  result.rows.push_back(run_cell(config, config.n_list.front(), config.M_list.front()));
  return result;
}

ExperimentResult run_grid(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.constraint = config.constraint;
  for (int n : config.n_list) {
    for (double M : config.M_list) {
      result.rows.push_back(run_cell(config, n, M));
    }
  }
  return result;
}

std::string render_csv(const ExperimentResult& result) {
  std::string out = "method,n,M,status,delta,epsilon,itn,time_sec,feasibility_gap\n";
  for (const CellResult& row : result.rows) {
    out += to_string(row.method);
    out += ',' + std::to_string(row.n);
    out += ',' + format_double(row.M);
    out += ',' + to_string(row.status);
    out += ',' + format_double(row.delta);
    out += ',' + format_double(row.epsilon);
    out += ',' + std::to_string(row.itn);
    out += ',' + format_double(row.time_sec);
    out += ',' + format_double(row.feasibility_gap);
    out += '\n';
  }
  return out;
}

std::string render_markdown(const ExperimentResult& result) {
  std::vector<int> ns;
  std::vector<double> Ms;
  for (const CellResult& row : result.rows) {
    if (std::find(ns.begin(), ns.end(), row.n) == ns.end()) ns.push_back(row.n);
    if (std::find(Ms.begin(), Ms.end(), row.M) == Ms.end()) Ms.push_back(row.M);
  }
  const bool budget = result.constraint == ConstraintKind::BoxSum;
  const char* metric = budget ? "δ" : "ε";

  std::string out = "| M \\ n |";
  for (int n : ns) out += " " + std::to_string(n) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < ns.size(); ++i) out += "---|";
  out += '\n';

  for (double M : Ms) {
    out += "| " + format_double(M) + " |";
    for (int n : ns) {
      const CellResult* found = nullptr;
      for (const CellResult& row : result.rows) {
        if (row.n == n && row.M == M) {
          found = &row;
          break;
        }
      }
      if (!found) {
        out += "  |";
      } else if (found->status == CellStatus::Infeasible) {
        out += " – |";
      } else if (found->status == CellStatus::Error) {
        out += " error |";
      } else {
        char buf[96];
        std::snprintf(buf, sizeof(buf), " %s=%.6e, itn=%d, t=%.3fs |", metric,
                      budget ? found->delta : found->epsilon, found->itn, found->time_sec);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace nsopt
