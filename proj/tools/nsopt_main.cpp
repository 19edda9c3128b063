#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsopt/experiment.hpp"

namespace {

struct CommonOptions {
  std::string method = "distance";
  std::vector<int> n_list;
  std::vector<double> M_list;
  std::string constraint = "box";
  std::string b_rule = "n/2";
  double gamma = 1.0;
  std::string x0 = "midpoint";
  int maxitn = 0;
  double epsx = 0.0;
  double epsg = 0.0;
  std::string format = "csv";
  std::string out_path;
  int seed = 0;
  std::string fd_scheme = "forward";
  std::string trace_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions* opt) {
  cmd->add_option("--method", opt->method, "Penalty reformulation")
      ->check(CLI::IsMember({"distance", "projective"}));
  cmd->add_option("--constraint", opt->constraint, "Feasible set family")
      ->check(CLI::IsMember({"box", "boxsum"}));
  cmd->add_option("--b", opt->b_rule,
                  "Budget for boxsum: a number or an expression in n (e.g. n/2)");
  cmd->add_option("--gamma", opt->gamma, "Penalty exponent")->check(CLI::PositiveNumber);
  cmd->add_option("--x0", opt->x0, "Start point: midpoint, zero, or comma-separated values");
  cmd->add_option("--maxitn", opt->maxitn, "Outer iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--epsx", opt->epsx, "Step-size stopping tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--epsg", opt->epsg, "Subgradient-norm stopping tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opt->format, "Output rendering")
      ->check(CLI::IsMember({"csv", "markdown"}));
  cmd->add_option("--out", opt->out_path, "Write rendered output to this path");
  cmd->add_option("--seed", opt->seed, "Seed recorded with the run");
  cmd->add_option("--fd-scheme", opt->fd_scheme, "Difference scheme for projective subgradients")
      ->check(CLI::IsMember({"forward", "central"}));
  cmd->add_option("--trace", opt->trace_path, "Append per-iteration log lines to this file");
}

nsopt::StartRule parse_x0(const std::string& text) {
  nsopt::StartRule rule;
  if (text == "midpoint") {
    rule.kind = nsopt::StartRule::Kind::BoxMidpoint;
  } else if (text == "zero") {
    rule.kind = nsopt::StartRule::Kind::Zero;
  } else {
    rule.kind = nsopt::StartRule::Kind::Given;
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
      values.push_back(std::stod(item));
    }
    if (values.empty()) throw std::invalid_argument("--x0: no values parsed");
    rule.point = Eigen::Map<nsopt::Vector>(values.data(), static_cast<long>(values.size()));
  }
  return rule;
}

nsopt::ExperimentConfig build_config(const CommonOptions& opt,
                                     std::shared_ptr<std::ofstream> trace_file) {
  nsopt::ExperimentConfig config;
  config.method = nsopt::parse_method(opt.method);
  config.n_list = opt.n_list;
  config.M_list = opt.M_list;
  config.constraint = nsopt::parse_constraint(opt.constraint);
  config.b_rule = opt.b_rule;
  config.gamma = opt.gamma;
  config.x0 = parse_x0(opt.x0);
  if (opt.maxitn > 0) config.maxitn = opt.maxitn;
  if (opt.epsx > 0.0) config.epsx = opt.epsx;
  if (opt.epsg > 0.0) config.epsg = opt.epsg;
  config.fd.scheme = nsopt::parse_fd_scheme(opt.fd_scheme);
  config.seed = static_cast<unsigned>(opt.seed);
  if (trace_file) {
    config.trace = [trace_file](int itn, double f_best, double gnorm, double h) {
      if (itn == 1) *trace_file << "# new solve\n";
      *trace_file << itn << ' ' << f_best << ' ' << gnorm << ' ' << h << '\n';
    };
  }
  return config;
}

int emit(const nsopt::ExperimentResult& result, const std::string& format,
         const std::string& out_path) {
  const std::string text =
      format == "markdown" ? nsopt::render_markdown(result) : nsopt::render_csv(result);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out_path);
    if (!file) {
      std::cerr << "cannot open output path: " << out_path << "\n";
      return 1;
    }
    file << text;
  }
  for (const nsopt::CellResult& row : result.rows) {
    if (row.status == nsopt::CellStatus::Error) {
      std::cerr << "cell n=" << row.n << " M=" << row.M << " failed: " << row.message << "\n";
      return 1;
    }
  }
  return 0;
}

struct TablePreset {
  std::string name;
  nsopt::Method method;
  nsopt::ConstraintKind constraint;
  std::vector<int> n_list;
  std::vector<double> M_list;
  std::string file_stem;
};

std::vector<TablePreset> table_presets() {
  return {
      {"distance penalty, box constraints", nsopt::Method::DistancePenalty,
       nsopt::ConstraintKind::Box, {10, 20, 30, 50, 100}, {1.0, 1e4}, "distance_box"},
      {"distance penalty, budget constraint", nsopt::Method::DistancePenalty,
       nsopt::ConstraintKind::BoxSum, {10, 20, 30, 40, 50}, {1.0, 10.0, 100.0, 1000.0, 1e4},
       "distance_boxsum"},
      {"projective penalty, box constraints", nsopt::Method::ProjectivePenalty,
       nsopt::ConstraintKind::Box, {10, 20, 30, 50, 80}, {1.0, 10.0, 100.0, 1000.0, 1e4},
       "projective_box"},
      {"projective penalty, budget constraint", nsopt::Method::ProjectivePenalty,
       nsopt::ConstraintKind::BoxSum, {10, 20, 30, 40, 80}, {1.0, 1e4}, "projective_boxsum"},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonsmooth constrained optimization benchmark runner"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "Run one (n, M) cell and print its row");
  solve->add_option("--n", solve_opt.n_list, "Dimension")->required()->expected(1);
  solve->add_option("--M", solve_opt.M_list, "Penalty coefficient")->required()->expected(1);
  add_common_flags(solve, &solve_opt);

  CommonOptions grid_opt;
  CLI::App* grid = app.add_subcommand("grid", "Run the full n x M grid");
  grid->add_option("--n", grid_opt.n_list, "Dimensions")->required()->delimiter(',');
  grid->add_option("--M", grid_opt.M_list, "Penalty coefficients")->required()->delimiter(',');
  add_common_flags(grid, &grid_opt);

  CommonOptions tables_opt;
  std::vector<int> only;
  CLI::App* tables =
      app.add_subcommand("tables", "Run the four preset benchmark grids");
  tables->add_option("--only", only, "Preset indices to run (1-4)")
      ->delimiter(',')
      ->check(CLI::Range(1, 4));
  add_common_flags(tables, &tables_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    auto open_trace = [](const std::string& path) -> std::shared_ptr<std::ofstream> {
      if (path.empty()) return nullptr;
      auto file = std::make_shared<std::ofstream>(path, std::ios::app);
      if (!*file) throw std::runtime_error("cannot open trace file: " + path);
      return file;
    };

    if (solve->parsed()) {
      auto config = build_config(solve_opt, open_trace(solve_opt.trace_path));
      return emit(nsopt::run_solve(config), solve_opt.format, solve_opt.out_path);
    }

    if (grid->parsed()) {
      auto config = build_config(grid_opt, open_trace(grid_opt.trace_path));
      return emit(nsopt::run_grid(config), grid_opt.format, grid_opt.out_path);
    }

    // tables: markdown summaries to stdout, per-preset csv files under --out.
    if (only.empty()) only = {1, 2, 3, 4};
    const auto presets = table_presets();
    auto trace_file = open_trace(tables_opt.trace_path);
    int exit_code = 0;
    for (int index : only) {
      const TablePreset& preset = presets[static_cast<std::size_t>(index - 1)];
      CommonOptions opt = tables_opt;
      opt.method = preset.method == nsopt::Method::DistancePenalty ? "distance" : "projective";
      opt.constraint =
          preset.constraint == nsopt::ConstraintKind::Box ? "box" : "boxsum";
      opt.n_list = preset.n_list;
      opt.M_list = preset.M_list;
      auto config = build_config(opt, trace_file);

      const nsopt::ExperimentResult result = nsopt::run_grid(config);
      std::cout << "## " << preset.name << "\n\n" << nsopt::render_markdown(result) << "\n";
      for (const nsopt::CellResult& row : result.rows) {
        if (row.status == nsopt::CellStatus::Error) {
          std::cerr << "cell n=" << row.n << " M=" << row.M << " failed: " << row.message
                    << "\n";
          exit_code = 1;
        }
      }
      if (!tables_opt.out_path.empty()) {
        std::filesystem::create_directories(tables_opt.out_path);
        const auto csv_path =
            std::filesystem::path(tables_opt.out_path) / (preset.file_stem + ".csv");
        std::ofstream file(csv_path);
        if (!file) {
          std::cerr << "cannot open output path: " << csv_path.string() << "\n";
          return 1;
        }
        file << nsopt::render_csv(result);
      }
    }
    return exit_code;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
