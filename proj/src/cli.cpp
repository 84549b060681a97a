#include "scalefree/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "scalefree/cascade.hpp"
#include "scalefree/cellsim.hpp"
#include "scalefree/collide.hpp"
#include "scalefree/junction.hpp"
#include "scalefree/solutions.hpp"

namespace scalefree {
namespace cli {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

struct OutputOptions {
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string output_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->set_help_flag("--help", "Print help");  // keep -h free for step options
  cmd->add_option("--seed", out.seed, "Master seed for random streams");
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", out.output_path,
                  "Write to this file instead of stdout (relative paths go under "
                  "$SFLAB_OUT_DIR when set)");
}

int emit(const Table& table, const OutputOptions& opts) {
  const std::string text = opts.format == "json" ? to_json(table) : to_csv(table);
  if (opts.output_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::filesystem::path path(opts.output_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("SFLAB_OUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "sflab: cannot open " << path.string() << " for writing\n";
    return 2;
  }
  file << text;
  return 0;
}

SolutionFamily parse_family(const std::string& name, double alpha, double beta, int depth) {
  if (name == "standard") return Standard{};
  if (name == "fluctuation") return Fluctuation{};
  if (name == "asymmetric") return Asymmetric{alpha};
  if (name == "scaling") return AsymmetricScaling{beta};
  return ExactProduct{depth};
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  OutputOptions out;
  std::string family = "asymmetric";
  double alpha = 1.0;
  double beta = 1.0;
  int depth = 12;
  std::vector<double> etas{1e-3};
  double h = 1e-4;
};

int cmd_verify(const VerifyArgs& a) {
  const SolutionFamily family = parse_family(a.family, a.alpha, a.beta, a.depth);
  const auto f = real_evaluator(family);
  const JunctionReport report = classify_junction(f, 1.0, a.h);

  Table t;
  t.config = {{"subcommand", std::string("verify")}, {"seed", a.out.seed},
              {"format", a.out.format},              {"family", a.family},
              {"alpha", a.alpha},                    {"beta", a.beta},
              {"depth", std::int64_t{a.depth}},      {"h", a.h}};
  t.columns = {"eta",     "value_left", "value_right", "d1_left",
               "d1_right", "d2_left",   "d2_right",    "d2_jump",
               "classification", "ode_residual_left", "ode_residual_right"};
  for (double eta : a.etas) {
    t.rows.push_back({eta, f(1.0 - eta), f(1.0 + eta), report.d1_left, report.d1_right,
                      report.d2_left, report.d2_right, report.d2_jump,
                      std::string(to_string(report.classification)),
                      ode_residual(f, 1.0 - eta, a.h), ode_residual(f, 1.0 + eta, a.h)});
  }
  return emit(t, a.out);
}

// --- cascade ----------------------------------------------------------------

struct CascadeArgs {
  OutputOptions out;
  std::string mode = "golden";
  double eta0 = -1.0;  // mode-dependent default
  double tol = 5e-8;
  std::size_t max_steps = 0;  // mode-dependent default
  std::string dist = "uniform";
  double lo = 0.9, hi = 1.5;
  double shape = 2.0, scale = 1.0;
  double threshold = 1e-2;
  double step_size = 1e-3;
};

int cmd_cascade(const CascadeArgs& a) {
  Table t;
  t.config = {{"subcommand", std::string("cascade")},
              {"seed", a.out.seed},
              {"format", a.out.format},
              {"mode", a.mode}};

  if (a.mode == "golden") {
    const double eta0 = a.eta0 > 0.0 ? a.eta0 : 1.0;
    const std::size_t max_steps = a.max_steps > 0 ? a.max_steps : 64;
    t.config.insert(t.config.end(), {{"eta0", eta0},
                                     {"tol", a.tol},
                                     {"max_steps", std::uint64_t{max_steps}}});
    t.columns = {"step", "eta", "abs_error_to_golden_mean"};
    const auto fill = [&t](const CascadeState& s) {
      for (std::size_t i = 0; i < s.history.size(); ++i) {
        t.rows.push_back({std::uint64_t{i}, s.history[i],
                          std::fabs(s.history[i] - kGoldenMean)});
      }
    };
    try {
      CascadeState s = make_cascade(eta0);
      while (std::fabs(s.eta - kGoldenMean) >= a.tol) {
        if (s.step_count >= max_steps) {
          throw ConvergenceFailure("cascade: tolerance not reached", std::move(s));
        }
        s = golden_step(std::move(s));
      }
      fill(s);
    } catch (const ConvergenceFailure& e) {
      fill(e.state);
      emit(t, a.out);
      std::cerr << "sflab: " << e.what() << "\n";
      return 3;
    }
    return emit(t, a.out);
  }

  // stochastic growth trajectory
  const double eta0 = a.eta0 > 0.0 ? a.eta0 : 1e-6;
  const std::size_t max_steps = a.max_steps > 0 ? a.max_steps : 100000;
  const ScaleDistribution dist =
      a.dist == "gamma" ? ScaleDistribution(GammaLike{a.shape, a.scale})
                        : ScaleDistribution(Uniform{a.lo, a.hi});
  t.config.insert(t.config.end(),
                  {{"eta0", eta0},
                   {"max_steps", std::uint64_t{max_steps}},
                   {"dist", a.dist},
                   {"lo", a.lo},
                   {"hi", a.hi},
                   {"shape", a.shape},
                   {"scale", a.scale},
                   {"threshold", a.threshold},
                   {"step_size", a.step_size}});
  const EvolveResult result = evolve_infinitesimal(eta0, dist, a.out.seed, max_steps,
                                                   EvolveConfig{a.threshold, a.step_size});
  t.columns = {"step", "eta", "move_kind"};
  for (const TrajectoryPoint& p : result.trajectory) {
    t.rows.push_back({std::uint64_t{p.step}, p.eta, std::string(to_string(p.move))});
  }
  return emit(t, a.out);
}

// --- product ----------------------------------------------------------------

struct ProductArgs {
  OutputOptions out;
  double eta = 0.5;
  int depth = 8;
};

int cmd_product(const ProductArgs& a) {
  const std::vector<double> factors = product_factors(a.eta, a.depth);
  Table t;
  t.config = {{"subcommand", std::string("product")}, {"seed", a.out.seed},
              {"format", a.out.format},               {"eta", a.eta},
              {"depth", std::int64_t{a.depth}}};
  t.columns = {"n", "factor", "partial_product", "closed_form", "rel_error"};
  double partial = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    partial *= factors[i];
    const double closed = telescoped_product(a.eta, static_cast<int>(i) + 1);
    t.rows.push_back({std::uint64_t{i + 1}, factors[i], partial, closed,
                      std::fabs(partial - closed) / closed});
  }
  return emit(t, a.out);
}

// --- cells ------------------------------------------------------------------

struct CellsArgs {
  OutputOptions out;
  double p = 0.5;
  int generations = 10;
  std::uint64_t trials = 10000;
  int threads = 1;
};

int cmd_cells(const CellsArgs& a) {
  const TrialSummary summary = run_trials(a.p, a.generations, a.trials, a.out.seed, a.threads);
  Table t;
  t.config = {{"subcommand", std::string("cells")},
              {"seed", a.out.seed},
              {"format", a.out.format},
              {"p", a.p},
              {"generations", std::int64_t{a.generations}},
              {"trials", std::uint64_t{a.trials}},
              {"threads", std::int64_t{a.threads}}};
  t.columns = {"generation",  "mean_population",  "se_mean",
               "survival_fraction", "se_survival", "oracle_extinct_q"};
  for (std::size_t g = 0; g < summary.rows.size(); ++g) {
    const GenerationRow& row = summary.rows[g];
    t.rows.push_back({std::uint64_t{g}, row.mean_population, row.se_mean_population,
                      row.survival_fraction, row.se_survival,
                      extinction_oracle(a.p, static_cast<int>(g))});
  }
  return emit(t, a.out);
}

// --- collide ----------------------------------------------------------------

struct CollideArgs {
  OutputOptions out;
  std::string mode = "classical";
  double threshold = 1e-3;
  double dt = 1e-3;
  double t_end = 2.0;
};

int cmd_collide(const CollideArgs& a) {
  const collide::Mode mode =
      a.mode == "classical" ? collide::Mode::kClassical : collide::Mode::kScaleFree;
  const collide::Outcome outcome = collide::simulate(mode, a.threshold, a.dt, a.t_end);
  Table t;
  t.config = {{"subcommand", std::string("collide")}, {"seed", a.out.seed},
              {"format", a.out.format},               {"mode", a.mode},
              {"threshold", a.threshold},             {"dt", a.dt},
              {"t_end", a.t_end}};
  t.columns = {"mode", "event", "event_time", "event_position", "final_a", "final_b"};
  std::vector<Cell> row{std::string(collide::to_string(outcome.mode))};
  if (outcome.event) {
    row.insert(row.end(), {std::string(collide::to_string(*outcome.event)), outcome.event_time,
                           outcome.event_position});
  } else {
    row.insert(row.end(), {std::string("none"), std::string(), std::string()});
  }
  row.insert(row.end(), {outcome.final_position_a, outcome.final_position_b});
  t.rows.push_back(std::move(row));
  return emit(t, a.out);
}

}  // namespace

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<V, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

std::string to_csv(const Table& table) {
  std::string text = "# config:";
  for (const auto& [key, value] : table.config) {
    text += " " + key + "=" + format_cell(value);
  }
  text += "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) text += ",";
    text += table.columns[i];
  }
  text += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) text += ",";
      text += format_cell(row[i]);
    }
    text += "\n";
  }
  return text;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json j;
  auto& config = j["config"];
  for (const auto& [key, value] : table.config) config[key] = cell_json(value);
  auto& rows = j["rows"];
  rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json record;
    for (std::size_t i = 0; i < row.size(); ++i) record[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(record));
  }
  return j.dump() + "\n";
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"scale-free calculus laboratory"};
  app.set_help_flag("--help", "Print help");
  app.require_subcommand(1);

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Junction smoothness and ODE residuals");
  add_output_options(verify_cmd, verify_args.out);
  verify_cmd->add_option("--family", verify_args.family, "Solution family")
      ->required()
      ->check(CLI::IsMember({"standard", "fluctuation", "asymmetric", "scaling", "product"}));
  verify_cmd->add_option("--alpha", verify_args.alpha, "Asymmetric jump exponent");
  verify_cmd->add_option("--beta", verify_args.beta, "Same-side scaling exponent");
  verify_cmd->add_option("--depth", verify_args.depth, "Product truncation depth");
  verify_cmd->add_option("--eta", verify_args.etas, "Halo magnitudes to probe")
      ->delimiter(',');
  verify_cmd->add_option("--h", verify_args.h, "Finite-difference step");

  CascadeArgs cascade_args;
  CLI::App* cascade_cmd = app.add_subcommand("cascade", "Golden-mean / stochastic cascades");
  add_output_options(cascade_cmd, cascade_args.out);
  cascade_cmd->add_option("--mode", cascade_args.mode, "Cascade mode")
      ->check(CLI::IsMember({"golden", "stochastic"}))
      ->capture_default_str();
  cascade_cmd->add_option("--eta0", cascade_args.eta0, "Initial magnitude");
  cascade_cmd->add_option("--tol", cascade_args.tol, "Golden-mean tolerance");
  cascade_cmd->add_option("--max-steps", cascade_args.max_steps, "Step budget");
  cascade_cmd->add_option("--dist", cascade_args.dist, "Scale distribution")
      ->check(CLI::IsMember({"uniform", "gamma"}));
  cascade_cmd->add_option("--lo", cascade_args.lo, "Uniform lower bound");
  cascade_cmd->add_option("--hi", cascade_args.hi, "Uniform upper bound");
  cascade_cmd->add_option("--shape", cascade_args.shape, "Gamma shape");
  cascade_cmd->add_option("--scale", cascade_args.scale, "Gamma scale");
  cascade_cmd->add_option("--threshold", cascade_args.threshold, "Macroscopic threshold");
  cascade_cmd->add_option("--step-size", cascade_args.step_size, "Translation step size");

  ProductArgs product_args;
  CLI::App* product_cmd = app.add_subcommand("product", "Telescoping product factors");
  add_output_options(product_cmd, product_args.out);
  product_cmd->add_option("--eta", product_args.eta, "Halo magnitude")->required();
  product_cmd->add_option("--depth", product_args.depth, "Number of factors");

  CellsArgs cells_args;
  CLI::App* cells_cmd = app.add_subcommand("cells", "Cell division branching process");
  add_output_options(cells_cmd, cells_args.out);
  cells_cmd->add_option("--p", cells_args.p, "Split probability");
  cells_cmd->add_option("--generations", cells_args.generations, "Generations to simulate");
  cells_cmd->add_option("--trials", cells_args.trials, "Monte Carlo trials");
  cells_cmd->add_option("--threads", cells_args.threads, "Worker threads");

  CollideArgs collide_args;
  CLI::App* collide_cmd = app.add_subcommand("collide", "Two-particle collision avoidance");
  add_output_options(collide_cmd, collide_args.out);
  collide_cmd->add_option("--mode", collide_args.mode, "Dynamics mode")
      ->check(CLI::IsMember({"classical", "scale-free"}))
      ->capture_default_str();
  collide_cmd->add_option("--threshold", collide_args.threshold, "Swap window half-width");
  collide_cmd->add_option("--dt", collide_args.dt, "Integration step");
  collide_cmd->add_option("--t-end", collide_args.t_end, "End time");

  try {
    // CLI11 parses argv-style reversed vectors.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    if (cascade_cmd->parsed()) return cmd_cascade(cascade_args);
    if (product_cmd->parsed()) return cmd_product(product_args);
    if (cells_cmd->parsed()) return cmd_cells(cells_args);
    if (collide_cmd->parsed()) return cmd_collide(collide_args);
  } catch (const std::exception& e) {
    std::cerr << "sflab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc) - 1);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace cli
}  // namespace scalefree
