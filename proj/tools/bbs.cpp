// bbs: command-line driver for the box-ball system library.
//
//   bbs simulate --config F [--steps N] [--render ascii|json|none]
//   bbs difftest --cases N --seed S [--mode M] [bounds flags] [--jobs J]
//   bbs solution --params F --type euler|tau [--verify] [--t-range A:B]
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bbs/harness.hpp"
#include "bbs/json_io.hpp"
#include "bbs/solutions.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("BBS_SEED");
  if (text == nullptr || *text == '\0') return std::nullopt;
  std::uint64_t v = 0;
  const std::string s(text);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw bbs::io::ConfigError("BBS_SEED: not an unsigned integer");
  return v;
}

std::pair<bbs::Time, bbs::Time> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--t-range", "expected A:B");
  bbs::Time a = 0;
  bbs::Time b = 0;
  const auto* s = text.data();
  const auto r1 = std::from_chars(s, s + colon, a);
  const auto r2 = std::from_chars(s + colon + 1, s + text.size(), b);
  if (r1.ec != std::errc() || r1.ptr != s + colon || r2.ec != std::errc() || r2.ptr != s + text.size() || b < a) {
    throw CLI::ValidationError("--t-range", "expected integers A:B with A <= B");
  }
  return {a, b};
}

int run_simulate(const std::string& path, std::optional<bbs::Count> steps, std::optional<std::string> render) {
  bbs::RunConfig config = bbs::parse_config(path);
  if (steps) config.steps = *steps;
  if (render) {
    config.render = *render == "ascii" ? bbs::Render::Ascii : *render == "json" ? bbs::Render::Json : bbs::Render::None;
  }
  if (!config.seed) config.seed = env_seed();
  config.validate();

  const bbs::SimulationResult result = bbs::run_simulation(config, std::cout);
  if (!result.all_equal()) {
    std::size_t bad = 0;
    for (bool v : result.verdicts) bad += v ? 0 : 1;
    std::cerr << "simulate: " << bad << " of " << result.verdicts.size() << " steps differ between representations\n";
    return 1;
  }
  return 0;
}

int run_difftest(std::size_t cases, std::optional<std::uint64_t> seed, bbs::DiffBounds bounds, unsigned jobs) {
  if (!seed) seed = env_seed();
  const bbs::DiffReport report = bbs::difftest(cases, seed.value_or(0), bounds, jobs);
  std::cout << bbs::to_json(report).dump() << '\n';
  std::cerr << "difftest: mode " << bbs::to_string(bounds.mode) << ", " << report.cases << " cases, "
            << report.failures.size() << " failures, " << report.elapsed_seconds << " s\n";
  return report.ok() ? 0 : 1;
}

int run_solution(const std::string& path, const std::string& type, bool verify, bbs::Time t_first, bbs::Time t_last) {
  const bbs::io::Json j = bbs::io::parse_file(path);
  if (type == "euler") {
    const bbs::EulerSolitonParams params = bbs::io::euler_params_from_json(j, "");
    if (verify) {
      const auto report = bbs::verify_euler_solution(params, t_first, t_last);
      std::cout << bbs::io::to_json(report).dump() << '\n';
      return report.ok() ? 0 : 1;
    }
    const auto [first, last] = bbs::euler_solution_window(params, t_first, t_last);
    for (bbs::Time t = t_first; t <= t_last; ++t) {
      const auto slice = bbs::euler_nsoliton(params, first, last, t);
      std::cout << bbs::io::state_record(slice.state(params.profile)).dump() << '\n';
    }
    return 0;
  }
  const bbs::TauParams params = bbs::io::tau_params_from_json(j, "");
  if (verify) {
    const auto report = bbs::verify_tau_solution(params, t_first, t_last);
    std::cout << bbs::io::to_json(report).dump() << '\n';
    return report.ok() ? 0 : 1;
  }
  for (bbs::Time t = t_first; t <= t_last; ++t) {
    std::cout << bbs::io::to_json(bbs::tau_toda_state(params, t)).dump() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box-ball system simulator and checker"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Evolve a configured initial state");
  std::string config_path;
  std::optional<bbs::Count> sim_steps;
  std::optional<std::string> sim_render;
  simulate->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  simulate->add_option("--steps", sim_steps, "Override the configured step count");
  simulate->add_option("--render", sim_render, "Output format")->check(CLI::IsMember({"ascii", "json", "none"}));

  auto* diff = app.add_subcommand("difftest", "Seeded cross-representation differential test");
  std::size_t cases = 1000;
  std::optional<std::uint64_t> seed;
  std::string mode = "full";
  unsigned jobs = 1;
  bbs::DiffBounds bounds;
  diff->add_option("--cases", cases, "Number of random cases")->required();
  diff->add_option("--seed", seed, "Base seed (default: BBS_SEED, then 0)");
  diff->add_option("--mode", mode, "carrier, unit, full or chain")->check(CLI::IsMember({"carrier", "unit", "full", "chain"}));
  diff->add_option("--steps", bounds.steps, "Steps per case")->capture_default_str();
  diff->add_option("--max-window", bounds.max_window, "Largest initial window in boxes")->capture_default_str();
  diff->add_option("--max-capacity", bounds.max_capacity, "Largest box capacity")->capture_default_str();
  diff->add_option("--carrier-span", bounds.carrier_span, "M_t drawn from [max capacity, max capacity + span]")
      ->capture_default_str();
  diff->add_option("--max-carrier", bounds.max_carrier, "Largest finite M in carrier mode")->capture_default_str();
  diff->add_option("--max-solitons", bounds.max_solitons, "Redraw states with more solitons (0: no limit)")
      ->capture_default_str();
  diff->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

  auto* sol = app.add_subcommand("solution", "Evaluate or verify a closed-form solution");
  std::string params_path;
  std::string type;
  bool verify = false;
  std::string range = "0:10";
  sol->add_option("--params", params_path, "JSON parameter file")->required()->check(CLI::ExistingFile);
  sol->add_option("--type", type, "euler or tau")->required()->check(CLI::IsMember({"euler", "tau"}));
  sol->add_flag("--verify", verify, "Check every equation instead of printing slices");
  sol->add_option("--t-range", range, "Inclusive time range A:B")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(config_path, sim_steps, sim_render);
    if (*diff) {
      bounds.mode = bbs::diff_mode_from_string(mode);
      return run_difftest(cases, seed, bounds, jobs);
    }
    const auto [a, b] = parse_range(range);
    return run_solution(params_path, type, verify, a, b);
  } catch (const bbs::io::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
