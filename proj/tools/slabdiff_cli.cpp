#include "slabdiff/error.hpp"
#include "slabdiff/runner.hpp"
#include "slabdiff/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Overrides {
  std::string out_dir;
  int terms = 0;
  double eps = -1.0;
};

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw slabdiff::Error("cannot read config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

slabdiff::Scenario apply(slabdiff::Scenario s, const Overrides &o) {
  if (o.terms > 0)
    s.truncation_M = o.terms;
  if (o.eps >= 0.0)
    s.eps = o.eps;
  slabdiff::validate(s);
  return s;
}

std::filesystem::path output_dir(const Overrides &o,
                                 const slabdiff::Scenario &s) {
  if (!o.out_dir.empty())
    return o.out_dir;
  if (const char *env = std::getenv("DIFFUSION_OUT_DIR"); env && *env)
    return std::filesystem::path(env) / s.name;
  return std::filesystem::path("out") / s.name;
}

int run(const slabdiff::Scenario &s, const Overrides &o) {
  const auto dir = output_dir(o, s);
  const auto report = slabdiff::run_scenario(s, dir);
  std::cout << "scenario " << s.name << " (hash " << report.hash << ") -> "
            << dir.string() << '\n';
  for (const auto &f : report.files)
    std::cout << "  " << f.filename().string() << '\n';
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Parabolic, hyperbolic and WKB diffusion in a blocking slab"};
  app.require_subcommand(1);

  Overrides o;
  std::string config;
  int figure = 0;

  const auto add_overrides = [&o](CLI::App *cmd) {
    cmd->add_option("--out-dir", o.out_dir,
                    "Output directory (default $DIFFUSION_OUT_DIR/<name> or "
                    "out/<name>)");
    cmd->add_option("--terms", o.terms, "Series truncation M")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eps", o.eps, "Override eps = tau_r / tau_D")
        ->check(CLI::NonNegativeNumber);
  };

  auto *run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("config", config, "Scenario file")->required();
  add_overrides(run_cmd);

  auto *fig_cmd = app.add_subcommand("figure", "Run a built-in figure preset");
  fig_cmd->add_option("number", figure, "Figure 1-4")
      ->required()
      ->check(CLI::Range(1, 4));
  bool print_config = false;
  fig_cmd->add_flag("--print-config", print_config,
                    "Print the preset scenario instead of running it");
  add_overrides(fig_cmd);

  auto *coeffs_cmd =
      app.add_subcommand("coeffs", "Print the cosine coefficients K0..KM");
  coeffs_cmd->add_option("config", config, "Scenario file")->required();
  add_overrides(coeffs_cmd);

  auto *validate_cmd =
      app.add_subcommand("validate", "Check a scenario file and print it");
  validate_cmd->add_option("config", config, "Scenario file")->required();
  add_overrides(validate_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd)
      return run(apply(slabdiff::parse_scenario(read_text(config)), o), o);
    if (*fig_cmd) {
      const auto s = apply(slabdiff::figure_preset(figure), o);
      if (print_config) {
        std::cout << slabdiff::serialize(s);
        return 0;
      }
      return run(s, o);
    }
    if (*coeffs_cmd) {
      const auto s = apply(slabdiff::parse_scenario(read_text(config)), o);
      const auto c = slabdiff::compute_coefficients(s.profile, s.truncation_M);
      std::cout << "m,k\n0," << slabdiff::format_double(c.k0) << '\n';
      for (int m = 1; m <= c.truncation(); ++m)
        std::cout << m << ',' << slabdiff::format_double(c.km(m)) << '\n';
      return 0;
    }
    if (*validate_cmd) {
      const auto s = apply(slabdiff::parse_scenario(read_text(config)), o);
      std::cout << "# hash " << slabdiff::scenario_hash(s) << '\n'
                << slabdiff::serialize(s);
      return 0;
    }
  } catch (const slabdiff::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
