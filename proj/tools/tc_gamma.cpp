#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../src/report.hpp"
#include "tcg/closed_form.hpp"
#include "tcg/errors.hpp"
#include "tcg/upper_bound.hpp"

namespace {

tcg::PrecisionMode parse_precision(const std::string& s) {
  if (s == "double") return tcg::PrecisionMode::Double;
  if (s == "extended") return tcg::PrecisionMode::Extended;
  throw CLI::ValidationError("--precision must be 'double' or 'extended'");
}

tcg::Units parse_units(const std::string& s) {
  if (s == "g") return tcg::Units::G;
  if (s == "g_over_2pi") return tcg::Units::GOver2Pi;
  throw CLI::ValidationError("--units must be 'g' or 'g_over_2pi'");
}

tcg::OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return tcg::OutputFormat::Csv;
  if (s == "json") return tcg::OutputFormat::Json;
  throw CLI::ValidationError("--format must be 'csv' or 'json'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous bounds on the critical temperature of the gamma model"};
  app.require_subcommand(1);

  double gamma = 2.0;
  double g = 1.0;
  std::size_t n_max = 400;
  int n_closed = 4;
  double tol = 1e-13;
  std::string precision = "double";
  std::string units = "g";
  std::string out_path;
  std::string format = "csv";
  double gamma_min = 0.4, gamma_max = 3.1, gamma_step = 0.1;
  std::vector<double> gamma_extra;
  std::vector<std::size_t> n_list{1, 2, 3, 4, 400};
  std::string level = "fast";

  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds at one gamma");
  bounds->add_option("--gamma", gamma, "interaction exponent")->required();
  bounds->add_option("--g", g, "coupling strength");
  bounds->add_option("--n", n_max, "largest truncation dimension");
  bounds->add_option("--tol", tol, "eigenvalue tolerance");
  bounds->add_option("--precision", precision, "double or extended");
  bounds->add_option("--units", units, "g or g_over_2pi");

  auto* sweep = app.add_subcommand("sweep", "Bounds over a gamma grid, to CSV/JSON");
  sweep->add_option("--gamma-min", gamma_min, "grid start");
  sweep->add_option("--gamma-max", gamma_max, "grid end (inclusive)");
  sweep->add_option("--gamma-step", gamma_step, "grid spacing");
  sweep->add_option("--gamma-extra", gamma_extra, "extra gamma samples")->delimiter(',');
  sweep->add_option("--n-list", n_list, "truncation dimensions")->delimiter(',');
  sweep->add_option("--g", g, "coupling strength");
  sweep->add_option("--tol", tol, "eigenvalue tolerance");
  sweep->add_option("--precision", precision, "double or extended");
  sweep->add_option("--units", units, "g or g_over_2pi");
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--format", format, "csv or json");

  auto* upper = app.add_subcommand("upper", "Closed-form upper bound at one gamma");
  upper->add_option("--gamma", gamma, "interaction exponent")->required();
  upper->add_option("--g", g, "coupling strength");

  auto* closed = app.add_subcommand("closed-form", "Closed-form lower bound, N <= 4");
  closed->add_option("--gamma", gamma, "interaction exponent")->required();
  closed->add_option("--g", g, "coupling strength");
  closed->add_option("--n", n_closed, "truncation dimension (1..4)");

  auto* verify = app.add_subcommand("verify", "Run the built-in invariant checks");
  verify->add_option("level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (bounds->parsed()) {
      tcg::run_bounds(std::cout, gamma, g, n_max, tol, parse_units(units),
                      parse_precision(precision));
    } else if (sweep->parsed()) {
      tcg::SweepConfig config;
      config.gamma_grid.clear();
      // integer stepping keeps grid points exact for decimal steps
      const long steps = std::lround((gamma_max - gamma_min) / gamma_step);
      for (long i = 0; i <= steps; ++i) {
        const double value = gamma_min + double(i) * gamma_step;
        if (value <= gamma_max + 1e-12) config.gamma_grid.push_back(value);
      }
      for (double extra : gamma_extra) config.gamma_grid.push_back(extra);
      std::sort(config.gamma_grid.begin(), config.gamma_grid.end());
      config.gamma_grid.erase(
          std::unique(config.gamma_grid.begin(), config.gamma_grid.end()),
          config.gamma_grid.end());
      config.n_list = n_list;
      config.g = g;
      config.tol = tol;
      config.precision_mode = parse_precision(precision);
      config.units = parse_units(units);
      config.output_path = out_path;
      config.format = parse_format(format);
      const auto record = tcg::run_sweep(config);
      tcg::write_record(record);
    } else if (upper->parsed()) {
      const tcg::ModelParams<double> params(gamma, g);
      std::cout << tcg::format_truncated(tcg::tc_upper(params)) << "\n";
    } else if (closed->parsed()) {
      const tcg::ModelParams<double> params(gamma, g);
      std::cout << tcg::format_truncated(tcg::tc_lower_closed(params, n_closed))
                << "\n";
    } else if (verify->parsed()) {
      return tcg::run_verify(std::cout, level == "full") == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tcg::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
