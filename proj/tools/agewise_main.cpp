// agewise: command-line front end for the ageing-class library.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agewise/errors.hpp"
#include "agewise/report.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code) {
  std::string line = message;
  for (char& c : line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "error: " << kind << ": " << line << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-residual-life ageing classes: classification, moment bounds, inversion"};
  app.set_version_flag("--version", agewise::version());
  app.require_subcommand(1);

  std::string spec;
  agewise::ClassifyOptions classify_opts;
  double horizon = 0.0;
  std::size_t grid = 0;
  double tol = 0.0;
  auto* classify = app.add_subcommand("classify", "Ageing class and MRL shape with change points");
  classify->add_option("spec", spec, "Distribution spec file")->required();
  auto* horizon_opt = classify->add_option("--horizon", horizon, "Scan horizon")->check(CLI::PositiveNumber);
  auto* grid_opt = classify->add_option("--grid", grid, "Scan grid points")->check(CLI::Range(3, 1 << 22));
  auto* tol_opt = classify->add_option("--tol", tol, "Sign classification tolerance")->check(CLI::PositiveNumber);

  double order = 0.0;
  double x0 = 0.0;
  auto* bounds = app.add_subcommand("bounds", "NBUE and NWBUE moment bounds with D(r)");
  bounds->add_option("spec", spec, "Distribution spec file")->required();
  bounds->add_option("--order", order, "Moment order r")->required()->check(CLI::PositiveNumber);
  auto* x0_opt = bounds->add_option("--x0", x0, "NWBUE change point (default: classified)")
                     ->check(CLI::NonNegativeNumber);

  std::vector<double> orders;
  auto* moments = app.add_subcommand("moments", "Raw moments against Gamma(r+1) mu^r");
  moments->add_option("spec", spec, "Distribution spec file")->required();
  moments->add_option("--orders", orders, "Comma-separated orders")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify-mrl", "Check the necessary MRL conditions");
  verify->add_option("spec", spec, "mrl_piecewise spec file")->required();

  std::string out_path;
  std::size_t points = 200;
  auto* invert = app.add_subcommand("invert-mrl", "Survival function from a piecewise MRL");
  invert->add_option("spec", spec, "mrl_piecewise spec file")->required();
  invert->add_option("--out", out_path, "CSV output path")->required();
  invert->add_option("--points", points, "Grid points")->check(CLI::Range(2, 1 << 22));

  bool json = false;
  auto* reproduce = app.add_subcommand("reproduce", "Run every reference check");
  reproduce->add_flag("--json", json, "Machine-readable output");

  std::string family;
  int n_max = 0;
  auto* converge = app.add_subcommand("converge", "Moment and law convergence along a sequence");
  converge->add_option("--family", family, "Sequence family")
      ->required()
      ->check(CLI::IsMember({"weibull-shape", "exp-mean"}));
  converge->add_option("--n-max", n_max, "Largest index (doublings from 1)")
      ->required()
      ->check(CLI::Range(1, 1 << 20));
  converge->add_option("--orders", orders, "Comma-separated moment orders")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  auto* converge_out = converge->add_option("--out", out_path, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage-error", e.what(), agewise::kExitUsage);
  }

  try {
    agewise::CommandResult result;
    if (*classify) {
      if (*horizon_opt) classify_opts.horizon = horizon;
      if (*grid_opt) classify_opts.grid = grid;
      if (*tol_opt) classify_opts.tol = tol;
      result = agewise::cmd_classify(spec, classify_opts);
    } else if (*bounds) {
      result = agewise::cmd_bounds(spec, order,
                                   *x0_opt ? std::optional<double>(x0) : std::nullopt);
    } else if (*moments) {
      result = agewise::cmd_moments(spec, orders);
    } else if (*verify) {
      result = agewise::cmd_verify_mrl(spec);
    } else if (*invert) {
      result = agewise::cmd_invert_mrl(spec, out_path, points);
    } else if (*reproduce) {
      result = agewise::cmd_reproduce(json);
    } else if (*converge) {
      std::optional<std::filesystem::path> csv;
      if (*converge_out) csv = out_path;
      result = agewise::cmd_converge(family, n_max, orders, csv);
    }
    std::cout << result.text;
    return result.exit_code;
  } catch (const agewise::Error& e) {
    const bool usage = e.kind() == "parse-error" || e.kind() == "validation-error" ||
                       e.kind() == "invalid-argument";
    return fail(e.kind(), e.what(), usage ? agewise::kExitUsage : agewise::kExitCheckFailure);
  } catch (const std::exception& e) {
    return fail("internal-error", e.what(), agewise::kExitCheckFailure);
  }
}
