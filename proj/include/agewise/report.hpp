#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace agewise {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

std::string version();

// Report formatting: fixed 6 decimals in text, 15 significant digits in CSV.
std::string fixed6(double x);
std::string csv_number(double x);
// 64-bit FNV-1a of the bytes, as "fnv1a64:<16 hex digits>".
std::string input_digest(std::string_view bytes);

struct CommandResult {
  std::string text;
  int exit_code = kExitOk;
};

struct ClassifyOptions {
  std::optional<double> horizon;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
};

CommandResult cmd_classify(const std::filesystem::path& spec, const ClassifyOptions& opts = {});
CommandResult cmd_bounds(const std::filesystem::path& spec, double order,
                         std::optional<double> x0 = std::nullopt);
CommandResult cmd_moments(const std::filesystem::path& spec, const std::vector<double>& orders);
CommandResult cmd_verify_mrl(const std::filesystem::path& spec);
CommandResult cmd_invert_mrl(const std::filesystem::path& spec, const std::filesystem::path& out,
                             std::size_t points = 200);
CommandResult cmd_converge(const std::string& family, int n_max, const std::vector<double>& orders,
                           const std::optional<std::filesystem::path>& out = std::nullopt);
CommandResult cmd_reproduce(bool json);

// One numbered acceptance check of the reproduction report.
struct ReproduceCheck {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> values;
  std::string detail;
};

struct Erratum {
  std::string id;
  std::string text;
  std::vector<std::pair<std::string, double>> values;
};

std::vector<ReproduceCheck> reproduce_checks();
std::vector<Erratum> reproduce_errata();
int reproduce_exit_code(const std::vector<ReproduceCheck>& checks);
std::string render_reproduce(const std::vector<ReproduceCheck>& checks,
                             const std::vector<Erratum>& errata, bool json);

}  // namespace agewise
