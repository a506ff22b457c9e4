#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "agewise/distributions.hpp"

namespace agewise {

// On-disk distribution description (JSON):
//   {"kind": "builtin", "name": "weibull", "params": {"shape": 2, "scale": 1}}
//   {"kind": "mrl_piecewise",
//    "segments": [{"from": 0, "to": 1, "kind": "affine", "a": 5, "b": 1},
//                 {"from": 1, "to": "inf", "kind": "reciprocal", "a": 1, "b": 3}]}
// Both forms accept an optional "declared_mean".
struct DistSpecFile {
  enum class Kind { MrlPiecewise, Builtin };
  Kind kind = Kind::Builtin;
  MrlSpec mrl;
  std::string name;
  std::map<std::string, double> params;
  std::optional<double> declared_mean;
};

/// Parses the document; syntax errors report the line, schema errors the field.
DistSpecFile parse_spec_text(const std::string& text, const std::string& source = "<input>");
DistSpecFile read_spec_file(const std::filesystem::path& path);

/// builtin -> catalog; mrl_piecewise -> validate_mrl then from_mrl. A declared
/// mean must agree with the distribution's mean to 1e-6 relative.
LifeDistribution to_distribution(const DistSpecFile& spec);
LifeDistribution parse_spec(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace agewise
