#include "agewise/spec_file.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "agewise/ageing.hpp"
#include "agewise/errors.hpp"

namespace agewise {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& source, const std::string& field,
                              const std::string& what) {
  throw ParseError(source + ": field '" + field + "': " + what);
}

double number_field(const json& obj, const std::string& key, const std::string& path,
                    const std::string& source) {
  if (!obj.contains(key)) field_error(source, path + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) field_error(source, path + key, "expected a number");
  return v.get<double>();
}

// Numbers, or the strings "inf"/"+inf"/"infinity" for an unbounded end.
double bound_field(const json& obj, const std::string& key, const std::string& path,
                   const std::string& source) {
  if (!obj.contains(key)) field_error(source, path + key, "missing");
  const json& v = obj.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity" || s == "Infinity") {
      return std::numeric_limits<double>::infinity();
    }
  }
  field_error(source, path + key, "expected a number or \"inf\"");
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

DistSpecFile parse_spec_text(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ":" + std::to_string(line_of(text, e.byte)) +
                     ": malformed document (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ParseError(source + ": top level must be an object");

  DistSpecFile out;
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    field_error(source, "kind", "missing or not a string");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  if (doc.contains("declared_mean")) {
    out.declared_mean = number_field(doc, "declared_mean", "", source);
  }

  if (kind == "builtin") {
    out.kind = DistSpecFile::Kind::Builtin;
    if (!doc.contains("name") || !doc.at("name").is_string()) {
      field_error(source, "name", "missing or not a string");
    }
    out.name = doc.at("name").get<std::string>();
    if (doc.contains("params")) {
      const json& params = doc.at("params");
      if (!params.is_object()) field_error(source, "params", "expected an object");
      for (const auto& [key, value] : params.items()) {
        if (!value.is_number()) field_error(source, "params." + key, "expected a number");
        out.params[key] = value.get<double>();
      }
    }
    return out;
  }

  if (kind == "mrl_piecewise") {
    out.kind = DistSpecFile::Kind::MrlPiecewise;
    if (!doc.contains("segments") || !doc.at("segments").is_array()) {
      field_error(source, "segments", "missing or not an array");
    }
    const json& segments = doc.at("segments");
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const std::string path = "segments[" + std::to_string(i) + "].";
      const json& seg = segments[i];
      if (!seg.is_object()) field_error(source, path.substr(0, path.size() - 1), "expected an object");
      MrlSegment s;
      s.from = bound_field(seg, "from", path, source);
      s.to = bound_field(seg, "to", path, source);
      s.a = number_field(seg, "a", path, source);
      s.b = number_field(seg, "b", path, source);
      if (!seg.contains("kind") || !seg.at("kind").is_string()) {
        field_error(source, path + "kind", "missing or not a string");
      }
      const std::string sk = seg.at("kind").get<std::string>();
      if (sk == "affine") {
        s.kind = SegmentKind::Affine;
      } else if (sk == "reciprocal") {
        s.kind = SegmentKind::Reciprocal;
      } else {
        field_error(source, path + "kind", "expected \"affine\" or \"reciprocal\", got \"" + sk + "\"");
      }
      out.mrl.segments.push_back(s);
    }
    return out;
  }
  field_error(source, "kind", "expected \"builtin\" or \"mrl_piecewise\", got \"" + kind + "\"");
}

DistSpecFile read_spec_file(const std::filesystem::path& path) {
  return parse_spec_text(read_text_file(path), path.string());
}

LifeDistribution to_distribution(const DistSpecFile& spec) {
  std::optional<LifeDistribution> d;
  if (spec.kind == DistSpecFile::Kind::Builtin) {
    d.emplace(catalog(spec.name, spec.params));
  } else {
    const MrlValidityReport report = validate_mrl(spec.mrl);
    if (!report.valid) throw ValidationError(report.summary());
    d.emplace(from_mrl(spec.mrl));
  }
  if (spec.declared_mean) {
    const double computed = mean_of(*d);
    if (std::abs(computed - *spec.declared_mean) > 1e-6 * std::abs(computed)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "declared_mean " << *spec.declared_mean << " disagrees with computed mean "
          << computed;
      throw ValidationError(msg.str());
    }
  }
  return *d;
}

LifeDistribution parse_spec(const std::filesystem::path& path) {
  return to_distribution(read_spec_file(path));
}

}  // namespace agewise
