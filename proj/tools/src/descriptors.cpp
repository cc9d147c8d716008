#include "mixphase/app/descriptors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mixphase::app {

using nlohmann::json;

void parse_error(const std::string& message) { throw CliError(ExitCode::Validation, "ParseError: " + message); }

void validation_error(const std::string& field, const std::string& message) {
  throw CliError(ExitCode::Validation, "ValidationError: " + field + ": " + message);
}

namespace {

double number_at(const json& value, const std::string& field) {
  if (!value.is_number()) validation_error(field, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) validation_error(field, "must be finite");
  return x;
}

Complex complex_at(const json& value, const std::string& field) {
  if (value.is_number()) return {number_at(value, field), 0.0};
  if (value.is_array() && value.size() == 2) {
    return {number_at(value[0], field + "[0]"), number_at(value[1], field + "[1]")};
  }
  validation_error(field, "expected a number or a [re, im] pair");
}

// Rows of entries for a generator, columns of entries for a basis.
ComplexMatrix square_at(const json& value, const std::string& field) {
  if (!value.is_array() || value.empty()) validation_error(field, "expected a non-empty array of arrays");
  const std::size_t n = value.size();
  ComplexMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string row_field = field + "[" + std::to_string(a) + "]";
    if (!value[a].is_array() || value[a].size() != n) {
      validation_error(row_field, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t b = 0; b < n; ++b) {
      m(a, b) = complex_at(value[a][b], row_field + "[" + std::to_string(b) + "]");
    }
  }
  return m;
}

}  // namespace

StateDescriptor parse_state(const json& doc) {
  if (!doc.is_object()) validation_error("state", "expected a JSON object");
  StateDescriptor out;
  if (!doc.contains("eigenvalues") || !doc["eigenvalues"].is_array() || doc["eigenvalues"].empty()) {
    validation_error("eigenvalues", "expected a non-empty array");
  }
  for (std::size_t k = 0; k < doc["eigenvalues"].size(); ++k) {
    out.eigenvalues.push_back(number_at(doc["eigenvalues"][k], "eigenvalues[" + std::to_string(k) + "]"));
  }
  const int n = static_cast<int>(out.eigenvalues.size());

  const json basis = doc.value("basis", json("computational"));
  if (basis.is_string()) {
    if (basis.get<std::string>() != "computational") validation_error("basis", "unknown basis name");
    out.basis = ComplexMatrix::Identity(n, n);
  } else if (basis.is_object() && basis.contains("columns")) {
    // Stored column by column; transpose the row-major reading.
    out.basis = square_at(basis["columns"], "basis.columns").transpose();
    if (out.basis.rows() != n) validation_error("basis.columns", "dimension differs from the eigenvalue count");
    if (!has_orthonormal_columns(out.basis, 1e-10)) validation_error("basis.columns", "columns are not orthonormal");
  } else {
    validation_error("basis", "expected \"computational\" or {\"columns\": [...]}");
  }

  if (doc.contains("pairing")) {
    const json& p = doc["pairing"];
    if (!p.is_array() || static_cast<int>(p.size()) != n) validation_error("pairing", "expected one index per eigenvalue");
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!p[k].is_number_integer()) validation_error("pairing[" + std::to_string(k) + "]", "expected an integer");
      const int image = p[k].get<int>();
      if (image < 1 || image > n) validation_error("pairing[" + std::to_string(k) + "]", "index out of range 1..N");
      out.pairing.push_back(image - 1);
    }
  }
  return out;
}

PathDescriptor parse_path(const json& doc, int default_steps) {
  if (!doc.is_object() || !doc.contains("segments") || !doc["segments"].is_array() || doc["segments"].empty()) {
    validation_error("segments", "expected a non-empty array");
  }
  PathDescriptor out;
  for (std::size_t s = 0; s < doc["segments"].size(); ++s) {
    const json& seg = doc["segments"][s];
    const std::string field = "segments[" + std::to_string(s) + "]";
    if (!seg.is_object()) validation_error(field, "expected an object");
    if (!seg.contains("angle")) validation_error(field + ".angle", "missing");
    const double angle = number_at(seg["angle"], field + ".angle");
    int steps = default_steps;
    if (seg.contains("steps")) {
      if (!seg["steps"].is_number_integer() || seg["steps"].get<int>() < 1) {
        validation_error(field + ".steps", "expected an integer >= 1");
      }
      steps = seg["steps"].get<int>();
    }
    if (seg.contains("axis") == seg.contains("generator")) {
      validation_error(field, "give exactly one of \"axis\" or \"generator\"");
    }
    if (seg.contains("axis")) {
      const json& axis = seg["axis"];
      if (!axis.is_array() || axis.size() != 3) validation_error(field + ".axis", "expected [x, y, z]");
      const std::array<double, 3> v{number_at(axis[0], field + ".axis[0]"), number_at(axis[1], field + ".axis[1]"),
                                    number_at(axis[2], field + ".axis[2]")};
      if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) validation_error(field + ".axis", "must be nonzero");
      out.segments.push_back(rotation_segment(v, angle, steps));
    } else {
      ComplexMatrix h = square_at(seg["generator"], field + ".generator");
      if (!is_hermitian(h, 1e-10 * std::max(1.0, max_abs(h)))) validation_error(field + ".generator", "not Hermitian");
      if (angle < 0.0) {
        h = -h;
      }
      out.segments.push_back(PathSegment{h, std::abs(angle), steps});
    }
  }
  const Eigen::Index n = out.segments.front().generator.rows();
  for (std::size_t s = 0; s < out.segments.size(); ++s) {
    if (out.segments[s].generator.rows() != n) {
      validation_error("segments[" + std::to_string(s) + "]", "dimension differs from the first segment");
    }
  }
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) validation_error(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

std::vector<int> parse_index_list(const std::string& text, const std::string& field) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v - 1);
    } catch (const std::exception&) {
      validation_error(field, "expected comma-separated 1-based indices, got \"" + text + "\"");
    }
  }
  if (out.empty()) validation_error(field, "empty index list");
  return out;
}

}  // namespace mixphase::app
