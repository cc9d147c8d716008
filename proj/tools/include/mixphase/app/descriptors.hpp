#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixphase/algebra.hpp"
#include "mixphase/transport.hpp"

namespace mixphase::app {

enum class ExitCode : int { Ok = 0, Validation = 1, Numeric = 2 };

/// Failure surfaced to the command line with its exit code.
class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

[[noreturn]] void parse_error(const std::string& message);
[[noreturn]] void validation_error(const std::string& field, const std::string& message);

/// { "eigenvalues": [...], "basis": "computational" | {"columns": [col, ...]},
///   "pairing": [1-based images] }. Each column is a list of entries, each
/// entry a number or a [re, im] pair.
struct StateDescriptor {
  std::vector<double> eigenvalues;
  ComplexMatrix basis;
  std::vector<int> pairing;  // 0-based; empty means cyclic shift
};

/// { "segments": [ { "axis": [x, y, z] | "generator": [[...], ...],
///                   "angle": real, "steps": int } ] }
/// An axis segment rotates the Bloch vector by `angle`; a generator segment
/// evolves with exp(-i H angle). `steps` defaults to `default_steps`.
struct PathDescriptor {
  std::vector<PathSegment> segments;
};

StateDescriptor parse_state(const nlohmann::json& doc);
PathDescriptor parse_path(const nlohmann::json& doc, int default_steps);

/// Reads and parses a JSON file; ParseError (exit 1) on failure.
nlohmann::json load_json(const std::string& path);

/// "1,3,2" -> {0, 2, 1}.
std::vector<int> parse_index_list(const std::string& text, const std::string& field);

}  // namespace mixphase::app
