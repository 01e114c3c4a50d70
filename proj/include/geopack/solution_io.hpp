#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "geopack/models.hpp"

namespace geopack {

inline constexpr int kSolutionSchemaVersion = 1;
inline constexpr const char* kToolVersion = "geopack 1.0.0";

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverMeta {
  std::uint64_t seed = 0;
  int restarts = 0;
  double wall_time = 0.0;
  std::string tool_version = kToolVersion;
};

// On-disk solution: the structured configuration plus the certified value and
// its 5-decimal reported form. Coordinates round-trip losslessly.
struct SolutionFile {
  int schema_version = kSolutionSchemaVersion;
  ModelSpec spec;
  AnyConfig config;
  double certified_objective = 0.0;
  std::string reported_value;
  SolverMeta meta;
};

std::string solution_to_json(const SolutionFile& sol);
SolutionFile solution_from_json(const std::string& text);  // throws SchemaError
void save_solution(const SolutionFile& sol, const std::string& path);
SolutionFile load_solution(const std::string& path);

}  // namespace geopack
