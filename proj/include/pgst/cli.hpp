#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgst/graph.hpp"

namespace pgst::cli {

inline constexpr int kExitProvenYes = 0;
inline constexpr int kExitRefutedNo = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitRuntimeError = 3;
inline constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::optional<int> hypercube;
  /// Explicit --m; unset with m_auto false means unit weights.
  std::optional<int> m;
  bool m_auto = false;
  std::optional<std::string> file;
  std::optional<Vertex> a;
  std::optional<Vertex> b;
  std::int64_t horizon = 1000;
  int bound = 6;
  std::optional<std::string> out;
  /// "json" or "csv"; empty selects the command's default.
  std::string format;
};

/// Throws UsageError on an inconsistent configuration.
void validate(const RunConfig& config);

int cmd_certify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) and dispatches. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgst::cli
