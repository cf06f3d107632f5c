#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "convexsmooth/smooth.hpp"

namespace convexsmooth::cli {

enum class Command { Certify, Smooth, Measure, Probe };

struct RunConfig {
  Command command = Command::Certify;
  std::filesystem::path input;
  std::filesystem::path output = ".";
  double epsilon = 0.05;  // relative to H^{n-1}(bd W); must lie in (0, 1/4) for smooth
  double delta = 0.0;     // <= 0 selects 1e-3 R^2
  BlendOrder order = BlendOrder::C2;
  int resolution = 0;     // mesh resolution; for certify, the sample count. <= 0 selects defaults
  std::uint64_t seed = 1;
  int scan = 64;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

/// Runs one command, writes `report.json` (plus mesh and body files for
/// smooth and measure) into config.output, and returns the exit code.
/// Diagnostics for input errors go to `err`.
int run(const RunConfig& config, std::ostream& err);
int run(const RunConfig& config);

Command parse_command(const std::string& name);

}  // namespace convexsmooth::cli
