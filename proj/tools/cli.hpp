#pragma once

#include <iosfwd>
#include <string>

#include "loewner/funcs.hpp"
#include "loewner/io.hpp"

namespace loewner::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kCounterexample = 2;  // only with --expect-hold
inline constexpr int kReplayMismatch = 3;

/// Presets ("power:0.5", "moebius-monotone:0.3", "piecewise-quad-linear",
/// "affine:1,2", "constant:3", "identity") or an inline JSON descriptor.
FunctionDescriptor parse_function_spec(const std::string& spec);
Interval parse_interval(const std::string& spec);  // "lo,hi", ends may be inf

struct Outcome {
  Json result;
  bool counterexample = false;
};

/// Runs the command described by a RunConfig object (as embedded in reports).
Outcome execute(const Json& config, unsigned jobs = 1);

/// {"schema": 1, "config": ..., "result": ...}
Json make_report(const Json& config, const Outcome& outcome);
std::string render(const Json& report, const std::string& format);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loewner::cli
