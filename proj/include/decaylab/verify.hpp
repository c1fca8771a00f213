#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace decaylab {

struct CriterionResult {
  std::string id;    // "AC-1"
  std::string name;  // suite name
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Scratch space for runs that go through the file layer.
  std::filesystem::path scratch = std::filesystem::temp_directory_path() / "decaylab-verify";
  /// Progress messages; null for silence.
  std::ostream* log = nullptr;
};

/// propagator, character, linear, qg-sharp, qg-gap, compressible, sobolev,
/// energy, infrastructure.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument on
/// an unknown name.
std::vector<CriterionResult> run_suite(const std::string& name, const VerifyOptions& opt = {});

/// "AC-1 PASS propagator (0.12 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace decaylab
