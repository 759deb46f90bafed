#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kplane/parallel.hpp"

namespace kplane {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< worst observed value of the checked quantity
  double tolerance = 0.0;  ///< bound it was compared against
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000000;
  std::size_t grid = 512;
  std::size_t iters = 200;
  Exec exec = Exec::parallel;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// rearrange, lorentz, symmetry, drury, flow.
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Runs one suite, or every suite for "all". Unknown names raise DomainError.
VerifyReport run_suite(std::string_view suite, const VerifyOptions& options);

std::string report_json(const VerifyReport& report);

}  // namespace kplane
