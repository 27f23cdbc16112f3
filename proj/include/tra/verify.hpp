#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tra {

/// One line of a property report. value is the worst deviation observed.
struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

enum class Suite { Polynomials, Weights, Tra, Physics, Residual, NewH, All };

std::string_view suite_name(Suite suite) noexcept;
std::optional<Suite> parse_suite(std::string_view name);

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  unsigned draws = 100;  // random parameter draws per family
};

std::vector<Check> run_checks(Suite suite, const VerifyOptions& options = {});

bool all_pass(const std::vector<Check>& checks);

}  // namespace tra
