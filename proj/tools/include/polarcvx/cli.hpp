#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace polarcvx::cli {

inline constexpr const char* kToolVersion = "polarcvx 0.3.0";

enum ExitCode : int {
  kPass = 0,
  kBoundViolated = 1,
  kInputError = 2,
  kUnsupported = 3,
  kNotIntegrable = 4,
};

struct TransformArgs {
  std::string spec_path;
  std::string which = "polar";  // polar | legendre
  std::string out_path;         // empty: stdout
};

struct ProductArgs {
  std::string spec_path;
  std::string out_path;
  std::string csv_path;
  double c = 0.5;
  std::uint64_t seed = 0;
  double tol = 1e-3;
};

struct VerifyArgs {
  std::string spec_path;
  std::string out_path;
  std::string csv_path;
  std::vector<double> s_grid{0.25, 0.5, 1, 2, 4};
  std::vector<double> t_grid{0.25, 0.5, 1, 2, 4};
  std::uint64_t seed = 0;
};

struct ConstantsArgs {
  std::string out_path;
  std::string csv_path;
};

// Each command writes its report and returns an ExitCode; diagnostics go to
// `diag`.
int cmd_transform(const TransformArgs& args, std::ostream& diag);
int cmd_product(const ProductArgs& args, std::ostream& diag);
int cmd_verify(const VerifyArgs& args, std::ostream& diag);
int cmd_constants(const ConstantsArgs& args, std::ostream& diag);

// "0.25,0.5,1" -> {0.25, 0.5, 1}; rejects empty, non-numeric and non-positive entries.
std::vector<double> parse_grid(std::string_view text);

int run(int argc, char** argv);

}  // namespace polarcvx::cli
