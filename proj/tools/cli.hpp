#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sucs/serialize.hpp"

namespace sucs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// Runs one command line (without the program name). Data or the output path
// goes to `out`, the human summary to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Verification suites; each returns {"suite", "checks": [...], "pass"} and
// throws std::invalid_argument for unsupported parameters.
json verify_algebra(int n);
json verify_completeness(int n, std::uint64_t samples, std::uint64_t seed, std::size_t workers);
json verify_propagator(int n, std::uint64_t samples, std::uint64_t seed, std::size_t workers);
json verify_classical_limit(int n, std::uint64_t seed, std::size_t workers);

}  // namespace sucs::cli
