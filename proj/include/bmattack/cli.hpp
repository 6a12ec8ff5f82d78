// Copyright 2026 The bmattack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "bmattack/attack.hpp"
#include "bmattack/generators.hpp"

namespace bmattack::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParameter = 2,
  kExitDisagreement = 3,
  kExitResource = 4,
  kExitIo = 5,
};

enum class GeneratorKind { kBbs, kKaliski };
enum class OutputFormat { kText, kJson, kCsv };

struct RunConfig {
  GeneratorKind kind = GeneratorKind::kBbs;

  // bbs block
  std::optional<std::uint64_t> modulus;
  std::optional<unsigned> j;

  // kaliski block
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> c;
  std::optional<std::uint64_t> qx;
  std::optional<std::uint64_t> qy;
  PointEncoding encoding = PointEncoding::kListed;

  std::string bits;
  std::optional<std::uint64_t> seed_state;
  std::size_t steps = 0;
  std::uint64_t rng_seed = 0;
  std::uint64_t assumed_solutions = 1;
  OutputFormat format = OutputFormat::kText;
  std::optional<std::string> trace_out;
};

/// Checks that exactly the selected generator's parameter block is present
/// and builds the spec. Kaliski without --qx/--qy uses the first affine point
/// of order p + 1.
GeneratorSpec build_spec(const RunConfig& config);

/// "%.12g" with -0 normalized to 0.
std::string format_number(double value);
/// The double nearest to format_number(value).
double round12(double value);

int cmd_generate(const RunConfig& config, std::ostream& out);
int cmd_attack(const RunConfig& config, std::ostream& out);
int cmd_trace(const RunConfig& config, std::ostream& out);
int cmd_bruteforce(const RunConfig& config, std::ostream& out);
int cmd_verify_gates(const RunConfig& config, std::ostream& out);

/// Dispatches `command` and maps exceptions onto exit codes, writing the
/// message to `err`.
int run_command(std::string_view command, const RunConfig& config, std::ostream& out,
                std::ostream& err);

/// Listing of every snapshot followed by the candidate sets.
void write_trace(const AttackTrace& trace, std::ostream& out);

}  // namespace bmattack::cli
