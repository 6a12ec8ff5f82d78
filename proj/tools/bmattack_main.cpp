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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bmattack/cli.hpp"

namespace {

using bmattack::cli::GeneratorKind;
using bmattack::cli::OutputFormat;
using bmattack::cli::RunConfig;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum permanent-compromise attack simulator for Blum-Micali generators"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file; flags override it");

  RunConfig config;
  const std::map<std::string, GeneratorKind> kinds{{"bbs", GeneratorKind::kBbs},
                                                   {"kaliski", GeneratorKind::kKaliski}};
  const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::kText},
                                                    {"json", OutputFormat::kJson},
                                                    {"csv", OutputFormat::kCsv}};
  const std::map<std::string, bmattack::PointEncoding> encodings{
      {"listed", bmattack::PointEncoding::kListed},
      {"multiples", bmattack::PointEncoding::kMultiples}};

  app.add_option("--gen", config.kind, "Generator: bbs | kaliski")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case))
      ->required();
  app.add_option("--modulus", config.modulus, "BBS modulus M");
  app.add_option("--j", config.j, "BBS hard-core bit position (1 = most significant)");
  app.add_option("--prime", config.prime, "Kaliski field prime p (p mod 3 = 2)");
  app.add_option("--c", config.c, "Kaliski curve coefficient c");
  app.add_option("--qx", config.qx, "Kaliski generator point x");
  app.add_option("--qy", config.qy, "Kaliski generator point y");
  app.add_option("--encoding", config.encoding, "Kaliski point encoding: listed | multiples")
      ->transform(CLI::CheckedTransformer(encodings, CLI::ignore_case));
  app.add_option("--bits", config.bits, "Observed output bits, e.g. 10");
  app.add_option("--seed-state", config.seed_state, "Internal state x0 for generate");
  app.add_option("--steps", config.steps, "Number of generator steps");
  app.add_option("--rng-seed", config.rng_seed, "Seed for the sampled measurement");
  app.add_option("--assumed-solutions", config.assumed_solutions,
                 "Solution count used to size the Grover iterations");
  app.add_option("--format", config.format, "Output format: text | json | csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--trace-out", config.trace_out, "Write the trace to this file");

  app.add_subcommand("generate", "Run the generator classically from --seed-state");
  app.add_subcommand("attack", "Plan, walk, amplify and report");
  app.add_subcommand("trace", "Write the labeled intermediate states");
  app.add_subcommand("bruteforce", "Classical search for seeds consistent with --bits");
  app.add_subcommand("verify-gates", "Build explicit gate matrices and check unitarity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bmattack::cli::kExitParameter;
  }

  const auto* sub = app.get_subcommands().front();
  if ((sub->get_name() == "attack" || sub->get_name() == "trace" ||
       sub->get_name() == "bruteforce") &&
      config.bits.empty()) {
    std::cerr << "parameter error: --bits is required for " << sub->get_name() << '\n';
    return bmattack::cli::kExitParameter;
  }
  return bmattack::cli::run_command(sub->get_name(), config, std::cout, std::cerr);
}
