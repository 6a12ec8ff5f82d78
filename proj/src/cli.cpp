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

#include "bmattack/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "bmattack/errors.hpp"
#include "bmattack/reference.hpp"
#include "bmattack/statevec.hpp"

namespace bmattack::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kTopOutcomes = 10;
constexpr unsigned kMaxMatrixWidth = 10;
constexpr double kUnitarityTolerance = 1e-10;

std::string format_set(const std::vector<Encoding>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out + "}";
}

std::string format_list(const std::vector<Encoding>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

std::string register_bits(std::uint64_t value, unsigned width) {
  std::string out(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) out[i] = '1';
  }
  return out;
}

json params_json(const GeneratorSpec& spec) {
  json params = json::object();
  for (const auto& p : spec.parameters()) params[p.name] = p.value;
  return params;
}

// Top outcomes by probability, ties broken by the smaller outcome.
std::vector<std::pair<std::uint64_t, double>> top_outcomes(
    const std::map<std::uint64_t, double>& dist) {
  std::vector<std::pair<std::uint64_t, double>> ranked(dist.begin(), dist.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    const double pa = round12(a.second);
    const double pb = round12(b.second);
    return pa != pb ? pa > pb : a.first < b.first;
  });
  if (ranked.size() > kTopOutcomes) ranked.resize(kTopOutcomes);
  return ranked;
}

// Past states x_1..x_m in chronological order.
std::vector<std::pair<Encoding, Bit>> past_states(const RecoveredStates& rec) {
  std::vector<std::pair<Encoding, Bit>> past;
  for (std::size_t i = rec.backward.size(); i-- > 0;) {
    past.emplace_back(rec.backward[i], rec.backward_bits[i]);
  }
  return past;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string out(buf);
  if (out == "-0") out = "0";
  return out;
}

double round12(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

GeneratorSpec build_spec(const RunConfig& config) {
  const bool has_bbs = config.modulus.has_value() || config.j.has_value();
  const bool has_kaliski = config.prime.has_value() || config.c.has_value() ||
                           config.qx.has_value() || config.qy.has_value();
  if (config.kind == GeneratorKind::kBbs) {
    if (has_kaliski) throw ParameterError("kaliski parameters given for --gen bbs");
    if (!config.modulus || !config.j) throw ParameterError("bbs needs --modulus and --j");
    return bbs_spec(BbsParams{*config.modulus, *config.j, std::nullopt});
  }
  if (has_bbs) throw ParameterError("bbs parameters given for --gen kaliski");
  if (!config.prime || !config.c) throw ParameterError("kaliski needs --prime and --c");
  if (config.qx.has_value() != config.qy.has_value()) {
    throw ParameterError("--qx and --qy must be given together");
  }
  const CurveParams curve{*config.prime, *config.c};
  curve.validate();
  const EcPoint generator =
      config.qx ? EcPoint::affine(*config.qx, *config.qy) : default_generator(curve);
  return kaliski_spec(curve, generator, config.encoding);
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
  const auto spec = build_spec(config);
  if (!config.seed_state) throw ParameterError("generate needs --seed-state");
  const auto seq = generate_bits(spec, static_cast<Encoding>(*config.seed_state), config.steps);
  const auto bits = format_bits(seq.bits);
  switch (config.format) {
    case OutputFormat::kJson: {
      json doc{{"generator", spec.name()},
               {"params", params_json(spec)},
               {"seed", *config.seed_state},
               {"states", seq.states},
               {"bits", bits}};
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv:
      out << "step,state,bit\n";
      for (std::size_t i = 0; i < seq.states.size(); ++i) {
        out << i + 1 << ',' << seq.states[i] << ',' << int{seq.bits[i]} << '\n';
      }
      break;
    case OutputFormat::kText:
      out << "generator: " << spec.name() << '\n'
          << "seed: " << *config.seed_state << '\n'
          << "states: " << format_list(seq.states) << '\n'
          << "bits: " << bits << '\n';
      break;
  }
  return kExitOk;
}

namespace {

json report_json(const AttackReport& report, std::uint64_t rng_seed) {
  const auto& plan = report.plan;
  const auto& spec = plan.spec;
  json distribution = json::array();
  for (const auto& [outcome, p] : top_outcomes(report.distribution)) {
    distribution.push_back({{"outcome", outcome}, {"probability", round12(p)}});
  }
  json past = json::array();
  for (const auto& [state, bit] : past_states(report.recovered)) {
    past.push_back({{"state", state}, {"bit", bit}, {"label", spec.label(state)}});
  }
  json future = json::array();
  for (std::size_t i = 0; i < report.recovered.forward.size(); ++i) {
    const auto state = report.recovered.forward[i];
    future.push_back(
        {{"state", state}, {"bit", report.recovered.forward_bits[i]}, {"label", spec.label(state)}});
  }
  json recovered{{"representative", report.recovered.representative},
                 {"representative_label", spec.label(report.recovered.representative)},
                 {"past", past},
                 {"future", future}};
  return json{{"generator", spec.name()},
              {"params", params_json(spec)},
              {"bits", format_bits(plan.observed_bits)},
              {"n_qubits", plan.n},
              {"m", plan.m},
              {"k", plan.k},
              {"theta", round12(plan.theta)},
              {"predicted_success", round12(plan.predicted_success)},
              {"assumed_solutions", plan.assumed_solutions},
              {"distribution", distribution},
              {"top_outcome", report.top_outcome},
              {"top_probability", round12(report.top_probability)},
              {"sampled_outcome", report.sampled_outcome},
              {"rng_seed", rng_seed},
              {"classical_seeds", report.classical_seeds},
              {"recovered_states", recovered},
              {"agreement", report.agreement}};
}

void report_text(const AttackReport& report, std::ostream& out) {
  const auto& plan = report.plan;
  const auto& spec = plan.spec;
  out << "generator: " << spec.name();
  for (const auto& p : spec.parameters()) out << ' ' << p.name << '=' << p.value;
  out << '\n'
      << "bits: " << format_bits(plan.observed_bits) << '\n'
      << "n: " << plan.n << '\n'
      << "m: " << plan.m << '\n'
      << "k: " << plan.k << '\n'
      << "theta: " << format_number(plan.theta) << '\n'
      << "predicted_success: " << format_number(plan.predicted_success) << '\n'
      << "assumed_solutions: " << plan.assumed_solutions << '\n'
      << "distribution:\n";
  for (const auto& [outcome, p] : top_outcomes(report.distribution)) {
    out << "  " << outcome << ' ' << spec.label(static_cast<Encoding>(outcome)) << ' '
        << format_number(p) << '\n';
  }
  out << "top_outcome: " << report.top_outcome << ' ' << spec.label(report.top_outcome) << '\n'
      << "top_probability: " << format_number(report.top_probability) << '\n'
      << "sampled_outcome: " << report.sampled_outcome << '\n'
      << "classical_seeds: " << format_set(report.classical_seeds) << '\n'
      << "past:";
  for (const auto& [state, bit] : past_states(report.recovered)) {
    out << ' ' << state << '/' << int{bit};
  }
  out << "\nfuture:";
  for (std::size_t i = 0; i < report.recovered.forward.size(); ++i) {
    out << ' ' << report.recovered.forward[i] << '/' << int{report.recovered.forward_bits[i]};
  }
  out << "\nagreement: " << (report.agreement ? "true" : "false") << '\n';
}

void report_csv(const AttackReport& report, std::ostream& out) {
  const auto& plan = report.plan;
  out << "field,value\n"
      << "generator," << plan.spec.name() << '\n';
  for (const auto& p : plan.spec.parameters()) out << "params." << p.name << ',' << p.value << '\n';
  out << "bits," << format_bits(plan.observed_bits) << '\n'
      << "n_qubits," << plan.n << '\n'
      << "m," << plan.m << '\n'
      << "k," << plan.k << '\n'
      << "theta," << format_number(plan.theta) << '\n'
      << "predicted_success," << format_number(plan.predicted_success) << '\n'
      << "assumed_solutions," << plan.assumed_solutions << '\n';
  for (const auto& [outcome, p] : top_outcomes(report.distribution)) {
    out << "distribution." << outcome << ',' << format_number(p) << '\n';
  }
  out << "top_outcome," << report.top_outcome << '\n'
      << "top_probability," << format_number(report.top_probability) << '\n'
      << "sampled_outcome," << report.sampled_outcome << '\n';
  for (const auto seed : report.classical_seeds) out << "classical_seed," << seed << '\n';
  out << "representative," << report.recovered.representative << '\n';
  for (const auto& [state, bit] : past_states(report.recovered)) {
    out << "past," << state << ':' << int{bit} << '\n';
  }
  for (std::size_t i = 0; i < report.recovered.forward.size(); ++i) {
    out << "future," << report.recovered.forward[i] << ':'
        << int{report.recovered.forward_bits[i]} << '\n';
  }
  out << "agreement," << (report.agreement ? "true" : "false") << '\n';
}

AttackReport run_attack(const RunConfig& config) {
  const auto spec = build_spec(config);
  const auto bits = parse_bits(config.bits);
  return execute_attack(spec, bits, config.rng_seed,
                        PlanOptions{config.assumed_solutions, kDefaultQubitCap});
}

}  // namespace

int cmd_attack(const RunConfig& config, std::ostream& out) {
  const auto report = run_attack(config);
  switch (config.format) {
    case OutputFormat::kJson:
      out << report_json(report, config.rng_seed).dump(2) << '\n';
      break;
    case OutputFormat::kCsv:
      report_csv(report, out);
      break;
    case OutputFormat::kText:
      report_text(report, out);
      break;
  }
  return report.agreement ? kExitOk : kExitDisagreement;
}

void write_trace(const AttackTrace& trace, std::ostream& out) {
  auto component = [](double v) { return format_number(std::abs(v) < 1e-13 ? 0.0 : v); };
  for (const auto& snap : trace.snapshots) {
    out << snap.label << '\n';
    for (const auto& e : snap.entries) {
      out << "domain=" << e.domain << " bits=" << register_bits(e.bits, trace.m)
          << " ancilla=" << e.ancilla << " amp=" << component(e.amplitude.real()) << ','
          << component(e.amplitude.imag()) << '\n';
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < trace.candidates.size(); ++i) {
    out << 'X' << i + 1 << '=' << format_set(trace.candidates[i]) << '\n';
  }
  for (std::size_t i = 0; i < trace.marked_register.size(); ++i) {
    out << "marked" << i + 1 << '=' << format_set(trace.marked_register[i]) << '\n';
  }
}

int cmd_trace(const RunConfig& config, std::ostream& out) {
  const auto report = run_attack(config);
  if (!config.trace_out) {
    write_trace(report.trace, out);
    return kExitOk;
  }
  std::ofstream file(*config.trace_out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open trace file " + *config.trace_out);
  write_trace(report.trace, file);
  file.flush();
  if (!file) throw IoError("failed writing trace file " + *config.trace_out);
  out << "trace: " << *config.trace_out << " (" << report.trace.snapshots.size()
      << " snapshots)\n";
  return kExitOk;
}

int cmd_bruteforce(const RunConfig& config, std::ostream& out) {
  const auto spec = build_spec(config);
  const auto bits = parse_bits(config.bits);
  const auto start = std::chrono::steady_clock::now();
  const auto seeds = consistent_seeds_bruteforce(spec, bits);
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  switch (config.format) {
    case OutputFormat::kJson: {
      json doc{{"generator", spec.name()},
               {"params", params_json(spec)},
               {"bits", config.bits},
               {"seeds", seeds},
               {"elapsed_ms", round12(elapsed_ms)}};
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv:
      out << "seed\n";
      for (const auto s : seeds) out << s << '\n';
      break;
    case OutputFormat::kText:
      out << "seeds: " << format_set(seeds) << '\n'
          << "elapsed_ms: " << format_number(elapsed_ms) << '\n';
      break;
  }
  return kExitOk;
}

namespace {

struct GateCheck {
  std::string name;
  std::size_t dimension;
  double deviation;
  std::optional<bool> reference_match;
};

template <std::size_t N>
bool matches_reference(const GateMatrix& m, const std::array<std::array<std::uint8_t, N>, N>& ref) {
  if (m.dimension() != N) return false;
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      if (m(r, c) != Amplitude(ref[r][c], 0.0)) return false;
    }
  }
  return true;
}

bool is_reference_kaliski(const RunConfig& config, const GeneratorSpec& spec) {
  if (config.kind != GeneratorKind::kKaliski || config.encoding != PointEncoding::kListed) {
    return false;
  }
  std::map<std::string, std::int64_t> params;
  for (const auto& p : spec.parameters()) params[p.name] = p.value;
  return params["p"] == 5 && params["c"] == 1 && params["qx"] == 2 && params["qy"] == 2;
}

}  // namespace

int cmd_verify_gates(const RunConfig& config, std::ostream& out) {
  const auto spec = build_spec(config);
  if (spec.width() > kMaxMatrixWidth) {
    throw ResourceError("explicit gate matrices are limited to " +
                        std::to_string(kMaxMatrixWidth) + " domain qubits");
  }
  const bool reference = is_reference_kaliski(config, spec);
  const std::string flip = config.kind == GeneratorKind::kKaliski ? "lambda" : "delta";

  std::vector<GateCheck> checks;
  const auto rho = gate_matrix_from_table(spec.permutation());
  std::optional<bool> rho_match;
  if (reference) {
    rho_match = matches_reference(
        gate_matrix_from_table(spec.permutation(), MatrixConvention::kRowMapping),
        reference::kKaliskiRho);
  }
  checks.push_back({"rho", rho.dimension(), rho.unitarity_deviation(), rho_match});
  for (const Bit bit : {Bit{0}, Bit{1}}) {
    const auto gate = gate_matrix_from_predicate(marked_for_bit(spec, bit));
    std::optional<bool> match;
    if (reference && bit == 0) match = matches_reference(gate, reference::kKaliskiLambda0);
    checks.push_back({flip + std::to_string(bit), gate.dimension(), gate.unitarity_deviation(),
                      match});
  }

  bool all_ok = true;
  for (const auto& c : checks) {
    all_ok = all_ok && c.deviation <= kUnitarityTolerance && c.reference_match.value_or(true);
  }

  switch (config.format) {
    case OutputFormat::kJson: {
      json gates = json::array();
      for (const auto& c : checks) {
        json g{{"name", c.name},
               {"dimension", c.dimension},
               {"max_deviation", round12(c.deviation)},
               {"unitary", c.deviation <= kUnitarityTolerance}};
        if (c.reference_match) g["reference_match"] = *c.reference_match;
        gates.push_back(std::move(g));
      }
      out << json{{"generator", spec.name()},
                  {"params", params_json(spec)},
                  {"gates", gates},
                  {"ok", all_ok}}
                 .dump(2)
          << '\n';
      break;
    }
    case OutputFormat::kCsv:
      out << "gate,dimension,max_deviation,unitary,reference_match\n";
      for (const auto& c : checks) {
        out << c.name << ',' << c.dimension << ',' << format_number(c.deviation) << ','
            << (c.deviation <= kUnitarityTolerance ? "true" : "false") << ','
            << (c.reference_match ? (*c.reference_match ? "true" : "false") : "") << '\n';
      }
      break;
    case OutputFormat::kText:
      for (const auto& c : checks) {
        out << c.name << ": " << c.dimension << 'x' << c.dimension
            << " max_deviation=" << format_number(c.deviation)
            << (c.deviation <= kUnitarityTolerance ? " unitary" : " NOT-UNITARY");
        if (c.reference_match) {
          out << (*c.reference_match ? " matches-reference" : " differs-from-reference");
        }
        out << '\n';
      }
      out << (all_ok ? "all gates pass\n" : "gate verification FAILED\n");
      break;
  }
  return all_ok ? kExitOk : kExitParameter;
}

int run_command(std::string_view command, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  try {
    if (command == "generate") return cmd_generate(config, out);
    if (command == "attack") return cmd_attack(config, out);
    if (command == "trace") return cmd_trace(config, out);
    if (command == "bruteforce") return cmd_bruteforce(config, out);
    if (command == "verify-gates") return cmd_verify_gates(config, out);
    err << "unknown command: " << command << '\n';
    return kExitParameter;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  }
}

}  // namespace bmattack::cli
