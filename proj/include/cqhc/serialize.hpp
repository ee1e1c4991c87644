#pragma once

#include <string>

#include <json.hpp>

#include "cqhc/analysis.hpp"
#include "cqhc/decoder.hpp"
#include "cqhc/version.hpp"

namespace cqhc {

using json = nlohmann::json;

// Hex encoding of a bit vector: bit i carries value 2^i (so qubit 1 is the
// least significant bit), printed most significant nibble first with
// ceil(n/4) digits.
inline std::string to_hex(const BitVector& v) {
  static const char* digits = "0123456789abcdef";
  const std::size_t nibbles = (v.size() + 3) / 4;
  std::vector<unsigned> nib(nibbles, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.test(i)) nib[i / 4] |= 1u << (i % 4);
  std::string s(nibbles, '0');
  for (std::size_t j = 0; j < nibbles; ++j) s[nibbles - 1 - j] = digits[nib[j]];
  return s;
}

inline BitVector from_hex(const std::string& s, std::size_t n) {
  BitVector v(n);
  const std::size_t nibbles = s.size();
  for (std::size_t j = 0; j < nibbles; ++j) {
    char c = s[nibbles - 1 - j];
    unsigned val;
    if (c >= '0' && c <= '9')
      val = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      val = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      val = static_cast<unsigned>(c - 'A' + 10);
    else
      throw std::invalid_argument("from_hex: bad digit");
    for (unsigned b = 0; b < 4; ++b)
      if ((val >> b) & 1) v.set(j * 4 + b);
  }
  return v;
}

inline json code_to_json(const HammingCode& code) {
  json j;
  j["r"] = code.r();
  j["n"] = code.n();
  j["k"] = code.k();
  json h = json::array();
  for (std::size_t row = 0; row < code.check_matrix().rows(); ++row)
    h.push_back(to_hex(code.check_matrix().row(row)));
  j["H"] = h;
  json lx = json::array(), lz = json::array();
  for (const auto& c : code.logical_x()) lx.push_back(to_hex(c));
  for (const auto& c : code.logical_z()) lz.push_back(to_hex(c));
  j["L_X"] = lx;
  j["L_Z"] = lz;
  return j;
}

inline json concat_to_json(const ConcatCode& code) {
  json j;
  j["profile"] = code.profile().str();
  j["levels"] = code.levels();
  j["N"] = code.qubits();
  j["K"] = code.logical_qubits();
  j["D"] = code.distance();
  json per_level = json::array();
  for (int l = 1; l <= code.levels(); ++l) {
    json lvl;
    lvl["level"] = l;
    lvl["n"] = code.n(l);
    lvl["k"] = code.k(l);
    lvl["r"] = code.code_at(l).r();
    lvl["N_l"] = code.N(l);
    lvl["K_l"] = code.K(l);
    per_level.push_back(lvl);
  }
  j["level_parameters"] = per_level;
  json codes = json::object();
  for (int l = 1; l <= code.levels(); ++l) {
    std::string key = std::to_string(code.code_at(l).r());
    if (!codes.contains(key)) codes[key] = code_to_json(code.code_at(l));
  }
  j["local_codes"] = codes;
  j["version"] = kVersion;
  return j;
}

inline json trace_to_json(const DecodeTrace& trace) {
  json j;
  json syn = json::array();
  for (const auto& s : trace.syndromes)
    syn.push_back({{"level", s.level}, {"block", s.block}, {"lambda", s.lam}, {"qubit", s.qubit}});
  j["syndromes"] = syn;
  json tr = json::array();
  for (const auto& t : trace.transfers)
    tr.push_back({{"level", t.level},
                  {"block", t.block},
                  {"source", t.src},
                  {"pair", {t.a, t.b}},
                  {"cost_before", {t.cost_before[0], t.cost_before[1], t.cost_before[2]}},
                  {"cost_after", {t.cost_after[0], t.cost_after[1], t.cost_after[2]}},
                  {"accepted", t.accepted}});
  j["transfers"] = tr;
  json cm = json::array();
  for (const auto& c : trace.commits)
    cm.push_back({{"level", c.level}, {"block", c.block}, {"cost", c.cost}});
  j["commits"] = cm;
  j["recovery_weight"] = trace.recovery_weight;
  j["failure"] = trace.failure;
  return j;
}

inline json sweep_config_to_json(const SweepConfig& config) {
  json j;
  j["profile"] = config.profile.str();
  j["decoder"] = decoder_name(config.decoder);
  j["p"] = config.ps;
  j["min_failures"] = config.min_failures;
  j["max_trials"] = config.max_trials;
  j["max_wall_s"] = config.max_wall_s;
  j["seed"] = config.seed;
  j["jobs"] = config.jobs;
  j["batch"] = config.batch;
  j["version"] = kVersion;
  return j;
}

inline json point_to_json(const PointEstimate& pt) {
  return json{{"p", pt.p},           {"trials", pt.trials},   {"failures", pt.failures},
              {"p_l", pt.p_l},       {"stderr", pt.stderr_},  {"wall_s", pt.wall_s},
              {"low_confidence", pt.low_confidence}};
}

inline json fit_to_json(const FitResult& fit) {
  json j;
  j["alpha"] = fit.alpha;
  j["alpha_stderr"] = fit.alpha_stderr;
  j["ln_a"] = fit.ln_a;
  j["ln_a_stderr"] = fit.ln_a_stderr;
  j["residual_norm"] = fit.residual_norm;
  j["window"] = {{"p_lo", fit.window.p_lo}, {"p_hi", fit.window.p_hi}};
  j["points_used"] = fit.points_used;
  j["excluded_zero_failure"] = fit.excluded_zero_failure;
  return j;
}

inline json threshold_to_json(const ThresholdResult& th) {
  return json{{"p_th", th.p_th}, {"bracket_lo", th.bracket_lo}, {"bracket_hi", th.bracket_hi}};
}

inline json compare_to_json(const CompareReport& rep) {
  auto side = [](const CompareSide& s) {
    return json{{"label", s.label},         {"p_th", s.p_th},
                {"alpha", s.alpha},         {"amplitude", s.amplitude},
                {"blocks", s.blocks},       {"physical_qubits", s.physical_qubits}};
  };
  json j;
  j["p"] = rep.p;
  j["a"] = side(rep.a);
  j["b"] = side(rep.b);
  j["a"]["aggregate_p_l"] = rep.rate_a;
  j["b"]["aggregate_p_l"] = rep.rate_b;
  j["ratio_b_over_a"] = rep.ratio;
  return j;
}

}  // namespace cqhc
