#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqhc/cqhc.hpp"
#include "cqhc/serialize.hpp"

namespace {

using cqhc::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CQHC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("CQHC_SEED is not a valid integer");
    }
  }
  return 0;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::invalid_argument("expected a comma-separated list, got '" + s + "'");
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoull(tok));
  }
  return out;
}

std::vector<std::array<int, 2>> parse_pairs(const std::string& s) {
  std::vector<std::array<int, 2>> pairs;
  std::stringstream ss(s);
  std::string level_tok;
  while (std::getline(ss, level_tok, 'x')) {
    auto comma = level_tok.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("expected per-level pairs like '1,2x1,2', got '" + s + "'");
    pairs.push_back({std::stoi(level_tok.substr(0, comma)),
                     std::stoi(level_tok.substr(comma + 1))});
  }
  return pairs;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << j.dump(2) << "\n";
  }
}

cqhc::FitWindow parse_window(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("expected a window like '0.008:0.02', got '" + s + "'");
  return cqhc::FitWindow{std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

std::vector<cqhc::PointEstimate> load_points(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return cqhc::read_points_csv(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concatenated quantum Hamming codes: construction, decoding, and benchmarks"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- code build ----------------------------------------------------------
  auto* code_cmd = app.add_subcommand("code", "code construction utilities");
  code_cmd->require_subcommand(1);
  auto* build_cmd = code_cmd->add_subcommand("build", "construct a code and dump it as JSON");
  static std::string build_profile, build_out;
  build_cmd->add_option("--profile", build_profile, "level profile, e.g. 15x15x31")->required();
  build_cmd->add_option("--out", build_out, "output file (stdout otherwise)");
  build_cmd->callback([&] {
    cqhc::ConcatCode code(cqhc::Profile::parse(build_profile));
    emit(cqhc::concat_to_json(code), build_out);
  });

  // ---- decode ---------------------------------------------------------------
  auto* decode_cmd = app.add_subcommand("decode", "decode a single error pattern");
  static std::string dec_profile, dec_decoder = "bidir", dec_error, dec_pairs, dec_out;
  static double dec_p = 0.0;
  static std::uint64_t dec_seed = default_seed(), dec_trial = 0;
  static bool dec_trace = false;
  decode_cmd->add_option("--profile", dec_profile, "level profile")->required();
  decode_cmd->add_option("--decoder", dec_decoder, "local|bidir")->capture_default_str();
  decode_cmd->add_option("--error", dec_error, "0-based flat qubit indices, e.g. 0,1,15,16");
  decode_cmd->add_option("--pairs", dec_pairs,
                         "structured pattern: per-level pairs, e.g. 1,2x1,2");
  decode_cmd->add_option("--p", dec_p, "sample the error at this rate instead");
  decode_cmd->add_option("--seed", dec_seed, "sampling seed (default CQHC_SEED or 0)");
  decode_cmd->add_option("--trial", dec_trial, "sampling trial index");
  decode_cmd->add_flag("--trace", dec_trace, "include the full decision trace");
  decode_cmd->add_option("--out", dec_out, "output file (stdout otherwise)");
  decode_cmd->callback([&] {
    cqhc::ConcatCode code(cqhc::Profile::parse(dec_profile));
    cqhc::BitVector err(code.qubits());
    if (!dec_error.empty()) {
      for (std::size_t q : parse_index_list(dec_error)) err.set(q);
    } else if (!dec_pairs.empty()) {
      err = cqhc::structured_failure_pattern(code, parse_pairs(dec_pairs));
    } else if (dec_p > 0.0) {
      cqhc::TrialRng rng(cqhc::TrialRng::trial_seed(dec_seed, 0, dec_trial));
      cqhc::sample_error(dec_p, err, rng);
    } else {
      throw std::invalid_argument("decode: provide --error, --pairs, or --p");
    }

    cqhc::DecodeTrace trace;
    cqhc::DecodeOutcome out = cqhc::run_decode(code, err, cqhc::parse_decoder(dec_decoder),
                                               dec_trace ? &trace : nullptr);
    json j;
    j["profile"] = code.profile().str();
    j["decoder"] = dec_decoder;
    if (dec_error.empty() && dec_pairs.empty() && dec_p > 0.0) {
      j["p"] = dec_p;
      j["seed"] = dec_seed;
      j["trial"] = dec_trial;
    }
    json errq = json::array();
    for (std::size_t q = err.find_first(); q < err.size(); q = err.find_next(q + 1))
      errq.push_back(q);
    j["error"] = errq;
    json recq = json::array();
    for (std::size_t q = out.recovery.find_first(); q < out.recovery.size();
         q = out.recovery.find_next(q + 1))
      recq.push_back(q);
    j["recovery"] = recq;
    j["recovery_weight"] = out.recovery_weight;
    j["failure"] = out.failure;
    j["version"] = cqhc::kVersion;
    if (dec_trace) j["trace"] = cqhc::trace_to_json(trace);
    emit(j, dec_out);
  });

  // ---- sweep ----------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo logical error rate sweep");
  static std::string sw_profile, sw_decoder = "bidir", sw_p, sw_out, sw_config;
  static long sw_min_failures = 300;
  static std::uint64_t sw_max_trials = 1'000'000'000, sw_seed = default_seed(), sw_batch = 512;
  static double sw_max_wall = 3600.0;
  static unsigned sw_jobs = 0;
  sweep_cmd->add_option("--config", sw_config,
                        "JSON config (the sweep sidecar format); flags override its values");
  auto* opt_profile = sweep_cmd->add_option("--profile", sw_profile, "level profile");
  auto* opt_decoder =
      sweep_cmd->add_option("--decoder", sw_decoder, "local|bidir")->capture_default_str();
  auto* opt_p = sweep_cmd->add_option("--p", sw_p, "comma-separated physical error rates");
  auto* opt_minf =
      sweep_cmd->add_option("--min-failures", sw_min_failures, "failures collected per point")
          ->capture_default_str();
  auto* opt_maxt = sweep_cmd->add_option("--max-trials", sw_max_trials, "hard trial cap per point")
                       ->capture_default_str();
  auto* opt_wall =
      sweep_cmd->add_option("--max-wall", sw_max_wall, "wall-clock guard per point, seconds")
          ->capture_default_str();
  auto* opt_seed =
      sweep_cmd->add_option("--seed", sw_seed, "master seed (default CQHC_SEED or 0)");
  auto* opt_jobs = sweep_cmd->add_option("--jobs", sw_jobs, "worker threads (0 = hardware)")
                       ->capture_default_str();
  auto* opt_batch =
      sweep_cmd->add_option("--batch", sw_batch, "trials per stopping check")
          ->capture_default_str();
  sweep_cmd->add_option("--out", sw_out, "CSV output file; JSON sidecar written alongside");
  sweep_cmd->callback([&] {
    cqhc::SweepConfig config;
    if (!sw_config.empty()) {
      std::ifstream f(sw_config);
      if (!f) throw std::runtime_error("cannot open config file '" + sw_config + "'");
      json j = json::parse(f);
      config.profile = cqhc::Profile::parse(j.at("profile").get<std::string>());
      config.decoder = cqhc::parse_decoder(j.at("decoder").get<std::string>());
      config.ps = j.at("p").get<std::vector<double>>();
      config.min_failures = j.value("min_failures", config.min_failures);
      config.max_trials = j.value("max_trials", config.max_trials);
      config.max_wall_s = j.value("max_wall_s", config.max_wall_s);
      config.seed = j.value("seed", config.seed);
      config.jobs = j.value("jobs", config.jobs);
      config.batch = j.value("batch", config.batch);
    } else if (opt_profile->count() == 0 || opt_p->count() == 0) {
      throw CLI::RequiredError("--profile and --p (or --config)");
    }
    if (opt_profile->count()) config.profile = cqhc::Profile::parse(sw_profile);
    if (opt_decoder->count()) config.decoder = cqhc::parse_decoder(sw_decoder);
    if (opt_p->count()) config.ps = parse_double_list(sw_p);
    if (opt_minf->count() || sw_config.empty()) config.min_failures = sw_min_failures;
    if (opt_maxt->count() || sw_config.empty()) config.max_trials = sw_max_trials;
    if (opt_wall->count() || sw_config.empty()) config.max_wall_s = sw_max_wall;
    if (opt_seed->count() || sw_config.empty()) config.seed = sw_seed;
    if (opt_jobs->count() || sw_config.empty()) config.jobs = sw_jobs;
    if (opt_batch->count() || sw_config.empty()) config.batch = sw_batch;
    cqhc::SweepRecord record = cqhc::run_sweep(config);
    if (sw_out.empty()) {
      cqhc::write_csv(std::cout, record);
    } else {
      std::ofstream f(sw_out);
      if (!f) throw std::runtime_error("cannot open output file '" + sw_out + "'");
      cqhc::write_csv(f, record);
      std::ofstream sidecar(sw_out + ".json");
      sidecar << cqhc::sweep_config_to_json(config).dump(2) << "\n";
    }
  });

  // ---- fit ------------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand("fit", "power-law fit of a sweep CSV");
  static std::string fit_input, fit_window, fit_out;
  static long fit_min_failures = 300;
  fit_cmd->add_option("--input", fit_input, "sweep CSV file")->required();
  fit_cmd->add_option("--window", fit_window, "fit window lo:hi (default: lowest full decade)");
  fit_cmd->add_option("--min-failures", fit_min_failures, "statistics cutoff for fit points")
      ->capture_default_str();
  fit_cmd->add_option("--out", fit_out, "output file (stdout otherwise)");
  fit_cmd->callback([&] {
    auto points = load_points(fit_input);
    cqhc::FitWindow window = fit_window.empty()
                                 ? cqhc::default_fit_window(points, fit_min_failures)
                                 : parse_window(fit_window);
    cqhc::FitResult fit = cqhc::fit_power_law(points, window, fit_min_failures);
    emit(cqhc::fit_to_json(fit), fit_out);
  });

  // ---- threshold -------------------------------------------------------------
  auto* th_cmd = app.add_subcommand("threshold", "crossing of two level curves");
  static std::string th_lo, th_hi, th_out;
  th_cmd->add_option("--lo", th_lo, "CSV of the lower concatenation level")->required();
  th_cmd->add_option("--hi", th_hi, "CSV of the higher concatenation level")->required();
  th_cmd->add_option("--out", th_out, "output file (stdout otherwise)");
  th_cmd->callback([&] {
    cqhc::ThresholdResult res = cqhc::estimate_threshold(load_points(th_lo), load_points(th_hi));
    emit(cqhc::threshold_to_json(res), th_out);
  });

  // ---- compare ----------------------------------------------------------------
  auto* cmp_cmd = app.add_subcommand(
      "compare", "extrapolated comparison of two configurations at equal logical capacity");
  static double cmp_p = 0.01;
  static cqhc::CompareSide side_a{"seven 3-level blocks, bidirectional", 0.0435, 15.3, 0.35, 7,
                                  7 * 3375};
  static cqhc::CompareSide side_b{"one 4-level block, local", 0.0156, 14.7, 0.12, 1, 50625};
  static std::string cmp_out;
  cmp_cmd->add_option("--p", cmp_p, "physical rate to extrapolate to")->capture_default_str();
  cmp_cmd->add_option("--pth-a", side_a.p_th, "threshold of side A")->capture_default_str();
  cmp_cmd->add_option("--alpha-a", side_a.alpha, "exponent of side A")->capture_default_str();
  cmp_cmd->add_option("--amp-a", side_a.amplitude, "amplitude of side A")->capture_default_str();
  cmp_cmd->add_option("--blocks-a", side_a.blocks, "independent blocks on side A")
      ->capture_default_str();
  cmp_cmd->add_option("--pth-b", side_b.p_th, "threshold of side B")->capture_default_str();
  cmp_cmd->add_option("--alpha-b", side_b.alpha, "exponent of side B")->capture_default_str();
  cmp_cmd->add_option("--amp-b", side_b.amplitude, "amplitude of side B")->capture_default_str();
  cmp_cmd->add_option("--blocks-b", side_b.blocks, "independent blocks on side B")
      ->capture_default_str();
  cmp_cmd->add_option("--out", cmp_out, "output file (stdout otherwise)");
  cmp_cmd->callback([&] {
    emit(cqhc::compare_to_json(cqhc::compare_sides(side_a, side_b, cmp_p)), cmp_out);
  });

  // ---- verify -----------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run the brute-force audit battery");
  static std::uint64_t verify_seed = 1234;
  verify_cmd->add_option("--seed", verify_seed, "seed for randomized cross-checks")
      ->capture_default_str();
  verify_cmd->callback([&] {
    bool all = true;
    for (const auto& line : cqhc::run_verification_battery(verify_seed)) {
      std::cout << (line.pass ? "[PASS] " : "[FAIL] ") << line.name;
      if (!line.detail.empty()) std::cout << " — " << line.detail;
      std::cout << "\n";
      all = all && line.pass;
    }
    if (!all) rc = 1;
  });

  // ---- vignette ----------------------------------------------------------------
  auto* vig_cmd = app.add_subcommand("vignette", "replay a scripted decoding scenario");
  static std::string vig_name;
  vig_cmd->add_option("name", vig_name, "fig1 | split12 | appendixA")->required();
  vig_cmd->callback([&] {
    cqhc::VignetteReport rep = cqhc::run_vignette(vig_name);
    std::cout << "vignette " << rep.vignette << "\n";
    for (const auto& c : rep.checks) {
      std::cout << (c.pass ? "  [ok]   " : "  [FAIL] ") << c.name << ": expected " << c.expected
                << ", got " << c.actual << "\n";
    }
    for (const auto& n : rep.notes) std::cout << "  note: " << n << "\n";
    std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
    if (!rep.pass()) rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems exit 2; --help exits 0
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
