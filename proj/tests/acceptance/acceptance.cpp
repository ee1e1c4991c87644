// Acceptance suite: one self-contained check per criterion, each printing a
// single pass/fail line (plus measured values) and exiting nonzero on any
// failure. Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cqhc/analysis.hpp"
#include "cqhc/cqhc.hpp"

using namespace cqhc;

namespace {

struct Harness {
  ConcatCode code;
  DecodeSession session;
  SyndromeSource source;

  explicit Harness(const std::string& profile)
      : code(Profile::parse(profile)), session(code), source(code, session) {}

  bool fails(const BitVector& err, DecoderKind kind) {
    session.reset();
    source.set_error(err);
    decode(code, source, session, kind);
    return source.residual_class(code.levels(), 0).any();
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

bool within(double value, double reference, double rel_tol) {
  return std::abs(value - reference) <= rel_tol * std::abs(reference);
}

double round_sigfigs(double v, int figs) {
  if (v == 0.0) return 0.0;
  double scale = std::pow(10.0, figs - 1 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
  return std::round(v * scale) / scale;
}

// ---------------------------------------------------------------------------

bool c1_oracle_equivalence(std::ostream& os) {
  bool ok = true;
  for (int r : {3, 4, 5}) {
    HammingCode code(r);
    for (int s = 0; s < (1 << r); ++s) {
      BitVector bits(static_cast<std::size_t>(r));
      for (int j = 0; j < r; ++j)
        if ((s >> (r - 1 - j)) & 1) bits.set(static_cast<std::size_t>(j));
      if (exhaustive_mwe(code.check_matrix(), bits) != code.lookup_decode(Syndrome{bits}))
        ok = false;
    }
    os << "    lookup vs exhaustive search: r=" << r << " all " << (1 << r) << " syndromes\n";
  }
  for (int r : {3, 4}) {
    HammingCode code(r);
    std::vector<BitVector> basis;
    for (std::size_t j = 0; j < code.check_matrix().rows(); ++j)
      basis.push_back(code.check_matrix().row(j));
    TrialRng rng(splitmix64(1000 + static_cast<std::uint64_t>(r)));
    int agreed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      BitVector base = sample_error(0.5, static_cast<std::size_t>(code.n()), rng);
      BitVector delta = sample_error(0.5, static_cast<std::size_t>(code.k()), rng);
      CosetMin fast = code.coset_min(base, delta);
      BitVector v = base;
      v ^= code.apply_logical(delta);
      if (fast.weight == exhaustive_coset_min(basis, v).weight &&
          code.syndrome(fast.realization) == code.syndrome(base))
        ++agreed;
    }
    os << "    coset minimum vs enumeration: r=" << r << " " << agreed << "/1000 exact\n";
    ok = ok && agreed == 1000;
  }
  return ok;
}

bool c2_fig1(std::ostream& os) {
  VignetteReport rep = vignette_fig1();
  for (const auto& c : rep.checks)
    os << "    " << (c.pass ? "ok  " : "FAIL") << " " << c.name << ": expected " << c.expected
       << ", got " << c.actual << "\n";
  return rep.pass();
}

bool c3_effective_distance_separation(std::ostream& os) {
  Harness h("15x15");
  long local_failures = 0, bidir_failures = 0, patterns = 0;
  for (int a1 = 1; a1 <= 15; ++a1)
    for (int b1 = a1 + 1; b1 <= 15; ++b1)
      for (int a2 = 1; a2 <= 15; ++a2)
        for (int b2 = a2 + 1; b2 <= 15; ++b2) {
          BitVector err = structured_failure_pattern(
              h.code, {{{a1, b1}, {a2, b2}}});
          ++patterns;
          if (h.fails(err, DecoderKind::Local)) ++local_failures;
          if (h.fails(err, DecoderKind::Bidirectional)) ++bidir_failures;
        }
  os << "    structured weight-4 patterns: " << patterns << " total, " << local_failures
     << " local failures (want all), " << bidir_failures << " bidirectional failures (want 0)\n";
  bool ok = patterns == 11025 && local_failures == patterns && bidir_failures == 0;

  TrialRng rng(20250301);
  long random_failures = 0;
  const int random_trials = 100000;
  for (int t = 0; t < random_trials; ++t) {
    BitVector err = sample_fixed_weight(225, 4, rng);
    if (h.fails(err, DecoderKind::Bidirectional)) ++random_failures;
  }
  os << "    random weight-4 errors: " << random_trials << " trials, " << random_failures
     << " bidirectional failures (want 0)\n";
  return ok && random_failures == 0;
}

bool c4_local_floor(std::ostream& os) {
  Harness h("15x15");
  long failures = 0;
  for (std::size_t q = 0; q < 225; ++q) {
    BitVector err(225);
    err.set(q);
    if (h.fails(err, DecoderKind::Local)) ++failures;
  }
  os << "    weight-1 exhaustive: 225 errors, " << failures << " failures (want 0)\n";
  bool ok = failures == 0;

  failures = 0;
  long count = 0;
  for (std::size_t q1 = 0; q1 < 225; ++q1)
    for (std::size_t q2 = q1 + 1; q2 < 225; ++q2) {
      BitVector err(225);
      err.set(q1);
      err.set(q2);
      ++count;
      if (h.fails(err, DecoderKind::Local)) ++failures;
    }
  os << "    weight-2 exhaustive: " << count << " errors, " << failures
     << " failures (want 0)\n";
  ok = ok && failures == 0;

  TrialRng rng(20250302);
  failures = 0;
  const int random_trials = 100000;
  for (int t = 0; t < random_trials; ++t) {
    BitVector err = sample_fixed_weight(225, 3, rng);
    if (h.fails(err, DecoderKind::Local)) ++failures;
  }
  os << "    random weight-3: " << random_trials << " trials, " << failures
     << " failures (want 0)\n";
  return ok && failures == 0;
}

bool c5_appendix_a(std::ostream& os) {
  VignetteReport rep = vignette_appendix_a();
  for (const auto& c : rep.checks)
    os << "    " << (c.pass ? "ok  " : "FAIL") << " " << c.name << ": expected " << c.expected
       << ", got " << c.actual << "\n";
  return rep.pass();
}

bool c6_split_logical(std::ostream& os) {
  VignetteReport rep = vignette_split12();
  for (const auto& c : rep.checks)
    os << "    " << (c.pass ? "ok  " : "FAIL") << " " << c.name << ": expected " << c.expected
       << ", got " << c.actual << "\n";
  for (const auto& n : rep.notes) os << "    note: " << n << "\n";
  return rep.pass();
}

SweepRecord sweep_for(const std::string& profile, DecoderKind kind, std::vector<double> ps,
                      long min_failures, std::uint64_t seed) {
  SweepConfig config;
  config.profile = Profile::parse(profile);
  config.decoder = kind;
  config.ps = std::move(ps);
  config.min_failures = min_failures;
  config.seed = seed;
  return run_sweep(config);
}

void print_curve(std::ostream& os, const std::string& label, const SweepRecord& rec) {
  os << "    " << label << ":";
  for (const auto& pt : rec.points) os << " (" << pt.p << ", " << sci(pt.p_l) << ")";
  os << "\n";
}

bool c7_threshold_reproduction(std::ostream& os) {
  const std::vector<double> grid_bidir = {0.036, 0.039, 0.042, 0.045, 0.048, 0.052, 0.056, 0.060};
  SweepRecord b2 = sweep_for("15x15", DecoderKind::Bidirectional, grid_bidir, 300, 42);
  SweepRecord b3 = sweep_for("15x15x15", DecoderKind::Bidirectional, grid_bidir, 300, 43);
  print_curve(os, "bidir 15x15", b2);
  print_curve(os, "bidir 15x15x15", b3);
  ThresholdResult bidir = estimate_threshold(b2.points, b3.points);
  bool ok_bidir = bidir.p_th >= 0.038 && bidir.p_th <= 0.050;
  os << "    bidirectional crossing p_th = " << sci(bidir.p_th) << " (must lie in [0.038, 0.050])"
     << (ok_bidir ? "" : "  <-- OUT OF BAND") << "\n";

  const std::vector<double> grid_local = {0.010, 0.012, 0.014, 0.016, 0.018, 0.020, 0.023, 0.026};
  SweepRecord l2 = sweep_for("15x15", DecoderKind::Local, grid_local, 300, 44);
  SweepRecord l3 = sweep_for("15x15x15", DecoderKind::Local, grid_local, 300, 45);
  print_curve(os, "local 15x15", l2);
  print_curve(os, "local 15x15x15", l3);
  ThresholdResult local = estimate_threshold(l2.points, l3.points);
  bool ok_local = local.p_th >= 0.012 && local.p_th <= 0.020;
  os << "    local crossing p_th = " << sci(local.p_th) << " (must lie in [0.012, 0.020])"
     << (ok_local ? "" : "  <-- OUT OF BAND") << "\n";
  return ok_bidir && ok_local;
}

bool c8_exponent_reproduction(std::ostream& os) {
  const std::vector<double> grid = {0.008, 0.010, 0.0125, 0.016, 0.020};
  const FitWindow window{0.008, 0.02};

  // Statistics per point are sized so the fit uncertainty is small against
  // the acceptance bands (local decoding is cheap, so it gets more).
  SweepRecord bidir = sweep_for("15x15", DecoderKind::Bidirectional, grid, 1000, 52);
  print_curve(os, "bidir 15x15", bidir);
  FitResult fit_b = fit_power_law(bidir.points, window, 1000);
  bool ok_b = fit_b.alpha >= 5.0 && fit_b.alpha <= 6.5;
  os << "    bidirectional alpha = " << sci(fit_b.alpha) << " +- " << sci(fit_b.alpha_stderr)
     << " (must lie in [5.0, 6.5])" << (ok_b ? "" : "  <-- OUT OF BAND") << "\n";

  SweepRecord local = sweep_for("15x15", DecoderKind::Local, grid, 10000, 53);
  print_curve(os, "local 15x15", local);
  FitResult fit_l = fit_power_law(local.points, window, 10000);
  bool ok_l = fit_l.alpha >= 3.3 && fit_l.alpha <= 4.7;
  os << "    local alpha = " << sci(fit_l.alpha) << " +- " << sci(fit_l.alpha_stderr)
     << " (must lie in [3.3, 4.7])" << (ok_l ? "" : "  <-- OUT OF BAND") << "\n";

  // Full statistics for the level-3/-4 exponents are beyond desk scale; the
  // reduced check gathers 30 failures per point and requires alpha > 10.
  const std::vector<double> grid3 = {0.025, 0.030, 0.035};
  SweepRecord deep = sweep_for("15x15x15", DecoderKind::Bidirectional, grid3, 30, 54);
  print_curve(os, "bidir 15x15x15 (reduced stats)", deep);
  FitResult fit_3 = fit_power_law(deep.points, FitWindow{0.025, 0.035}, 30);
  bool ok_3 = fit_3.alpha > 10.0;
  os << "    level-3 bidirectional alpha = " << sci(fit_3.alpha) << " (must exceed 10)"
     << (ok_3 ? "" : "  <-- OUT OF BAND") << "\n";
  return ok_b && ok_l && ok_3;
}

bool c9_extrapolation(std::ostream& os) {
  FitResult a = FitResult::from_threshold_form(0.35, 15.3, 0.0435);
  double pl_a = extrapolate(a, 0.0435, 0.01);
  bool ok_a = within(pl_a, 5.96e-11, 0.02);
  os << "    three-level extrapolation at p=0.01: " << sci(pl_a)
     << " vs 5.96e-11 (2% tolerance)" << (ok_a ? "" : "  <-- MISMATCH") << "\n";

  FitResult b = FitResult::from_threshold_form(0.12, 14.7, 0.0156);
  double pl_b = extrapolate(b, 0.0156, 0.01);
  // The quoted value carries two significant figures; accept either the 2%
  // band or agreement after rounding to the quoted precision.
  bool ok_b = within(pl_b, 1.7e-4, 0.02) || round_sigfigs(pl_b, 2) == 1.7e-4;
  os << "    four-level extrapolation at p=0.01: " << sci(pl_b)
     << " vs 1.7e-4 (2% or rounds to quote)" << (ok_b ? "" : "  <-- MISMATCH") << "\n";

  double aggregate = 7.0 * pl_a;
  bool ok_agg = within(aggregate, 4.2e-10, 0.05);
  os << "    seven-block aggregate: " << sci(aggregate) << " vs 4.2e-10 (5% tolerance)"
     << (ok_agg ? "" : "  <-- MISMATCH") << "\n";
  return ok_a && ok_b && ok_agg;
}

bool c10_property_suite(std::ostream& os) {
  bool ok = true;

  // (a) + (b): paranoid decoding re-checks the level-syndrome planes after
  // every accepted transfer and the strict decrease of the cached total.
  for (const char* profile : {"15x15", "7x7x7"}) {
    ConcatCode code(Profile::parse(profile));
    DecodeSession session(code);
    SyndromeSource source(code, session);
    TrialRng rng(splitmix64(0xc10 ^ code.qubits()));
    int trials = 0, consistent = 0;
    for (int t = 0; t < 250; ++t) {
      BitVector err = sample_error(0.04, code.qubits(), rng);
      session.reset();
      source.set_error(err);
      decode(code, source, session, DecoderKind::Bidirectional, nullptr, /*paranoid=*/true);
      ++trials;
      if (full_syndrome(code, err) == full_syndrome(code, session.recovery_vector()))
        ++consistent;
    }
    os << "    paranoid decode on " << profile << ": " << trials << " trials, " << consistent
       << " syndrome-consistent recoveries\n";
    ok = ok && trials == consistent;
  }

  // (c) evaluation purity on arbitrary session states.
  {
    ConcatCode code(Profile::parse("15x15"));
    DecodeSession session(code);
    TrialRng rng(0xabc);
    for (std::size_t b = 0; b < 15; ++b) {
      session.level1(b) = sample_error(0.3, 15, rng);
      session.mark_dirty(1, b);
    }
    auto& rows = session.tensor(2, 0);
    for (auto& row : rows) row = sample_error(0.2, code.K(1), rng);
    session.mark_dirty(2, 0);
    std::uint64_t before = session.state_hash();
    int pure = 0;
    for (int t = 0; t < 200; ++t) {
      int level = 1 + static_cast<int>(rng.next_below(2));
      std::size_t block = rng.next_below(code.block_count(level));
      BitVector delta = sample_error(0.3, code.K(level), rng);
      flip_cost_value(code, session, level, block, delta);
      flip_cost_plan(code, session, level, block, delta);
      if (session.state_hash() == before) ++pure;
    }
    os << "    flip_cost purity: 200 evaluations, " << pure << " left the session untouched\n";
    ok = ok && pure == 200;
  }

  // (d) sweep determinism across worker counts.
  {
    SweepConfig config;
    config.profile = Profile::parse("15x15");
    config.decoder = DecoderKind::Bidirectional;
    config.ps = {0.02, 0.04};
    config.min_failures = 50;
    config.seed = 77;
    config.jobs = 1;
    SweepRecord one = run_sweep(config);
    config.jobs = 3;
    SweepRecord three = run_sweep(config);
    bool same = true;
    for (std::size_t i = 0; i < one.points.size(); ++i)
      same = same && one.points[i].trials == three.points[i].trials &&
             one.points[i].failures == three.points[i].failures;
    os << "    sweep with --jobs 1 vs --jobs 3: " << (same ? "identical counts" : "DIVERGED")
       << "\n";
    ok = ok && same;
  }
  return ok;
}

bool c11_runtime_trend(std::ostream& os) {
  auto median_trial_seconds = [](const std::string& profile) {
    Harness h(profile);
    BitVector zero(h.code.qubits());
    const int reps = 31, per_rep = 200;
    std::vector<double> secs;
    for (int r = 0; r < reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      for (int i = 0; i < per_rep; ++i) h.fails(zero, DecoderKind::Bidirectional);
      auto t1 = std::chrono::steady_clock::now();
      secs.push_back(std::chrono::duration<double>(t1 - t0).count() / per_rep);
    }
    std::sort(secs.begin(), secs.end());
    return secs[secs.size() / 2];
  };

  double t1 = median_trial_seconds("15");
  double t2 = median_trial_seconds("15x15");
  double t3 = median_trial_seconds("15x15x15");
  double r21 = t2 / t1, r32 = t3 / t2;
  os << "    median zero-syndrome decode: 15 -> " << sci(t1 * 1e6) << " us, 15x15 -> "
     << sci(t2 * 1e6) << " us, 15x15x15 -> " << sci(t3 * 1e6) << " us\n";
  os << "    growth per added level: " << sci(r21) << ", " << sci(r32)
     << " (each must stay <= 25)\n";
  bool ok = r21 <= 25.0 && r32 <= 25.0;

  // Dense-error trend: per added level the worst-case envelope allows an
  // n^2 = 225x step; generous slack for constant factors.
  auto median_dense_seconds = [](const std::string& profile) {
    Harness h(profile);
    TrialRng rng(0xdeb5e);
    std::vector<double> secs;
    for (int r = 0; r < 11; ++r) {
      BitVector err = sample_error(0.3, h.code.qubits(), rng);
      auto t0 = std::chrono::steady_clock::now();
      h.fails(err, DecoderKind::Bidirectional);
      auto t1 = std::chrono::steady_clock::now();
      secs.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(secs.begin(), secs.end());
    return secs[secs.size() / 2];
  };
  double d2 = median_dense_seconds("15x15");
  double d3 = median_dense_seconds("15x15x15");
  os << "    median dense-error decode: 15x15 -> " << sci(d2 * 1e3) << " ms, 15x15x15 -> "
     << sci(d3 * 1e3) << " ms, ratio " << sci(d3 / d2) << " (envelope allows 225x, cap 500)\n";
  return ok && d3 / d2 <= 500.0;
}

struct Criterion {
  std::string name;
  std::string description;
  std::function<bool(std::ostream&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"c1", "oracle equivalence: lookup and coset minima against enumeration",
       c1_oracle_equivalence},
      {"c2", "weight-4 vignette: local weight 5 + failure, bidirectional weight 4 + success",
       c2_fig1},
      {"c3", "effective-distance separation on 15x15 (structured + random weight-4)",
       c3_effective_distance_separation},
      {"c4", "local decoder floor: all weight<=2 exhaustive, random weight-3",
       c4_local_floor},
      {"c5", "three-level Steane vignette: rejected 18-vs-17 transfer, weight-10 alternative",
       c5_appendix_a},
      {"c6", "split weight-12 logical operator checks", c6_split_logical},
      {"c7", "threshold reproduction: bidirectional in [3.8%, 5.0%], local in [1.2%, 2.0%]",
       c7_threshold_reproduction},
      {"c8", "exponent reproduction: bidir in [5.0, 6.5], local in [3.3, 4.7], level-3 > 10",
       c8_exponent_reproduction},
      {"c9", "extrapolation arithmetic against the reference fit parameters", c9_extrapolation},
      {"c10", "property suite: syndrome preservation, strict decrease, purity, determinism",
       c10_property_suite},
      {"c11", "runtime scaling trend across 15, 15x15, 15x15x15", c11_runtime_trend},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : criteria()) std::cout << c.name << "  " << c.description << "\n";
      return 0;
    }
    selected.emplace_back(argv[i]);
  }
  if (selected.empty())
    for (const auto& c : criteria()) selected.push_back(c.name);

  int failures = 0;
  for (const std::string& name : selected) {
    const Criterion* crit = nullptr;
    for (const auto& c : criteria())
      if (c.name == name) crit = &c;
    if (!crit) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
    std::ostringstream detail;
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = crit->run(detail);
    } catch (const std::exception& e) {
      detail << "    exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << crit->name << " — " << crit->description
              << "  (" << sci(secs) << " s)\n"
              << detail.str();
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
