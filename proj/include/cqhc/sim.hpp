#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cqhc/decoder.hpp"

namespace cqhc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-seeded generator: the stream is a pure function of
// (master seed, point index, trial index), so results never depend on worker
// count or scheduling.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t trial_seed(std::uint64_t master, std::uint64_t point,
                                  std::uint64_t trial) {
    std::uint64_t h = splitmix64(master ^ 0x517cc1b727220a95ull);
    h = splitmix64(h ^ (point + 1) * 0x2545f4914f6cdd1dull);
    h = splitmix64(h ^ (trial + 1) * 0x9e3779b97f4a7c15ull);
    return h;
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

// Each bit set independently with probability p.
inline void sample_error(double p, BitVector& out, TrialRng& rng) {
  out.clear();
  if (p <= 0.0) return;
  if (p >= 1.0) {
    out = BitVector::ones(out.size());
    return;
  }
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(p * 18446744073709551616.0);  // p * 2^64
  for (std::size_t i = 0; i < out.size(); ++i)
    if (rng.next() < threshold) out.set(i);
}

inline BitVector sample_error(double p, std::size_t n, TrialRng& rng) {
  BitVector out(n);
  sample_error(p, out, rng);
  return out;
}

// Uniformly random error of exactly the given weight.
inline BitVector sample_fixed_weight(std::size_t n, std::size_t w, TrialRng& rng) {
  BitVector out(n);
  std::size_t placed = 0;
  while (placed < w) {
    std::size_t q = static_cast<std::size_t>(rng.next_below(n));
    if (!out.test(q)) {
      out.set(q);
      ++placed;
    }
  }
  return out;
}

struct SweepConfig {
  Profile profile;
  DecoderKind decoder = DecoderKind::Bidirectional;
  std::vector<double> ps;
  long min_failures = 300;
  std::uint64_t max_trials = 1'000'000'000;
  double max_wall_s = 3600.0;  // per point; deep points stop loudly instead of hanging
  std::uint64_t seed = 0;
  unsigned jobs = 0;          // 0 = hardware concurrency
  std::uint64_t batch = 512;  // fixed batch size keeps stopping independent of jobs

  void validate() const {
    profile.validate();
    for (double p : ps)
      if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("SweepConfig: physical rates must lie in (0, 1)");
    if (min_failures < 1) throw std::invalid_argument("SweepConfig: min_failures must be >= 1");
    if (batch < 1) throw std::invalid_argument("SweepConfig: batch must be >= 1");
  }

  unsigned effective_jobs() const {
    if (jobs != 0) return jobs;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
  }
};

struct PointEstimate {
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double p_l = 0.0;
  double stderr_ = 0.0;
  double wall_s = 0.0;
  bool low_confidence = false;  // stopped by max_trials or the wall guard
};

struct SweepRecord {
  SweepConfig config;
  std::vector<PointEstimate> points;
};

namespace detail {

// Minimal persistent worker pool: run() hands out trial indices from a
// shared counter and blocks until the range is exhausted.
class ParallelRunner {
 public:
  explicit ParallelRunner(unsigned jobs) : jobs_(jobs == 0 ? 1 : jobs) {
    for (unsigned w = 1; w < jobs_; ++w)
      threads_.emplace_back([this, w] { worker_loop(w); });
  }

  ~ParallelRunner() {
    {
      std::lock_guard<std::mutex> lk(m_);
      stop_ = true;
    }
    cv_start_.notify_all();
    for (auto& t : threads_) t.join();
  }

  void run(std::uint64_t begin, std::uint64_t end,
           const std::function<void(unsigned, std::uint64_t)>& fn) {
    if (begin >= end) return;
    if (jobs_ == 1) {
      for (std::uint64_t t = begin; t < end; ++t) fn(0, t);
      return;
    }
    {
      std::lock_guard<std::mutex> lk(m_);
      fn_ = &fn;
      next_.store(begin, std::memory_order_relaxed);
      end_ = end;
      pending_ = jobs_ - 1;
      ++generation_;
    }
    cv_start_.notify_all();
    drain(0, fn);
    std::unique_lock<std::mutex> lk(m_);
    cv_done_.wait(lk, [this] { return pending_ == 0; });
    fn_ = nullptr;
    if (error_) {
      std::exception_ptr e = error_;
      error_ = nullptr;
      std::rethrow_exception(e);
    }
  }

 private:
  void drain(unsigned worker, const std::function<void(unsigned, std::uint64_t)>& fn) {
    try {
      while (true) {
        std::uint64_t t = next_.fetch_add(1, std::memory_order_relaxed);
        if (t >= end_) break;
        fn(worker, t);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(m_);
      if (!error_) error_ = std::current_exception();
      next_.store(end_, std::memory_order_relaxed);  // stop handing out trials
    }
  }

  void worker_loop(unsigned worker) {
    std::uint64_t seen = 0;
    while (true) {
      const std::function<void(unsigned, std::uint64_t)>* fn = nullptr;
      {
        std::unique_lock<std::mutex> lk(m_);
        cv_start_.wait(lk, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        fn = fn_;
      }
      drain(worker, *fn);
      {
        std::lock_guard<std::mutex> lk(m_);
        if (--pending_ == 0) cv_done_.notify_all();
      }
    }
  }

  unsigned jobs_;
  std::vector<std::thread> threads_;
  std::mutex m_;
  std::condition_variable cv_start_, cv_done_;
  const std::function<void(unsigned, std::uint64_t)>* fn_ = nullptr;
  std::atomic<std::uint64_t> next_{0};
  std::uint64_t end_ = 0;
  unsigned pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_ = nullptr;
};

struct WorkerState {
  DecodeSession session;
  SyndromeSource source;
  BitVector error;
  std::uint64_t failures = 0;

  explicit WorkerState(const ConcatCode& code)
      : session(code), source(code, session), error(code.qubits()) {}
};

}  // namespace detail

// Runs trials in fixed-size batches until at least min_failures logical
// failures are seen (or a stopping guard fires). The set of executed trials
// depends only on the batch size and the failure counts, never on the number
// of workers, so estimates are reproducible across any --jobs value.
inline PointEstimate run_point(const ConcatCode& code, const SweepConfig& config,
                               std::size_t point_index, detail::ParallelRunner& runner) {
  const double p = config.ps.at(point_index);
  const int L = code.levels();
  const unsigned jobs = config.effective_jobs();

  std::vector<detail::WorkerState> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) workers.emplace_back(code);

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  std::uint64_t done = 0;
  std::uint64_t failures = 0;
  bool guard_stop = false;
  while (failures < static_cast<std::uint64_t>(config.min_failures) && done < config.max_trials) {
    if (config.max_wall_s > 0 && elapsed() > config.max_wall_s) {
      guard_stop = true;
      break;
    }
    std::uint64_t batch_end = std::min(done + config.batch, config.max_trials);
    runner.run(done, batch_end, [&](unsigned w, std::uint64_t t) {
      detail::WorkerState& st = workers[w];
      TrialRng rng(TrialRng::trial_seed(config.seed, point_index, t));
      sample_error(p, st.error, rng);
      st.session.reset();
      st.source.set_error(st.error);
      decode(code, st.source, st.session, config.decoder);
      if (st.source.residual_class(L, 0).any()) ++st.failures;
    });
    done = batch_end;
    failures = 0;
    for (const auto& w : workers) failures += w.failures;
  }

  PointEstimate est;
  est.p = p;
  est.trials = done;
  est.failures = failures;
  est.p_l = done ? static_cast<double>(failures) / static_cast<double>(done) : 0.0;
  est.stderr_ = done ? std::sqrt(est.p_l * (1.0 - est.p_l) / static_cast<double>(done)) : 0.0;
  est.wall_s = elapsed();
  est.low_confidence = failures < static_cast<std::uint64_t>(config.min_failures);
  (void)guard_stop;
  return est;
}

inline SweepRecord run_sweep(const SweepConfig& config) {
  config.validate();
  ConcatCode code(config.profile);
  detail::ParallelRunner runner(config.effective_jobs());
  SweepRecord record;
  record.config = config;
  for (std::size_t i = 0; i < config.ps.size(); ++i)
    record.points.push_back(run_point(code, config, i, runner));
  return record;
}

// CSV with the fixed column set. wall_s is informational; every other column
// is deterministic for a fixed (config, seed).
inline void write_csv(std::ostream& os, const SweepRecord& record) {
  os << "p,trials,failures,p_l,stderr,wall_s\n";
  for (const auto& pt : record.points) {
    std::ostringstream row;
    row.precision(10);
    row << pt.p << ',' << pt.trials << ',' << pt.failures << ',' << pt.p_l << ',' << pt.stderr_
        << ',';
    row.precision(3);
    row << std::fixed << pt.wall_s;
    os << row.str() << '\n';
  }
}

inline std::vector<PointEstimate> read_points_csv(std::istream& is) {
  std::vector<PointEstimate> points;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_points_csv: empty input");
  if (line.rfind("p,trials,failures", 0) != 0)
    throw std::invalid_argument("read_points_csv: unrecognized header '" + line + "'");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    PointEstimate pt;
    std::istringstream ss(line);
    std::string tok;
    auto next_field = [&]() {
      if (!std::getline(ss, tok, ',')) throw std::invalid_argument("read_points_csv: short row");
      return tok;
    };
    pt.p = std::stod(next_field());
    pt.trials = std::stoull(next_field());
    pt.failures = std::stoull(next_field());
    pt.p_l = std::stod(next_field());
    pt.stderr_ = std::stod(next_field());
    if (std::getline(ss, tok, ',')) pt.wall_s = std::stod(tok);
    points.push_back(pt);
  }
  return points;
}

}  // namespace cqhc
