#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cqhc/flip_cost.hpp"
#include "cqhc/readout.hpp"

namespace cqhc {

enum class DecoderKind { Local, Bidirectional };

inline const char* decoder_name(DecoderKind k) {
  return k == DecoderKind::Local ? "local" : "bidir";
}
inline DecoderKind parse_decoder(const std::string& s) {
  if (s == "local") return DecoderKind::Local;
  if (s == "bidir" || s == "bidirectional") return DecoderKind::Bidirectional;
  throw std::invalid_argument("unknown decoder '" + s + "' (expected local|bidir)");
}

struct DecodeTrace {
  // One entry per nonzero syndrome: at level 1 `lam` is 0 and `qubit` is the
  // corrected physical qubit; at level >= 2 the lookup flips child `qubit`
  // of logical position `lam`.
  struct SyndromeEntry {
    int level;
    std::size_t block;
    std::size_t lam;
    int qubit;  // 1-based
  };
  struct TransferEntry {
    int level;
    std::size_t block;
    int src, a, b;  // 1-based triple labels; flip moves from src to {a, b}
    std::array<long, 3> cost_before;  // order: a, b, src
    std::array<long, 3> cost_after;
    bool accepted;
  };
  struct CommitEntry {
    int level;  // level of the committed child block
    std::size_t block;
    long cost;
  };

  std::vector<SyndromeEntry> syndromes;
  std::vector<TransferEntry> transfers;
  std::vector<CommitEntry> commits;
  std::size_t recovery_weight = 0;
  bool failure = false;
};

namespace detail {

struct DeltaKey {
  std::size_t child;
  BitVector delta;
  bool operator==(const DeltaKey& o) const { return child == o.child && delta == o.delta; }
};
struct DeltaKeyHash {
  std::size_t operator()(const DeltaKey& k) const {
    return static_cast<std::size_t>(k.delta.hash() ^ (k.child * 0x9e3779b97f4a7c15ull));
  }
};

inline std::vector<BitVector> tensor_check_planes(const ConcatCode& code,
                                                  const DecodeSession& session, int level,
                                                  std::size_t block) {
  const HammingCode& local = code.code_at(level);
  const auto& rows = session.tensor(level, block);
  std::vector<BitVector> planes(local.check_matrix().rows(), BitVector(code.K(level - 1)));
  for (std::size_t j = 0; j < planes.size(); ++j) {
    BitVector hrow = local.check_matrix().row(j);
    for (std::size_t i = hrow.find_first(); i < hrow.size(); i = hrow.find_next(i + 1))
      planes[j] ^= rows[i];
  }
  return planes;
}

}  // namespace detail

// Greedy reassignment of the pending recovery tensor of one block: flips are
// transferred along weight-3 triples whenever the summed realization cost
// strictly drops, rescanning from the start after every acceptance. With
// `paranoid` set, the check-plane invariance and the strict cost decrease are
// re-verified after every accepted transfer.
inline void reassign(const ConcatCode& code, DecodeSession& session, int level, std::size_t block,
                     DecodeTrace* trace = nullptr, bool paranoid = false) {
  auto& rows = session.tensor(level, block);
  bool nonzero = false;
  for (const auto& row : rows)
    if (row.any()) {
      nonzero = true;
      break;
    }
  if (!nonzero) return;

  const HammingCode& local = code.code_at(level);
  const std::size_t nl = static_cast<std::size_t>(code.n(level));

  std::unordered_map<detail::DeltaKey, long, detail::DeltaKeyHash> memo;
  auto cost_of = [&](std::size_t child_i, const BitVector& delta) {
    std::size_t child = code.child_block(level, block, child_i);
    detail::DeltaKey key{child, delta};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long c = flip_cost_value(code, session, level - 1, child, delta);
    memo.emplace(std::move(key), c);
    return c;
  };

  std::vector<long> w(nl);
  long total = 0;
  for (std::size_t i = 0; i < nl; ++i) {
    w[i] = cost_of(i, rows[i]);
    total += w[i];
  }

  std::vector<BitVector> planes0;
  if (paranoid) planes0 = detail::tensor_check_planes(code, session, level, block);
  long acceptances = 0;
  const long initial_total = total;

  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& t : local.transfer_candidates()) {
      const std::size_t c = static_cast<std::size_t>(t.src - 1);
      const std::size_t a = static_cast<std::size_t>(t.a - 1);
      const std::size_t b = static_cast<std::size_t>(t.b - 1);
      if (rows[c].none()) continue;

      BitVector transfer = rows[c];
      BitVector da = rows[a];
      da ^= transfer;
      BitVector db = rows[b];
      db ^= transfer;
      BitVector dc(transfer.size());  // rows[c] ^ transfer

      long wa = cost_of(a, da);
      long wb = cost_of(b, db);
      long wc = cost_of(c, dc);
      bool accept = wa + wb + wc < w[a] + w[b] + w[c];
      if (trace)
        trace->transfers.push_back(DecodeTrace::TransferEntry{
            level, block, t.src, t.a, t.b, {w[a], w[b], w[c]}, {wa, wb, wc}, accept});
      if (!accept) continue;

      const long prev_total = total;
      total -= w[a] + w[b] + w[c];
      rows[a] = std::move(da);
      rows[b] = std::move(db);
      rows[c].clear();
      w[a] = wa;
      w[b] = wb;
      w[c] = wc;
      total += wa + wb + wc;
      session.mark_dirty(level, block);
      ++acceptances;

      if (paranoid) {
        std::vector<BitVector> planes = detail::tensor_check_planes(code, session, level, block);
        if (planes != planes0)
          throw std::logic_error("reassign: accepted transfer changed a level syndrome");
        if (total >= prev_total)
          throw std::logic_error("reassign: accepted transfer did not decrease the total cost");
        if (acceptances > initial_total)
          throw std::logic_error("reassign: more acceptances than the initial cost allows");
      }
      improved = true;
      break;
    }
  }
  session.bump_version();
}

// Level-ordered decoding: minimum-weight lookup per local code, optional
// reassignment, and a final commit pass that resolves every pending tensor
// into physical recoveries. Sibling subtrees are disjoint, so the level
// order is equivalent to the recursive formulation.
inline void decode(const ConcatCode& code, const SyndromeSource& source, DecodeSession& session,
                   DecoderKind kind, DecodeTrace* trace = nullptr, bool paranoid = false) {
  const int L = code.levels();
  const HammingCode& c1 = code.code_at(1);

  for (std::size_t b = 0; b < code.block_count(1); ++b) {
    if (!source.error_dirty(1, b)) continue;
    Syndrome s = source.level1_syndrome(b);
    if (s.trivial()) continue;
    session.level1(b) = c1.lookup_decode(s);
    session.mark_dirty(1, b);
    if (trace)
      trace->syndromes.push_back(DecodeTrace::SyndromeEntry{1, b, 0, c1.syndrome_qubit(s)});
  }
  session.bump_version();

  for (int l = 2; l <= L; ++l) {
    const HammingCode& local = code.code_at(l);
    const std::size_t kprev = code.K(l - 1);
    for (std::size_t B = 0; B < code.block_count(l); ++B) {
      if (source.subtree_clean(l, B)) continue;
      std::vector<BitVector> planes = source.syndrome_planes(l, B);
      BitVector anybits(kprev);
      for (const auto& p : planes) anybits |= p;
      if (anybits.any()) {
        auto& rows = session.tensor(l, B);
        for (std::size_t lam = anybits.find_first(); lam < kprev;
             lam = anybits.find_next(lam + 1)) {
          int q = 0;
          for (std::size_t j = 0; j < planes.size(); ++j)
            if (planes[j].test(lam)) q |= 1 << (local.r() - 1 - static_cast<int>(j));
          rows[static_cast<std::size_t>(q - 1)].set(lam);
          if (trace) trace->syndromes.push_back(DecodeTrace::SyndromeEntry{l, B, lam, q});
        }
        session.mark_dirty(l, B);
        session.bump_version();
      }
      if (kind == DecoderKind::Bidirectional) reassign(code, session, l, B, trace, paranoid);
    }
  }

  if (L >= 2) {
    auto& top = session.tensor(L, 0);
    for (int i = 0; i < code.n(L); ++i) {
      std::size_t child = code.child_block(L, 0, static_cast<std::size_t>(i));
      if (top[static_cast<std::size_t>(i)].none() && !session.dirty(L - 1, child)) continue;
      BitVector delta = top[static_cast<std::size_t>(i)];
      FlipPlan plan = flip_cost_plan(code, session, L - 1, child, delta);
      if (trace) trace->commits.push_back(DecodeTrace::CommitEntry{L - 1, child, plan.cost});
      flip_commit(session, plan);
    }
    for (auto& row : top) row.clear();
  }

  if (trace) {
    trace->recovery_weight = session.recovery_weight();
    trace->failure = source.residual_class(L, 0).any();
  }
}

inline void decode_local(const ConcatCode& code, const SyndromeSource& source,
                         DecodeSession& session, DecodeTrace* trace = nullptr) {
  decode(code, source, session, DecoderKind::Local, trace);
}
inline void decode_bidir(const ConcatCode& code, const SyndromeSource& source,
                         DecodeSession& session, DecodeTrace* trace = nullptr,
                         bool paranoid = false) {
  decode(code, source, session, DecoderKind::Bidirectional, trace, paranoid);
}

struct DecodeOutcome {
  bool failure = false;
  std::size_t recovery_weight = 0;
  BitVector recovery;
};

// One-shot convenience wrapper: fresh session, decode, read out the verdict.
inline DecodeOutcome run_decode(const ConcatCode& code, const BitVector& error, DecoderKind kind,
                                DecodeTrace* trace = nullptr, bool paranoid = false) {
  DecodeSession session(code);
  SyndromeSource source(code, session);
  source.set_error(error);
  decode(code, source, session, kind, trace, paranoid);
  DecodeOutcome out;
  out.recovery = session.recovery_vector();
  out.recovery_weight = out.recovery.weight();
  out.failure = is_failure(code, error, session);
  return out;
}

// Indicator of {(i_L, ..., i_1)_0 : i_l in {a_l, b_l}}: the weight-2^L
// pattern family on which strictly bottom-up decoding always fails.
inline BitVector structured_failure_pattern(const ConcatCode& code,
                                            const std::vector<std::array<int, 2>>& pairs) {
  if (static_cast<int>(pairs.size()) != code.levels())
    throw std::invalid_argument("structured_failure_pattern: one pair per level required");
  for (int l = 1; l <= code.levels(); ++l) {
    const auto& pr = pairs[static_cast<std::size_t>(l - 1)];
    if (pr[0] == pr[1] || pr[0] < 1 || pr[1] < 1 || pr[0] > code.n(l) || pr[1] > code.n(l))
      throw std::invalid_argument("structured_failure_pattern: bad pair at level " +
                                  std::to_string(l));
  }
  BitVector e(code.qubits());
  const int L = code.levels();
  std::vector<int> tuple(static_cast<std::size_t>(L));
  for (std::uint32_t mask = 0; mask < (1u << L); ++mask) {
    for (int l = 1; l <= L; ++l)
      tuple[static_cast<std::size_t>(L - l)] =
          pairs[static_cast<std::size_t>(l - 1)][(mask >> (l - 1)) & 1];
    e.set(code.flat(tuple));
  }
  return e;
}

}  // namespace cqhc
