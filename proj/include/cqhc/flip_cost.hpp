#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cqhc/readout.hpp"
#include "cqhc/session.hpp"

namespace cqhc {

// Resolved realization of a logical flip on one block, produced by flip_cost
// against a fixed session state and applied atomically by flip_commit.
struct FlipPlan {
  int level = 0;
  std::size_t block = 0;
  std::uint64_t session_version = 0;
  long cost = 0;
  BitVector realization;                      // level 1: replacement recovery
  std::vector<BitVector> child_deltas;        // level >= 2: resolved rows
  std::vector<std::pair<std::size_t, FlipPlan>> children;  // non-trivial children only
};

namespace detail {

struct OrderedColumn {
  std::size_t lam = 0;
  std::size_t r_weight = 0;
  BitVector f;  // length n_l
};

// Column optimization of the flip-cost heuristic for a level >= 2 block:
// F = L_X delta + R column-wise, columns processed by nonincreasing |R
// column| (ties by index), full stabilizer sweep at the first column, greedy
// argmin of the cumulative OR mask afterwards. Returns the resolved rows
// (child flip vectors). Bounds-based pruning below never changes the
// selected configuration: the mask weight only grows along a run, and ties
// are broken toward the earlier stabilizer index everywhere.
inline std::vector<BitVector> resolve_rows(const ConcatCode& code, const DecodeSession& session,
                                           int level, std::size_t block,
                                           const BitVector& delta) {
  const HammingCode& local = code.code_at(level);
  const std::size_t nl = static_cast<std::size_t>(code.n(level));
  const int kl = local.k();
  const std::size_t kprev = code.K(level - 1);
  const auto& rows = session.tensor(level, block);
  const auto& stabs = local.x_stabilizers();

  std::vector<BitVector> out(nl, BitVector(kprev));

  // Columns carrying recovery support, heaviest first (ties by index), then
  // the columns touched only by delta in index order. Everything else is a
  // zero column.
  std::vector<uint32_t> cnt(kprev, 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t lam = rows[i].find_first(); lam < kprev; lam = rows[i].find_next(lam + 1))
      if (cnt[lam]++ == 0) touched.push_back(lam);
  std::sort(touched.begin(), touched.end(), [&cnt](std::size_t a, std::size_t b) {
    if (cnt[a] != cnt[b]) return cnt[a] > cnt[b];
    return a < b;
  });

  std::vector<std::size_t> delta_lams;  // bits of one column are contiguous
  for (std::size_t bit = delta.find_first(); bit < delta.size(); bit = delta.find_next(bit + 1)) {
    std::size_t lam = bit / static_cast<std::size_t>(kl);
    if (delta_lams.empty() || delta_lams.back() != lam) delta_lams.push_back(lam);
  }

  auto column_of = [&](std::size_t lam) {
    BitVector f(nl);
    for (int mu = 0; mu < kl; ++mu)
      if (delta.test(static_cast<std::size_t>(mu) + static_cast<std::size_t>(kl) * lam))
        f ^= local.logical_x()[static_cast<std::size_t>(mu)];
    for (std::size_t i = 0; i < nl; ++i)
      if (rows[i].test(lam)) f.flip(i);
    return f;
  };

  // Zero columns away from the head of the order are inert: their argmin
  // keeps the identity stabilizer and leaves the mask unchanged, so they are
  // skipped. The head column takes the full stabilizer sweep even when it is
  // zero. With no recovery support at all, the order degenerates to plain
  // column index and the head is column 0.
  std::vector<OrderedColumn> active;
  if (!touched.empty()) {
    for (std::size_t s = 0; s < touched.size(); ++s) {
      BitVector f = column_of(touched[s]);
      if (s == 0 || f.any())
        active.push_back(OrderedColumn{touched[s], cnt[touched[s]], std::move(f)});
    }
    for (std::size_t lam : delta_lams) {
      if (cnt[lam] != 0) continue;
      BitVector f = column_of(lam);
      if (f.any()) active.push_back(OrderedColumn{lam, 0, std::move(f)});
    }
  } else {
    for (std::size_t lam : delta_lams) {
      BitVector f = column_of(lam);
      if (f.any()) active.push_back(OrderedColumn{lam, 0, std::move(f)});
    }
    if (!active.empty() && active.front().lam != 0)
      active.insert(active.begin(), OrderedColumn{0, 0, BitVector(nl)});
  }
  if (active.empty()) return out;

  const std::size_t ncols = active.size();
  std::vector<std::size_t> choice(ncols, 0), best_choice(ncols, 0);
  std::size_t best_final = std::numeric_limits<std::size_t>::max();

  BitVector m(nl);
  BitVector tmp(nl);
  for (std::size_t t1 = 0; t1 < stabs.size(); ++t1) {
    std::size_t w1 = weight_xor(active[0].f, stabs[t1]);
    if (w1 >= best_final) continue;  // final mask weight can only grow
    for (std::size_t w = 0; w < m.words(); ++w)
      m.data()[w] = active[0].f.data()[w] ^ stabs[t1].data()[w];
    choice[0] = t1;
    std::size_t mw = w1;
    bool aborted = false;
    for (std::size_t j = 1; j < ncols; ++j) {
      std::size_t bw = std::numeric_limits<std::size_t>::max();
      std::size_t bt = 0;
      for (std::size_t t = 0; t < stabs.size(); ++t) {
        std::size_t w = weight_or_xor(m, active[j].f, stabs[t]);
        if (w < bw) {
          bw = w;
          bt = t;
          if (bw == mw) break;  // lower bound reached; earlier index wins ties
        }
      }
      choice[j] = bt;
      for (std::size_t w = 0; w < m.words(); ++w)
        m.data()[w] |= active[j].f.data()[w] ^ stabs[bt].data()[w];
      mw = bw;
      if (mw >= best_final) {
        aborted = true;
        break;
      }
    }
    if (!aborted && mw < best_final) {
      best_final = mw;
      best_choice = choice;
    }
  }

  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t w = 0; w < tmp.words(); ++w)
      tmp.data()[w] = active[j].f.data()[w] ^ stabs[best_choice[j]].data()[w];
    for (std::size_t i = tmp.find_first(); i < nl; i = tmp.find_next(i + 1))
      out[i].set(active[j].lam);
  }
  return out;
}

}  // namespace detail

// Physical weight of realizing the logical flip `delta` on the given block,
// combined with the block's existing recovery state. Pure: the session is
// only read.
inline long flip_cost_value(const ConcatCode& code, const DecodeSession& session, int level,
                            std::size_t block, const BitVector& delta) {
  if (delta.size() != code.K(level))
    throw std::invalid_argument("flip_cost: delta has wrong shape for level " +
                                std::to_string(level));
  if (delta.none() && !session.dirty(level, block)) return 0;
  if (level == 1)
    return static_cast<long>(code.code_at(1).coset_min(session.level1(block), delta).weight);
  std::vector<BitVector> rows = detail::resolve_rows(code, session, level, block, delta);
  long sum = 0;
  for (int i = 0; i < code.n(level); ++i)
    sum += flip_cost_value(code, session, level - 1, code.child_block(level, block, i),
                           rows[static_cast<std::size_t>(i)]);
  return sum;
}

inline FlipPlan flip_cost_plan(const ConcatCode& code, const DecodeSession& session, int level,
                               std::size_t block, const BitVector& delta) {
  if (delta.size() != code.K(level))
    throw std::invalid_argument("flip_cost: delta has wrong shape for level " +
                                std::to_string(level));
  FlipPlan plan;
  plan.level = level;
  plan.block = block;
  plan.session_version = session.version();
  if (level == 1) {
    if (delta.none() && !session.dirty(1, block)) {
      plan.realization = BitVector(static_cast<std::size_t>(code.n(1)));
      plan.cost = 0;
      return plan;
    }
    CosetMin cm = code.code_at(1).coset_min(session.level1(block), delta);
    plan.cost = static_cast<long>(cm.weight);
    plan.realization = std::move(cm.realization);
    return plan;
  }
  if (delta.none() && !session.dirty(level, block)) {
    plan.cost = 0;
    return plan;
  }
  plan.child_deltas = detail::resolve_rows(code, session, level, block, delta);
  for (int i = 0; i < code.n(level); ++i) {
    std::size_t child = code.child_block(level, block, i);
    const BitVector& d = plan.child_deltas[static_cast<std::size_t>(i)];
    if (d.none() && !session.dirty(level - 1, child)) continue;
    FlipPlan sub = flip_cost_plan(code, session, level - 1, child, d);
    plan.cost += sub.cost;
    plan.children.emplace_back(static_cast<std::size_t>(i), std::move(sub));
  }
  return plan;
}

namespace detail {

inline void commit_rec(DecodeSession& session, const FlipPlan& plan) {
  if (plan.level == 1) {
    session.level1(plan.block) = plan.realization;
    session.mark_dirty(1, plan.block);
    return;
  }
  for (const auto& [i, sub] : plan.children) commit_rec(session, sub);
  // The block's pending rows are folded into the children's plans; clear them.
  for (auto& row : session.tensor(plan.level, plan.block)) row.clear();
  session.mark_dirty(plan.level, plan.block);
}

}  // namespace detail

// Applies a plan produced by flip_cost_plan. The plan must have been built
// against the current session state.
inline void flip_commit(DecodeSession& session, const FlipPlan& plan) {
  if (plan.session_version != session.version())
    throw std::logic_error("flip_commit: plan is stale (session changed since planning)");
  detail::commit_rec(session, plan);
  session.bump_version();
}

}  // namespace cqhc
