#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cqhc/concat.hpp"

namespace cqhc {

// Mutable state of one decoding run. Level-1 blocks hold their physical
// recovery vector; every higher block holds an n_l x K_{l-1} recovery tensor
// (row i = flip vector assigned to child i). Tensors stay pending until the
// final commit pass resolves them into the level-1 vectors.
//
// Dirty flags are conservative: set on any write to a block's subtree, never
// cleared mid-decode. A clean subtree is guaranteed to hold all-zero state,
// which the decoders use to skip untouched blocks.
class DecodeSession {
 public:
  explicit DecodeSession(const ConcatCode& code) : code_(&code) {
    const int L = code.levels();
    level1_.reserve(code.block_count(1));
    for (std::size_t b = 0; b < code.block_count(1); ++b)
      level1_.emplace_back(static_cast<std::size_t>(code.n(1)));
    tensors_.resize(L >= 2 ? static_cast<std::size_t>(L - 1) : 0);
    for (int l = 2; l <= L; ++l) {
      auto& per_block = tensors_[static_cast<std::size_t>(l - 2)];
      per_block.resize(code.block_count(l));
      for (auto& rows : per_block) {
        rows.reserve(static_cast<std::size_t>(code.n(l)));
        for (int i = 0; i < code.n(l); ++i) rows.emplace_back(code.K(l - 1));
      }
    }
    dirty_.resize(static_cast<std::size_t>(L));
    touched_.resize(static_cast<std::size_t>(L));
    for (int l = 1; l <= L; ++l)
      dirty_[static_cast<std::size_t>(l - 1)].assign(code.block_count(l), 0);
  }

  const ConcatCode& code() const { return *code_; }

  BitVector& level1(std::size_t b) { return level1_.at(b); }
  const BitVector& level1(std::size_t b) const { return level1_.at(b); }

  std::vector<BitVector>& tensor(int level, std::size_t b) {
    return tensors_.at(static_cast<std::size_t>(level - 2)).at(b);
  }
  const std::vector<BitVector>& tensor(int level, std::size_t b) const {
    return tensors_.at(static_cast<std::size_t>(level - 2)).at(b);
  }

  bool dirty(int level, std::size_t b) const {
    return dirty_[static_cast<std::size_t>(level - 1)][b] != 0;
  }
  void mark_dirty(int level, std::size_t b) {
    for (int l = level; l <= code_->levels(); ++l) {
      auto& flags = dirty_[static_cast<std::size_t>(l - 1)];
      if (flags[b]) break;  // ancestors already marked
      flags[b] = 1;
      touched_[static_cast<std::size_t>(l - 1)].push_back(b);
      if (l < code_->levels()) b = code_->parent_block(l, b);
    }
  }

  std::uint64_t version() const { return version_; }
  void bump_version() { ++version_; }

  void reset() {
    for (int l = 1; l <= code_->levels(); ++l) {
      auto& flags = dirty_[static_cast<std::size_t>(l - 1)];
      for (std::size_t b : touched_[static_cast<std::size_t>(l - 1)]) {
        flags[b] = 0;
        if (l == 1) {
          level1_[b].clear();
        } else {
          for (auto& row : tensor(l, b)) row.clear();
        }
      }
      touched_[static_cast<std::size_t>(l - 1)].clear();
    }
    ++version_;
  }

  // Physical recovery accumulated so far (level-1 vectors concatenated).
  // Complete only after the commit pass has resolved all pending tensors.
  BitVector recovery_vector() const {
    BitVector out(code_->qubits());
    const std::size_t n1 = static_cast<std::size_t>(code_->n(1));
    for (std::size_t b = 0; b < level1_.size(); ++b) {
      if (!dirty(1, b)) continue;
      for (std::size_t i = level1_[b].find_first(); i < n1; i = level1_[b].find_next(i + 1))
        out.set(b * n1 + i);
    }
    return out;
  }

  std::size_t recovery_weight() const {
    std::size_t w = 0;
    for (const auto& v : level1_) w += v.weight();
    return w;
  }

  bool pending_tensors() const {
    for (const auto& per_block : tensors_)
      for (const auto& rows : per_block)
        for (const auto& row : rows)
          if (row.any()) return true;
    return false;
  }

  // Order-stable digest of the full recovery state (tensors + level-1
  // vectors); used by the purity checks on cost evaluation.
  std::uint64_t state_hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const auto& v : level1_) mix(v.hash());
    for (const auto& per_block : tensors_)
      for (const auto& rows : per_block)
        for (const auto& row : rows) mix(row.hash());
    return h;
  }

 private:
  // touched_ mirrors dirty_ so reset() is O(previously dirty blocks)
  const ConcatCode* code_;
  std::vector<BitVector> level1_;
  std::vector<std::vector<std::vector<BitVector>>> tensors_;  // [level-2][block][row]
  std::vector<std::vector<char>> dirty_;                      // [level-1][block]
  std::vector<std::vector<std::size_t>> touched_;
  std::uint64_t version_ = 0;
};

}  // namespace cqhc
