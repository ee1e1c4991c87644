#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cqhc/concat.hpp"
#include "cqhc/session.hpp"

namespace cqhc {

// Raised when a class readout is requested for a block whose residual still
// carries a nonzero syndrome at some lower level.
class BlockInconsistency : public std::runtime_error {
 public:
  BlockInconsistency(int level, std::size_t block)
      : std::runtime_error("residual has a nonzero syndrome in level-" + std::to_string(level) +
                           " block " + std::to_string(block)),
        level_(level),
        block_(block) {}
  int level() const { return level_; }
  std::size_t block() const { return block_; }

 private:
  int level_;
  std::size_t block_;
};

// Logical-class bits of a residual at one concatenation level: one K_l-bit
// vector per level-l block.
struct LevelError {
  int level = 0;
  std::vector<BitVector> per_block;

  bool any() const {
    for (const auto& v : per_block)
      if (v.any()) return true;
    return false;
  }
};

namespace detail {

inline BitVector residual_class_rec(const ConcatCode& code, const BitVector& residual,
                                    int level, std::size_t b) {
  const HammingCode& local = code.code_at(level);
  if (level == 1) {
    BitVector v = slice(residual, code.qubit_begin(1, b), static_cast<std::size_t>(code.n(1)));
    if (!local.syndrome(v).trivial()) throw BlockInconsistency(1, b);
    return local.class_readout(v);
  }
  const std::size_t kprev = code.K(level - 1);
  std::vector<BitVector> child_cls;
  child_cls.reserve(static_cast<std::size_t>(code.n(level)));
  for (int i = 0; i < code.n(level); ++i)
    child_cls.push_back(
        residual_class_rec(code, residual, level - 1, code.child_block(level, b, i)));

  for (std::size_t j = 0; j < local.check_matrix().rows(); ++j) {
    BitVector plane(kprev);
    BitVector row = local.check_matrix().row(j);
    for (std::size_t i = row.find_first(); i < row.size(); i = row.find_next(i + 1))
      plane ^= child_cls[i];
    if (plane.any()) throw BlockInconsistency(level, b);
  }

  BitVector out(code.K(level));
  const int kl = local.k();
  for (int mu = 0; mu < kl; ++mu) {
    BitVector acc(kprev);
    const BitVector& z = local.logical_z()[static_cast<std::size_t>(mu)];
    for (std::size_t i = z.find_first(); i < z.size(); i = z.find_next(i + 1)) acc ^= child_cls[i];
    for (std::size_t lam = acc.find_first(); lam < kprev; lam = acc.find_next(lam + 1))
      out.set(static_cast<std::size_t>(mu) + static_cast<std::size_t>(kl) * lam);
  }
  return out;
}

}  // namespace detail

// Logical classes of a plain residual vector at the given level. The residual
// must have trivial syndromes at every level up to `level`; the first
// offending block is reported otherwise.
inline LevelError level_error(const ConcatCode& code, const BitVector& residual, int level) {
  if (residual.size() != code.qubits())
    throw std::invalid_argument("level_error: residual length mismatch");
  if (level < 1 || level > code.levels())
    throw std::out_of_range("level_error: bad level");
  LevelError out;
  out.level = level;
  out.per_block.reserve(code.block_count(level));
  for (std::size_t b = 0; b < code.block_count(level); ++b)
    out.per_block.push_back(detail::residual_class_rec(code, residual, level, b));
  return out;
}

// Simulator-side syndrome oracle. Holds the true error and a read-only view
// of the decoder's session; syndromes presented to the decoder are those of
// the residual (true error plus recovery state so far, including pending
// tensors). The decoder itself never sees the error.
class SyndromeSource {
 public:
  SyndromeSource(const ConcatCode& code, const DecodeSession& session)
      : code_(&code), session_(&session), error_(code.qubits()) {
    const int L = code.levels();
    err_dirty_.resize(static_cast<std::size_t>(L));
    touched_.resize(static_cast<std::size_t>(L));
    for (int l = 1; l <= L; ++l)
      err_dirty_[static_cast<std::size_t>(l - 1)].assign(code.block_count(l), 0);
  }

  void set_error(const BitVector& e) {
    if (e.size() != code_->qubits())
      throw std::invalid_argument("SyndromeSource: error length mismatch");
    error_ = e;
    reindex();
  }

  const BitVector& error() const { return error_; }

  bool error_dirty(int level, std::size_t b) const {
    return err_dirty_[static_cast<std::size_t>(level - 1)][b] != 0;
  }
  // Nothing below this block: no error support and no recovery state.
  bool subtree_clean(int level, std::size_t b) const {
    return !error_dirty(level, b) && !session_->dirty(level, b);
  }

  Syndrome level1_syndrome(std::size_t b) const {
    const HammingCode& local = code_->code_at(1);
    if (!error_dirty(1, b)) return Syndrome{BitVector(static_cast<std::size_t>(local.r()))};
    return local.syndrome(slice(error_, code_->qubit_begin(1, b),
                                static_cast<std::size_t>(code_->n(1))));
  }

  // Level-l syndromes of block b for all logical positions at once: plane j
  // holds check bit j over the K_{l-1} columns. All planes zero once the
  // block's recovery tensor matches its syndrome.
  std::vector<BitVector> syndrome_planes(int level, std::size_t b) const {
    const HammingCode& local = code_->code_at(level);
    const std::size_t kprev = code_->K(level - 1);
    std::vector<BitVector> planes(local.check_matrix().rows(), BitVector(kprev));
    if (subtree_clean(level, b)) return planes;

    std::vector<BitVector> cols = effective_child_classes(level, b);
    for (std::size_t j = 0; j < planes.size(); ++j) {
      BitVector row = local.check_matrix().row(j);
      for (std::size_t i = row.find_first(); i < row.size(); i = row.find_next(i + 1))
        planes[j] ^= cols[i];
    }
    return planes;
  }

  // Residual class of a level-l block, pending tensors included.
  BitVector residual_class(int level, std::size_t b) const {
    if (subtree_clean(level, b)) return BitVector(code_->K(level));
    const HammingCode& local = code_->code_at(level);
    if (level == 1) {
      BitVector v = slice(error_, code_->qubit_begin(1, b), static_cast<std::size_t>(code_->n(1)));
      v ^= session_->level1(b);
      if (!local.syndrome(v).trivial()) throw BlockInconsistency(1, b);
      return local.class_readout(v);
    }
    const std::size_t kprev = code_->K(level - 1);
    std::vector<BitVector> cols = effective_child_classes(level, b);

    for (std::size_t j = 0; j < local.check_matrix().rows(); ++j) {
      BitVector plane(kprev);
      BitVector row = local.check_matrix().row(j);
      for (std::size_t i = row.find_first(); i < row.size(); i = row.find_next(i + 1))
        plane ^= cols[i];
      if (plane.any()) throw BlockInconsistency(level, b);
    }

    BitVector out(code_->K(level));
    const int kl = local.k();
    for (int mu = 0; mu < kl; ++mu) {
      BitVector acc(kprev);
      const BitVector& z = local.logical_z()[static_cast<std::size_t>(mu)];
      for (std::size_t i = z.find_first(); i < z.size(); i = z.find_next(i + 1)) acc ^= cols[i];
      for (std::size_t lam = acc.find_first(); lam < kprev; lam = acc.find_next(lam + 1))
        out.set(static_cast<std::size_t>(mu) + static_cast<std::size_t>(kl) * lam);
    }
    return out;
  }

 private:
  // Child residual classes with this block's own pending rows folded in.
  std::vector<BitVector> effective_child_classes(int level, std::size_t b) const {
    std::vector<BitVector> cols;
    cols.reserve(static_cast<std::size_t>(code_->n(level)));
    const auto& rows = session_->tensor(level, b);
    for (int i = 0; i < code_->n(level); ++i) {
      BitVector c = residual_class(level - 1, code_->child_block(level, b, i));
      c ^= rows[static_cast<std::size_t>(i)];
      cols.push_back(std::move(c));
    }
    return cols;
  }

  void reindex() {
    for (auto l = std::size_t{0}; l < touched_.size(); ++l) {
      for (std::size_t b : touched_[l]) err_dirty_[l][b] = 0;
      touched_[l].clear();
    }
    const std::size_t n1 = static_cast<std::size_t>(code_->n(1));
    for (std::size_t q = error_.find_first(); q < error_.size(); q = error_.find_next(q + 1)) {
      std::size_t b = q / n1;
      for (int l = 1; l <= code_->levels(); ++l) {
        auto& flags = err_dirty_[static_cast<std::size_t>(l - 1)];
        if (flags[b]) break;
        flags[b] = 1;
        touched_[static_cast<std::size_t>(l - 1)].push_back(b);
        if (l < code_->levels()) b = code_->parent_block(l, b);
      }
    }
  }

  const ConcatCode* code_;
  const DecodeSession* session_;
  BitVector error_;
  std::vector<std::vector<char>> err_dirty_;
  std::vector<std::vector<std::size_t>> touched_;
};

// True when at least one logical qubit of the fully decoded session reads
// out a nontrivial class against the given error.
inline bool is_failure(const ConcatCode& code, const BitVector& error,
                       const DecodeSession& session) {
  SyndromeSource view(code, session);
  view.set_error(error);
  return view.residual_class(code.levels(), 0).any();
}

}  // namespace cqhc
