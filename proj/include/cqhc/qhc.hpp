#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqhc/gf2.hpp"

namespace cqhc {

struct Syndrome {
  BitVector bits;  // length r; bit 0 is the top check row (most significant)

  bool trivial() const { return bits.none(); }
  friend bool operator==(const Syndrome& a, const Syndrome& b) { return a.bits == b.bits; }
};

struct CosetMin {
  std::size_t weight = 0;
  BitVector realization;   // attains the minimum; same syndrome as the base
  std::size_t stab_index = 0;  // index in the pinned stabilizer enumeration
};

// One [[2^r-1, 2^r-2r-1, 3]] quantum Hamming code with H_X = H_Z. Qubits are
// labeled 1..n externally (column q of H is the r-bit binary of q); storage
// is 0-based and the conversion stays inside this class.
class HammingCode {
 public:
  explicit HammingCode(int r) : r_(r) {
    if (r < 3) throw std::invalid_argument("HammingCode: r must be >= 3 (got " +
                                           std::to_string(r) + ")");
    n_ = (1 << r) - 1;
    k_ = n_ - 2 * r;

    h_ = BitMatrix(static_cast<std::size_t>(r), static_cast<std::size_t>(n_));
    for (int q = 1; q <= n_; ++q)
      for (int j = 0; j < r; ++j)
        if ((q >> (r - 1 - j)) & 1) h_.set(j, q - 1);

    build_stabilizers();
    build_triples();
    build_logicals();
  }

  int r() const { return r_; }
  int n() const { return n_; }
  int k() const { return k_; }

  // One transfer candidate per (source, pair) rotation of a weight-3 triple:
  // moving a flip from qubit `src` to the pair {a, b} preserves every check.
  struct Transfer {
    int src, a, b;  // 1-based, a < b, src ^ a ^ b == 0
  };
  const std::vector<Transfer>& transfer_candidates() const { return transfers_; }

  const BitMatrix& check_matrix() const { return h_; }
  const std::vector<BitVector>& x_stabilizers() const { return stabs_; }
  const std::vector<std::array<int, 3>>& weight3_triples() const { return triples_; }
  // Columns of L_X / L_Z (length n, k of them). L_X columns are weight-3
  // triple indicators, so every unit logical flip has a weight-3 realization.
  const std::vector<BitVector>& logical_x() const { return lx_; }
  const std::vector<BitVector>& logical_z() const { return lz_; }

  Syndrome syndrome(const BitVector& e) const {
    if (static_cast<int>(e.size()) != n_)
      throw std::invalid_argument("HammingCode: error length " + std::to_string(e.size()) +
                                  " does not match n=" + std::to_string(n_));
    return Syndrome{h_.matvec(e)};
  }

  // Nonzero syndrome bits read as the binary label of the faulty qubit.
  int syndrome_qubit(const Syndrome& s) const {
    int q = 0;
    for (int j = 0; j < r_; ++j)
      if (s.bits.test(j)) q |= 1 << (r_ - 1 - j);
    return q;  // 0 when trivial
  }

  BitVector lookup_decode(const Syndrome& s) const {
    BitVector e(static_cast<std::size_t>(n_));
    int q = syndrome_qubit(s);
    if (q != 0) e.set(q - 1);
    return e;
  }

  // k-bit readout <z_j, v>; defined as a logical class only for residuals
  // with trivial syndrome, which is enforced here.
  BitVector logical_class(const BitVector& v) const {
    if (!syndrome(v).trivial())
      throw std::invalid_argument("HammingCode: logical_class requires a trivial syndrome");
    return class_readout(v);
  }

  BitVector class_readout(const BitVector& v) const {
    BitVector out(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j)
      if (parity_and(lz_[j], v)) out.set(j);
    return out;
  }

  // L_X delta for a k-bit flip vector.
  BitVector apply_logical(const BitVector& delta) const {
    if (static_cast<int>(delta.size()) != k_)
      throw std::invalid_argument("HammingCode: logical flip length mismatch");
    BitVector v(static_cast<std::size_t>(n_));
    for (std::size_t j = delta.find_first(); j < delta.size(); j = delta.find_next(j + 1))
      v ^= lx_[j];
    return v;
  }

  // min_h |base + L_X delta + h| over the full X-stabilizer group. Ties go to
  // the first stabilizer in enumeration order.
  CosetMin coset_min(const BitVector& base, const BitVector& delta) const {
    BitVector v = base;
    if (static_cast<int>(v.size()) != n_)
      throw std::invalid_argument("HammingCode: coset_min base length mismatch");
    if (static_cast<int>(delta.size()) != k_)
      throw std::invalid_argument("HammingCode: coset_min delta length mismatch");
    for (std::size_t j = delta.find_first(); j < delta.size(); j = delta.find_next(j + 1))
      v ^= lx_[j];
    std::size_t best = weight_xor(v, stabs_[0]);
    std::size_t best_idx = 0;
    for (std::size_t t = 1; t < stabs_.size() && best > 0; ++t) {
      std::size_t w = weight_xor(v, stabs_[t]);
      if (w < best) {
        best = w;
        best_idx = t;
      }
    }
    v ^= stabs_[best_idx];
    return CosetMin{best, std::move(v), best_idx};
  }

 private:
  void build_stabilizers() {
    // Element t of image(H^T), for t = 0..2^r-1 in increasing order:
    // bit q-1 is the parity of popcount(q & t).
    stabs_.reserve(static_cast<std::size_t>(n_) + 1);
    for (int t = 0; t <= n_; ++t) {
      BitVector s(static_cast<std::size_t>(n_));
      for (int q = 1; q <= n_; ++q)
        if (std::popcount(static_cast<unsigned>(q & t)) & 1) s.set(q - 1);
      stabs_.push_back(std::move(s));
    }
  }

  void build_triples() {
    for (int a = 1; a <= n_; ++a)
      for (int b = a + 1; b <= n_; ++b) {
        int c = a ^ b;
        if (c > b) triples_.push_back({a, b, c});
      }
    for (const auto& t : triples_)
      for (int j = 0; j < 3; ++j) {
        int src = t[j];
        int a = t[(j + 1) % 3], b = t[(j + 2) % 3];
        transfers_.push_back(Transfer{src, std::min(a, b), std::max(a, b)});
      }
    std::sort(transfers_.begin(), transfers_.end(), [](const Transfer& x, const Transfer& y) {
      if (x.src != y.src) return x.src < y.src;
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    });
  }

  void build_logicals() {
    // L_X: the first k triple indicators that are independent modulo the
    // stabilizer group. L_Z: the dual combination fixed by inverting the
    // Gram matrix of those columns, so that L_Z^T L_X = I.
    SpanBasis span;
    for (std::size_t j = 0; j < h_.rows(); ++j) span.insert(h_.row(j));
    for (const auto& t : triples_) {
      if (static_cast<int>(lx_.size()) == k_) break;
      BitVector v = BitVector::from_indices(static_cast<std::size_t>(n_),
                                            {static_cast<std::size_t>(t[0] - 1),
                                             static_cast<std::size_t>(t[1] - 1),
                                             static_cast<std::size_t>(t[2] - 1)});
      if (span.insert(v)) lx_.push_back(std::move(v));
    }
    if (static_cast<int>(lx_.size()) != k_)
      throw std::logic_error("HammingCode: triple classes did not span the logical space");

    BitMatrix gram(static_cast<std::size_t>(k_), static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        if (parity_and(lx_[i], lx_[j])) gram.set(i, j);
    BitMatrix ginv = gf2_inverse(gram);

    lz_.reserve(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) {
      BitVector z(static_cast<std::size_t>(n_));
      for (int m = 0; m < k_; ++m)
        if (ginv.test(j, m)) z ^= lx_[m];
      lz_.push_back(std::move(z));
    }

    for (int i = 0; i < k_; ++i) {
      if (!syndrome(lx_[i]).trivial() || !syndrome(lz_[i]).trivial())
        throw std::logic_error("HammingCode: logical operator fails check commutation");
      for (int j = 0; j < k_; ++j)
        if (parity_and(lz_[i], lx_[j]) != (i == j))
          throw std::logic_error("HammingCode: logical basis is not dual");
    }
  }

  int r_, n_, k_;
  BitMatrix h_;
  std::vector<BitVector> stabs_;
  std::vector<std::array<int, 3>> triples_;
  std::vector<Transfer> transfers_;
  std::vector<BitVector> lx_, lz_;
};

inline HammingCode build_qhc(int r) { return HammingCode(r); }

}  // namespace cqhc
