#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqhc {

// Bit-packed vector over GF(2). Unused high bits of the last word are kept
// zero so that word-wise weight/compare never needs masking.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), w_(word_count(n), 0) {}

  static BitVector from_indices(std::size_t n, std::initializer_list<std::size_t> idx) {
    BitVector v(n);
    for (std::size_t i : idx) v.set(i);
    return v;
  }
  static BitVector from_indices(std::size_t n, const std::vector<std::size_t>& idx) {
    BitVector v(n);
    for (std::size_t i : idx) v.set(i);
    return v;
  }
  static BitVector ones(std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i + 1 < v.w_.size(); ++i) v.w_[i] = ~uint64_t{0};
    if (!v.w_.empty()) v.w_.back() = tail_mask(n);
    return v;
  }

  std::size_t size() const { return n_; }
  std::size_t words() const { return w_.size(); }
  const std::vector<uint64_t>& data() const { return w_; }
  std::vector<uint64_t>& data() { return w_; }

  bool test(std::size_t i) const {
    check_index(i);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true) {
    check_index(i);
    uint64_t mask = uint64_t{1} << (i & 63);
    if (value)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) {
    check_index(i);
    w_[i >> 6] ^= uint64_t{1} << (i & 63);
  }

  std::size_t weight() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  void clear() {
    for (uint64_t& w : w_) w = 0;
  }

  BitVector& operator^=(const BitVector& o) {
    check_same_length(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  BitVector& operator|=(const BitVector& o) {
    check_same_length(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  // First set bit index, or size() if none.
  std::size_t find_first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return (i << 6) + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return n_;
  }
  // First set bit at index >= from, or size() if none.
  std::size_t find_next(std::size_t from) const {
    if (from >= n_) return n_;
    std::size_t wi = from >> 6;
    uint64_t w = w_[wi] & (~uint64_t{0} << (from & 63));
    while (true) {
      if (w) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == w_.size()) return n_;
      w = w_[wi];
    }
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull ^ n_;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return h;
  }

  static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }
  static uint64_t tail_mask(std::size_t n) {
    return (n & 63) ? ((uint64_t{1} << (n & 63)) - 1) : ~uint64_t{0};
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("BitVector: index " + std::to_string(i) +
                                         " out of range for length " + std::to_string(n_));
  }
  void check_same_length(const BitVector& o) const {
    if (n_ != o.n_)
      throw std::invalid_argument("BitVector: length mismatch (" + std::to_string(n_) +
                                  " vs " + std::to_string(o.n_) + ")");
  }

  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

inline BitVector add(const BitVector& a, const BitVector& b) {
  BitVector r = a;
  r ^= b;
  return r;
}
inline BitVector or_mask(const BitVector& a, const BitVector& b) {
  BitVector r = a;
  r |= b;
  return r;
}
inline std::size_t weight(const BitVector& v) { return v.weight(); }

// Fused |a ^ b| without materializing the XOR.
inline std::size_t weight_xor(const BitVector& a, const BitVector& b) {
  const auto& aw = a.data();
  const auto& bw = b.data();
  if (a.size() != b.size())
    throw std::invalid_argument("weight_xor: length mismatch");
  std::size_t c = 0;
  for (std::size_t i = 0; i < aw.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(aw[i] ^ bw[i]));
  return c;
}

// Fused |m | (f ^ h)| — the inner objective of the greedy stabilizer search.
inline std::size_t weight_or_xor(const BitVector& m, const BitVector& f, const BitVector& h) {
  const auto& mw = m.data();
  const auto& fw = f.data();
  const auto& hw = h.data();
  std::size_t c = 0;
  for (std::size_t i = 0; i < mw.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(mw[i] | (fw[i] ^ hw[i])));
  return c;
}

// Bits [begin, begin+len) of v as a fresh vector.
inline BitVector slice(const BitVector& v, std::size_t begin, std::size_t len) {
  if (begin + len > v.size()) throw std::out_of_range("slice: range out of bounds");
  BitVector out(len);
  const auto& src = v.data();
  std::size_t shift = begin & 63;
  std::size_t base = begin >> 6;
  for (std::size_t i = 0; i < out.words(); ++i) {
    uint64_t w = src[base + i] >> shift;
    if (shift && base + i + 1 < src.size()) w |= src[base + i + 1] << (64 - shift);
    out.data()[i] = w;
  }
  if (!out.data().empty()) out.data().back() &= BitVector::tail_mask(len);
  return out;
}

inline bool parity_and(const BitVector& a, const BitVector& b) {
  const auto& aw = a.data();
  const auto& bw = b.data();
  uint64_t acc = 0;
  for (std::size_t i = 0; i < aw.size(); ++i) acc ^= aw[i] & bw[i];
  return std::popcount(acc) & 1;
}

// Row-major bit-packed matrix over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_(BitVector::word_count(cols)), w_(rows * wpr_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool test(std::size_t r, std::size_t c) const {
    check(r, c);
    return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    check(r, c);
    uint64_t mask = uint64_t{1} << (c & 63);
    if (value)
      w_[r * wpr_ + (c >> 6)] |= mask;
    else
      w_[r * wpr_ + (c >> 6)] &= ~mask;
  }

  BitVector row(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("BitMatrix: row out of range");
    BitVector v(cols_);
    for (std::size_t i = 0; i < wpr_; ++i) v.data()[i] = w_[r * wpr_ + i];
    return v;
  }
  void set_row(std::size_t r, const BitVector& v) {
    if (r >= rows_ || v.size() != cols_)
      throw std::invalid_argument("BitMatrix: set_row shape mismatch");
    for (std::size_t i = 0; i < wpr_; ++i) w_[r * wpr_ + i] = v.data()[i];
  }

  // M v over GF(2); bit r of the result is <row r, v>.
  BitVector matvec(const BitVector& v) const {
    if (v.size() != cols_)
      throw std::invalid_argument("BitMatrix: matvec dimension mismatch (cols " +
                                  std::to_string(cols_) + ", vector " +
                                  std::to_string(v.size()) + ")");
    BitVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      uint64_t acc = 0;
      for (std::size_t i = 0; i < wpr_; ++i) acc ^= w_[r * wpr_ + i] & v.data()[i];
      if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix: index out of range");
  }

  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> w_;
};

namespace detail {

// Row echelon form, deterministic: leftmost pivot column, topmost unused row.
// Returns pivot column per echelon row.
inline std::vector<std::size_t> echelonize(std::vector<BitVector>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  std::size_t cols = rows[0].size();
  std::size_t next = 0;
  for (std::size_t col = 0; col < cols && next < rows.size(); ++col) {
    std::size_t pr = next;
    while (pr < rows.size() && !rows[pr].test(col)) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[next], rows[pr]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != next && rows[r].test(col)) rows[r] ^= rows[next];
    pivots.push_back(col);
    ++next;
  }
  rows.resize(next);
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const BitMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return detail::echelonize(rows).size();
}

// Basis of ker(M): one vector per free column, free columns in increasing
// order, each with a 1 in its own position and pivot entries solved from the
// reduced echelon form.
inline std::vector<BitVector> nullspace_basis(const BitMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  std::vector<std::size_t> pivots = detail::echelonize(rows);

  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector v(m.cols());
    v.set(free);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (rows[r].test(free)) v.set(pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inverse of a square matrix; throws if singular.
inline BitMatrix gf2_inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("gf2_inverse: matrix not square");
  std::size_t n = m.rows();
  std::vector<BitVector> a, inv;
  for (std::size_t r = 0; r < n; ++r) {
    a.push_back(m.row(r));
    BitVector e(n);
    e.set(r);
    inv.push_back(std::move(e));
  }
  std::size_t next = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pr = next;
    while (pr < n && !a[pr].test(col)) ++pr;
    if (pr == n) throw std::invalid_argument("gf2_inverse: matrix is singular");
    std::swap(a[next], a[pr]);
    std::swap(inv[next], inv[pr]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != next && a[r].test(col)) {
        a[r] ^= a[next];
        inv[r] ^= inv[next];
      }
    }
    ++next;
  }
  BitMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) out.set_row(r, inv[r]);
  return out;
}

// Incremental echelon basis, used to test membership in a growing span.
class SpanBasis {
 public:
  // Reduces v against the basis; if a nonzero remainder survives, inserts it
  // and returns true (v was independent).
  bool insert(BitVector v) {
    reduce(v);
    if (v.none()) return false;
    rows_.push_back(std::move(v));
    leads_.push_back(rows_.back().find_first());
    return true;
  }
  bool contains(BitVector v) const {
    reduce(v);
    return v.none();
  }
  std::size_t dimension() const { return rows_.size(); }

 private:
  void reduce(BitVector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (v.test(leads_[i])) v ^= rows_[i];
  }
  std::vector<BitVector> rows_;
  std::vector<std::size_t> leads_;
};

}  // namespace cqhc
