#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqhc/qhc.hpp"

namespace cqhc {

// Level profile (n_1, ..., n_L), lowest level first. Each block length must
// be 2^r - 1 with r >= 3.
struct Profile {
  std::vector<int> block_lengths;

  std::size_t levels() const { return block_lengths.size(); }

  static int rank_of_length(int n) {
    int r = 0;
    while ((1 << (r + 1)) - 1 <= n) ++r;
    if (((1 << r) - 1) != n || r < 3)
      throw std::invalid_argument("Profile: block length " + std::to_string(n) +
                                  " is not 2^r-1 with r >= 3");
    return r;
  }

  void validate() const {
    if (block_lengths.empty()) throw std::invalid_argument("Profile: needs at least one level");
    for (int n : block_lengths) rank_of_length(n);
  }

  // "n1xn2x...xnL"
  static Profile parse(const std::string& s) {
    Profile p;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t next = s.find('x', pos);
      std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (tok.empty()) throw std::invalid_argument("Profile: bad profile string '" + s + "'");
      std::size_t used = 0;
      int n = 0;
      try {
        n = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("Profile: bad profile string '" + s + "'");
      }
      if (used != tok.size()) throw std::invalid_argument("Profile: bad profile string '" + s + "'");
      p.block_lengths.push_back(n);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    p.validate();
    return p;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < block_lengths.size(); ++i) {
      if (i) s += 'x';
      s += std::to_string(block_lengths[i]);
    }
    return s;
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.block_lengths == b.block_lengths;
  }
};

// A concatenated quantum Hamming code. Level-l blocks (l = 1..L) own n_l
// children; physical (level-0) qubits of a level-l block are contiguous in
// the flat index, with the level-1 coordinate varying fastest.
//
// Logical qubits of a level-l block are labeled by tuples (i_l, ..., i_1)
// with i_m in [k_m]; the flat label is (i_l - 1) + k_l * flat(i_{l-1}, ..., i_1),
// i.e. the highest-level coordinate varies fastest. Recovery and flip
// tensors share this layout, which makes a tensor row directly usable as the
// child block's flip vector.
class ConcatCode {
 public:
  explicit ConcatCode(Profile profile) : profile_(std::move(profile)) {
    profile_.validate();
    std::map<int, std::shared_ptr<const HammingCode>> by_r;  // shared per distinct r
    n_cum_.push_back(1);
    k_cum_.push_back(1);
    for (int n : profile_.block_lengths) {
      int r = Profile::rank_of_length(n);
      auto it = by_r.find(r);
      if (it == by_r.end()) it = by_r.emplace(r, std::make_shared<const HammingCode>(r)).first;
      codes_.push_back(it->second);
      n_cum_.push_back(n_cum_.back() * static_cast<std::size_t>(n));
      k_cum_.push_back(k_cum_.back() * static_cast<std::size_t>(it->second->k()));
    }
  }

  const Profile& profile() const { return profile_; }
  int levels() const { return static_cast<int>(profile_.block_lengths.size()); }

  const HammingCode& code_at(int level) const { return *codes_.at(check_level(level) - 1); }
  int n(int level) const { return profile_.block_lengths[check_level(level) - 1]; }
  int k(int level) const { return codes_[check_level(level) - 1]->k(); }

  // Cumulative sizes: N(l) physical qubits and K(l) logical qubits of one
  // level-l block; N(0) = K(0) = 1.
  std::size_t N(int level) const { return n_cum_.at(static_cast<std::size_t>(level)); }
  std::size_t K(int level) const { return k_cum_.at(static_cast<std::size_t>(level)); }
  std::size_t qubits() const { return n_cum_.back(); }
  std::size_t logical_qubits() const { return k_cum_.back(); }
  std::uint64_t distance() const {
    std::uint64_t d = 1;
    for (int l = 0; l < levels(); ++l) d *= 3;
    return d;
  }

  std::size_t block_count(int level) const { return qubits() / N(check_level(level)); }
  // Child i (0-based) of level-l block b is a level-(l-1) block.
  std::size_t child_block(int level, std::size_t b, std::size_t i) const {
    return b * static_cast<std::size_t>(n(level)) + i;
  }
  std::size_t parent_block(int level, std::size_t b) const {
    return b / static_cast<std::size_t>(n(level + 1));
  }
  std::size_t qubit_begin(int level, std::size_t b) const { return b * N(level); }

  // Flat physical index from a 1-based tuple (i_L, ..., i_1).
  std::size_t flat(const std::vector<int>& tuple) const {
    if (tuple.size() != profile_.block_lengths.size())
      throw std::invalid_argument("ConcatCode: address tuple has wrong arity");
    std::size_t idx = 0;
    for (int l = levels(); l >= 1; --l) {
      int i = tuple[static_cast<std::size_t>(levels() - l)];
      if (i < 1 || i > n(l))
        throw std::out_of_range("ConcatCode: tuple component " + std::to_string(i) +
                                " out of range at level " + std::to_string(l));
      idx = idx * static_cast<std::size_t>(n(l)) + static_cast<std::size_t>(i - 1);
    }
    return idx;
  }

  // Inverse of flat(): returns (i_L, ..., i_1), 1-based.
  std::vector<int> address(std::size_t flat_index) const {
    if (flat_index >= qubits())
      throw std::out_of_range("ConcatCode: flat index out of range");
    std::vector<int> tuple(static_cast<std::size_t>(levels()));
    for (int l = 1; l <= levels(); ++l) {
      tuple[static_cast<std::size_t>(levels() - l)] =
          static_cast<int>(flat_index % static_cast<std::size_t>(n(l))) + 1;
      flat_index /= static_cast<std::size_t>(n(l));
    }
    return tuple;
  }

 private:
  int check_level(int level) const {
    if (level < 1 || level > levels())
      throw std::out_of_range("ConcatCode: level " + std::to_string(level) + " out of range");
    return level;
  }

  Profile profile_;
  std::vector<std::shared_ptr<const HammingCode>> codes_;
  std::vector<std::size_t> n_cum_, k_cum_;
};

}  // namespace cqhc
