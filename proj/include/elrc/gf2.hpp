#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elrc/error.hpp"

namespace elrc::gf2 {

/// Fixed-length vector over GF(2), packed 64 bits per word.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  [[nodiscard]] bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other) {
    if (other.size_ != size_) {
      throw DimensionMismatch("bit vector length mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= other.words_[w];
    }
    return *this;
  }

  friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  /// Inner product over GF(2).
  [[nodiscard]] bool dot(const BitVector& other) const {
    if (other.size_ != size_) {
      throw DimensionMismatch("bit vector length mismatch");
    }
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
  }

  [[nodiscard]] std::size_t popcount() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) {
      total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
  }

  [[nodiscard]] bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  /// Lowest set index at or after `from`.
  [[nodiscard]] std::optional<std::size_t> find_first(std::size_t from = 0) const noexcept {
    if (from >= size_) {
      return std::nullopt;
    }
    std::size_t w = from >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (word != 0) {
        const std::size_t idx = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
        return idx < size_ ? std::optional<std::size_t>{idx} : std::nullopt;
      }
      if (++w == words_.size()) {
        return std::nullopt;
      }
      word = words_[w];
    }
  }

  /// Indices of set bits in increasing order.
  [[nodiscard]] std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (auto i = find_first(); i; i = find_first(*i + 1)) {
      out.push_back(*i);
    }
    return out;
  }

  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// '0'/'1' characters, index 0 first.
  [[nodiscard]] std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (test(i)) {
        s[i] = '1';
      }
    }
    return s;
  }

  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw ParseError("expected '0' or '1' at position " + std::to_string(i));
      }
    }
    return v;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  [[nodiscard]] const BitVector& row(std::size_t i) const { return rows_[i]; }
  [[nodiscard]] BitVector& row(std::size_t i) { return rows_[i]; }

  [[nodiscard]] bool get(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j, bool value = true) { rows_[i].set(j, value); }

  void push_back(BitVector row) {
    if (row.size() != cols_) {
      throw DimensionMismatch("row length " + std::to_string(row.size()) + " does not match " +
                              std::to_string(cols_) + " columns");
    }
    rows_.push_back(std::move(row));
  }

  [[nodiscard]] BitMatrix transposed() const {
    BitMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      for (auto j : rows_[i].support()) {
        t.set(j, i);
      }
    }
    return t;
  }

  /// Matrix-vector product M·x.
  [[nodiscard]] BitVector multiply(const BitVector& x) const {
    if (x.size() != cols_) {
      throw DimensionMismatch("vector length does not match matrix columns");
    }
    BitVector y(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      y.set(i, rows_[i].dot(x));
    }
    return y;
  }

  [[nodiscard]] std::size_t rank() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Incrementally built basis of a row space. Each stored vector is keyed by its
/// lowest set bit, and no two stored vectors share that pivot.
class RowBasis {
 public:
  explicit RowBasis(std::size_t cols) : cols_(cols), owner_(cols, kNone) {}

  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t rank() const noexcept { return basis_.size(); }

  /// Membership in the span. If v is in the span its lowest bit is always some
  /// stored pivot, so leading-bit reduction alone drives it to zero.
  [[nodiscard]] bool contains(const BitVector& v) const { return leading_reduce(v).none(); }

  /// Returns true when `v` was independent of the current span (rank grew).
  bool insert(const BitVector& v) {
    BitVector residual = leading_reduce(v);
    const auto lead = residual.find_first();
    if (!lead) {
      return false;
    }
    owner_[*lead] = basis_.size();
    basis_.push_back(std::move(residual));
    return true;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Clears the leading bit repeatedly until it lands on a fresh pivot (or v vanishes).
  [[nodiscard]] BitVector leading_reduce(BitVector v) const {
    if (v.size() != cols_) {
      throw DimensionMismatch("vector length does not match basis width");
    }
    for (auto lead = v.find_first(); lead && owner_[*lead] != kNone; lead = v.find_first(*lead)) {
      v ^= basis_[owner_[*lead]];
    }
    return v;
  }

  std::size_t cols_;
  std::vector<std::size_t> owner_;
  std::vector<BitVector> basis_;
};

inline std::size_t BitMatrix::rank() const {
  RowBasis basis(cols_);
  for (const auto& r : rows_) {
    basis.insert(r);
  }
  return basis.rank();
}

/// True iff every row of `inner` lies in the row space of `outer`.
[[nodiscard]] inline bool row_space_contains(const BitMatrix& outer, const BitMatrix& inner) {
  if (outer.cols() != inner.cols()) {
    throw DimensionMismatch("matrices have different widths");
  }
  RowBasis basis(outer.cols());
  for (std::size_t i = 0; i < outer.rows(); ++i) {
    basis.insert(outer.row(i));
  }
  for (std::size_t i = 0; i < inner.rows(); ++i) {
    if (!basis.contains(inner.row(i))) {
      return false;
    }
  }
  return true;
}

}  // namespace elrc::gf2
