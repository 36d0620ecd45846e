#pragma once

// Binary product code: m-fold direct product of the [r+1, r] single-parity-check
// code, presented through an explicit parity-check matrix H whose rows are indexed
// by the parity coordinates Z_{r+1}^m \ Z_r^m.
//
// Axes are 0-based throughout the C++ API. Text formats print them 1-based.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elrc/error.hpp"
#include "elrc/gf2.hpp"

namespace elrc {

using gf2::BitMatrix;
using gf2::BitVector;

/// Codeword or information word, symbol x_a stored at bit coord_rank(a).
using BitWord = BitVector;

inline constexpr std::size_t kDefaultMaxLength = std::size_t{1} << 20;

class CodeParams {
 public:
  CodeParams(unsigned r, unsigned m, std::size_t max_length = kDefaultMaxLength) : r_(r), m_(m) {
    if (r < 2) {
      throw InvalidParameters("r must be at least 2 (got " + std::to_string(r) + ")");
    }
    if (m < 1) {
      throw InvalidParameters("m must be at least 1");
    }
    std::size_t n = 1;
    std::size_t k = 1;
    for (unsigned j = 0; j < m; ++j) {
      if (n > max_length / (r + 1)) {
        throw InvalidParameters("code length (" + std::to_string(r + 1) + ")^" + std::to_string(m) +
                                " exceeds the limit of " + std::to_string(max_length) + " symbols");
      }
      n *= r + 1;
      k *= r;
    }
    n_ = n;
    k_ = k;
    strides_.assign(m, 1);
    for (unsigned j = m - 1; j > 0; --j) {
      strides_[j - 1] = strides_[j] * (r + 1);
    }
  }

  [[nodiscard]] unsigned r() const noexcept { return r_; }
  [[nodiscard]] unsigned m() const noexcept { return m_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  /// Sequential erasure tolerance 2^m - 1.
  [[nodiscard]] std::size_t t() const noexcept { return (std::size_t{1} << m_) - 1; }
  [[nodiscard]] unsigned radix() const noexcept { return r_ + 1; }

  /// Rank distance between neighbours along `axis` (axis 0 most significant).
  [[nodiscard]] std::size_t stride(std::size_t axis) const noexcept { return strides_[axis]; }

  [[nodiscard]] unsigned digit(std::size_t rank, std::size_t axis) const noexcept {
    return static_cast<unsigned>((rank / strides_[axis]) % radix());
  }

  friend bool operator==(const CodeParams& a, const CodeParams& b) noexcept {
    return a.r_ == b.r_ && a.m_ == b.m_;
  }

 private:
  unsigned r_;
  unsigned m_;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::size_t> strides_;
};

/// Element (λ_1, ..., λ_m) of Z_{r+1}^m. Ordering is lexicographic, which agrees
/// with coord_rank for coordinates of the same code.
class Coord {
 public:
  Coord() = default;
  explicit Coord(std::vector<unsigned> digits) : digits_(std::move(digits)) {}
  Coord(std::initializer_list<unsigned> digits) : digits_(digits) {}

  [[nodiscard]] std::size_t size() const noexcept { return digits_.size(); }
  [[nodiscard]] unsigned operator[](std::size_t axis) const { return digits_[axis]; }
  [[nodiscard]] std::span<const unsigned> digits() const noexcept { return digits_; }

  /// Copy with the digit on `axis` replaced.
  [[nodiscard]] Coord with(std::size_t axis, unsigned value) const {
    Coord c = *this;
    c.digits_[axis] = value;
    return c;
  }

  friend auto operator<=>(const Coord&, const Coord&) = default;
  friend bool operator==(const Coord&, const Coord&) = default;

 private:
  std::vector<unsigned> digits_;
};

inline void validate_coord(const CodeParams& p, const Coord& a) {
  if (a.size() != p.m()) {
    throw InvalidCoordinate("coordinate has " + std::to_string(a.size()) + " digits, expected " +
                            std::to_string(p.m()));
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > p.r()) {
      throw InvalidCoordinate("digit " + std::to_string(a[j]) + " on axis " + std::to_string(j + 1) +
                              " exceeds r=" + std::to_string(p.r()));
    }
  }
}

inline void validate_axis(const CodeParams& p, std::size_t axis) {
  if (axis >= p.m()) {
    throw InvalidCoordinate("axis " + std::to_string(axis) + " out of range for m=" +
                            std::to_string(p.m()));
  }
}

/// Mixed-radix value of `a`, digit 0 most significant.
[[nodiscard]] inline std::size_t coord_rank(const CodeParams& p, const Coord& a) {
  validate_coord(p, a);
  std::size_t rank = 0;
  for (auto d : a.digits()) {
    rank = rank * p.radix() + d;
  }
  return rank;
}

[[nodiscard]] inline Coord coord_at(const CodeParams& p, std::size_t rank) {
  if (rank >= p.n()) {
    throw InvalidCoordinate("rank " + std::to_string(rank) + " out of range for n=" +
                            std::to_string(p.n()));
  }
  std::vector<unsigned> digits(p.m());
  for (std::size_t j = 0; j < p.m(); ++j) {
    digits[j] = p.digit(rank, j);
  }
  return Coord(std::move(digits));
}

/// Member of Z_r^m, i.e. no digit equals r.
[[nodiscard]] inline bool is_information_rank(const CodeParams& p, std::size_t rank) noexcept {
  for (std::size_t j = 0; j < p.m(); ++j) {
    if (p.digit(rank, j) == p.r()) {
      return false;
    }
  }
  return true;
}

[[nodiscard]] inline bool is_information_coord(const CodeParams& p, const Coord& a) {
  return is_information_rank(p, coord_rank(p, a));
}

/// Ranks of Z_r^m (information positions) in increasing order.
[[nodiscard]] inline std::vector<std::size_t> information_ranks(const CodeParams& p) {
  std::vector<std::size_t> out;
  out.reserve(p.k());
  for (std::size_t rank = 0; rank < p.n(); ++rank) {
    if (is_information_rank(p, rank)) {
      out.push_back(rank);
    }
  }
  return out;
}

/// Ranks of Z_{r+1}^m \ Z_r^m in increasing order; these index the rows of H.
[[nodiscard]] inline std::vector<std::size_t> parity_ranks(const CodeParams& p) {
  std::vector<std::size_t> out;
  out.reserve(p.n() - p.k());
  for (std::size_t rank = 0; rank < p.n(); ++rank) {
    if (!is_information_rank(p, rank)) {
      out.push_back(rank);
    }
  }
  return out;
}

namespace detail {

inline void require_parity(const CodeParams& p, std::size_t rank) {
  if (is_information_rank(p, rank)) {
    throw NotParityCoordinate("coordinate has no digit equal to r; T and L are defined only on parity coordinates");
  }
}

/// Ranks of L(α) in increasing order: the free axes (digit r) range over Z_r.
inline std::vector<std::size_t> l_set_ranks(const CodeParams& p, std::size_t rank) {
  require_parity(p, rank);
  std::vector<std::size_t> free_axes;
  std::size_t base = rank;
  for (std::size_t j = 0; j < p.m(); ++j) {
    if (p.digit(rank, j) == p.r()) {
      free_axes.push_back(j);
      base -= static_cast<std::size_t>(p.r()) * p.stride(j);
    }
  }
  // Expanding the most significant free axis first keeps the list sorted, since
  // (r-1) * stride(j+1) < stride(j).
  std::vector<std::size_t> out{base};
  for (auto axis : free_axes) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * p.r());
    for (auto v : out) {
      for (unsigned d = 0; d < p.r(); ++d) {
        next.push_back(v + d * p.stride(axis));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Ranks of the line L^(axis)_α in increasing order; includes α itself.
inline std::vector<std::size_t> line_ranks(const CodeParams& p, std::size_t rank, std::size_t axis) {
  const std::size_t stride = p.stride(axis);
  const std::size_t start = rank - static_cast<std::size_t>(p.digit(rank, axis)) * stride;
  std::vector<std::size_t> out(p.radix());
  for (unsigned v = 0; v < p.radix(); ++v) {
    out[v] = start + v * stride;
  }
  return out;
}

}  // namespace detail

/// T(α): axes whose digit is below r. Requires α to be a parity coordinate.
[[nodiscard]] inline std::vector<std::size_t> t_set(const CodeParams& p, const Coord& a) {
  const std::size_t rank = coord_rank(p, a);
  detail::require_parity(p, rank);
  std::vector<std::size_t> axes;
  for (std::size_t j = 0; j < p.m(); ++j) {
    if (a[j] < p.r()) {
      axes.push_back(j);
    }
  }
  return axes;
}

/// L(α): all information coordinates agreeing with α on T(α), in rank order.
[[nodiscard]] inline std::vector<Coord> l_set(const CodeParams& p, const Coord& a) {
  std::vector<Coord> out;
  for (auto rank : detail::l_set_ranks(p, coord_rank(p, a))) {
    out.push_back(coord_at(p, rank));
  }
  return out;
}

/// L^(i)_α: the r+1 coordinates that agree with α off `axis`, in rank order.
[[nodiscard]] inline std::vector<Coord> line_coords(const CodeParams& p, const Coord& a, std::size_t axis) {
  validate_axis(p, axis);
  std::vector<Coord> out;
  for (auto rank : detail::line_ranks(p, coord_rank(p, a), axis)) {
    out.push_back(coord_at(p, rank));
  }
  return out;
}

struct ParityCheckMatrix {
  BitMatrix rows;                   // (n-k) x n
  std::vector<std::size_t> row_index;  // rank of the parity coordinate owning each row
};

[[nodiscard]] inline ParityCheckMatrix build_parity_check(const CodeParams& p) {
  ParityCheckMatrix h{BitMatrix(0, p.n()), parity_ranks(p)};
  for (auto alpha : h.row_index) {
    BitVector row(p.n());
    row.set(alpha);
    for (auto beta : detail::l_set_ranks(p, alpha)) {
      row.set(beta);
    }
    h.rows.push_back(std::move(row));
  }
  return h;
}

/// Systematic encoder: info[j] lands on the j-th information coordinate in rank
/// order, and every parity symbol is x_α = Σ_{β∈L(α)} x_β.
[[nodiscard]] inline BitWord encode(const CodeParams& p, const BitVector& info) {
  if (info.size() != p.k()) {
    throw DimensionMismatch("information word has length " + std::to_string(info.size()) +
                            ", expected k=" + std::to_string(p.k()));
  }
  BitWord word(p.n());
  std::size_t next = 0;
  for (std::size_t rank = 0; rank < p.n(); ++rank) {
    if (is_information_rank(p, rank)) {
      word.set(rank, info.test(next++));
    }
  }
  for (std::size_t rank = 0; rank < p.n(); ++rank) {
    if (is_information_rank(p, rank)) {
      continue;
    }
    bool parity = false;
    for (auto beta : detail::l_set_ranks(p, rank)) {
      parity ^= word.test(beta);
    }
    word.set(rank, parity);
  }
  return word;
}

/// Restriction of a word to the information coordinates.
[[nodiscard]] inline BitVector extract_info(const CodeParams& p, const BitWord& word) {
  if (word.size() != p.n()) {
    throw DimensionMismatch("word has length " + std::to_string(word.size()) + ", expected n=" +
                            std::to_string(p.n()));
  }
  BitVector info(p.k());
  std::size_t next = 0;
  for (std::size_t rank = 0; rank < p.n(); ++rank) {
    if (is_information_rank(p, rank)) {
      info.set(next++, word.test(rank));
    }
  }
  return info;
}

/// H·w = 0, evaluated row by row without materialising H.
[[nodiscard]] inline bool is_codeword(const CodeParams& p, const BitWord& word) {
  if (word.size() != p.n()) {
    throw DimensionMismatch("word has length " + std::to_string(word.size()) + ", expected n=" +
                            std::to_string(p.n()));
  }
  for (std::size_t rank = 0; rank < p.n(); ++rank) {
    if (is_information_rank(p, rank)) {
      continue;
    }
    bool syndrome = word.test(rank);
    for (auto beta : detail::l_set_ranks(p, rank)) {
      syndrome ^= word.test(beta);
    }
    if (syndrome) {
      return false;
    }
  }
  return true;
}

}  // namespace elrc
