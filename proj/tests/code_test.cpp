#include <set>

#include <gtest/gtest.h>

#include "elrc/code.hpp"
#include "oracles.hpp"

using namespace elrc;

namespace {

std::vector<std::size_t> ranks_of(const CodeParams& p, const std::vector<Coord>& coords) {
  std::vector<std::size_t> out;
  for (const auto& c : coords) {
    out.push_back(coord_rank(p, c));
  }
  return out;
}

oracle::Bits to_bits(const BitVector& v) {
  oracle::Bits out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v.test(i) ? 1 : 0;
  }
  return out;
}

BitVector from_bits(const oracle::Bits& b) {
  BitVector v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    v.set(i, b[i] != 0);
  }
  return v;
}

std::vector<oracle::Bits> rows_of(const BitMatrix& m) {
  std::vector<oracle::Bits> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out.push_back(to_bits(m.row(i)));
  }
  return out;
}

}  // namespace

TEST(CodeParams, DerivedQuantities) {
  const CodeParams p(2, 3);
  EXPECT_EQ(p.n(), 27U);
  EXPECT_EQ(p.k(), 8U);
  EXPECT_EQ(p.t(), 7U);
  const CodeParams q(3, 2);
  EXPECT_EQ(q.n(), 16U);
  EXPECT_EQ(q.k(), 9U);
  EXPECT_EQ(q.t(), 3U);
}

TEST(CodeParams, RejectsOutOfRange) {
  EXPECT_THROW(CodeParams(1, 2), InvalidParameters);
  EXPECT_THROW(CodeParams(0, 2), InvalidParameters);
  EXPECT_THROW(CodeParams(2, 0), InvalidParameters);
  // 3^13 > 2^20
  EXPECT_THROW(CodeParams(2, 13), InvalidParameters);
  EXPECT_NO_THROW(CodeParams(2, 12));
  EXPECT_THROW(CodeParams(2, 3, 26), InvalidParameters);
  EXPECT_NO_THROW(CodeParams(2, 3, 27));
}

TEST(CoordRank, Examples) {
  EXPECT_EQ(coord_rank(CodeParams(2, 2), Coord{0, 0}), 0U);
  EXPECT_EQ(coord_rank(CodeParams(2, 2), Coord{1, 2}), 5U);
  EXPECT_EQ(coord_rank(CodeParams(2, 3), Coord{2, 2, 2}), 26U);
}

TEST(CoordRank, RejectsInvalidCoordinates) {
  const CodeParams p(2, 2);
  EXPECT_THROW((void)coord_rank(p, Coord{0, 3}), InvalidCoordinate);
  EXPECT_THROW((void)coord_rank(p, Coord{0, 1, 1}), InvalidCoordinate);
  EXPECT_THROW((void)coord_at(p, 9), InvalidCoordinate);
}

TEST(CoordRank, BijectiveAndOrderPreserving) {
  for (auto [r, m] : {std::pair{2U, 1U}, {2U, 3U}, {3U, 2U}, {4U, 3U}, {5U, 2U}}) {
    const CodeParams p(r, m);
    const auto reference = oracle::all_coords(r, m);
    ASSERT_EQ(reference.size(), p.n());
    for (std::size_t i = 0; i < p.n(); ++i) {
      const Coord c(reference[i]);
      EXPECT_EQ(coord_rank(p, c), i);
      EXPECT_EQ(coord_at(p, i), c);
    }
  }
}

TEST(TSet, Examples) {
  EXPECT_EQ(t_set(CodeParams(2, 6), Coord{0, 1, 2, 0, 2, 2}), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_TRUE(t_set(CodeParams(2, 2), Coord{2, 2}).empty());
  EXPECT_EQ(t_set(CodeParams(3, 2), Coord{1, 3}), (std::vector<std::size_t>{0}));
}

TEST(TSet, RejectsInformationCoordinates) {
  EXPECT_THROW((void)t_set(CodeParams(2, 2), Coord{0, 1}), NotParityCoordinate);
  EXPECT_THROW((void)l_set(CodeParams(2, 2), Coord{1, 1}), NotParityCoordinate);
}

TEST(LSet, Examples) {
  {
    const CodeParams p(2, 6);
    std::vector<Coord> expected;
    for (unsigned a : {0U, 1U}) {
      for (unsigned b : {0U, 1U}) {
        for (unsigned c : {0U, 1U}) {
          expected.push_back(Coord{0, 1, a, 0, b, c});
        }
      }
    }
    EXPECT_EQ(l_set(p, Coord{0, 1, 2, 0, 2, 2}), expected);
  }
  EXPECT_EQ(l_set(CodeParams(2, 2), Coord{2, 2}), (std::vector<Coord>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(l_set(CodeParams(2, 2), Coord{0, 2}), (std::vector<Coord>{{0, 0}, {0, 1}}));
}

TEST(LSet, SizeIsRToTheFreeAxes) {
  for (auto [r, m] : {std::pair{2U, 3U}, {3U, 3U}, {4U, 2U}}) {
    const CodeParams p(r, m);
    for (auto rank : parity_ranks(p)) {
      const auto a = coord_at(p, rank);
      std::size_t expected = 1;
      for (std::size_t j = t_set(p, a).size(); j < m; ++j) {
        expected *= r;
      }
      const auto l = l_set(p, a);
      EXPECT_EQ(l.size(), expected);
      EXPECT_TRUE(std::is_sorted(l.begin(), l.end()));
    }
  }
}

// L(α_r) is the disjoint union of L(α_λ') over λ' < r, where α_λ' replaces the
// digit r on one axis. When α_λ' is an information coordinate, its "L-set" is
// just itself (its symbol is its own sum).
TEST(LSet, DisjointDecomposition) {
  for (auto [r, m] : {std::pair{2U, 2U}, {2U, 3U}, {3U, 2U}, {3U, 3U}, {2U, 4U}}) {
    const CodeParams p(r, m);
    for (auto rank : parity_ranks(p)) {
      const auto alpha = coord_at(p, rank);
      for (std::size_t axis = 0; axis < m; ++axis) {
        if (alpha[axis] != r) {
          continue;
        }
        std::multiset<Coord> pieces;
        for (unsigned v = 0; v < r; ++v) {
          const auto beta = alpha.with(axis, v);
          if (is_information_coord(p, beta)) {
            pieces.insert(beta);
          } else {
            for (const auto& c : l_set(p, beta)) {
              pieces.insert(c);
            }
          }
        }
        const auto whole = l_set(p, alpha);
        EXPECT_EQ(pieces.size(), whole.size()) << "overlap for rank " << rank;
        EXPECT_EQ(std::vector<Coord>(pieces.begin(), pieces.end()), whole);
      }
    }
  }
}

TEST(ParityCheck, SingleParityCheckForMEqualsOne) {
  const auto h = build_parity_check(CodeParams(2, 1));
  ASSERT_EQ(h.rows.rows(), 1U);
  EXPECT_EQ(h.rows.row(0).to_string(), "111");
  EXPECT_EQ(h.row_index, (std::vector<std::size_t>{2}));
}

TEST(ParityCheck, RowsForSquareCode) {
  const CodeParams p(2, 2);
  const auto h = build_parity_check(p);
  ASSERT_EQ(h.rows.rows(), 5U);
  ASSERT_EQ(h.rows.cols(), 9U);
  EXPECT_EQ(h.row_index, (std::vector<std::size_t>{2, 5, 6, 7, 8}));
  // α = (2,2): columns (0,0),(0,1),(1,0),(1,1),(2,2)
  EXPECT_EQ(h.rows.row(4).support(), (std::vector<std::size_t>{0, 1, 3, 4, 8}));
  // α = (0,2): columns (0,0),(0,1),(0,2)
  EXPECT_EQ(h.rows.row(0).support(), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ParityCheck, MatchesDefinitionAndHasFullRank) {
  for (unsigned r : {2U, 3U, 4U}) {
    for (unsigned m : {1U, 2U, 3U}) {
      const CodeParams p(r, m);
      const auto h = build_parity_check(p);
      EXPECT_EQ(rows_of(h.rows), oracle::parity_check(r, m)) << "r=" << r << " m=" << m;
      EXPECT_EQ(h.rows.rank(), p.n() - p.k()) << "r=" << r << " m=" << m;
      // Parity columns form a permutation matrix.
      for (std::size_t i = 0; i < h.row_index.size(); ++i) {
        for (std::size_t j = 0; j < h.row_index.size(); ++j) {
          EXPECT_EQ(h.rows.get(i, h.row_index[j]), i == j);
        }
      }
    }
  }
}

// Row space of H equals the span of every line check: the code is the direct
// product of single-parity-check codes.
TEST(ParityCheck, RowSpaceEqualsLineChecks) {
  for (unsigned r : {2U, 3U}) {
    for (unsigned m : {1U, 2U, 3U}) {
      const CodeParams p(r, m);
      const auto h = build_parity_check(p);
      BitMatrix lines(0, p.n());
      for (const auto& row : oracle::line_checks(r, m)) {
        lines.push_back(from_bits(row));
      }
      EXPECT_TRUE(gf2::row_space_contains(h.rows, lines)) << "r=" << r << " m=" << m;
      EXPECT_TRUE(gf2::row_space_contains(lines, h.rows)) << "r=" << r << " m=" << m;
    }
  }
}

TEST(Encode, Examples) {
  const CodeParams p(2, 2);
  EXPECT_TRUE(encode(p, BitVector(4)).none());

  BitVector info(4);
  info.set(0);  // x_{00}
  const auto word = encode(p, info);
  EXPECT_TRUE(word.test(coord_rank(p, {0, 2})));
  EXPECT_TRUE(word.test(coord_rank(p, {2, 0})));
  EXPECT_TRUE(word.test(coord_rank(p, {2, 2})));
  EXPECT_FALSE(word.test(coord_rank(p, {1, 2})));
  EXPECT_FALSE(word.test(coord_rank(p, {2, 1})));

  EXPECT_EQ(encode(CodeParams(2, 1), BitVector::from_string("10")).to_string(), "101");
}

TEST(Encode, RejectsWrongLength) {
  EXPECT_THROW((void)encode(CodeParams(2, 2), BitVector(5)), DimensionMismatch);
  EXPECT_THROW((void)is_codeword(CodeParams(2, 2), BitVector(8)), DimensionMismatch);
}

// The encoder's image is exactly the product code, and it is systematic on Z_r^m.
TEST(Encode, ImageIsTheProductCode) {
  for (auto [r, m] : {std::pair{2U, 1U}, {2U, 2U}, {2U, 3U}, {3U, 1U}, {3U, 2U}}) {
    const CodeParams p(r, m);
    std::set<oracle::Bits> expected;
    for (const auto& c : oracle::product_codewords(r, m)) {
      expected.insert(c);
    }
    ASSERT_EQ(expected.size(), std::size_t{1} << p.k());
    std::set<oracle::Bits> produced;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << p.k()); ++u) {
      BitVector info(p.k());
      for (std::size_t j = 0; j < p.k(); ++j) {
        info.set(j, (u >> j) & 1U);
      }
      const auto word = encode(p, info);
      EXPECT_TRUE(is_codeword(p, word));
      EXPECT_EQ(extract_info(p, word), info);
      produced.insert(to_bits(word));
    }
    EXPECT_EQ(produced, expected) << "r=" << r << " m=" << m;
  }
}

TEST(IsCodeword, Examples) {
  EXPECT_TRUE(is_codeword(CodeParams(2, 2), BitVector(9)));
  EXPECT_FALSE(is_codeword(CodeParams(2, 1), BitVector::from_string("100")));
  EXPECT_TRUE(is_codeword(CodeParams(2, 1), BitVector::from_string("110")));
}

TEST(IsCodeword, AgreesWithSyndromeOnEveryWordOfSmallCodes) {
  for (auto [r, m] : {std::pair{2U, 2U}, {3U, 1U}}) {
    const CodeParams p(r, m);
    const auto h = build_parity_check(p);
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << p.n()); ++u) {
      BitVector w(p.n());
      for (std::size_t j = 0; j < p.n(); ++j) {
        w.set(j, (u >> j) & 1U);
      }
      EXPECT_EQ(is_codeword(p, w), h.rows.multiply(w).none());
    }
  }
}

TEST(LineCoords, Examples) {
  EXPECT_EQ(line_coords(CodeParams(2, 6), Coord{0, 1, 2, 0, 2, 2}, 3),
            (std::vector<Coord>{{0, 1, 2, 0, 2, 2}, {0, 1, 2, 1, 2, 2}, {0, 1, 2, 2, 2, 2}}));
  EXPECT_EQ(line_coords(CodeParams(2, 1), Coord{0}, 0), (std::vector<Coord>{{0}, {1}, {2}}));
  EXPECT_EQ(line_coords(CodeParams(2, 2), Coord{1, 1}, 1), (std::vector<Coord>{{1, 0}, {1, 1}, {1, 2}}));
  EXPECT_THROW((void)line_coords(CodeParams(2, 2), Coord{1, 1}, 2), InvalidCoordinate);
}

TEST(LineCoords, EveryLineHasRPlusOneMembersIncludingTheAnchor) {
  for (auto [r, m] : {std::pair{2U, 3U}, {3U, 2U}, {4U, 3U}}) {
    const CodeParams p(r, m);
    for (std::size_t rank = 0; rank < p.n(); ++rank) {
      const auto a = coord_at(p, rank);
      for (std::size_t axis = 0; axis < m; ++axis) {
        const auto line = line_coords(p, a, axis);
        EXPECT_EQ(line.size(), r + 1U);
        EXPECT_NE(std::find(line.begin(), line.end(), a), line.end());
        for (const auto& b : line) {
          for (std::size_t j = 0; j < m; ++j) {
            if (j != axis) {
              EXPECT_EQ(b[j], a[j]);
            }
          }
        }
      }
    }
  }
}

// Every line of every codeword has even weight.
TEST(LineCoords, LineSumLawOverAllCodewords) {
  for (auto [r, m] : {std::pair{2U, 1U}, {2U, 2U}, {2U, 3U}, {3U, 1U}, {3U, 2U}}) {
    const CodeParams p(r, m);
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << p.k()); ++u) {
      BitVector info(p.k());
      for (std::size_t j = 0; j < p.k(); ++j) {
        info.set(j, (u >> j) & 1U);
      }
      const auto word = encode(p, info);
      for (std::size_t rank = 0; rank < p.n(); ++rank) {
        for (std::size_t axis = 0; axis < m; ++axis) {
          bool sum = false;
          for (auto b : ranks_of(p, line_coords(p, coord_at(p, rank), axis))) {
            sum ^= word.test(b);
          }
          ASSERT_FALSE(sum) << "r=" << r << " m=" << m << " info=" << u;
        }
      }
    }
  }
}
