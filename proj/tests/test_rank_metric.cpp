#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "support.hpp"

using namespace netgap;

namespace {

const Field F2 = Field::make(2, 1);

/// (q, t) pairs with q^t <= 256.
std::vector<std::pair<std::uint32_t, unsigned>> small_extensions() {
  std::vector<std::pair<std::uint32_t, unsigned>> out;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    std::uint64_t size = q;
    for (unsigned t = 1; size <= 256; ++t, size *= q) out.emplace_back(q, t);
  }
  return out;
}

std::vector<FieldElement> poly(std::initializer_list<FieldElement> c) { return c; }

}  // namespace

TEST(Companion, MatrixOfXSquaredPlusXPlusOne) {
  const auto p = poly({1, 1, 1});
  const auto c = companion_matrix(F2, p);
  EXPECT_EQ(c, Matrix(F2, 2, 2, {0, 1, 1, 1}));
  EXPECT_TRUE((c * c + c + Matrix::identity(F2, 2)).is_zero());
}

TEST(Companion, DegreeOneAndCubic) {
  const auto px = poly({0, 1});
  EXPECT_EQ(companion_matrix(F2, px), Matrix(F2, 1, 1, {0}));
  const auto p3 = poly({1, 1, 0, 1});
  const auto c = companion_matrix(F2, p3);
  EXPECT_EQ(c, Matrix(F2, 3, 3, {0, 0, 1, 1, 0, 1, 0, 1, 0}));
  // order 7 by power iteration in the oracle
  const auto g = support::gf(F2);
  auto pw = support::plain(c);
  int order = 1;
  while (pw != oracle::identity(3)) {
    pw = oracle::multiply(g, pw, support::plain(c));
    ++order;
  }
  EXPECT_EQ(order, 7);
}

TEST(Companion, RejectsNonMonic) {
  const auto p = poly({1, 1, 0});
  EXPECT_THROW(companion_matrix(F2, p), std::invalid_argument);
}

TEST(Companion, CodeSizes) {
  EXPECT_EQ(CompanionCode(F2, 1).size(), 2u);
  CompanionCode d1(F2, 1);
  EXPECT_EQ(d1.codeword(0).matrix, Matrix(F2, 1, 1, {0}));
  EXPECT_EQ(d1.codeword(1).matrix, Matrix(F2, 1, 1, {1}));
  EXPECT_EQ(CompanionCode(F2, 2).size(), 4u);
  EXPECT_EQ(CompanionCode(Field::make(3, 1), 2).size(), 9u);
  EXPECT_THROW(CompanionCode(F2, 2).codeword(4), std::out_of_range);
}

TEST(Companion, CodewordsArePowersOfTheGenerator) {
  for (auto [q, t] : small_extensions()) {
    const Field base = Field::make(q, 1);
    CompanionCode d(base, t);
    const auto g = support::gf(base);
    const auto c = support::plain(d.generator());
    ASSERT_TRUE(d.codeword(0).matrix.is_zero());
    auto pw = oracle::identity(t);
    for (std::uint64_t k = 1; k < d.size(); ++k) {
      ASSERT_EQ(support::plain(d.codeword(k).matrix), pw) << "q=" << q << " t=" << t << " k=" << k;
      pw = oracle::multiply(g, pw, c);
    }
    ASSERT_EQ(pw, oracle::identity(t));  // C^{q^t-1} = I
  }
}

TEST(Companion, MinimumDistanceExhaustive) {
  auto d2 = verify_mrd(CompanionCode(F2, 2), MrdMode::all());
  EXPECT_EQ(d2.min_distance, 2u);
  EXPECT_EQ(d2.pairs_checked, 6u);
  EXPECT_TRUE(d2.ok);
  auto d32 = verify_mrd(CompanionCode(Field::make(3, 1), 2), MrdMode::all());
  EXPECT_EQ(d32.min_distance, 2u);
  EXPECT_TRUE(d32.ok);
  for (auto [q, t] : small_extensions()) {
    if (checked_power(q, t) > 64) continue;
    const auto rep = verify_mrd(CompanionCode(Field::make(q, 1), t), MrdMode::all());
    EXPECT_EQ(rep.min_distance, t) << q << "^" << t;
  }
}

TEST(Companion, CodewordsCommuteExhaustively) {
  for (auto [q, t] : small_extensions()) {
    CompanionCode d(Field::make(q, 1), t);
    const auto words = d.codewords();
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j)
        ASSERT_EQ(words[i].matrix * words[j].matrix, words[j].matrix * words[i].matrix);
  }
}

TEST(Companion, LiftIsAFieldIsomorphism) {
  for (auto [q, t] : small_extensions()) {
    CompanionCode d(Field::make(q, 1), t);
    const Field& ext = d.extension_field();
    std::vector<Matrix> lifted;
    for (FieldElement a = 0; a < ext.order(); ++a) lifted.push_back(d.lift(a));
    ASSERT_TRUE(lifted[0].is_zero());
    ASSERT_EQ(lifted[1], Matrix::identity(d.base_field(), t));
    for (FieldElement a = 0; a < ext.order(); ++a)
      for (FieldElement b = 0; b < ext.order(); ++b) {
        ASSERT_EQ(lifted[ext.add(a, b)], lifted[a] + lifted[b]);
        ASSERT_EQ(lifted[ext.mul(a, b)], lifted[a] * lifted[b]);
      }
  }
}

TEST(Companion, LiftMatchesPowersInF4) {
  CompanionCode d(F2, 2);
  const Field& f4 = d.extension_field();
  const FieldElement a = f4.primitive_element();
  const std::vector<FieldElement> coeffs{0, 1, a, f4.mul(a, a)};
  const auto m = lift_scalar_solution(f4, coeffs, d);
  const Matrix& c = d.generator();
  EXPECT_TRUE(m[0].is_zero());
  EXPECT_EQ(m[1], Matrix::identity(F2, 2));
  EXPECT_EQ(m[2], c);
  EXPECT_EQ(m[3], c * c);
  EXPECT_EQ(c * c * c, Matrix::identity(F2, 2));
}

TEST(Companion, LiftRejectsMismatchedField) {
  CompanionCode d(F2, 2);
  const std::vector<FieldElement> one{1};
  EXPECT_THROW(lift_scalar_solution(Field::make(2, 3), one, d), std::invalid_argument);
  EXPECT_THROW(lift_scalar_solution(Field::make(3, 2), one, d), std::invalid_argument);
}

TEST(Gabidulin, FullSpaceWhenDistanceOne) {
  GabidulinCode code(F2, 2, 1);
  EXPECT_EQ(code.dimension(), 4u);
  EXPECT_EQ(code.size(), 16u);
  std::set<std::vector<FieldElement>> seen;
  for (std::uint64_t i = 0; i < code.size(); ++i) seen.insert(code.codeword(i).matrix.entries());
  EXPECT_EQ(seen.size(), 16u);
  EXPECT_EQ(verify_mrd(code, MrdMode::all()).min_distance, 1u);
}

TEST(Gabidulin, TwoByTwoDistanceTwo) {
  GabidulinCode code(F2, 2, 2);
  EXPECT_EQ(code.dimension(), 2u);
  EXPECT_EQ(code.size(), 4u);
  const auto rep = verify_mrd(code, MrdMode::all());
  EXPECT_EQ(rep.pairs_checked, 6u);
  EXPECT_EQ(rep.min_distance, 2u);
}

TEST(Gabidulin, FourByFourDistanceTwoSampled) {
  GabidulinCode code(F2, 4, 2);
  EXPECT_EQ(code.dimension(), 12u);
  EXPECT_EQ(code.size(), 4096u);
  EXPECT_TRUE(code.codeword(0).matrix.is_zero());
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const auto a = rng() % code.size(), b = rng() % code.size();
    if (a != b) ASSERT_NE(code.codeword(a).matrix, code.codeword(b).matrix);
  }
  const auto rep = verify_mrd(code, MrdMode::sampled(10'000, 5));
  EXPECT_TRUE(rep.ok);
  EXPECT_GE(rep.min_distance, 2u);
  EXPECT_EQ(rep.pairs_checked, 10'000u);
  EXPECT_THROW(code.codeword(4096), std::out_of_range);
}

TEST(Gabidulin, MeetsSingletonBoundWithEquality) {
  for (unsigned side = 1; side <= 4; ++side)
    for (unsigned delta = 1; delta <= side; ++delta) {
      GabidulinCode code(F2, side, delta);
      EXPECT_EQ(code.dimension(), side * (side - delta + 1));
      if (code.size() <= 256) EXPECT_EQ(verify_mrd(code, MrdMode::all()).min_distance, delta);
    }
  for (unsigned delta = 1; delta <= 2; ++delta) {
    GabidulinCode code(Field::make(3, 1), 2, delta);
    EXPECT_EQ(verify_mrd(code, MrdMode::all()).min_distance, delta);
  }
  EXPECT_THROW(GabidulinCode(F2, 3, 0), std::invalid_argument);
  EXPECT_THROW(GabidulinCode(F2, 3, 4), std::invalid_argument);
}

TEST(Gabidulin, CodeIsLinear) {
  std::mt19937_64 rng(22);
  for (auto [side, delta] : std::vector<std::pair<unsigned, unsigned>>{{4, 2}, {3, 2}, {6, 3}, {4, 3}}) {
    GabidulinCode code(F2, side, delta);
    for (int i = 0; i < 500; ++i) {
      const auto a = rng() % code.size(), b = rng() % code.size();
      ASSERT_EQ(code.codeword(a).matrix + code.codeword(b).matrix, code.codeword(code.index_sum(a, b)).matrix);
    }
  }
  GabidulinCode ternary(Field::make(3, 1), 3, 2);
  for (int i = 0; i < 200; ++i) {
    const auto a = rng() % ternary.size(), b = rng() % ternary.size();
    ASSERT_EQ(ternary.codeword(a).matrix + ternary.codeword(b).matrix, ternary.codeword(ternary.index_sum(a, b)).matrix);
  }
}

TEST(RankDistance, Examples) {
  const auto i2 = Matrix::identity(F2, 2);
  EXPECT_EQ(rank_distance(i2, i2), 0u);
  EXPECT_EQ(rank_distance(i2, Matrix(F2, 2, 2)), 2u);
  CompanionCode d(F2, 2);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = a + 1; b < 4; ++b) EXPECT_EQ(rank_distance(d.codeword(a).matrix, d.codeword(b).matrix), 2u);
  EXPECT_THROW(rank_distance(i2, Matrix::identity(F2, 3)), std::invalid_argument);
}

TEST(BlockVandermonde, Examples) {
  CompanionCode d1(F2, 1);
  const std::vector<RankCodeword> one{d1.codeword(1)};
  EXPECT_EQ(block_vandermonde(one, 1), Matrix::identity(F2, 1));
  const std::vector<RankCodeword> two{d1.codeword(0), d1.codeword(1)};
  const auto m = block_vandermonde(two, 2);
  EXPECT_EQ(m, Matrix(F2, 2, 2, {1, 0, 1, 1}));
  EXPECT_EQ(rank(m), 2u);
  const std::vector<RankCodeword> dup{d1.codeword(1), d1.codeword(1)};
  EXPECT_THROW(block_vandermonde(dup, 2), std::invalid_argument);
}

TEST(BlockVandermonde, FullRankForEveryOrderedTripleOfD2) {
  CompanionCode d(F2, 2);
  const auto words = d.codewords();
  int checked = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        if (a == b || b == c || a == c) continue;
        const std::vector<RankCodeword> sel{words[a], words[b], words[c]};
        ASSERT_EQ(rank(block_vandermonde(sel, 3)), 6u);
        ++checked;
      }
  EXPECT_EQ(checked, 24);
}

TEST(ConsecutiveBlocks, TrivialAndAdversarialCases) {
  EXPECT_TRUE(check_consecutive_blocks(Matrix::identity(F2, 2), 2, 1));
  CompanionCode d(F2, 2);
  auto m = block_vandermonde(std::vector<RankCodeword>{d.codeword(1), d.codeword(2), d.codeword(3)}, 3);
  m.set_block(2, 0, m.block(0, 0, 2, 6));  // repeat block row 0
  EXPECT_FALSE(check_consecutive_blocks(m, 2, 3));
}

TEST(ConsecutiveBlocks, HoldForNonzeroCodewords) {
  for (auto [q, t, h] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{2, 2, 3}, {2, 2, 2}, {3, 1, 2}, {2, 3, 4}}) {
    CompanionCode d(Field::make(q, 1), t);
    std::vector<std::uint64_t> idx(h);
    // every h-subset of nonzero indices, in every order for h <= 3
    std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned depth, std::uint64_t start) {
      if (depth == h) {
        auto order = idx;
        do {
          std::vector<RankCodeword> sel;
          for (auto i : order) sel.push_back(d.codeword(i));
          ASSERT_TRUE(check_consecutive_blocks(block_vandermonde(sel, h), t, h));
        } while (h <= 3 && std::next_permutation(order.begin(), order.end()));
        return;
      }
      for (std::uint64_t i = start; i < d.size(); ++i) {
        idx[depth] = i;
        rec(depth + 1, i + 1);
      }
    };
    rec(0, 1);
  }
}

TEST(ConsecutiveBlocks, ZeroCodewordFailsOffsetWindows) {
  // a block row (I, 0, ..., 0) has rank-zero blocks away from column 0
  CompanionCode d(F2, 2);
  const std::vector<RankCodeword> sel{d.codeword(0), d.codeword(1), d.codeword(2)};
  const auto m = block_vandermonde(sel, 3);
  EXPECT_EQ(rank(m), 6u);
  EXPECT_FALSE(check_consecutive_blocks(m, 2, 3));
  // windows anchored at block column 0 still have full rank
  for (std::size_t l = 1; l <= 3; ++l)
    for (std::size_t r0 = 0; r0 + l <= 3; ++r0) EXPECT_EQ(rank(m.block(r0 * 2, 0, l * 2, l * 2)), l * 2);
}
