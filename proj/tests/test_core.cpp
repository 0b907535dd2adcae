//------------------------------------------------------------------------------
//
//   Copyright 2026 The vcbundle Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "oracles.hpp"

#include "vcb/vcb.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace vcb;

GoodsUniverse const abcd = GoodsUniverse::standard(4);

Bundle operator""_b(char const *text, std::size_t)
{
  return abcd.parse(text);
}

TEST(Rational, ReducesAndCompares)
{
  EXPECT_EQ(Rational(6, 4), Rational(3, 2));
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(7).str(), "7");
  EXPECT_LT(Rational(2, 3), Rational(3, 4));
  EXPECT_EQ(Rational(7, 3).floor(), 2);
  EXPECT_EQ(Rational(7, 3).ceil(), 3);
  EXPECT_EQ(Rational(-7, 3).floor(), -3);
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 3), Rational(1, 2));
  EXPECT_THROW(Rational(1, 0), InvalidInput);
}

TEST(Rational, OverflowIsReported)
{
  Rational const big(std::numeric_limits<std::int64_t>::max() / 2);
  EXPECT_THROW(big * big, BudgetExceeded);
}

TEST(Bundle, SetOperations)
{
  Bundle const b = "ab"_b;
  EXPECT_EQ(b.size(), 2U);
  EXPECT_TRUE("a"_b.subset_of(b));
  EXPECT_TRUE(b.disjoint("cd"_b));
  EXPECT_EQ(b.complement(4), "cd"_b);
  EXPECT_EQ(abcd.format(b | "d"_b), "abd");
  EXPECT_EQ(abcd.format(Bundle{}), "");
  EXPECT_TRUE(abcd.parse("").empty());
}

TEST(GoodsUniverse, LabelsAndParsing)
{
  EXPECT_THROW(GoodsUniverse({}), InvalidInput);
  EXPECT_THROW(GoodsUniverse({"x", "x"}), InvalidInput);
  GoodsUniverse const u({"x1", "x10", "y"});
  EXPECT_EQ(u.parse("x10y"), Bundle(0b110));
  EXPECT_EQ(u.parse("x1x10"), Bundle(0b011));
  EXPECT_THROW(u.parse("q"), InvalidInput);
  EXPECT_THROW(u.parse("yy"), InvalidInput);
  EXPECT_EQ(GoodsUniverse::standard(30).labels()[29], "g30");
}

TEST(Unanimity, ValuesOnSupersetsOnly)
{
  auto const w = unanimity_valuation(4, "ab"_b);
  EXPECT_EQ(w("ab"_b), 1);
  EXPECT_EQ(w("abc"_b), 1);
  EXPECT_EQ(w(abcd.full()), 1);
  EXPECT_EQ(w("a"_b), 0);
  EXPECT_EQ(w("cd"_b), 0);
  EXPECT_TRUE(validate_valuation(w).ok());
}

TEST(Unanimity, EmptyBundleGivesZero)
{
  auto const w = unanimity_valuation(4, Bundle{}, 5);
  for (Bundle::Mask mask = 0; mask < 16; ++mask)
  {
    EXPECT_EQ(w(Bundle(mask)), 0);
  }
}

TEST(Unanimity, ScaledWeight)
{
  auto const w = unanimity_valuation(4, "a"_b, 2);
  EXPECT_EQ(w("a"_b), 2);
  EXPECT_EQ(w(Bundle{}), 0);
  EXPECT_EQ(w("bcd"_b), 0);
  EXPECT_THROW(unanimity_valuation(4, "a"_b, -1), InvalidInput);
}

TEST(Validate, MonotonicityWitness)
{
  std::vector<Value> t(4, 0);
  t[0b01] = 1;  // v(a) = 1, v(ab) = 0
  auto const r = validate_valuation(Valuation::dense(2, t));
  EXPECT_EQ(r.kind, ValuationReport::Kind::monotonicity);
  EXPECT_EQ(r.smaller, Bundle(0b01));
  EXPECT_EQ(r.larger, Bundle(0b11));
}

TEST(Validate, ZeroAndNormalization)
{
  EXPECT_TRUE(validate_valuation(Valuation::dense(3, std::vector<Value>(8, 0))).ok());
  std::vector<Value> t(4, 1);
  EXPECT_EQ(validate_valuation(Valuation::dense(2, t)).kind, ValuationReport::Kind::normalization);
  EXPECT_EQ(validate_valuation(Valuation::atoms(2, {{Bundle(1), -2}})).kind,
            ValuationReport::Kind::nonnegativity);
  EXPECT_EQ(validate_valuation(Valuation::atoms(2, {{Bundle{}, 3}})).kind, ValuationReport::Kind::normalization);
}

TEST(Eval, AtomsPackDisjointly)
{
  auto const wbc = unanimity_valuation(4, "bc"_b);
  EXPECT_EQ(eval(wbc, "bcd"_b), 1);
  auto const v = Valuation::atoms(4, {{"a"_b, 1}, {"b"_b, 2}});
  EXPECT_EQ(eval(v, "ab"_b), oracle::value(v, 0b11));
  EXPECT_EQ(eval(v, "ab"_b), 3);
  EXPECT_EQ(eval(v, Bundle{}), 0);
  auto const overlap = Valuation::atoms(4, {{"ab"_b, 3}, {"bc"_b, 3}, {"a"_b, 1}, {"c"_b, 1}});
  EXPECT_EQ(eval(overlap, "abc"_b), 4);
}

TEST(Eval, DenseAndAtomFormsAgree)
{
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial)
  {
    std::size_t const m = 1 + rng() % 12;
    std::vector<Atom> atoms;
    std::size_t const count = rng() % 6;
    for (std::size_t j = 0; j < count; ++j)
    {
      atoms.push_back({Bundle(1 + rng() % ((Bundle::Mask{1} << m) - 1)), static_cast<Value>(rng() % 5)});
    }
    auto const v = Valuation::atoms(m, atoms);
    auto const d = v.to_dense();
    ASSERT_TRUE(validate_valuation(d).ok());
    for (Bundle::Mask mask = 0; mask < (Bundle::Mask{1} << m); mask += 1 + rng() % 7)
    {
      ASSERT_EQ(d(Bundle(mask)), v(Bundle(mask)));
      if (m <= 8)
      {
        ASSERT_EQ(v(Bundle(mask)), oracle::value(v, mask));
      }
    }
  }
}

TEST(Eval, MonotoneAlongChains)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial)
  {
    auto const v = ProfileSweep::random_monotone_valuation(5, rng, 9);
    ASSERT_TRUE(validate_valuation(v).ok());
    for (Bundle::Mask b = 0; b < 32; ++b)
    {
      for (Bundle::Mask c = b; c < 32; c = (c + 1) | b)
      {
        ASSERT_LE(eval(v, Bundle(b)), eval(v, Bundle(c)));
      }
    }
  }
}

TEST(Valuation, DenseBudget)
{
  EXPECT_THROW(Valuation::dense(15, {}), BudgetExceeded);
  EXPECT_THROW(Valuation::dense(3, std::vector<Value>(7, 0)), InvalidInput);
}

TEST(Profile, RejectsBadValuations)
{
  std::vector<Value> t(4, 0);
  t[1] = 1;
  EXPECT_THROW(Profile(GoodsUniverse::standard(2), {Valuation::dense(2, t)}), InvalidInput);
  EXPECT_THROW(Profile(GoodsUniverse::standard(2), {}), InvalidInput);
  EXPECT_THROW(Profile(GoodsUniverse::standard(2), {Valuation::zero(3)}), InvalidInput);
}

TEST(Allocation, RejectsOverlapAndGaps)
{
  EXPECT_THROW(Allocation(4, {"ab"_b, "bc"_b}, "d"_b), InvalidInput);
  EXPECT_THROW(Allocation(4, {"ab"_b, "c"_b}, Bundle{}), InvalidInput);
  EXPECT_THROW(Allocation(4, {"ab"_b}, "bcd"_b), InvalidInput);
  Allocation const ok(4, {"ab"_b, Bundle{}}, "cd"_b);
  EXPECT_EQ(ok.seller(), "cd"_b);
  EXPECT_EQ(Allocation::with_remainder(4, {"a"_b, "d"_b}).seller(), "bc"_b);
}

TEST(Partition, Invariants)
{
  EXPECT_THROW(Partition(4, {"ab"_b, "bc"_b}), InvalidInput);
  EXPECT_THROW(Partition(4, {"ab"_b, "c"_b}), InvalidInput);
  EXPECT_THROW(Partition(4, {"abcd"_b, Bundle{}}), InvalidInput);
  auto const pi = Partition::from_sizes({2, 1, 1});
  EXPECT_EQ(pi[0], "ab"_b);
  EXPECT_EQ(pi.max_part(), 2U);
  EXPECT_EQ(pi.touched("ac"_b), 0b011U);
  EXPECT_EQ(pi.union_of(0b101), "abd"_b);
}

}  // namespace
