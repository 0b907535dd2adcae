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
#include <set>

namespace {

using namespace vcb;

GoodsUniverse const abcd = GoodsUniverse::standard(4);

BundleFamily family(GoodsUniverse const &u, std::vector<std::string> const &labels)
{
  std::vector<Bundle> bs;
  for (auto const &l : labels)
  {
    bs.push_back(u.parse(l));
  }
  return BundleFamily(u, bs);
}

std::set<oracle::Mask> masks(BundleFamily const &f)
{
  std::set<oracle::Mask> out;
  for (auto b : f)
  {
    out.insert(b.mask());
  }
  return out;
}

BundleFamily const nonquasi = family(abcd, {"", "a", "d", "bcd", "abc", "abcd"});
BundleFamily const quasi    = family(abcd, {"", "ab", "cd", "ac", "bd", "abcd"});

TEST(BundleFamily, RequiresEmptyBundle)
{
  EXPECT_THROW(family(abcd, {"a", "bcd"}), InvalidInput);
  EXPECT_EQ(family(abcd, {"", "a", "a"}).size(), 2U);
}

TEST(Classification, MissingDisjointUnion)
{
  auto const c = is_quasi_field(nonquasi);
  EXPECT_FALSE(c.is_quasi_field);
  EXPECT_FALSE(c.is_field);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(c.witness->kind, FamilyViolation::Kind::missing_disjoint_union);
  EXPECT_EQ(c.witness->first, abcd.parse("a"));
  EXPECT_EQ(c.witness->second, abcd.parse("d"));
}

TEST(Classification, QuasiFieldThatIsNotAField)
{
  auto const c = is_quasi_field(quasi);
  EXPECT_TRUE(c.is_quasi_field);
  EXPECT_FALSE(c.is_field);
  EXPECT_FALSE(c.witness);
}

TEST(Classification, PowerSetIsAField)
{
  auto const c = is_quasi_field(BundleFamily::power_set(abcd));
  EXPECT_TRUE(c.is_quasi_field);
  EXPECT_TRUE(c.is_field);
}

TEST(Classification, MissingComplementFirst)
{
  auto const u = GoodsUniverse::standard(2);
  auto const c = is_quasi_field(family(u, {"", "a", "ab"}));
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(c.witness->kind, FamilyViolation::Kind::missing_complement);
  EXPECT_EQ(c.witness->first, u.parse("a"));
}

TEST(Classification, AgreesWithDefinitionExhaustively)
{
  for (std::size_t m = 1; m <= 4; ++m)
  {
    auto const        u        = GoodsUniverse::standard(m);
    std::size_t const nonempty = (std::size_t{1} << m) - 1;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << nonempty); ++pick)
    {
      std::vector<Bundle> bs{Bundle{}};
      for (std::size_t j = 0; j < nonempty; ++j)
      {
        if ((pick >> j) & 1U)
        {
          bs.emplace_back(j + 1);
        }
      }
      BundleFamily const f(u, bs);
      auto const         c = is_quasi_field(f);
      ASSERT_EQ(c.is_quasi_field, oracle::quasi_field(masks(f), m));
      ASSERT_EQ(c.is_field, oracle::field(masks(f), m));
      ASSERT_EQ(c.witness.has_value(), !c.is_quasi_field);
      if (m <= 3)
      {
        ASSERT_EQ(c.is_quasi_field, c.is_field) << "small universes: quasi fields are fields";
      }
    }
  }
}

TEST(PartitionField, AllUnionsOfParts)
{
  auto const f = field_of_partition(abcd, Partition(4, {abcd.parse("ab"), abcd.parse("cd")}));
  EXPECT_EQ(f, family(abcd, {"", "ab", "cd", "abcd"}));
  EXPECT_EQ(field_of_partition(abcd, Partition(4, {abcd.full()})), family(abcd, {"", "abcd"}));
  auto const three = field_of_partition(abcd, Partition::from_sizes({2, 1, 1}));
  EXPECT_EQ(three.size(), 8U);
  auto const c = is_quasi_field(three);
  EXPECT_TRUE(c.is_quasi_field && c.is_field);
  auto const back = as_partition_field(three);
  ASSERT_TRUE(back);
  EXPECT_EQ(back->part_sizes(), (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_FALSE(as_partition_field(quasi));
}

TEST(Projection, UnanimityOntoNonQuasiField)
{
  auto const v = project_valuation(unanimity_valuation(4, abcd.parse("bc")), nonquasi);
  for (Bundle::Mask mask = 0; mask < 16; ++mask)
  {
    auto const name = abcd.format(Bundle(mask));
    bool const one  = name == "bcd" || name == "abc" || name == "abcd";
    EXPECT_EQ(v(Bundle(mask)), one ? 1 : 0) << name;
  }
}

TEST(Projection, SigmaValuationIsFixed)
{
  auto const w = unanimity_valuation(4, abcd.parse("ab"));
  auto const p = project_valuation(w, quasi);
  for (Bundle::Mask mask = 0; mask < 16; ++mask)
  {
    EXPECT_EQ(p(Bundle(mask)), w(Bundle(mask)));
  }
}

TEST(Projection, TrivialFamilyKeepsOnlyTheWhole)
{
  std::mt19937_64 rng(2);
  auto const      v = ProfileSweep::random_monotone_valuation(4, rng, 9);
  auto const      p = project_valuation(v, family(abcd, {"", "abcd"}));
  for (Bundle::Mask mask = 0; mask < 15; ++mask)
  {
    EXPECT_EQ(p(Bundle(mask)), 0);
  }
  EXPECT_EQ(p(abcd.full()), v(abcd.full()));
}

TEST(Projection, IdempotentDominatedAndMonotoneInSigma)
{
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial)
  {
    std::size_t const m  = 2 + rng() % 4;
    auto const        u  = GoodsUniverse::standard(m);
    auto const        v  = ProfileSweep::random_monotone_valuation(m, rng, 6);
    std::vector<Bundle> small{Bundle{}};
    std::vector<Bundle> large{Bundle{}};
    for (Bundle::Mask mask = 1; mask <= u.full().mask(); ++mask)
    {
      auto const roll = rng() % 3;
      if (roll == 0)
      {
        small.emplace_back(mask);
      }
      if (roll != 2)
      {
        large.emplace_back(mask);
      }
    }
    BundleFamily const s1(u, small);
    BundleFamily const s2(u, large);
    auto const         p1 = project_valuation(v, s1);
    auto const         p2 = project_valuation(v, s2);
    auto const         pp = project_valuation(p1, s1);
    ASSERT_TRUE(validate_valuation(p1).ok());
    for (Bundle::Mask mask = 0; mask <= u.full().mask(); ++mask)
    {
      Bundle const b(mask);
      ASSERT_EQ(p1(b), oracle::projected(v, s1, mask));
      ASSERT_EQ(pp(b), p1(b));
      ASSERT_LE(p1(b), v(b));
      ASSERT_LE(p1(b), p2(b));
    }
  }
}

TEST(Projection, PartitionRouteMatchesFamilyRoute)
{
  std::mt19937_64 rng(4);
  auto const      pi = Partition::from_sizes({2, 3, 1});
  auto const      u  = GoodsUniverse::standard(6);
  auto const      f  = field_of_partition(u, pi);
  for (int trial = 0; trial < 20; ++trial)
  {
    auto const v = ProfileSweep::random_monotone_valuation(6, rng, 7);
    auto const a = project_valuation(v, pi);
    auto const b = project_valuation(v, f);
    for (Bundle::Mask mask = 0; mask < 64; ++mask)
    {
      ASSERT_EQ(a(Bundle(mask)), b(Bundle(mask)));
    }
  }
  // a single atom on many goods goes to the atom of its closure
  auto const big  = Partition::from_sizes(std::vector<std::size_t>(7, 3));
  auto const atom = project_valuation(unanimity_valuation(21, Bundle(0b1001)), big);
  ASSERT_TRUE(atom.single_atom());
  EXPECT_EQ(atom.single_atom()->bundle, Bundle(0b111111));
}

TEST(Counterexample, NonQuasiFieldWitness)
{
  auto const w = quasi_field_counterexample(nonquasi);
  ASSERT_EQ(w.profile.buyers(), 3U);
  EXPECT_EQ(w.profile[0].single_atom()->bundle, abcd.parse("bc"));
  EXPECT_EQ(w.profile[1].single_atom()->bundle, abcd.parse("a"));
  EXPECT_EQ(w.profile[2].single_atom()->bundle, abcd.parse("d"));
  EXPECT_EQ(w.deviator, 0U);
  EXPECT_EQ(w.allocation[0], Bundle{});
  EXPECT_EQ(w.allocation[1], abcd.parse("a"));
  EXPECT_EQ(w.allocation[2], abcd.parse("d"));
  EXPECT_EQ(w.allocation.seller(), abcd.parse("bc"));
}

TEST(Counterexample, MissingComplementTwoBuyers)
{
  auto const u = GoodsUniverse::standard(2);
  auto const w = quasi_field_counterexample(family(u, {"", "a", "ab"}));
  ASSERT_EQ(w.profile.buyers(), 2U);
  EXPECT_EQ(w.profile[0].single_atom()->bundle, u.parse("b"));
  EXPECT_EQ(w.profile[1].single_atom()->bundle, u.parse("a"));
}

TEST(Counterexample, FieldsHaveNone)
{
  EXPECT_THROW(quasi_field_counterexample(BundleFamily::power_set(abcd)), InvalidInput);
  EXPECT_THROW(quasi_field_counterexample(quasi), InvalidInput);
}

TEST(Closure, SmallCases)
{
  auto const u = GoodsUniverse::standard(2);
  EXPECT_EQ(quasi_field_closure(family(u, {"", "a"})), family(u, {"", "a", "b", "ab"}));
  EXPECT_EQ(quasi_field_closure(quasi), quasi);
  EXPECT_EQ(quasi_field_closure(family(u, {""})), family(u, {"", "ab"}));
}

TEST(Closure, SmallestQuasiFieldContaining)
{
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial)
  {
    std::size_t const m = 2 + rng() % 3;
    auto const        u = GoodsUniverse::standard(m);
    std::vector<Bundle> gens{Bundle{}, Bundle(1 + rng() % u.full().mask())};
    auto const closed = quasi_field_closure(BundleFamily(u, gens));
    ASSERT_TRUE(is_quasi_field(closed).is_quasi_field);
    // every quasi field over u containing the generators contains the closure
    std::size_t const nonempty = (std::size_t{1} << m) - 1;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << nonempty); ++pick)
    {
      std::set<oracle::Mask> f{0};
      for (std::size_t j = 0; j < nonempty; ++j)
      {
        if ((pick >> j) & 1U)
        {
          f.insert(j + 1);
        }
      }
      if (!f.count(gens[1].mask()) || !oracle::quasi_field(f, m))
      {
        continue;
      }
      for (auto b : closed)
      {
        ASSERT_TRUE(f.count(b.mask()));
      }
    }
  }
}

TEST(Enumeration, AllQuasiFieldsMatchComplementPairSearch)
{
  // a quasi field is a union of complementary pairs containing {empty, A}
  for (std::size_t m = 1; m <= 5; ++m)
  {
    auto const        u    = GoodsUniverse::standard(m);
    oracle::Mask const full = u.full().mask();
    std::vector<oracle::Mask> low;
    for (oracle::Mask b = 1; b <= full; ++b)
    {
      if (b < (full ^ b))
      {
        low.push_back(b);
      }
    }
    std::set<std::set<oracle::Mask>> expected;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << low.size()); ++pick)
    {
      std::set<oracle::Mask> f{0, full};
      for (std::size_t j = 0; j < low.size(); ++j)
      {
        if ((pick >> j) & 1U)
        {
          f.insert(low[j]);
          f.insert(full ^ low[j]);
        }
      }
      if (oracle::quasi_field(f, m))
      {
        expected.insert(f);
      }
    }
    std::set<std::set<oracle::Mask>> got;
    for (auto const &sigma : all_quasi_fields(u))
    {
      ASSERT_TRUE(got.insert(masks(sigma)).second);
    }
    ASSERT_EQ(got, expected) << "m=" << m;
  }
  EXPECT_EQ(all_quasi_fields(GoodsUniverse::standard(3)).size(), 5U);
  EXPECT_THROW(all_quasi_fields(GoodsUniverse::standard(7)), BudgetExceeded);
}

}  // namespace
