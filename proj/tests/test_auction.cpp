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

std::vector<oracle::Mask> masks(Allocation const &a)
{
  std::vector<oracle::Mask> out;
  for (auto b : a.buyer_bundles())
  {
    out.push_back(b.mask());
  }
  return out;
}

Profile random_profile(std::mt19937_64 &rng, std::size_t m, std::size_t n, Value max_value = 4)
{
  std::vector<Valuation> vs;
  for (std::size_t i = 0; i < n; ++i)
  {
    vs.push_back(ProfileSweep::random_monotone_valuation(m, rng, max_value));
  }
  return Profile(GoodsUniverse::standard(m), vs);
}

Profile random_atoms(std::mt19937_64 &rng, std::size_t m, std::size_t n, std::size_t atoms_each)
{
  std::vector<Valuation> vs;
  for (std::size_t i = 0; i < n; ++i)
  {
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < atoms_each; ++j)
    {
      atoms.push_back({Bundle(1 + rng() % ((Bundle::Mask{1} << m) - 1)), static_cast<Value>(1 + rng() % 3)});
    }
    vs.push_back(Valuation::atoms(m, atoms));
  }
  return Profile(GoodsUniverse::standard(m), vs);
}

Profile unit(GoodsUniverse const &u, std::vector<std::string> const &bundles)
{
  std::vector<Valuation> vs;
  for (auto const &b : bundles)
  {
    vs.push_back(unanimity_valuation(u.size(), u.parse(b)));
  }
  return Profile(u, vs);
}

GoodsUniverse const ab   = GoodsUniverse::standard(2);
GoodsUniverse const abcd = GoodsUniverse::standard(4);

TEST(WinnerDetermination, TwoSingletonBuyers)
{
  auto const wd = optimal_allocation(unit(ab, {"a", "b"}));
  EXPECT_EQ(wd.surplus, 2);
  EXPECT_EQ(wd.allocation[0], ab.parse("a"));
  EXPECT_EQ(wd.allocation[1], ab.parse("b"));
}

TEST(WinnerDetermination, SingleBuyerGetsEverythingValuable)
{
  std::mt19937_64 rng(1);
  auto const      v  = random_profile(rng, 4, 1, 9);
  auto const      wd = optimal_allocation(v);
  EXPECT_EQ(wd.surplus, v[0](abcd.full()));
  EXPECT_EQ(v[0](wd.allocation[0]), v[0](abcd.full()));
}

TEST(WinnerDetermination, ThreeUnanimityBuyers)
{
  auto const v = unit(abcd, {"bc", "a", "d"});
  EXPECT_EQ(max_surplus(v), 3);
  EXPECT_EQ(max_surplus(v), oracle::max_surplus(v));
}

TEST(WinnerDetermination, MatchesBruteForceWithTieRules)
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial)
  {
    std::size_t const m   = 1 + rng() % 4;
    std::size_t const n   = 1 + rng() % 3;
    auto const        v   = trial % 2 ? random_profile(rng, m, n) : random_atoms(rng, m, n, 1 + rng() % 3);
    auto const        ref = oracle::optimum(v);
    auto const        can = optimal_allocation(v, TieBreakRule::canonical());
    auto const        sel = optimal_allocation(v, TieBreakRule::seller_favoring());
    ASSERT_EQ(can.surplus, ref.surplus);
    ASSERT_EQ(masks(can.allocation), ref.canonical);
    ASSERT_EQ(sel.surplus, ref.surplus);
    ASSERT_EQ(masks(sel.allocation), ref.seller);
    ASSERT_EQ(surplus(v, can.allocation), ref.surplus);
  }
}

TEST(WinnerDetermination, AdversarialMinimizesTargetSurplus)
{
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial)
  {
    std::size_t const m      = 2 + rng() % 3;
    std::size_t const n      = 2 + rng() % 2;
    auto const        v      = trial % 2 ? random_profile(rng, m, n) : random_atoms(rng, m, n, 2);
    std::size_t const target = rng() % n;
    auto const        truth  = ProfileSweep::random_monotone_valuation(m, rng, 4);
    auto const        mixed  = v.with(target, truth);
    // brute force: among optima for v, least S(mixed, gamma), then lexicographic
    Value                     best = max_surplus(v);
    Value                     low  = std::numeric_limits<Value>::max();
    std::vector<oracle::Mask> pick;
    oracle::for_each_allocation(n, m, [&](std::vector<oracle::Mask> const &b) {
      if (oracle::surplus(v, b) != best)
      {
        return;
      }
      Value const s = oracle::surplus(mixed, b);
      if (s < low || (s == low && b < pick))
      {
        low  = s;
        pick = b;
      }
    });
    auto const wd = optimal_allocation(v, TieBreakRule::adversarial_to(target, truth));
    ASSERT_EQ(masks(wd.allocation), pick);
  }
}

TEST(WinnerDetermination, SparseAndDenseAgree)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial)
  {
    std::size_t const m = 3 + rng() % 6;
    std::size_t const n = 1 + rng() % 4;
    auto const        v = random_atoms(rng, m, n, 1 + rng() % 3);
    std::vector<Valuation> dense;
    for (auto const &x : v.valuations())
    {
      dense.push_back(x.to_dense());
    }
    Profile const d(v.universe(), dense);
    for (auto const &tie : {TieBreakRule::canonical(), TieBreakRule::seller_favoring()})
    {
      auto const a = optimal_allocation(v, tie);
      auto const b = optimal_allocation(d, tie);
      ASSERT_EQ(a.surplus, b.surplus);
      ASSERT_EQ(a.allocation, b.allocation);
    }
    auto const t = ProfileSweep::random_monotone_valuation(m, rng, 3);
    ASSERT_EQ(optimal_allocation(v, TieBreakRule::adversarial_to(0, t)).allocation,
              optimal_allocation(d, TieBreakRule::adversarial_to(0, t)).allocation);
  }
}

TEST(WinnerDetermination, Budgets)
{
  std::vector<Atom> many;
  for (std::size_t g = 0; g < 65; ++g)
  {
    many.push_back({Bundle::single(g % 64), 1});
  }
  Profile const big(GoodsUniverse::standard(64), {Valuation::atoms(64, many)});
  EXPECT_THROW(max_surplus(big), BudgetExceeded);
  Profile const wide(GoodsUniverse::standard(30), {unanimity_valuation(30, Bundle(0b11))});
  EXPECT_EQ(max_surplus(wide), 1);
}

TEST(Clarke, PaymentsMatchBruteForce)
{
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 150; ++trial)
  {
    std::size_t const m  = 1 + rng() % 4;
    std::size_t const n  = 1 + rng() % 3;
    auto const        v  = random_profile(rng, m, n);
    auto const        wd = optimal_allocation(v);
    for (std::size_t i = 0; i < n; ++i)
    {
      Value const c = clarke_payment(v, i);
      ASSERT_GE(c, 0);
      ASSERT_EQ(c, oracle::clarke(v, i, masks(wd.allocation)));
    }
  }
}

TEST(Clarke, SmallCases)
{
  auto const two = unit(ab, {"a", "b"});
  EXPECT_EQ(clarke_payment(two, 0), 0);
  EXPECT_EQ(clarke_payment(two, 1), 0);
  auto const both = unit(ab, {"ab", "ab"});
  auto const wd   = optimal_allocation(both);
  for (std::size_t i = 0; i < 2; ++i)
  {
    EXPECT_EQ(clarke_payment(both, i), wd.allocation[i].empty() ? 0 : 1);
  }
  EXPECT_EQ(clarke_payment(unit(ab, {"a"}), 0), 0);
}

TEST(RunVc, TwoGoodOutcomes)
{
  auto const truth    = unit(ab, {"a", "b"});
  auto const truthful = run_vc(truth);
  EXPECT_EQ(truthful.surplus, 2);
  EXPECT_EQ(truthful.revenue, 0);

  auto const bundled = run_vc(unit(ab, {"ab", "ab"}), TieBreakRule::canonical(), truth);
  EXPECT_EQ(bundled.surplus, 1);
  EXPECT_EQ(bundled.revenue, 1);

  auto const four = unit(ab, {"a", "b", "a", "b"});
  auto const out  = run_vc(four);
  EXPECT_EQ(out.surplus, 2);
  EXPECT_EQ(out.revenue, 2);
  auto const pi   = field_of_partition(ab, Partition(2, {ab.full()}));
  auto const outp = run_vc(project_profile(four, pi), TieBreakRule::canonical(), four);
  EXPECT_EQ(outp.surplus, 1);
  EXPECT_EQ(outp.revenue, 1);
}

TEST(RunVc, ShapeMismatchRejected)
{
  EXPECT_THROW(run_vc(unit(ab, {"a"}), TieBreakRule::canonical(), unit(ab, {"a", "b"})), InvalidInput);
}

// Utility of buyer i when reporting r_i while others report truthfully.
Value utility(Profile const &truth, std::size_t i, Valuation const &report, TieBreakRule const &tie)
{
  return run_vc(truth.with(i, report), tie, truth).utilities[i];
}

TEST(Truthfulness, DominantIndividuallyRationalAndTieFree)
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 120; ++trial)
  {
    std::size_t const m = 1 + rng() % 4;
    std::size_t const n = 1 + rng() % 3;
    auto const        v = random_profile(rng, m, n);
    for (std::size_t i = 0; i < n; ++i)
    {
      std::vector<TieBreakRule> ties{TieBreakRule::canonical(), TieBreakRule::seller_favoring(),
                                     TieBreakRule::adversarial_to(i, v[i])};
      Value const honest = utility(v, i, v[i], ties[0]);
      ASSERT_GE(honest, 0);
      for (auto const &tie : ties)
      {
        ASSERT_EQ(utility(v, i, v[i], tie), honest);
      }
      for (int alt = 0; alt < 6; ++alt)
      {
        auto const lie = ProfileSweep::random_monotone_valuation(m, rng, 5);
        for (auto const &tie : ties)
        {
          ASSERT_GE(honest, utility(v, i, lie, tie));
        }
      }
      auto const shaded = unanimity_valuation(m, Bundle::full(m), v[i](Bundle::full(m)));
      ASSERT_GE(honest, utility(v, i, shaded, ties[0]));
    }
  }
}

TEST(Truthfulness, SixGoodsAgainstProjectedReports)
{
  std::mt19937_64 rng(22);
  auto const      u = GoodsUniverse::standard(6);
  for (int trial = 0; trial < 20; ++trial)
  {
    auto const v     = random_atoms(rng, 6, 3, 2);
    auto const sigma = random_quasi_field(u, rng);
    for (std::size_t i = 0; i < 3; ++i)
    {
      Value const honest = utility(v, i, v[i], TieBreakRule::canonical());
      ASSERT_GE(honest, 0);
      ASSERT_GE(honest, utility(v, i, project_valuation(v[i], sigma), TieBreakRule::adversarial_to(i, v[i])));
    }
  }
}

TEST(SigmaSurplus, EqualsProjectedMaxAndBruteForce)
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial)
  {
    std::size_t const m = 1 + rng() % 4;
    std::size_t const n = 1 + rng() % 3;
    auto const        u = GoodsUniverse::standard(m);
    auto const        v = trial % 2 ? random_profile(rng, m, n) : random_atoms(rng, m, n, 2);
    std::vector<Bundle> bs{Bundle{}};
    for (Bundle::Mask mask = 1; mask <= u.full().mask(); ++mask)
    {
      if (rng() % 2)
      {
        bs.emplace_back(mask);
      }
    }
    BundleFamily const sigma(u, bs);
    auto const         wd = sigma_optimal_surplus(v, sigma);
    ASSERT_EQ(wd.surplus, max_surplus(project_profile(v, sigma)));
    ASSERT_EQ(wd.surplus, oracle::sigma_surplus(v, sigma));
    for (auto b : wd.allocation.buyer_bundles())
    {
      ASSERT_TRUE(sigma.contains(b));
    }
  }
}

TEST(SigmaSurplus, SingleAtomBuyersOnLargerFamilies)
{
  std::mt19937_64 rng(32);
  auto const      u     = GoodsUniverse::standard(8);
  auto const      sigma = balanced_sigma(u);
  for (int trial = 0; trial < 100; ++trial)
  {
    std::size_t const n = 1 + rng() % 5;
    std::vector<Valuation> vs;
    for (std::size_t i = 0; i < n; ++i)
    {
      vs.push_back(unanimity_valuation(8, Bundle(1 + rng() % 255), static_cast<Value>(1 + rng() % 3)));
    }
    Profile const v(u, vs);
    ASSERT_EQ(sigma_optimal_surplus(v, sigma).surplus, max_surplus(project_profile(v, sigma)));
  }
}

TEST(SigmaSurplus, PartitionFieldsUseMetaGoods)
{
  std::mt19937_64 rng(33);
  auto const      pi    = Partition::from_sizes({2, 2, 1});
  auto const      u     = GoodsUniverse::standard(5);
  auto const      sigma = field_of_partition(u, pi);
  for (int trial = 0; trial < 60; ++trial)
  {
    auto const v = random_profile(rng, 5, 1 + rng() % 3);
    ASSERT_EQ(partition_optimal_surplus(v, pi).surplus, oracle::sigma_surplus(v, sigma));
    ASSERT_EQ(sigma_optimal_surplus(v, sigma).surplus, oracle::sigma_surplus(v, sigma));
  }
}

TEST(SigmaSurplus, TrivialFamilyAndPowerSet)
{
  auto const v = unit(ab, {"a", "b"});
  EXPECT_EQ(sigma_optimal_surplus(v, BundleFamily(ab, {Bundle{}, ab.full()})).surplus, 1);
  EXPECT_EQ(sigma_optimal_surplus(v, BundleFamily::power_set(ab)).surplus, 2);
}

TEST(SigmaSurplus, AtMostBuyersTimesRestricted)
{
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 150; ++trial)
  {
    std::size_t const m     = 2 + rng() % 4;
    std::size_t const n     = 1 + rng() % 4;
    auto const        u     = GoodsUniverse::standard(m);
    auto const        v     = random_profile(rng, m, n);
    auto const        sigma = random_quasi_field(u, rng);
    ASSERT_LE(max_surplus(v), static_cast<Value>(n) * sigma_optimal_surplus(v, sigma).surplus);
  }
}

}  // namespace
