#pragma once
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

#include "vcb/auction.hpp"
#include "vcb/core.hpp"
#include "vcb/rational.hpp"
#include "vcb/sigma.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace vcb {

/// Which VC mechanism the deviation gap is measured in.
struct GapMode
{
  bool         adversarial{true};
  TieBreakRule tie{TieBreakRule::canonical()};

  static GapMode worst_case()
  {
    return {true, TieBreakRule::canonical()};
  }
  static GapMode fixed(TieBreakRule tie)
  {
    return {false, std::move(tie)};
  }
};

/// Gap analysis for one true profile against one family: everyone else reports v_j^Sigma,
/// buyer i either reports v_i^Sigma or the truth.
class DeviationAnalysis
{
public:
  DeviationAnalysis(BundleFamily const &sigma, Profile truth)
    : truth_(std::move(truth))
    , projected_(project_profile(truth_, sigma))
  {}

  Profile const &projected() const noexcept
  {
    return projected_;
  }

  /// u_i(report v_i) - u_i(report v_i^Sigma)
  ///   = S_max(v_i, v^Sigma_-i) - S((v_i, v^Sigma_-i), gamma),  gamma = d(v^Sigma).
  /// Adversarial mode picks gamma among the optima to minimize the second term.
  Value gap(std::size_t i, GapMode const &mode) const
  {
    if (i >= truth_.buyers())
    {
      throw InvalidInput("buyer index out of range");
    }
    Profile const      mixed = projected_.with(i, truth_[i]);
    TieBreakRule const tie   = mode.adversarial ? TieBreakRule::adversarial_to(i, truth_[i]) : mode.tie;
    auto const         gamma = optimal_allocation(projected_, tie).allocation;
    Value const        g     = max_surplus(mixed) - surplus(mixed, gamma);
    if (g < 0)
    {
      throw InvariantViolation("negative deviation gap: truthful reporting is not dominant");
    }
    return g;
  }

  /// The same gap measured under a caller-chosen allocation for the projected reports.
  Value gap_under(std::size_t i, Allocation const &gamma) const
  {
    if (surplus(projected_, gamma) != max_surplus(projected_))
    {
      throw InvalidInput("allocation is not surplus-maximizing for the projected reports");
    }
    Profile const mixed = projected_.with(i, truth_[i]);
    return max_surplus(mixed) - surplus(mixed, gamma);
  }

private:
  Profile truth_;
  Profile projected_;
};

inline Value deviation_gap(BundleFamily const &sigma, Profile const &truth, std::size_t i,
                           GapMode const &mode = GapMode::worst_case())
{
  return DeviationAnalysis(sigma, truth).gap(i, mode);
}

/// Source of test profiles for equilibrium and efficiency sweeps.
class ProfileSweep
{
public:
  enum class Kind
  {
    disjoint_unanimity,
    random_monotone,
    fixed
  };

  /// Every nonzero profile of unit w_{B_i} with pairwise-disjoint nonempty B_i and at most
  /// `max_buyers` buyers (0 means m). Buyers are ordered by their first good.
  static ProfileSweep disjoint_unanimity(std::size_t max_buyers = 0)
  {
    ProfileSweep s;
    s.kind_   = Kind::disjoint_unanimity;
    s.buyers_ = max_buyers;
    return s;
  }

  /// `count` dense profiles of `buyers` monotone valuations with values in 0..max_value,
  /// drawn from mt19937_64(seed). Needs m <= 14.
  static ProfileSweep random_monotone(std::size_t count, std::size_t buyers, std::uint64_t seed, Value max_value = 8)
  {
    ProfileSweep s;
    s.kind_      = Kind::random_monotone;
    s.count_     = count;
    s.buyers_    = buyers;
    s.seed_      = seed;
    s.max_value_ = max_value;
    return s;
  }

  static ProfileSweep fixed(std::vector<Profile> profiles)
  {
    ProfileSweep s;
    s.kind_     = Kind::fixed;
    s.profiles_ = std::move(profiles);
    return s;
  }

  Kind kind() const noexcept
  {
    return kind_;
  }

  void for_each(GoodsUniverse const &u, std::function<void(Profile const &)> const &visit) const
  {
    switch (kind_)
    {
    case Kind::disjoint_unanimity:
    {
      std::vector<std::uint64_t> blocks;
      enumerate_blocks(u, 0, blocks, buyers_ == 0 ? u.size() : buyers_, visit);
      break;
    }
    case Kind::random_monotone:
    {
      if (u.size() > kMaxDenseGoods)
      {
        throw BudgetExceeded("random dense profiles need m <= 14");
      }
      std::mt19937_64 rng(seed_);
      for (std::size_t c = 0; c < count_; ++c)
      {
        std::vector<Valuation> vs;
        for (std::size_t i = 0; i < buyers_; ++i)
        {
          vs.push_back(random_monotone_valuation(u.size(), rng, max_value_));
        }
        visit(Profile(u, std::move(vs)));
      }
      break;
    }
    case Kind::fixed:
      for (auto const &p : profiles_)
      {
        visit(p);
      }
      break;
    }
  }

  /// Dense monotone valuation: uniform raw values, then v(B) = max over subsets of B.
  static Valuation random_monotone_valuation(std::size_t m, std::mt19937_64 &rng, Value max_value)
  {
    std::vector<Value> t(std::size_t{1} << m);
    auto const         span = static_cast<std::uint64_t>(max_value) + 1;
    for (std::size_t mask = 1; mask < t.size(); ++mask)
    {
      t[mask] = static_cast<Value>(rng() % span);
    }
    for (std::size_t g = 0; g < m; ++g)
    {
      std::size_t const bit = std::size_t{1} << g;
      for (std::size_t mask = 0; mask < t.size(); ++mask)
      {
        if (mask & bit)
        {
          t[mask] = std::max(t[mask], t[mask ^ bit]);
        }
      }
    }
    return Valuation::dense(m, std::move(t));
  }

private:
  static void enumerate_blocks(GoodsUniverse const &u, std::size_t good, std::vector<std::uint64_t> &blocks,
                               std::size_t max_blocks, std::function<void(Profile const &)> const &visit)
  {
    if (good == u.size())
    {
      if (blocks.empty())
      {
        return;
      }
      std::vector<Valuation> vs;
      for (auto b : blocks)
      {
        vs.push_back(unanimity_valuation(u.size(), Bundle(b)));
      }
      visit(Profile(u, std::move(vs)));
      return;
    }
    std::uint64_t const bit = std::uint64_t{1} << good;
    enumerate_blocks(u, good + 1, blocks, max_blocks, visit);  // good stays with nobody
    for (auto &b : blocks)
    {
      b |= bit;
      enumerate_blocks(u, good + 1, blocks, max_blocks, visit);
      b &= ~bit;
    }
    if (blocks.size() < max_blocks)
    {
      blocks.push_back(bit);
      enumerate_blocks(u, good + 1, blocks, max_blocks, visit);
      blocks.pop_back();
    }
  }

  Kind                 kind_{Kind::disjoint_unanimity};
  std::size_t          count_{0};
  std::size_t          buyers_{0};
  std::uint64_t        seed_{0};
  Value                max_value_{8};
  std::vector<Profile> profiles_;
};

/// Quasi field generated by 1..max_generators uniformly drawn nonempty proper subsets.
inline BundleFamily random_quasi_field(GoodsUniverse const &u, std::mt19937_64 &rng, std::size_t max_generators = 3)
{
  std::size_t const m = u.size();
  if (m > kMaxDenseGoods)
  {
    throw BudgetExceeded("random quasi fields need m <= 14");
  }
  std::vector<Bundle> gens{Bundle{}};
  if (m > 1)
  {
    std::size_t const count = 1 + static_cast<std::size_t>(rng() % std::max<std::size_t>(1, max_generators));
    Bundle::Mask const proper = u.full().mask() - 1;
    for (std::size_t c = 0; c < count; ++c)
    {
      gens.emplace_back(1 + rng() % proper);
    }
  }
  return quasi_field_closure(BundleFamily(u, std::move(gens)));
}

struct EquilibriumVerdict
{
  bool                              consistent{false};
  FamilyClassification              classification;
  std::optional<EquilibriumWitness> witness;
  Value                             witness_gap{0};  ///< adversarial gap of the witness
  std::size_t                       profiles_checked{0};
  std::size_t                       gaps_checked{0};
};

/// Quasi fields: every generated profile, every buyer, every mode must give gap 0; anything
/// else is reported as InvariantViolation. Other families: the constructed witness must have
/// a strictly positive adversarial gap.
inline EquilibriumVerdict check_bundling_equilibrium(BundleFamily const &sigma, ProfileSweep const &sweep,
                                                     std::vector<GapMode> const &modes = {
                                                         GapMode::fixed(TieBreakRule::canonical()),
                                                         GapMode::worst_case()})
{
  EquilibriumVerdict out;
  out.classification = is_quasi_field(sigma);
  if (!out.classification.is_quasi_field)
  {
    auto witness    = quasi_field_counterexample(sigma);
    out.witness_gap = deviation_gap(sigma, witness.profile, witness.deviator, GapMode::worst_case());
    if (out.witness_gap <= 0)
    {
      throw InvariantViolation("constructed counterexample has no profitable deviation");
    }
    out.witness = std::move(witness);
    return out;
  }
  sweep.for_each(sigma.universe(), [&](Profile const &truth) {
    DeviationAnalysis const analysis(sigma, truth);
    for (std::size_t i = 0; i < truth.buyers(); ++i)
    {
      for (auto const &mode : modes)
      {
        if (analysis.gap(i, mode) != 0)
        {
          throw InvariantViolation("nonzero deviation gap for a quasi field");
        }
        ++out.gaps_checked;
      }
    }
    ++out.profiles_checked;
  });
  out.consistent = true;
  return out;
}

/// |Sigma|, the number of values each buyer reports under f^Sigma.
inline std::size_t communication_complexity(BundleFamily const &sigma)
{
  return sigma.size();
}

struct RatioResult
{
  Rational               ratio{1};
  std::optional<Profile> argmax;  ///< first profile attaining the ratio
  std::size_t            profiles{0};
};

/// max over generated nonzero profiles of S_max(v) / S_Sigma(v): a certified lower bound on
/// r_Sigma^n (exact for partitions with the disjoint-unanimity sweep).
inline RatioResult empirical_ratio(BundleFamily const &sigma, ProfileSweep const &sweep)
{
  if (!sigma.contains(sigma.universe().full()))
  {
    throw InvalidInput("efficiency ratio requires A in Sigma");
  }
  SigmaSurplus const restricted(sigma);
  RatioResult        out;
  sweep.for_each(sigma.universe(), [&](Profile const &v) {
    if (v.is_zero())
    {
      return;
    }
    ++out.profiles;
    Value const top = max_surplus(v);
    Value const sub = restricted(v);
    if (sub <= 0)
    {
      throw InvariantViolation("S_Sigma vanished on a nonzero profile with A in Sigma");
    }
    Rational const r(top, sub);
    if (!out.argmax || r > out.ratio)
    {
      out.ratio  = r;
      out.argmax = v;
    }
  });
  return out;
}

}  // namespace vcb
