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

#include "vcb/bundle.hpp"
#include "vcb/error.hpp"
#include "vcb/rational.hpp"
#include "vcb/valuation.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace vcb {

/// Valuations of n >= 1 buyers over one universe. Every valuation is validated on construction.
class Profile
{
public:
  Profile(GoodsUniverse universe, std::vector<Valuation> valuations)
    : universe_(std::move(universe))
    , valuations_(std::move(valuations))
  {
    if (valuations_.empty())
    {
      throw InvalidInput("a profile needs at least one buyer");
    }
    for (std::size_t i = 0; i < valuations_.size(); ++i)
    {
      if (valuations_[i].goods() != universe_.size())
      {
        throw InvalidInput("buyer " + std::to_string(i + 1) + " valuation is over a different universe");
      }
      auto const report = validate_valuation(valuations_[i]);
      if (!report.ok())
      {
        throw InvalidInput("buyer " + std::to_string(i + 1) + ": " + report.describe(universe_));
      }
    }
  }

  GoodsUniverse const &universe() const noexcept
  {
    return universe_;
  }
  std::size_t goods() const noexcept
  {
    return universe_.size();
  }
  std::size_t buyers() const noexcept
  {
    return valuations_.size();
  }
  Valuation const &operator[](std::size_t i) const
  {
    return valuations_[i];
  }
  std::vector<Valuation> const &valuations() const noexcept
  {
    return valuations_;
  }

  /// Same profile with buyer i's valuation replaced.
  Profile with(std::size_t i, Valuation v) const
  {
    std::vector<Valuation> vs = valuations_;
    vs.at(i)                  = std::move(v);
    return Profile(universe_, std::move(vs));
  }

  /// Profile of everyone except buyer i; empty optional when i is the only buyer.
  std::optional<Profile> without(std::size_t i) const
  {
    if (valuations_.size() == 1)
    {
      return std::nullopt;
    }
    std::vector<Valuation> vs;
    for (std::size_t j = 0; j < valuations_.size(); ++j)
    {
      if (j != i)
      {
        vs.push_back(valuations_[j]);
      }
    }
    return Profile(universe_, std::move(vs));
  }

  Profile scaled(Value factor) const
  {
    std::vector<Valuation> vs;
    for (auto const &v : valuations_)
    {
      vs.push_back(v.scaled(factor));
    }
    return Profile(universe_, std::move(vs));
  }

  bool all_atoms() const
  {
    return std::none_of(valuations_.begin(), valuations_.end(), [](auto const &v) { return v.is_dense(); });
  }

  bool is_zero() const
  {
    Bundle const a = universe_.full();
    return std::all_of(valuations_.begin(), valuations_.end(), [a](auto const &v) { return v(a) == 0; });
  }

private:
  GoodsUniverse          universe_;
  std::vector<Valuation> valuations_;
};

/// An ordered partition of A: one bundle per buyer plus the seller's remainder.
class Allocation
{
public:
  Allocation(std::size_t m, std::vector<Bundle> buyer_bundles, Bundle seller)
    : m_(m)
    , buyers_(std::move(buyer_bundles))
    , seller_(seller)
  {
    Bundle seen;
    for (auto b : buyers_)
    {
      if (!b.disjoint(seen))
      {
        throw InvalidInput("allocation assigns a good to two buyers");
      }
      seen = seen | b;
    }
    if (!seller_.disjoint(seen))
    {
      throw InvalidInput("allocation assigns a good to both a buyer and the seller");
    }
    if ((seen | seller_) != Bundle::full(m_))
    {
      throw InvalidInput("allocation does not cover every good");
    }
  }

  /// Buyers receive the given disjoint bundles, the seller keeps the rest.
  static Allocation with_remainder(std::size_t m, std::vector<Bundle> buyer_bundles)
  {
    Bundle used;
    for (auto b : buyer_bundles)
    {
      if (!b.disjoint(used))
      {
        throw InvalidInput("allocation assigns a good to two buyers");
      }
      used = used | b;
    }
    return Allocation(m, std::move(buyer_bundles), used.complement(m));
  }

  std::size_t goods() const noexcept
  {
    return m_;
  }
  std::size_t buyers() const noexcept
  {
    return buyers_.size();
  }
  Bundle operator[](std::size_t i) const
  {
    return buyers_[i];
  }
  std::vector<Bundle> const &buyer_bundles() const noexcept
  {
    return buyers_;
  }
  Bundle seller() const noexcept
  {
    return seller_;
  }

  friend bool operator==(Allocation const &, Allocation const &) = default;

private:
  std::size_t         m_;
  std::vector<Bundle> buyers_;
  Bundle              seller_;
};

/// S(v, gamma) = sum of v_i(gamma_i).
inline Value surplus(Profile const &v, Allocation const &gamma)
{
  if (v.buyers() != gamma.buyers())
  {
    throw InvalidInput("allocation and profile disagree on the number of buyers");
  }
  Value s = 0;
  for (std::size_t i = 0; i < v.buyers(); ++i)
  {
    s += v[i](gamma[i]);
  }
  return s;
}

/// A partition of A into k >= 1 nonempty disjoint parts.
class Partition
{
public:
  Partition(std::size_t m, std::vector<Bundle> parts)
    : m_(m)
    , parts_(std::move(parts))
  {
    if (parts_.empty())
    {
      throw InvalidInput("a partition needs at least one part");
    }
    Bundle seen;
    for (auto p : parts_)
    {
      if (p.empty())
      {
        throw InvalidInput("partition parts must be nonempty");
      }
      if (!p.disjoint(seen))
      {
        throw InvalidInput("partition parts must be disjoint");
      }
      seen = seen | p;
    }
    if (seen != Bundle::full(m_))
    {
      throw InvalidInput("partition parts must cover every good");
    }
  }

  /// Consecutive blocks of goods with the given sizes.
  static Partition from_sizes(std::vector<std::size_t> const &sizes)
  {
    std::size_t const m = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (m == 0 || m > kMaxGoods)
    {
      throw InvalidInput("partition sizes must sum to 1..64 goods");
    }
    std::vector<Bundle> parts;
    std::size_t         next = 0;
    for (auto s : sizes)
    {
      if (s == 0)
      {
        throw InvalidInput("partition parts must be nonempty");
      }
      Bundle::Mask mask = 0;
      for (std::size_t j = 0; j < s; ++j)
      {
        mask |= Bundle::Mask{1} << next++;
      }
      parts.emplace_back(mask);
    }
    return Partition(m, std::move(parts));
  }

  std::size_t goods() const noexcept
  {
    return m_;
  }
  std::size_t size() const noexcept
  {
    return parts_.size();
  }
  Bundle operator[](std::size_t l) const
  {
    return parts_[l];
  }
  std::vector<Bundle> const &parts() const noexcept
  {
    return parts_;
  }
  std::vector<std::size_t> part_sizes() const
  {
    std::vector<std::size_t> out;
    for (auto p : parts_)
    {
      out.push_back(p.size());
    }
    return out;
  }
  /// beta(pi): the largest part size.
  std::size_t max_part() const
  {
    std::size_t b = 0;
    for (auto p : parts_)
    {
      b = std::max(b, p.size());
    }
    return b;
  }

  /// Union of the parts whose index bit is set in `indices`.
  Bundle union_of(std::uint64_t indices) const
  {
    Bundle out;
    for (std::size_t l = 0; l < parts_.size(); ++l)
    {
      if ((indices >> l) & 1U)
      {
        out = out | parts_[l];
      }
    }
    return out;
  }

  /// Indices of the parts a bundle touches, as a bitmask over parts.
  std::uint64_t touched(Bundle b) const
  {
    std::uint64_t out = 0;
    for (std::size_t l = 0; l < parts_.size(); ++l)
    {
      if (!parts_[l].disjoint(b))
      {
        out |= std::uint64_t{1} << l;
      }
    }
    return out;
  }

private:
  std::size_t         m_;
  std::vector<Bundle> parts_;
};

}  // namespace vcb
