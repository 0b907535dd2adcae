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

#include "vcb/error.hpp"

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace vcb {

/// Hard ceiling on the number of goods: bundles are 64-bit masks.
inline constexpr std::size_t kMaxGoods = 64;

/// A set of goods, bit l set iff good l is a member. Ordering is by mask integer,
/// which is the canonical order used for every deterministic tie-break.
class Bundle
{
public:
  using Mask = std::uint64_t;

  constexpr Bundle() = default;
  constexpr explicit Bundle(Mask mask)
    : mask_(mask)
  {}

  static constexpr Bundle full(std::size_t m) noexcept
  {
    return Bundle(m >= 64 ? ~Mask{0} : ((Mask{1} << m) - 1));
  }
  static constexpr Bundle single(std::size_t good) noexcept
  {
    return Bundle(Mask{1} << good);
  }

  constexpr Mask mask() const noexcept
  {
    return mask_;
  }
  constexpr bool empty() const noexcept
  {
    return mask_ == 0;
  }
  constexpr std::size_t size() const noexcept
  {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool has(std::size_t good) const noexcept
  {
    return ((mask_ >> good) & 1U) != 0;
  }
  constexpr bool subset_of(Bundle other) const noexcept
  {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool disjoint(Bundle other) const noexcept
  {
    return (mask_ & other.mask_) == 0;
  }
  constexpr Bundle complement(std::size_t m) const noexcept
  {
    return Bundle(~mask_ & full(m).mask_);
  }

  constexpr Bundle operator|(Bundle o) const noexcept
  {
    return Bundle(mask_ | o.mask_);
  }
  constexpr Bundle operator&(Bundle o) const noexcept
  {
    return Bundle(mask_ & o.mask_);
  }
  constexpr Bundle minus(Bundle o) const noexcept
  {
    return Bundle(mask_ & ~o.mask_);
  }

  constexpr auto operator<=>(Bundle const &) const = default;

  /// Member goods in increasing index order.
  std::vector<std::size_t> goods() const
  {
    std::vector<std::size_t> out;
    for (Mask rest = mask_; rest != 0; rest &= rest - 1)
    {
      out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
    }
    return out;
  }

private:
  Mask mask_{0};
};

struct BundleHash
{
  std::size_t operator()(Bundle b) const noexcept
  {
    return std::hash<Bundle::Mask>{}(b.mask());
  }
};

/// The ordered, labelled set of goods A. Copies share the label storage.
class GoodsUniverse
{
public:
  explicit GoodsUniverse(std::vector<std::string> labels)
    : labels_(std::make_shared<std::vector<std::string> const>(std::move(labels)))
  {
    if (labels_->empty())
    {
      throw InvalidInput("goods universe must contain at least one good");
    }
    if (labels_->size() > kMaxGoods)
    {
      throw BudgetExceeded("at most 64 goods are supported");
    }
    std::unordered_set<std::string> seen;
    for (auto const &l : *labels_)
    {
      if (l.empty())
      {
        throw InvalidInput("good labels must be non-empty");
      }
      if (!seen.insert(l).second)
      {
        throw InvalidInput("duplicate good label '" + l + "'");
      }
    }
  }

  /// Labels a, b, c, ... for m <= 26, otherwise g1, g2, ...
  static GoodsUniverse standard(std::size_t m)
  {
    std::vector<std::string> labels;
    labels.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
    {
      labels.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i + 1));
    }
    return GoodsUniverse(std::move(labels));
  }

  std::size_t size() const noexcept
  {
    return labels_->size();
  }
  std::vector<std::string> const &labels() const noexcept
  {
    return *labels_;
  }
  Bundle full() const noexcept
  {
    return Bundle::full(size());
  }
  bool contains(Bundle b) const noexcept
  {
    return b.subset_of(full());
  }

  /// Concatenated labels in good order; the empty bundle is "".
  std::string format(Bundle b) const
  {
    std::string out;
    for (auto g : b.goods())
    {
      out += (*labels_)[g];
    }
    return out;
  }

  /// Inverse of format(); uses longest-label-first matching, so multi-character labels work
  /// as long as the concatenation is unambiguous.
  Bundle parse(std::string_view text) const
  {
    Bundle::Mask mask = 0;
    std::size_t  pos  = 0;
    while (pos < text.size())
    {
      std::size_t best     = labels_->size();
      std::size_t best_len = 0;
      for (std::size_t g = 0; g < labels_->size(); ++g)
      {
        auto const &l = (*labels_)[g];
        if (l.size() > best_len && text.substr(pos, l.size()) == l)
        {
          best     = g;
          best_len = l.size();
        }
      }
      if (best == labels_->size())
      {
        throw InvalidInput("cannot parse bundle '" + std::string(text) + "'");
      }
      if ((mask >> best) & 1U)
      {
        throw InvalidInput("good repeated in bundle '" + std::string(text) + "'");
      }
      mask |= Bundle::Mask{1} << best;
      pos += best_len;
    }
    return Bundle(mask);
  }

  friend bool operator==(GoodsUniverse const &a, GoodsUniverse const &b)
  {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

private:
  std::shared_ptr<std::vector<std::string> const> labels_;
};

}  // namespace vcb
