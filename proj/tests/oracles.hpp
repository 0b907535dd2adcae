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

// Brute-force reference implementations. They share only the data types with the library
// and recompute every quantity by plain enumeration.

#include "vcb/vcb.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Mask = std::uint64_t;

inline bool disjoint(Mask a, Mask b)
{
  return (a & b) == 0;
}

inline bool subset(Mask a, Mask b)
{
  return (a & ~b) == 0;
}

/// v(B) from the raw representation: table lookup or every sub-collection of atoms.
inline vcb::Value value(vcb::Valuation const &v, Mask b)
{
  if (v.is_dense())
  {
    return v.table()[b];
  }
  auto const atoms = v.atom_list();
  vcb::Value best  = 0;
  for (Mask pick = 0; pick < (Mask{1} << atoms.size()); ++pick)
  {
    Mask       used = 0;
    vcb::Value sum  = 0;
    bool       ok   = true;
    for (std::size_t j = 0; j < atoms.size() && ok; ++j)
    {
      if ((pick >> j) & 1U)
      {
        Mask const a = atoms[j].bundle.mask();
        ok           = disjoint(a, used) && subset(a, b);
        used |= a;
        sum += atoms[j].weight;
      }
    }
    if (ok)
    {
      best = std::max(best, sum);
    }
  }
  return best;
}

/// Calls visit(bundles) for every assignment of each good to a buyer or the seller.
inline void for_each_allocation(std::size_t n, std::size_t m, std::function<void(std::vector<Mask> const &)> const &visit)
{
  std::vector<std::size_t> owner(m, 0);
  std::vector<Mask>        bundles(n, 0);
  while (true)
  {
    std::fill(bundles.begin(), bundles.end(), 0);
    for (std::size_t g = 0; g < m; ++g)
    {
      if (owner[g] > 0)
      {
        bundles[owner[g] - 1] |= Mask{1} << g;
      }
    }
    visit(bundles);
    std::size_t g = 0;
    while (g < m && ++owner[g] == n + 1)
    {
      owner[g++] = 0;
    }
    if (g == m)
    {
      return;
    }
  }
}

inline vcb::Value surplus(vcb::Profile const &v, std::vector<Mask> const &bundles)
{
  vcb::Value s = 0;
  for (std::size_t i = 0; i < bundles.size(); ++i)
  {
    s += value(v[i], bundles[i]);
  }
  return s;
}

struct Optimum
{
  vcb::Value        surplus{-1};
  std::vector<Mask> canonical;  ///< lexicographically least optimal tuple of buyer masks
  std::vector<Mask> seller;     ///< fewest goods handed out, then lexicographically least
};

/// Optimum over allocations whose buyer bundles satisfy `admit`.
inline Optimum optimum(vcb::Profile const &v, std::function<bool(Mask)> const &admit = nullptr)
{
  Optimum out;
  int     fewest = 0;
  for_each_allocation(v.buyers(), v.goods(), [&](std::vector<Mask> const &b) {
    if (admit && !std::all_of(b.begin(), b.end(), admit))
    {
      return;
    }
    vcb::Value const s    = surplus(v, b);
    int              used = 0;
    for (auto x : b)
    {
      used += std::popcount(x);
    }
    if (s > out.surplus)
    {
      out     = {s, b, b};
      fewest  = used;
      return;
    }
    if (s == out.surplus)
    {
      out.canonical = std::min(out.canonical, b);
      if (used < fewest || (used == fewest && b < out.seller))
      {
        out.seller = b;
        fewest     = used;
      }
    }
  });
  return out;
}

inline vcb::Value max_surplus(vcb::Profile const &v)
{
  return optimum(v).surplus;
}

inline vcb::Value sigma_surplus(vcb::Profile const &v, vcb::BundleFamily const &sigma)
{
  std::set<Mask> members;
  for (auto b : sigma)
  {
    members.insert(b.mask());
  }
  return optimum(v, [&](Mask b) { return members.count(b) > 0; }).surplus;
}

/// Clarke payment of buyer i for a chosen tuple of buyer bundles.
inline vcb::Value clarke(vcb::Profile const &v, std::size_t i, std::vector<Mask> const &chosen)
{
  vcb::Value others_best = 0;
  for_each_allocation(v.buyers(), v.goods(), [&](std::vector<Mask> const &b) {
    if (b[i] != 0)
    {
      return;
    }
    others_best = std::max(others_best, surplus(v, b));
  });
  return others_best - (surplus(v, chosen) - value(v[i], chosen[i]));
}

inline vcb::Value projected(vcb::Valuation const &v, vcb::BundleFamily const &sigma, Mask b)
{
  vcb::Value best = 0;
  for (auto c : sigma)
  {
    if (subset(c.mask(), b))
    {
      best = std::max(best, value(v, c.mask()));
    }
  }
  return best;
}

/// Closure under complement and disjoint union, straight from the definition.
inline bool quasi_field(std::set<Mask> const &family, std::size_t m)
{
  Mask const full = (Mask{1} << m) - 1;
  for (auto b : family)
  {
    if (!family.count(full & ~b))
    {
      return false;
    }
    for (auto c : family)
    {
      if (disjoint(b, c) && !family.count(b | c))
      {
        return false;
      }
    }
  }
  return true;
}

inline bool field(std::set<Mask> const &family, std::size_t m)
{
  if (!quasi_field(family, m))
  {
    return false;
  }
  for (auto b : family)
  {
    for (auto c : family)
    {
      if (!family.count(b & c))
      {
        return false;
      }
    }
  }
  return true;
}

/// Largest feasible family by plain multiset enumeration (no bounds, no symmetry).
inline std::size_t max_feasible(std::vector<std::size_t> const &caps)
{
  std::size_t const k = caps.size();
  std::vector<Mask> sets;
  for (Mask h = 1; h < (Mask{1} << k); ++h)
  {
    sets.push_back(h);
  }
  std::vector<std::size_t> load(k, 0);
  std::vector<Mask>        chosen;
  std::size_t              best = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    best = std::max(best, chosen.size());
    for (std::size_t p = from; p < sets.size(); ++p)
    {
      Mask const h  = sets[p];
      bool       ok = std::all_of(chosen.begin(), chosen.end(), [&](Mask c) { return !disjoint(c, h); });
      for (std::size_t l = 0; l < k && ok; ++l)
      {
        ok = !((h >> l) & 1U) || load[l] < caps[l];
      }
      if (!ok)
      {
        continue;
      }
      for (std::size_t l = 0; l < k; ++l)
      {
        load[l] += (h >> l) & 1U;
      }
      chosen.push_back(h);
      rec(p);
      chosen.pop_back();
      for (std::size_t l = 0; l < k; ++l)
      {
        load[l] -= (h >> l) & 1U;
      }
    }
  };
  rec(0);
  return best;
}

/// The three plane axioms counted directly over all pairs.
inline bool plane_axioms(std::size_t q, std::vector<std::vector<std::size_t>> const &lines)
{
  std::size_t const n = q * q + q + 1;
  if (lines.size() != n)
  {
    return false;
  }
  std::vector<std::set<std::size_t>> ls;
  for (auto const &l : lines)
  {
    ls.emplace_back(l.begin(), l.end());
    if (ls.back().size() != q + 1)
    {
      return false;
    }
  }
  for (std::size_t p = 1; p <= n; ++p)
  {
    std::size_t on = 0;
    for (auto const &l : ls)
    {
      on += l.count(p);
    }
    if (on != q + 1)
    {
      return false;
    }
    for (std::size_t r = p + 1; r <= n; ++r)
    {
      std::size_t both = 0;
      for (auto const &l : ls)
      {
        both += l.count(p) && l.count(r);
      }
      if (both != 1)
      {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < ls.size(); ++i)
  {
    for (std::size_t j = i + 1; j < ls.size(); ++j)
    {
      std::size_t common = 0;
      for (auto p : ls[i])
      {
        common += ls[j].count(p);
      }
      if (common != 1)
      {
        return false;
      }
    }
  }
  return true;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r)
{
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i)
  {
    out = out * (n - r + i) / i;
  }
  return out;
}

}  // namespace oracle
