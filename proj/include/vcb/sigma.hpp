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

#include "vcb/core.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace vcb {

/// A family Sigma of bundles over a universe; always contains the empty bundle.
/// Bundles are kept sorted in canonical (mask) order without duplicates.
class BundleFamily
{
public:
  BundleFamily(GoodsUniverse universe, std::vector<Bundle> bundles)
    : universe_(std::move(universe))
    , bundles_(std::move(bundles))
  {
    std::sort(bundles_.begin(), bundles_.end());
    bundles_.erase(std::unique(bundles_.begin(), bundles_.end()), bundles_.end());
    for (auto b : bundles_)
    {
      if (!universe_.contains(b))
      {
        throw InvalidInput("family bundle outside the goods universe");
      }
    }
    if (bundles_.empty() || !bundles_.front().empty())
    {
      throw InvalidInput("a bundle family must contain the empty bundle");
    }
    if (universe_.size() <= kBitmapGoods)
    {
      member_.assign(std::size_t{1} << universe_.size(), false);
      for (auto b : bundles_)
      {
        member_[b.mask()] = true;
      }
    }
  }

  /// 2^A.
  static BundleFamily power_set(GoodsUniverse const &u)
  {
    if (u.size() > kMaxDenseGoods)
    {
      throw BudgetExceeded("power set too large to materialize");
    }
    std::vector<Bundle> all;
    for (Bundle::Mask mask = 0; mask <= u.full().mask(); ++mask)
    {
      all.emplace_back(mask);
    }
    return BundleFamily(u, std::move(all));
  }

  GoodsUniverse const &universe() const noexcept
  {
    return universe_;
  }
  std::size_t goods() const noexcept
  {
    return universe_.size();
  }
  std::size_t size() const noexcept
  {
    return bundles_.size();
  }
  std::vector<Bundle> const &bundles() const noexcept
  {
    return bundles_;
  }
  auto begin() const noexcept
  {
    return bundles_.begin();
  }
  auto end() const noexcept
  {
    return bundles_.end();
  }

  bool contains(Bundle b) const
  {
    if (!member_.empty())
    {
      return b.mask() < member_.size() && member_[b.mask()];
    }
    return std::binary_search(bundles_.begin(), bundles_.end(), b);
  }

  friend bool operator==(BundleFamily const &a, BundleFamily const &b)
  {
    return a.universe_ == b.universe_ && a.bundles_ == b.bundles_;
  }

private:
  static constexpr std::size_t kBitmapGoods = 16;

  GoodsUniverse       universe_;
  std::vector<Bundle> bundles_;
  std::vector<bool>   member_;
};

/// Why a family fails to be a quasi field.
struct FamilyViolation
{
  enum class Kind
  {
    missing_complement,      ///< first in Sigma, its complement is not
    missing_disjoint_union,  ///< first and second in Sigma and disjoint, their union is not
  };

  Kind   kind;
  Bundle first;
  Bundle second;

  friend bool operator==(FamilyViolation const &, FamilyViolation const &) = default;
};

struct FamilyClassification
{
  bool                           is_quasi_field{false};
  bool                           is_field{false};
  std::optional<FamilyViolation> witness;
};

/// Quasi field: closed under complement and under unions of disjoint members. Field: also
/// closed under intersections (hence under all unions). The witness is the first failure in
/// canonical order, complements checked before disjoint pairs.
inline FamilyClassification is_quasi_field(BundleFamily const &sigma)
{
  FamilyClassification out;
  std::size_t const    m = sigma.goods();
  for (auto b : sigma)
  {
    if (!sigma.contains(b.complement(m)))
    {
      out.witness = FamilyViolation{FamilyViolation::Kind::missing_complement, b, b.complement(m)};
      return out;
    }
  }
  auto const &bs = sigma.bundles();
  for (std::size_t i = 0; i < bs.size(); ++i)
  {
    for (std::size_t j = i + 1; j < bs.size(); ++j)
    {
      if (bs[i].disjoint(bs[j]) && !sigma.contains(bs[i] | bs[j]))
      {
        out.witness = FamilyViolation{FamilyViolation::Kind::missing_disjoint_union, bs[i], bs[j]};
        return out;
      }
    }
  }
  out.is_quasi_field = true;
  out.is_field       = true;
  for (std::size_t i = 0; i < bs.size() && out.is_field; ++i)
  {
    for (std::size_t j = i + 1; j < bs.size(); ++j)
    {
      if (!sigma.contains(bs[i] & bs[j]))
      {
        out.is_field = false;
        break;
      }
    }
  }
  return out;
}

/// Sigma_pi: all 2^k unions of parts.
inline BundleFamily field_of_partition(GoodsUniverse const &u, Partition const &pi)
{
  if (pi.goods() != u.size())
  {
    throw InvalidInput("partition and universe disagree on the number of goods");
  }
  if (pi.size() > 24)
  {
    throw BudgetExceeded("field of a partition with more than 24 parts");
  }
  std::vector<Bundle> out;
  out.reserve(std::size_t{1} << pi.size());
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << pi.size()); ++idx)
  {
    out.push_back(pi.union_of(idx));
  }
  return BundleFamily(u, std::move(out));
}

/// If Sigma is the field generated by some partition, that partition (parts in canonical
/// order of their masks).
inline std::optional<Partition> as_partition_field(BundleFamily const &sigma)
{
  std::size_t const m = sigma.goods();
  // The atoms of a finite field are its minimal nonempty members.
  std::vector<Bundle> atoms;
  for (auto b : sigma)
  {
    if (b.empty())
    {
      continue;
    }
    bool minimal = true;
    for (auto c : sigma)
    {
      if (!c.empty() && c != b && c.subset_of(b))
      {
        minimal = false;
        break;
      }
    }
    if (minimal)
    {
      atoms.push_back(b);
    }
  }
  Bundle seen;
  for (auto a : atoms)
  {
    if (!a.disjoint(seen))
    {
      return std::nullopt;
    }
    seen = seen | a;
  }
  if (seen != Bundle::full(m) || atoms.size() >= 63 || sigma.size() != (std::size_t{1} << atoms.size()))
  {
    return std::nullopt;
  }
  Partition pi(m, atoms);
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << atoms.size()); ++idx)
  {
    if (!sigma.contains(pi.union_of(idx)))
    {
      return std::nullopt;
    }
  }
  return pi;
}

/// Smallest member of a field Sigma_pi that contains b.
inline Bundle partition_closure(Partition const &pi, Bundle b)
{
  return pi.union_of(pi.touched(b));
}

/// Largest member of Sigma_pi inside b.
inline Bundle partition_interior(Partition const &pi, Bundle b)
{
  Bundle out;
  for (auto p : pi.parts())
  {
    if (p.subset_of(b))
    {
      out = out | p;
    }
  }
  return out;
}

/// v^Sigma on the field of a partition. Dense stays dense; a scaled unanimity valuation w*w_B
/// maps to w*w_{closure(B)}, which keeps large universes sparse.
inline Valuation project_valuation(Valuation const &v, Partition const &pi)
{
  std::size_t const m = v.goods();
  if (auto atom = v.single_atom())
  {
    if (atom->weight == 0)
    {
      return Valuation::zero(m);
    }
    return unanimity_valuation(m, partition_closure(pi, atom->bundle), atom->weight);
  }
  if (m > kMaxDenseGoods)
  {
    throw BudgetExceeded("projection of a multi-atom valuation needs m <= 14");
  }
  Valuation const    d = v.to_dense();
  std::vector<Value> out(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < out.size(); ++mask)
  {
    out[mask] = d(partition_interior(pi, Bundle(mask)));
  }
  return Valuation::dense(m, std::move(out));
}

/// v^Sigma(B) = max over C in Sigma with C inside B of v(C).
inline Valuation project_valuation(Valuation const &v, BundleFamily const &sigma)
{
  std::size_t const m = v.goods();
  if (m != sigma.goods())
  {
    throw InvalidInput("valuation and family disagree on the number of goods");
  }
  if (m > kMaxDenseGoods)
  {
    if (auto pi = as_partition_field(sigma))
    {
      return project_valuation(v, *pi);
    }
    throw BudgetExceeded("projection onto a non-partition family needs m <= 14");
  }
  Valuation const    d = v.to_dense();
  std::vector<Value> t(std::size_t{1} << m, 0);
  for (auto b : sigma)
  {
    t[b.mask()] = d(b);
  }
  // superset-max transform
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

inline Profile project_profile(Profile const &v, BundleFamily const &sigma)
{
  std::vector<Valuation> out;
  for (auto const &vi : v.valuations())
  {
    out.push_back(project_valuation(vi, sigma));
  }
  return Profile(v.universe(), std::move(out));
}

inline Profile project_profile(Profile const &v, Partition const &pi)
{
  std::vector<Valuation> out;
  for (auto const &vi : v.valuations())
  {
    out.push_back(project_valuation(vi, pi));
  }
  return Profile(v.universe(), std::move(out));
}

/// A profile on which f^Sigma is not an equilibrium in some VC mechanism.
struct EquilibriumWitness
{
  FamilyViolation cause;
  Profile         profile;     ///< true valuations, all unit unanimity
  std::size_t     deviator;    ///< 0-based; always buyer 0
  Allocation      allocation;  ///< a surplus-maximizing choice for the projected reports
};

/// The constructions from the only-if direction of the characterization:
///  complement of B missing    -> (w_{B^c}, w_B), buyer 1 empty, B to buyer 2;
///  union of disjoint B, C missing -> (w_{(B u C)^c}, w_B, w_C), B and C to buyers 2 and 3.
/// Under the returned allocation the deviator's utility from reporting v^Sigma is 0,
/// while reporting the truth yields 1.
inline EquilibriumWitness quasi_field_counterexample(BundleFamily const &sigma)
{
  auto const cls = is_quasi_field(sigma);
  if (cls.is_quasi_field)
  {
    throw InvalidInput("family is a quasi field; no counterexample exists");
  }
  auto const        w = *cls.witness;
  std::size_t const m = sigma.goods();
  if (w.kind == FamilyViolation::Kind::missing_complement)
  {
    Bundle const b = w.first;
    Profile      p(sigma.universe(), {unanimity_valuation(m, b.complement(m)), unanimity_valuation(m, b)});
    return EquilibriumWitness{w, std::move(p), 0, Allocation::with_remainder(m, {Bundle{}, b})};
  }
  Bundle const b    = w.first;
  Bundle const c    = w.second;
  Bundle const rest = (b | c).complement(m);
  Profile      p(sigma.universe(),
                 {unanimity_valuation(m, rest), unanimity_valuation(m, b), unanimity_valuation(m, c)});
  return EquilibriumWitness{w, std::move(p), 0, Allocation::with_remainder(m, {Bundle{}, b, c})};
}

/// Smallest quasi field containing F: close under complements and disjoint unions until fixed.
inline BundleFamily quasi_field_closure(BundleFamily const &f)
{
  std::size_t const   m = f.goods();
  std::vector<Bundle> members(f.begin(), f.end());
  std::unordered_set<Bundle, BundleHash> in(members.begin(), members.end());
  auto add = [&](Bundle b) {
    if (in.insert(b).second)
    {
      members.push_back(b);
      return true;
    }
    return false;
  };
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (std::size_t i = 0; i < members.size(); ++i)
    {
      changed |= add(members[i].complement(m));
    }
    for (std::size_t i = 0; i < members.size(); ++i)
    {
      for (std::size_t j = i + 1; j < members.size(); ++j)
      {
        if (members[i].disjoint(members[j]))
        {
          changed |= add(members[i] | members[j]);
        }
      }
    }
  }
  return BundleFamily(f.universe(), std::move(members));
}

/// Every quasi field over u, for m <= 6. Families are 64-bit membership maps; each quasi field
/// is reached from {empty, A} by repeatedly adding one bundle and closing. Output is sorted by
/// membership map.
inline std::vector<BundleFamily> all_quasi_fields(GoodsUniverse const &u)
{
  std::size_t const m = u.size();
  if (m > 6)
  {
    throw BudgetExceeded("quasi field enumeration needs m <= 6");
  }
  std::uint64_t const full = (std::uint64_t{1} << m) - 1;
  auto close = [&](std::uint64_t f) {
    for (bool changed = true; changed;)
    {
      changed = false;
      for (std::uint64_t b = 0; b <= full; ++b)
      {
        if (!((f >> b) & 1U))
        {
          continue;
        }
        std::uint64_t grown = f | std::uint64_t{1} << (full ^ b);
        for (std::uint64_t c = b + 1; c <= full; ++c)
        {
          if (((f >> c) & 1U) && (b & c) == 0)
          {
            grown |= std::uint64_t{1} << (b | c);
          }
        }
        changed |= grown != f;
        f = grown;
      }
    }
    return f;
  };
  std::set<std::uint64_t>    seen{close(1)};
  std::vector<std::uint64_t> stack(seen.begin(), seen.end());
  while (!stack.empty())
  {
    std::uint64_t const f = stack.back();
    stack.pop_back();
    for (std::uint64_t b = 1; b < full; ++b)
    {
      if (!((f >> b) & 1U))
      {
        std::uint64_t const g = close(f | std::uint64_t{1} << b);
        if (seen.insert(g).second)
        {
          stack.push_back(g);
        }
      }
    }
  }
  std::vector<BundleFamily> out;
  out.reserve(seen.size());
  for (auto f : seen)
  {
    std::vector<Bundle> bs;
    for (std::uint64_t b = 0; b <= full; ++b)
    {
      if ((f >> b) & 1U)
      {
        bs.emplace_back(b);
      }
    }
    out.emplace_back(u, std::move(bs));
  }
  return out;
}

}  // namespace vcb
