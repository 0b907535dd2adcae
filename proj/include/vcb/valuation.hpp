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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace vcb {

/// Valuations are integers; callers that start from decimals scale by a common
/// denominator first (see io.hpp). All surplus comparisons are exact.
using Value = std::int64_t;

/// Dense tables hold 2^m entries, so they are only built for small universes.
inline constexpr std::size_t kMaxDenseGoods = 14;

struct Atom
{
  Bundle bundle;
  Value  weight{0};

  friend bool operator==(Atom const &, Atom const &) = default;
};

/// Monotone set function v : 2^A -> Z>=0 with v(empty) = 0.
///
/// Two representations:
///  - dense: one entry per bundle, indexed by mask (m <= kMaxDenseGoods);
///  - atoms: v(C) is the largest total weight of pairwise-disjoint atoms inside C.
///    A single atom (B, w) is the scaled unanimity valuation w * w_B.
///
/// Construction only checks shape; use validate_valuation() for the economic invariants.
class Valuation
{
public:
  static Valuation dense(std::size_t m, std::vector<Value> table)
  {
    if (m == 0 || m > kMaxDenseGoods)
    {
      throw BudgetExceeded("dense valuations support 1..14 goods, got " + std::to_string(m));
    }
    if (table.size() != (std::size_t{1} << m))
    {
      throw InvalidInput("dense valuation table must have 2^m entries");
    }
    Valuation v;
    v.m_   = m;
    v.rep_ = std::move(table);
    return v;
  }

  static Valuation atoms(std::size_t m, std::vector<Atom> atoms)
  {
    if (m == 0 || m > kMaxGoods)
    {
      throw InvalidInput("atom valuation needs 1..64 goods");
    }
    for (auto const &a : atoms)
    {
      if (!a.bundle.subset_of(Bundle::full(m)))
      {
        throw InvalidInput("atom bundle outside the goods universe");
      }
    }
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](Atom const &a, Atom const &b) { return a.bundle < b.bundle; });
    Valuation v;
    v.m_   = m;
    v.rep_ = std::move(atoms);
    return v;
  }

  static Valuation zero(std::size_t m)
  {
    return atoms(m, {});
  }

  std::size_t goods() const noexcept
  {
    return m_;
  }
  bool is_dense() const noexcept
  {
    return std::holds_alternative<std::vector<Value>>(rep_);
  }
  std::span<Value const> table() const
  {
    return std::get<std::vector<Value>>(rep_);
  }
  std::span<Atom const> atom_list() const
  {
    return std::get<std::vector<Atom>>(rep_);
  }

  /// The single atom of a (scaled) unanimity valuation, if that is what this is.
  std::optional<Atom> single_atom() const
  {
    if (is_dense())
    {
      return std::nullopt;
    }
    auto const &a = std::get<std::vector<Atom>>(rep_);
    std::optional<Atom> out;
    for (auto const &atom : a)
    {
      if (atom.weight == 0)
      {
        continue;
      }
      if (out)
      {
        return std::nullopt;
      }
      out = atom;
    }
    return out ? out : Atom{Bundle{}, 0};
  }

  Value operator()(Bundle b) const
  {
    if (auto const *t = std::get_if<std::vector<Value>>(&rep_))
    {
      return (*t)[b.mask()];
    }
    auto const &a = std::get<std::vector<Atom>>(rep_);
    if (a.size() == 1)
    {
      return a.front().bundle.subset_of(b) ? a.front().weight : 0;
    }
    std::vector<Atom const *> inside;
    for (auto const &atom : a)
    {
      if (atom.bundle.subset_of(b) && atom.weight > 0)
      {
        inside.push_back(&atom);
      }
    }
    return pack(inside, 0, Bundle{});
  }

  Valuation to_dense() const
  {
    if (is_dense())
    {
      return *this;
    }
    if (m_ > kMaxDenseGoods)
    {
      throw BudgetExceeded("cannot densify a valuation over " + std::to_string(m_) + " goods");
    }
    std::vector<Value> table(std::size_t{1} << m_);
    for (std::size_t mask = 0; mask < table.size(); ++mask)
    {
      table[mask] = (*this)(Bundle(mask));
    }
    return dense(m_, std::move(table));
  }

  /// Every bundle value scaled by a positive integer factor.
  Valuation scaled(Value factor) const
  {
    if (auto const *t = std::get_if<std::vector<Value>>(&rep_))
    {
      std::vector<Value> out(*t);
      for (auto &x : out)
      {
        x *= factor;
      }
      return dense(m_, std::move(out));
    }
    std::vector<Atom> out(std::get<std::vector<Atom>>(rep_));
    for (auto &a : out)
    {
      a.weight *= factor;
    }
    return atoms(m_, std::move(out));
  }

private:
  Valuation() = default;

  static Value pack(std::vector<Atom const *> const &atoms, std::size_t i, Bundle used)
  {
    if (i == atoms.size())
    {
      return 0;
    }
    Value best = pack(atoms, i + 1, used);
    if (atoms[i]->bundle.disjoint(used))
    {
      best = std::max(best, atoms[i]->weight + pack(atoms, i + 1, used | atoms[i]->bundle));
    }
    return best;
  }

  std::size_t                                    m_{0};
  std::variant<std::vector<Value>, std::vector<Atom>> rep_;
};

/// Scaled unanimity valuation: weight on every superset of B, zero elsewhere; zero for B empty.
inline Valuation unanimity_valuation(std::size_t m, Bundle b, Value weight = 1)
{
  if (weight < 0)
  {
    throw InvalidInput("unanimity weight must be nonnegative");
  }
  if (b.empty() || weight == 0)
  {
    return Valuation::zero(m);
  }
  return Valuation::atoms(m, {Atom{b, weight}});
}

inline Value eval(Valuation const &v, Bundle b)
{
  return v(b);
}

struct ValuationReport
{
  enum class Kind
  {
    ok,
    normalization,
    monotonicity,
    nonnegativity
  };

  Kind   kind{Kind::ok};
  Bundle smaller;  ///< B in the witness pair (B, C)
  Bundle larger;   ///< C; equals B for pointwise violations

  bool ok() const noexcept
  {
    return kind == Kind::ok;
  }

  std::string describe(GoodsUniverse const &u) const
  {
    switch (kind)
    {
    case Kind::ok:
      return "ok";
    case Kind::normalization:
      return "v(empty) must be 0";
    case Kind::monotonicity:
      return "free disposal violated: v('" + u.format(smaller) + "') > v('" + u.format(larger) + "')";
    case Kind::nonnegativity:
      return "negative value at '" + u.format(smaller) + "'";
    }
    return "unknown";
  }
};

/// First violated invariant in the order normalization, monotonicity, nonnegativity.
/// Monotonicity witnesses are (B, B + g) chains, the lexicographically first by (B, g).
inline ValuationReport validate_valuation(Valuation const &v)
{
  using Kind = ValuationReport::Kind;
  if (!v.is_dense())
  {
    for (auto const &a : v.atom_list())
    {
      if (a.bundle.empty() && a.weight != 0)
      {
        return {Kind::normalization, Bundle{}, Bundle{}};
      }
    }
    for (auto const &a : v.atom_list())
    {
      if (a.weight < 0)
      {
        return {Kind::nonnegativity, a.bundle, a.bundle};
      }
    }
    return {};
  }
  auto const        t = v.table();
  std::size_t const m = v.goods();
  if (t[0] != 0)
  {
    return {Kind::normalization, Bundle{}, Bundle{}};
  }
  for (std::size_t mask = 0; mask < t.size(); ++mask)
  {
    for (std::size_t g = 0; g < m; ++g)
    {
      std::size_t const up = mask | (std::size_t{1} << g);
      if (up != mask && t[mask] > t[up])
      {
        return {Kind::monotonicity, Bundle(mask), Bundle(up)};
      }
    }
  }
  for (std::size_t mask = 0; mask < t.size(); ++mask)
  {
    if (t[mask] < 0)
    {
      return {Kind::nonnegativity, Bundle(mask), Bundle(mask)};
    }
  }
  return {};
}

}  // namespace vcb
