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
#include "vcb/sigma.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace vcb {

/// How a VC mechanism picks among surplus-maximizing allocations.
///  canonical:       lexicographically smallest tuple of buyer bundle masks, buyer 1 first.
///  seller_favoring: fewest goods handed out, then canonical.
///  adversarial:     smallest surplus S((t_i, v_-i), gamma) where t_i is the target buyer's
///                   true valuation, then canonical. This is the worst VC mechanism for i.
struct TieBreakRule
{
  enum class Kind
  {
    canonical,
    seller_favoring,
    adversarial
  };

  Kind                     kind{Kind::canonical};
  std::size_t              target{0};
  std::optional<Valuation> target_truth;

  static TieBreakRule canonical()
  {
    return {};
  }
  static TieBreakRule seller_favoring()
  {
    return {Kind::seller_favoring, 0, std::nullopt};
  }
  /// Without an explicit truth the reported valuation of `buyer` is used, which makes the
  /// secondary objective constant over optima.
  static TieBreakRule adversarial_to(std::size_t buyer, std::optional<Valuation> truth = std::nullopt)
  {
    return {Kind::adversarial, buyer, std::move(truth)};
  }
};

struct WinnerDetermination
{
  Allocation allocation;
  Value      surplus;
};

namespace detail {

/// Lexicographic score: maximize primary, then secondary.
struct Score
{
  Value primary{0};
  Value secondary{0};

  friend Score operator+(Score a, Score b)
  {
    return {a.primary + b.primary, a.secondary + b.secondary};
  }
  friend auto operator<=>(Score const &, Score const &) = default;
};

inline constexpr Score kUnreachable{std::numeric_limits<Value>::min() / 4, 0};

/// One buyer's contribution: primary value and tie-break secondary per bundle mask.
struct DenseBuyer
{
  std::vector<Value> primary;
  std::vector<Value> secondary;  ///< empty means all zero
};

/// Exact winner determination by dynamic programming over (buyer suffix, remaining goods).
/// best[i][R] is the best score of buyers i..n-1 using goods inside R. Cost O(n 3^g).
/// `admit`, when non-empty, restricts buyer bundles to masks with admit[mask] set.
/// Reconstruction takes, buyer by buyer, the smallest optimal mask.
inline std::pair<std::vector<std::uint64_t>, Score> subset_dp(std::vector<DenseBuyer> const &buyers,
                                                             std::size_t g, std::vector<bool> const &admit)
{
  std::size_t const n    = buyers.size();
  std::size_t const size = std::size_t{1} << g;
  std::vector<std::vector<Score>> best(n + 1, std::vector<Score>(size));
  auto score_of = [&](std::size_t i, std::uint64_t c) {
    auto const &b = buyers[i];
    return Score{b.primary[c], b.secondary.empty() ? 0 : b.secondary[c]};
  };
  for (std::size_t i = n; i-- > 0;)
  {
    auto const &next = best[i + 1];
    auto       &cur  = best[i];
    for (std::uint64_t r = 0; r < size; ++r)
    {
      Score top = kUnreachable;
      for (std::uint64_t c = r;; c = (c - 1) & r)
      {
        if (admit.empty() || admit[c])
        {
          Score const cand = score_of(i, c) + next[r ^ c];
          if (top < cand)
          {
            top = cand;
          }
        }
        if (c == 0)
        {
          break;
        }
      }
      cur[r] = top;
    }
  }
  std::vector<std::uint64_t> choice(n);
  std::uint64_t              r = size - 1;
  for (std::size_t i = 0; i < n; ++i)
  {
    std::uint64_t pick = r;
    bool          found = false;
    for (std::uint64_t c = r;; c = (c - 1) & r)
    {
      if ((admit.empty() || admit[c]) && score_of(i, c) + best[i + 1][r ^ c] == best[i][r])
      {
        pick  = c;  // descending enumeration: the last match is the smallest mask
        found = true;
      }
      if (c == 0)
      {
        break;
      }
    }
    if (!found)
    {
      throw InvariantViolation("subset DP reconstruction failed");
    }
    choice[i] = pick;
    r ^= pick;
  }
  return {choice, best[0][size - 1]};
}

inline void require_dense_budget(std::size_t m)
{
  if (m > kMaxDenseGoods)
  {
    throw BudgetExceeded("dense winner determination supports m <= 14, got m = " + std::to_string(m));
  }
}

/// Valuation that scores buyer i for the tie-break secondary objective.
inline std::vector<Valuation> secondary_profile(Profile const &reported, TieBreakRule const &tie)
{
  std::vector<Valuation> sec = reported.valuations();
  if (tie.kind == TieBreakRule::Kind::adversarial)
  {
    if (tie.target >= reported.buyers())
    {
      throw InvalidInput("adversarial tie-break target out of range");
    }
    if (tie.target_truth)
    {
      sec[tie.target] = *tie.target_truth;
    }
  }
  return sec;
}

inline std::vector<DenseBuyer> dense_buyers(Profile const &v, TieBreakRule const &tie)
{
  std::size_t const       m = v.goods();
  std::size_t const       size = std::size_t{1} << m;
  auto const              sec  = secondary_profile(v, tie);
  std::vector<DenseBuyer> out;
  for (std::size_t i = 0; i < v.buyers(); ++i)
  {
    DenseBuyer b;
    auto const d = v[i].to_dense();
    b.primary.assign(d.table().begin(), d.table().end());
    if (tie.kind == TieBreakRule::Kind::seller_favoring)
    {
      b.secondary.resize(size);
      for (std::size_t c = 0; c < size; ++c)
      {
        b.secondary[c] = -static_cast<Value>(Bundle(c).size());
      }
    }
    else if (tie.kind == TieBreakRule::Kind::adversarial)
    {
      auto const s = sec[i].to_dense();
      b.secondary.resize(size);
      for (std::size_t c = 0; c < size; ++c)
      {
        b.secondary[c] = -s.table()[c];
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

struct OwnedAtom
{
  std::size_t owner;
  Bundle      bundle;
  Value       weight;
};

/// Total atom count the sparse branch-and-bound accepts.
inline constexpr std::size_t kMaxSparseAtoms = 64;
/// Cap on the number of optimal packings enumerated for tie-breaking.
inline constexpr std::size_t kMaxOptimalPackings = std::size_t{1} << 18;

inline std::vector<OwnedAtom> collect_atoms(Profile const &v)
{
  std::vector<OwnedAtom> atoms;
  for (std::size_t i = 0; i < v.buyers(); ++i)
  {
    for (auto const &a : v[i].atom_list())
    {
      if (a.weight > 0)
      {
        atoms.push_back({i, a.bundle, a.weight});
      }
    }
  }
  if (atoms.size() > kMaxSparseAtoms)
  {
    throw BudgetExceeded("sparse winner determination supports at most 64 atoms");
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](OwnedAtom const &a, OwnedAtom const &b) {
    return std::tie(b.weight, a.owner, a.bundle) < std::tie(a.weight, b.owner, b.bundle);
  });
  return atoms;
}

/// Weighted set packing over all buyers' atoms. suffix[i] is the admissible bound.
class Packing
{
public:
  explicit Packing(std::vector<OwnedAtom> atoms)
    : atoms_(std::move(atoms))
    , suffix_(atoms_.size() + 1, 0)
  {
    for (std::size_t i = atoms_.size(); i-- > 0;)
    {
      suffix_[i] = suffix_[i + 1] + atoms_[i].weight;
    }
  }

  Value maximum()
  {
    best_ = 0;
    search(0, Bundle{}, 0);
    return best_;
  }

  /// Every packing reaching `target`, as per-buyer unions of chosen atoms.
  std::vector<std::vector<Bundle>> optimal(Value target, std::size_t buyers)
  {
    std::vector<std::vector<Bundle>> out;
    std::vector<Bundle>              cur(buyers);
    enumerate(0, Bundle{}, 0, target, cur, out);
    return out;
  }

private:
  void search(std::size_t i, Bundle used, Value value)
  {
    if (value > best_)
    {
      best_ = value;
    }
    if (i == atoms_.size() || value + suffix_[i] <= best_)
    {
      return;
    }
    if (atoms_[i].bundle.disjoint(used))
    {
      search(i + 1, used | atoms_[i].bundle, value + atoms_[i].weight);
    }
    search(i + 1, used, value);
  }

  void enumerate(std::size_t i, Bundle used, Value value, Value target, std::vector<Bundle> &cur,
                 std::vector<std::vector<Bundle>> &out)
  {
    if (value + suffix_[i] < target)
    {
      return;
    }
    if (i == atoms_.size())
    {
      if (value == target)
      {
        if (out.size() >= kMaxOptimalPackings)
        {
          throw BudgetExceeded("too many optimal allocations to tie-break");
        }
        out.push_back(cur);
      }
      return;
    }
    auto const &a = atoms_[i];
    if (a.bundle.disjoint(used))
    {
      Bundle const prev = cur[a.owner];
      cur[a.owner]      = prev | a.bundle;
      enumerate(i + 1, used | a.bundle, value + a.weight, target, cur, out);
      cur[a.owner] = prev;
    }
    enumerate(i + 1, used, value, target, cur, out);
  }

  std::vector<OwnedAtom> atoms_;
  std::vector<Value>     suffix_;
  Value                  best_{0};
};

inline bool use_sparse(Profile const &v)
{
  if (!v.all_atoms())
  {
    return false;
  }
  std::size_t count = 0;
  for (auto const &vi : v.valuations())
  {
    count += vi.atom_list().size();
  }
  return count <= kMaxSparseAtoms;
}

inline std::vector<std::uint64_t> masks_of(std::vector<Bundle> const &bs)
{
  std::vector<std::uint64_t> out;
  for (auto b : bs)
  {
    out.push_back(b.mask());
  }
  return out;
}

inline WinnerDetermination sparse_allocation(Profile const &v, TieBreakRule const &tie)
{
  std::size_t const m = v.goods();
  Packing           packing(collect_atoms(v));
  Value const       top = packing.maximum();
  auto const        all = packing.optimal(top, v.buyers());
  auto const        sec = secondary_profile(v, tie);

  auto key = [&](std::vector<Bundle> const &alloc) {
    Value extra = 0;
    if (tie.kind == TieBreakRule::Kind::seller_favoring)
    {
      for (auto b : alloc)
      {
        extra += static_cast<Value>(b.size());
      }
    }
    else if (tie.kind == TieBreakRule::Kind::adversarial)
    {
      for (std::size_t j = 0; j < alloc.size(); ++j)
      {
        extra += sec[j](alloc[j]);
      }
    }
    return std::make_pair(extra, masks_of(alloc));
  };
  std::size_t pick     = 0;
  auto        pick_key = key(all.front());
  for (std::size_t k = 1; k < all.size(); ++k)
  {
    auto candidate = key(all[k]);
    if (candidate < pick_key)
    {
      pick_key = std::move(candidate);
      pick     = k;
    }
  }
  return {Allocation::with_remainder(m, all[pick]), top};
}

}  // namespace detail

/// S_max(v) without building an allocation.
inline Value max_surplus(Profile const &v)
{
  if (detail::use_sparse(v))
  {
    detail::Packing p(detail::collect_atoms(v));
    return p.maximum();
  }
  detail::require_dense_budget(v.goods());
  auto const buyers = detail::dense_buyers(v, TieBreakRule::canonical());
  return detail::subset_dp(buyers, v.goods(), {}).second.primary;
}

/// A surplus-maximizing allocation chosen by `tie`, with S_max.
/// All-atom profiles (<= 64 atoms) use branch-and-bound set packing for any m;
/// anything else uses the subset DP and needs m <= 14.
inline WinnerDetermination optimal_allocation(Profile const &v, TieBreakRule const &tie = TieBreakRule::canonical())
{
  if (detail::use_sparse(v))
  {
    return detail::sparse_allocation(v, tie);
  }
  detail::require_dense_budget(v.goods());
  auto const [choice, score] = detail::subset_dp(detail::dense_buyers(v, tie), v.goods(), {});
  std::vector<Bundle> bundles;
  for (auto c : choice)
  {
    bundles.emplace_back(c);
  }
  return {Allocation::with_remainder(v.goods(), std::move(bundles)), score.primary};
}

/// S_pi(v): winner determination over the k meta-goods of the partition.
inline WinnerDetermination partition_optimal_surplus(Profile const &v, Partition const &pi)
{
  std::size_t const k = pi.size();
  if (pi.goods() != v.goods())
  {
    throw InvalidInput("partition and profile disagree on the number of goods");
  }
  if (k > kMaxDenseGoods)
  {
    throw BudgetExceeded("partition surplus supports at most 14 parts");
  }
  std::size_t const               size = std::size_t{1} << k;
  std::vector<Bundle>             unions(size);
  for (std::uint64_t idx = 0; idx < size; ++idx)
  {
    unions[idx] = pi.union_of(idx);
  }
  std::vector<detail::DenseBuyer> buyers;
  for (auto const &vi : v.valuations())
  {
    detail::DenseBuyer b;
    b.primary.resize(size);
    for (std::uint64_t idx = 0; idx < size; ++idx)
    {
      b.primary[idx] = vi(unions[idx]);
    }
    buyers.push_back(std::move(b));
  }
  auto const [choice, score] = detail::subset_dp(buyers, k, {});
  std::vector<Bundle> bundles;
  for (auto c : choice)
  {
    bundles.push_back(unions[c]);
  }
  return {Allocation::with_remainder(v.goods(), std::move(bundles)), score.primary};
}

namespace detail {

/// S_Sigma for profiles where every buyer is a scaled unanimity valuation: each buyer is
/// served by some minimal member of Sigma containing its atom, or not at all.
class CandidatePacking
{
public:
  CandidatePacking(Profile const &v, BundleFamily const &sigma)
    : chosen_(v.buyers())
    , best_choice_(v.buyers())
  {
    for (std::size_t i = 0; i < v.buyers(); ++i)
    {
      auto const atom = *v[i].single_atom();
      if (atom.weight == 0)
      {
        continue;
      }
      Entry e{i, atom.weight, {}};
      for (auto c : sigma)
      {
        if (atom.bundle.subset_of(c))
        {
          e.candidates.push_back(c);
        }
      }
      // Any non-minimal candidate contains a minimal one, so testing against the minimal
      // members found so far (in size order) is enough.
      std::stable_sort(e.candidates.begin(), e.candidates.end(),
                       [](Bundle a, Bundle b) { return a.size() < b.size(); });
      std::vector<Bundle> minimal;
      for (auto c : e.candidates)
      {
        if (std::none_of(minimal.begin(), minimal.end(), [c](Bundle d) { return d.subset_of(c); }))
        {
          minimal.push_back(c);
        }
      }
      e.candidates = std::move(minimal);
      if (!e.candidates.empty())
      {
        entries_.push_back(std::move(e));
      }
    }
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](Entry const &a, Entry const &b) { return a.weight > b.weight; });
    suffix_.assign(entries_.size() + 1, 0);
    for (std::size_t i = entries_.size(); i-- > 0;)
    {
      suffix_[i] = suffix_[i + 1] + entries_[i].weight;
    }
  }

  Value solve()
  {
    search(0, Bundle{}, 0);
    return best_;
  }

  std::vector<Bundle> const &allocation() const
  {
    return best_choice_;
  }

private:
  struct Entry
  {
    std::size_t         buyer;
    Value               weight;
    std::vector<Bundle> candidates;
  };

  void search(std::size_t i, Bundle used, Value value)
  {
    if (value > best_)
    {
      best_        = value;
      best_choice_ = chosen_;
    }
    if (i == entries_.size() || value + suffix_[i] <= best_ || best_ == suffix_[0])
    {
      return;
    }
    auto const &e = entries_[i];
    for (auto c : e.candidates)
    {
      if (c.disjoint(used))
      {
        chosen_[e.buyer] = c;
        search(i + 1, used | c, value + e.weight);
        chosen_[e.buyer] = Bundle{};
      }
    }
    search(i + 1, used, value);
  }

  std::vector<Entry>  entries_;
  std::vector<Value>  suffix_;
  std::vector<Bundle> chosen_;
  std::vector<Bundle> best_choice_;
  Value               best_{0};
};

inline bool all_single_atoms(Profile const &v)
{
  return std::all_of(v.valuations().begin(), v.valuations().end(),
                     [](Valuation const &vi) { return vi.single_atom().has_value(); });
}

}  // namespace detail

/// S_Sigma(v) = max surplus over allocations whose buyer bundles all lie in Sigma (the seller
/// keeps the rest). Routes: 2^A -> unrestricted; field of a partition -> meta-goods DP;
/// unanimity-only profiles -> candidate packing; otherwise restricted subset DP (m <= 14).
/// The returned allocation is deterministic but not tie-broken by a TieBreakRule.
///
/// Holds the family analysis so repeated evaluation over a sweep stays cheap.
class SigmaSurplus
{
public:
  explicit SigmaSurplus(BundleFamily sigma)
    : sigma_(std::move(sigma))
    , power_set_(sigma_.goods() < 62 && sigma_.size() == (std::size_t{1} << sigma_.goods()))
    , partition_(power_set_ ? std::nullopt : as_partition_field(sigma_))
  {
    if (partition_ && partition_->size() > kMaxDenseGoods)
    {
      partition_.reset();
    }
    if (!power_set_ && !partition_ && sigma_.goods() <= kMaxDenseGoods)
    {
      admit_.assign(std::size_t{1} << sigma_.goods(), false);
      for (auto b : sigma_)
      {
        admit_[b.mask()] = true;
      }
    }
  }

  BundleFamily const &family() const noexcept
  {
    return sigma_;
  }

  WinnerDetermination allocate(Profile const &v) const
  {
    if (sigma_.goods() != v.goods())
    {
      throw InvalidInput("family and profile disagree on the number of goods");
    }
    if (power_set_)
    {
      return optimal_allocation(v);
    }
    if (partition_)
    {
      return partition_optimal_surplus(v, *partition_);
    }
    if (detail::all_single_atoms(v))
    {
      detail::CandidatePacking packing(v, sigma_);
      Value const              s = packing.solve();
      return {Allocation::with_remainder(v.goods(), packing.allocation()), s};
    }
    detail::require_dense_budget(v.goods());
    auto const [choice, score] =
        detail::subset_dp(detail::dense_buyers(v, TieBreakRule::canonical()), v.goods(), admit_);
    std::vector<Bundle> bundles;
    for (auto c : choice)
    {
      bundles.emplace_back(c);
    }
    return {Allocation::with_remainder(v.goods(), std::move(bundles)), score.primary};
  }

  Value operator()(Profile const &v) const
  {
    if (power_set_)
    {
      return max_surplus(v);
    }
    return allocate(v).surplus;
  }

private:
  BundleFamily              sigma_;
  bool                      power_set_;
  std::optional<Partition>  partition_;
  std::vector<bool>         admit_;
};

inline WinnerDetermination sigma_optimal_surplus(Profile const &v, BundleFamily const &sigma)
{
  return SigmaSurplus(sigma).allocate(v);
}

/// g_i(v_-i): best surplus of the other buyers alone.
inline Value others_max_surplus(Profile const &v, std::size_t i)
{
  auto const rest = v.without(i);
  return rest ? max_surplus(*rest) : 0;
}

/// Clarke payment c_i = g_i(v_-i) - sum over j != i of v_j(d_j(v)).
inline Value clarke_payment(Profile const &reported, std::size_t i, Allocation const &chosen)
{
  Value others = 0;
  for (std::size_t j = 0; j < reported.buyers(); ++j)
  {
    if (j != i)
    {
      others += reported[j](chosen[j]);
    }
  }
  Value const c = others_max_surplus(reported, i) - others;
  if (c < 0)
  {
    throw InvariantViolation("negative Clarke payment; allocation is not surplus-maximizing");
  }
  return c;
}

inline Value clarke_payment(Profile const &reported, std::size_t i, TieBreakRule const &tie = TieBreakRule::canonical())
{
  if (i >= reported.buyers())
  {
    throw InvalidInput("buyer index out of range");
  }
  return clarke_payment(reported, i, optimal_allocation(reported, tie).allocation);
}

struct AuctionOutcome
{
  Allocation         allocation;
  std::vector<Value> payments;
  Value              surplus;  ///< S(v, d(v')) against the true valuations when given
  Value              revenue;
  std::vector<Value> utilities;
};

/// One run of the VC mechanism on reported valuations. Utilities and surplus are measured
/// against `truth` when supplied; an adversarial tie-break without an explicit target
/// valuation takes the target's true valuation from `truth`.
inline AuctionOutcome run_vc(Profile const &reported, TieBreakRule tie = TieBreakRule::canonical(),
                             std::optional<Profile> const &truth = std::nullopt)
{
  if (truth && (truth->buyers() != reported.buyers() || truth->goods() != reported.goods()))
  {
    throw InvalidInput("true and reported profiles differ in shape");
  }
  if (tie.kind == TieBreakRule::Kind::adversarial && !tie.target_truth && truth)
  {
    if (tie.target >= truth->buyers())
    {
      throw InvalidInput("adversarial tie-break target out of range");
    }
    tie.target_truth = (*truth)[tie.target];
  }
  Profile const &measure = truth ? *truth : reported;
  auto const     wd      = optimal_allocation(reported, tie);
  AuctionOutcome out{wd.allocation, {}, surplus(measure, wd.allocation), 0, {}};
  for (std::size_t i = 0; i < reported.buyers(); ++i)
  {
    Value const c = clarke_payment(reported, i, wd.allocation);
    out.payments.push_back(c);
    out.revenue += c;
    out.utilities.push_back(measure[i](wd.allocation[i]) - c);
  }
  if (!truth && !(out.revenue <= out.surplus && out.surplus == wd.surplus))
  {
    throw InvariantViolation("revenue <= surplus = S_max failed on a truthful run");
  }
  return out;
}

}  // namespace vcb
