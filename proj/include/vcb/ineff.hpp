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
#include "vcb/equilibrium.hpp"
#include "vcb/plane.hpp"
#include "vcb/rational.hpp"
#include "vcb/sigma.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace vcb {

/// phi(k) = max over j = 1..k of min(j, k/j).
inline Rational phi(std::size_t k)
{
  if (k == 0)
  {
    throw InvalidInput("phi needs k >= 1");
  }
  Rational best(0);
  for (std::size_t j = 1; j <= k; ++j)
  {
    Rational const a(static_cast<std::int64_t>(j));
    Rational const b(static_cast<std::int64_t>(k), static_cast<std::int64_t>(j));
    best = std::max(best, std::min(a, b));
  }
  return best;
}

/// beta(pi) * phi(k), an upper bound on r_pi. The size-list form has no 64-good limit.
inline Rational theorem3_bound(std::vector<std::size_t> const &sizes)
{
  if (sizes.empty() || std::find(sizes.begin(), sizes.end(), std::size_t{0}) != sizes.end())
  {
    throw InvalidInput("partition sizes must be positive");
  }
  auto const beta = *std::max_element(sizes.begin(), sizes.end());
  return Rational(static_cast<std::int64_t>(beta)) * phi(sizes.size());
}

inline Rational theorem3_bound(Partition const &pi)
{
  return Rational(static_cast<std::int64_t>(pi.max_part())) * phi(pi.size());
}

/// Closed form of r_pi for k <= 3 parts.
inline std::size_t proposition1_r(Partition const &pi)
{
  auto const        sizes = pi.part_sizes();
  std::size_t const m     = pi.goods();
  switch (sizes.size())
  {
  case 1:
    return m;
  case 2:
    return std::max(sizes[0], sizes[1]);
  case 3:
    return std::max({sizes[0], sizes[1], sizes[2], m / 2});
  default:
    throw InvalidInput("closed form only covers partitions into at most 3 parts");
  }
}

/// Multiset Delta of subsets H_i of the part indices {0..k-1} (bit l = part l) that is
/// pairwise intersecting and uses each part l at most caps[l] times.
class FeasibleFamily
{
public:
  using Set = std::uint64_t;

  FeasibleFamily(std::vector<std::size_t> caps, std::vector<Set> sets)
    : caps_(std::move(caps))
    , sets_(std::move(sets))
  {
    if (auto why = violation(caps_, sets_))
    {
      throw InvalidInput("infeasible family: " + *why);
    }
    std::sort(sets_.begin(), sets_.end(), canonical_less);
  }

  /// Why the sets are not feasible for the caps, if they are not.
  static std::optional<std::string> violation(std::vector<std::size_t> const &caps, std::vector<Set> const &sets)
  {
    std::size_t const k = caps.size();
    if (k == 0 || k > 64)
    {
      return "part count must be 1..64";
    }
    for (auto h : sets)
    {
      if (h == 0 || (k < 64 && (h >> k) != 0))
      {
        return "sets must be nonempty subsets of the part indices";
      }
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
    {
      for (std::size_t j = i + 1; j < sets.size(); ++j)
      {
        if ((sets[i] & sets[j]) == 0)
        {
          return "sets " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are disjoint";
        }
      }
    }
    for (std::size_t l = 0; l < k; ++l)
    {
      std::size_t load = 0;
      for (auto h : sets)
      {
        load += (h >> l) & 1U;
      }
      if (load > caps[l])
      {
        return "part " + std::to_string(l + 1) + " used " + std::to_string(load) + " times, cap " +
               std::to_string(caps[l]);
      }
    }
    return std::nullopt;
  }

  static bool canonical_less(Set a, Set b)
  {
    auto const pa = std::popcount(a);
    auto const pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  }

  std::size_t parts() const noexcept
  {
    return caps_.size();
  }
  std::size_t size() const noexcept
  {
    return sets_.size();
  }
  std::vector<Set> const &sets() const noexcept
  {
    return sets_;
  }
  std::vector<std::size_t> const &caps() const noexcept
  {
    return caps_;
  }

  /// Sets as sorted 1-based part index lists.
  std::vector<std::vector<std::size_t>> index_lists() const
  {
    std::vector<std::vector<std::size_t>> out;
    for (auto h : sets_)
    {
      std::vector<std::size_t> idx;
      for (std::size_t l = 0; l < caps_.size(); ++l)
      {
        if ((h >> l) & 1U)
        {
          idx.push_back(l + 1);
        }
      }
      out.push_back(std::move(idx));
    }
    return out;
  }

private:
  std::vector<std::size_t> caps_;
  std::vector<Set>         sets_;
};

/// The lines of a plane of order q as a family over k = q^2+q+1 parts of size q+1.
inline FeasibleFamily plane_family(ProjectivePlane const &plane)
{
  std::vector<FeasibleFamily::Set> sets;
  for (auto const &line : plane.lines)
  {
    FeasibleFamily::Set h = 0;
    for (auto pt : line)
    {
      h |= FeasibleFamily::Set{1} << (pt - 1);
    }
    sets.push_back(h);
  }
  return FeasibleFamily(std::vector<std::size_t>(plane.points, plane.q + 1), std::move(sets));
}

struct SemiBalancedCheck
{
  bool     valid{false};     ///< every part has load sum <= 1
  Rational total{0};         ///< sum of delta_i
  bool     bound_ok{false};  ///< total <= phi(k)
};

/// Validates a semi-balanced vector for a pairwise-intersecting family over k parts and
/// checks its total against phi(k).
inline SemiBalancedCheck check_semi_balanced(std::size_t k, std::vector<FeasibleFamily::Set> const &sets,
                                             std::vector<Rational> const &delta)
{
  if (sets.size() != delta.size())
  {
    throw InvalidInput("semi-balanced vector length differs from the family size");
  }
  for (std::size_t i = 0; i < sets.size(); ++i)
  {
    for (std::size_t j = i + 1; j < sets.size(); ++j)
    {
      if ((sets[i] & sets[j]) == 0)
      {
        throw InvalidInput("family is not pairwise intersecting");
      }
    }
  }
  SemiBalancedCheck out;
  out.valid = std::all_of(delta.begin(), delta.end(), [](Rational const &d) { return d >= Rational(0); });
  for (std::size_t l = 0; l < k; ++l)
  {
    Rational load(0);
    for (std::size_t i = 0; i < sets.size(); ++i)
    {
      if ((sets[i] >> l) & 1U)
      {
        load += delta[i];
      }
    }
    if (load > Rational(1))
    {
      out.valid = false;
    }
  }
  for (auto const &d : delta)
  {
    out.total += d;
  }
  out.bound_ok = out.total <= phi(k);
  return out;
}

struct FeasibleSearchResult
{
  std::size_t    s;
  FeasibleFamily witness;
  std::uint64_t  nodes{0};
};

namespace detail {

/// Branch-and-bound for the largest feasible family.
///
/// Symmetry: parts of equal size are interchangeable, so some set of minimum size h can be
/// mapped onto an orbit representative R (within each size class, the lowest indices). Each
/// task fixes such an R; the remaining sets have size >= h and meet R. Inside a task sets are
/// chosen in nondecreasing canonical order (multisets).
///
/// Bounds at a node with current count c:
///   - every future set meets each chosen H: at most sum over l in H of remaining cap;
///   - every future set has >= h elements: at most (total remaining cap) / h;
///   - each remaining candidate fits at most min over its parts of remaining cap times.
/// The global ceiling floor(beta * phi(k)) stops the search early.
class FeasibleSolver
{
public:
  using Set = FeasibleFamily::Set;

  FeasibleSolver(Partition const &pi, std::size_t jobs, std::size_t stop_at)
    : k_(pi.size())
    , caps_(pi.part_sizes())
    , ceiling_(std::min(stop_at, static_cast<std::size_t>(theorem3_bound(pi).floor())))
    , jobs_(std::max<std::size_t>(1, jobs))
  {
    if (k_ > kMaxParts)
    {
      throw BudgetExceeded("exact feasible-family search supports at most 8 parts, got " + std::to_string(k_));
    }
    for (Set h = 1; h < (Set{1} << k_); ++h)
    {
      all_.push_back(h);
    }
    std::sort(all_.begin(), all_.end(), FeasibleFamily::canonical_less);
    build_tasks();
  }

  FeasibleSearchResult solve()
  {
    // Baseline: beta copies of the singleton of a largest part.
    std::size_t const lead = static_cast<std::size_t>(
        std::max_element(caps_.begin(), caps_.end()) - caps_.begin());
    baseline_       = caps_[lead];
    baseline_sets_  = std::vector<Set>(baseline_, Set{1} << lead);
    results_.assign(tasks_.size(), {});
    task_best_      = std::vector<std::atomic<std::size_t>>(tasks_.size());
    for (auto &b : task_best_)
    {
      b.store(0);
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next++; t < tasks_.size(); t = next++)
      {
        run_task(t);
      }
    };
    if (jobs_ == 1)
    {
      worker();
    }
    else
    {
      std::vector<std::thread> pool;
      for (std::size_t j = 0; j < jobs_; ++j)
      {
        pool.emplace_back(worker);
      }
      for (auto &th : pool)
      {
        th.join();
      }
    }
    std::size_t      best = std::min(baseline_, ceiling_);
    std::vector<Set> sets(baseline_sets_.begin(), baseline_sets_.begin() + static_cast<std::ptrdiff_t>(best));
    std::uint64_t    nodes = 0;
    for (auto const &r : results_)
    {
      nodes += r.nodes;
      if (r.best > best)
      {
        best = r.best;
        sets = r.sets;
      }
    }
    return {best, FeasibleFamily(caps_, std::move(sets)), nodes};
  }

private:
  static constexpr std::size_t kMaxParts = 8;

  struct Task
  {
    Set         rep;
    std::size_t h;
  };
  struct TaskResult
  {
    std::size_t      best{0};
    std::vector<Set> sets;
    std::uint64_t    nodes{0};
  };

  void build_tasks()
  {
    // size classes of equal part sizes, as bit masks over part indices
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t>              class_size;
    for (std::size_t l = 0; l < k_; ++l)
    {
      auto it = std::find(class_size.begin(), class_size.end(), caps_[l]);
      if (it == class_size.end())
      {
        class_size.push_back(caps_[l]);
        classes.push_back({l});
      }
      else
      {
        classes[static_cast<std::size_t>(it - class_size.begin())].push_back(l);
      }
    }
    for (std::size_t h = 1; h <= k_; ++h)
    {
      std::vector<Set> reps;
      std::vector<std::size_t> counts(classes.size(), 0);
      collect_reps(classes, counts, 0, h, reps);
      std::sort(reps.begin(), reps.end(), FeasibleFamily::canonical_less);
      for (auto r : reps)
      {
        tasks_.push_back({r, h});
      }
    }
  }

  static void collect_reps(std::vector<std::vector<std::size_t>> const &classes, std::vector<std::size_t> &counts,
                           std::size_t c, std::size_t remaining, std::vector<Set> &out)
  {
    if (c == classes.size())
    {
      if (remaining == 0)
      {
        Set r = 0;
        for (std::size_t i = 0; i < classes.size(); ++i)
        {
          for (std::size_t j = 0; j < counts[i]; ++j)
          {
            r |= Set{1} << classes[i][j];
          }
        }
        out.push_back(r);
      }
      return;
    }
    for (std::size_t take = 0; take <= std::min(remaining, classes[c].size()); ++take)
    {
      counts[c] = take;
      collect_reps(classes, counts, c + 1, remaining - take, out);
    }
    counts[c] = 0;
  }

  struct TaskState
  {
    std::size_t                   t;
    std::size_t                   h;
    std::vector<std::size_t>      rem;
    std::vector<Set>              chosen;
    std::vector<std::vector<Set>> levels;
    TaskResult                    result;
    std::size_t                   lower{0};   ///< best among higher-priority work: prune ties
    std::size_t                   higher{0};  ///< best among lower-priority work: prune below
    std::uint64_t                 refresh{0};
  };

  void refresh_thresholds(TaskState &st) const
  {
    st.lower  = baseline_;
    st.higher = 0;
    for (std::size_t u = 0; u < task_best_.size(); ++u)
    {
      std::size_t const b = task_best_[u].load(std::memory_order_relaxed);
      if (u < st.t)
      {
        st.lower = std::max(st.lower, b);
      }
      else if (u > st.t)
      {
        st.higher = std::max(st.higher, b);
      }
    }
  }

  bool fits(TaskState const &st, Set h) const
  {
    for (Set rest = h; rest != 0; rest &= rest - 1)
    {
      if (st.rem[static_cast<std::size_t>(std::countr_zero(rest))] == 0)
      {
        return false;
      }
    }
    return true;
  }

  void take(TaskState &st, Set h) const
  {
    for (Set rest = h; rest != 0; rest &= rest - 1)
    {
      --st.rem[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    st.chosen.push_back(h);
  }

  void give_back(TaskState &st, Set h) const
  {
    for (Set rest = h; rest != 0; rest &= rest - 1)
    {
      ++st.rem[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    st.chosen.pop_back();
  }

  std::size_t future_bound(TaskState const &st, std::vector<Set> const &cands) const
  {
    std::size_t bound = 0;
    std::size_t total = 0;
    for (auto r : st.rem)
    {
      total += r;
    }
    bound = total / st.h;
    for (auto h : st.chosen)
    {
      std::size_t s = 0;
      for (Set rest = h; rest != 0; rest &= rest - 1)
      {
        s += st.rem[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      bound = std::min(bound, s);
    }
    std::size_t mult = 0;
    for (auto c : cands)
    {
      std::size_t fit = SIZE_MAX;
      for (Set rest = c; rest != 0; rest &= rest - 1)
      {
        fit = std::min(fit, st.rem[static_cast<std::size_t>(std::countr_zero(rest))]);
      }
      mult += fit;
      if (mult >= bound)
      {
        break;
      }
    }
    return std::min(bound, mult);
  }

  void dfs(TaskState &st, std::size_t depth)
  {
    ++st.result.nodes;
    if ((++st.refresh & 0xFF) == 0)
    {
      refresh_thresholds(st);
    }
    std::size_t const count = st.chosen.size();
    if (count > st.result.best)
    {
      st.result.best = count;
      st.result.sets = st.chosen;
      task_best_[st.t].store(count, std::memory_order_relaxed);
    }
    if (st.result.best >= ceiling_)
    {
      return;
    }
    auto const &cands = st.levels[depth];
    if (cands.empty())
    {
      return;
    }
    std::size_t const reach = count + future_bound(st, cands);
    if (reach <= st.result.best || reach <= st.lower || reach < st.higher)
    {
      return;
    }
    if (st.levels.size() <= depth + 1)
    {
      st.levels.emplace_back();
    }
    for (std::size_t p = 0; p < st.levels[depth].size(); ++p)
    {
      Set const h = st.levels[depth][p];
      take(st, h);
      auto &next = st.levels[depth + 1];
      next.clear();
      for (std::size_t q = p; q < st.levels[depth].size(); ++q)
      {
        Set const c = st.levels[depth][q];
        if ((c & h) != 0 && fits(st, c))
        {
          next.push_back(c);
        }
      }
      dfs(st, depth + 1);
      give_back(st, h);
      if (st.result.best >= ceiling_)
      {
        return;
      }
    }
  }

  void run_task(std::size_t t)
  {
    TaskState st;
    st.t   = t;
    st.h   = tasks_[t].h;
    st.rem = caps_;
    refresh_thresholds(st);
    Set const rep = tasks_[t].rep;
    take(st, rep);
    st.levels.emplace_back();
    for (auto c : all_)
    {
      if (static_cast<std::size_t>(std::popcount(c)) >= st.h && (c & rep) != 0 && fits(st, c))
      {
        st.levels[0].push_back(c);
      }
    }
    dfs(st, 0);
    results_[t] = std::move(st.result);
  }

  std::size_t                            k_;
  std::vector<std::size_t>               caps_;
  std::size_t                            ceiling_;
  std::size_t                            jobs_;
  std::vector<Set>                       all_;
  std::vector<Task>                      tasks_;
  std::size_t                            baseline_{0};
  std::vector<Set>                       baseline_sets_;
  std::vector<TaskResult>                results_;
  std::vector<std::atomic<std::size_t>>  task_best_;
};

}  // namespace detail

/// Exact max s(Delta) over feasible families for pi (k <= 8), with a witness family.
/// The witness is the first optimum in task order, independent of `jobs`.
inline FeasibleSearchResult max_feasible_family(Partition const &pi, std::size_t jobs = 1)
{
  return detail::FeasibleSolver(pi, jobs, SIZE_MAX).solve();
}

/// A feasible family of size min(target, max s(Delta)): stops as soon as `target` is reached.
inline FeasibleSearchResult feasible_family_at_least(Partition const &pi, std::size_t target, std::size_t jobs = 1)
{
  return detail::FeasibleSolver(pi, jobs, target).solve();
}

/// s unit unanimity buyers w_{B_i}, where B_i takes one fresh good from each part in H_i.
/// On this profile S_max = s and S_pi = 1.
inline Profile lower_bound_profile(FeasibleFamily const &delta, Partition const &pi)
{
  if (delta.caps() != pi.part_sizes())
  {
    throw InvalidInput("family caps do not match the partition's part sizes");
  }
  std::vector<std::vector<std::size_t>> pools;
  for (auto p : pi.parts())
  {
    pools.push_back(p.goods());
  }
  std::vector<std::size_t> used(pi.size(), 0);
  std::vector<Valuation>   vs;
  for (auto h : delta.sets())
  {
    Bundle b;
    for (std::size_t l = 0; l < pi.size(); ++l)
    {
      if ((h >> l) & 1U)
      {
        b = b | Bundle::single(pools[l][used[l]++]);
      }
    }
    vs.push_back(unanimity_valuation(pi.goods(), b));
  }
  if (vs.empty())
  {
    throw InvalidInput("empty feasible family gives no profile");
  }
  return Profile(GoodsUniverse::standard(pi.goods()), std::move(vs));
}

/// Brute-force r_pi: max of S_max / S_pi over all unit disjoint-unanimity profiles (at most m
/// buyers suffice), both surpluses computed by the auction engine.
inline RatioResult r_pi_oracle(Partition const &pi)
{
  std::size_t const m = pi.goods();
  if (m > 12)
  {
    throw BudgetExceeded("r_pi oracle supports m <= 12");
  }
  RatioResult out;
  ProfileSweep::disjoint_unanimity().for_each(GoodsUniverse::standard(m), [&](Profile const &v) {
    ++out.profiles;
    Value const    top = max_surplus(v);
    Value const    sub = partition_optimal_surplus(v, pi).surplus;
    Rational const r(top, sub);
    if (!out.argmax || r > out.ratio)
    {
      out.ratio  = r;
      out.argmax = v;
    }
  });
  return out;
}

/// All part-size shapes of m goods into k nonempty parts, each nonincreasing, in
/// lexicographically decreasing order.
inline std::vector<std::vector<std::size_t>> size_shapes(std::size_t m, std::size_t k)
{
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t>              cur;
  auto rec = [&](auto &&self, std::size_t left, std::size_t parts, std::size_t cap) -> void {
    if (parts == 0)
    {
      if (left == 0)
      {
        out.push_back(cur);
      }
      return;
    }
    for (std::size_t x = std::min(cap, left - (parts - 1)); x >= 1 && x * parts >= left; --x)
    {
      cur.push_back(x);
      self(self, left - x, parts - 1, x);
      cur.pop_back();
    }
  };
  if (k >= 1 && k <= m)
  {
    rec(rec, m, k, m);
  }
  return out;
}

/// Sigma = {D : |D n B| = |D n C|} with B the first m/2 goods and C the rest.
inline BundleFamily balanced_sigma(GoodsUniverse const &u)
{
  std::size_t const m = u.size();
  if (m % 2 != 0)
  {
    throw InvalidInput("balanced family needs an even number of goods");
  }
  if (m > 24)
  {
    throw BudgetExceeded("balanced family enumeration supports m <= 24");
  }
  Bundle const        b = Bundle::full(m / 2);
  std::vector<Bundle> out;
  for (Bundle::Mask mask = 0; mask <= u.full().mask(); ++mask)
  {
    Bundle const d(mask);
    if ((d & b).size() == d.minus(b).size())
    {
      out.push_back(d);
    }
  }
  return BundleFamily(u, std::move(out));
}

inline BundleFamily balanced_sigma(std::size_t m)
{
  return balanced_sigma(GoodsUniverse::standard(m == 0 ? 1 : m));
}

}  // namespace vcb
