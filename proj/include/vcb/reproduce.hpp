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
#include "vcb/ineff.hpp"
#include "vcb/io.hpp"
#include "vcb/plane.hpp"
#include "vcb/sigma.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace vcb::reproduce {

enum class Status
{
  pass,
  fail,
  skip
};

inline char const *status_name(Status s)
{
  switch (s)
  {
  case Status::pass:
    return "PASS";
  case Status::fail:
    return "FAIL";
  default:
    return "SKIP";
  }
}

struct Check
{
  std::string name;
  std::string claimed;
  std::string computed;
  Status      status;
};

class Report
{
public:
  explicit Report(std::string target)
    : target_(std::move(target))
  {}

  /// Passes when the computed text equals the claim.
  void same(std::string name, std::string claimed, std::string computed)
  {
    bool const ok = claimed == computed;
    checks_.push_back({std::move(name), std::move(claimed), std::move(computed), ok ? Status::pass : Status::fail});
  }

  void expect(std::string name, std::string claimed, std::string computed, bool ok)
  {
    checks_.push_back({std::move(name), std::move(claimed), std::move(computed), ok ? Status::pass : Status::fail});
  }

  void skip(std::string name, std::string claimed, std::string reason)
  {
    checks_.push_back({std::move(name), std::move(claimed), std::move(reason), Status::skip});
  }

  bool pass() const
  {
    return std::none_of(checks_.begin(), checks_.end(), [](Check const &c) { return c.status == Status::fail; });
  }

  std::string const &target() const noexcept
  {
    return target_;
  }
  std::vector<Check> const &checks() const noexcept
  {
    return checks_;
  }

  io::Json json() const
  {
    io::Json out;
    out["target"] = target_;
    out["status"] = pass() ? "PASS" : "FAIL";
    out["checks"] = io::Json::array();
    for (auto const &c : checks_)
    {
      out["checks"].push_back(
          {{"name", c.name}, {"claimed", c.claimed}, {"computed", c.computed}, {"status", status_name(c.status)}});
    }
    return out;
  }

  std::string text() const
  {
    std::ostringstream out;
    out << "[" << target_ << "]\n";
    for (auto const &c : checks_)
    {
      out << "  " << status_name(c.status) << "  " << c.name << ": claimed " << c.claimed << "; computed "
          << c.computed << "\n";
    }
    out << target_ << ": " << (pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
  }

private:
  std::string        target_;
  std::vector<Check> checks_;
};

namespace detail {

inline std::string str(Value v)
{
  return std::to_string(v);
}

inline std::string str(bool b)
{
  return b ? "true" : "false";
}

inline std::string shape_str(std::vector<std::size_t> const &sizes)
{
  std::string out = "(";
  for (std::size_t i = 0; i < sizes.size(); ++i)
  {
    out += (i ? "," : "") + std::to_string(sizes[i]);
  }
  return out + ")";
}

inline std::string bundle_str(GoodsUniverse const &u, Bundle b)
{
  return b.empty() ? "{}" : u.format(b);
}

/// B when v = w_B (B empty for the zero valuation), in either representation.
inline std::optional<Bundle> unit_unanimity_bundle(Valuation const &v)
{
  if (!v.is_dense())
  {
    auto const atom = v.single_atom();
    if (atom && (atom->weight == 1 || atom->bundle.empty()))
    {
      return atom->weight == 0 ? Bundle{} : atom->bundle;
    }
    return std::nullopt;
  }
  auto const t = v.table();
  Bundle     best{Bundle::full(v.goods())};
  if (t.back() == 0)
  {
    return std::all_of(t.begin(), t.end(), [](Value x) { return x == 0; }) ? std::optional<Bundle>(Bundle{})
                                                                             : std::nullopt;
  }
  for (std::size_t mask = 0; mask < t.size(); ++mask)
  {
    if (t[mask] != 0 && Bundle(mask).size() < best.size())
    {
      best = Bundle(mask);
    }
  }
  for (std::size_t mask = 0; mask < t.size(); ++mask)
  {
    if (t[mask] != (best.subset_of(Bundle(mask)) ? 1 : 0))
    {
      return std::nullopt;
    }
  }
  return best;
}

/// "w_bc, w_a" for profiles of unit unanimity valuations.
inline std::string profile_str(Profile const &p)
{
  std::string out;
  for (std::size_t i = 0; i < p.buyers(); ++i)
  {
    auto const  b   = unit_unanimity_bundle(p[i]);
    std::string one = !b ? "?" : b->empty() ? "0" : "w_" + p.universe().format(*b);
    out += (i ? ", " : "") + one;
  }
  return out;
}

inline std::string allocation_str(Allocation const &a, GoodsUniverse const &u)
{
  std::string out;
  for (std::size_t i = 0; i < a.buyers(); ++i)
  {
    out += std::to_string(i + 1) + ":" + bundle_str(u, a[i]) + " ";
  }
  return out + "seller:" + bundle_str(u, a.seller());
}

inline std::string surplus_revenue(AuctionOutcome const &o)
{
  return "(" + str(o.surplus) + "," + str(o.revenue) + ")";
}

inline std::size_t binomial(std::size_t n, std::size_t r)
{
  std::size_t out = 1;
  for (std::size_t i = 1; i <= r; ++i)
  {
    out = out * (n - r + i) / i;
  }
  return out;
}

inline BundleFamily family_of(GoodsUniverse const &u, std::vector<std::string> const &labels)
{
  std::vector<Bundle> bs;
  for (auto const &l : labels)
  {
    bs.push_back(u.parse(l));
  }
  return BundleFamily(u, std::move(bs));
}

/// Largest number of pairwise-disjoint nonempty members, and whether some k of them cover A.
inline std::size_t max_disjoint_members(BundleFamily const &sigma)
{
  std::vector<Bundle> members;
  for (auto b : sigma)
  {
    if (!b.empty())
    {
      members.push_back(b);
    }
  }
  std::size_t best = 0;
  auto rec = [&](auto &&self, std::size_t from, Bundle used, std::size_t count) -> void {
    best = std::max(best, count);
    for (std::size_t i = from; i < members.size(); ++i)
    {
      if (members[i].disjoint(used))
      {
        self(self, i + 1, used | members[i], count + 1);
      }
    }
  };
  rec(rec, 0, Bundle{}, 0);
  return best;
}

inline bool contains_partition_into(BundleFamily const &sigma, std::size_t k)
{
  std::size_t const m    = sigma.goods();
  Bundle const      full = sigma.universe().full();
  auto rec = [&](auto &&self, Bundle covered, std::size_t parts) -> bool {
    if (covered == full)
    {
      return parts == k;
    }
    if (parts == k)
    {
      return false;
    }
    std::size_t first = 0;
    while (covered.has(first))
    {
      ++first;
    }
    for (auto b : sigma)
    {
      if (b.has(first) && b.disjoint(covered) && self(self, covered | b, parts + 1))
      {
        return true;
      }
    }
    return false;
  };
  return m >= k && rec(rec, Bundle{}, 0);
}

}  // namespace detail

inline Report example1()
{
  using namespace detail;
  Report     r("example1");
  auto const u     = GoodsUniverse::standard(4);
  auto const sigma = family_of(u, {"", "a", "d", "bcd", "abc", "abcd"});
  auto const cls   = is_quasi_field(sigma);
  r.same("Sigma is a quasi field", "false", str(cls.is_quasi_field));
  r.expect("violation witness", "complement or disjoint-union witness",
           cls.witness ? io::violation_json(*cls.witness, u).dump() : "none", cls.witness.has_value());
  if (!cls.witness)
  {
    return r;
  }
  auto const witness = quasi_field_counterexample(sigma);
  r.same("witness profile", "w_bc, w_a, w_d", profile_str(witness.profile));
  r.same("deviator", "1", std::to_string(witness.deviator + 1));

  auto const        projected = project_profile(witness.profile, sigma);
  std::string       declared;
  auto const        v1        = projected[0];
  for (Bundle::Mask mask = 0; mask < 16; ++mask)
  {
    if (v1(Bundle(mask)) != 0)
    {
      declared += (declared.empty() ? "" : " ") + u.format(Bundle(mask)) + "=" + str(v1(Bundle(mask)));
    }
  }
  r.same("buyer 1 declares under f^Sigma", "abc=1 bcd=1 abcd=1", declared);

  auto const adversarial = TieBreakRule::adversarial_to(0, witness.profile[0]);
  auto const chosen      = run_vc(projected, adversarial, witness.profile);
  r.same("adversarial VC allocation", "1:{} 2:a 3:d seller:bc", allocation_str(chosen.allocation, u));
  r.same("utility of buyer 1 from f^Sigma", "0", str(chosen.utilities[0]));
  r.same("witness allocation matches", "true", str(chosen.allocation == witness.allocation));

  auto const truthful = projected.with(0, witness.profile[0]);
  bool       every    = true;
  std::string seen;
  for (auto const &tie : {TieBreakRule::canonical(), TieBreakRule::seller_favoring(), adversarial})
  {
    auto const o = run_vc(truthful, tie, witness.profile);
    every = every && o.allocation[0] == u.parse("bc") && o.payments[0] == 0 && o.utilities[0] == 1;
    seen  = "gets " + bundle_str(u, o.allocation[0]) + ", pays " + str(o.payments[0]) + ", utility " +
           str(o.utilities[0]);
  }
  r.expect("truthful buyer 1 in every VC mechanism", "gets bc, pays 0, utility 1", seen, every);
  r.same("adversarial deviation gap", "1", str(deviation_gap(sigma, witness.profile, 0, GapMode::worst_case())));
  return r;
}

inline Report example2()
{
  using namespace detail;
  Report     r("example2");
  auto const u   = GoodsUniverse::standard(2);
  auto const wa  = unanimity_valuation(2, u.parse("a"));
  auto const wb  = unanimity_valuation(2, u.parse("b"));
  auto const pi  = Partition(2, {u.full()});
  auto const spi = field_of_partition(u, pi);

  Profile const two(u, {wa, wb});
  auto const    truthful = run_vc(two);
  r.same("truthful allocation", "1:a 2:b seller:{}", allocation_str(truthful.allocation, u));
  r.same("truthful payments", "0 0", str(truthful.payments[0]) + " " + str(truthful.payments[1]));
  r.same("truthful (surplus, revenue)", "(2,0)", surplus_revenue(truthful));

  auto const projected = project_profile(two, spi);
  r.same("f^pi reports", "w_ab, w_ab", profile_str(projected));
  auto const bundled = run_vc(projected, TieBreakRule::canonical(), two);
  r.expect("f^pi winner pays", "one buyer gets ab and pays 1",
           allocation_str(bundled.allocation, u) + ", payments " + str(bundled.payments[0]) + " " +
               str(bundled.payments[1]),
           (bundled.allocation[0] == u.full()) != (bundled.allocation[1] == u.full()) &&
               bundled.payments[0] + bundled.payments[1] == 1 &&
               std::max(bundled.payments[0], bundled.payments[1]) == 1);
  r.same("f^pi (surplus, revenue)", "(1,1)", surplus_revenue(bundled));
  r.same("S_pi(v)", "1", str(partition_optimal_surplus(two, pi).surplus));

  Profile const four(u, {wa, wb, wa, wb});
  auto const    truthful4 = run_vc(four);
  r.same("4 buyers truthful (S_max, R)", "(2,2)", surplus_revenue(truthful4));
  auto const bundled4 = run_vc(project_profile(four, spi), TieBreakRule::canonical(), four);
  r.same("4 buyers under f^pi (S_pi, R_pi)", "(1,1)", surplus_revenue(bundled4));
  return r;
}

inline Report example3(std::size_t jobs = 1, bool minimality = true)
{
  using namespace detail;
  Report                         r("example3");
  std::vector<std::size_t> const sizes{2, 4, 3, 3, 3, 3, 3};
  auto const                     pi     = Partition::from_sizes(sizes);
  auto const                     result = max_feasible_family(pi, jobs);
  r.same("max s(Delta) for sizes (2,4,3,3,3,3,3)", "6", std::to_string(result.s));
  r.same("no feasible family of 7 sets", "true", str(result.s < 7));
  r.expect("witness family is feasible", "pairwise intersecting within caps",
           std::to_string(result.witness.size()) + " sets",
           result.witness.size() == 6 && !FeasibleFamily::violation(pi.part_sizes(), result.witness.sets()));
  auto const profile = lower_bound_profile(result.witness, pi);
  r.same("S_max / S_pi on the witness profile", "6",
         Rational(max_surplus(profile), partition_optimal_surplus(profile, pi).surplus).str());
  r.same("beta*phi(k) for sizes (2,4,3,3,3,3,3)", "28/3", theorem3_bound(pi).str());

  auto const equi = max_feasible_family(Partition::from_sizes(std::vector<std::size_t>(7, 3)), jobs);
  r.same("r_pi for 7 triples", "7", std::to_string(equi.s));

  if (!minimality)
  {
    r.skip("6 is the lowest r_pi over 7-part partitions of 21", "6", "not requested");
    return r;
  }
  auto const  shapes  = size_shapes(21, 7);
  std::size_t lowest  = SIZE_MAX;
  std::string witness;
  bool        exact   = true;
  for (auto const &shape : shapes)
  {
    auto const at_least = feasible_family_at_least(Partition::from_sizes(shape), 6, jobs).s;
    if (at_least < lowest)
    {
      lowest  = at_least;
      witness = shape_str(shape);
    }
  }
  exact = lowest >= 6;
  r.expect("6 is the lowest r_pi over 7-part partitions of 21", "6",
           "every one of " + std::to_string(shapes.size()) + " shapes has r_pi >= " + std::to_string(lowest) +
               "; (2,4,3,3,3,3,3) attains " + std::to_string(result.s),
           exact && result.s == 6);
  return r;
}

struct Example4Options
{
  std::vector<std::size_t> sizes{4, 6, 8, 10};
  std::size_t              random_profiles{200};
  std::size_t              random_buyers{3};
  std::uint64_t            seed{1};
};

inline Report example4(Example4Options const &opt = {})
{
  using namespace detail;
  Report r("example4");
  for (auto m : opt.sizes)
  {
    auto const        u     = GoodsUniverse::standard(m);
    auto const        sigma = balanced_sigma(u);
    auto const        cls   = is_quasi_field(sigma);
    std::string const tag   = "m=" + std::to_string(m) + ": ";
    r.same(tag + "balanced Sigma is a quasi field", "true", str(cls.is_quasi_field));
    r.same(tag + "balanced Sigma is a field", "false", str(cls.is_field));
    r.same(tag + "|Sigma|", std::to_string(binomial(m, m / 2)), std::to_string(communication_complexity(sigma)));

    Bundle const  b = Bundle::full(m / 2);
    Bundle const  c = b.complement(m);
    Profile const pair(u, {unanimity_valuation(m, b), unanimity_valuation(m, c)});
    SigmaSurplus const restricted(sigma);
    r.same(tag + "ratio at (w_B, w_C)", "2", Rational(max_surplus(pair), restricted(pair)).str());

    auto const sweep = empirical_ratio(sigma, ProfileSweep::disjoint_unanimity());
    r.expect(tag + "max ratio over the disjoint-unanimity sweep", "2", sweep.ratio.str(),
             sweep.ratio == Rational(2));
    auto const random =
        empirical_ratio(sigma, ProfileSweep::random_monotone(opt.random_profiles, opt.random_buyers, opt.seed + m));
    r.expect(tag + "max ratio over " + std::to_string(opt.random_profiles) + " random monotone profiles", "<= 2",
             random.ratio.str(), random.ratio <= Rational(2));
  }
  // partitions of 10 goods with r_pi <= 2 need at least 8 parts
  std::size_t const m       = 10;
  bool              forced  = true;
  std::size_t       checked = 0;
  for (std::size_t k = 1; k <= 7; ++k)
  {
    for (auto const &shape : size_shapes(m, k))
    {
      ++checked;
      forced = forced && feasible_family_at_least(Partition::from_sizes(shape), 3).s >= 3;
    }
  }
  r.expect("m=10: every partition with r_pi <= 2 has |Sigma_pi| >= 2^8", "true",
           std::string(forced ? "true" : "false") + " (" + std::to_string(checked) +
               " shapes with k <= 7 all have r_pi >= 3)",
           forced);
  r.expect("C(10,5) < 2^8", "252 < 256", std::to_string(binomial(10, 5)) + " < 256", binomial(10, 5) < 256);
  return r;
}

inline Report prop1_table(std::size_t max_m = 10)
{
  using namespace detail;
  Report r("prop1-table");
  for (std::size_t m = 1; m <= max_m; ++m)
  {
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, m); ++k)
    {
      std::size_t lowest = SIZE_MAX;
      bool        agree  = true;
      auto const  shapes = size_shapes(m, k);
      for (auto const &shape : shapes)
      {
        auto const  pi     = Partition::from_sizes(shape);
        std::size_t solver = max_feasible_family(pi).s;
        agree              = agree && solver == proposition1_r(pi);
        lowest             = std::min(lowest, solver);
      }
      std::size_t const claimed = k == 1 ? m : k == 2 ? (m + 1) / 2 : m / 2;
      r.expect("m=" + std::to_string(m) + " k=" + std::to_string(k),
               "min r_pi = " + std::to_string(claimed) + ", closed form on every shape",
               "min r_pi = " + std::to_string(lowest) + ", closed form " + (agree ? "matches" : "differs") + " on " +
                   std::to_string(shapes.size()) + " shapes",
               agree && lowest == claimed);
    }
  }
  return r;
}

inline Report thm4(std::size_t q, std::size_t jobs = 1)
{
  using namespace detail;
  Report            r("thm4 q=" + std::to_string(q));
  auto const        plane = projective_plane(q);
  auto const        ax    = verify_plane_axioms(plane);
  std::size_t const k     = q * q + q + 1;
  r.same("plane axioms (counts, incidence, uniqueness)", "true true true",
         str(ax.counts) + " " + str(ax.incidence) + " " + str(ax.uniqueness));
  r.same("points and lines", std::to_string(k) + " " + std::to_string(k),
         std::to_string(plane.points) + " " + std::to_string(plane.lines.size()));

  std::vector<std::size_t> const sizes(k, q + 1);
  auto const                     bound = theorem3_bound(sizes);
  r.same("phi(k)", Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(q + 1)).str(),
         phi(k).str());
  r.same("beta*phi(k)", std::to_string(k), bound.str());

  auto const lines = plane_family(plane);
  r.same("plane lines form a feasible family of size k", std::to_string(k), std::to_string(lines.size()));
  std::size_t const m = k * (q + 1);
  if (k <= 8)
  {
    r.same("solver r_pi", std::to_string(k),
           std::to_string(max_feasible_family(Partition::from_sizes(sizes), jobs).s));
  }
  else
  {
    bool const squeezed = bound == Rational(static_cast<std::int64_t>(lines.size()));
    r.expect("r_pi from lines (lower) and beta*phi(k) (upper)", std::to_string(k),
             std::to_string(lines.size()) + " <= r_pi <= " + bound.str(), squeezed);
  }
  if (m <= kMaxGoods)
  {
    auto const pi      = Partition::from_sizes(sizes);
    auto const profile = lower_bound_profile(lines, pi);
    r.same("S_max / S_pi on the line profile", std::to_string(k),
           Rational(max_surplus(profile), partition_optimal_surplus(profile, pi).surplus).str());
  }
  else
  {
    r.skip("S_max / S_pi on the line profile", std::to_string(k),
           "m = " + std::to_string(m) + " exceeds the 64-good bundle width");
  }
  return r;
}

inline Report remark1(std::uint64_t seed = 7, std::size_t profiles_per_family = 25)
{
  using namespace detail;
  Report           r("remark1");
  std::mt19937_64  rng(seed);
  std::size_t      checked  = 0;
  std::size_t      families = 0;
  bool             ok       = true;
  Rational         worst(0);
  for (std::size_t m = 2; m <= 6; ++m)
  {
    auto const                u = GoodsUniverse::standard(m);
    std::vector<BundleFamily> pool{field_of_partition(u, Partition(m, {u.full()})),
                                   random_quasi_field(u, rng), random_quasi_field(u, rng)};
    std::vector<Bundle>       loose{Bundle{}, u.full(), Bundle::single(0)};
    pool.emplace_back(u, std::move(loose));
    if (m % 2 == 0)
    {
      pool.push_back(balanced_sigma(u));
    }
    for (auto const &sigma : pool)
    {
      ++families;
      SigmaSurplus const restricted(sigma);
      for (std::size_t n = 1; n <= 4; ++n)
      {
        ProfileSweep::random_monotone(profiles_per_family, n, rng()).for_each(u, [&](Profile const &v) {
          ++checked;
          Value const top = max_surplus(v);
          Value const sub = restricted(v);
          ok              = ok && top <= static_cast<Value>(n) * sub;
          if (sub > 0)
          {
            worst = std::max(worst, Rational(top, sub * static_cast<Value>(n)));
          }
        });
      }
    }
  }
  r.expect("S_max <= n * S_Sigma", "on every profile",
           std::to_string(checked) + " profiles over " + std::to_string(families) +
               " families, max S_max/(n*S_Sigma) = " + worst.str(),
           ok);
  return r;
}

inline Report remark2(std::size_t max_m = 6)
{
  using namespace detail;
  Report                    r("remark2");
  std::vector<BundleFamily> pool;
  for (std::size_t m = 1; m <= max_m; ++m)
  {
    for (auto &sigma : all_quasi_fields(GoodsUniverse::standard(m)))
    {
      pool.push_back(std::move(sigma));
    }
  }
  std::size_t instances  = 0;
  bool        ok         = true;
  std::string first_bad  = "none";
  for (auto const &sigma : pool)
  {
    std::size_t const m = sigma.goods();
    if (!sigma.contains(sigma.universe().full()))
    {
      continue;
    }
    std::vector<Valuation> singles;
    for (std::size_t g = 0; g < m; ++g)
    {
      singles.push_back(unanimity_valuation(m, Bundle::single(g)));
    }
    Profile const  v(sigma.universe(), std::move(singles));
    Rational const ratio(max_surplus(v), SigmaSurplus(sigma)(v));
    std::size_t const disjoint = max_disjoint_members(sigma);
    for (std::size_t k = 1; k <= m; ++k)
    {
      if (ratio > Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(k)))
      {
        continue;
      }
      ++instances;
      bool const holds = disjoint >= k && contains_partition_into(sigma, k) && sigma.size() >= (std::size_t{1} << k);
      if (!holds && ok)
      {
        first_bad = io::family_json(sigma).dump() + " k=" + std::to_string(k);
      }
      ok = ok && holds;
    }
  }
  r.expect("ratio <= m/k implies a k-part partition in Sigma and |Sigma| >= 2^k", "no counterexample",
           std::to_string(pool.size()) + " quasi fields, " + std::to_string(instances) +
               " (Sigma, k) pairs; first failure: " + first_bad,
           ok);
  return r;
}

inline std::vector<std::string> const &targets()
{
  static std::vector<std::string> const names{"example1", "example2", "example3", "example4", "prop1-table",
                                              "thm4",     "remark1",  "remark2",  "all"};
  return names;
}

/// Runs one target (thm4 uses q; "all" covers q in {0,1,2,3,5}).
inline std::vector<Report> run(std::string const &target, std::optional<std::size_t> q = std::nullopt,
                               std::size_t jobs = 1)
{
  if (target == "example1")
  {
    return {example1()};
  }
  if (target == "example2")
  {
    return {example2()};
  }
  if (target == "example3")
  {
    return {example3(jobs)};
  }
  if (target == "example4")
  {
    return {example4()};
  }
  if (target == "prop1-table")
  {
    return {prop1_table()};
  }
  if (target == "thm4")
  {
    if (!q)
    {
      throw InvalidInput("thm4 needs --q");
    }
    return {thm4(*q, jobs)};
  }
  if (target == "remark1")
  {
    return {remark1()};
  }
  if (target == "remark2")
  {
    return {remark2()};
  }
  if (target == "all")
  {
    std::vector<Report> out{example1(), example2(), example3(jobs), example4(), prop1_table()};
    for (std::size_t order : {0, 1, 2, 3, 5})
    {
      out.push_back(thm4(order, jobs));
    }
    out.push_back(remark1());
    out.push_back(remark2());
    return out;
  }
  throw InvalidInput("unknown reproduce target \"" + target + "\"");
}

}  // namespace vcb::reproduce
