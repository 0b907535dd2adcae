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

#include "vcb/io.hpp"
#include "vcb/reproduce.hpp"
#include "vcb/vcb.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using vcb::io::Json;

struct Common
{
  std::string format{"json"};
  bool        timing{false};
};

vcb::TieBreakRule parse_tie(std::string const &text, std::size_t buyers)
{
  if (text == "canonical")
  {
    return vcb::TieBreakRule::canonical();
  }
  if (text == "seller")
  {
    return vcb::TieBreakRule::seller_favoring();
  }
  std::string const prefix = "adversarial:";
  if (text.rfind(prefix, 0) == 0)
  {
    std::size_t buyer = 0;
    try
    {
      buyer = std::stoul(text.substr(prefix.size()));
    }
    catch (std::exception const &)
    {
      throw vcb::InvalidInput("bad buyer in --tie " + text);
    }
    if (buyer < 1 || buyer > buyers)
    {
      throw vcb::InvalidInput("--tie target must be a buyer in 1.." + std::to_string(buyers));
    }
    return vcb::TieBreakRule::adversarial_to(buyer - 1);
  }
  throw vcb::InvalidInput("unknown tie-break rule \"" + text + "\"");
}

// sweep | random:N
vcb::ProfileSweep parse_profiles(std::string const &text, std::size_t buyers, std::uint64_t seed)
{
  if (text == "sweep")
  {
    return vcb::ProfileSweep::disjoint_unanimity();
  }
  std::string const prefix = "random:";
  if (text.rfind(prefix, 0) == 0)
  {
    std::size_t count = 0;
    try
    {
      count = std::stoul(text.substr(prefix.size()));
    }
    catch (std::exception const &)
    {
      throw vcb::InvalidInput("bad count in --profiles " + text);
    }
    return vcb::ProfileSweep::random_monotone(count, buyers, seed);
  }
  throw vcb::InvalidInput("unknown profile source \"" + text + "\"");
}

std::vector<std::size_t> parse_sizes(std::string const &text)
{
  std::vector<std::size_t> sizes;
  std::stringstream        in(text);
  std::string              item;
  while (std::getline(in, item, ','))
  {
    try
    {
      std::size_t used = 0;
      long long const x = std::stoll(item, &used);
      if (used != item.size() || x < 1)
      {
        throw std::invalid_argument(item);
      }
      sizes.push_back(static_cast<std::size_t>(x));
    }
    catch (std::exception const &)
    {
      throw vcb::InvalidInput("--sizes needs positive integers, got \"" + item + "\"");
    }
  }
  if (sizes.empty())
  {
    throw vcb::InvalidInput("--sizes is empty");
  }
  return sizes;
}

void emit(Json const &out, Common const &common)
{
  if (common.format == "csv")
  {
    std::cout << vcb::io::to_csv(out);
  }
  else
  {
    std::cout << out.dump(2) << "\n";
  }
}

class Stopwatch
{
public:
  double seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

void add_runtime(Json &out, Common const &common, Stopwatch const &clock)
{
  if (common.timing)
  {
    out["runtime"] = clock.seconds();
  }
}

Json witness_family_json(vcb::FeasibleFamily const &delta)
{
  Json out = Json::array();
  for (auto const &set : delta.index_lists())
  {
    out.push_back(set);
  }
  return out;
}

// auction -------------------------------------------------------------------------------

struct AuctionArgs
{
  std::string instance;
  std::string family;
  std::string tie{"canonical"};
};

void run_auction(AuctionArgs const &args, Common const &common)
{
  Stopwatch  clock;
  auto const inst     = vcb::io::parse_instance(vcb::io::read_json_file(args.instance));
  auto       reported = inst.reported;
  auto       truth    = inst.truth;
  Json       out;
  if (!args.family.empty())
  {
    auto const sigma = vcb::io::parse_family(vcb::io::read_json_file(args.family));
    if (!(sigma.universe() == inst.universe))
    {
      throw vcb::InvalidInput("family and instance use different goods");
    }
    if (!truth)
    {
      truth = reported;
    }
    reported = vcb::project_profile(reported, sigma);
    out["reports"] = "projected";
  }
  else
  {
    out["reports"] = "as given";
  }
  auto const tie     = parse_tie(args.tie, reported.buyers());
  auto const outcome = vcb::run_vc(reported, tie, truth);
  out["tie"]         = args.tie;
  out.update(vcb::io::outcome_json(outcome, inst.universe, inst.scale));
  out["max_surplus"] = vcb::io::value_json(vcb::max_surplus(truth ? *truth : reported), inst.scale);
  add_runtime(out, common, clock);
  emit(out, common);
}

// analyze-sigma -------------------------------------------------------------------------

struct SigmaArgs
{
  std::string   family;
  std::string   profiles{"sweep"};
  std::string   mode{"both"};
  std::size_t   buyers{3};
  std::uint64_t seed{1};
};

std::vector<vcb::GapMode> parse_modes(std::string const &mode)
{
  if (mode == "adversarial")
  {
    return {vcb::GapMode::worst_case()};
  }
  if (mode == "canonical")
  {
    return {vcb::GapMode::fixed(vcb::TieBreakRule::canonical())};
  }
  if (mode == "seller")
  {
    return {vcb::GapMode::fixed(vcb::TieBreakRule::seller_favoring())};
  }
  if (mode == "both")
  {
    return {vcb::GapMode::fixed(vcb::TieBreakRule::canonical()), vcb::GapMode::worst_case()};
  }
  throw vcb::InvalidInput("unknown --mode \"" + mode + "\"");
}

void run_analyze_sigma(SigmaArgs const &args, Common const &common)
{
  Stopwatch  clock;
  auto const sigma   = vcb::io::parse_family(vcb::io::read_json_file(args.family));
  auto const sweep   = parse_profiles(args.profiles, args.buyers, args.seed);
  auto const modes   = parse_modes(args.mode);
  auto const verdict = vcb::check_bundling_equilibrium(sigma, sweep, modes);
  auto const &u      = sigma.universe();

  Json out;
  out["goods"]                    = u.labels();
  out["bundles"]                  = sigma.size();
  out["classification"]           = vcb::io::classification_json(verdict.classification, u);
  out["communication_complexity"] = vcb::communication_complexity(sigma);
  out["verdict"]                  = verdict.consistent ? "equilibrium-consistent" : "violated";
  if (verdict.witness)
  {
    auto const &w = *verdict.witness;
    Json        j;
    j["profile"]    = vcb::io::profile_json(w.profile, 1)["valuations"];
    j["deviator"]   = w.deviator + 1;
    j["allocation"] = vcb::io::allocation_json(w.allocation, u);
    j["gap"]        = verdict.witness_gap;
    out["witness"]  = j;
  }
  else
  {
    out["profiles"]         = args.profiles;
    out["mode"]             = args.mode;
    out["profiles_checked"] = verdict.profiles_checked;
    out["gaps_checked"]     = verdict.gaps_checked;
  }
  if (sigma.contains(u.full()))
  {
    auto const ratio = vcb::empirical_ratio(sigma, sweep);
    Json       j;
    j["ratio"]       = vcb::io::rational_json(ratio.ratio);
    j["exact"]       = sweep.kind() == vcb::ProfileSweep::Kind::disjoint_unanimity &&
                 vcb::as_partition_field(sigma).has_value();
    j["profiles"]    = ratio.profiles;
    j["argmax"]      = ratio.argmax ? vcb::io::profile_json(*ratio.argmax, 1)["valuations"] : Json(nullptr);
    out["efficiency"] = j;
  }
  add_runtime(out, common, clock);
  emit(out, common);
}

// analyze-partition ---------------------------------------------------------------------

struct PartitionArgs
{
  std::string sizes;
  std::size_t jobs{1};
};

std::optional<std::size_t> plane_order_for(std::vector<std::size_t> const &sizes)
{
  std::size_t const k = sizes.size();
  std::size_t const q = sizes.front() - 1;
  bool const        equal = std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s == q + 1; });
  if (!equal || q * q + q + 1 != k)
  {
    return std::nullopt;
  }
  return q;
}

void run_analyze_partition(PartitionArgs const &args, Common const &common)
{
  Stopwatch  clock;
  auto const sizes = parse_sizes(args.sizes);
  std::size_t m    = 0;
  for (auto s : sizes)
  {
    m += s;
  }
  std::size_t const k = sizes.size();
  auto const        q = plane_order_for(sizes);
  bool const        plane_shaped = q && vcb::detail::is_prime(*q);
  if (m > vcb::kMaxGoods && !plane_shaped)
  {
    throw vcb::BudgetExceeded("at most 64 goods are supported unless the partition is plane-shaped");
  }
  Json out;
  out["sizes"] = sizes;
  out["m"]     = m;
  out["k"]     = k;
  out["beta"]  = *std::max_element(sizes.begin(), sizes.end());
  if (k <= 8)
  {
    auto const result     = vcb::max_feasible_family(vcb::Partition::from_sizes(sizes), args.jobs);
    out["r_pi"]           = result.s;
    out["method"]         = "exhaustive search";
    out["witness_family"] = witness_family_json(result.witness);
  }
  else if (plane_shaped)
  {
    auto const lines      = vcb::plane_family(vcb::projective_plane(*q));
    out["r_pi"]           = lines.size();
    out["method"]         = "projective plane meets the upper bound";
    out["witness_family"] = witness_family_json(lines);
  }
  else
  {
    throw vcb::BudgetExceeded("exact r_pi needs at most 8 parts (or a plane-shaped partition of prime order)");
  }
  out["theorem3_bound"]           = vcb::io::rational_json(vcb::theorem3_bound(sizes));
  out["phi_k"]                    = vcb::io::rational_json(vcb::phi(k));
  out["communication_complexity"] = k < 63 ? Json(std::uint64_t{1} << k) : Json(nullptr);
  if (k <= 3)
  {
    out["closed_form"] = vcb::proposition1_r(vcb::Partition::from_sizes(sizes));
  }
  add_runtime(out, common, clock);
  emit(out, common);
}

// plane ---------------------------------------------------------------------------------

void run_plane(std::size_t q, Common const &common)
{
  auto const plane = vcb::projective_plane(q);
  auto const ax    = vcb::verify_plane_axioms(plane);
  Json       out;
  out["q"]      = q;
  out["points"] = plane.points;
  out["lines"]  = plane.lines;
  out["axioms"] = {{"counts", ax.counts}, {"incidence", ax.incidence}, {"uniqueness", ax.uniqueness}};
  emit(out, common);
}

// project -------------------------------------------------------------------------------

struct ProjectArgs
{
  std::string valuation;
  std::string family;
};

void run_project(ProjectArgs const &args, Common const &common)
{
  auto root = vcb::io::read_json_file(args.valuation);
  if (root.is_object() && !root.contains("valuations") && root.contains("kind"))
  {
    Json wrapped;
    wrapped["goods"]      = root["goods"];
    wrapped["valuations"] = Json::array({root});
    wrapped["valuations"][0].erase("goods");
    root = wrapped;
  }
  auto const inst  = vcb::io::parse_instance(root);
  auto const sigma = vcb::io::parse_family(vcb::io::read_json_file(args.family));
  if (!(sigma.universe() == inst.universe))
  {
    throw vcb::InvalidInput("family and valuation use different goods");
  }
  emit(vcb::io::profile_json(vcb::project_profile(inst.reported, sigma), inst.scale), common);
}

// reproduce -----------------------------------------------------------------------------

struct ReproduceArgs
{
  std::string                target;
  std::optional<std::size_t> q;
  std::size_t                jobs{1};
  std::string                format{"text"};
};

int run_reproduce(ReproduceArgs const &args, Common const &common)
{
  Stopwatch  clock;
  auto const reports = vcb::reproduce::run(args.target, args.q, args.jobs);
  bool       pass    = true;
  for (auto const &r : reports)
  {
    pass = pass && r.pass();
  }
  if (args.format == "text")
  {
    for (auto const &r : reports)
    {
      std::cout << r.text();
    }
    std::cout << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
    if (common.timing)
    {
      std::cout << "runtime: " << clock.seconds() << " s\n";
    }
  }
  else
  {
    Json out;
    out["target"]  = args.target;
    out["status"]  = pass ? "PASS" : "FAIL";
    out["reports"] = Json::array();
    for (auto const &r : reports)
    {
      out["reports"].push_back(r.json());
    }
    add_runtime(out, Common{args.format, common.timing}, clock);
    emit(out, Common{args.format, common.timing});
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"vcbundle: exact analysis of VC auctions and bundling equilibria"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timing", common.timing, "Include wall-clock runtime in the output");
  };

  AuctionArgs auction;
  auto       *auction_cmd = app.add_subcommand("auction", "Run the VC mechanism on an instance");
  auction_cmd->add_option("--instance", auction.instance, "Instance JSON")->required();
  auction_cmd->add_option("--family", auction.family, "Bundle family: buyers report their projections");
  auction_cmd->add_option("--tie", auction.tie, "canonical | seller | adversarial:i");
  add_common(auction_cmd);

  SigmaArgs sigma;
  auto     *sigma_cmd = app.add_subcommand("analyze-sigma", "Classify a bundle family and check equilibrium");
  sigma_cmd->add_option("--family", sigma.family, "Family JSON")->required();
  sigma_cmd->add_option("--profiles", sigma.profiles, "sweep | random:N");
  sigma_cmd->add_option("--mode", sigma.mode, "adversarial | canonical | seller | both");
  sigma_cmd->add_option("--buyers", sigma.buyers, "Buyers per random profile");
  sigma_cmd->add_option("--seed", sigma.seed, "Seed for random profiles");
  add_common(sigma_cmd);

  PartitionArgs partition;
  auto         *partition_cmd = app.add_subcommand("analyze-partition", "Exact r_pi for a partition shape");
  partition_cmd->add_option("--sizes", partition.sizes, "Comma-separated part sizes")->required();
  partition_cmd->add_option("--jobs", partition.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_common(partition_cmd);

  std::size_t q         = 0;
  auto       *plane_cmd = app.add_subcommand("plane", "Projective plane of order q");
  plane_cmd->add_option("--q", q, "Order: 0, 1 or a prime")->required();
  add_common(plane_cmd);

  ProjectArgs project;
  auto       *project_cmd = app.add_subcommand("project", "Project valuations onto a family");
  project_cmd->add_option("--valuation,--instance", project.valuation, "Valuation or instance JSON")->required();
  project_cmd->add_option("--family", project.family, "Family JSON")->required();
  add_common(project_cmd);

  ReproduceArgs reproduce;
  auto         *reproduce_cmd = app.add_subcommand("reproduce", "Run a built-in reproduction target");
  reproduce_cmd->add_option("target", reproduce.target, "Target name")
      ->required()
      ->check(CLI::IsMember(vcb::reproduce::targets()));
  reproduce_cmd->add_option("--q", reproduce.q, "Plane order for thm4");
  reproduce_cmd->add_option("--jobs", reproduce.jobs, "Worker threads")->check(CLI::PositiveNumber);
  reproduce_cmd->add_option("--format", reproduce.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  reproduce_cmd->add_flag("--timing", common.timing, "Include wall-clock runtime");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try
  {
    if (*auction_cmd)
    {
      run_auction(auction, common);
    }
    else if (*sigma_cmd)
    {
      run_analyze_sigma(sigma, common);
    }
    else if (*partition_cmd)
    {
      run_analyze_partition(partition, common);
    }
    else if (*plane_cmd)
    {
      run_plane(q, common);
    }
    else if (*project_cmd)
    {
      run_project(project, common);
    }
    else if (*reproduce_cmd)
    {
      return run_reproduce(reproduce, common);
    }
  }
  catch (vcb::InvalidInput const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  catch (vcb::BudgetExceeded const &e)
  {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  }
  catch (vcb::InvariantViolation const &e)
  {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
