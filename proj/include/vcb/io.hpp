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
#include "vcb/error.hpp"
#include "vcb/rational.hpp"
#include "vcb/sigma.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace vcb::io {

using Json = nlohmann::ordered_json;

/// A decimal literal as an exact fraction digits / 10^decimals.
struct Decimal
{
  std::int64_t digits{0};
  std::size_t  decimals{0};
};

inline Decimal parse_decimal(Json const &j, std::string const &where)
{
  if (j.is_number_unsigned() || j.is_number_integer())
  {
    if (j.is_number_integer() && j.get<std::int64_t>() < 0)
    {
      throw InvalidInput(where + ": values must be nonnegative");
    }
    return {j.get<std::int64_t>(), 0};
  }
  if (!j.is_number_float())
  {
    throw InvalidInput(where + ": expected a number");
  }
  double const x = j.get<double>();
  if (!std::isfinite(x) || x < 0)
  {
    throw InvalidInput(where + ": values must be finite and nonnegative");
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  if (ec != std::errc{})
  {
    throw InvalidInput(where + ": cannot represent number");
  }
  std::string  text(buf, end);
  Decimal      out;
  auto const   dot = text.find('.');
  std::string  whole = text;
  if (dot != std::string::npos)
  {
    whole        = text.substr(0, dot) + text.substr(dot + 1);
    out.decimals = text.size() - dot - 1;
  }
  if (out.decimals > 9 || whole.size() > 17)
  {
    throw BudgetExceeded(where + ": too many significant digits for exact scaling");
  }
  out.digits = std::stoll(whole);
  return out;
}

inline std::int64_t pow10(std::size_t e)
{
  std::int64_t p = 1;
  for (std::size_t i = 0; i < e; ++i)
  {
    p *= 10;
  }
  return p;
}

inline Value rescale(Decimal const &d, std::size_t decimals)
{
  Wide const v = static_cast<Wide>(d.digits) * pow10(decimals - d.decimals);
  if (v > std::numeric_limits<Value>::max() / 1024)
  {
    throw BudgetExceeded("scaled value too large");
  }
  return static_cast<Value>(v);
}

inline GoodsUniverse parse_goods(Json const &root)
{
  if (!root.is_object() || !root.contains("goods") || !root["goods"].is_array())
  {
    throw InvalidInput("missing \"goods\" array");
  }
  std::vector<std::string> labels;
  for (auto const &g : root["goods"])
  {
    if (!g.is_string())
    {
      throw InvalidInput("good labels must be strings");
    }
    labels.push_back(g.get<std::string>());
  }
  return GoodsUniverse(std::move(labels));
}

/// Valuations with every number as an unscaled decimal, before a common scale is chosen.
struct RawValuation
{
  bool                                 dense{false};
  std::vector<std::pair<Bundle, Decimal>> entries;
};

inline RawValuation parse_raw_valuation(Json const &j, GoodsUniverse const &u, std::string const &where)
{
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
  {
    throw InvalidInput(where + ": valuation needs a \"kind\"");
  }
  auto const   kind = j["kind"].get<std::string>();
  RawValuation out;
  if (kind == "dense")
  {
    out.dense = true;
    if (!j.contains("values") || !j["values"].is_object())
    {
      throw InvalidInput(where + ": dense valuation needs a \"values\" object");
    }
    for (auto const &[key, val] : j["values"].items())
    {
      out.entries.emplace_back(u.parse(key), parse_decimal(val, where + " bundle \"" + key + "\""));
    }
  }
  else if (kind == "atoms")
  {
    if (!j.contains("atoms") || !j["atoms"].is_array())
    {
      throw InvalidInput(where + ": atom valuation needs an \"atoms\" array");
    }
    for (auto const &a : j["atoms"])
    {
      if (!a.is_object() || !a.contains("bundle") || !a["bundle"].is_string() || !a.contains("weight"))
      {
        throw InvalidInput(where + ": each atom needs \"bundle\" and \"weight\"");
      }
      out.entries.emplace_back(u.parse(a["bundle"].get<std::string>()), parse_decimal(a["weight"], where));
    }
  }
  else
  {
    throw InvalidInput(where + ": unknown valuation kind \"" + kind + "\"");
  }
  return out;
}

inline Valuation build_valuation(RawValuation const &raw, std::size_t m, std::size_t decimals,
                                 std::string const &where)
{
  if (raw.dense)
  {
    if (m > kMaxDenseGoods)
    {
      throw BudgetExceeded(where + ": dense valuations support at most 14 goods");
    }
    std::vector<Value> table(std::size_t{1} << m, 0);
    std::vector<bool>  seen(table.size(), false);
    for (auto const &[b, d] : raw.entries)
    {
      if (seen[b.mask()])
      {
        throw InvalidInput(where + ": bundle listed twice");
      }
      seen[b.mask()]  = true;
      table[b.mask()] = rescale(d, decimals);
    }
    return Valuation::dense(m, std::move(table));
  }
  std::vector<Atom> atoms;
  for (auto const &[b, d] : raw.entries)
  {
    atoms.push_back({b, rescale(d, decimals)});
  }
  return Valuation::atoms(m, std::move(atoms));
}

struct Instance
{
  GoodsUniverse          universe;
  Value                  scale{1};  ///< every value in the profiles is the input times scale
  Profile                reported;
  std::optional<Profile> truth;
};

/// {"goods", "valuations", optional "true_valuations"}; all numbers share one power-of-ten
/// scale so decimal inputs stay exact. Bundles missing from a dense table are worth 0.
inline Instance parse_instance(Json const &root)
{
  GoodsUniverse const u = parse_goods(root);
  auto read = [&](char const *key) {
    std::vector<RawValuation> out;
    if (!root[key].is_array() || root[key].empty())
    {
      throw InvalidInput(std::string("\"") + key + "\" must be a nonempty array");
    }
    std::size_t i = 0;
    for (auto const &j : root[key])
    {
      out.push_back(parse_raw_valuation(j, u, std::string(key) + "[" + std::to_string(++i) + "]"));
    }
    return out;
  };
  if (!root.contains("valuations"))
  {
    throw InvalidInput("missing \"valuations\"");
  }
  auto const reported = read("valuations");
  std::optional<std::vector<RawValuation>> truth;
  if (root.contains("true_valuations"))
  {
    truth = read("true_valuations");
  }
  std::size_t decimals = 0;
  using Group = std::vector<RawValuation> const *;
  for (Group group : {Group{&reported}, truth ? Group{&*truth} : Group{nullptr}})
  {
    if (group == nullptr)
    {
      continue;
    }
    for (auto const &raw : *group)
    {
      for (auto const &e : raw.entries)
      {
        decimals = std::max(decimals, e.second.decimals);
      }
    }
  }
  auto build = [&](std::vector<RawValuation> const &raws, char const *key) {
    std::vector<Valuation> vs;
    for (std::size_t i = 0; i < raws.size(); ++i)
    {
      vs.push_back(build_valuation(raws[i], u.size(), decimals, std::string(key) + "[" + std::to_string(i + 1) + "]"));
    }
    return Profile(u, std::move(vs));
  };
  Instance out{u, pow10(decimals), build(reported, "valuations"), std::nullopt};
  if (truth)
  {
    out.truth = build(*truth, "true_valuations");
    if (out.truth->buyers() != out.reported.buyers())
    {
      throw InvalidInput("\"true_valuations\" and \"valuations\" differ in length");
    }
  }
  return out;
}

inline BundleFamily parse_family(Json const &root)
{
  GoodsUniverse const u = parse_goods(root);
  if (!root.contains("bundles") || !root["bundles"].is_array())
  {
    throw InvalidInput("missing \"bundles\" array");
  }
  std::vector<Bundle> bs;
  for (auto const &b : root["bundles"])
  {
    if (!b.is_string())
    {
      throw InvalidInput("bundles must be strings");
    }
    bs.push_back(u.parse(b.get<std::string>()));
  }
  return BundleFamily(u, std::move(bs));
}

inline Json read_json_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw InvalidInput("cannot open " + path);
  }
  try
  {
    return Json::parse(in);
  }
  catch (Json::parse_error const &e)
  {
    throw InvalidInput(path + ": " + e.what());
  }
}

/// Scaled value back to a JSON number: an integer when exact, else the decimal.
inline Json value_json(Value v, Value scale)
{
  if (scale == 1 || v % scale == 0)
  {
    return v / scale;
  }
  return static_cast<double>(v) / static_cast<double>(scale);
}

inline Json rational_json(Rational const &r)
{
  return r.str();
}

inline Json allocation_json(Allocation const &a, GoodsUniverse const &u)
{
  Json out = Json::object();
  for (std::size_t i = 0; i < a.buyers(); ++i)
  {
    out[std::to_string(i + 1)] = u.format(a[i]);
  }
  out["seller"] = u.format(a.seller());
  return out;
}

inline Json outcome_json(AuctionOutcome const &o, GoodsUniverse const &u, Value scale)
{
  Json out;
  out["allocation"] = allocation_json(o.allocation, u);
  out["payments"]   = Json::array();
  for (auto c : o.payments)
  {
    out["payments"].push_back(value_json(c, scale));
  }
  out["surplus"]   = value_json(o.surplus, scale);
  out["revenue"]   = value_json(o.revenue, scale);
  out["utilities"] = Json::array();
  for (auto x : o.utilities)
  {
    out["utilities"].push_back(value_json(x, scale));
  }
  return out;
}

inline Json family_json(BundleFamily const &sigma)
{
  Json out;
  out["goods"]   = sigma.universe().labels();
  out["bundles"] = Json::array();
  for (auto b : sigma)
  {
    out["bundles"].push_back(sigma.universe().format(b));
  }
  return out;
}

inline Json violation_json(FamilyViolation const &w, GoodsUniverse const &u)
{
  Json out;
  if (w.kind == FamilyViolation::Kind::missing_complement)
  {
    out["kind"]    = "missing_complement";
    out["bundle"]  = u.format(w.first);
    out["missing"] = u.format(w.first.complement(u.size()));
  }
  else
  {
    out["kind"]    = "missing_disjoint_union";
    out["bundles"] = {u.format(w.first), u.format(w.second)};
    out["missing"] = u.format(w.first | w.second);
  }
  return out;
}

inline Json classification_json(FamilyClassification const &c, GoodsUniverse const &u)
{
  Json out;
  out["is_quasi_field"] = c.is_quasi_field;
  out["is_field"]       = c.is_field;
  out["witness"]        = c.witness ? violation_json(*c.witness, u) : Json(nullptr);
  return out;
}

inline Json valuation_json(Valuation const &v, GoodsUniverse const &u, Value scale)
{
  Json out;
  if (v.is_dense())
  {
    out["kind"]   = "dense";
    out["values"] = Json::object();
    auto const t  = v.table();
    for (std::size_t mask = 0; mask < t.size(); ++mask)
    {
      out["values"][u.format(Bundle(mask))] = value_json(t[mask], scale);
    }
  }
  else
  {
    out["kind"]  = "atoms";
    out["atoms"] = Json::array();
    for (auto const &a : v.atom_list())
    {
      out["atoms"].push_back({{"bundle", u.format(a.bundle)}, {"weight", value_json(a.weight, scale)}});
    }
  }
  return out;
}

inline Json profile_json(Profile const &p, Value scale)
{
  Json out;
  out["goods"]      = p.universe().labels();
  out["valuations"] = Json::array();
  for (auto const &v : p.valuations())
  {
    out["valuations"].push_back(valuation_json(v, p.universe(), scale));
  }
  return out;
}

namespace detail {

inline void flatten(Json const &j, std::string const &prefix, std::vector<std::pair<std::string, std::string>> &rows)
{
  if (j.is_object())
  {
    for (auto const &[k, v] : j.items())
    {
      flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    }
  }
  else if (j.is_array())
  {
    for (std::size_t i = 0; i < j.size(); ++i)
    {
      flatten(j[i], prefix + "." + std::to_string(i + 1), rows);
    }
    if (j.empty())
    {
      rows.emplace_back(prefix, "");
    }
  }
  else
  {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline std::string csv_cell(std::string const &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (char c : s)
  {
    out += c;
    if (c == '"')
    {
      out += '"';
    }
  }
  return out + "\"";
}

}  // namespace detail

/// Two-column CSV with one row per JSON leaf, keyed by its dotted path (arrays 1-based).
inline std::string to_csv(Json const &j)
{
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(j, "", rows);
  std::ostringstream out;
  out << "field,value\n";
  for (auto const &[k, v] : rows)
  {
    out << detail::csv_cell(k) << ',' << detail::csv_cell(v) << '\n';
  }
  return out.str();
}

}  // namespace vcb::io
