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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace vcb {

/// Finite projective plane of order q: q^2+q+1 points labelled 1..k and as many lines.
struct ProjectivePlane
{
  std::size_t                           q{0};
  std::size_t                           points{0};
  std::vector<std::vector<std::size_t>> lines;  ///< each sorted ascending
};

struct PlaneAxioms
{
  bool counts{false};     ///< |points| = |lines| = q^2+q+1
  bool incidence{false};  ///< every line has q+1 points, every point lies on q+1 lines
  bool uniqueness{false}; ///< two points share exactly one line, two lines exactly one point

  bool all() const noexcept
  {
    return counts && incidence && uniqueness;
  }
};

inline PlaneAxioms verify_plane_axioms(ProjectivePlane const &p)
{
  PlaneAxioms       out;
  std::size_t const k = p.q * p.q + p.q + 1;
  out.counts          = p.points == k && p.lines.size() == k;
  if (!out.counts)
  {
    return out;
  }
  std::vector<std::vector<bool>> on(k, std::vector<bool>(k + 1, false));
  out.incidence = true;
  std::vector<std::size_t> degree(k + 1, 0);
  for (std::size_t l = 0; l < k; ++l)
  {
    if (p.lines[l].size() != p.q + 1)
    {
      out.incidence = false;
    }
    for (auto pt : p.lines[l])
    {
      if (pt < 1 || pt > k || on[l][pt])
      {
        out.incidence = false;
        continue;
      }
      on[l][pt] = true;
      ++degree[pt];
    }
  }
  for (std::size_t pt = 1; pt <= k; ++pt)
  {
    if (degree[pt] != p.q + 1)
    {
      out.incidence = false;
    }
  }
  out.uniqueness = true;
  for (std::size_t a = 0; a < k && out.uniqueness; ++a)
  {
    for (std::size_t b = a + 1; b < k; ++b)
    {
      std::size_t lines_common = 0;
      std::size_t points_common = 0;
      for (std::size_t l = 0; l < k; ++l)
      {
        lines_common += (on[l][a + 1] && on[l][b + 1]) ? 1 : 0;
      }
      for (std::size_t pt = 1; pt <= k; ++pt)
      {
        points_common += (on[a][pt] && on[b][pt]) ? 1 : 0;
      }
      if (lines_common != 1 || points_common != 1)
      {
        out.uniqueness = false;
        break;
      }
    }
  }
  return out;
}

namespace detail {

inline bool is_prime(std::size_t q)
{
  if (q < 2)
  {
    return false;
  }
  for (std::size_t d = 2; d * d <= q; ++d)
  {
    if (q % d == 0)
    {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Orders 0 (one point), 1 (triangle) and primes (PG(2, q) over Z/q). Prime powers with
/// exponent > 1 would need GF(p^l) arithmetic and are rejected.
inline ProjectivePlane projective_plane(std::size_t q)
{
  ProjectivePlane p;
  p.q      = q;
  p.points = q * q + q + 1;
  if (q == 0)
  {
    p.lines = {{1}};
  }
  else if (q == 1)
  {
    p.lines = {{1, 2}, {2, 3}, {1, 3}};
  }
  else if (detail::is_prime(q))
  {
    if (q > 61)
    {
      throw BudgetExceeded("projective plane order too large");
    }
    // Normalized representatives of the 1-dimensional subspaces of (Z/q)^3:
    // first nonzero coordinate equal to 1.
    std::vector<std::array<std::size_t, 3>> reps;
    for (std::size_t y = 0; y < q; ++y)
    {
      for (std::size_t z = 0; z < q; ++z)
      {
        reps.push_back({1, y, z});
      }
    }
    for (std::size_t z = 0; z < q; ++z)
    {
      reps.push_back({0, 1, z});
    }
    reps.push_back({0, 0, 1});
    // Lines are the orthogonal complements of the same representatives.
    for (auto const &n : reps)
    {
      std::vector<std::size_t> line;
      for (std::size_t i = 0; i < reps.size(); ++i)
      {
        auto const &x = reps[i];
        if ((n[0] * x[0] + n[1] * x[1] + n[2] * x[2]) % q == 0)
        {
          line.push_back(i + 1);
        }
      }
      p.lines.push_back(std::move(line));
    }
  }
  else
  {
    throw InvalidInput("unsupported projective plane order " + std::to_string(q) +
                       " (supported: 0, 1 and primes)");
  }
  if (!verify_plane_axioms(p).all())
  {
    throw InvariantViolation("constructed plane violates the projective plane axioms");
  }
  return p;
}

}  // namespace vcb
