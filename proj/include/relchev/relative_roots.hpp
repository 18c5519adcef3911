// The projection pi_{J,Gamma} from the root lattice onto the quotient by
// <D \ J; alpha - sigma(alpha)> and the resulting relative root system with
// positivity, heights, multiples, fibers, and closedness of subsets.
#pragma once

#include "relchev/root_data.hpp"

#include <map>
#include <set>

namespace relchev {

struct RelativeRootDatum {
  RootSystem source;
  std::vector<int> J;                     // indices into source.simple (positions 0..rank-1)
  std::vector<IVec> gamma;                // full automorphism group (permutations, incl. identity)
  int rel_rank = 0;                       // number of Gamma-orbits in J
  std::vector<int> orbit_of;              // per simple position: orbit index, or -1 for D \ J
  std::vector<IVec> rel_roots;            // Phi_P, fixed order: (height, lex) ascending
  std::vector<IVec> projected;            // per source root index: pi(root)

  int rel_index_of(const IVec& v) const {
    for (size_t i = 0; i < rel_roots.size(); ++i)
      if (rel_roots[i] == v) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline std::vector<IVec> close_group(size_t n, const std::vector<IVec>& gens) {
  IVec id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<IVec> seen{id};
  std::vector<IVec> queue{id};
  for (size_t q = 0; q < queue.size(); ++q) {
    for (const auto& g : gens) {
      IVec composed(n);
      for (size_t i = 0; i < n; ++i)
        composed[i] = g[static_cast<size_t>(queue[q][i])];
      if (seen.insert(composed).second) queue.push_back(composed);
    }
  }
  return {queue.begin(), queue.end()};
}

}  // namespace detail

// pi of a coefficient vector (over the simple base) of the source system
inline IVec project_coeffs(const RelativeRootDatum& d, const IVec& coeffs) {
  IVec out(static_cast<size_t>(d.rel_rank), 0);
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (d.orbit_of[i] >= 0) out[static_cast<size_t>(d.orbit_of[i])] += coeffs[i];
  return out;
}

inline RelativeRootDatum relative_projection(const RootSystem& src, const std::vector<int>& J,
                                             const std::vector<IVec>& gamma_gens) {
  RelativeRootDatum d;
  d.source = src;
  d.J = J;
  size_t n = src.simple.size();
  d.gamma = detail::close_group(n, gamma_gens);
  std::vector<char> inJ(n, 0);
  for (int j : J) {
    if (j < 0 || static_cast<size_t>(j) >= n)
      fail(RingError::Code::JNotInvariant, "J index out of range");
    inJ[static_cast<size_t>(j)] = 1;
  }
  for (const auto& g : d.gamma)
    for (int j : J)
      if (!inJ[static_cast<size_t>(g[static_cast<size_t>(j)])])
        fail(RingError::Code::JNotInvariant, "J is not Gamma-invariant");
  // Gamma-orbits of J, ordered by smallest member
  d.orbit_of.assign(n, -1);
  std::vector<int> sortedJ = J;
  std::sort(sortedJ.begin(), sortedJ.end());
  for (int j : sortedJ) {
    if (d.orbit_of[static_cast<size_t>(j)] >= 0) continue;
    int orbit = d.rel_rank++;
    for (const auto& g : d.gamma) d.orbit_of[static_cast<size_t>(g[static_cast<size_t>(j)])] = orbit;
  }
  // project every root
  std::set<IVec> rel;
  for (size_t i = 0; i < src.roots.size(); ++i) {
    IVec p = project_coeffs(d, src.simple_coeffs[i]);
    d.projected.push_back(p);
    if (std::any_of(p.begin(), p.end(), [](int x) { return x != 0; })) rel.insert(p);
  }
  d.rel_roots.assign(rel.begin(), rel.end());
  std::sort(d.rel_roots.begin(), d.rel_roots.end(), [](const IVec& a, const IVec& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return d;
}

inline int relative_height(const RelativeRootDatum& d, const IVec& alpha) {
  if (d.rel_index_of(alpha) < 0)
    fail(RingError::Code::NotARelativeRoot, "relative_height: not a relative root");
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

inline bool rel_is_positive(const IVec& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0) > 0;
}

// preimage pi^{-1}(i * alpha) within the source roots (indices, fixed order)
inline std::vector<int> fiber(const RelativeRootDatum& d, const IVec& alpha, int i) {
  if (d.rel_index_of(alpha) < 0)
    fail(RingError::Code::NotARelativeRoot, "fiber: not a relative root");
  IVec target(alpha.size());
  for (size_t k = 0; k < alpha.size(); ++k) target[k] = i * alpha[k];
  std::vector<int> out;
  for (size_t r = 0; r < d.source.roots.size(); ++r)
    if (d.projected[r] == target) out.push_back(static_cast<int>(r));
  return out;
}

// true iff for all a, b in Psi with a + b in Phi_P, a + b in Psi
inline bool is_closed(const RelativeRootDatum& d, const std::vector<IVec>& psi) {
  auto contains = [&](const IVec& v) {
    return std::find(psi.begin(), psi.end(), v) != psi.end();
  };
  for (const auto& a : psi)
    for (const auto& b : psi) {
      IVec s(a.size());
      for (size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
      if (d.rel_index_of(s) >= 0 && !contains(s)) return false;
    }
  return true;
}

}  // namespace relchev
