#pragma once

// Worked examples used across the test suites.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "sqdepth/core.hpp"
#include "sqdepth/parse.hpp"

namespace fixtures {

using namespace sqdepth;

inline const char* kE2I = "x1*x6, x1*x5, x1*x3, x3*x4, x2*x4";
inline const char* kE2J =
    "x1*x2*x4, x1*x2*x5, x1*x2*x3, x1*x2*x6, x1*x3*x6, x1*x4*x5, x1*x4*x6, "
    "x2*x4*x5, x2*x4*x6, x3*x4*x5, x3*x4*x6";

inline FactorPair example_e2() { return parse_pair(kE2I, kE2J, 6); }

inline FactorPair example_no() {
  return parse_pair("x1*x3, x2*x4, x1*x4", "x2*x3*x4", 4);
}

inline FactorPair example_gen() {
  return parse_pair(
      "x1*x5, x2*x3, x3*x4, x1*x6, x1*x4, x1*x2",
      "x1*x2*x4, x1*x2*x5, x1*x3*x5, x1*x3*x6, x1*x4*x6, x2*x3*x5, x2*x3*x6, "
      "x3*x4*x5, x3*x4*x6",
      6);
}

/// (x2)/(x2x4) and (x2)/(x2x4, x1x2x3) over four variables.
inline FactorPair example_lemma_r_e() { return parse_pair("x2", "x2*x4", 4); }
inline FactorPair example_lemma_r_ef() {
  return parse_pair("x2", "x2*x4, x1*x2*x3", 4);
}

/// L = (J + x5 I) for the Example no data, over five variables.
inline MonomialIdeal remark_im_l() {
  return parse_ideal("x2*x3*x4, x1*x3*x5, x2*x4*x5, x1*x4*x5", 5);
}

inline FactorPair prop2_case_equal() { return parse_pair("x1, x2, x3", "x1*x2", 3); }
inline FactorPair prop2_case_distinct() {
  return parse_pair("x1*x4, x2*x3, x3*x4", "x1*x2*x3, x1*x2*x4", 4);
}

/// Minimal non-faces of the six-vertex triangulation of the real projective
/// plane (every pair is an edge; ten triangles).
inline const std::vector<std::vector<int>>& rp2_facets() {
  static const std::vector<std::vector<int>> facets = {
      {1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
      {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}};
  return facets;
}

inline MonomialIdeal rp2_ideal() {
  std::vector<Monomial> nonfaces;
  for_each_subset_of_size(6, 3, [&](Mask m) {
    bool face = false;
    for (const auto& f : rp2_facets())
      if (Monomial::from_indices(f, 6).bits() == m) face = true;
    if (!face) nonfaces.emplace_back(m);
  });
  return minimalize(nonfaces, 6);
}

/// Random ideal with up to `max_gens` generators of degrees in [lo, hi].
inline MonomialIdeal random_ideal(std::mt19937_64& rng, int n, int lo, int hi,
                                  int max_gens) {
  std::uniform_int_distribution<int> count(1, max_gens);
  std::uniform_int_distribution<int> degree(lo, std::min(hi, n));
  std::uniform_int_distribution<int> var(0, n - 1);
  std::vector<Monomial> gens;
  const int k = count(rng);
  for (int t = 0; t < k; ++t) {
    const int deg = degree(rng);
    Mask m = 0;
    while (popcount(m) < deg) m |= Mask{1} << var(rng);
    gens.emplace_back(m);
  }
  return minimalize(gens, n);
}

inline bool brute_contains(const MonomialIdeal& ideal, Mask m) {
  for (Monomial g : ideal.gens())
    if ((g.bits() & m) == g.bits()) return true;
  return false;
}

}  // namespace fixtures

namespace fixtures {

/// J generated by a random subset of the degree-(d+1) and degree-(d+2)
/// monomials of I, d = indeg(I); nullopt when J would equal I.
inline std::optional<FactorPair> random_normalized_pair(std::mt19937_64& rng, int n,
                                                        int lo, int hi, int max_gens,
                                                        double density) {
  const auto i = random_ideal(rng, n, lo, hi, max_gens);
  const int d = i.indeg();
  std::bernoulli_distribution pick(density);
  std::vector<Monomial> j;
  for (int e = d + 1; e <= std::min(n, d + 2); ++e)
    for (Monomial m : enumerate_degree(i, e))
      if (pick(rng)) j.push_back(m);
  auto jj = minimalize(j, n);
  bool proper = false;
  for (Monomial g : i.gens())
    if (!jj.contains(g)) proper = true;
  if (!proper) return std::nullopt;
  return FactorPair(i, jj);
}

}  // namespace fixtures
