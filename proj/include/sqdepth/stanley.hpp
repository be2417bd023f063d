#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "sqdepth/core.hpp"

namespace sqdepth {

/// Bipartite divisibility graph between the degree-d monomials of I (left)
/// and the degree-(d+1) monomials of I \ J (right).
struct DivisibilityGraph {
  int n = 0;
  int d = 0;
  std::vector<Monomial> left;
  std::vector<Monomial> right;
  /// adjacency[f] lists right indices b with left[f] | right[b], ascending.
  std::vector<std::vector<std::uint32_t>> adjacency;

  std::size_t num_edges() const noexcept;
};

/// Throws EmptyLeftSide when I has no degree-d monomial.
DivisibilityGraph build_graph(const FactorPair& pair, int d);

inline constexpr std::int32_t kUnmatched = -1;

struct Matching {
  std::vector<std::int32_t> mate_of_left;
  std::vector<std::int32_t> mate_of_right;
  std::size_t size = 0;
};

/// Hopcroft-Karp. Deterministic for a fixed graph.
Matching max_matching(const DivisibilityGraph& graph);

struct HallCertificate {
  enum class Kind { CompleteMatching, Violator };
  Kind kind = Kind::CompleteMatching;
  /// CompleteMatching: (f, b) for every left vertex, in left order.
  std::vector<std::pair<Monomial, Monomial>> matching;
  /// Violator: |gamma| < |A| and gamma is exactly the neighborhood of A.
  std::vector<Monomial> A;
  std::vector<Monomial> gamma;

  bool is_complete() const noexcept { return kind == Kind::CompleteMatching; }
};

/// A complete matching when one exists, otherwise the left vertices
/// reachable by alternating paths from the unmatched ones, with their
/// neighborhood.
HallCertificate hall_certificate(const DivisibilityGraph& graph);

/// Matching as [[f, b], ...]; violator as {"A": [...], "gamma": [...]}.
nlohmann::json to_json(const HallCertificate& certificate);

struct SdepthDecision {
  int d = 0;
  /// sdepth I/J == d.
  bool answer = false;
  HallCertificate certificate;
  /// The ideal generated by the violator set, present when answer is true.
  std::optional<MonomialIdeal> witness_ideal;
};

/// Decides sdepth I/J == indeg(I). Throws NotNormalized when J has a
/// generator of degree <= indeg(I).
SdepthDecision sdepth_equals_indeg(const FactorPair& pair);

struct Interval {
  Monomial bottom;
  Monomial top;
};

struct IntervalPartition {
  std::vector<Interval> intervals;
  /// Least top degree over the intervals.
  int value = 0;
};

inline constexpr std::size_t kDefaultPosetLimit = 30;

/// The monomials of I \ J in canonical order. Throws TooLarge when there are
/// more than `limit`.
std::vector<Monomial> factor_poset(const FactorPair& pair, std::size_t limit);

/// An interval partition of I \ J maximizing the least top degree, found by
/// branch and bound. Throws TooLarge when the poset exceeds `limit`.
IntervalPartition best_interval_partition(const FactorPair& pair,
                                          std::size_t limit = kDefaultPosetLimit);

inline int brute_force_sdepth(const FactorPair& pair,
                              std::size_t limit = kDefaultPosetLimit) {
  return best_interval_partition(pair, limit).value;
}

}  // namespace sqdepth
