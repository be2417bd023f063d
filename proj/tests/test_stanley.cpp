#include "doctest.h"

#include <functional>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "sqdepth/parse.hpp"
#include "sqdepth/stanley.hpp"

using namespace sqdepth;

namespace {

Monomial mono(std::initializer_list<int> idx, int n) {
  std::vector<int> v(idx);
  return Monomial::from_indices(v, n);
}

// Smallest |Γ(A)| - |A| over all nonempty subsets A of the left side.
int min_hall_surplus(const DivisibilityGraph& g) {
  const std::size_t nl = g.left.size();
  REQUIRE(nl <= 16);
  int best = 1 << 20;
  for (std::uint32_t a = 1; a < (1U << nl); ++a) {
    std::vector<bool> hit(g.right.size(), false);
    int size = 0, gamma = 0;
    for (std::size_t f = 0; f < nl; ++f) {
      if (!(a >> f & 1U)) continue;
      ++size;
      for (std::size_t b = 0; b < g.right.size(); ++b)
        if (g.left[f].divides(g.right[b]) && !hit[b]) {
          hit[b] = true;
          ++gamma;
        }
    }
    best = std::min(best, gamma - size);
  }
  return best;
}

// Kuhn's augmenting paths over a dense divisibility test.
std::size_t kuhn_matching(const DivisibilityGraph& g) {
  std::vector<int> mate(g.right.size(), -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment =
      [&](std::size_t f, std::vector<bool>& used) {
        for (std::size_t b = 0; b < g.right.size(); ++b) {
          if (!g.left[f].divides(g.right[b]) || used[b]) continue;
          used[b] = true;
          if (mate[b] < 0 || augment(static_cast<std::size_t>(mate[b]), used)) {
            mate[b] = static_cast<int>(f);
            return true;
          }
        }
        return false;
      };
  std::size_t size = 0;
  for (std::size_t f = 0; f < g.left.size(); ++f) {
    std::vector<bool> used(g.right.size(), false);
    if (augment(f, used)) ++size;
  }
  return size;
}

// Exhaustive interval partitions without pruning: max over partitions of the
// least top degree.
int exhaustive_sdepth(const FactorPair& pair) {
  std::vector<Mask> poset;
  for (Mask m = 0; m < (Mask{1} << pair.n()); ++m)
    if (pair.I().contains(Monomial(m)) && !pair.J().contains(Monomial(m))) poset.push_back(m);
  REQUIRE(poset.size() <= 14);
  std::map<Mask, std::size_t> index;
  for (std::size_t k = 0; k < poset.size(); ++k) index[poset[k]] = k;
  int best = -1;
  std::function<void(std::uint32_t, int)> go = [&](std::uint32_t covered, int value) {
    std::size_t u = 0;
    while (u < poset.size() && (covered >> u & 1U)) ++u;
    if (u == poset.size()) {
      best = std::max(best, value);
      return;
    }
    for (Mask v : poset) {
      if ((poset[u] & v) != poset[u]) continue;
      std::uint32_t mask = 0;
      bool ok = true;
      for (Mask w : poset)
        if ((poset[u] & w) == poset[u] && (w & v) == w) {
          if (covered >> index[w] & 1U) ok = false;
          mask |= 1U << index[w];
        }
      // Every monomial between u and v must lie in the poset.
      if (ok && (std::size_t{1} << popcount(v & ~poset[u])) ==
                    static_cast<std::size_t>(std::popcount(mask)))
        go(covered | mask, std::min(value, popcount(v)));
    }
  };
  go(0, 1 << 20);
  return best;
}

bool is_partition(const IntervalPartition& p, const std::vector<Monomial>& poset) {
  std::map<Mask, int> count;
  int value = 1 << 20;
  for (const auto& iv : p.intervals) {
    if (!iv.bottom.divides(iv.top)) return false;
    value = std::min(value, iv.top.degree());
    const Mask free = iv.top.bits() & ~iv.bottom.bits();
    for (Mask s = free;; s = (s - 1) & free) {
      ++count[iv.bottom.bits() | s];
      if (s == 0) break;
    }
  }
  if (value != p.value || count.size() != poset.size()) return false;
  for (Monomial m : poset)
    if (count[m.bits()] != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("divisibility graph of the worked examples") {
  SUBCASE("six-variable example") {
    const auto g = build_graph(fixtures::example_e2(), 2);
    CHECK(g.left.size() == 5);
    CHECK(g.right.size() == 4);
    CHECK(g.num_edges() == 8);
    std::vector<int> degree_of_right(g.right.size(), 0);
    for (const auto& adj : g.adjacency)
      for (auto b : adj) ++degree_of_right[b];
    for (int deg : degree_of_right) CHECK(deg == 2);
  }
  SUBCASE("four-variable example") {
    const int n = 4;
    const auto g = build_graph(fixtures::example_no(), 2);
    REQUIRE(g.left == std::vector<Monomial>{mono({1, 3}, n), mono({1, 4}, n), mono({2, 4}, n)});
    REQUIRE(g.right ==
            std::vector<Monomial>{mono({1, 2, 3}, n), mono({1, 2, 4}, n), mono({1, 3, 4}, n)});
    // x1x3 - {x1x2x3, x1x3x4}; x1x4 - {x1x2x4, x1x3x4}; x2x4 - {x1x2x4}.
    CHECK(g.adjacency[0] == std::vector<std::uint32_t>{0, 2});
    CHECK(g.adjacency[1] == std::vector<std::uint32_t>{1, 2});
    CHECK(g.adjacency[2] == std::vector<std::uint32_t>{1});
  }
  SUBCASE("no right side") {
    const auto pair = parse_pair("x1*x2", "x1*x2*x3", 3);
    const auto g = build_graph(pair, 2);
    CHECK(g.right.empty());
    CHECK(g.num_edges() == 0);
    const auto cert = hall_certificate(g);
    CHECK_FALSE(cert.is_complete());
    CHECK(cert.A == std::vector<Monomial>{mono({1, 2}, 3)});
    CHECK(cert.gamma.empty());
    CHECK(max_matching(g).size == 0);
  }
  SUBCASE("empty left side") {
    try {
      build_graph(fixtures::example_no(), 1);
      FAIL("expected EmptyLeftSide");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyLeftSide);
    }
  }
}

TEST_CASE("matchings and Hall certificates") {
  const auto e2 = build_graph(fixtures::example_e2(), 2);
  CHECK(max_matching(e2).size == 4);
  const auto violator = hall_certificate(e2);
  REQUIRE_FALSE(violator.is_complete());
  CHECK(violator.A == e2.left);
  CHECK(violator.gamma == e2.right);

  const auto no = build_graph(fixtures::example_no(), 2);
  CHECK(max_matching(no).size == 3);
  const auto complete = hall_certificate(no);
  REQUIRE(complete.is_complete());
  CHECK(complete.matching.size() == 3);
  for (const auto& [f, b] : complete.matching) CHECK(f.divides(b));

  const auto j = to_json(complete);
  CHECK(j.is_array());
  CHECK(j.size() == 3);
  CHECK(j[0][0] == nlohmann::json::array({1, 3}));
  const auto jv = to_json(violator);
  CHECK(jv["A"].size() == 5);
  CHECK(jv["gamma"].size() == 4);
}

TEST_CASE("sdepth equals indeg on the worked examples") {
  const auto e2 = sdepth_equals_indeg(fixtures::example_e2());
  CHECK(e2.d == 2);
  CHECK(e2.answer);
  REQUIRE(e2.witness_ideal.has_value());
  CHECK(*e2.witness_ideal == fixtures::example_e2().I());

  const auto no = sdepth_equals_indeg(fixtures::example_no());
  CHECK_FALSE(no.answer);
  CHECK_FALSE(no.witness_ideal.has_value());

  const auto gen = sdepth_equals_indeg(fixtures::example_gen());
  CHECK_FALSE(gen.answer);
  CHECK(gen.certificate.matching.size() == 6);

  CHECK_NOTHROW(sdepth_equals_indeg(fixtures::example_lemma_r_e()));
  try {
    sdepth_equals_indeg(parse_pair("x1, x2", "x1", 2));
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("brute force Stanley depth") {
  CHECK(brute_force_sdepth(parse_pair("x1, x2", "0", 2)) == 1);
  CHECK(brute_force_sdepth(fixtures::example_no()) == 3);
  const auto principal = best_interval_partition(parse_pair("x1", "0", 2));
  CHECK(principal.value == 2);
  REQUIRE(principal.intervals.size() == 1);
  CHECK(principal.intervals[0].bottom == mono({1}, 2));
  CHECK(principal.intervals[0].top == mono({1, 2}, 2));
  CHECK(brute_force_sdepth(fixtures::example_e2(), 64) == 2);

  try {
    brute_force_sdepth(parse_pair("x1", "0", 6));  // 32 monomials
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("property: Hall duality and violator correctness") {
  std::mt19937_64 rng(23);
  int complete = 0, violators = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);  // 3..7
    const int d = 1 + static_cast<int>(rng() % 2);
    const auto pair = fixtures::random_normalized_pair(rng, n, d, d, 8, 0.4);
    if (!pair) continue;
    const auto g = build_graph(*pair, pair->I().indeg());
    if (g.left.size() > 12) continue;
    const auto m = max_matching(g);
    REQUIRE(m.size == kuhn_matching(g));
    const auto cert = hall_certificate(g);
    const bool hall_holds = min_hall_surplus(g) >= 0;
    REQUIRE(cert.is_complete() == hall_holds);
    REQUIRE(cert.is_complete() == (m.size == g.left.size()));
    if (cert.is_complete()) {
      ++complete;
      std::vector<Monomial> tops;
      for (const auto& [f, b] : cert.matching) {
        REQUIRE(f.divides(b));
        tops.push_back(b);
      }
      std::sort(tops.begin(), tops.end());
      REQUIRE(std::adjacent_find(tops.begin(), tops.end()) == tops.end());
    } else {
      ++violators;
      REQUIRE(cert.gamma.size() < cert.A.size());
      REQUIRE(cert.gamma.size() == cert.A.size() - (g.left.size() - m.size));
      std::vector<Monomial> neighborhood;
      for (Monomial b : g.right)
        for (Monomial f : cert.A)
          if (f.divides(b)) {
            neighborhood.push_back(b);
            break;
          }
      REQUIRE(neighborhood == cert.gamma);
    }
  }
  CHECK(complete > 20);
  CHECK(violators > 20);
}

TEST_CASE("property: branch and bound matches exhaustive partitions") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);  // 2..5
    const auto i = fixtures::random_ideal(rng, n, 1, n, 4);
    const auto extra = fixtures::random_ideal(rng, n, 1, n, 4);
    const auto j = intersect(i, extra);
    if (j == i) continue;
    const FactorPair pair(i, j);
    std::vector<Monomial> poset;
    try {
      poset = factor_poset(pair, 14);
    } catch (const Error&) {
      continue;
    }
    const auto best = best_interval_partition(pair);
    REQUIRE(is_partition(best, poset));
    REQUIRE(best.value == exhaustive_sdepth(pair));
    REQUIRE(best.value >= i.indeg());
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("property: sdepth equals indeg iff a Hall violator exists") {
  std::mt19937_64 rng(31);
  int checked = 0, equal = 0;
  for (int trial = 0; trial < 2000 && checked < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);  // 3..5
    const int d = 1 + static_cast<int>(rng() % 2);
    const auto pair = fixtures::random_normalized_pair(rng, n, d, d + 1, 6, 0.5);
    if (!pair) continue;
    int brute = 0;
    try {
      brute = brute_force_sdepth(*pair, 25);
    } catch (const Error&) {
      continue;
    }
    const auto decision = sdepth_equals_indeg(*pair);
    REQUIRE((brute == decision.d) == decision.answer);
    REQUIRE(brute >= decision.d);
    equal += decision.answer;
    ++checked;
  }
  CHECK(checked >= 200);
  CHECK(equal > 10);
}

TEST_CASE("property: matching is invariant under generator order") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pair = fixtures::random_normalized_pair(rng, 6, 2, 2, 8, 0.3);
    if (!pair) continue;
    std::vector<Monomial> gens(pair->I().gens().begin(), pair->I().gens().end());
    std::shuffle(gens.begin(), gens.end(), rng);
    const FactorPair shuffled(minimalize(gens, 6), pair->J());
    const auto a = hall_certificate(build_graph(*pair, 2));
    const auto b = hall_certificate(build_graph(shuffled, 2));
    REQUIRE(to_json(a) == to_json(b));
  }
}
