#include "sqdepth/stanley.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "sqdepth/parse.hpp"

namespace sqdepth {

std::size_t DivisibilityGraph::num_edges() const noexcept {
  std::size_t total = 0;
  for (const auto& a : adjacency) total += a.size();
  return total;
}

DivisibilityGraph build_graph(const FactorPair& pair, int d) {
  DivisibilityGraph g;
  g.n = pair.n();
  g.d = d;
  g.left = enumerate_degree(pair.I(), d);
  if (g.left.empty())
    throw Error(ErrorCode::EmptyLeftSide,
                "I has no square-free monomial of degree " + std::to_string(d));
  g.right = factor_monomials(pair, d + 1);
  g.adjacency.resize(g.left.size());
  for (std::size_t f = 0; f < g.left.size(); ++f) {
    const Mask base = g.left[f].bits();
    for (int v = 0; v < g.n; ++v) {
      const Mask bit = Mask{1} << v;
      if (base & bit) continue;
      const Monomial b(base | bit);
      const auto it = std::lower_bound(g.right.begin(), g.right.end(), b);
      if (it != g.right.end() && *it == b)
        g.adjacency[f].push_back(static_cast<std::uint32_t>(it - g.right.begin()));
    }
    std::sort(g.adjacency[f].begin(), g.adjacency[f].end());
  }
  return g;
}

Matching max_matching(const DivisibilityGraph& graph) {
  const std::size_t nl = graph.left.size(), nr = graph.right.size();
  Matching m;
  m.mate_of_left.assign(nl, kUnmatched);
  m.mate_of_right.assign(nr, kUnmatched);
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> layer(nl);

  // Layers left vertices by alternating distance from the free ones; true
  // when some free right vertex is reachable.
  const auto bfs = [&] {
    std::deque<std::size_t> queue;
    for (std::size_t f = 0; f < nl; ++f) {
      layer[f] = m.mate_of_left[f] == kUnmatched ? 0 : kInf;
      if (layer[f] == 0) queue.push_back(f);
    }
    bool found = false;
    while (!queue.empty()) {
      const std::size_t f = queue.front();
      queue.pop_front();
      for (std::uint32_t b : graph.adjacency[f]) {
        const std::int32_t next = m.mate_of_right[b];
        if (next == kUnmatched) {
          found = true;
        } else if (layer[static_cast<std::size_t>(next)] == kInf) {
          layer[static_cast<std::size_t>(next)] = layer[f] + 1;
          queue.push_back(static_cast<std::size_t>(next));
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> cursor(nl);
  const auto dfs = [&](auto&& self, std::size_t f) -> bool {
    for (; cursor[f] < graph.adjacency[f].size(); ++cursor[f]) {
      const std::uint32_t b = graph.adjacency[f][cursor[f]];
      const std::int32_t next = m.mate_of_right[b];
      if (next == kUnmatched ||
          (layer[static_cast<std::size_t>(next)] == layer[f] + 1 &&
           self(self, static_cast<std::size_t>(next)))) {
        m.mate_of_left[f] = static_cast<std::int32_t>(b);
        m.mate_of_right[b] = static_cast<std::int32_t>(f);
        ++cursor[f];
        return true;
      }
    }
    layer[f] = kInf;
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (std::size_t f = 0; f < nl; ++f)
      if (m.mate_of_left[f] == kUnmatched && dfs(dfs, f)) ++m.size;
  }
  return m;
}

HallCertificate hall_certificate(const DivisibilityGraph& graph) {
  const Matching m = max_matching(graph);
  HallCertificate cert;
  if (m.size == graph.left.size()) {
    cert.kind = HallCertificate::Kind::CompleteMatching;
    for (std::size_t f = 0; f < graph.left.size(); ++f)
      cert.matching.emplace_back(
          graph.left[f], graph.right[static_cast<std::size_t>(m.mate_of_left[f])]);
    return cert;
  }

  // Every neighbor of a reached left vertex is matched (the matching is
  // maximum), and its mate is reached too, so |gamma| = |A| - deficiency.
  cert.kind = HallCertificate::Kind::Violator;
  std::vector<bool> in_a(graph.left.size(), false), in_gamma(graph.right.size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t f = 0; f < graph.left.size(); ++f)
    if (m.mate_of_left[f] == kUnmatched) {
      in_a[f] = true;
      stack.push_back(f);
    }
  while (!stack.empty()) {
    const std::size_t f = stack.back();
    stack.pop_back();
    for (std::uint32_t b : graph.adjacency[f]) {
      if (in_gamma[b]) continue;
      in_gamma[b] = true;
      const auto next = static_cast<std::size_t>(m.mate_of_right[b]);
      if (!in_a[next]) {
        in_a[next] = true;
        stack.push_back(next);
      }
    }
  }
  for (std::size_t f = 0; f < graph.left.size(); ++f)
    if (in_a[f]) cert.A.push_back(graph.left[f]);
  for (std::size_t b = 0; b < graph.right.size(); ++b)
    if (in_gamma[b]) cert.gamma.push_back(graph.right[b]);
  if (cert.gamma.size() >= cert.A.size())
    throw Error(ErrorCode::Internal, "alternating reachability gave no Hall violator");
  return cert;
}

nlohmann::json to_json(const HallCertificate& certificate) {
  if (certificate.is_complete()) {
    auto out = nlohmann::json::array();
    for (const auto& [f, b] : certificate.matching)
      out.push_back(nlohmann::json::array({to_json(f), to_json(b)}));
    return out;
  }
  return {{"A", to_json(std::span<const Monomial>(certificate.A))},
          {"gamma", to_json(std::span<const Monomial>(certificate.gamma))}};
}

SdepthDecision sdepth_equals_indeg(const FactorPair& pair) {
  SdepthDecision out;
  out.d = pair.I().indeg();
  for (Monomial g : pair.J().gens())
    if (g.degree() <= out.d)
      throw Error(ErrorCode::NotNormalized,
                  "J has generator " + g.to_string() + " of degree <= " +
                      std::to_string(out.d) + "; normalize the pair first");
  const auto graph = build_graph(pair, out.d);
  out.certificate = hall_certificate(graph);
  out.answer = !out.certificate.is_complete();
  if (out.answer) {
    auto witness = minimalize(out.certificate.A, pair.n());
    const std::size_t lhs = rho(witness, out.d);
    const std::size_t rhs =
        rho(witness, out.d + 1) - rho(intersect(witness, pair.J()), out.d + 1);
    if (lhs <= rhs)
      throw Error(ErrorCode::Internal, "witness ideal fails the r > s inequality");
    out.witness_ideal = std::move(witness);
  }
  return out;
}

std::vector<Monomial> factor_poset(const FactorPair& pair, std::size_t limit) {
  // I \ J is reachable from the generators of I by adding variables without
  // entering J, since J is closed upward.
  const auto in_factor = [&](Mask m) {
    return pair.I().contains(Monomial(m)) && !pair.J().contains(Monomial(m));
  };
  std::vector<Mask> seen;
  std::vector<Mask> stack;
  const auto visit = [&](Mask m) {
    if (std::find(seen.begin(), seen.end(), m) != seen.end()) return;
    seen.push_back(m);
    if (seen.size() > limit)
      throw Error(ErrorCode::TooLarge, "I \\ J has more than " +
                                           std::to_string(limit) + " monomials");
    stack.push_back(m);
  };
  for (Monomial g : pair.I().gens())
    if (in_factor(g.bits())) visit(g.bits());
  while (!stack.empty()) {
    const Mask m = stack.back();
    stack.pop_back();
    for (int v = 0; v < pair.n(); ++v) {
      const Mask up = m | (Mask{1} << v);
      if (up != m && in_factor(up)) visit(up);
    }
  }
  std::vector<Monomial> out;
  out.reserve(seen.size());
  for (Mask m : seen) out.emplace_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

class PartitionSearch {
 public:
  explicit PartitionSearch(std::vector<Monomial> poset) : poset_(std::move(poset)) {
    for (std::size_t k = 0; k < poset_.size(); ++k) index_.emplace(poset_[k].bits(), k);
    // All singletons form a partition whose value is the least degree.
    best_value_ = poset_.front().degree();
    for (Monomial m : poset_) best_.intervals.push_back({m, m});
    best_.value = best_value_;
    // Tops above u, largest degree first so good partitions are found early.
    tops_.resize(poset_.size());
    for (std::size_t u = 0; u < poset_.size(); ++u) {
      for (std::size_t v = 0; v < poset_.size(); ++v)
        if (poset_[u].divides(poset_[v])) tops_[u].push_back(v);
      std::stable_sort(tops_[u].begin(), tops_[u].end(), [&](std::size_t x, std::size_t y) {
        return poset_[x].degree() > poset_[y].degree();
      });
    }
  }

  IntervalPartition run() {
    search(0, std::numeric_limits<int>::max());
    return best_;
  }

 private:
  // covered holds one bit per poset index; the interval [u, v] is free when
  // every element between u and v is uncovered.
  std::optional<std::uint64_t> interval_mask(std::size_t u, std::size_t v,
                                             std::uint64_t covered) const {
    const Mask low = poset_[u].bits();
    const Mask free_vars = poset_[v].bits() & ~low;
    std::uint64_t mask = 0;
    for (Mask s = free_vars;; s = (s - 1) & free_vars) {
      const auto it = index_.find(low | s);
      if (it == index_.end()) return std::nullopt;
      const std::uint64_t bit = std::uint64_t{1} << it->second;
      if (covered & bit) return std::nullopt;
      mask |= bit;
      if (s == 0) break;
    }
    return mask;
  }

  void search(std::uint64_t covered, int current) {
    std::size_t u = 0;
    while (u < poset_.size() && (covered >> u & 1U)) ++u;
    if (u == poset_.size()) {
      if (current > best_value_) {
        best_value_ = current;
        best_.intervals = chosen_;
        best_.value = current;
      }
      return;
    }
    for (std::size_t v : tops_[u]) {
      const int deg = poset_[v].degree();
      if (deg <= best_value_) break;
      const auto mask = interval_mask(u, v, covered);
      if (!mask) continue;
      chosen_.push_back({poset_[u], poset_[v]});
      search(covered | *mask, std::min(current, deg));
      chosen_.pop_back();
    }
  }

  std::vector<Monomial> poset_;
  std::unordered_map<Mask, std::size_t> index_;
  std::vector<std::vector<std::size_t>> tops_;
  std::vector<Interval> chosen_;
  IntervalPartition best_;
  int best_value_ = 0;
};

}  // namespace

IntervalPartition best_interval_partition(const FactorPair& pair, std::size_t limit) {
  if (limit > 64)
    throw Error(ErrorCode::InvalidArgument, "poset limit is capped at 64 elements");
  auto poset = factor_poset(pair, limit);
  return PartitionSearch(std::move(poset)).run();
}

}  // namespace sqdepth
