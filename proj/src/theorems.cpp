#include "sqdepth/theorems.hpp"

#include <algorithm>

#include "sqdepth/parse.hpp"

namespace sqdepth {

NormalizedPair normalize_pair(const FactorPair& pair) {
  const int n = pair.n();
  std::vector<Monomial> kept;
  std::vector<Monomial> in_j;
  for (Monomial g : pair.I().gens())
    (pair.J().contains(g) ? in_j : kept).push_back(g);
  // kept is nonempty since J ⊊ I.
  const auto reduced = minimalize(kept, n);
  const int d = reduced.indeg();

  std::vector<Monomial> low, high;
  for (Monomial g : reduced.gens()) (g.degree() == d ? low : high).push_back(g);
  auto i0 = minimalize(low, n);

  std::vector<Monomial> j_gens;
  for (Monomial m : enumerate_degree(i0, d + 1))
    if (pair.J().contains(m)) j_gens.push_back(m);
  auto j0 = minimalize(j_gens, n);

  NormalizedPair out{pair, FactorPair(i0, j0), d, std::move(in_j), std::move(high), {}, false};
  for (Monomial g : pair.J().gens())
    if (g.degree() != d + 1 || !j0.contains(g)) out.dropped_from_j.push_back(g);
  out.degenerate = j0.is_zero() && !intersect(i0, pair.J()).is_zero();
  return out;
}

namespace {

struct Levels {
  int d;
  std::vector<Monomial> f;  // degree-d monomials of I°
  std::vector<Monomial> b;  // degree-(d+1) monomials of I° \ J°
  std::vector<std::vector<std::size_t>> neighbors;  // f index -> b indices
};

Levels levels_of(const FactorPair& normalized, int d) {
  Levels lv{d, enumerate_degree(normalized.I(), d), factor_monomials(normalized, d + 1), {}};
  lv.neighbors.resize(lv.f.size());
  for (std::size_t i = 0; i < lv.f.size(); ++i)
    for (std::size_t k = 0; k < lv.b.size(); ++k)
      if (lv.f[i].divides(lv.b[k])) lv.neighbors[i].push_back(k);
  return lv;
}

nlohmann::json monomial_list(const std::vector<Monomial>& ms) {
  return to_json(std::span<const Monomial>(ms));
}

}  // namespace

TheoremMainCheck check_theorem_main(const FactorPair& pair) {
  const auto np = normalize_pair(pair);
  TheoremMainCheck out;
  out.d = np.d;
  out.r = rho(np.pair.I(), np.d);
  out.s = factor_monomials(np.pair, np.d + 1).size();
  out.applies = out.r > out.s;
  return out;
}

namespace {

template <class Ops>
void solve_witness(KoszulWitness& w, const MultidegreeComplex& complex, const Ops& ops) {
  const std::size_t r = w.generators.size();
  std::vector<std::vector<std::int64_t>> system;
  for (const auto& row : w.epsilon) system.emplace_back(row.begin(), row.end());
  const auto y = first_kernel_vector(system, r, ops);
  if (y.empty()) throw Error(ErrorCode::NoKernel, "sign system has only the trivial solution");

  w.cycle_condition = true;
  for (const auto& row : w.epsilon) {
    auto acc = ops.zero();
    for (std::size_t i = 0; i < r; ++i)
      if (row[i] != 0) acc = ops.add(acc, ops.mul(ops.from_int(row[i]), y[i]));
    w.residuals.push_back(ops.format(acc));
    if (!ops.is_zero(acc)) w.cycle_condition = false;
  }
  for (const auto& v : y) w.y.push_back(ops.format(v));

  const auto level = static_cast<std::size_t>(w.n - w.d);
  const auto& basis = complex.basis[level];
  std::vector<typename Ops::Value> z(basis.size(), ops.zero());
  const Mask all = low_bits(w.n);
  for (std::size_t i = 0; i < r; ++i) {
    const Mask sigma = all & ~w.generators[i].bits();
    const auto it = std::lower_bound(basis.begin(), basis.end(), sigma);
    if (it == basis.end() || *it != sigma)
      throw Error(ErrorCode::Internal, "generator term missing from the Koszul basis");
    z[static_cast<std::size_t>(it - basis.begin())] = y[i];
  }
  const auto image = apply(complex.boundary[level], std::span<const typename Ops::Value>(z), ops);
  w.boundary_vanishes =
      std::all_of(image.begin(), image.end(), [&](const auto& v) { return ops.is_zero(v); });
  w.image_empty = level + 1 >= complex.basis.size() || complex.basis[level + 1].empty();
}

}  // namespace

KoszulWitness koszul_witness(const FactorPair& pair, const FieldSpec& field) {
  const auto np = normalize_pair(pair);
  const auto lv = levels_of(np.pair, np.d);
  if (lv.f.size() <= lv.b.size())
    throw Error(ErrorCode::NotApplicable,
                "r = " + std::to_string(lv.f.size()) + " does not exceed s = " +
                    std::to_string(lv.b.size()));
  KoszulWitness w;
  w.n = pair.n();
  w.d = np.d;
  w.field = field;
  w.generators = lv.f;
  w.multiples = lv.b;
  w.epsilon.assign(lv.b.size(), std::vector<int>(lv.f.size(), 0));
  for (std::size_t i = 0; i < lv.f.size(); ++i) {
    const Mask sigma = low_bits(w.n) & ~lv.f[i].bits();
    for (std::size_t k : lv.neighbors[i]) {
      const Mask j = lv.b[k].bits() & ~lv.f[i].bits();
      const int pos = popcount(sigma & (j - 1)) + 1;
      w.epsilon[k][i] = pos % 2 == 1 ? 1 : -1;
    }
  }
  const auto complex = build_complex(ModulePredicate::factor(np.pair), low_bits(w.n));
  if (field.kind == FieldSpec::Kind::Prime)
    solve_witness(w, complex, PrimeOps{field.p});
  else
    solve_witness(w, complex, RationalOps{});
  return w;
}

nlohmann::json to_json(const KoszulWitness& w) {
  nlohmann::json terms = nlohmann::json::array();
  const Mask all = low_bits(w.n);
  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    if (w.y[i] == "0") continue;
    terms.push_back({{"y", w.y[i]},
                     {"f", to_json(w.generators[i])},
                     {"sigma", to_json(Monomial(all & ~w.generators[i].bits()))}});
  }
  return {{"n", w.n},
          {"d", w.d},
          {"field", w.field.to_string()},
          {"generators", monomial_list(w.generators)},
          {"multiples", monomial_list(w.multiples)},
          {"epsilon", w.epsilon},
          {"y", w.y},
          {"terms", terms},
          {"residuals", w.residuals},
          {"cycle_condition", w.cycle_condition},
          {"boundary_vanishes", w.boundary_vanishes},
          {"image_empty", w.image_empty}};
}

std::vector<RuleReport> quick_certificates(const FactorPair& pair) {
  const auto np = normalize_pair(pair);
  const auto lv = levels_of(np.pair, np.d);
  const std::size_t r = lv.f.size(), s = lv.b.size();
  std::vector<RuleReport> out;

  {
    RuleReport rep{"lemma_eq", false, nlohmann::json::object()};
    for (std::size_t i = 0; i < r && !rep.applies; ++i)
      if (lv.neighbors[i].empty()) {
        rep.applies = true;
        rep.data["f"] = to_json(lv.f[i]);
      }
    out.push_back(std::move(rep));
  }
  {
    RuleReport rep{"lemma_g", false, nlohmann::json::object()};
    for (std::size_t a = 0; a < r && !rep.applies; ++a)
      for (std::size_t c = a + 1; c < r && !rep.applies; ++c) {
        const Monomial b = lv.f[a].lcm(lv.f[c]);
        if (b.degree() != np.d + 1) continue;
        std::vector<std::size_t> seen = lv.neighbors[a];
        seen.insert(seen.end(), lv.neighbors[c].begin(), lv.neighbors[c].end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        if (seen.size() == 1 && lv.b[seen[0]] == b) {
          rep.applies = true;
          rep.data = {{"f1", to_json(lv.f[a])}, {"f2", to_json(lv.f[c])}, {"b", to_json(b)}};
        }
      }
    out.push_back(std::move(rep));
  }
  {
    std::size_t widest = 0;
    for (const auto& nb : lv.neighbors) widest = std::max(widest, nb.size());
    out.push_back({"proposition_p",
                   r > s && widest <= 1,
                   {{"r", r}, {"s", s}, {"max_multiples_per_generator", widest}}});
  }
  out.push_back({"corollary_1", s <= 1 && r > s, {{"r", r}, {"s", s}}});
  out.push_back({"proposition_2", s == 2 && r > s, {{"r", r}, {"s", s}}});
  out.push_back({"proposition_3", np.d == 1 && r > s, {{"d", np.d}, {"r", r}, {"s", s}}});
  {
    Mask vars = 0;
    for (Monomial f : lv.f) vars |= f.bits();
    bool inside = np.d == 1;
    for (Monomial b : lv.b) inside = inside && (b.bits() & ~vars) == 0;
    out.push_back({"lemma_use", inside, {{"d", np.d}, {"variables", to_json(Monomial(vars))}}});
  }
  return out;
}

std::vector<RuleReport> check_rules(const FactorPair& pair) {
  const auto main = check_theorem_main(pair);
  std::vector<RuleReport> out;
  out.push_back({"theorem_main", main.applies, {{"d", main.d}, {"r", main.r}, {"s", main.s}}});
  for (auto& rep : quick_certificates(pair)) out.push_back(std::move(rep));
  return out;
}

nlohmann::json to_json(const RuleReport& report) {
  return {{"rule", report.rule}, {"applies", report.applies}, {"data", report.data}};
}

LastVariableSplit decompose_last_variable(const MonomialIdeal& ideal) {
  const int n = ideal.n();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two variables");
  if (ideal.is_zero()) throw Error(ErrorCode::InvalidArgument, "ideal is zero");
  std::vector<int> first(static_cast<std::size_t>(n - 1));
  for (int k = 0; k < n - 1; ++k) first[static_cast<std::size_t>(k)] = k + 1;

  LastVariableSplit out{MonomialIdeal(n - 1), restrict_to_subring(ideal, first).ideal, false};
  if (ideal.contains(Monomial(Mask{1} << (n - 1)))) {
    out.u_is_unit = true;
    return out;
  }
  out.U = restrict_to_subring(colon_by_variable(ideal, n), first).ideal;
  return out;
}

TheoremMain1Check check_theorem_main1(const MonomialIdeal& ideal) {
  const int n = ideal.n();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two variables");
  TheoremMain1Check out;
  out.d = ideal.indeg();
  const Mask last = Mask{1} << (n - 1);
  std::vector<Monomial> f;
  for (Monomial m : enumerate_degree(ideal, out.d))
    if (m.bits() & last) f.emplace_back(m.bits() & ~last);
  out.r = f.size();
  if (out.r == 0)
    throw Error(ErrorCode::NoXnMultiples,
                "I has no degree-" + std::to_string(out.d) + " monomial divisible by x" +
                    std::to_string(n));

  out.V = decompose_last_variable(ideal).V;
  const bool unit = out.d == 1;
  if (!unit) out.U = minimalize(f, n - 1);
  for_each_subset_of_size(n - 1, out.d, [&](Mask m) {
    if (!unit && !out.U->contains(Monomial(m))) return;
    ++out.rho_d_U;
    if (out.V.contains(Monomial(m))) ++out.rho_d_UcapV;
  });
  out.applies = out.r > out.rho_d_U - out.rho_d_UcapV;
  return out;
}

CorollaryStrCheck check_corollary_str(const MonomialIdeal& ideal) {
  if (ideal.is_zero() || !ideal.is_equigenerated())
    throw Error(ErrorCode::NotEquigenerated, "ideal is not generated in a single degree");
  if (ideal.num_gens() < 2)
    throw Error(ErrorCode::Principal, "ideal is principal");
  CorollaryStrCheck out;
  out.d = ideal.indeg();
  out.mu = ideal.num_gens();
  out.rho_next = rho(ideal, out.d + 1);
  out.applies = out.mu >= out.rho_next;
  return out;
}

StanleyMinReport stanley_min_pipeline(const FactorPair& pair, const FieldSpec& field) {
  const auto decision = sdepth_equals_indeg(pair);
  StanleyMinReport out;
  out.d = decision.d;
  out.sdepth_is_d = decision.answer;
  out.depth = depth_factor(pair, field);
  if (decision.answer) {
    out.witness_ideal = decision.witness_ideal;
    const auto& w = *decision.witness_ideal;
    const auto wj = intersect(w, pair.J());
    out.witness_depth = depth_factor(FactorPair(w, wj), field).depth;
    out.conjecture_verified = out.depth.depth == out.d;
  }
  return out;
}

}  // namespace sqdepth
