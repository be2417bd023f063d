#include "sqdepth/harness.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "sqdepth/homology.hpp"
#include "sqdepth/parse.hpp"
#include "sqdepth/stanley.hpp"
#include "sqdepth/theorems.hpp"

namespace sqdepth {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / i;
  return out;
}

const FieldSpec kMainField = FieldSpec::prime(32003);
const FieldSpec kSmallField = FieldSpec::prime(2);

}  // namespace

void validate(const InstanceParams& p) {
  if (p.n > p.n_cap && !p.force)
    throw Error(ErrorCode::GuardExceeded,
                "n = " + std::to_string(p.n) + " exceeds the cap of " +
                    std::to_string(p.n_cap) + " (use force)");
  check_variable_count(p.n);
  if (p.d < 1 || p.d >= p.n)
    throw Error(ErrorCode::InvalidArgument, "need 1 <= d < n");
  if (p.min_gens < 1 || p.max_gens < p.min_gens)
    throw Error(ErrorCode::InvalidArgument, "need 1 <= min_gens <= max_gens");
  if (!(p.density >= 0.0 && p.density <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "density must lie in [0, 1]");
}

InstanceRng::InstanceRng(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(seed ^ splitmix64(index))) {}

std::uint64_t InstanceRng::next() { return engine_(); }

std::uint64_t InstanceRng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

int InstanceRng::between(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool InstanceRng::chance(double p) {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

namespace {

Mask random_subset(InstanceRng& rng, int n, int size) {
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) vars[static_cast<std::size_t>(k)] = k;
  Mask m = 0;
  for (int k = 0; k < size; ++k) {
    const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - k)));
    std::swap(vars[static_cast<std::size_t>(k)], vars[static_cast<std::size_t>(pick)]);
    m |= Mask{1} << vars[static_cast<std::size_t>(k)];
  }
  return m;
}

std::vector<Monomial> distinct_degree_monomials(InstanceRng& rng, const InstanceParams& p) {
  const std::uint64_t available = binomial(p.n, p.d);
  if (static_cast<std::uint64_t>(p.min_gens) > available)
    throw Error(ErrorCode::Unsatisfiable,
                "only " + std::to_string(available) + " monomials of degree " +
                    std::to_string(p.d) + " exist");
  const int k = rng.between(p.min_gens,
                            static_cast<int>(std::min<std::uint64_t>(p.max_gens, available)));
  std::vector<Monomial> out;
  while (static_cast<int>(out.size()) < k) {
    const Monomial m(random_subset(rng, p.n, p.d));
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

}  // namespace

FactorPair random_pair(const InstanceParams& params, std::size_t index) {
  validate(params);
  InstanceRng rng(params.seed, index);
  const auto i = minimalize(distinct_degree_monomials(rng, params), params.n);
  std::vector<Monomial> j, rest;
  for (Monomial b : enumerate_degree(i, params.d + 1))
    (rng.chance(params.density) ? j : rest).push_back(b);
  if (params.stratified) {
    // r = number of generators; s = |rest|.
    while (rest.size() >= i.num_gens()) {
      const auto pick = rng.below(rest.size());
      j.push_back(rest[pick]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  return FactorPair(i, minimalize(j, params.n));
}

MonomialIdeal random_mixed_ideal(const InstanceParams& params, std::size_t index) {
  validate(params);
  InstanceRng rng(params.seed, index);
  auto gens = distinct_degree_monomials(rng, params);
  const auto base = minimalize(gens, params.n);
  for_each_subset_of_size(params.n, params.d + 1, [&](Mask m) {
    if (!base.contains(Monomial(m)) && rng.chance(params.density * 0.25))
      gens.emplace_back(m);
  });
  return minimalize(gens, params.n);
}

MonomialIdeal random_equigenerated_ideal(const InstanceParams& params, std::size_t index) {
  validate(params);
  if (binomial(params.n, params.d) < 2)
    throw Error(ErrorCode::Unsatisfiable, "fewer than two monomials of degree d");
  InstanceParams p = params;
  p.min_gens = std::max(p.min_gens, 2);
  p.max_gens = std::max(p.max_gens, p.min_gens);
  InstanceRng rng(params.seed, index);
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < (params.stratified ? kAttempts : 1); ++attempt) {
    auto gens = distinct_degree_monomials(rng, p);
    auto ideal = minimalize(gens, p.n);
    if (!params.stratified) return ideal;
    std::vector<Monomial> pool;
    for_each_subset_of_size(p.n, p.d, [&](Mask m) {
      if (!ideal.contains(Monomial(m))) pool.emplace_back(m);
    });
    while (true) {
      if (ideal.num_gens() >= rho(ideal, p.d + 1)) return ideal;
      if (pool.empty()) break;
      const auto pick = rng.below(pool.size());
      gens.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      ideal = minimalize(gens, p.n);
    }
  }
  throw Error(ErrorCode::Unsatisfiable,
              "no equigenerated ideal with mu >= rho_{d+1} found in the retry budget");
}

const char* to_string(ScanRule rule) {
  switch (rule) {
    case ScanRule::TheoremMain:
      return "theorem_main";
    case ScanRule::TheoremMain1:
      return "theorem_main1";
    case ScanRule::CorollaryStr:
      return "corollary_str";
    case ScanRule::StanleyMin:
      return "stanley_min";
    case ScanRule::LemmaD:
      return "lemma_d";
    case ScanRule::DepthIdealVsQuotient:
      return "depth_ideal_vs_quotient";
    case ScanRule::CharIndependence:
      return "char_independence";
    case ScanRule::NiceVsBruteforce:
      return "nice_vs_bruteforce";
  }
  return "?";
}

std::vector<ScanRule> all_rules() {
  return {ScanRule::TheoremMain,  ScanRule::TheoremMain1,         ScanRule::CorollaryStr,
          ScanRule::StanleyMin,   ScanRule::LemmaD,               ScanRule::DepthIdealVsQuotient,
          ScanRule::CharIndependence, ScanRule::NiceVsBruteforce};
}

ScanRule parse_rule(std::string_view name) {
  for (ScanRule r : all_rules())
    if (name == to_string(r)) return r;
  throw Error(ErrorCode::InvalidArgument, "unknown rule '" + std::string(name) + "'");
}

nlohmann::json InstanceRecord::to_json(bool with_timing) const {
  nlohmann::json j = {{"index", index},
                      {"rule", rule},
                      {"instance", instance},
                      {"applicable", applicable},
                      {"results", results},
                      {"violation", violation ? nlohmann::json(*violation) : nlohmann::json()}};
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

InstanceRecord InstanceRecord::from_json(const nlohmann::json& j) {
  InstanceRecord r;
  try {
    r.index = j.value("index", std::size_t{0});
    r.rule = j.at("rule").get<std::string>();
    r.instance = j.at("instance");
    r.applicable = j.value("applicable", false);
    r.results = j.value("results", nlohmann::json::object());
    if (j.contains("violation") && !j["violation"].is_null())
      r.violation = j["violation"].get<std::string>();
    r.elapsed_ms = j.value("elapsed_ms", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed record: ") + e.what());
  }
  return r;
}

std::size_t ScanReport::applicable() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [](const auto& r) { return r.applicable; }));
}

std::vector<std::size_t> ScanReport::failures() const {
  std::vector<std::size_t> out;
  for (const auto& r : records)
    if (r.violation) out.push_back(r.index);
  return out;
}

nlohmann::json ScanReport::summary() const {
  const auto f = failures();
  return {{"summary",
           {{"rule", rule},
            {"instances", records.size()},
            {"applicable", applicable()},
            {"violations", f.size()},
            {"failures", f},
            {"pass", f.empty()}}}};
}

void ScanReport::write_jsonl(std::ostream& out, bool with_timing) const {
  for (const auto& r : records) out << r.to_json(with_timing).dump() << '\n';
  out << summary().dump() << '\n';
}

namespace {

bool is_ideal_rule(ScanRule rule) {
  return rule == ScanRule::TheoremMain1 || rule == ScanRule::CorollaryStr ||
         rule == ScanRule::DepthIdealVsQuotient;
}

void expect(InstanceRecord& rec, bool ok, const std::string& what) {
  if (!ok && !rec.violation) rec.violation = what;
}

void check_theorem_main_instance(InstanceRecord& rec, const FactorPair& pair) {
  const auto c = check_theorem_main(pair);
  rec.results = {{"d", c.d}, {"r", c.r}, {"s", c.s}, {"applies", c.applies}};
  if (!c.applies) return;
  rec.applicable = true;
  for (const auto& field : {kSmallField, kMainField}) {
    const int depth = depth_factor(pair, field).depth;
    rec.results["depth_" + field.to_string()] = depth;
    expect(rec, depth == c.d,
           "depth over " + field.to_string() + " is " + std::to_string(depth) + ", expected " +
               std::to_string(c.d));
    const auto w = koszul_witness(pair, field);
    rec.results["witness_valid_" + field.to_string()] = w.valid();
    expect(rec, w.valid(), "Koszul witness over " + field.to_string() + " is not a cycle");
  }
}

void check_theorem_main1_instance(InstanceRecord& rec, const MonomialIdeal& ideal) {
  TheoremMain1Check c;
  try {
    c = check_theorem_main1(ideal);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoXnMultiples) throw;
    rec.results = {{"reason", "no degree-d multiple of the last variable"}};
    return;
  }
  rec.results = {{"d", c.d},
                 {"r", c.r},
                 {"rho_d_U", c.rho_d_U},
                 {"rho_d_UcapV", c.rho_d_UcapV},
                 {"applies", c.applies}};
  if (!c.applies) return;
  rec.applicable = true;
  const int depth = depth_quotient(ideal, kMainField).depth;
  rec.results["depth_quotient"] = depth;
  expect(rec, depth == c.d - 1, "depth S/I is " + std::to_string(depth));
  if (c.U) {
    const int du = depth_factor(FactorPair(sum(*c.U, c.V), c.V), kMainField).depth;
    rec.results["depth_U_plus_V_over_V"] = du;
    expect(rec, du == c.d - 1, "depth (U+V)/V is " + std::to_string(du));
  }
}

void check_corollary_str_instance(InstanceRecord& rec, const MonomialIdeal& ideal) {
  CorollaryStrCheck c;
  try {
    c = check_corollary_str(ideal);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotEquigenerated && e.code() != ErrorCode::Principal) throw;
    rec.results = {{"reason", to_string(e.code())}};
    return;
  }
  rec.results = {{"d", c.d}, {"mu", c.mu}, {"rho_next", c.rho_next}, {"applies", c.applies}};
  if (!c.applies) return;
  rec.applicable = true;
  const int depth = depth_ideal(ideal, kMainField).depth;
  rec.results["depth"] = depth;
  expect(rec, depth == c.d, "depth I is " + std::to_string(depth));
}

void check_stanley_min_instance(InstanceRecord& rec, const FactorPair& pair) {
  const auto rep = stanley_min_pipeline(pair, kMainField);
  rec.results = {{"d", rep.d}, {"sdepth_is_d", rep.sdepth_is_d}, {"depth", rep.depth.depth}};
  if (!rep.sdepth_is_d) return;
  rec.applicable = true;
  rec.results["witness_ideal"] = ideal_to_json(*rep.witness_ideal)["I"];
  rec.results["witness_depth"] = *rep.witness_depth;
  expect(rec, rep.conjecture_verified, "sdepth = d but depth = " + std::to_string(rep.depth.depth));
  expect(rec, *rep.witness_depth == rep.d, "witness ideal factor has depth != d");
}

void check_lemma_d_instance(InstanceRecord& rec, const FactorPair& pair) {
  rec.applicable = true;
  const int d = pair.I().indeg();
  const int depth = depth_factor(pair, kMainField).depth;
  rec.results = {{"d", d}, {"depth", depth}};
  expect(rec, depth >= d, "depth " + std::to_string(depth) + " < d");
}

void check_ideal_vs_quotient_instance(InstanceRecord& rec, const MonomialIdeal& ideal) {
  rec.applicable = true;
  const int di = depth_ideal(ideal, kMainField).depth;
  const int dq = depth_quotient(ideal, kMainField).depth;
  rec.results = {{"depth_ideal", di}, {"depth_quotient", dq}};
  expect(rec, di == dq + 1, "depth I != depth S/I + 1");
}

void check_char_independence_instance(InstanceRecord& rec, const FactorPair& pair) {
  const auto c = check_theorem_main(pair);
  rec.results = {{"d", c.d}, {"r", c.r}, {"s", c.s}, {"applies", c.applies}};
  if (!c.applies) return;
  rec.applicable = true;
  for (const auto& field : {kSmallField, FieldSpec::prime(3), kMainField, FieldSpec::rationals()}) {
    const int depth = depth_factor(pair, field).depth;
    rec.results["depth_" + field.to_string()] = depth;
    expect(rec, depth == c.d, "depth over " + field.to_string() + " differs from d");
  }
}

void check_nice_instance(InstanceRecord& rec, const FactorPair& pair, std::size_t limit) {
  int brute = 0;
  try {
    brute = brute_force_sdepth(pair, limit);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    rec.results = {{"reason", "poset exceeds " + std::to_string(limit)}};
    return;
  }
  rec.applicable = true;
  const auto decision = sdepth_equals_indeg(pair);
  rec.results = {{"d", decision.d},
                 {"brute_force_sdepth", brute},
                 {"hall_violator", decision.answer},
                 {"certificate", to_json(decision.certificate)}};
  expect(rec, (brute == decision.d) == decision.answer,
         "brute-force sdepth " + std::to_string(brute) + " disagrees with the Hall test");
  if (!decision.answer) return;
  const auto& w = *decision.witness_ideal;
  const std::size_t lhs = rho(w, decision.d);
  const std::size_t rhs = rho(w, decision.d + 1) - rho(intersect(w, pair.J()), decision.d + 1);
  const int depth = depth_factor(pair, kMainField).depth;
  rec.results["depth"] = depth;
  rec.results["witness_rho"] = {lhs, rhs};
  expect(rec, lhs > rhs, "witness ideal fails the rho inequality");
  expect(rec, depth == decision.d, "sdepth = d but depth = " + std::to_string(depth));
}

}  // namespace

nlohmann::json generate_instance(ScanRule rule, const InstanceParams& params, std::size_t index) {
  switch (rule) {
    case ScanRule::TheoremMain1:
      return ideal_to_json(random_mixed_ideal(params, index));
    case ScanRule::CorollaryStr:
      return ideal_to_json(random_equigenerated_ideal(params, index));
    case ScanRule::DepthIdealVsQuotient:
      return ideal_to_json(random_mixed_ideal(params, index));
    default:
      return pair_to_json(random_pair(params, index));
  }
}

InstanceRecord evaluate_instance(ScanRule rule, const nlohmann::json& instance,
                                 const InstanceParams& params) {
  InstanceRecord rec;
  rec.rule = to_string(rule);
  rec.instance = instance;
  const auto start = std::chrono::steady_clock::now();
  if (is_ideal_rule(rule)) {
    const auto ideal = ideal_from_json(instance);
    if (rule == ScanRule::TheoremMain1) check_theorem_main1_instance(rec, ideal);
    if (rule == ScanRule::CorollaryStr) check_corollary_str_instance(rec, ideal);
    if (rule == ScanRule::DepthIdealVsQuotient) check_ideal_vs_quotient_instance(rec, ideal);
  } else {
    const auto pair = pair_from_json(instance);
    switch (rule) {
      case ScanRule::TheoremMain:
        check_theorem_main_instance(rec, pair);
        break;
      case ScanRule::StanleyMin:
        check_stanley_min_instance(rec, pair);
        break;
      case ScanRule::LemmaD:
        check_lemma_d_instance(rec, pair);
        break;
      case ScanRule::CharIndependence:
        check_char_independence_instance(rec, pair);
        break;
      case ScanRule::NiceVsBruteforce:
        check_nice_instance(rec, pair, params.poset_limit);
        break;
      default:
        break;
    }
  }
  rec.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ScanReport scan(ScanRule rule, const InstanceParams& params) {
  validate(params);
  ScanReport report;
  report.rule = to_string(rule);
  report.records.resize(params.count);
  parallel_for(params.count, [&](std::size_t i) {
    InstanceRecord rec;
    nlohmann::json instance;
    try {
      instance = generate_instance(rule, params, i);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unsatisfiable) throw;
      rec.rule = to_string(rule);
      rec.results = {{"reason", e.what()}};
      rec.index = i;
      report.records[i] = std::move(rec);
      return;
    }
    rec = evaluate_instance(rule, instance, params);
    rec.index = i;
    report.records[i] = std::move(rec);
  });
  return report;
}

InstanceRecord replay(const nlohmann::json& record) {
  const auto original = InstanceRecord::from_json(record);
  auto rec = evaluate_instance(parse_rule(original.rule), original.instance);
  rec.index = original.index;
  return rec;
}

namespace {

struct ExampleItem {
  std::string name;
  std::function<nlohmann::json()> actual;
  nlohmann::json expected;
};

FactorPair example_pair(const char* i, const char* j, int n) { return parse_pair(i, j, n); }

FactorPair six_variable() {
  return example_pair("x1*x6, x1*x5, x1*x3, x3*x4, x2*x4",
                      "x1*x2*x4, x1*x2*x5, x1*x2*x3, x1*x2*x6, x1*x3*x6, x1*x4*x5, "
                      "x1*x4*x6, x2*x4*x5, x2*x4*x6, x3*x4*x5, x3*x4*x6",
                      6);
}
FactorPair four_variable() { return example_pair("x1*x3, x2*x4, x1*x4", "x2*x3*x4", 4); }
FactorPair six_generator() {
  return example_pair("x1*x5, x2*x3, x3*x4, x1*x6, x1*x4, x1*x2",
                      "x1*x2*x4, x1*x2*x5, x1*x3*x5, x1*x3*x6, x1*x4*x6, x2*x3*x5, "
                      "x2*x3*x6, x3*x4*x5, x3*x4*x6",
                      6);
}
MonomialIdeal glued_ideal() {
  return parse_ideal("x2*x3*x4, x1*x3*x5, x2*x4*x5, x1*x4*x5", 5);
}

int depth_of(const FactorPair& pair) { return depth_factor(pair, kMainField).depth; }

std::vector<ExampleItem> example_table() {
  std::vector<ExampleItem> t;
  t.push_back({"lemma_r_depth_I_over_E", [] { return depth_of(example_pair("x2", "x2*x4", 4)); }, 3});
  t.push_back({"lemma_r_depth_I_over_E_plus_F",
               [] { return depth_of(example_pair("x2", "x2*x4, x1*x2*x3", 4)); }, 2});
  t.push_back({"example_e2_depth", [] { return depth_of(six_variable()); }, 2});
  t.push_back({"example_e2_r_s",
               [] {
                 const auto c = check_theorem_main(six_variable());
                 return nlohmann::json::array({c.r, c.s});
               },
               nlohmann::json::array({5, 4})});
  t.push_back({"example_e2_witness",
               [] {
                 const auto w = koszul_witness(six_variable(), kMainField);
                 // Canonical order lists f3, f5, f4, f2, f1.
                 const std::vector<std::size_t> listed_order = {4, 3, 0, 2, 1};
                 nlohmann::json y = nlohmann::json::array();
                 const bool flip = w.y[4] != "1";
                 for (std::size_t k : listed_order) {
                   std::string v = w.y[k];
                   if (flip) v = v == "1" ? "-1" : v == "-1" ? "1" : v;
                   y.push_back(v);
                 }
                 return nlohmann::json{{"y", y}, {"valid", w.valid()}};
               },
               {{"y", {"1", "-1", "-1", "-1", "1"}}, {"valid", true}}});
  t.push_back({"example_e2_sdepth_is_d",
               [] { return sdepth_equals_indeg(six_variable()).answer; }, true});
  t.push_back({"example_no_depth", [] { return depth_of(four_variable()); }, 3});
  t.push_back({"example_no_r_s",
               [] {
                 const auto c = check_theorem_main(four_variable());
                 return nlohmann::json::array({c.r, c.s});
               },
               nlohmann::json::array({3, 3})});
  t.push_back({"example_gen_depth", [] { return depth_of(six_generator()); }, 2});
  t.push_back({"example_gen_r_s",
               [] {
                 const auto c = check_theorem_main(six_generator());
                 return nlohmann::json::array({c.r, c.s});
               },
               nlohmann::json::array({6, 6})});
  t.push_back({"remark_im_depth",
               [] { return depth_ideal(glued_ideal(), kMainField).depth; }, 4});
  t.push_back({"remark_im_mu", [] { return check_corollary_str(glued_ideal()).mu; }, 4});
  t.push_back({"remark_im_corollary_applies",
               [] { return check_corollary_str(glued_ideal()).applies; }, false});
  t.push_back({"proposition_2_equal_depth",
               [] { return depth_of(example_pair("x1, x2, x3", "x1*x2", 3)); }, 1});
  t.push_back({"proposition_2_distinct_depth",
               [] {
                 return depth_of(
                     example_pair("x1*x4, x2*x3, x3*x4", "x1*x2*x3, x1*x2*x4", 4));
               },
               2});
  return t;
}

}  // namespace

ScanReport verify_paper_examples() {
  ScanReport report;
  report.rule = "worked_examples";
  const auto table = example_table();
  for (std::size_t k = 0; k < table.size(); ++k) {
    InstanceRecord rec;
    rec.index = k;
    rec.rule = report.rule;
    rec.instance = {{"name", table[k].name}};
    rec.applicable = true;
    const auto start = std::chrono::steady_clock::now();
    nlohmann::json actual;
    try {
      actual = table[k].actual();
    } catch (const std::exception& e) {
      actual = std::string("error: ") + e.what();
    }
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    rec.results = {{"expected", table[k].expected}, {"actual", actual}};
    if (actual != table[k].expected)
      rec.violation = "expected " + table[k].expected.dump() + ", got " + actual.dump();
    report.records.push_back(std::move(rec));
  }
  return report;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i;
        {
          std::lock_guard lock(mutex);
          if (next >= count || failure) return;
          i = next++;
        }
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sqdepth
