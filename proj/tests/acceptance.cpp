// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Thresholds and time limits are pinned below.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "fixtures.hpp"
#include "simplicial_oracle.hpp"
#include "sqdepth/harness.hpp"
#include "sqdepth/homology.hpp"
#include "sqdepth/stanley.hpp"
#include "sqdepth/theorems.hpp"

using namespace sqdepth;

namespace {

constexpr double kTableSeconds = 5;
constexpr double kMainSuiteSeconds = 60;
constexpr double kNiceSuiteSeconds = 120;
constexpr double kPerInstanceSeconds = 5;
constexpr std::size_t kMainSuiteMin = 500;
constexpr std::size_t kNiceSuiteMin = 200;
constexpr std::size_t kCorollarySuiteMin = 100;
constexpr std::size_t kNicePosetLimit = 20;
constexpr std::size_t kPerfInstances = 20;

const FieldSpec kMain = FieldSpec::prime(32003);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void first_violation(const ScanReport& rep, std::string& detail) {
  for (const auto& rec : rep.records)
    if (rec.violation) {
      detail += "; first violation at #" + std::to_string(rec.index) + ": " + *rec.violation;
      return;
    }
}

// 1. Worked examples, exact values.
void criterion_table() {
  const auto start = Clock::now();
  bool ok = true;
  std::string bad;
  const auto expect = [&](const char* what, int got, int want) {
    if (got != want) {
      ok = false;
      bad += std::string(" ") + what + "=" + std::to_string(got);
    }
  };
  expect("I/E", depth_factor(fixtures::example_lemma_r_e(), kMain).depth, 3);
  expect("I/(E+F)", depth_factor(fixtures::example_lemma_r_ef(), kMain).depth, 2);
  expect("e2", depth_factor(fixtures::example_e2(), kMain).depth, 2);
  expect("no", depth_factor(fixtures::example_no(), kMain).depth, 3);
  expect("gen", depth_factor(fixtures::example_gen(), kMain).depth, 2);
  expect("L", depth_ideal(fixtures::remark_im_l(), kMain).depth, 4);
  expect("T", depth_factor(fixtures::prop2_case_equal(), kMain).depth, 1);
  expect("T'", depth_factor(fixtures::prop2_case_distinct(), kMain).depth, 2);
  const auto table = verify_paper_examples();
  ok = ok && table.pass();
  const double t = seconds_since(start);
  ok = ok && t < kTableSeconds;
  report(1, "worked-example table", ok,
         "8 depths + " + std::to_string(table.records.size()) + " table items" +
             (bad.empty() ? "" : ", mismatches:" + bad) + ", " + std::to_string(t) + " s");
}

// 2 and 5. Stratified r > s pairs over two fields, with Koszul witnesses.
ScanReport main_suite;

void criterion_theorem_main() {
  const auto start = Clock::now();
  main_suite.rule = "theorem_main";
  const std::array<std::pair<int, int>, 4> shapes = {{{5, 2}, {6, 2}, {7, 3}, {8, 3}}};
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    InstanceParams p;
    p.n = shapes[k].first;
    p.d = shapes[k].second;
    p.min_gens = 3;
    p.max_gens = 8;
    p.density = 0.6;
    p.stratified = true;
    p.count = 140;
    p.seed = 1000 + k;
    auto rep = scan(ScanRule::TheoremMain, p);
    for (auto& rec : rep.records) main_suite.records.push_back(std::move(rec));
  }
  const double t = seconds_since(start);
  const bool ok = main_suite.pass() && main_suite.applicable() >= kMainSuiteMin && t < kMainSuiteSeconds;
  std::string detail = std::to_string(main_suite.applicable()) + " applicable pairs (n 5..8), " +
                       std::to_string(main_suite.failures().size()) +
                       " violations over fp:2 and fp:32003, " + std::to_string(t) + " s";
  first_violation(main_suite, detail);
  report(2, "theorem_main suite", ok, detail);
}

void criterion_witness() {
  bool ok = true;
  std::size_t checked = 0;
  for (const auto& field : {kMain, FieldSpec::rationals(), FieldSpec::prime(2)}) {
    const auto w = koszul_witness(fixtures::example_e2(), field);
    ok = ok && w.valid();
    ++checked;
  }
  for (const auto& rec : main_suite.records) {
    if (!rec.applicable) continue;
    for (const char* key : {"witness_valid_fp:2", "witness_valid_fp:32003"}) {
      ok = ok && rec.results.value(key, false);
      ++checked;
    }
  }
  report(5, "Koszul witness validity", ok,
         std::to_string(checked) + " witnesses (cycle condition, boundary, no boundaries)");
}

// 3 and 4. Hall test against the interval-partition search.
ScanReport nice_suite;

void criterion_nice() {
  const auto start = Clock::now();
  nice_suite.rule = "nice_vs_bruteforce";
  const std::array<std::pair<int, int>, 3> shapes = {{{4, 1}, {5, 2}, {5, 2}}};
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    InstanceParams p;
    p.n = shapes[k].first;
    p.d = shapes[k].second;
    p.min_gens = 2;
    p.max_gens = k == 2 ? 6 : 4;
    p.density = k == 1 ? 0.7 : 0.4;
    p.poset_limit = kNicePosetLimit;
    p.count = 120;
    p.seed = 2000 + k;
    auto rep = scan(ScanRule::NiceVsBruteforce, p);
    for (auto& rec : rep.records) nice_suite.records.push_back(std::move(rec));
  }
  std::size_t yes = 0;
  for (const auto& rec : nice_suite.records)
    if (rec.applicable && rec.results.value("hall_violator", false)) ++yes;
  const double t = seconds_since(start);
  const bool ok = nice_suite.pass() && nice_suite.applicable() >= kNiceSuiteMin && yes > 0 &&
                  yes < nice_suite.applicable() && t < kNiceSuiteSeconds;
  std::string detail = std::to_string(nice_suite.applicable()) + " pairs with |P| <= " +
                       std::to_string(kNicePosetLimit) + " (" + std::to_string(yes) +
                       " with sdepth = d), " + std::to_string(nice_suite.failures().size()) +
                       " disagreements, " + std::to_string(t) + " s";
  first_violation(nice_suite, detail);
  report(3, "Hall test vs brute-force sdepth", ok, detail);
}

void criterion_pipeline() {
  bool ok = true;
  std::size_t checked = 0;
  for (const auto& rec : nice_suite.records) {
    if (!rec.applicable || !rec.results.value("hall_violator", false)) continue;
    const auto pair = pair_from_json(rec.instance);
    const auto rep = stanley_min_pipeline(pair, kMain);
    const auto& w = *rep.witness_ideal;
    const std::size_t lhs = rho(w, rep.d);
    const std::size_t rhs = rho(w, rep.d + 1) - rho(intersect(w, pair.J()), rep.d + 1);
    ok = ok && rep.sdepth_is_d && rep.conjecture_verified && rep.depth.depth == rep.d && lhs > rhs;
    ++checked;
  }
  ok = ok && checked > 0;
  report(4, "sdepth = d pipeline", ok,
         std::to_string(checked) + " instances: depth = d and witness rho inequality");
}

// 6. Equigenerated ideals with mu >= rho_{d+1}.
void criterion_corollary() {
  ScanReport all;
  const std::array<std::pair<int, int>, 4> shapes = {{{4, 2}, {5, 2}, {6, 3}, {7, 3}}};
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    InstanceParams p;
    p.n = shapes[k].first;
    p.d = shapes[k].second;
    p.min_gens = 2;
    p.max_gens = 6;
    p.stratified = true;
    p.count = 40;
    p.seed = 3000 + k;
    auto rep = scan(ScanRule::CorollaryStr, p);
    for (auto& rec : rep.records) all.records.push_back(std::move(rec));
  }
  const bool ok = all.pass() && all.applicable() >= kCorollarySuiteMin;
  std::string detail = std::to_string(all.applicable()) + " applicable ideals (n <= 2d+1), " +
                       std::to_string(all.failures().size()) + " with depth != d";
  first_violation(all, detail);
  report(6, "corollary_str suite", ok, detail);
}

// 7. Structural properties.

// Up-sets of the Boolean lattice on n <= 6 variables as bit tables: bit x of
// the table is set when the square-free monomial with support x is in the set.
using Table = std::uint64_t;

Table swap_variables(Table t, int i, int j) {
  if (i > j) std::swap(i, j);
  static std::array<std::array<Table, 6>, 6> masks = [] {
    std::array<std::array<Table, 6>, 6> m{};
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (unsigned p = 0; p < 64; ++p)
          if ((p >> a & 1) && !(p >> b & 1)) m[a][b] |= Table{1} << p;
    return m;
  }();
  const unsigned delta = (1U << j) - (1U << i);
  const Table x = ((t >> delta) ^ t) & masks[i][j];
  return t ^ x ^ (x << delta);
}

// Smallest table in the orbit under permutations of six variables (Heap's
// algorithm visits all 720 by single swaps).
Table canonical6(Table t) {
  Table best = t;
  std::array<int, 6> c{};
  int i = 1;
  while (i < 6) {
    if (c[i] < i) {
      t = swap_variables(t, i % 2 == 0 ? 0 : c[i], i);
      best = std::min(best, t);
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
  return best;
}

// Every up-set for n variables; with `up_to_symmetry` (n = 6 only) one
// representative per orbit of the symmetric group.
std::vector<Table> up_sets(int n, bool up_to_symmetry) {
  const unsigned size = 1U << n;
  std::vector<Table> out{0};
  std::unordered_set<Table> seen{0};
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Table u = out[k];
    for (unsigned x = 0; x < size; ++x) {
      if (u >> x & 1) continue;
      bool addable = true;
      for (int v = 0; v < n && addable; ++v)
        if (!(x >> v & 1) && !(u >> (x | 1U << v) & 1)) addable = false;
      if (!addable) continue;
      Table next = u | Table{1} << x;
      if (up_to_symmetry) next = canonical6(next);
      if (seen.insert(next).second) out.push_back(next);
    }
  }
  return out;
}

// Minimal elements of a proper nonzero up-set, as an ideal.
MonomialIdeal ideal_of_table(Table u, int n) {
  std::vector<Monomial> gens;
  for (unsigned x = 0; x < (1U << n); ++x) {
    if (!(u >> x & 1)) continue;
    bool minimal = true;
    for (int v = 0; v < n && minimal; ++v)
      if ((x >> v & 1) && (u >> (x & ~(1U << v)) & 1)) minimal = false;
    if (minimal) gens.emplace_back(Mask{x});
  }
  return minimalize(gens, n);
}

bool proper_nonzero(Table u) { return u != 0 && !(u & 1); }

void criterion_structure() {
  const auto start = Clock::now();
  EngineOptions checked;
  checked.check_invariants = true;
  EngineStats stats;
  bool ok = true;
  std::string bad;
  std::size_t ideals = 0, pairs = 0, random_checks = 0;
  const auto fail = [&](const std::string& what) {
    if (ok) bad = what;
    ok = false;
  };

  // Ideals: every up-set for n <= 5, one per symmetry class for n = 6.
  for (int n = 1; n <= 6; ++n) {
    for (Table u : up_sets(n, n == 6)) {
      if (!proper_nonzero(u)) continue;
      const auto ideal = ideal_of_table(u, n);
      const int di = depth(ModulePredicate::ideal(ideal), kMain, checked, &stats).depth;
      const int dq = depth(ModulePredicate::quotient(ideal), kMain, checked, &stats).depth;
      if (di < ideal.indeg()) fail("depth I < indeg for " + ideal.to_string());
      if (di != dq + 1) fail("depth I != depth S/I + 1 for " + ideal.to_string());
      ++ideals;
    }
  }

  // Pairs J in I with J generated above indeg(I): exhaustive for n <= 4.
  for (int n = 1; n <= 4; ++n) {
    const auto all = up_sets(n, false);
    for (Table u : all) {
      if (!proper_nonzero(u)) continue;
      const auto ideal = ideal_of_table(u, n);
      const int d = ideal.indeg();
      Table high = 0;
      for (unsigned x = 0; x < (1U << n); ++x)
        if (std::popcount(x) > d) high |= Table{1} << x;
      for (Table w : all) {
        if (w == 0 || (w & ~(u & high)) != 0) continue;
        const FactorPair pair(ideal, ideal_of_table(w, n));
        const int df = depth(ModulePredicate::factor(pair), kMain, checked, &stats).depth;
        if (df < d) fail("depth I/J < d for " + pair.I().to_string() + " / " + pair.J().to_string());
        ++pairs;
      }
    }
  }

  // Random instances up to ten variables.
  for (int n = 7; n <= 10; ++n) {
    InstanceParams p;
    p.n = n;
    p.d = n <= 8 ? 2 : 3;
    p.max_gens = 8;
    p.count = 40;
    p.seed = 4000 + static_cast<std::uint64_t>(n);
    for (ScanRule rule : {ScanRule::LemmaD, ScanRule::DepthIdealVsQuotient}) {
      const auto rep = scan(rule, p);
      if (!rep.pass()) fail(std::string(to_string(rule)) + " violation at n = " + std::to_string(n));
      random_checks += rep.applicable();
    }
    for (std::size_t k = 0; k < 5; ++k) {
      const auto pair = random_pair(p, k);
      depth(ModulePredicate::factor(pair), kMain, checked, &stats);
      ++random_checks;
    }
  }
  if (stats.invariant_failures != 0)
    fail(std::to_string(stats.invariant_failures) + " complexes fail d^2 = 0 or Euler");
  if (stats.complexes_checked == 0) fail("no complexes checked");

  report(7, "structural properties", ok,
         std::to_string(ideals) + " ideals (all up-sets n <= 5, symmetry classes n = 6), " +
             std::to_string(pairs) + " pairs (n <= 4), " + std::to_string(random_checks) +
             " random checks (n 7..10), " + std::to_string(stats.complexes_checked) +
             " complexes verified, " + std::to_string(seconds_since(start)) + " s" +
             (ok ? "" : "; " + bad));
}

// 8. Field sensitivity on the six-vertex projective plane.
void criterion_projective_plane() {
  std::vector<oracle::Face> facets;
  for (const auto& f : fixtures::rp2_facets()) {
    oracle::Face face = 0;
    for (int v : f) face |= 1U << (v - 1);
    facets.push_back(face);
  }
  const int oracle_q = oracle::stanley_reisner_depth(facets, 6, false);
  const int oracle_2 = oracle::stanley_reisner_depth(facets, 6, true);
  const auto ideal = fixtures::rp2_ideal();
  const int q = depth_quotient(ideal, FieldSpec::rationals()).depth;
  const int f2 = depth_quotient(ideal, FieldSpec::prime(2)).depth;
  const bool ok = q == 3 && f2 == 2 && oracle_q == 3 && oracle_2 == 2;
  report(8, "projective plane field sensitivity", ok,
         "depth S/I over q = " + std::to_string(q) + " (oracle " + std::to_string(oracle_q) +
             "), over fp:2 = " + std::to_string(f2) + " (oracle " + std::to_string(oracle_2) + ")");
}

// 9. Random ten-variable instances in degree 3.
void criterion_performance() {
  InstanceParams p;
  p.n = 10;
  p.d = 3;
  p.min_gens = 4;
  p.max_gens = 12;
  p.seed = 5000;
  double worst = 0;
  for (std::size_t k = 0; k < kPerfInstances; ++k) {
    const auto pair = random_pair(p, k);
    auto start = Clock::now();
    depth_factor(pair, kMain);
    worst = std::max(worst, seconds_since(start));
    start = Clock::now();
    depth_quotient(random_mixed_ideal(p, k), kMain);
    worst = std::max(worst, seconds_since(start));
  }
  report(9, "n = 10, d = 3 performance", worst < kPerInstanceSeconds,
         std::to_string(2 * kPerfInstances) + " depth computations, slowest " +
             std::to_string(worst) + " s (limit " + std::to_string(kPerInstanceSeconds) + " s)");
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const std::vector<std::function<void()>> steps = {
      criterion_table,    criterion_theorem_main, criterion_nice,
      criterion_pipeline, criterion_witness,      criterion_corollary,
      criterion_structure, criterion_projective_plane, criterion_performance};
  for (const auto& step : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      std::printf("FAIL (exception): %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s: %d criterion failure(s), %.1f s total\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
