#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sqdepth/core.hpp"

namespace sqdepth {

struct InstanceParams {
  int n = 6;
  int d = 2;
  int min_gens = 2;
  int max_gens = 6;
  /// Probability that a degree-(d+1) monomial of I is put into J.
  double density = 0.5;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  /// Move monomials of I \ J of degree d+1 into J until r > s, or (for
  /// corollary_str) add generators until mu(I) >= rho_{d+1}(I).
  bool stratified = false;
  /// Largest n accepted without InstanceParams::force.
  int n_cap = 12;
  bool force = false;
  /// Poset limit for nice_vs_bruteforce; larger instances are skipped.
  std::size_t poset_limit = 20;
};

/// Throws InvalidArgument (or GuardExceeded past n_cap) on bad params.
void validate(const InstanceParams& params);

/// Deterministic generator for instance `index` of a stream: mt19937_64
/// seeded through splitmix64 of (seed, index). Bounded draws avoid the
/// standard distributions, whose output differs between library vendors.
class InstanceRng {
 public:
  InstanceRng(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  int between(int lo, int hi);
  bool chance(double p);

 private:
  std::mt19937_64 engine_;
};

/// I generated by k distinct random degree-d monomials, J by a
/// density-chosen subset of the degree-(d+1) monomials of I.
FactorPair random_pair(const InstanceParams& params, std::size_t index);

/// Generated in degrees d and d+1: k random degree-d monomials plus a
/// density-chosen set of degree-(d+1) monomials.
MonomialIdeal random_mixed_ideal(const InstanceParams& params, std::size_t index);

/// Equigenerated in degree d with at least two generators.
MonomialIdeal random_equigenerated_ideal(const InstanceParams& params, std::size_t index);

enum class ScanRule {
  TheoremMain,
  TheoremMain1,
  CorollaryStr,
  StanleyMin,
  LemmaD,
  DepthIdealVsQuotient,
  CharIndependence,
  NiceVsBruteforce,
};

const char* to_string(ScanRule rule);
/// Throws InvalidArgument for an unknown name.
ScanRule parse_rule(std::string_view name);
std::vector<ScanRule> all_rules();

struct InstanceRecord {
  std::size_t index = 0;
  std::string rule;
  /// Pair or ideal JSON, as accepted by evaluate_instance.
  nlohmann::json instance;
  /// The rule's hypothesis held, so its conclusion was checked.
  bool applicable = false;
  nlohmann::json results = nlohmann::json::object();
  std::optional<std::string> violation;
  double elapsed_ms = 0;

  nlohmann::json to_json(bool with_timing = true) const;
  static InstanceRecord from_json(const nlohmann::json& j);
};

struct ScanReport {
  std::string rule;
  std::vector<InstanceRecord> records;

  std::size_t applicable() const;
  std::vector<std::size_t> failures() const;
  bool pass() const { return failures().empty(); }

  nlohmann::json summary() const;
  /// One record per line followed by a summary line.
  void write_jsonl(std::ostream& out, bool with_timing = true) const;
};

/// Runs one rule on one instance.
InstanceRecord evaluate_instance(ScanRule rule, const nlohmann::json& instance,
                                 const InstanceParams& params = {});

/// The instance JSON that scan would evaluate at `index`.
nlohmann::json generate_instance(ScanRule rule, const InstanceParams& params,
                                 std::size_t index);

ScanReport scan(ScanRule rule, const InstanceParams& params);

/// Re-evaluates a record line of a scan report.
InstanceRecord replay(const nlohmann::json& record);

/// Fixed regression table of the worked examples; each record's instance
/// carries the item name.
ScanReport verify_paper_examples();

/// Calls body(i) for i in [0, count) on up to `threads` workers (0 picks the
/// hardware concurrency). Exceptions are rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace sqdepth
