#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sqdepth/core.hpp"
#include "sqdepth/homology.hpp"
#include "sqdepth/linalg.hpp"
#include "sqdepth/stanley.hpp"

namespace sqdepth {

/// I° is generated by the degree-d monomials of I (d its initial degree once
/// generators lying in J are discarded) and J° by the degree-(d+1) monomials
/// of I° ∩ J. depth I/J = d exactly when depth I°/J° = d.
struct NormalizedPair {
  FactorPair original;
  FactorPair pair;
  int d = 0;
  /// Generators of I lying in J; I/J does not see them.
  std::vector<Monomial> dropped_from_i_in_j;
  /// Generators of I of degree > d.
  std::vector<Monomial> dropped_from_i;
  /// Generators of J missing from J°.
  std::vector<Monomial> dropped_from_j;
  /// I° ∩ J is nonzero but has no degree-(d+1) monomial, so J° = 0.
  bool degenerate = false;

  bool is_identity() const { return original == pair; }
};

NormalizedPair normalize_pair(const FactorPair& pair);

struct TheoremMainCheck {
  int d = 0;
  /// r = ρ_d(I°), s = ρ_{d+1}(I°) - ρ_{d+1}(J°).
  std::size_t r = 0;
  std::size_t s = 0;
  bool applies = false;
};

/// Normalizes first; r > s certifies depth I/J = d over every field.
TheoremMainCheck check_theorem_main(const FactorPair& pair);

/// A cycle z = Σ y_i f_i e_{σ_i} of the Koszul complex of I°/J° in
/// homological degree n - d with σ_i = [n] \ supp f_i. Its coefficients have
/// degree d while the image of ∂_{n-d+1} only reaches degree d + 1 and up, so
/// z is not a boundary.
struct KoszulWitness {
  int n = 0;
  int d = 0;
  FieldSpec field;
  /// f_i: the degree-d monomials of I°, canonical order.
  std::vector<Monomial> generators;
  /// b_k: the degree-(d+1) monomials of I° \ J°, canonical order.
  std::vector<Monomial> multiples;
  /// epsilon[k][i] = ±1 when b_k = x_j f_i, with sign (-1)^(pos+1) where pos
  /// is the 1-based rank of j in σ_i; 0 when f_i does not divide b_k.
  std::vector<std::vector<int>> epsilon;
  /// Symmetric representatives for F_p, reduced fractions for Q.
  std::vector<std::string> y;
  /// Σ_i epsilon[k][i] y_i for every k.
  std::vector<std::string> residuals;
  bool cycle_condition = false;
  /// ∂z computed from the complex at multidegree [n] vanishes.
  bool boundary_vanishes = false;
  /// Homological degree n - d + 1 has no basis element at [n].
  bool image_empty = false;

  bool valid() const { return cycle_condition && boundary_vanishes && image_empty; }
};

/// Throws NotApplicable unless r > s, NoKernel if the system has only the
/// trivial solution.
KoszulWitness koszul_witness(const FactorPair& pair, const FieldSpec& field);

nlohmann::json to_json(const KoszulWitness& witness);

struct RuleReport {
  std::string rule;
  bool applies = false;
  nlohmann::json data;
};

/// Combinatorial criteria on the normalized pair, each certifying
/// depth I/J = d when it applies: lemma_eq, lemma_g, proposition_p,
/// corollary_1, proposition_2, proposition_3, lemma_use.
std::vector<RuleReport> quick_certificates(const FactorPair& pair);

/// theorem_main followed by quick_certificates.
std::vector<RuleReport> check_rules(const FactorPair& pair);

nlohmann::json to_json(const RuleReport& report);

/// I = V S + x_n U S with U = (I : x_n) ∩ S' and V = I ∩ S', where
/// S' = K[x_1..x_{n-1}].
struct LastVariableSplit {
  /// Zero when u_is_unit.
  MonomialIdeal U;
  MonomialIdeal V;
  /// x_n ∈ I, so (I : x_n) is the unit ideal.
  bool u_is_unit = false;
};

/// Requires n >= 2 and I nonzero.
LastVariableSplit decompose_last_variable(const MonomialIdeal& ideal);

struct TheoremMain1Check {
  int d = 0;
  /// Degree-d monomials of I divisible by x_n.
  std::size_t r = 0;
  /// Counted in S' with U generated by the f_i where x_n f_i runs over
  /// those monomials.
  std::size_t rho_d_U = 0;
  std::size_t rho_d_UcapV = 0;
  bool applies = false;
  /// U = (f_1..f_r) in S'; absent when d = 1 (U is the unit ideal).
  std::optional<MonomialIdeal> U;
  MonomialIdeal V;
};

/// d = indeg(I). Throws NoXnMultiples when r = 0.
TheoremMain1Check check_theorem_main1(const MonomialIdeal& ideal);

struct CorollaryStrCheck {
  int d = 0;
  std::size_t mu = 0;
  std::size_t rho_next = 0;
  bool applies = false;
};

/// Throws NotEquigenerated or Principal.
CorollaryStrCheck check_corollary_str(const MonomialIdeal& ideal);

struct StanleyMinReport {
  int d = 0;
  bool sdepth_is_d = false;
  std::optional<MonomialIdeal> witness_ideal;
  /// depth of I'/(I' ∩ J), present with the witness.
  std::optional<int> witness_depth;
  DepthReport depth;
  /// sdepth_is_d and depth == d.
  bool conjecture_verified = false;
};

/// Requires J generated in degrees > indeg(I).
StanleyMinReport stanley_min_pipeline(const FactorPair& pair, const FieldSpec& field);

}  // namespace sqdepth
