#pragma once

#include <cstddef>
#include <vector>

#include "sqdepth/core.hpp"
#include "sqdepth/linalg.hpp"

namespace sqdepth {

/// The Koszul complex of a square-free module restricted to one square-free
/// multidegree a. In homological degree i the basis is every σ ⊆ a with
/// |σ| = i whose complement a \ σ is a monomial of the module, listed in
/// increasing bitset order.
struct MultidegreeComplex {
  int n = 0;
  Mask a = 0;
  /// basis[i] for i = 0..|a|, as global σ masks.
  std::vector<std::vector<Mask>> basis;
  /// boundary[i] maps basis[i] to basis[i-1]; boundary[0] is 0 x |basis[0]|.
  std::vector<SparseMatrix> boundary;

  int top() const noexcept { return popcount(a); }
};

/// Entry (σ\{j}, σ) of ∂_i is (-1)^(k+1) when j is the k-th smallest element
/// of σ and a \ (σ\{j}) is in the module, else 0.
MultidegreeComplex build_complex(const ModulePredicate& module, Mask a);

/// h[i] = dim_K H_i of the complex at multidegree a, for i = 0..|a|.
std::vector<std::size_t> homology_dims(const ModulePredicate& module, Mask a,
                                       const FieldSpec& field);

/// ∂_{i-1} ∘ ∂_i vanishes for every i (as an integer matrix, hence over any
/// field) and the Euler characteristic of the chain groups matches that of
/// the homology computed over `field`.
bool verify_complex(const MultidegreeComplex& complex, const FieldSpec& field);

struct DepthReport {
  int n = 0;
  int pd = 0;
  int depth = 0;
  /// H_{witness_i} is nonzero at multidegree witness_a, and witness_i = pd.
  int witness_i = 0;
  Mask witness_a = 0;
  std::size_t witness_dim = 0;
  FieldSpec field;
};

struct EngineOptions {
  /// Allow more than kGuardVariables variables.
  bool force = false;
  /// Rebuild and verify every complex the search touches.
  bool check_invariants = false;
};

inline constexpr int kGuardVariables = 20;

struct EngineStats {
  std::size_t multidegrees_visited = 0;
  std::size_t ranks_computed = 0;
  std::size_t complexes_checked = 0;
  std::size_t invariant_failures = 0;
};

/// pd of the module: the largest i with H_i(a) != 0 for some square-free a.
/// The witness is the smallest such a in canonical (degree, value) order.
/// Throws ZeroModule for the zero module and GuardExceeded when n is over
/// kGuardVariables without options.force.
DepthReport projective_dimension(const ModulePredicate& module,
                                 const FieldSpec& field,
                                 const EngineOptions& options = {},
                                 EngineStats* stats = nullptr);

/// depth = n - pd (Auslander-Buchsbaum).
inline DepthReport depth(const ModulePredicate& module, const FieldSpec& field,
                         const EngineOptions& options = {},
                         EngineStats* stats = nullptr) {
  return projective_dimension(module, field, options, stats);
}

DepthReport depth_factor(const FactorPair& pair, const FieldSpec& field,
                         const EngineOptions& options = {});
DepthReport depth_ideal(const MonomialIdeal& ideal, const FieldSpec& field,
                        const EngineOptions& options = {});
DepthReport depth_quotient(const MonomialIdeal& ideal, const FieldSpec& field,
                           const EngineOptions& options = {});

}  // namespace sqdepth
