#include "sqdepth/homology.hpp"

#include <algorithm>
#include <limits>

namespace sqdepth {

namespace {

constexpr int kTableVariables = 26;

// Membership of every square-free multidegree, or an on-the-fly predicate when
// the ring is too large to tabulate.
class Membership {
 public:
  explicit Membership(const ModulePredicate& module) : module_(module) {
    const int n = module.n();
    if (n > kTableVariables) return;
    const std::size_t size = std::size_t{1} << n;
    table_.assign(size, 0);
    std::vector<std::uint8_t> in_j;
    mark_upset(module.I(), table_);
    if (module.role() == ModuleRole::Factor) {
      in_j.assign(size, 0);
      mark_upset(module.J(), in_j);
    }
    for (std::size_t m = 0; m < size; ++m) {
      switch (module.role()) {
        case ModuleRole::Ideal: break;
        case ModuleRole::Quotient: table_[m] ^= 1; break;
        case ModuleRole::Factor: table_[m] &= static_cast<std::uint8_t>(!in_j[m]); break;
      }
    }
  }

  bool operator()(Mask m) const {
    return table_.empty() ? module_.contains(m) : table_[m] != 0;
  }

 private:
  static void mark_upset(const MonomialIdeal& ideal, std::vector<std::uint8_t>& t) {
    for (Monomial g : ideal.gens()) t[g.bits()] = 1;
    const std::size_t size = t.size();
    for (std::size_t bit = 1; bit < size; bit <<= 1)
      for (std::size_t m = 0; m < size; ++m)
        if ((m & bit) == 0 && t[m]) t[m | bit] = 1;
  }

  const ModulePredicate& module_;
  std::vector<std::uint8_t> table_;
};

// The complex at one multidegree in local coordinates: bit k of a local mask
// is the k-th variable of a. Levels are indexed by |τ| where τ = a \ σ is the
// module monomial, so homological degree i lives at level |a| - i.
class LocalComplex {
 public:
  LocalComplex(const Membership& member, Mask a) : a_(a), width_(popcount(a)) {
    const std::size_t size = std::size_t{1} << width_;
    present_.assign(size, 0);
    index_.assign(size, 0);
    levels_.assign(static_cast<std::size_t>(width_) + 1, {});
    // Submasks of a in increasing order correspond to local masks 0, 1, 2...
    Mask sub = 0;
    for (std::size_t local = 0; local < size; ++local) {
      if (member(sub)) {
        present_[local] = 1;
        levels_[static_cast<std::size_t>(popcount(local))].push_back(local);
      }
      sub = (sub - a) & a;
    }
    // Increasing σ is decreasing τ within a level.
    for (auto& level : levels_) {
      const auto count = static_cast<std::uint32_t>(level.size());
      for (std::uint32_t pos = 0; pos < count; ++pos)
        index_[level[pos]] = count - 1 - pos;
    }
  }

  int width() const noexcept { return width_; }
  Mask a() const noexcept { return a_; }

  std::size_t dim(int i) const {
    if (i < 0 || i > width_) return 0;
    return levels_[static_cast<std::size_t>(width_ - i)].size();
  }

  /// Global σ masks of basis(i) in increasing order.
  std::vector<Mask> basis(int i) const {
    std::vector<Mask> out;
    if (i < 0 || i > width_) return out;
    const auto& level = levels_[static_cast<std::size_t>(width_ - i)];
    const Mask full = low_bits(width_);
    for (auto it = level.rbegin(); it != level.rend(); ++it)
      out.push_back(deposit(full ^ *it, a_));
    return out;
  }

  /// ∂_i : basis(i) -> basis(i-1).
  SparseMatrix boundary(int i) const {
    if (i < 1 || i > width_) return SparseMatrix(dim(i - 1), dim(i));
    SparseMatrix m(dim(i - 1), dim(i));
    const Mask full = low_bits(width_);
    for (Mask tau : levels_[static_cast<std::size_t>(width_ - i)]) {
      auto& column = m.mutable_column(index_[tau]);
      const Mask sigma = full ^ tau;
      for (Mask rest = sigma; rest != 0; rest &= rest - 1) {
        const Mask bit = rest & (~rest + 1);
        const Mask target = tau | bit;
        if (!present_[target]) continue;
        const bool even = popcount(sigma & (bit - 1)) % 2 == 0;
        column.push_back({index_[target], even ? 1 : -1});
      }
      std::sort(column.begin(), column.end(),
                [](const auto& x, const auto& y) { return x.row < y.row; });
    }
    return m;
  }

 private:
  Mask a_;
  int width_;
  std::vector<std::uint8_t> present_;
  std::vector<std::uint32_t> index_;
  std::vector<std::vector<Mask>> levels_;
};

// Smallest possible |τ| for a module monomial τ ⊆ a, or -1 when there is none
// (only ever a lower bound; the exact check happens in LocalComplex).
int min_member_degree(const ModulePredicate& module, Mask a) {
  if (module.role() == ModuleRole::Quotient) return 0;
  int best = -1;
  for (Monomial g : module.I().gens())
    if (g.divides(Monomial(a)) && (best < 0 || g.degree() < best)) best = g.degree();
  return best;
}

std::size_t homology_at(const LocalComplex& local, int i, const FieldSpec& field,
                        EngineStats* stats) {
  const std::size_t dim = local.dim(i);
  if (dim == 0) return 0;
  const std::size_t r_in = rank(local.boundary(i), field);
  const std::size_t r_out = rank(local.boundary(i + 1), field);
  if (stats) stats->ranks_computed += 2;
  return dim - r_in - r_out;
}

MultidegreeComplex to_complex(const LocalComplex& local, int n, Mask a) {
  MultidegreeComplex out;
  out.n = n;
  out.a = a;
  for (int i = 0; i <= local.width(); ++i) {
    out.basis.push_back(local.basis(i));
    out.boundary.push_back(local.boundary(i));
  }
  return out;
}

void check_mask(const ModulePredicate& module, Mask a) {
  if (a & ~low_bits(module.n()))
    throw Error(ErrorCode::IndexOutOfRange, "multidegree outside the ring");
}

}  // namespace

MultidegreeComplex build_complex(const ModulePredicate& module, Mask a) {
  check_mask(module, a);
  const Membership member(module);
  return to_complex(LocalComplex(member, a), module.n(), a);
}

std::vector<std::size_t> homology_dims(const ModulePredicate& module, Mask a,
                                       const FieldSpec& field) {
  check_mask(module, a);
  const Membership member(module);
  const LocalComplex local(member, a);
  std::vector<std::size_t> ranks(static_cast<std::size_t>(local.width()) + 2, 0);
  for (int i = 1; i <= local.width(); ++i)
    ranks[static_cast<std::size_t>(i)] = rank(local.boundary(i), field);
  std::vector<std::size_t> h;
  for (int i = 0; i <= local.width(); ++i)
    h.push_back(local.dim(i) - ranks[static_cast<std::size_t>(i)] -
                ranks[static_cast<std::size_t>(i) + 1]);
  return h;
}

bool verify_complex(const MultidegreeComplex& complex, const FieldSpec& field) {
  const int top = complex.top();
  for (int i = 2; i <= top; ++i) {
    const auto product = linalg::multiply(complex.boundary[static_cast<std::size_t>(i - 1)],
                                          complex.boundary[static_cast<std::size_t>(i)]);
    if (product.nonzeros() != 0) return false;
  }
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int i = 1; i <= top; ++i)
    ranks[static_cast<std::size_t>(i)] = rank(complex.boundary[static_cast<std::size_t>(i)], field);
  long long chain_euler = 0;
  long long homology_euler = 0;
  for (int i = 0; i <= top; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto dim = static_cast<long long>(complex.basis[idx].size());
    const long long h = dim - static_cast<long long>(ranks[idx]) -
                        static_cast<long long>(ranks[idx + 1]);
    if (h < 0) return false;
    const long long sign = i % 2 == 0 ? 1 : -1;
    chain_euler += sign * dim;
    homology_euler += sign * h;
  }
  return chain_euler == homology_euler;
}

DepthReport projective_dimension(const ModulePredicate& module,
                                 const FieldSpec& field,
                                 const EngineOptions& options,
                                 EngineStats* stats) {
  const int n = module.n();
  if (module.is_zero())
    throw Error(ErrorCode::ZeroModule, "depth of the zero module is undefined");
  if (n > kGuardVariables && !options.force)
    throw Error(ErrorCode::GuardExceeded,
                "depth computation over " + std::to_string(n) +
                    " variables needs --force (limit " +
                    std::to_string(kGuardVariables) + ")");

  const Membership member(module);
  auto visit = [&](const LocalComplex& local) {
    if (stats) ++stats->multidegrees_visited;
    if (options.check_invariants) {
      const auto complex = to_complex(local, n, local.a());
      if (stats) ++stats->complexes_checked;
      if (!verify_complex(complex, field)) {
        if (stats) ++stats->invariant_failures;
        throw Error(ErrorCode::Internal, "Koszul complex invariant violated");
      }
    }
  };

  // Largest multidegrees first: H_i(a) needs |a| >= i, so once |a| drops to
  // the best index found no later multidegree can improve it.
  int best = -1;
  for (int size = n; size >= 0 && size > best; --size) {
    for_each_subset_of_size(n, size, [&](Mask a) {
      const int min_deg = min_member_degree(module, a);
      if (min_deg < 0) return;
      const int bound = size - min_deg;
      if (bound <= best) return;
      const LocalComplex local(member, a);
      visit(local);
      std::size_t rank_above = 0;  // rank of ∂_{i+1}
      for (int i = bound; i > best; --i) {
        const std::size_t dim = local.dim(i);
        const std::size_t rank_here = dim == 0 ? 0 : rank(local.boundary(i), field);
        if (stats && dim != 0) ++stats->ranks_computed;
        if (dim > rank_here + rank_above) {
          best = i;
          break;
        }
        rank_above = rank_here;
      }
    });
  }
  if (best < 0) throw Error(ErrorCode::ZeroModule, "module has no monomials");

  DepthReport report;
  report.n = n;
  report.pd = best;
  report.depth = n - best;
  report.field = field;
  bool found = false;
  for (int size = best; size <= n && !found; ++size) {
    for_each_subset_of_size(n, size, [&](Mask a) {
      const int min_deg = min_member_degree(module, a);
      if (min_deg < 0 || size - min_deg < best) return true;
      const LocalComplex local(member, a);
      const std::size_t h = homology_at(local, best, field, stats);
      if (h == 0) return true;
      report.witness_i = best;
      report.witness_a = a;
      report.witness_dim = h;
      found = true;
      return false;
    });
  }
  if (!found) throw Error(ErrorCode::Internal, "lost the projective dimension witness");
  return report;
}

DepthReport depth_factor(const FactorPair& pair, const FieldSpec& field,
                         const EngineOptions& options) {
  return depth(ModulePredicate::factor(pair), field, options);
}

DepthReport depth_ideal(const MonomialIdeal& ideal, const FieldSpec& field,
                        const EngineOptions& options) {
  return depth(ModulePredicate::ideal(ideal), field, options);
}

DepthReport depth_quotient(const MonomialIdeal& ideal, const FieldSpec& field,
                           const EngineOptions& options) {
  return depth(ModulePredicate::quotient(ideal), field, options);
}

}  // namespace sqdepth
