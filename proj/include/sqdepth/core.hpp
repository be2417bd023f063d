#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "sqdepth/bits.hpp"
#include "sqdepth/error.hpp"

namespace sqdepth {

inline constexpr int kMaxVariables = 63;

/// A square-free monomial x_{j1}...x_{jd}, stored as the bitset of its
/// support. Bit k stands for variable x_{k+1}; the empty set is the monomial 1.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(Mask bits) : bits_(bits) {}

  /// Builds from 1-based variable indices, checking them against n.
  static Monomial from_indices(std::span<const int> indices, int n);

  constexpr Mask bits() const noexcept { return bits_; }
  constexpr int degree() const noexcept { return popcount(bits_); }
  constexpr bool is_one() const noexcept { return bits_ == 0; }

  constexpr bool divides(Monomial other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  /// 1-based.
  constexpr bool has_variable(int j) const noexcept {
    return (bits_ >> (j - 1)) & 1U;
  }
  constexpr Monomial lcm(Monomial other) const noexcept {
    return Monomial(bits_ | other.bits_);
  }
  constexpr Monomial gcd(Monomial other) const noexcept {
    return Monomial(bits_ & other.bits_);
  }
  constexpr Monomial times_variable(int j) const noexcept {
    return Monomial(bits_ | (Mask{1} << (j - 1)));
  }
  constexpr Monomial without_variable(int j) const noexcept {
    return Monomial(bits_ & ~(Mask{1} << (j - 1)));
  }

  /// Sorted 1-based indices of the support.
  std::vector<int> indices() const;
  /// "x1*x3"; the monomial 1 prints as "1".
  std::string to_string() const;

  /// Canonical order: degree first, then the numeric value of the bitset.
  friend constexpr std::strong_ordering operator<=>(Monomial a,
                                                    Monomial b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }
  friend constexpr bool operator==(Monomial, Monomial) noexcept = default;

 private:
  Mask bits_ = 0;
};

void check_variable_count(int n);

/// A square-free monomial ideal of K[x_1..x_n], held as its minimal
/// generators in canonical order. The unit ideal is not representable.
class MonomialIdeal {
 public:
  /// The zero ideal of K[x_1..x_n].
  explicit MonomialIdeal(int n = 1);

  /// Minimalizes and canonicalizes `gens`. Throws IndexOutOfRange when a
  /// generator does not fit in n variables and UnitIdeal for the monomial 1.
  static MonomialIdeal from_generators(int n, std::vector<Monomial> gens);

  int n() const noexcept { return n_; }
  std::span<const Monomial> gens() const noexcept { return gens_; }
  std::size_t num_gens() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }

  bool contains(Monomial m) const noexcept {
    for (Monomial g : gens_)
      if (g.divides(m)) return true;
    return false;
  }

  /// Least generator degree. Throws InvalidArgument on the zero ideal.
  int indeg() const;
  bool is_equigenerated() const noexcept;

  std::string to_string() const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;
  friend MonomialIdeal minimalize(std::vector<Monomial> gens, int n);

 private:
  int n_;
  std::vector<Monomial> gens_;
};

MonomialIdeal minimalize(std::vector<Monomial> gens, int n);

/// All degree-d square-free monomials of I in canonical order.
std::vector<Monomial> enumerate_degree(const MonomialIdeal& ideal, int d);
/// rho_d(I): the number of square-free monomials of degree d in I.
std::size_t rho(const MonomialIdeal& ideal, int d);

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b);
/// (I : x_j), 1-based j.
MonomialIdeal colon_by_variable(const MonomialIdeal& ideal, int j);
/// The ideal generated by the degree-d square-free monomials of I.
MonomialIdeal degree_part(const MonomialIdeal& ideal, int d);
/// The same generators viewed in K[x_1..x_m], m >= n.
MonomialIdeal extend_ring(const MonomialIdeal& ideal, int m);
/// x_j * I, 1-based j, keeping the ring.
MonomialIdeal multiply_by_variable(const MonomialIdeal& ideal, int j);

struct Restriction {
  MonomialIdeal ideal;
  /// variables[k] is the original 1-based index of new variable x_{k+1}.
  std::vector<int> variables;
};

/// I ∩ K[x_v : v in vars], re-indexed to |vars| variables in increasing
/// order of the original indices.
Restriction restrict_to_subring(const MonomialIdeal& ideal,
                                std::span<const int> vars);

/// J ⊊ I, both over the same ring. J may be zero.
class FactorPair {
 public:
  FactorPair(MonomialIdeal i, MonomialIdeal j);

  const MonomialIdeal& I() const noexcept { return i_; }
  const MonomialIdeal& J() const noexcept { return j_; }
  int n() const noexcept { return i_.n(); }

  friend bool operator==(const FactorPair&, const FactorPair&) = default;

 private:
  MonomialIdeal i_;
  MonomialIdeal j_;
};

/// Degree-d monomials in I but not in J.
std::vector<Monomial> factor_monomials(const FactorPair& pair, int d);

enum class ModuleRole { Ideal, Quotient, Factor };

const char* to_string(ModuleRole role);

/// A square-free multigraded module presented by which square-free
/// multidegrees carry a copy of K: I itself, S/I, or I/J.
class ModulePredicate {
 public:
  static ModulePredicate ideal(MonomialIdeal i);
  static ModulePredicate quotient(MonomialIdeal i);
  static ModulePredicate factor(const FactorPair& pair);

  ModuleRole role() const noexcept { return role_; }
  int n() const noexcept { return i_.n(); }
  const MonomialIdeal& I() const noexcept { return i_; }
  const MonomialIdeal& J() const noexcept { return j_; }

  bool contains(Mask a) const noexcept {
    const Monomial m(a);
    switch (role_) {
      case ModuleRole::Ideal:
        return i_.contains(m);
      case ModuleRole::Quotient:
        return !i_.contains(m);
      case ModuleRole::Factor:
        return i_.contains(m) && !j_.contains(m);
    }
    return false;
  }

  bool is_zero() const noexcept {
    return role_ == ModuleRole::Ideal && i_.is_zero();
  }

 private:
  ModulePredicate(ModuleRole role, MonomialIdeal i, MonomialIdeal j)
      : role_(role), i_(std::move(i)), j_(std::move(j)) {}

  ModuleRole role_;
  MonomialIdeal i_;
  MonomialIdeal j_;
};

}  // namespace sqdepth
