#include "sqdepth/core.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace sqdepth {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnitIdeal: return "UnitIdeal";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroModule: return "ZeroModule";
    case ErrorCode::GuardExceeded: return "GuardExceeded";
    case ErrorCode::EmptyLeftSide: return "EmptyLeftSide";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NoKernel: return "NoKernel";
    case ErrorCode::NotEquigenerated: return "NotEquigenerated";
    case ErrorCode::Principal: return "Principal";
    case ErrorCode::NoXnMultiples: return "NoXnMultiples";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

void check_variable_count(int n) {
  if (n < 1 || n > kMaxVariables)
    throw Error(ErrorCode::IndexOutOfRange,
                "variable count " + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxVariables) + "]");
}

Monomial Monomial::from_indices(std::span<const int> indices, int n) {
  check_variable_count(n);
  Mask bits = 0;
  for (int j : indices) {
    if (j < 1 || j > n)
      throw Error(ErrorCode::IndexOutOfRange,
                  "variable x" + std::to_string(j) + " outside x1..x" +
                      std::to_string(n));
    bits |= Mask{1} << (j - 1);
  }
  return Monomial(bits);
}

std::vector<int> Monomial::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for (Mask b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string Monomial::to_string() const {
  if (bits_ == 0) return "1";
  std::string out;
  for (int j : indices()) {
    if (!out.empty()) out += '*';
    out += 'x';
    out += std::to_string(j);
  }
  return out;
}

MonomialIdeal::MonomialIdeal(int n) : n_(n) { check_variable_count(n); }

MonomialIdeal MonomialIdeal::from_generators(int n, std::vector<Monomial> gens) {
  return minimalize(std::move(gens), n);
}

int MonomialIdeal::indeg() const {
  if (gens_.empty())
    throw Error(ErrorCode::InvalidArgument, "initial degree of the zero ideal");
  return gens_.front().degree();
}

bool MonomialIdeal::is_equigenerated() const noexcept {
  return gens_.empty() || gens_.front().degree() == gens_.back().degree();
}

std::string MonomialIdeal::to_string() const {
  if (gens_.empty()) return "0";
  std::string out;
  for (Monomial g : gens_) {
    if (!out.empty()) out += ", ";
    out += g.to_string();
  }
  return out;
}

MonomialIdeal minimalize(std::vector<Monomial> gens, int n) {
  check_variable_count(n);
  const Mask allowed = low_bits(n);
  for (Monomial g : gens) {
    if (g.bits() & ~allowed)
      throw Error(ErrorCode::IndexOutOfRange,
                  "monomial " + g.to_string() + " uses a variable beyond x" +
                      std::to_string(n));
    if (g.is_one())
      throw Error(ErrorCode::UnitIdeal, "the unit ideal is not supported");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // Sorted by degree, so a divisor of g always precedes g.
  std::vector<Monomial> minimal;
  for (Monomial g : gens) {
    const bool redundant = std::any_of(minimal.begin(), minimal.end(),
                                       [g](Monomial m) { return m.divides(g); });
    if (!redundant) minimal.push_back(g);
  }

  MonomialIdeal ideal(n);
  ideal.gens_ = std::move(minimal);
  return ideal;
}

std::vector<Monomial> enumerate_degree(const MonomialIdeal& ideal, int d) {
  std::vector<Monomial> out;
  if (ideal.is_zero() || d < 0 || d > ideal.n()) return out;
  for_each_subset_of_size(ideal.n(), d, [&](Mask m) {
    if (ideal.contains(Monomial(m))) out.emplace_back(m);
  });
  return out;
}

std::size_t rho(const MonomialIdeal& ideal, int d) {
  std::size_t count = 0;
  if (ideal.is_zero() || d < 0 || d > ideal.n()) return count;
  for_each_subset_of_size(ideal.n(), d, [&](Mask m) {
    if (ideal.contains(Monomial(m))) ++count;
  });
  return count;
}

namespace {

void require_same_ring(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.n() != b.n())
    throw Error(ErrorCode::InvalidArgument,
                "ideals live in rings with " + std::to_string(a.n()) + " and " +
                    std::to_string(b.n()) + " variables");
}

}  // namespace

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_ring(a, b);
  std::vector<Monomial> lcms;
  lcms.reserve(a.num_gens() * b.num_gens());
  for (Monomial f : a.gens())
    for (Monomial g : b.gens()) lcms.push_back(f.lcm(g));
  return minimalize(std::move(lcms), a.n());
}

MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_ring(a, b);
  std::vector<Monomial> gens(a.gens().begin(), a.gens().end());
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return minimalize(std::move(gens), a.n());
}

MonomialIdeal colon_by_variable(const MonomialIdeal& ideal, int j) {
  if (j < 1 || j > ideal.n())
    throw Error(ErrorCode::IndexOutOfRange, "colon by x" + std::to_string(j));
  std::vector<Monomial> gens;
  gens.reserve(ideal.num_gens());
  for (Monomial g : ideal.gens()) gens.push_back(g.without_variable(j));
  return minimalize(std::move(gens), ideal.n());
}

MonomialIdeal degree_part(const MonomialIdeal& ideal, int d) {
  return minimalize(enumerate_degree(ideal, d), ideal.n());
}

MonomialIdeal extend_ring(const MonomialIdeal& ideal, int m) {
  if (m < ideal.n())
    throw Error(ErrorCode::InvalidArgument, "cannot shrink the ring");
  return minimalize({ideal.gens().begin(), ideal.gens().end()}, m);
}

MonomialIdeal multiply_by_variable(const MonomialIdeal& ideal, int j) {
  if (j < 1 || j > ideal.n())
    throw Error(ErrorCode::IndexOutOfRange, "x" + std::to_string(j));
  std::vector<Monomial> gens;
  for (Monomial g : ideal.gens()) gens.push_back(g.times_variable(j));
  return minimalize(std::move(gens), ideal.n());
}

Restriction restrict_to_subring(const MonomialIdeal& ideal,
                                std::span<const int> vars) {
  const Monomial support = Monomial::from_indices(vars, ideal.n());
  Restriction out{MonomialIdeal(std::max(1, support.degree())),
                  support.indices()};
  std::vector<Monomial> gens;
  for (Monomial g : ideal.gens())
    if (g.divides(support)) gens.emplace_back(extract(g.bits(), support.bits()));
  out.ideal = minimalize(std::move(gens), std::max(1, support.degree()));
  return out;
}

FactorPair::FactorPair(MonomialIdeal i, MonomialIdeal j)
    : i_(std::move(i)), j_(std::move(j)) {
  if (i_.n() != j_.n())
    throw Error(ErrorCode::InvalidPair, "I and J live in different rings");
  for (Monomial g : j_.gens())
    if (!i_.contains(g))
      throw Error(ErrorCode::InvalidPair,
                  "J is not contained in I: " + g.to_string() + " is not in I");
  if (i_ == j_) throw Error(ErrorCode::InvalidPair, "I equals J");
}

std::vector<Monomial> factor_monomials(const FactorPair& pair, int d) {
  std::vector<Monomial> out;
  for (Monomial m : enumerate_degree(pair.I(), d))
    if (!pair.J().contains(m)) out.push_back(m);
  return out;
}

const char* to_string(ModuleRole role) {
  switch (role) {
    case ModuleRole::Ideal: return "ideal";
    case ModuleRole::Quotient: return "quotient";
    case ModuleRole::Factor: return "factor";
  }
  return "unknown";
}

ModulePredicate ModulePredicate::ideal(MonomialIdeal i) {
  const int n = i.n();
  return ModulePredicate(ModuleRole::Ideal, std::move(i), MonomialIdeal(n));
}

ModulePredicate ModulePredicate::quotient(MonomialIdeal i) {
  const int n = i.n();
  return ModulePredicate(ModuleRole::Quotient, std::move(i), MonomialIdeal(n));
}

ModulePredicate ModulePredicate::factor(const FactorPair& pair) {
  return ModulePredicate(ModuleRole::Factor, pair.I(), pair.J());
}

}  // namespace sqdepth
