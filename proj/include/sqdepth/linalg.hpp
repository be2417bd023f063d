#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqdepth/error.hpp"

namespace sqdepth {

/// The coefficient field K: the rationals or F_p.
struct FieldSpec {
  enum class Kind { Rationals, Prime };

  Kind kind = Kind::Prime;
  std::uint32_t p = 32003;

  static FieldSpec rationals() { return {Kind::Rationals, 0}; }
  /// Throws InvalidArgument unless p is a prime below 2^31.
  static FieldSpec prime(std::uint32_t p);
  /// Accepts "q" and "fp:<prime>".
  static FieldSpec parse(std::string_view text);

  std::string to_string() const;
  std::uint32_t characteristic() const { return kind == Kind::Prime ? p : 0; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Sparse integer matrix stored column by column; rows within a column are
/// strictly increasing.
class SparseMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::int32_t value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::span<const Entry> column(std::size_t c) const { return columns_[c]; }
  std::vector<Entry>& mutable_column(std::size_t c) { return columns_[c]; }
  std::size_t nonzeros() const noexcept;

  /// Dense row-major copy, mainly for tests and small systems.
  std::vector<std::vector<std::int64_t>> to_dense() const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

/// Matrices whose larger side is at most this many go through dense
/// elimination; bigger ones through sparse column reduction.
inline constexpr std::size_t kDenseLimit = 2048;

std::size_t rank(const SparseMatrix& m, const FieldSpec& field);

namespace linalg {

std::size_t rank_dense_prime(const SparseMatrix& m, std::uint32_t p);
std::size_t rank_sparse_prime(const SparseMatrix& m, std::uint32_t p);
/// Fraction-free (Bareiss) elimination over the integers.
std::size_t rank_dense_rational(const SparseMatrix& m);
std::size_t rank_sparse_rational(const SparseMatrix& m);

/// Product A*B with integer entries, used to check boundary compositions.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace linalg

/// Arithmetic in F_p with canonical representatives in [0, p).
struct PrimeOps {
  using Value = std::uint32_t;
  std::uint32_t p;

  Value zero() const { return 0; }
  Value one() const { return 1 % p; }
  Value from_int(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<Value>(((v % m) + m) % m);
  }
  Value add(Value a, Value b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Value>(s >= p ? s - p : s);
  }
  Value neg(Value a) const { return a == 0 ? 0 : p - a; }
  Value sub(Value a, Value b) const { return add(a, neg(b)); }
  Value mul(Value a, Value b) const {
    return static_cast<Value>((std::uint64_t{a} * b) % p);
  }
  Value inv(Value a) const;
  Value div(Value a, Value b) const { return mul(a, inv(b)); }
  bool is_zero(Value a) const { return a == 0; }
  /// Symmetric representative, so p-1 prints as "-1".
  std::string format(Value a) const;
};

struct RationalOps {
  using Value = boost::multiprecision::cpp_rational;

  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value from_int(std::int64_t v) const { return Value(v); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value inv(const Value& a) const { return Value(1) / a; }
  Value div(const Value& a, const Value& b) const { return a / b; }
  bool is_zero(const Value& a) const { return a == 0; }
  std::string format(const Value& a) const { return a.str(); }
};

/// Reduced row echelon form of a dense matrix in place; returns the pivot
/// column of each nonzero row, in order.
template <class Ops>
std::vector<std::size_t> row_reduce(
    std::vector<std::vector<typename Ops::Value>>& rows, std::size_t cols,
    const Ops& ops) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pick = r;
    while (pick < rows.size() && ops.is_zero(rows[pick][c])) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[r], rows[pick]);
    const auto scale = ops.inv(rows[r][c]);
    for (auto& v : rows[r]) v = ops.mul(v, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || ops.is_zero(rows[i][c])) continue;
      const auto factor = rows[i][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[i][k] = ops.sub(rows[i][k], ops.mul(factor, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Kernel basis vector of an integer matrix attached to its first free
/// column (free variable set to 1, other free variables 0). Empty when the
/// kernel is trivial.
template <class Ops>
std::vector<typename Ops::Value> first_kernel_vector(
    const std::vector<std::vector<std::int64_t>>& matrix, std::size_t cols,
    const Ops& ops) {
  std::vector<std::vector<typename Ops::Value>> rows;
  rows.reserve(matrix.size());
  for (const auto& row : matrix) {
    auto& out = rows.emplace_back();
    out.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c) out.push_back(ops.from_int(row[c]));
  }
  const auto pivots = row_reduce(rows, cols, ops);

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  const auto free_it = std::find(is_pivot.begin(), is_pivot.end(), false);
  if (free_it == is_pivot.end()) return {};
  const auto free_col = static_cast<std::size_t>(free_it - is_pivot.begin());

  std::vector<typename Ops::Value> y(cols, ops.zero());
  y[free_col] = ops.one();
  for (std::size_t r = 0; r < pivots.size(); ++r)
    y[pivots[r]] = ops.neg(rows[r][free_col]);
  return y;
}

/// m * x over the field of `ops`.
template <class Ops>
std::vector<typename Ops::Value> apply(const SparseMatrix& m,
                                       std::span<const typename Ops::Value> x,
                                       const Ops& ops) {
  if (x.size() != m.cols())
    throw Error(ErrorCode::InvalidArgument, "vector length mismatch");
  std::vector<typename Ops::Value> out(m.rows(), ops.zero());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (ops.is_zero(x[c])) continue;
    for (const auto& e : m.column(c))
      out[e.row] = ops.add(out[e.row], ops.mul(ops.from_int(e.value), x[c]));
  }
  return out;
}

}  // namespace sqdepth
