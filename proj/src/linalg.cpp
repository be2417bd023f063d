#include "sqdepth/linalg.hpp"

#include <charconv>
#include <numeric>
#include <unordered_map>

namespace sqdepth {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; std::uint64_t{q} * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1U << 31))
    throw Error(ErrorCode::InvalidArgument,
                "field characteristic " + std::to_string(p) +
                    " is not a prime below 2^31");
  return {Kind::Prime, p};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  constexpr std::string_view prefix = "fp:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto digits = text.substr(prefix.size());
    std::uint32_t p = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() &&
        !digits.empty())
      return prime(p);
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown field '" + std::string(text) +
                  "', expected 'q' or 'fp:<prime>'");
}

std::string FieldSpec::to_string() const {
  return kind == Kind::Rationals ? "q" : "fp:" + std::to_string(p);
}

std::size_t SparseMatrix::nonzeros() const noexcept {
  std::size_t total = 0;
  for (const auto& c : columns_) total += c.size();
  return total;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> out(
      rows_, std::vector<std::int64_t>(columns_.size(), 0));
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& e : columns_[c]) out[e.row][c] = e.value;
  return out;
}

PrimeOps::Value PrimeOps::inv(Value a) const {
  if (a == 0) throw Error(ErrorCode::Internal, "inverse of zero in F_p");
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return from_int(t);
}

std::string PrimeOps::format(Value a) const {
  if (a > p / 2) return "-" + std::to_string(p - a);
  return std::to_string(a);
}

std::size_t rank(const SparseMatrix& m, const FieldSpec& field) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonzeros() == 0) return 0;
  const bool dense = std::max(m.rows(), m.cols()) <= kDenseLimit;
  if (field.kind == FieldSpec::Kind::Prime)
    return dense ? linalg::rank_dense_prime(m, field.p)
                 : linalg::rank_sparse_prime(m, field.p);
  return dense ? linalg::rank_dense_rational(m)
               : linalg::rank_sparse_rational(m);
}

namespace linalg {

std::size_t rank_dense_prime(const SparseMatrix& m, std::uint32_t p) {
  // Columns of m become rows of the work matrix; rank is unaffected.
  const std::size_t height = m.cols();
  const std::size_t width = m.rows();
  std::vector<std::uint32_t> a(height * width, 0);
  const PrimeOps ops{p};
  for (std::size_t c = 0; c < height; ++c)
    for (const auto& e : m.column(c)) a[c * width + e.row] = ops.from_int(e.value);

  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < height; ++col) {
    std::size_t pick = rank;
    while (pick < height && a[pick * width + col] == 0) ++pick;
    if (pick == height) continue;
    if (pick != rank)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pick * width),
                       a.begin() + static_cast<std::ptrdiff_t>((pick + 1) * width),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * width));
    std::uint32_t* pivot = &a[rank * width];
    const std::uint32_t scale = ops.inv(pivot[col]);
    for (std::size_t k = col; k < width; ++k) pivot[k] = ops.mul(pivot[k], scale);
    for (std::size_t i = rank + 1; i < height; ++i) {
      std::uint32_t* row = &a[i * width];
      if (row[col] == 0) continue;
      const std::uint64_t factor = p - row[col];
      for (std::size_t k = col; k < width; ++k)
        if (pivot[k] != 0)
          row[k] = static_cast<std::uint32_t>((row[k] + factor * pivot[k]) % p);
    }
    ++rank;
  }
  return rank;
}

namespace {

// Column reduction keyed on the largest row index of each reduced column.
// Columns are visited sparsest first (a Markowitz-style order) to keep
// fill-in low.
template <class Ops>
std::size_t rank_sparse_generic(const SparseMatrix& m, const Ops& ops) {
  using Value = typename Ops::Value;
  struct Item {
    std::uint32_t row;
    Value value;
  };
  using Column = std::vector<Item>;

  std::vector<std::size_t> order(m.cols());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return m.column(x).size() < m.column(y).size();
  });

  std::vector<Column> reduced;
  std::unordered_map<std::uint32_t, std::size_t> pivot_of;
  Column work, scratch;
  for (std::size_t c : order) {
    work.clear();
    for (const auto& e : m.column(c)) {
      Value v = ops.from_int(e.value);
      if (!ops.is_zero(v)) work.push_back({e.row, std::move(v)});
    }
    while (!work.empty()) {
      const auto it = pivot_of.find(work.back().row);
      if (it == pivot_of.end()) break;
      const Column& pivot = reduced[it->second];
      const Value factor = ops.div(work.back().value, pivot.back().value);
      scratch.clear();
      std::size_t i = 0, j = 0;
      while (i < work.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < work.size() && work[i].row < pivot[j].row)) {
          scratch.push_back(std::move(work[i++]));
        } else if (i == work.size() || pivot[j].row < work[i].row) {
          scratch.push_back({pivot[j].row, ops.neg(ops.mul(factor, pivot[j].value))});
          ++j;
        } else {
          Value v = ops.sub(work[i].value, ops.mul(factor, pivot[j].value));
          if (!ops.is_zero(v)) scratch.push_back({work[i].row, std::move(v)});
          ++i;
          ++j;
        }
      }
      std::swap(work, scratch);
    }
    if (!work.empty()) {
      pivot_of.emplace(work.back().row, reduced.size());
      reduced.push_back(work);
    }
  }
  return reduced.size();
}

}  // namespace

std::size_t rank_sparse_prime(const SparseMatrix& m, std::uint32_t p) {
  return rank_sparse_generic(m, PrimeOps{p});
}

std::size_t rank_sparse_rational(const SparseMatrix& m) {
  return rank_sparse_generic(m, RationalOps{});
}

std::size_t rank_dense_rational(const SparseMatrix& m) {
  using boost::multiprecision::cpp_int;
  const std::size_t height = m.cols();
  const std::size_t width = m.rows();
  std::vector<std::vector<cpp_int>> a(height, std::vector<cpp_int>(width));
  for (std::size_t c = 0; c < height; ++c)
    for (const auto& e : m.column(c)) a[c][e.row] = e.value;

  // Every entry after step k is a (k+1)-minor of the input, so the division
  // by the previous pivot is exact.
  cpp_int previous = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < height; ++col) {
    std::size_t pick = rank;
    while (pick < height && a[pick][col] == 0) ++pick;
    if (pick == height) continue;
    std::swap(a[pick], a[rank]);
    const cpp_int& pivot = a[rank][col];
    for (std::size_t i = rank + 1; i < height; ++i) {
      const cpp_int lead = a[i][col];
      for (std::size_t k = col + 1; k < width; ++k)
        a[i][k] = (a[i][k] * pivot - lead * a[rank][k]) / previous;
      a[i][col] = 0;
    }
    previous = pivot;
    ++rank;
  }
  return rank;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::InvalidArgument, "matrix shapes do not compose");
  SparseMatrix out(a.rows(), b.cols());
  std::vector<std::int64_t> acc(a.rows(), 0);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::fill(acc.begin(), acc.end(), 0);
    for (const auto& eb : b.column(c))
      for (const auto& ea : a.column(eb.row))
        acc[ea.row] += std::int64_t{ea.value} * eb.value;
    auto& col = out.mutable_column(c);
    for (std::size_t r = 0; r < acc.size(); ++r)
      if (acc[r] != 0)
        col.push_back({static_cast<std::uint32_t>(r), static_cast<std::int32_t>(acc[r])});
  }
  return out;
}

}  // namespace linalg
}  // namespace sqdepth
