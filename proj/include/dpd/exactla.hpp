#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpd {

using Residue = std::uint32_t;

/// Base class of every error the engine raises.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

inline constexpr Residue kMaxPrime = 1u << 16;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void check_prime(Residue p) {
  if (!is_prime(p) || p >= kMaxPrime)
    throw Error("modulus " + std::to_string(p) + " is not a prime below 2^16");
}

inline Residue reduce(long long v, Residue p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

inline Residue add_mod(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub_mod(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }
inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}
inline Residue neg_mod(Residue a, Residue p) { return a == 0 ? 0 : p - a; }

inline Residue inv_mod(Residue a, Residue p) {
  if (a % p == 0) throw Error("division by zero in F_p");
  long long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t, p);
}

/// Dense matrix over F_p, row-major.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(Residue p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FpMatrix zero(Residue p, std::size_t rows, std::size_t cols) { return {p, rows, cols}; }

  static FpMatrix identity(Residue p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static FpMatrix from_rows(Residue p, const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(p, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = reduce(rows[i][j], p);
    }
    return m;
  }

  static FpMatrix column(Residue p, const std::vector<long long>& v) {
    FpMatrix m(p, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = reduce(v[i], p);
    return m;
  }

  Residue p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Residue>& data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
  }

  FpMatrix col(std::size_t c) const {
    FpMatrix v(p_, rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
    return v;
  }

  FpMatrix transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  FpMatrix scaled(Residue s) const {
    FpMatrix m = *this;
    for (auto& x : m.data_) x = mul_mod(x, s % p_, p_);
    return m;
  }

  FpMatrix negated() const { return scaled(p_ - 1); }

  /// Submatrix of rows [r0, r0+nr) and columns [c0, c0+nc).
  FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    FpMatrix m(p_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const FpMatrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  void add_block(std::size_t r0, std::size_t c0, const FpMatrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c)
        (*this)(r0 + r, c0 + c) = add_mod((*this)(r0 + r, c0 + c), b(r, c), p_);
  }

  FpMatrix select_cols(std::span<const std::size_t> idx) const {
    FpMatrix m(p_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
    return m;
  }

  FpMatrix select_rows(std::span<const std::size_t> idx) const {
    FpMatrix m(p_, idx.size(), cols_);
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t c = 0; c < cols_; ++c) m(j, c) = (*this)(idx[j], c);
    return m;
  }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    }
    os << "]";
    return os.str();
  }

 private:
  Residue p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

inline void require_same_field(const FpMatrix& a, const FpMatrix& b) {
  if (a.p() != b.p()) throw DimensionMismatch("matrices over different prime fields");
}

inline FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows())
    throw DimensionMismatch("product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  const Residue p = a.p();
  FpMatrix c(p, a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Residue aik = a(i, k);
      if (aik == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        acc[j] += static_cast<std::uint64_t>(aik) * brow[j];
        if (acc[j] >= (1ull << 62)) acc[j] %= p;
      }
    }
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = static_cast<Residue>(acc[j] % p);
  }
  return c;
}

inline FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sum of mismatched matrices");
  FpMatrix c = a;
  c.add_block(0, 0, b);
  return c;
}

inline FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) { return a + b.negated(); }

inline FpMatrix hstack(const std::vector<FpMatrix>& parts, Residue p, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& m : parts) {
    if (m.rows() != rows) throw DimensionMismatch("hstack row mismatch");
    cols += m.cols();
  }
  FpMatrix out(p, rows, cols);
  std::size_t c0 = 0;
  for (const auto& m : parts) {
    out.set_block(0, c0, m);
    c0 += m.cols();
  }
  return out;
}

inline FpMatrix vstack(const std::vector<FpMatrix>& parts, Residue p, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& m : parts) {
    if (m.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += m.rows();
  }
  FpMatrix out(p, rows, cols);
  std::size_t r0 = 0;
  for (const auto& m : parts) {
    out.set_block(r0, 0, m);
    r0 += m.rows();
  }
  return out;
}

/// Block diagonal sum.
inline FpMatrix direct_sum(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  FpMatrix m(a.p(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

inline FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  FpMatrix m(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Residue s = a(i, j);
      if (s == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = mul_mod(s, b(k, l), a.p());
    }
  return m;
}

struct RrefResult {
  FpMatrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Pivots are the first nonzero entry scanning columns left to right.
inline RrefResult rref_rank(FpMatrix m) {
  const Residue p = m.p();
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Residue inv = inv_mod(m(r, c), p);
    if (inv != 1)
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = mul_mod(m(r, j), inv, p);
    auto prow = m.row(r);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Residue f = m(i, c);
      if (f == 0) continue;
      auto irow = m.row(i);
      const Residue nf = p - f;
      for (std::size_t j = c; j < m.cols(); ++j)
        if (prow[j]) irow[j] = static_cast<Residue>((irow[j] + static_cast<std::uint64_t>(nf) * prow[j]) % p);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.rref = std::move(m);
  return out;
}

inline std::size_t rank(const FpMatrix& m) {
  if (m.empty()) return 0;
  // Eliminate along the smaller dimension.
  return m.rows() <= m.cols() ? rref_rank(m).rank : rref_rank(m.transpose()).rank;
}

struct KernelImage {
  FpMatrix kernel;  // columns form a basis of ker(M)
  FpMatrix image;   // columns form a basis of im(M)
};

/// Kernel basis from an RREF: one column per free variable.
inline FpMatrix kernel_from_rref(const RrefResult& r, std::size_t cols) {
  const Residue p = r.rref.p();
  std::vector<char> is_pivot(cols, 0);
  for (auto c : r.pivots) is_pivot[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  FpMatrix k(p, cols, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t i = 0; i < r.rank; ++i) k(r.pivots[i], f) = neg_mod(r.rref(i, free[f]), p);
  }
  return k;
}

inline FpMatrix kernel(const FpMatrix& m) {
  if (m.rows() == 0) return FpMatrix::identity(m.p(), m.cols());
  return kernel_from_rref(rref_rank(m), m.cols());
}

inline KernelImage kernel_image(const FpMatrix& m) {
  if (m.rows() == 0) return {FpMatrix::identity(m.p(), m.cols()), FpMatrix(m.p(), 0, 0)};
  auto r = rref_rank(m);
  return {kernel_from_rref(r, m.cols()), m.select_cols(r.pivots)};
}

/// Basis (as columns) of the column space of m.
inline FpMatrix column_space(const FpMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return FpMatrix(m.p(), m.rows(), 0);
  return m.select_cols(rref_rank(m).pivots);
}

/// Rows form a basis of the left null space: Q with Q * m = 0 and rank Q = rows - rank m.
inline FpMatrix left_kernel(const FpMatrix& m) {
  if (m.cols() == 0) return FpMatrix::identity(m.p(), m.rows());
  return kernel(m.transpose()).transpose();
}

/// Some x with a*x = b (b may have several columns), or nullopt when inconsistent.
inline std::optional<FpMatrix> solve_linear(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw DimensionMismatch("solve_linear: row counts differ");
  const Residue p = a.p();
  const std::size_t n = a.cols();
  FpMatrix aug(p, a.rows(), n + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  auto r = rref_rank(std::move(aug));
  FpMatrix x(p, n, b.cols());
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.rref(i, n + j);
  }
  if (!(a * x == b)) throw Error("solve_linear: substitution check failed");
  return x;
}

inline std::optional<FpMatrix> inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (m.rows() == 0) return m;
  auto x = solve_linear(m, FpMatrix::identity(m.p(), m.rows()));
  if (!x || !(*x * m == FpMatrix::identity(m.p(), m.rows()))) return std::nullopt;
  return x;
}

inline bool is_invertible(const FpMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Coordinates with respect to a basis given as the columns of a full-column-rank matrix.
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  explicit CoordinateSolver(FpMatrix basis) : basis_(std::move(basis)) {
    if (basis_.cols() == 0) return;
    auto r = rref_rank(basis_.transpose());
    if (r.rank != basis_.cols()) throw Error("CoordinateSolver: basis columns are dependent");
    rows_ = r.pivots;
    auto sub = basis_.select_rows(rows_);
    auto inv = inverse(sub);
    if (!inv) throw Error("CoordinateSolver: singular pivot block");
    inv_ = std::move(*inv);
  }

  std::size_t dim() const { return basis_.cols(); }
  const FpMatrix& basis() const { return basis_; }

  /// Coordinates of v (column or several columns), nullopt when v is outside the span.
  std::optional<FpMatrix> coordinates(const FpMatrix& v) const {
    if (basis_.cols() == 0) {
      if (!v.is_zero()) return std::nullopt;
      return FpMatrix(v.p(), 0, v.cols());
    }
    FpMatrix c = inv_ * v.select_rows(rows_);
    if (!(basis_ * c == v)) return std::nullopt;
    return c;
  }

 private:
  FpMatrix basis_;
  std::vector<std::size_t> rows_;
  FpMatrix inv_;
};

}  // namespace dpd
