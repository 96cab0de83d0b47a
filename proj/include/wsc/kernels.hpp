#pragma once

// Dense kernels used by every formula evaluator. All reductions run in a
// fixed order (row-major, ascending index) so repeated calls on identical
// inputs are bit-identical.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/matrix.hpp"

namespace wsc {

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kShapeError, what);
}

inline void require_same_shape(const Matrix& x, const Matrix& y, const char* op) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::kShapeError,
                std::string(op) + ": " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                    " vs " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
}

// Register tile for the gemm micro-kernel: up to 8 rows x 16 columns held
// as 8-wide vectors (512-bit registers, or pairs of 256-bit ones). The
// 16-column slab of the right operand is packed contiguously first.
using Vec8 = double __attribute__((vector_size(64)));

inline constexpr std::size_t kTileRows = 8;
inline constexpr std::size_t kTileCols = 16;

inline Vec8 load8(const double* p) {
  Vec8 v;
  __builtin_memcpy(&v, p, sizeof(v));
  return v;
}

inline void store8(double* p, Vec8 v) { __builtin_memcpy(p, &v, sizeof(v)); }

template <std::size_t Rows>
inline void gemm_tile(const double* __restrict x, std::size_t ldx, const double* __restrict packed,
                      double* __restrict c, std::size_t ldc, std::size_t depth, std::size_t cols) {
  Vec8 acc[Rows][2] = {};
  for (std::size_t k = 0; k < depth; ++k) {
    const Vec8 y0 = load8(packed + kTileCols * k);
    const Vec8 y1 = load8(packed + kTileCols * k + 8);
#pragma GCC unroll 8
    for (std::size_t r = 0; r < Rows; ++r) {
      const double a = x[r * ldx + k];
      acc[r][0] += a * y0;
      acc[r][1] += a * y1;
    }
  }
  if (cols == kTileCols) {
    for (std::size_t r = 0; r < Rows; ++r) {
      store8(c + r * ldc, acc[r][0]);
      store8(c + r * ldc + 8, acc[r][1]);
    }
  } else {
    double buf[kTileCols];
    for (std::size_t r = 0; r < Rows; ++r) {
      store8(buf, acc[r][0]);
      store8(buf + 8, acc[r][1]);
      for (std::size_t j = 0; j < cols; ++j) c[r * ldc + j] = buf[j];
    }
  }
}

inline void gemm_rows(std::size_t rows, const double* x, std::size_t ldx, const double* packed,
                      double* c, std::size_t ldc, std::size_t depth, std::size_t cols) {
  switch (rows) {
    case 8: gemm_tile<8>(x, ldx, packed, c, ldc, depth, cols); break;
    case 7: gemm_tile<7>(x, ldx, packed, c, ldc, depth, cols); break;
    case 6: gemm_tile<6>(x, ldx, packed, c, ldc, depth, cols); break;
    case 5: gemm_tile<5>(x, ldx, packed, c, ldc, depth, cols); break;
    case 4: gemm_tile<4>(x, ldx, packed, c, ldc, depth, cols); break;
    case 3: gemm_tile<3>(x, ldx, packed, c, ldc, depth, cols); break;
    case 2: gemm_tile<2>(x, ldx, packed, c, ldc, depth, cols); break;
    case 1: gemm_tile<1>(x, ldx, packed, c, ldc, depth, cols); break;
    default: break;
  }
}

// C = X * Y. When upper_only is set, tiles lying strictly below the diagonal
// are skipped; callers use this for products known to be symmetric.
inline void gemm(const Matrix& x, const Matrix& y, Matrix& c, bool upper_only) {
  const std::size_t m = x.rows();
  const std::size_t depth = x.cols();
  const std::size_t p = y.cols();
  c.resize(m, p);
  if (depth == 0) {
    c.fill(0.0);
    return;
  }
  thread_local std::vector<double> packed;
  packed.resize(kTileCols * depth);
  const double* xd = x.data();
  const double* yd = y.data();
  double* cd = c.data();
  for (std::size_t j0 = 0; j0 < p; j0 += kTileCols) {
    const std::size_t cols = std::min(kTileCols, p - j0);
    for (std::size_t k = 0; k < depth; ++k) {
      double* dst = packed.data() + kTileCols * k;
      const double* src = yd + k * p + j0;
      for (std::size_t j = 0; j < cols; ++j) dst[j] = src[j];
      for (std::size_t j = cols; j < kTileCols; ++j) dst[j] = 0.0;
    }
    const std::size_t row_end = upper_only ? std::min(m, j0 + cols) : m;
    for (std::size_t i0 = 0; i0 < row_end; i0 += kTileRows) {
      const std::size_t rows = std::min(kTileRows, m - i0);
      gemm_rows(rows, xd + i0 * depth, depth, packed.data(), cd + i0 * p + j0, p, depth, cols);
    }
  }
}

}  // namespace detail

/// C = X * Y, writing into an existing buffer (resized as needed).
inline void matmul_into(const Matrix& x, const Matrix& y, Matrix& out) {
  detail::require(x.cols() == y.rows(), "matmul: inner dimensions differ");
  detail::gemm(x, y, out, false);
}

inline Matrix matmul(const Matrix& x, const Matrix& y) {
  Matrix out;
  matmul_into(x, y, out);
  return out;
}

/// Product of a chain, left to right.
inline Matrix matmul(const Matrix& x, const Matrix& y, const Matrix& z) {
  return matmul(matmul(x, y), z);
}

namespace detail {

// Upper triangle (j >= i) of M diag(r) M for symmetric M; entries below the
// diagonal are unspecified. `scratch` receives M diag(r).
inline void sandwich_upper_into(const Matrix& m, std::span<const double> r, Matrix& scratch, Matrix& out) {
  require(m.square() && r.size() == m.rows(), "sandwich: shape mismatch");
  const std::size_t n = m.rows();
  scratch.resize(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* src = m.data() + i * n;
    double* dst = scratch.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) dst[j] = src[j] * r[j];
  }
  gemm(scratch, m, out, true);
}

}  // namespace detail

/// Z = M diag(r) M for symmetric M. Only the upper tiles are multiplied; the
/// lower triangle is mirrored. `scratch` receives M diag(r).
inline void sandwich_symmetric_into(const Matrix& m, std::span<const double> r, Matrix& scratch,
                                    Matrix& out) {
  detail::sandwich_upper_into(m, r, scratch, out);
  const std::size_t n = m.rows();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
  }
}

inline Matrix transpose(const Matrix& x) {
  Matrix out(x.cols(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) out(j, i) = x(i, j);
  }
  return out;
}

inline bool is_symmetric(const Matrix& x) {
  if (!x.square()) return false;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = i + 1; j < x.cols(); ++j) {
      if (x(i, j) != x(j, i)) return false;
    }
  }
  return true;
}

// ---- elementwise ---------------------------------------------------------

inline void hadamard_inplace(Matrix& x, const Matrix& y) {
  detail::require_same_shape(x, y, "hadamard");
  double* xd = x.data();
  const double* yd = y.data();
  for (std::size_t i = 0; i < x.size(); ++i) xd[i] *= yd[i];
}

inline Matrix hadamard(const Matrix& x, const Matrix& y) {
  Matrix out = x;
  hadamard_inplace(out, y);
  return out;
}

inline Matrix hadamard(const Matrix& x, const Matrix& y, const Matrix& z) {
  Matrix out = hadamard(x, y);
  hadamard_inplace(out, z);
  return out;
}

/// Entrywise power X^{∘k}, k >= 1, by repeated multiplication (exact for small k).
inline Matrix hadamard_power(const Matrix& x, int k) {
  if (k < 1) throw Error(ErrorCode::kConfigError, "hadamard_power: exponent must be positive");
  Matrix out = x;
  double* od = out.data();
  const double* xd = x.data();
  for (int p = 1; p < k; ++p) {
    for (std::size_t i = 0; i < out.size(); ++i) od[i] *= xd[i];
  }
  return out;
}

/// y += alpha * x
inline void axpy(double alpha, const Matrix& x, Matrix& y) {
  detail::require_same_shape(x, y, "axpy");
  const double* xd = x.data();
  double* yd = y.data();
  for (std::size_t i = 0; i < x.size(); ++i) yd[i] += alpha * xd[i];
}

/// diag(v) * X : row i scaled by v[i].
inline Matrix scale_rows(const Matrix& x, std::span<const double> v) {
  detail::require(v.size() == x.rows(), "scale_rows: length mismatch");
  Matrix out = x;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (double& e : out.row(i)) e *= v[i];
  }
  return out;
}

/// X * diag(v) : column j scaled by v[j].
inline Matrix scale_cols(const Matrix& x, std::span<const double> v) {
  detail::require(v.size() == x.cols(), "scale_cols: length mismatch");
  Matrix out = x;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < x.cols(); ++j) r[j] *= v[j];
  }
  return out;
}

// ---- reductions ----------------------------------------------------------

inline double trace(const Matrix& x) {
  detail::require(x.square(), "trace: matrix not square");
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, i);
  return s;
}

/// tr(X Y) without forming the product.
inline double trace_of_product(const Matrix& x, const Matrix& y) {
  detail::require(x.cols() == y.rows() && x.rows() == y.cols(), "trace_of_product: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) s += x(i, j) * y(j, i);
  }
  return s;
}

inline Vector diag_vector(const Matrix& x) {
  detail::require(x.square(), "diag_vector: matrix not square");
  Vector d(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) d[i] = x(i, i);
  return d;
}

/// diag(X Y) without forming the product.
inline Vector diag_of_product(const Matrix& x, const Matrix& y) {
  detail::require(x.cols() == y.rows() && x.rows() == y.cols(), "diag_of_product: shape mismatch");
  Vector d(x.rows(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) acc += x(i, j) * y(j, i);
    d[i] = acc;
  }
  return d;
}

inline Vector row_sums(const Matrix& x) {
  Vector s(x.rows(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (double e : x.row(i)) acc += e;
    s[i] = acc;
  }
  return s;
}

/// 1ᵀ X 1, the sum of all entries.
inline double ones_quadratic(const Matrix& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (double e : x.row(i)) acc += e;
    s += acc;
  }
  return s;
}

/// 1ᵀ (X ⊙ Y) 1
inline double sum_hadamard(const Matrix& x, const Matrix& y) {
  detail::require_same_shape(x, y, "sum_hadamard");
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto xr = x.row(i);
    const auto yr = y.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < xr.size(); ++j) acc += xr[j] * yr[j];
    s += acc;
  }
  return s;
}

// ---- vectors -------------------------------------------------------------

inline Vector matvec(const Matrix& x, std::span<const double> v) {
  detail::require(x.cols() == v.size(), "matvec: length mismatch");
  Vector out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto r = x.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

inline double dot(std::span<const double> u, std::span<const double> v) {
  detail::require(u.size() == v.size(), "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline double sum(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e;
  return s;
}

/// Entrywise power of a vector.
inline Vector power(std::span<const double> v, int k) {
  Vector out(v.begin(), v.end());
  for (double& e : out) {
    const double base = e;
    for (int p = 1; p < k; ++p) e *= base;
  }
  return out;
}

inline Vector hadamard(std::span<const double> u, std::span<const double> v) {
  detail::require(u.size() == v.size(), "hadamard: length mismatch");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * v[i];
  return out;
}

/// Column j of X as a vector.
inline Vector column(const Matrix& x, std::size_t j) {
  Vector out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = x(i, j);
  return out;
}

inline bool all_finite(const Matrix& x) {
  for (double e : x.values()) {
    if (!std::isfinite(e)) return false;
  }
  return true;
}

}  // namespace wsc
