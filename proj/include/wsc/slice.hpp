#pragma once

// Slice-wise contraction of broadcast 3-way and 4-way tensors.
//
// A chain <T1 x12 T2 x12 ... x12 Tm, I> over tensors with n x n frontal
// slices S_t(k) (3-way) or S_t(c, d) (4-way) equals the sum over trailing
// indices of tr(S_1 S_2 ... S_m). Nothing of size n^3 is ever stored: the
// structured path works with at most a handful of n x n buffers.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/kernels.hpp"
#include "wsc/matrix.hpp"

namespace wsc {

/// One factor of a slice chain. Its frontal slice is
///
///   S[a, b] = base[a, b] * prod_{R in by_first} R[a, c]
///                        * prod_{R in by_second} R[a, d]
///                        * prod_{V in by_entry} V[c, d]
///
/// where c is the (first) trailing index and d the second one (4-way only).
/// For example the Hadamard product of the broadcasts of A along modes 2 and
/// 3 is SliceFactor(A).rows_by_first(A).
///
/// Factors hold references; the referenced matrices must outlive them.
class SliceFactor {
 public:
  explicit SliceFactor(const Matrix& base) : base_(&base) {}

  SliceFactor& rows_by_first(const Matrix& r) {
    by_first_.push_back(&r);
    return *this;
  }
  SliceFactor& rows_by_second(const Matrix& r) {
    by_second_.push_back(&r);
    return *this;
  }
  SliceFactor& times_entry(const Matrix& v) {
    by_entry_.push_back(&v);
    return *this;
  }

  const Matrix& base() const { return *base_; }
  std::span<const Matrix* const> by_first() const { return by_first_; }
  std::span<const Matrix* const> by_second() const { return by_second_; }
  std::span<const Matrix* const> by_entry() const { return by_entry_; }

  bool four_way() const { return !by_second_.empty() || !by_entry_.empty(); }

  /// Materialized frontal slice at (c, d); d is ignored by 3-way factors.
  Matrix slice(std::size_t c, std::size_t d = 0) const {
    const std::size_t n = base_->rows();
    Matrix s = *base_;
    double entry = 1.0;
    for (const Matrix* v : by_entry_) entry *= (*v)(c, d);
    for (std::size_t a = 0; a < n; ++a) {
      double scale = entry;
      for (const Matrix* r : by_first_) scale *= (*r)(a, c);
      for (const Matrix* r : by_second_) scale *= (*r)(a, d);
      for (double& e : s.row(a)) e *= scale;
    }
    return s;
  }

 private:
  const Matrix* base_;
  std::vector<const Matrix*> by_first_;
  std::vector<const Matrix*> by_second_;
  std::vector<const Matrix*> by_entry_;
};

namespace detail {

// Combined scaling matrix for a list of column-scalings: nullptr for none,
// the sole matrix when there is one, otherwise their Hadamard product.
class CombinedScale {
 public:
  explicit CombinedScale(std::span<const Matrix* const> list) {
    if (list.size() == 1) {
      ptr_ = list.front();
    } else if (list.size() > 1) {
      owned_ = *list.front();
      for (std::size_t i = 1; i < list.size(); ++i) hadamard_inplace(*owned_, *list[i]);
      ptr_ = &*owned_;
    }
  }
  CombinedScale(CombinedScale&& other) noexcept
      : owned_(std::move(other.owned_)), ptr_(owned_ ? &*owned_ : other.ptr_) {}
  CombinedScale(const CombinedScale&) = delete;
  CombinedScale& operator=(const CombinedScale&) = delete;
  CombinedScale& operator=(CombinedScale&&) = delete;

  const Matrix* get() const { return ptr_; }

 private:
  std::optional<Matrix> owned_;
  const Matrix* ptr_ = nullptr;
};

// One link of a chain as seen by the inner evaluator: the slice at inner
// index k is diag(fixed ⊙ varying[:, k]) * base.
struct ChainLink {
  const Matrix* base = nullptr;
  bool base_symmetric = false;
  std::span<const double> fixed;       // empty when absent
  const Matrix* varying = nullptr;     // nullptr when absent
};

struct ChainWorkspace {
  std::vector<Matrix> scaled;
  Matrix product;
  Matrix product2;
  Matrix scratch;
  std::vector<Vector> scales;
};

inline const Matrix& materialize_fixed(const ChainLink& link, Matrix& buffer) {
  if (link.fixed.empty()) return *link.base;
  buffer = scale_rows(*link.base, link.fixed);
  return buffer;
}

// Product of links [first, first + count) (cyclic) with only their fixed
// scalings applied.
inline Matrix fixed_product(std::span<const ChainLink> links, std::size_t first, std::size_t count,
                            std::vector<Matrix>& fixed_buffers) {
  const std::size_t t = links.size();
  Matrix acc = materialize_fixed(links[first % t], fixed_buffers[first % t]);
  for (std::size_t i = 1; i < count; ++i) {
    const std::size_t idx = (first + i) % t;
    acc = matmul(acc, materialize_fixed(links[idx], fixed_buffers[idx]));
  }
  return acc;
}

// sum_k w_k tr( prod_t diag(fixed_t ⊙ varying_t[:, k]) base_t ), k in [0, n).
// An empty weight span means all weights are one.
inline double chain_sum(std::span<const ChainLink> links, std::span<const double> weights,
                        ChainWorkspace& ws) {
  const std::size_t t = links.size();
  const std::size_t n = links.front().base->rows();
  auto weight = [&](std::size_t k) { return weights.empty() ? 1.0 : weights[k]; };

  std::vector<std::size_t> varying;
  for (std::size_t i = 0; i < t; ++i) {
    if (links[i].varying != nullptr) varying.push_back(i);
  }

  if (varying.size() <= 2) {
    std::vector<Matrix> fixed_buffers(t);
    if (varying.empty()) {
      double wsum = 0.0;
      for (std::size_t k = 0; k < n; ++k) wsum += weight(k);
      const Matrix q = fixed_product(links, 0, t, fixed_buffers);
      return wsum * trace(q);
    }
    if (varying.size() == 1) {
      const std::size_t p = varying.front();
      const Matrix q = fixed_product(links, p, t, fixed_buffers);
      const Matrix& r = *links[p].varying;
      double s = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += r(a, k) * weight(k);
        s += q(a, a) * acc;
      }
      return s;
    }
    // Two varying positions p < q:
    //   tr(D(x) X D(y) Y) = x^T (X ⊙ Y^T) y,  X = links[p..q), Y = links[q..p).
    const std::size_t p = varying[0];
    const std::size_t q = varying[1];
    Matrix w = fixed_product(links, p, q - p, fixed_buffers);
    const Matrix y = fixed_product(links, q, t - (q - p), fixed_buffers);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) w(a, b) *= y(b, a);
    }
    const Matrix wr = matmul(w, *links[q].varying);
    const Matrix& rp = *links[p].varying;
    double s = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += rp(a, k) * weight(k) * wr(a, k);
      s += acc;
    }
    return s;
  }

  // General path: one chain product per inner index. Rotate so that, when
  // possible, the chain opens with a pair sharing a symmetric base; that
  // pair is formed as diag(x) [M diag(y) M] with half the multiplications.
  std::size_t start = 0;
  for (std::size_t i = 0; i < t; ++i) {
    const ChainLink& a = links[i];
    const ChainLink& b = links[(i + 1) % t];
    if (a.base == b.base && a.base_symmetric) {
      start = i;
      break;
    }
  }
  std::vector<std::size_t> order(t);
  for (std::size_t i = 0; i < t; ++i) order[i] = (start + i) % t;
  const bool sandwich =
      links[order[0]].base == links[order[1]].base && links[order[0]].base_symmetric;

  // Row-major view of the last base transposed, for a contiguous final trace.
  const ChainLink& last = links[order[t - 1]];
  std::optional<Matrix> last_transposed;
  if (!last.base_symmetric) last_transposed = transpose(*last.base);
  const Matrix& last_t = last_transposed ? *last_transposed : *last.base;
  // With three factors the sandwich's left scaling is folded into the trace.
  const bool fold_left = sandwich && t == 3;

  ws.scaled.resize(t);
  ws.scales.assign(t, Vector(n));
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = weight(k);
    if (wk == 0.0) continue;
    for (std::size_t i = 0; i < t; ++i) {
      const ChainLink& link = links[i];
      Vector& r = ws.scales[i];
      for (std::size_t a = 0; a < n; ++a) {
        double v = link.fixed.empty() ? 1.0 : link.fixed[a];
        if (link.varying != nullptr) v *= (*link.varying)(a, k);
        r[a] = v;
      }
    }
    auto scaled = [&](std::size_t i) -> const Matrix& {
      ws.scaled[i].resize(n, n);
      const Matrix& base = *links[i].base;
      const Vector& r = ws.scales[i];
      for (std::size_t a = 0; a < n; ++a) {
        const double* src = base.data() + a * n;
        double* dst = ws.scaled[i].data() + a * n;
        for (std::size_t b = 0; b < n; ++b) dst[b] = src[b] * r[a];
      }
      return ws.scaled[i];
    };

    // ws.product <- S_order[0] * S_order[1]
    if (sandwich) {
      if (fold_left) {
        detail::sandwich_upper_into(*links[order[0]].base, ws.scales[order[1]], ws.scratch, ws.product);
      } else {
        sandwich_symmetric_into(*links[order[0]].base, ws.scales[order[1]], ws.scratch, ws.product);
        const Vector& r0 = ws.scales[order[0]];
        for (std::size_t a = 0; a < n; ++a) {
          for (double& e : ws.product.row(a)) e *= r0[a];
        }
      }
    } else {
      const Matrix& s0 = scaled(order[0]);
      matmul_into(s0, scaled(order[1]), ws.product);
    }
    for (std::size_t i = 2; i + 1 < t; ++i) {
      matmul_into(ws.product, scaled(order[i]), ws.product2);
      std::swap(ws.product, ws.product2);
    }
    // tr(P * diag(r) M) = sum_{a,b} P[a,b] r[b] M[b,a]
    const Vector& rl = ws.scales[order[t - 1]];
    double s = 0.0;
    if (fold_left) {
      // P = diag(r0) Z with Z symmetric and only its upper triangle formed.
      const Vector& r0 = ws.scales[order[0]];
      const Matrix& m = *last.base;
      for (std::size_t a = 0; a < n; ++a) {
        const double* zr = ws.product.data() + a * n;
        const double* mt = last_t.data() + a * n;
        const double* mr = m.data() + a * n;
        double acc = zr[a] * rl[a] * mt[a] * r0[a];
        double off = 0.0;
        for (std::size_t b = a + 1; b < n; ++b) off += zr[b] * (r0[a] * rl[b] * mt[b] + r0[b] * rl[a] * mr[b]);
        s += acc + off;
      }
    } else {
      for (std::size_t a = 0; a < n; ++a) {
        const double* pr = ws.product.data() + a * n;
        const double* mr = last_t.data() + a * n;
        double acc = 0.0;
        for (std::size_t b = 0; b < n; ++b) acc += pr[b] * rl[b] * mr[b];
        s += acc;
      }
    }
    total += wk * s;
  }
  return total;
}

inline std::size_t chain_dimension(std::span<const SliceFactor> chain) {
  if (chain.empty()) throw Error(ErrorCode::kEmptyPlan, "slice chain has no factors");
  const std::size_t n = chain.front().base().rows();
  auto check = [n](const Matrix& m) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::kShapeError, "slice factor operands must all be n x n");
    }
  };
  for (const SliceFactor& f : chain) {
    check(f.base());
    for (const Matrix* m : f.by_first()) check(*m);
    for (const Matrix* m : f.by_second()) check(*m);
    for (const Matrix* m : f.by_entry()) check(*m);
  }
  return n;
}

inline bool same_members(std::span<const Matrix* const> a, std::span<const Matrix* const> b) {
  std::vector<const Matrix*> x(a.begin(), a.end());
  std::vector<const Matrix*> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

}  // namespace detail

/// sum_k tr(S_1(k) S_2(k) ... S_m(k)) over 3-way broadcast factors.
inline double slice_inner_3(std::span<const SliceFactor> chain) {
  const std::size_t n = detail::chain_dimension(chain);
  (void)n;
  std::vector<detail::CombinedScale> scales;
  scales.reserve(chain.size());
  for (const SliceFactor& f : chain) {
    if (f.four_way()) {
      throw Error(ErrorCode::kShapeError, "slice_inner_3 given a 4-way factor");
    }
    scales.emplace_back(f.by_first());
  }
  std::vector<detail::ChainLink> links(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    links[i].base = &chain[i].base();
    links[i].base_symmetric = is_symmetric(chain[i].base());
    links[i].varying = scales[i].get();
  }
  detail::ChainWorkspace ws;
  return detail::chain_sum(links, {}, ws);
}

/// sum_{c,d} tr(S_1(c,d) S_2(c,d) ... S_m(c,d)) over 4-way broadcast factors.
///
/// One trailing index is fixed in an outer loop and the other is handled by
/// the 3-way evaluator, so the working set stays O(n^2). The outer index is
/// the one whose removal leaves fewer varying positions.
inline double slice_inner_4(std::span<const SliceFactor> chain) {
  const std::size_t n = detail::chain_dimension(chain);
  const std::size_t t = chain.size();

  std::optional<Matrix> entry;
  for (const SliceFactor& f : chain) {
    for (const Matrix* v : f.by_entry()) {
      if (!entry) {
        entry = *v;
      } else {
        hadamard_inplace(*entry, *v);
      }
    }
  }

  std::size_t first_positions = 0;
  std::size_t second_positions = 0;
  for (const SliceFactor& f : chain) {
    first_positions += f.by_first().empty() ? 0 : 1;
    second_positions += f.by_second().empty() ? 0 : 1;
  }
  const bool outer_is_first = second_positions <= first_positions;

  std::vector<detail::CombinedScale> outer_scales;
  std::vector<detail::CombinedScale> inner_scales;
  outer_scales.reserve(t);
  inner_scales.reserve(t);
  for (const SliceFactor& f : chain) {
    outer_scales.emplace_back(outer_is_first ? f.by_first() : f.by_second());
    inner_scales.emplace_back(outer_is_first ? f.by_second() : f.by_first());
  }

  // Every slice is unchanged by swapping c and d: sum over c <= d only.
  bool swap_symmetric = !entry || is_symmetric(*entry);
  for (const SliceFactor& f : chain) {
    swap_symmetric = swap_symmetric && detail::same_members(f.by_first(), f.by_second());
  }

  std::vector<detail::ChainLink> links(t);
  std::vector<Vector> fixed(t);
  for (std::size_t i = 0; i < t; ++i) {
    links[i].base = &chain[i].base();
    links[i].base_symmetric = is_symmetric(chain[i].base());
    links[i].varying = inner_scales[i].get();
  }

  detail::ChainWorkspace ws;
  Vector weights(n);
  double total = 0.0;
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t i = 0; i < t; ++i) {
      const Matrix* outer = outer_scales[i].get();
      if (outer == nullptr) {
        links[i].fixed = {};
      } else {
        fixed[i] = column(*outer, o);
        links[i].fixed = fixed[i];
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      double w = 1.0;
      if (entry) w = outer_is_first ? (*entry)(o, k) : (*entry)(k, o);
      if (swap_symmetric) w *= k < o ? 0.0 : (k == o ? 1.0 : 2.0);
      weights[k] = w;
    }
    total += detail::chain_sum(links, weights, ws);
  }
  return total;
}

// ---- reference path ---------------------------------------------------------

/// Arbitrary slice generators: k -> S(k) for 3-way chains, (c, d) -> S(c, d)
/// for 4-way chains.
using SliceGenerator3 = std::function<Matrix(std::size_t)>;
using SliceGenerator4 = std::function<Matrix(std::size_t, std::size_t)>;

/// Materializes every slice and multiplies them one trailing index at a time.
inline double slice_inner_3(std::span<const SliceGenerator3> chain, std::size_t n) {
  if (chain.empty()) throw Error(ErrorCode::kEmptyPlan, "slice chain has no factors");
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix p = chain.front()(k);
    for (std::size_t i = 1; i < chain.size(); ++i) p = matmul(p, chain[i](k));
    total += trace(p);
  }
  return total;
}

inline double slice_inner_4(std::span<const SliceGenerator4> chain, std::size_t n) {
  if (chain.empty()) throw Error(ErrorCode::kEmptyPlan, "slice chain has no factors");
  double total = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = 0; d < n; ++d) {
      Matrix p = chain.front()(c, d);
      for (std::size_t i = 1; i < chain.size(); ++i) p = matmul(p, chain[i](c, d));
      total += trace(p);
    }
  }
  return total;
}

}  // namespace wsc
