#pragma once

// Closed-form labeled counts for every connected pattern on 3 to 5 vertices.
// Notation in the comments: A^k matrix power, A^{ok} Hadamard power, (.) the
// Hadamard product, D(v) the diagonal matrix of v, 1 the all-ones vector.
// Tensor terms T3[...] and T4[...] are slice chains (see slice.hpp).

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/graph.hpp"
#include "wsc/kernels.hpp"
#include "wsc/matrix.hpp"
#include "wsc/slice.hpp"

namespace wsc {

enum class ArityClass { kMatrixOnly, kTensor3, kTensor4 };

constexpr std::string_view to_string(ArityClass a) {
  switch (a) {
    case ArityClass::kMatrixOnly: return "matrix";
    case ArityClass::kTensor3: return "tensor3";
    case ArityClass::kTensor4: return "tensor4";
  }
  return "unknown";
}

/// Lazily computed building blocks shared by the formulas of one graph. The
/// graph must outlive the cache. Not thread-safe: use one per worker.
class Subexpressions {
 public:
  explicit Subexpressions(const WeightedGraph& g) : g_(&g) {}

  const WeightedGraph& graph() const noexcept { return *g_; }
  std::size_t n() const noexcept { return g_->n(); }
  const Matrix& a() const noexcept { return g_->weights(); }

  /// A^{ok}, 1 <= k <= 6.
  const Matrix& had(int k) {
    check(k, 1, kMaxHad, "Hadamard power");
    if (k == 1) return a();
    auto& slot = had_[k];
    if (!slot) slot = hadamard(had(k - 1), a());
    return *slot;
  }

  /// A^k, 1 <= k <= 4.
  const Matrix& pow(int k) {
    check(k, 1, kMaxPow, "matrix power");
    if (k == 1) return a();
    auto& slot = pow_[k];
    if (!slot) slot = k == 4 ? matmul(pow(2), pow(2)) : matmul(pow(k - 1), a());
    return *slot;
  }

  /// A 1
  const Vector& degrees() { return had_sums(1); }

  /// A^{ok} 1
  const Vector& had_sums(int k) {
    check(k, 1, kMaxHad, "Hadamard row sum");
    auto& slot = had_sums_[k];
    if (!slot) slot = row_sums(had(k));
    return *slot;
  }

  /// diag(A^3)
  const Vector& diag3() {
    if (!diag3_) diag3_ = diag_of_product(pow(2), a());
    return *diag3_;
  }

  /// A (.) A^2
  const Matrix& a_had_a2() {
    if (!a_had_a2_) a_had_a2_ = hadamard(a(), pow(2));
    return *a_had_a2_;
  }

  /// A^{o2} A
  const Matrix& had2_a() {
    if (!had2_a_) had2_a_ = matmul(had(2), a());
    return *had2_a_;
  }

  /// A A^{o2}, the transpose of A^{o2} A.
  const Matrix& a_had2() {
    if (!a_had2_) a_had2_ = transpose(had2_a());
    return *a_had2_;
  }

  /// (A^{o2})^2
  const Matrix& had2_squared() {
    if (!had2_squared_) had2_squared_ = matmul(had(2), had(2));
    return *had2_squared_;
  }

  /// (A^2)^{o2}
  const Matrix& pow2_had2() {
    if (!pow2_had2_) pow2_had2_ = hadamard(pow(2), pow(2));
    return *pow2_had2_;
  }

 private:
  static constexpr int kMaxHad = 6;
  static constexpr int kMaxPow = 4;

  static void check(int k, int lo, int hi, const char* what) {
    if (k < lo || k > hi) throw Error(ErrorCode::kConfigError, std::string(what) + " out of cached range");
  }

  const WeightedGraph* g_;
  std::array<std::optional<Matrix>, kMaxHad + 1> had_;
  std::array<std::optional<Matrix>, kMaxPow + 1> pow_;
  std::array<std::optional<Vector>, kMaxHad + 1> had_sums_;
  std::optional<Vector> diag3_;
  std::optional<Matrix> a_had_a2_;
  std::optional<Matrix> had2_a_;
  std::optional<Matrix> a_had2_;
  std::optional<Matrix> had2_squared_;
  std::optional<Matrix> pow2_had2_;
};

namespace formulas {

/// One factor of 1^T F_1 F_2 ... F_k 1: a matrix or a diagonal D(v).
class ChainTerm {
 public:
  ChainTerm(const Matrix& m) : matrix_(&m) {}  // NOLINT(google-explicit-constructor)
  ChainTerm(const Vector& v) : diag_(&v) {}    // NOLINT(google-explicit-constructor)

  Vector apply(const Vector& x) const { return matrix_ ? matvec(*matrix_, x) : hadamard(*diag_, x); }

 private:
  const Matrix* matrix_ = nullptr;
  const Vector* diag_ = nullptr;
};

/// 1^T F_1 ... F_k 1 by matrix-vector products from the right.
inline double ones_chain(std::initializer_list<ChainTerm> terms, std::size_t n) {
  Vector v(n, 1.0);
  for (auto it = std::rbegin(terms); it != std::rend(terms); ++it) v = it->apply(v);
  return sum(v);
}

inline double sum_all(const Matrix& x) { return ones_quadratic(x); }

inline double t3_a(Subexpressions& s) {
  // tr(A^3)
  return trace_of_product(s.pow(2), s.a());
}

inline double t3_b(Subexpressions& s) {
  // 1^T (A^2 - A^{o2}) 1
  const Matrix& A = s.a();
  return ones_chain({A, A}, s.n()) - sum_all(s.had(2));
}

inline double t4_a(Subexpressions& s) {
  // 1^T (A^3 - 2 A A^{o2} + A^{o3}) 1 - tr(A^3)
  const Matrix& A = s.a();
  const std::size_t n = s.n();
  return ones_chain({A, A, A}, n) - 2 * ones_chain({A, s.had(2)}, n) + sum_all(s.had(3)) -
         trace_of_product(s.pow(2), A);
}

inline double t4_b(Subexpressions& s) {
  // 1^T [(A^2)^{o2} (.) A - (A^{o2})^2 (.) A] 1
  return sum_hadamard(s.pow2_had2(), s.a()) - sum_hadamard(s.had2_squared(), s.a());
}

inline double t4_c(Subexpressions& s) {
  // tr(A^4) + 1^T [A^{o4} - 2 (A^{o2})^2] 1
  const Matrix& H2 = s.had(2);
  return trace_of_product(s.pow(2), s.pow(2)) + sum_all(s.had(4)) - 2 * ones_chain({H2, H2}, s.n());
}

inline double t4_d(Subexpressions& s) {
  // 1^T (A1)^{o3} + 1^T (2 A^{o3} - 3 A^{o2} A) 1
  return sum(power(s.degrees(), 3)) + 2 * sum_all(s.had(3)) - 3 * ones_chain({s.had(2), s.a()}, s.n());
}

inline double t4_e(Subexpressions& s) {
  // diag(A^3)^T A1 - 2 tr(A^{o2} A^2)
  return dot(s.diag3(), s.degrees()) - 2 * trace_of_product(s.had(2), s.pow(2));
}

inline double t4_f(Subexpressions& s) {
  // T3[(A2 . A3) x (A2 . A3) x (A2 . A3)]
  const Matrix& A = s.a();
  const SliceFactor x = SliceFactor(A).rows_by_first(A);
  const std::array chain{x, x, x};
  return slice_inner_3(chain);
}

inline double f5_a(Subexpressions& s) {
  // 1^T [A^4 - 2 A^2 A^{o2} - A D(A^{o2} 1) A + 3 (A^{o2})^2 + 2 A^{o3} A - 2 A^{o4}] 1
  //   - 2 diag(A^3)^T A1 - tr(A^4) + 3 tr(A^{o2} A^2)
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const std::size_t n = s.n();
  const double bracket = ones_chain({A, A, A, A}, n) - 2 * ones_chain({A, A, H2}, n) -
                         ones_chain({A, s.had_sums(2), A}, n) + 3 * ones_chain({H2, H2}, n) +
                         2 * ones_chain({s.had(3), A}, n) - 2 * sum_all(s.had(4));
  return bracket - 2 * dot(s.diag3(), s.degrees()) - trace_of_product(s.pow(2), s.pow(2)) +
         3 * trace_of_product(H2, s.pow(2));
}

inline double f5_b(Subexpressions& s) {
  // tr(A^5) - 5 1^T A^{o2} diag(A^3) + 5 tr(A^{o3} A^2)
  return trace_of_product(s.pow(2), s.pow(3)) - 5 * dot(s.had_sums(2), s.diag3()) +
         5 * trace_of_product(s.had(3), s.pow(2));
}

inline double f5_c(Subexpressions& s) {
  // 1^T [A D(A^2 1) A - A D(A^{o2} 1) A - 2 A A^{o2} A - A^{o2} A^2 + 4 A^{o3} A
  //      + (A^{o2})^2 - 2 A^{o4}] 1 - 2 diag(A^3)^T A1 + 4 tr(A^{o2} A^2)
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const std::size_t n = s.n();
  const Vector walks2 = matvec(A, s.degrees());
  const double bracket = ones_chain({A, walks2, A}, n) - ones_chain({A, s.had_sums(2), A}, n) -
                         2 * ones_chain({A, H2, A}, n) - ones_chain({H2, A, A}, n) +
                         4 * ones_chain({s.had(3), A}, n) + ones_chain({H2, H2}, n) - 2 * sum_all(s.had(4));
  return bracket - 2 * dot(s.diag3(), s.degrees()) + 4 * trace_of_product(H2, s.pow(2));
}

inline double f5_d(Subexpressions& s) {
  // diag(A^4)^T A1 + 1^T [4 A^{o3} A^{o2} + A^{o4} A - (A^2)^{o2} (.) A
  //   - A D(A^{o2} 1) A^{o2} - A (A^{o2})^2 - 2 A^{o5}] 1 + tr(A (A^{o2})^2) - 2 tr(A^{o2} A^3)
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const std::size_t n = s.n();
  const double bracket = 4 * ones_chain({s.had(3), H2}, n) + ones_chain({s.had(4), A}, n) -
                         sum_hadamard(s.pow2_had2(), A) - ones_chain({A, s.had_sums(2), H2}, n) -
                         ones_chain({A, H2, H2}, n) - 2 * sum_all(s.had(5));
  return dot(diag_of_product(s.pow(2), s.pow(2)), s.degrees()) + bracket +
         trace_of_product(A, s.had2_squared()) - 2 * trace_of_product(H2, s.pow(3));
}

inline double f5_e(Subexpressions& s) {
  // 1^T [(A^2)^{o3} + 3 A^{o4} A^{o2} + 2 (A^{o3})^2 - 2 A^{o6}] 1
  //   - 1^T (A^{o2} 1)^{o3} - 3 tr((A^{o2})^2 A^2)
  const std::size_t n = s.n();
  const Matrix& H3 = s.had(3);
  const double bracket = sum_hadamard(s.pow2_had2(), s.pow(2)) + 3 * ones_chain({s.had(4), s.had(2)}, n) +
                         2 * ones_chain({H3, H3}, n) - 2 * sum_all(s.had(6));
  return bracket - sum(power(s.had_sums(2), 3)) - 3 * trace_of_product(s.had2_squared(), s.pow(2));
}

inline double f5_f(Subexpressions& s) {
  // diag(A^3)^T A^2 1 - 2 diag(A^{o2} A^2)^T A1 - diag(A^3)^T A^{o2} 1
  //   - 2 1^T ((A^2)^{o2} (.) A) 1 + 2 tr(A^{o3} A^2) + 2 tr((A^{o2})^2 A)
  const Matrix& A = s.a();
  const Vector walks2 = matvec(A, s.degrees());
  return dot(s.diag3(), walks2) - 2 * dot(diag_of_product(s.had(2), s.pow(2)), s.degrees()) -
         dot(s.diag3(), s.had_sums(2)) - 2 * sum_hadamard(s.pow2_had2(), A) +
         2 * trace_of_product(s.had(3), s.pow(2)) + 2 * trace_of_product(s.had2_squared(), A);
}

inline double f5_g(Subexpressions& s) {
  // 1^T [A (A^2 (.) A) A - (A^2)^{o2} (.) A] 1 - 2 diag(A A^{o2} A)^T A1
  //   - 2 diag(A^{o2} A^2)^T A1 + 4 tr((A^{o2})^2 A) + tr(A^{o3} A^2)
  const Matrix& A = s.a();
  const std::size_t n = s.n();
  const double bracket = ones_chain({A, s.a_had_a2(), A}, n) - sum_hadamard(s.pow2_had2(), A);
  return bracket - 2 * dot(diag_of_product(s.a_had2(), A), s.degrees()) -
         2 * dot(diag_of_product(s.had(2), s.pow(2)), s.degrees()) +
         4 * trace_of_product(s.had2_squared(), A) + trace_of_product(s.had(3), s.pow(2));
}

inline double f5_h(Subexpressions& s) {
  // 1^T [A (.) A^2 (.) A^3 - 2 A (.) A^2 (.) (A^{o2} A)] 1 + 2 tr(A A^{o2} A^{o3})
  //   + tr(A^{o4} A^2) - 2 diag(A^{o2} A^2)^T A^{o2} 1
  const Matrix& E = s.a_had_a2();
  return sum_hadamard(E, s.pow(3)) - 2 * sum_hadamard(E, s.had2_a()) +
         2 * trace_of_product(s.a_had2(), s.had(3)) + trace_of_product(s.had(4), s.pow(2)) -
         2 * dot(diag_of_product(s.had(2), s.pow(2)), s.had_sums(2));
}

inline double f5_i(Subexpressions& s) {
  // diag(A (A (.) A^2) A)^T A1 - diag(A^{o2} A A^{o2})^T A1 - 2 tr(A A^{o2} (A (.) A^2))
  //   + 2 tr(A A^{o2} A^{o3}) - T3[(A2 . A3) x (A2 . A3) x (A2 . A3)]
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const Matrix& E = s.a_had_a2();
  const SliceFactor x = SliceFactor(A).rows_by_first(A);
  const std::array chain{x, x, x};
  return dot(diag_of_product(matmul(A, E), A), s.degrees()) -
         dot(diag_of_product(s.had2_a(), H2), s.degrees()) - 2 * trace_of_product(s.a_had2(), E) +
         2 * trace_of_product(s.a_had2(), s.had(3)) - slice_inner_3(chain);
}

inline double f5_j(Subexpressions& s) {
  // T3[(A2 . A3) x (A2 . A3) x (B2 . A3)] - 2 tr(((A^{o2} A) (.) A) A A^{o2})
  //   - diag(A^{o2} A A^{o2})^T A^{o2} 1 + 2 tr(A A^{o2} A^{o4})
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const SliceFactor x = SliceFactor(A).rows_by_first(A);
  const SliceFactor y = SliceFactor(A).rows_by_first(s.pow(2));
  const std::array chain{x, x, y};
  return slice_inner_3(chain) - 2 * trace_of_product(hadamard(s.had2_a(), A), s.a_had2()) -
         dot(diag_of_product(s.had2_a(), H2), s.had_sums(2)) + 2 * trace_of_product(s.a_had2(), s.had(4));
}

inline double f5_k(Subexpressions& s) {
  // 1^T (A1)^{o4} - 6 1^T A^{o2} (A1)^{o2} + 1^T [3 (A^{o2})^2 + 8 A^{o3} A - 6 A^{o4}] 1
  const Matrix& H2 = s.had(2);
  const std::size_t n = s.n();
  const Vector& d = s.degrees();
  return sum(power(d, 4)) - 6 * dot(s.had_sums(2), power(d, 2)) + 3 * ones_chain({H2, H2}, n) +
         8 * ones_chain({s.had(3), s.a()}, n) - 6 * sum_all(s.had(4));
}

inline double f5_l(Subexpressions& s) {
  // 1^T (A (.) A^2) (A1)^{o2} - 4 diag(A^2 A^{o2})^T A1 - diag(A^3)^T A^{o2} 1
  //   + 2 tr((A^{o2})^2 A) + 4 tr(A^{o3} A^2)
  const std::size_t n = s.n();
  const Vector d2 = power(s.degrees(), 2);
  return ones_chain({s.a_had_a2(), d2}, n) - 4 * dot(diag_of_product(s.pow(2), s.had(2)), s.degrees()) -
         dot(s.diag3(), s.had_sums(2)) + 2 * trace_of_product(s.had2_squared(), s.a()) +
         4 * trace_of_product(s.had(3), s.pow(2));
}

inline double f5_m(Subexpressions& s) {
  // tr((A^3)^{o2}) - 4 1^T ((A^2)^{o2} (.) A^{o2}) 1 + 2 tr((A^{o2})^3)
  const Vector& d3 = s.diag3();
  return dot(d3, d3) - 4 * sum_hadamard(s.pow2_had2(), s.had(2)) +
         2 * trace_of_product(s.had2_squared(), s.had(2));
}

inline double f5_n(Subexpressions& s) {
  // 1^T [A ((A^2)^{o2} (.) A) - 2 (A^{o2} A) (.) A^2 (.) A - A^{o2} (.) (A^2)^{o2}] 1
  //   - 1^T A diag((A^{o2})^2 A) + tr[(A^{o2})^3 + 2 A^{o3} A^{o2} A]
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const std::size_t n = s.n();
  const double bracket = ones_chain({A, hadamard(s.pow2_had2(), A)}, n) -
                         2 * sum_hadamard(hadamard(s.had2_a(), s.pow(2)), A) - sum_hadamard(H2, s.pow2_had2());
  const Vector inner = diag_of_product(s.had2_squared(), A);
  return bracket - ones_chain({A, inner}, n) + trace_of_product(s.had2_squared(), H2) +
         2 * trace_of_product(matmul(s.had(3), H2), A);
}

inline double f5_o(Subexpressions& s) {
  // tr[A (A (.) A^2)^2 - A A^{o2} (A^{o2} (.) A^2) - A^2 ((A^{o2} A) (.) A^{o2}) + A^{o3} (A^{o2})^2]
  //   - T3[(A2 . A3) x (A2 . A3) x (A2 . C3)]
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const Matrix& E = s.a_had_a2();
  const SliceFactor x = SliceFactor(A).rows_by_first(A);
  const SliceFactor y = SliceFactor(H2).rows_by_first(A);
  const std::array chain{x, x, y};
  return trace_of_product(matmul(A, E), E) - trace_of_product(s.a_had2(), hadamard(H2, s.pow(2))) -
         trace_of_product(s.pow(2), hadamard(s.had2_a(), H2)) + trace_of_product(s.had(3), s.had2_squared()) -
         slice_inner_3(chain);
}

inline double f5_p(Subexpressions& s) {
  // T4[(A34 . A24 . A23 . A12) x (A34 . A24) x (A34 . A23)]
  //   + tr(A^{o4} (A^{o2})^2) - 2 1^T ((A A^{o2})^{o2} (.) A^{o2}) 1
  const Matrix& A = s.a();
  const Matrix& H2 = s.had(2);
  const std::array chain{SliceFactor(A).rows_by_first(A).rows_by_second(A).times_entry(A),
                         SliceFactor(A).rows_by_first(A), SliceFactor(A).rows_by_second(A)};
  return slice_inner_4(chain) + trace_of_product(s.had(4), s.had2_squared()) -
         2 * sum_hadamard(hadamard_power(s.a_had2(), 2), H2);
}

inline double f5_q(Subexpressions& s) {
  // T3[(A2 . A3) x (A2 . A3) x (A2 . (A3 . D23 - 3 C3))]
  const Matrix& A = s.a();
  Matrix q = scale_rows(A, s.degrees());
  axpy(-3.0, s.had(2), q);
  const SliceFactor x = SliceFactor(A).rows_by_first(A);
  const std::array chain{x, x, SliceFactor(q).rows_by_first(A)};
  return slice_inner_3(chain);
}

inline double f5_r(Subexpressions& s) {
  // 1^T [(A^2)^{o3} (.) A - 3 A^2 (.) A (.) (A^{o2})^2] 1 + 2 tr((A^{o3})^2 A)
  const Matrix& H3 = s.had(3);
  return sum_hadamard(hadamard(s.pow2_had2(), s.pow(2)), s.a()) -
         3 * sum_hadamard(s.a_had_a2(), s.had2_squared()) + 2 * trace_of_product(matmul(H3, H3), s.a());
}

inline double f5_s(Subexpressions& s) {
  // T3[(A2 . A3) x [(A2 . A3) x (A2 . E3) - 2 (A2 . C3) x (A2 . C3)]]
  const Matrix& A = s.a();
  const SliceFactor x = SliceFactor(A).rows_by_first(A);
  const SliceFactor e = SliceFactor(s.a_had_a2()).rows_by_first(A);
  const SliceFactor c = SliceFactor(s.had(2)).rows_by_first(A);
  const std::array first{x, x, e};
  const std::array second{x, c, c};
  return slice_inner_3(first) - 2 * slice_inner_3(second);
}

inline double f5_t(Subexpressions& s) {
  // T4[(A34 . A24 . A23 . A12) x (A34 . A24 . A23) x (A34 . A23)]
  //   - T3[(C2 . A3) x (C2 . A3) x (C2 . A3)]
  const Matrix& A = s.a();
  const std::array chain4{SliceFactor(A).rows_by_first(A).rows_by_second(A).times_entry(A),
                          SliceFactor(A).rows_by_first(A).rows_by_second(A), SliceFactor(A).rows_by_second(A)};
  const SliceFactor z = SliceFactor(A).rows_by_first(s.had(2));
  const std::array chain3{z, z, z};
  return slice_inner_4(chain4) - slice_inner_3(chain3);
}

inline double f5_u(Subexpressions& s) {
  // T4[(A34 . A24 . A23 . A12) x (A34 . A24 . A23) x (A34 . A24 . A23)]
  const Matrix& A = s.a();
  const SliceFactor y = SliceFactor(A).rows_by_first(A).rows_by_second(A);
  const std::array chain{SliceFactor(A).rows_by_first(A).rows_by_second(A).times_entry(A), y, y};
  return slice_inner_4(chain);
}

}  // namespace formulas
}  // namespace wsc
