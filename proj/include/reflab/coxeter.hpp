#pragma once

#include <span>
#include <string>
#include <vector>

#include "reflab/scalar.hpp"

namespace reflab {

/// Presentation data m(i,j) of a Coxeter system, with optional form values
/// for the infinite bonds.
class CoxeterMatrix {
 public:
  /// Label used for m(i,j) = infinity.
  static constexpr int kInf = 0;

  /// `entries` is row-major rank x rank; `infinity_weights`, when non-empty,
  /// is row-major too and is read only where entries are kInf (missing
  /// weights, given as zero cells, default to -1). Throws std::invalid_argument on a malformed
  /// matrix.
  CoxeterMatrix(int rank, std::vector<int> entries, std::vector<Scalar> infinity_weights = {});

  /// All off-diagonal labels infinite, weights -1.
  static CoxeterMatrix universal(int rank);
  /// Type A_n: a path with labels 3, all other pairs commuting.
  static CoxeterMatrix type_a(int rank);
  /// Affine type A~_n on n+1 nodes (A~1 is the rank-2 matrix with one
  /// infinite bond of weight -1).
  static CoxeterMatrix affine_a(int n);
  /// Parses short names: "universal3", "A3", "A2~".
  static CoxeterMatrix named(const std::string& name);

  int rank() const noexcept { return rank_; }
  int label(int i, int j) const { return entries_[index(i, j)]; }
  bool is_infinite(int i, int j) const { return label(i, j) == kInf; }
  const Scalar& infinity_weight(int i, int j) const { return weights_[index(i, j)]; }

  /// The matrix with node `node` deleted.
  CoxeterMatrix without_node(int node) const;

  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) {
    return a.rank_ == b.rank_ && a.entries_ == b.entries_ && a.weights_ == b.weights_;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * rank_ + j; }

  int rank_;
  std::vector<int> entries_;
  std::vector<Scalar> weights_;
};

/// The symmetric form B on the simple roots.
class GramMatrix {
 public:
  GramMatrix(int rank, std::vector<Scalar> entries, ScalarMode mode)
      : rank_(rank), entries_(std::move(entries)), mode_(mode) {}

  int rank() const noexcept { return rank_; }
  ScalarMode mode() const noexcept { return mode_; }
  const Scalar& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * rank_ + j]; }

  /// B(u, v) for coefficient vectors in the simple-root basis.
  Scalar form(std::span<const Scalar> u, std::span<const Scalar> v) const;
  /// B(u, alpha_s).
  Scalar form_with_simple(std::span<const Scalar> u, int s) const;

 private:
  int rank_;
  std::vector<Scalar> entries_;
  ScalarMode mode_;
};

/// B(alpha_i, alpha_j) = -cos(pi / m(i,j)), or the infinity weight. Exact mode
/// requires every finite label in {1, 2, 3}; otherwise ExactModeUnavailable.
GramMatrix gram_of(const CoxeterMatrix& matrix, ScalarMode mode);

/// True when gram_of(matrix, Exact) succeeds.
bool exact_mode_available(const CoxeterMatrix& matrix);

/// v - 2 B(v, alpha_s) alpha_s.
Coeffs reflect(std::span<const Scalar> v, int s, const GramMatrix& gram);
void reflect_in_place(Coeffs& v, int s, const GramMatrix& gram);

/// Reflection in an arbitrary root r with B(r, r) = 1: v - 2 B(v, r) r.
Coeffs reflect_by_root(std::span<const Scalar> v, std::span<const Scalar> root, const GramMatrix& gram);

/// Unit vector alpha_s.
Coeffs simple_root(int rank, int s);

/// Every entry >= 0 and some entry > 0 (sign tests honour the tolerance).
bool is_positive(std::span<const Scalar> v);
bool is_negative(std::span<const Scalar> v);

Coeffs negated(std::span<const Scalar> v);

}  // namespace reflab
