#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reflab/orders.hpp"
#include "reflab/root_slice.hpp"
#include "reflab/word.hpp"

namespace reflab {

/// A finite root system Phi0 with its standard positive system.
struct FiniteRootDatum {
  CoxeterMatrix matrix;
  std::vector<Coeffs> positive;  // Phi0+
  std::vector<Coeffs> negative;  // -Phi0+, same order
  std::vector<Coeffs> all() const;
};

/// Throws NotFiniteType when generation does not saturate within max_depth.
FiniteRootDatum finite_datum(const CoxeterMatrix& matrix, int max_depth = 64);

/// beta + level * delta, with beta in Phi0 (finite coordinates).
struct AffineRoot {
  Coeffs beta;
  int level = 0;

  friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
};

/// alpha + k delta for alpha in A, 0 <= k <= level_bound, k > 0 when alpha is negative.
std::vector<AffineRoot> tilde(const std::vector<Coeffs>& A, int level_bound);

/// (beta, 0) for positive beta, (beta, 1) for negative beta.
AffineRoot alpha0(const Coeffs& beta);

/// The loop-extension picture of an affine Coxeter system: the null vector
/// delta of the form and the finite system on the other nodes.
class AffineModel {
 public:
  /// Throws std::invalid_argument when the form's radical is not a line
  /// spanned by a positive vector, NotFiniteType when no node leaves a
  /// finite system.
  static AffineModel from_matrix(const CoxeterMatrix& matrix, ScalarMode mode);
  /// "A1~" or "A2~" (any "An~").
  static AffineModel named(const std::string& name);

  const CoxeterMatrix& matrix() const noexcept { return matrix_; }
  const GramMatrix& gram() const noexcept { return gram_; }
  ScalarMode mode() const noexcept { return gram_.mode(); }
  const Coeffs& delta() const noexcept { return delta_; }
  /// The node whose removal leaves Phi0; delta has coefficient 1 there.
  int affine_node() const noexcept { return node_; }
  const FiniteRootDatum& finite() const noexcept { return finite_; }

  /// Affine coefficients -> (beta, level); nullopt when beta is not in Phi0.
  std::optional<AffineRoot> to_loop(std::span<const Scalar> v) const;
  Coeffs from_loop(const AffineRoot& r) const;

 private:
  AffineModel(CoxeterMatrix m, GramMatrix g, Coeffs delta, int node, FiniteRootDatum finite)
      : matrix_(std::move(m)), gram_(std::move(g)), delta_(std::move(delta)), node_(node), finite_(std::move(finite)) {}

  CoxeterMatrix matrix_;
  GramMatrix gram_;
  Coeffs delta_;
  int node_;
  FiniteRootDatum finite_;
};

/// Incrementally computes the inversion roots r_1...r_{k-1}(alpha_{r_k}) of
/// a word, letter by letter.
class InversionWalker {
 public:
  explicit InversionWalker(const GramMatrix& gram);
  /// Appends a letter and returns its inversion root.
  Coeffs push(int letter);
  std::size_t length() const noexcept { return length_; }

 private:
  const GramMatrix* gram_;
  std::vector<Coeffs> columns_;  // columns_[j] = w(alpha_j)
  std::size_t length_ = 0;
};

struct InversionReport {
  bool ok = false;
  int level_bound = 0;
  std::size_t letters = 0;
  /// Number of inversions found at each level 0..level_bound.
  std::vector<std::size_t> per_level;
  std::string discrepancy;
};

/// Do the inversions of word exhaust tilde(A) through level_bound, and do
/// they stay inside it? Throws WordNotReduced (1-based letter index).
InversionReport check_inversion_identity(const AffineModel& model, const InfiniteWord& word,
                                         const std::vector<Coeffs>& A, int level_bound);

/// Smallest period (by length, then lexicographically) of length <= max_period
/// whose infinite power has inversion set tilde(A) through level_bound.
std::optional<InfiniteWord> find_infinite_word(const AffineModel& model, const std::vector<Coeffs>& A,
                                               int max_period = 6, int level_bound = 8);

/// Words realizing tilde(Phi0+) and tilde(Phi0-), found by the bounded search.
TwoSidedSpec default_two_sided_words(const AffineModel& model);

/// Inversions of spec.ascending in order, then those of spec.descending in
/// reverse, over every root of the slice. Throws NotAPartition when the two
/// inversion sets do not split the slice, WordNotReduced on a bad word.
TruncatedOrder two_sided_order(std::shared_ptr<const RootSlice> slice, const TwoSidedSpec& spec);

}  // namespace reflab
