#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reflab/root_slice.hpp"
#include "reflab/subgroups.hpp"
#include "reflab/word.hpp"

namespace reflab {

/// Compare normalized roots coordinate by coordinate in an ordered basis.
struct LexicographicSpec {
  std::vector<Coeffs> basis;  // in simple-root coordinates, most significant first

  /// Basis alpha_{p0}, alpha_{p1}, ... for a permutation of 0..n-1.
  static LexicographicSpec simple(const std::vector<int>& permutation);
};

/// Inversions of `ascending` in order, then those of `descending` reversed.
struct TwoSidedSpec {
  InfiniteWord ascending;
  InfiniteWord descending;
};

/// Type A block order: alpha_1, alpha_1+alpha_2, alpha_2, alpha_1+..+alpha_3, ...
struct AInfinitySpec {
  int n_max = 1;
};

/// An arbitrary sequence of slice ids.
struct ExplicitSpec {
  std::vector<RootId> sequence;
};

using OrderSpec = std::variant<LexicographicSpec, TwoSidedSpec, AInfinitySpec, ExplicitSpec>;

/// "lex:1,2,3" (1-based simple roots), "lex:[1,1,0],[0,1,0],[0,0,1]" or
/// "ainf:6". Throws ParseError.
OrderSpec parse_order_spec(const std::string& text, int rank);

/// A total order on a set of slice roots (the domain), given as a sequence.
class TruncatedOrder {
 public:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

  /// `domain_depth` is the largest depth on which the order is declared; a
  /// negative value means the domain is the whole (saturated) system.
  TruncatedOrder(std::shared_ptr<const RootSlice> slice, std::vector<RootId> sequence, int domain_depth,
                 std::string description = {});

  const RootSlice& slice() const noexcept { return *slice_; }
  const std::shared_ptr<const RootSlice>& slice_ptr() const noexcept { return slice_; }
  const std::vector<RootId>& sequence() const noexcept { return sequence_; }
  std::size_t size() const noexcept { return sequence_.size(); }
  RootId at(std::size_t i) const { return sequence_[i]; }
  int domain_depth() const noexcept { return domain_depth_; }
  const std::string& description() const noexcept { return description_; }

  bool contains(RootId id) const { return id < position_.size() && position_[id] != kAbsent; }
  /// Position of id; throws std::out_of_range when id is outside the domain.
  std::size_t position(RootId id) const;
  bool less(RootId a, RootId b) const { return position(a) < position(b); }

  /// The reversed order.
  TruncatedOrder backward() const;

 private:
  std::shared_ptr<const RootSlice> slice_;
  std::vector<RootId> sequence_;
  std::vector<std::uint32_t> position_;
  int domain_depth_;
  std::string description_;
};

/// Cached coordinates of every slice root in a lexicographic basis.
class LexKeys {
 public:
  /// Throws std::invalid_argument when the basis is not a basis.
  LexKeys(const RootSlice& slice, const LexicographicSpec& spec);

  /// -1 or +1; throws EqualNormalizedCoordinates for proportional roots.
  int compare(RootId a, RootId b) const;

 private:
  std::size_t n_;
  std::vector<Scalar> coords_;  // M^{-1} v per root, unnormalized
  std::vector<Scalar> sums_;
};

/// Less or Greater as -1 / +1.
int compare_reflex(RootId a, RootId b, const LexicographicSpec& spec, const RootSlice& slice);

/// The spec's order on every slice root. TwoSidedSpec orders are built by
/// two_sided_order (affine.hpp) and AInfinitySpec needs a type A slice.
TruncatedOrder sort_truncation(std::shared_ptr<const RootSlice> slice, const OrderSpec& spec);

struct BetweennessViolation {
  RootId low;     // earlier endpoint
  RootId middle;  // in cone(low, high) but not between them
  RootId high;
};

struct DihedralMismatch {
  RootId gamma1;
  RootId gamma2;
};

struct VerificationReport {
  std::size_t roots = 0;
  std::size_t planes_checked = 0;      // planes with at least three domain roots
  std::size_t dihedral_checked = 0;    // of those, planes whose subgroup was determined
  std::size_t dihedral_undetermined = 0;
  std::size_t betweenness_count = 0;
  std::vector<BetweennessViolation> betweenness;  // first kMaxListed
  std::vector<DihedralMismatch> dihedral;

  static constexpr std::size_t kMaxListed = 1000;
  std::size_t violation_count() const noexcept { return betweenness_count + dihedral.size(); }
  bool ok() const noexcept { return violation_count() == 0; }
};

/// Checks the reflection-order axioms on the order's domain: every root in
/// cone(a, b) lies between a and b, and the order restricted to every
/// maximal dihedral subgroup is one of its two angular sweeps. A prebuilt
/// index must cover the domain.
VerificationReport verify_reflection_order(const TruncatedOrder& order, const PlaneIndex* index = nullptr);

/// Plane index over the ids of an order's domain.
PlaneIndex plane_index_for(const TruncatedOrder& order);

/// The order in which alpha_s becomes maximal: roots below alpha_s keep their
/// order, the others are replaced by their s-images (ordered as before) and
/// placed after them. Declared on roots of depth <= domain_depth - 1.
TruncatedOrder upper_s_conjugate(const TruncatedOrder& order, int s);

/// The reduced word r_1 ... r_N whose k-th inversion r_1...r_{k-1}(alpha_{r_k})
/// is the k-th element of the order. Throws NotAnInversionPrefix (1-based)
/// and std::invalid_argument when N exceeds the order's size.
Word initial_segment_word(const TruncatedOrder& order, std::size_t n);

/// The type A_{n_max} block order over its own slice.
TruncatedOrder a_infinity_order(int n_max);

struct ESelection {
  /// The k+1 chosen near-cone roots, in order.
  std::vector<RootId> anchors;
  /// U_1..U_k, each listed in order.
  std::vector<std::vector<RootId>> intervals;
};

/// Picks k+1 roots with qform(normalized) < closeness whose pairwise
/// segments meet the isotropic cone (greedily, shallowest first, then closest
/// to the cone),
/// sorts them by the order, and lets U_i be the slice roots of the dihedral
/// subgroup of the i-th consecutive pair that fall in the half-open order
/// interval [anchor_{i-1}, anchor_i) (closed for the last one). Throws
/// InsufficientCandidates and RankUnsupported.
ESelection build_E(const TruncatedOrder& order, int k, const Scalar& closeness);

}  // namespace reflab
