#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "reflab/root_slice.hpp"

namespace reflab {

/// The 2-plane spanned by two independent vectors, stored in reduced row
/// echelon form so that equal planes compare equal.
class Plane {
 public:
  /// Throws std::invalid_argument when a and b are dependent.
  Plane(std::span<const Scalar> a, std::span<const Scalar> b);

  bool contains(std::span<const Scalar> v) const;
  /// Coordinates of v (assumed in the plane) with respect to the echelon rows.
  std::array<Scalar, 2> coords(std::span<const Scalar> v) const;

  const Coeffs& key() const noexcept { return rows_; }
  std::uint64_t hash() const noexcept { return hash_; }
  friend bool operator==(const Plane& x, const Plane& y);

 private:
  Coeffs rows_;  // two rows of length n, concatenated
  std::size_t n_;
  std::size_t pivot0_, pivot1_;
  std::uint64_t hash_;
};

/// Sign of the 2D cross product u x v.
int cross_sign(const std::array<Scalar, 2>& u, const std::array<Scalar, 2>& v);

/// Is g a nonnegative combination of a and b (all in one plane)?
bool in_cone(const std::array<Scalar, 2>& a, const std::array<Scalar, 2>& b, const std::array<Scalar, 2>& g);

enum class DihedralKind { Finite, Infinite };

struct DihedralSubgroup {
  /// Canonical simple pair, smaller id first.
  RootId gamma1 = 0;
  RootId gamma2 = 0;
  Scalar bform;
  DihedralKind kind = DihedralKind::Infinite;
  /// m for Finite(m), 0 for Infinite.
  int order = 0;
  /// Slice roots of the subgroup, sweeping the cone from gamma1 to gamma2.
  std::vector<RootId> roots;

  bool is_infinite() const noexcept { return kind == DihedralKind::Infinite; }
};

/// Finite(m) when b = -cos(pi/m), Infinite when b <= -1. Exact mode
/// recognizes only m = 2, 3; Approx mode tries m up to max_order. Returns
/// nullopt when b matches neither.
std::optional<std::pair<DihedralKind, int>> classify_bform(const Scalar& b, ScalarMode mode, int max_order = 1000);

/// The reflection subgroup generated by s_a and s_b. Throws
/// ClosureEscapesSlice when the slice is too shallow to pin down the
/// canonical pair, std::invalid_argument when a == b.
DihedralSubgroup dihedral_closure(RootId a, RootId b, const RootSlice& slice);

/// The maximal dihedral subgroup containing s_a and s_b: every slice root in
/// span{a, b}.
DihedralSubgroup maximal_dihedral(RootId a, RootId b, const RootSlice& slice);

/// Given ids (all in one plane), the canonical subgroup they determine, or
/// nullopt when the slice cannot certify it.
std::optional<DihedralSubgroup> dihedral_from_plane_roots(std::span<const RootId> ids, const RootSlice& slice);

/// Every 2-plane spanned by a pair of the given roots, with its member ids
/// (ascending).
class PlaneIndex {
 public:
  /// Over the first `limit` ids (all by default).
  explicit PlaneIndex(const RootSlice& slice, std::optional<std::size_t> limit = std::nullopt);
  PlaneIndex(const RootSlice& slice, std::span<const RootId> ids);

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<RootId>& members(std::size_t plane) const { return members_[plane]; }
  const Plane& plane(std::size_t index) const { return planes_[index]; }
  /// Number of roots indexed.
  std::size_t coverage() const noexcept { return coverage_; }

 private:
  void build(const RootSlice& slice, std::span<const RootId> ids);

  std::size_t coverage_ = 0;
  std::vector<Plane> planes_;
  std::vector<std::vector<RootId>> members_;
};

/// Roots whose barycentric coordinate along `axis` equals c.
std::vector<RootId> fiber(const RootSlice& slice, int axis, const Scalar& c);

/// All fibers along `axis`, keyed by coordinate value (ascending).
std::map<Scalar, std::vector<RootId>> fibers(const RootSlice& slice, int axis);

}  // namespace reflab
