#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "reflab/orders.hpp"

namespace reflab {

/// Builds an order over a given slice (a lexicographic sort, a two-sided
/// affine order, ...).
using OrderBuilder = std::function<TruncatedOrder(std::shared_ptr<const RootSlice>)>;

/// Shorthand for sort_truncation with a fixed spec.
OrderBuilder order_builder(OrderSpec spec);

struct Adjacency {
  RootId low;
  RootId high;
  /// Probe roots strictly between low and high.
  std::size_t between = 0;

  bool split() const noexcept { return between > 0; }
};

struct StabilityReport {
  int base_depth = 0;
  int probe_depth = 0;
  std::vector<Adjacency> adjacencies;

  std::size_t split_count() const;
  /// Indices into `adjacencies` of the split ones.
  std::vector<std::size_t> split_positions() const;
};

/// Adjacent pairs of base_members (in base order) with the number of
/// probe_members strictly between them in the probe order. Every base member
/// must lie in the probe's domain.
StabilityReport restricted_stability(const TruncatedOrder& base, const TruncatedOrder& probe,
                                     const std::vector<RootId>& base_members,
                                     const std::vector<RootId>& probe_members);

/// Every adjacency of base against every probe root.
StabilityReport stability(const TruncatedOrder& base, const TruncatedOrder& probe);

/// Builds the depth-d and depth-D slices and compares their orders.
StabilityReport stability(const OrderBuilder& build, const CoxeterMatrix& matrix, int d, int D,
                          std::size_t cap = kDefaultRootCap);

enum class BlockKind { Parabolic, Fiber, Apex };

struct Block {
  BlockKind kind;
  Scalar c;  // first barycentric coordinate shared by the block
  std::vector<RootId> roots;
};

/// Splits a lexicographic order (basis alpha1, alpha2, alpha3) of the rank-3
/// universal group into blocks of equal first barycentric coordinate:
/// Parabolic (c = 0), Fiber(c) for 0 < c <= 2/3, and Apex {alpha1}. Throws
/// BlockViolation when a block is not contiguous, blocks are out of c order,
/// or some c lies in (2/3, 1); RankUnsupported off rank 3.
std::vector<Block> block_decompose_universal(const TruncatedOrder& order);

struct CRangeReport {
  std::size_t roots = 0;
  /// Roots whose first barycentric coordinate lies in (2/3, 1).
  std::vector<RootId> violations;
  /// Observed first coordinates with multiplicities.
  std::map<Scalar, std::size_t> values;
  /// Largest observed value below 1.
  Scalar max_below_one;
  /// Roots with first coordinate 1.
  std::vector<RootId> at_one;

  bool ok() const noexcept { return violations.empty(); }
};

CRangeReport certify_c_range(const RootSlice& slice);

struct DensityReport {
  int d_lo = 0;
  int d_hi = 0;
  /// Adjacent distinct values in (0, 2/3) among roots of depth <= d_lo.
  std::size_t pairs = 0;
  /// Pairs with no value strictly between them among roots of depth <= d_hi.
  std::vector<std::pair<Scalar, Scalar>> unwitnessed;
  /// Distinct values in (0, 2/3) among roots of depth <= k, for k = 0..d_hi.
  std::vector<std::size_t> distinct_by_depth;

  bool complete() const noexcept { return unwitnessed.empty(); }
  /// distinct_by_depth strictly increases from d_lo to d_hi.
  bool strictly_increasing() const;
};

/// Requires d_lo <= d_hi <= slice depth.
DensityReport certify_density(const RootSlice& slice, int d_lo, int d_hi);

struct Char3Pair {
  RootId low;
  RootId high;
  std::size_t between_base = 0;   // slice roots strictly between, base order
  std::size_t between_probe = 0;  // the same, probe order

  bool grows() const noexcept { return between_probe > between_base; }
};

struct Char3Report {
  int base_depth = 0;
  int probe_depth = 0;
  std::vector<Char3Pair> pairs;

  std::size_t growing() const;
};

/// Consecutive pairs of the subgroup roots (restricted to the base domain,
/// in base order) and whether their full intervals grow from base to probe.
Char3Report char3_diagnostic(const TruncatedOrder& base, const TruncatedOrder& probe,
                             const std::vector<RootId>& subgroup_roots);

Char3Report char3_diagnostic(const OrderBuilder& build, const CoxeterMatrix& matrix,
                             const std::vector<RootId>& subgroup_roots, int d, int D,
                             std::size_t cap = kDefaultRootCap);

}  // namespace reflab
