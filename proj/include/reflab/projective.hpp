#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reflab/root_slice.hpp"

namespace reflab {

/// A root rescaled onto the hyperplane where coordinates sum to 1.
struct NormalizedRoot {
  Coeffs coords;
  RootId source;
};

/// v / sum(v); throws std::invalid_argument when the sum is zero.
Coeffs normalize_vector(std::span<const Scalar> v);
NormalizedRoot normalize(RootId id, const RootSlice& slice);

/// B(p, p) for a point p of the standard hyperplane. Throws
/// std::invalid_argument when the coordinates do not sum to 1.
Scalar qform(std::span<const Scalar> p, const GramMatrix& gram);

/// Barycentric coordinate of a root along `axis`.
Scalar first_coordinate(RootId id, const RootSlice& slice, int axis = 0);

enum class SegmentEnds { Closed, HalfOpen };

struct ConeReport {
  Scalar q_start;  // B(p, p)
  Scalar q_end;    // B(q, q)
  bool intersects = false;
  /// Zeros of t -> B(x(t), x(t)) inside the parameter range, ascending.
  std::vector<double> t_roots;
  /// The same zeros as exact rationals, present when they are rational.
  std::optional<std::vector<Scalar>> exact_t_roots;
};

/// Does the segment x(t) = (1-t) p + t q, t in [0,1] (or [0,1) when
/// HalfOpen), meet the isotropic cone? Tangency counts. Irrational zeros are
/// detected from signs alone; their t_roots entries are double estimates.
/// Throws DegenerateQuadratic when B vanishes on the whole line and
/// std::invalid_argument when p == q.
ConeReport segment_meets_cone(std::span<const Scalar> p, std::span<const Scalar> q, const GramMatrix& gram,
                              SegmentEnds ends = SegmentEnds::Closed);

struct SvgFiber {
  int axis = 0;
  Scalar c;
  std::string color = "#1f5fd6";
};

struct SvgSegment {
  RootId a = 0;
  RootId b = 0;
  std::string color = "#2a9d3a";
  std::string label_a;
  std::string label_b;
};

struct SvgOptions {
  std::vector<SvgFiber> fibers;
  std::vector<SvgSegment> segments;
  std::string title;
};

/// Barycentric picture of a rank-3 slice: the simplex, the normalized
/// isotropic conic when it is real, one dot per root and the requested
/// overlays. Throws RankUnsupported for other ranks.
std::string render_svg(const RootSlice& slice, const SvgOptions& options = {});

/// Colors used for highlight overlays, in the order the CLI assigns them.
const std::vector<std::string>& highlight_palette();

}  // namespace reflab
