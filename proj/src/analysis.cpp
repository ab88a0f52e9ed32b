#include "reflab/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "reflab/errors.hpp"
#include "reflab/projective.hpp"

namespace reflab {

OrderBuilder order_builder(OrderSpec spec) {
  return [spec = std::move(spec)](std::shared_ptr<const RootSlice> slice) {
    return sort_truncation(std::move(slice), spec);
  };
}

std::size_t StabilityReport::split_count() const {
  return static_cast<std::size_t>(
      std::count_if(adjacencies.begin(), adjacencies.end(), [](const Adjacency& a) { return a.split(); }));
}

std::vector<std::size_t> StabilityReport::split_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < adjacencies.size(); ++i) {
    if (adjacencies[i].split()) out.push_back(i);
  }
  return out;
}

namespace {

int depth_of(const TruncatedOrder& t) {
  return t.domain_depth() >= 0 ? t.domain_depth() : t.slice().depth_bound();
}

std::vector<RootId> in_order(const TruncatedOrder& t, std::vector<RootId> ids) {
  ids.erase(std::remove_if(ids.begin(), ids.end(), [&](RootId id) { return !t.contains(id); }), ids.end());
  std::sort(ids.begin(), ids.end(), [&](RootId a, RootId b) { return t.position(a) < t.position(b); });
  return ids;
}

std::shared_ptr<const RootSlice> make_slice(const CoxeterMatrix& m, int d, std::size_t cap) {
  return std::make_shared<const RootSlice>(generate_slice(m, d, natural_mode(m), cap));
}

}  // namespace

StabilityReport restricted_stability(const TruncatedOrder& base, const TruncatedOrder& probe,
                                     const std::vector<RootId>& base_members,
                                     const std::vector<RootId>& probe_members) {
  StabilityReport rep;
  rep.base_depth = depth_of(base);
  rep.probe_depth = depth_of(probe);
  const std::vector<RootId> seq = in_order(base, base_members);
  std::vector<std::size_t> probe_pos;
  for (RootId id : probe_members) {
    if (probe.contains(id)) probe_pos.push_back(probe.position(id));
  }
  std::sort(probe_pos.begin(), probe_pos.end());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    std::size_t lo = probe.position(seq[i]), hi = probe.position(seq[i + 1]);
    if (lo > hi) std::swap(lo, hi);
    const auto first = std::upper_bound(probe_pos.begin(), probe_pos.end(), lo);
    const auto last = std::lower_bound(probe_pos.begin(), probe_pos.end(), hi);
    rep.adjacencies.push_back({seq[i], seq[i + 1], static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, last - first))});
  }
  return rep;
}

StabilityReport stability(const TruncatedOrder& base, const TruncatedOrder& probe) {
  return restricted_stability(base, probe, base.sequence(), probe.sequence());
}

StabilityReport stability(const OrderBuilder& build, const CoxeterMatrix& matrix, int d, int D, std::size_t cap) {
  if (D < d) throw std::invalid_argument("probe depth must be >= base depth");
  const TruncatedOrder base = build(make_slice(matrix, d, cap));
  const TruncatedOrder probe = build(make_slice(matrix, D, cap));
  return stability(base, probe);
}

std::vector<Block> block_decompose_universal(const TruncatedOrder& order) {
  const RootSlice& slice = order.slice();
  if (slice.rank() != 3) throw RankUnsupported(slice.rank());
  if (!(slice.matrix() == CoxeterMatrix::universal(3))) {
    throw std::invalid_argument("block decomposition needs the rank-3 universal group");
  }
  const Scalar two_thirds = Scalar::rational(2, 3);
  std::vector<Block> blocks;
  for (RootId id : order.sequence()) {
    const Scalar c = first_coordinate(id, slice);
    if (c > two_thirds && c < Scalar(1)) {
      throw BlockViolation("first coordinate " + c.str() + " lies in (2/3, 1)", {id});
    }
    if (!blocks.empty() && blocks.back().c == c) {
      blocks.back().roots.push_back(id);
      continue;
    }
    if (!blocks.empty() && c < blocks.back().c) {
      for (const Block& b : blocks) {
        if (b.c == c) {
          throw BlockViolation("fiber " + c.str() + " is not contiguous", {b.roots.back(), blocks.back().roots.back(), id});
        }
      }
      throw BlockViolation("fiber " + c.str() + " comes after fiber " + blocks.back().c.str(),
                           {blocks.back().roots.back(), id});
    }
    const BlockKind kind = c.is_zero() ? BlockKind::Parabolic : c == Scalar(1) ? BlockKind::Apex : BlockKind::Fiber;
    blocks.push_back({kind, c, {id}});
  }
  if (!blocks.empty() && blocks.back().kind == BlockKind::Apex &&
      blocks.back().roots != std::vector<RootId>{slice.simple(0)}) {
    throw BlockViolation("apex block is not {alpha1}", blocks.back().roots);
  }
  return blocks;
}

CRangeReport certify_c_range(const RootSlice& slice) {
  if (slice.rank() != 3) throw RankUnsupported(slice.rank());
  const Scalar two_thirds = Scalar::rational(2, 3);
  CRangeReport rep;
  rep.roots = slice.size();
  for (RootId id = 0; id < slice.size(); ++id) {
    const Scalar c = first_coordinate(id, slice);
    ++rep.values[c];
    if (c == Scalar(1)) {
      rep.at_one.push_back(id);
    } else {
      if (c > rep.max_below_one) rep.max_below_one = c;
      if (c > two_thirds) rep.violations.push_back(id);
    }
  }
  return rep;
}

bool DensityReport::strictly_increasing() const {
  for (int k = d_lo; k < d_hi; ++k) {
    if (distinct_by_depth[k + 1] <= distinct_by_depth[k]) return false;
  }
  return true;
}

DensityReport certify_density(const RootSlice& slice, int d_lo, int d_hi) {
  if (slice.rank() != 3) throw RankUnsupported(slice.rank());
  if (d_lo < 0 || d_lo > d_hi || d_hi > slice.depth_bound()) {
    throw std::invalid_argument("need 0 <= d_lo <= d_hi <= slice depth");
  }
  const Scalar two_thirds = Scalar::rational(2, 3);
  // Shallowest depth at which each value appears.
  std::map<Scalar, int> first_seen;
  for (RootId id = 0; id < slice.size(); ++id) {
    if (slice.depth(id) > d_hi) break;
    const Scalar c = first_coordinate(id, slice);
    if (!(c > Scalar(0) && c < two_thirds)) continue;
    first_seen.emplace(c, slice.depth(id));
  }
  DensityReport rep;
  rep.d_lo = d_lo;
  rep.d_hi = d_hi;
  rep.distinct_by_depth.assign(static_cast<std::size_t>(d_hi) + 1, 0);
  for (const auto& [c, depth] : first_seen) ++rep.distinct_by_depth[depth];
  for (int k = 1; k <= d_hi; ++k) rep.distinct_by_depth[k] += rep.distinct_by_depth[k - 1];

  const Scalar* prev = nullptr;
  bool witnessed = false;
  for (const auto& [c, depth] : first_seen) {
    if (depth > d_lo) {
      witnessed = true;
      continue;
    }
    if (prev != nullptr) {
      ++rep.pairs;
      if (!witnessed) rep.unwitnessed.emplace_back(*prev, c);
    }
    prev = &c;
    witnessed = false;
  }
  return rep;
}

std::size_t Char3Report::growing() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const Char3Pair& p) { return p.grows(); }));
}

Char3Report char3_diagnostic(const TruncatedOrder& base, const TruncatedOrder& probe,
                             const std::vector<RootId>& subgroup_roots) {
  Char3Report rep;
  rep.base_depth = depth_of(base);
  rep.probe_depth = depth_of(probe);
  const std::vector<RootId> seq = in_order(base, subgroup_roots);
  auto gap = [](const TruncatedOrder& t, RootId a, RootId b) {
    const std::size_t pa = t.position(a), pb = t.position(b);
    return (pa < pb ? pb - pa : pa - pb) - 1;
  };
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    rep.pairs.push_back({seq[i], seq[i + 1], gap(base, seq[i], seq[i + 1]), gap(probe, seq[i], seq[i + 1])});
  }
  return rep;
}

Char3Report char3_diagnostic(const OrderBuilder& build, const CoxeterMatrix& matrix,
                             const std::vector<RootId>& subgroup_roots, int d, int D, std::size_t cap) {
  if (D < d) throw std::invalid_argument("probe depth must be >= base depth");
  const TruncatedOrder base = build(make_slice(matrix, d, cap));
  const TruncatedOrder probe = build(make_slice(matrix, D, cap));
  return char3_diagnostic(base, probe, subgroup_roots);
}

}  // namespace reflab
