#include "reflab/subgroups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "reflab/errors.hpp"

namespace reflab {

namespace {

ScalarMode mode_of(std::span<const Scalar> v) {
  for (const Scalar& x : v) {
    if (!x.is_exact()) return ScalarMode::Approx;
  }
  return ScalarMode::Exact;
}

std::size_t first_nonzero(const Coeffs& v, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    if (!v[i].is_zero()) return i;
  }
  return to;
}

}  // namespace

Plane::Plane(std::span<const Scalar> a, std::span<const Scalar> b) : n_(a.size()) {
  if (a.size() != b.size()) throw std::invalid_argument("plane spanned by vectors of different lengths");
  Coeffs r1(a.begin(), a.end()), r2(b.begin(), b.end());
  std::size_t p0 = 0;
  while (p0 < n_ && r1[p0].is_zero() && r2[p0].is_zero()) ++p0;
  if (p0 == n_) throw std::invalid_argument("vectors do not span a plane");
  if (r1[p0].is_zero()) std::swap(r1, r2);
  const Scalar lead = r1[p0];
  for (std::size_t i = p0; i < n_; ++i) r1[i] /= lead;
  const Scalar f = r2[p0];
  if (!f.is_zero()) {
    for (std::size_t i = p0; i < n_; ++i) r2[i] -= f * r1[i];
  }
  r2[p0] = Scalar(0);
  const std::size_t p1 = first_nonzero(r2, p0 + 1, n_);
  if (p1 == n_) throw std::invalid_argument("vectors do not span a plane");
  const Scalar lead2 = r2[p1];
  for (std::size_t i = p1; i < n_; ++i) r2[i] /= lead2;
  const Scalar g = r1[p1];
  if (!g.is_zero()) {
    for (std::size_t i = p1; i < n_; ++i) r1[i] -= g * r2[i];
  }
  r1[p1] = Scalar(0);
  for (auto* row : {&r1, &r2}) {
    for (Scalar& x : *row) {
      if (!x.is_exact() && x.is_zero()) x = Scalar::approx(0.0);
    }
  }
  rows_ = std::move(r1);
  rows_.insert(rows_.end(), r2.begin(), r2.end());
  pivot0_ = p0;
  pivot1_ = p1;
  hash_ = detail::hash_coeffs(rows_, mode_of(rows_));
}

bool operator==(const Plane& x, const Plane& y) {
  if (x.n_ != y.n_ || x.hash_ != y.hash_) return false;
  const ScalarMode mode =
      mode_of(x.rows_) == ScalarMode::Exact && mode_of(y.rows_) == ScalarMode::Exact ? ScalarMode::Exact
                                                                                       : ScalarMode::Approx;
  return detail::same_coeffs(x.rows_, y.rows_, mode);
}

std::array<Scalar, 2> Plane::coords(std::span<const Scalar> v) const { return {v[pivot0_], v[pivot1_]}; }

bool Plane::contains(std::span<const Scalar> v) const {
  if (v.size() != n_) return false;
  const Scalar& c0 = v[pivot0_];
  const Scalar& c1 = v[pivot1_];
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == pivot0_ || i == pivot1_) continue;
    Scalar expect;
    if (!c0.is_zero() && !rows_[i].is_zero()) expect += c0 * rows_[i];
    if (!c1.is_zero() && !rows_[n_ + i].is_zero()) expect += c1 * rows_[n_ + i];
    if ((v[i] - expect).sign() != 0) return false;
  }
  return true;
}

int cross_sign(const std::array<Scalar, 2>& u, const std::array<Scalar, 2>& v) {
  return compare(u[0] * v[1], u[1] * v[0]);
}

bool in_cone(const std::array<Scalar, 2>& a, const std::array<Scalar, 2>& b, const std::array<Scalar, 2>& g) {
  // g = lambda a + mu b, by Cramer's rule: lambda = (g x b)/(a x b), mu = (a x g)/(a x b).
  const int det = cross_sign(a, b);
  if (det == 0) return false;
  return cross_sign(g, b) * det >= 0 && cross_sign(a, g) * det >= 0;
}

std::optional<std::pair<DihedralKind, int>> classify_bform(const Scalar& b, ScalarMode mode, int max_order) {
  if (compare(b, Scalar(-1)) <= 0) return std::pair{DihedralKind::Infinite, 0};
  if (mode == ScalarMode::Exact && b.is_exact()) {
    if (b.is_zero()) return std::pair{DihedralKind::Finite, 2};
    if (b == Scalar::rational(-1, 2)) return std::pair{DihedralKind::Finite, 3};
    return std::nullopt;
  }
  const double x = b.to_double();
  for (int m = 2; m <= max_order; ++m) {
    if (std::abs(x + std::cos(std::numbers::pi / m)) < kApproxEpsilon) return std::pair{DihedralKind::Finite, m};
  }
  return std::nullopt;
}

namespace {

std::array<Scalar, 2> coords_of(const Plane& plane, const RootSlice& slice, RootId id) {
  return plane.coords(slice.coeffs(id));
}

/// Every slice root of <s_e1, s_e2>, by walking the two alternating chains
/// e1, s_e1(e2), s_e1 s_e2(e1), ... and e2, s_e2(e1), ...
std::vector<RootId> chain_roots(RootId e1, RootId e2, DihedralKind kind, int order, const RootSlice& slice) {
  const GramMatrix& g = slice.gram();
  const Scalar& bound = slice.max_coefficient_sum();
  std::set<RootId> found = {e1, e2};
  const Coeffs g1 = slice.root(e1), g2 = slice.root(e2);
  Coeffs x = g1, y = g2;  // x: chain starting at e1, y: chain starting at e2
  const std::size_t steps = kind == DihedralKind::Finite ? static_cast<std::size_t>(order) : 1'000'000;
  bool x_alive = true, y_alive = true;
  for (std::size_t k = 1; k < steps && (x_alive || y_alive); ++k) {
    // x_k = s_e1(y_(k-1)), y_k = s_e2(x_(k-1)); both keep being computed since
    // each chain feeds the other.
    Coeffs nx = reflect_by_root(y, g1, g);
    Coeffs ny = reflect_by_root(x, g2, g);
    x = std::move(nx);
    y = std::move(ny);
    for (auto [v, alive] : {std::pair{&x, &x_alive}, std::pair{&y, &y_alive}}) {
      if (!*alive) continue;
      if (!is_positive(*v) || compare(sum(*v), bound) > 0) {
        *alive = false;
        continue;
      }
      if (auto id = slice.lookup(*v)) found.insert(*id);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace

std::optional<DihedralSubgroup> dihedral_from_plane_roots(std::span<const RootId> ids, const RootSlice& slice) {
  if (ids.size() < 2) return std::nullopt;
  const Plane plane(slice.coeffs(ids[0]), slice.coeffs(ids[1]));
  // Positive roots of a plane fill a pointed cone, so the cross product
  // orders them by angle.
  auto before = [&](RootId u, RootId v) {
    return cross_sign(coords_of(plane, slice, u), coords_of(plane, slice, v)) > 0;
  };
  RootId lo = ids[0], hi = ids[0];
  for (RootId id : ids) {
    if (before(id, lo)) lo = id;
    if (before(hi, id)) hi = id;
  }
  if (lo == hi) return std::nullopt;
  const Scalar b = slice.gram().form(slice.coeffs(lo), slice.coeffs(hi));
  const auto kind = classify_bform(b, slice.mode());
  if (!kind) return std::nullopt;
  std::vector<RootId> all = chain_roots(lo, hi, kind->first, kind->second, slice);
  for (RootId id : ids) {
    if (!std::binary_search(all.begin(), all.end(), id)) return std::nullopt;
  }
  DihedralSubgroup out;
  out.gamma1 = std::min(lo, hi);
  out.gamma2 = std::max(lo, hi);
  out.bform = b;
  out.kind = kind->first;
  out.order = kind->second;
  std::sort(all.begin(), all.end(), before);
  if (all.front() != out.gamma1) std::reverse(all.begin(), all.end());
  out.roots = std::move(all);
  return out;
}

DihedralSubgroup dihedral_closure(RootId a, RootId b, const RootSlice& slice) {
  if (a == b) throw std::invalid_argument("dihedral closure needs two distinct roots");
  const GramMatrix& g = slice.gram();
  const Coeffs ra = slice.root(a), rb = slice.root(b);
  std::set<RootId> seen = {a, b};
  std::deque<RootId> queue = {a, b};
  while (!queue.empty()) {
    const RootId cur = queue.front();
    queue.pop_front();
    for (const Coeffs* r : {&ra, &rb}) {
      Coeffs img = reflect_by_root(slice.coeffs(cur), *r, g);
      if (is_negative(img)) img = negated(img);
      const auto id = slice.lookup(img);
      if (id && seen.insert(*id).second) queue.push_back(*id);
    }
  }
  const std::vector<RootId> collected(seen.begin(), seen.end());
  auto sub = dihedral_from_plane_roots(collected, slice);
  if (!sub) {
    throw ClosureEscapesSlice("closure of roots " + std::to_string(a) + " and " + std::to_string(b) +
                              " leaves the slice before its canonical pair is determined");
  }
  return *sub;
}

DihedralSubgroup maximal_dihedral(RootId a, RootId b, const RootSlice& slice) {
  if (a == b) throw std::invalid_argument("maximal dihedral subgroup needs two distinct roots");
  const Plane plane(slice.coeffs(a), slice.coeffs(b));
  std::vector<RootId> members;
  for (RootId id = 0; id < slice.size(); ++id) {
    if (plane.contains(slice.coeffs(id))) members.push_back(id);
  }
  auto sub = dihedral_from_plane_roots(members, slice);
  if (!sub) {
    throw ClosureEscapesSlice("plane of roots " + std::to_string(a) + " and " + std::to_string(b) +
                              " has no certifiable canonical pair in the slice");
  }
  return *sub;
}

namespace {

struct PlaneHash {
  std::size_t operator()(const Plane& p) const noexcept { return p.hash(); }
};

}  // namespace

PlaneIndex::PlaneIndex(const RootSlice& slice, std::optional<std::size_t> limit) {
  std::vector<RootId> ids(std::min(limit.value_or(slice.size()), slice.size()));
  std::iota(ids.begin(), ids.end(), RootId{0});
  build(slice, ids);
}

PlaneIndex::PlaneIndex(const RootSlice& slice, std::span<const RootId> ids) { build(slice, ids); }

void PlaneIndex::build(const RootSlice& slice, std::span<const RootId> ids) {
  coverage_ = ids.size();
  std::unordered_map<Plane, std::size_t, PlaneHash> lookup;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      Plane p(slice.coeffs(ids[i]), slice.coeffs(ids[j]));
      auto [it, fresh] = lookup.try_emplace(std::move(p), planes_.size());
      if (fresh) {
        planes_.push_back(it->first);
        members_.emplace_back();
      }
      auto& m = members_[it->second];
      m.push_back(ids[i]);
      m.push_back(ids[j]);
    }
  }
  for (auto& m : members_) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
  }
}

std::vector<RootId> fiber(const RootSlice& slice, int axis, const Scalar& c) {
  std::vector<RootId> out;
  for (RootId id = 0; id < slice.size(); ++id) {
    const auto v = slice.coeffs(id);
    const Scalar value = v[static_cast<std::size_t>(axis)] / sum(v);
    const bool equal = slice.mode() == ScalarMode::Exact ? compare(value, c) == 0
                                                         : std::abs(value.to_double() - c.to_double()) < kApproxEpsilon;
    if (equal) out.push_back(id);
  }
  return out;
}

std::map<Scalar, std::vector<RootId>> fibers(const RootSlice& slice, int axis) {
  std::map<Scalar, std::vector<RootId>> out;
  for (RootId id = 0; id < slice.size(); ++id) {
    const auto v = slice.coeffs(id);
    out[v[static_cast<std::size_t>(axis)] / sum(v)].push_back(id);
  }
  return out;
}

}  // namespace reflab
