#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "reflab/affine.hpp"
#include "reflab/analysis.hpp"
#include "reflab/errors.hpp"

using namespace reflab;

namespace {

using SlicePtr = std::shared_ptr<const RootSlice>;

SlicePtr universal(int d) {
  static std::map<int, SlicePtr> cache;
  auto& p = cache[d];
  if (!p) p = std::make_shared<const RootSlice>(generate_slice(CoxeterMatrix::universal(3), d, ScalarMode::Exact));
  return p;
}

const OrderBuilder& lex123() {
  static const OrderBuilder b = order_builder(LexicographicSpec::simple({0, 1, 2}));
  return b;
}

OrderBuilder a2_two_sided() {
  const auto m = AffineModel::named("A2~");
  return [w = default_two_sided_words(m)](SlicePtr s) { return two_sided_order(std::move(s), w); };
}

// First barycentric coordinate -> shallowest depth, from the word enumeration.
std::map<mpq_class, int> oracle_first_coords(int d) {
  std::map<mpq_class, int> out;
  for (int k = d; k >= 0; --k) {
    for (const auto& v : oracle::brute_force_roots(oracle::universal_gram(3), k)) {
      out[v[0] / (v[0] + v[1] + v[2])] = k;
    }
  }
  return out;
}

// Split count by scanning the probe order for every base adjacency.
std::size_t oracle_splits(const TruncatedOrder& base, const TruncatedOrder& probe) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    std::size_t a = 0, b = 0;
    for (std::size_t p = 0; p < probe.size(); ++p) {
      if (probe.at(p) == base.at(i)) a = p;
      if (probe.at(p) == base.at(i + 1)) b = p;
    }
    if (std::max(a, b) - std::min(a, b) > 1) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("c-range certification") {
  const auto rep = certify_c_range(*universal(12));
  CHECK(rep.roots == 3 * ((1u << 13) - 1));
  CHECK(rep.ok());
  CHECK(rep.max_below_one == Scalar::rational(2, 3));
  CHECK(rep.at_one == std::vector<RootId>{0});

  // Value multiset against the word enumeration at depth 6.
  const auto small = certify_c_range(*universal(6));
  std::map<mpq_class, std::size_t> expected;
  for (const auto& v : oracle::brute_force_roots(oracle::universal_gram(3), 6)) ++expected[v[0] / (v[0] + v[1] + v[2])];
  std::map<mpq_class, std::size_t> got;
  for (const auto& [c, n] : small.values) got[c.to_mpq()] = n;
  CHECK(got == expected);
  CHECK_THROWS_AS(certify_c_range(generate_slice(CoxeterMatrix::type_a(2), 3, ScalarMode::Exact)), RankUnsupported);
}

TEST_CASE("density certification") {
  const auto s = universal(12);
  const auto rep = certify_density(*s, 4, 12);
  CHECK(rep.pairs == 35);
  CHECK(rep.complete());
  CHECK(rep.strictly_increasing());
  // Frozen from the word enumeration below (through depth 6) and this run.
  CHECK(rep.distinct_by_depth ==
        std::vector<std::size_t>{0, 1, 5, 15, 36, 81, 175, 361, 739, 1505, 3031, 6093, 12232});

  const auto oracle = oracle_first_coords(6);
  for (int k = 0; k <= 6; ++k) {
    const auto n = std::count_if(oracle.begin(), oracle.end(), [&](const auto& e) {
      return e.second <= k && sgn(e.first) > 0 && e.first < mpq_class(2, 3);
    });
    CHECK(rep.distinct_by_depth[k] == static_cast<std::size_t>(n));
  }

  const auto same = certify_density(*s, 4, 4);
  CHECK(same.pairs == 35);
  CHECK(same.unwitnessed.size() == 35);
  CHECK_THROWS_AS(certify_density(*universal(3), 2, 5), std::invalid_argument);
}

TEST_CASE("parabolic ladder values interleave with other fibers") {
  // (k+1, 0, k) and (k, 0, k+1) give first coordinates (k+1)/(2k+1) and k/(2k+1).
  const auto rep = certify_c_range(*universal(10));
  for (int k = 1; k <= 4; ++k) {
    const Scalar lo = Scalar::rational(k, 2 * k + 1), hi = Scalar::rational(k + 1, 2 * k + 3);
    CHECK(rep.values.count(lo) == 1);
    CHECK(rep.values.count(hi) == 1);
    const auto first = rep.values.upper_bound(lo);
    CHECK(first->first < hi);
  }
}

TEST_CASE("block decomposition") {
  for (int d = 1; d <= 8; ++d) {
    const auto t = lex123()(universal(d));
    const auto blocks = block_decompose_universal(t);
    REQUIRE(blocks.size() >= 3);
    CHECK(blocks.front().kind == BlockKind::Parabolic);
    CHECK(blocks.front().roots.size() == static_cast<std::size_t>(2 * d + 2));
    CHECK(blocks[blocks.size() - 2].c == Scalar::rational(2, 3));
    CHECK(blocks.back().kind == BlockKind::Apex);
    CHECK(blocks.back().roots == std::vector<RootId>{0});
    std::size_t total = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      total += blocks[i].roots.size();
      if (i > 0) CHECK(blocks[i - 1].c < blocks[i].c);
    }
    CHECK(total == t.size());
  }
  const auto t = lex123()(universal(4));
  CHECK_THROWS_AS(block_decompose_universal(t.backward()), BlockViolation);
  std::vector<RootId> moved = t.sequence();
  std::rotate(moved.begin(), moved.begin() + 1, moved.begin() + 15);
  CHECK_THROWS_AS(block_decompose_universal(sort_truncation(universal(4), ExplicitSpec{moved})), BlockViolation);
}

TEST_CASE("stability") {
  const auto m = CoxeterMatrix::universal(3);
  const auto r48 = stability(lex123(), m, 4, 8);
  const auto r59 = stability(lex123(), m, 5, 9);
  CHECK(r59.split_count() > r48.split_count());
  CHECK(r48.split_count() == oracle_splits(lex123()(universal(4)), lex123()(universal(8))));
  CHECK(stability(lex123(), m, 5, 5).split_count() == 0);

  const auto m2 = AffineModel::named("A2~");
  const auto aff = a2_two_sided();
  const auto slice = [&](int d) { return std::make_shared<const RootSlice>(generate_slice(m2.matrix(), d, ScalarMode::Exact)); };
  // Frozen from the brute-force scan. Depth truncation is not level-aligned,
  // so deeper roots land inside both halves as well as at the junction.
  const auto a59 = stability(aff, m2.matrix(), 5, 9);
  CHECK(a59.split_count() == oracle_splits(aff(slice(5)), aff(slice(9))));
  CHECK(a59.split_count() == 5);
  for (int d = 4; d <= 6; ++d) CHECK(stability(aff, m2.matrix(), d, d + 3).split_count() == 4);
}

TEST_CASE("split status never reverts") {
  const auto m = CoxeterMatrix::universal(3);
  for (int d = 2; d <= 4; ++d) {
    std::vector<bool> prev;
    for (int D = d; D <= d + 4; ++D) {
      const auto r = stability(lex123(), m, d, D);
      std::vector<bool> now;
      for (const auto& a : r.adjacencies) now.push_back(a.split());
      for (std::size_t i = 0; i < prev.size(); ++i) CHECK((!prev[i] || now[i]));
      prev = now;
    }
  }
}

TEST_CASE("char3 diagnostic separates the regimes") {
  const auto m = CoxeterMatrix::universal(3);
  for (int d = 4; d <= 6; ++d) {
    const auto U = fiber(*universal(d), 1, Scalar::rational(1, 3));
    const auto rep = char3_diagnostic(lex123(), m, U, d, d + 3);
    CHECK(rep.pairs.size() == U.size() - 1);
    CHECK(rep.growing() == rep.pairs.size());
  }
  const auto m2 = AffineModel::named("A2~");
  const auto aff = a2_two_sided();
  for (int d = 4; d <= 7; ++d) {
    const auto s = generate_slice(m2.matrix(), d, ScalarMode::Exact);
    const auto sub = dihedral_closure(0, *s.lookup(Coeffs{0, 1, 1}), s);
    const auto rep = char3_diagnostic(aff, m2.matrix(), sub.roots, d, d + 3);
    CHECK(rep.pairs.size() == sub.roots.size() - 1);
    CHECK(rep.growing() <= 4);
  }
  const auto two = char3_diagnostic(lex123(), m, {0, 1}, 3, 5);
  CHECK(two.pairs.size() == 1);
}

TEST_CASE("build_E intervals have one growing junction") {
  const auto t10 = lex123()(universal(10));
  const auto t13 = lex123()(universal(13));
  const auto e = build_E(t10, 3, Scalar::rational(1, 20));
  const auto e13 = build_E(t13, 3, Scalar::rational(1, 20));
  CHECK(e13.anchors == e.anchors);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto r = restricted_stability(t10, t13, e.intervals[i], e13.intervals[i]);
    CHECK(r.split_count() == 1);
  }
}
