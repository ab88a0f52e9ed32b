#include <map>
#include <random>

#include "doctest.h"
#include "reflab/errors.hpp"
#include "reflab/projective.hpp"
#include "reflab/subgroups.hpp"

using namespace reflab;

namespace {

Scalar r(long n, long d = 1) { return Scalar::rational(n, d); }

const RootSlice& universal(int d) {
  static std::map<int, RootSlice> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, generate_slice(CoxeterMatrix::universal(3), d, ScalarMode::Exact)).first;
  return it->second;
}

RootId id_of(const RootSlice& s, int a, int b, int c) { return *s.lookup(Coeffs{a, b, c}); }

}  // namespace

TEST_CASE("plane keys") {
  const Coeffs a{1, 2, 0}, b{1, 0, 2}, c{2, 2, 2}, d{3, 2, 4};
  CHECK(Plane(a, b) == Plane(c, d));
  CHECK(Plane(a, b).hash() == Plane(c, d).hash());
  CHECK_FALSE(Plane(a, b) == Plane(a, Coeffs{0, 0, 1}));
  CHECK(Plane(a, b).contains(Coeffs{5, 6, 4}));
  CHECK(Plane(a, b).contains(Coeffs{1, 1, 1}));
  CHECK_FALSE(Plane(a, b).contains(Coeffs{1, 1, 0}));
  CHECK_THROWS_AS(Plane(a, Coeffs{2, 4, 0}), std::invalid_argument);
  CHECK(in_cone({r(1), r(0)}, {r(0), r(1)}, {r(2), r(3)}));
  CHECK_FALSE(in_cone({r(1), r(0)}, {r(0), r(1)}, {r(-1), r(3)}));
}

TEST_CASE("form classification") {
  CHECK(classify_bform(r(-1), ScalarMode::Exact)->first == DihedralKind::Infinite);
  CHECK(classify_bform(r(-3, 2), ScalarMode::Exact)->first == DihedralKind::Infinite);
  CHECK(classify_bform(r(0), ScalarMode::Exact)->second == 2);
  CHECK(classify_bform(r(-1, 2), ScalarMode::Exact)->second == 3);
  CHECK_FALSE(classify_bform(r(-1, 3), ScalarMode::Exact).has_value());
  CHECK(classify_bform(Scalar::approx(-std::cos(3.14159265358979323846 / 7)), ScalarMode::Approx)->second == 7);
}

TEST_CASE("dihedral closure examples") {
  const auto& s = universal(4);
  const auto par = dihedral_closure(1, 2, s);
  CHECK(par.gamma1 == 1);
  CHECK(par.gamma2 == 2);
  CHECK(par.bform == r(-1));
  CHECK(par.is_infinite());
  for (RootId id : par.roots) CHECK(s.coeffs(id)[0].is_zero());
  CHECK(par.roots.size() == 10);  // (k+1,k) and (k,k+1) in the last two coordinates, k <= 4

  const RootId a = id_of(s, 2, 1, 0), b = id_of(s, 2, 0, 1);
  const auto phi3 = dihedral_closure(a, b, s);
  CHECK(phi3.gamma1 == std::min(a, b));
  CHECK(phi3.gamma2 == std::max(a, b));
  CHECK(phi3.bform == r(-1));
  CHECK(phi3.is_infinite());

  const auto a2 = generate_slice(CoxeterMatrix::type_a(2), 4, ScalarMode::Exact);
  const auto fin = dihedral_closure(0, 1, a2);
  CHECK(fin.kind == DihedralKind::Finite);
  CHECK(fin.order == 3);
  CHECK(fin.roots == std::vector<RootId>{0, 2, 1});
  CHECK_THROWS_AS(dihedral_closure(0, 0, a2), std::invalid_argument);
}

TEST_CASE("closure escaping a shallow slice") {
  // s_(2,1,0) and s_(3,2,0) generate the parabolic <s1, s2>; at depth 2 the
  // closure reaches alpha1 but alpha2 only through (4,3,0), which is deeper.
  const auto& s2 = universal(2);
  CHECK_THROWS_AS(dihedral_closure(id_of(s2, 2, 1, 0), id_of(s2, 3, 2, 0), s2), ClosureEscapesSlice);
  const auto& s3 = universal(3);
  const auto sub = dihedral_closure(id_of(s3, 2, 1, 0), id_of(s3, 3, 2, 0), s3);
  CHECK(sub.gamma1 == 0);
  CHECK(sub.gamma2 == 1);
  CHECK(sub.is_infinite());
  // a proper subgroup of that parabolic keeps its own canonical pair
  const RootId a = id_of(s3, 2, 1, 0), b = id_of(s3, 1, 2, 0);
  const auto proper = dihedral_closure(a, b, s3);
  CHECK(proper.gamma1 == std::min(a, b));
  CHECK(proper.gamma2 == std::max(a, b));
  CHECK(proper.bform == r(-1));
}

TEST_CASE("maximal dihedral subgroups") {
  const auto& s = universal(6);
  const RootId a = id_of(s, 1, 2, 0), b = id_of(s, 1, 0, 2);
  const auto big = maximal_dihedral(a, b, s);
  CHECK(big.is_infinite());
  CHECK(big.roots.size() > 2);
  for (RootId id : big.roots) CHECK(first_coordinate(id, s, 0) == r(1, 3));
  const auto closure = dihedral_closure(a, b, s);
  for (RootId id : closure.roots) CHECK(std::find(big.roots.begin(), big.roots.end(), id) != big.roots.end());
  const auto par = maximal_dihedral(0, 1, s);
  for (RootId id : par.roots) CHECK(s.coeffs(id)[2].is_zero());
  CHECK(par.gamma1 == 0);
  CHECK(par.gamma2 == 1);
}

TEST_CASE("algebraic and geometric classification agree on every pair at depth 5") {
  const auto& s = universal(5);
  std::size_t checked = 0, escaped = 0;
  for (RootId a = 0; a < s.size(); ++a) {
    for (RootId b = a + 1; b < s.size(); ++b) {
      DihedralSubgroup sub;
      try {
        sub = dihedral_closure(a, b, s);
      } catch (const ClosureEscapesSlice&) {
        ++escaped;
        continue;
      }
      const auto cone = segment_meets_cone(normalize(sub.gamma1, s).coords, normalize(sub.gamma2, s).coords,
                                           s.gram());
      CHECK(cone.intersects == sub.is_infinite());
      // the generating roots lie between the canonical pair
      const Plane p(s.coeffs(sub.gamma1), s.coeffs(sub.gamma2));
      for (RootId x : {a, b})
        CHECK(in_cone(p.coords(s.coeffs(sub.gamma1)), p.coords(s.coeffs(sub.gamma2)), p.coords(s.coeffs(x))));
      ++checked;
    }
  }
  CHECK(checked > 0);
  MESSAGE("pairs certified: " << checked << ", escaping: " << escaped);
}

TEST_CASE("fibers of the first coordinate") {
  const auto& s = universal(6);
  const auto zero = fiber(s, 0, r(0));
  for (RootId id = 0; id < s.size(); ++id) {
    const bool parabolic = s.coeffs(id)[0].is_zero();
    CHECK(parabolic == std::binary_search(zero.begin(), zero.end(), id));
  }
  const auto& s4 = universal(4);
  const auto two_thirds = fiber(s4, 0, r(2, 3));
  REQUIRE(two_thirds.size() >= 2);
  const Plane p(s4.coeffs(two_thirds[0]), s4.coeffs(two_thirds[1]));
  for (RootId id : two_thirds) CHECK(p.contains(s4.coeffs(id)));
  for (int d = 1; d <= 8; ++d) CHECK(fiber(universal(d), 0, r(5, 6)).empty());

  const auto all = fibers(s, 0);
  std::size_t total = 0;
  for (const auto& [c, ids] : all) total += ids.size();
  CHECK(total == s.size());
  CHECK(all.begin()->first == r(0));
  CHECK(std::prev(all.end())->first == r(1));
}

TEST_CASE("swapping the last two coordinates preserves roots") {
  const auto& s = universal(6);
  for (RootId id = 0; id < s.size(); ++id) {
    const auto v = s.coeffs(id);
    CHECK(s.lookup(Coeffs{v[0], v[2], v[1]}).has_value());
  }
}

TEST_CASE("plane index") {
  const auto& s = universal(3);
  const PlaneIndex index(s);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& m = index.members(i);
    pairs += m.size() * (m.size() - 1) / 2;
    for (RootId id : m) CHECK(index.plane(i).contains(s.coeffs(id)));
  }
  CHECK(pairs == s.size() * (s.size() - 1) / 2);
}
