#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "reflab/affine.hpp"
#include "reflab/errors.hpp"

using namespace reflab;

namespace {

std::shared_ptr<const RootSlice> affine_slice(const AffineModel& m, int d) {
  return std::make_shared<const RootSlice>(generate_slice(m.matrix(), d, ScalarMode::Exact));
}

}  // namespace

TEST_CASE("finite data") {
  const auto a1 = finite_datum(CoxeterMatrix::type_a(1));
  CHECK(a1.positive == std::vector<Coeffs>{{1}});
  CHECK(a1.all().size() == 2);
  const auto a2 = finite_datum(CoxeterMatrix::type_a(2));
  CHECK(a2.positive.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a2.negative[i] == negated(a2.positive[i]));
  CHECK_THROWS_AS(finite_datum(CoxeterMatrix::universal(3), 10), NotFiniteType);
}

TEST_CASE("tilde and alpha0") {
  const Coeffs a{1}, na{-1};
  CHECK(tilde({a}, 2) == std::vector<AffineRoot>{{a, 0}, {a, 1}, {a, 2}});
  CHECK(tilde({na}, 2) == std::vector<AffineRoot>{{na, 1}, {na, 2}});
  CHECK(alpha0(na) == AffineRoot{na, 1});
  CHECK(alpha0(a) == AffineRoot{a, 0});
  CHECK_THROWS_AS(tilde({a}, -1), std::invalid_argument);
}

TEST_CASE("affine models") {
  const auto m1 = AffineModel::named("A1~");
  CHECK(m1.delta() == Coeffs{1, 1});
  CHECK(m1.affine_node() == 1);
  CHECK(m1.finite().positive.size() == 1);
  const auto m2 = AffineModel::named("A2~");
  CHECK(m2.delta() == Coeffs{1, 1, 1});
  CHECK(m2.affine_node() == 2);
  CHECK(m2.finite().positive.size() == 3);
  // delta spans the radical of the form.
  for (int s = 0; s < 3; ++s) CHECK(m2.gram().form_with_simple(m2.delta(), s).is_zero());
  CHECK_THROWS_AS(AffineModel::from_matrix(CoxeterMatrix::universal(3), ScalarMode::Exact), std::invalid_argument);
  CHECK_THROWS_AS(AffineModel::from_matrix(CoxeterMatrix::type_a(3), ScalarMode::Exact), std::invalid_argument);
}

TEST_CASE("loop coordinates round trip") {
  for (const char* name : {"A1~", "A2~"}) {
    const auto m = AffineModel::named(name);
    const auto s = affine_slice(m, 8);
    for (RootId id = 0; id < s->size(); ++id) {
      const auto loop = m.to_loop(s->coeffs(id));
      REQUIRE(loop.has_value());
      CHECK(m.from_loop(*loop) == s->root(id));
      // adding delta gives a positive root one level up
      Coeffs up = s->root(id);
      for (std::size_t i = 0; i < up.size(); ++i) up[i] += m.delta()[i];
      CHECK(is_positive(up));
      CHECK(m.gram().form(up, up) == Scalar(1));
      CHECK(m.to_loop(up)->level == loop->level + 1);
    }
  }
}

TEST_CASE("positive roots are tilde(Phi0+) and tilde(Phi0-)") {
  for (const char* name : {"A1~", "A2~"}) {
    const auto m = AffineModel::named(name);
    const int L = 8;
    std::set<Coeffs> expected;
    for (const auto& r : tilde(m.finite().all(), L)) expected.insert(m.from_loop(r));
    // Independent enumeration: every positive w(alpha_j) with len(w) <= 3L + 3.
    oracle::QMat g;
    for (int i = 0; i < m.matrix().rank(); ++i) {
      g.emplace_back();
      for (int j = 0; j < m.matrix().rank(); ++j) g.back().push_back(m.gram()(i, j).to_mpq());
    }
    const auto s = affine_slice(m, 3 * L + 3);
    std::set<Coeffs> actual;
    for (RootId id = 0; id < s->size(); ++id) {
      const auto loop = m.to_loop(s->coeffs(id));
      if (loop && loop->level <= L) actual.insert(s->root(id));
    }
    CHECK(actual == expected);
    if (m.matrix().rank() == 2) {
      std::set<Coeffs> brute;
      for (const auto& q : oracle::brute_force_roots(g, 12)) {
        Coeffs v;
        for (const auto& x : q) v.push_back(Scalar::from_mpq(x));
        if (m.to_loop(v)->level <= 5) brute.insert(v);
      }
      std::set<Coeffs> want;
      for (const auto& r : tilde(m.finite().all(), 5)) want.insert(m.from_loop(r));
      CHECK(brute == want);
    }
  }
}

TEST_CASE("inversion identity for A~1") {
  const auto m = AffineModel::named("A1~");
  const InfiniteWord up{{}, {0, 1}}, down{{}, {1, 0}};
  const auto inv = inversion_roots(up.truncate(4), m.gram());
  CHECK(inv == std::vector<Coeffs>{{1, 0}, {2, 1}, {3, 2}, {4, 3}});
  const auto rep = check_inversion_identity(m, up, m.finite().positive, 8);
  CHECK(rep.ok);
  CHECK(rep.per_level == std::vector<std::size_t>(9, 1));
  CHECK(check_inversion_identity(m, down, m.finite().negative, 8).ok);
  const auto wrong = check_inversion_identity(m, down, m.finite().positive, 8);
  CHECK_FALSE(wrong.ok);
  CHECK(wrong.letters == 1);
  try {
    check_inversion_identity(m, InfiniteWord{{}, {0, 0}}, m.finite().positive, 8);
    FAIL("expected WordNotReduced");
  } catch (const WordNotReduced& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("default infinite words") {
  const auto m1 = AffineModel::named("A1~");
  const auto w1 = default_two_sided_words(m1);
  CHECK(w1.ascending.period == std::vector<int>{0, 1});
  CHECK(w1.descending.period == std::vector<int>{1, 0});
  const auto m2 = AffineModel::named("A2~");
  const auto w2 = default_two_sided_words(m2);
  CHECK(w2.ascending.period == std::vector<int>{0, 1, 0, 2});
  CHECK(w2.descending.period == std::vector<int>{2, 0, 1, 0});
  const auto rep = check_inversion_identity(m2, w2.ascending, m2.finite().positive, 8);
  CHECK(rep.ok);
  CHECK(rep.per_level == std::vector<std::size_t>(9, 3));
  CHECK(check_inversion_identity(m2, w2.descending, m2.finite().negative, 8).ok);
}

TEST_CASE("two-sided orders") {
  const auto m1 = AffineModel::named("A1~");
  const auto s1 = affine_slice(m1, 8);
  const auto t1 = two_sided_order(s1, default_two_sided_words(m1));
  // The same order as the lexicographic one with basis alpha2, alpha1.
  CHECK(t1.sequence() == sort_truncation(s1, LexicographicSpec::simple({1, 0})).sequence());
  CHECK(s1->root(t1.at(0)) == Coeffs{1, 0});
  CHECK(s1->root(t1.at(1)) == Coeffs{2, 1});
  CHECK(s1->root(t1.at(t1.size() - 1)) == Coeffs{0, 1});
  CHECK(verify_reflection_order(t1).ok());

  const auto m2 = AffineModel::named("A2~");
  for (int d : {4, 6, 8}) {
    const auto s2 = affine_slice(m2, d);
    CHECK(s2->size() == static_cast<std::size_t>(3 * (d + 1)));
    const auto t2 = two_sided_order(s2, default_two_sided_words(m2));
    CHECK(t2.size() == s2->size());
    const auto rep = verify_reflection_order(t2);
    CHECK(rep.ok());
    CHECK(rep.dihedral_undetermined == 0);
  }

  const auto s2 = affine_slice(m2, 4);
  const TwoSidedSpec same{{{}, {0, 1, 0, 2}}, {{}, {0, 1, 0, 2}}};
  CHECK_THROWS_AS(two_sided_order(s2, same), NotAPartition);
  // (s3 s1 s2)^inf is reduced, but its inversions miss some roots.
  const TwoSidedSpec partial{{{}, {0, 1, 0, 2}}, {{}, {2, 0, 1}}};
  CHECK_THROWS_AS(two_sided_order(s2, partial), NotAPartition);
}
