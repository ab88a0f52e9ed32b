#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "reflab/errors.hpp"
#include "reflab/root_slice.hpp"
#include "reflab/word.hpp"

using namespace reflab;

namespace {

Coeffs vec(std::initializer_list<int> xs) {
  Coeffs out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("gram entries") {
  const auto g = gram_of(CoxeterMatrix::universal(3), ScalarMode::Exact);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g(i, j) == Scalar(i == j ? 1 : -1));
  const auto a = gram_of(CoxeterMatrix::type_a(2), ScalarMode::Exact);
  CHECK(a(0, 1) == Scalar::rational(-1, 2));
  const auto b = gram_of(CoxeterMatrix(2, {1, 2, 2, 1}), ScalarMode::Exact);
  CHECK(b(0, 1) == Scalar(0));
  CHECK_THROWS_AS(gram_of(CoxeterMatrix(2, {1, 5, 5, 1}), ScalarMode::Exact), ExactModeUnavailable);
  const auto h = gram_of(CoxeterMatrix(2, {1, 5, 5, 1}), ScalarMode::Approx);
  CHECK(h(0, 1).to_double() == doctest::Approx(-0.80901699437));
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(CoxeterMatrix(2, {1, 3, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterMatrix(2, {2, 3, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterMatrix(2, {1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterMatrix(2, {1, 0, 0, 1}, {0, Scalar::rational(-1, 2), Scalar::rational(-1, 2), 0}),
                  std::invalid_argument);
}

TEST_CASE("reflections") {
  const auto g = gram_of(CoxeterMatrix::universal(3), ScalarMode::Exact);
  CHECK(reflect(vec({0, 1, 0}), 0, g) == vec({2, 1, 0}));
  CHECK(reflect(vec({2, 1, 0}), 1, g) == vec({2, 3, 0}));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-20, 20), letter(0, 2);
  for (int i = 0; i < 200; ++i) {
    Coeffs x = vec({coef(rng), coef(rng), coef(rng)});
    const int s = letter(rng);
    CHECK(reflect(reflect(x, s, g), s, g) == x);
  }
}

TEST_CASE("slice sizes match brute-force word enumeration") {
  const auto q = oracle::universal_gram(3);
  for (int d = 0; d <= 6; ++d) {
    const auto slice = generate_slice(CoxeterMatrix::universal(3), d, ScalarMode::Exact);
    const auto expected = oracle::brute_force_roots(q, d);
    REQUIRE(slice.size() == expected.size());
    for (RootId id = 0; id < slice.size(); ++id) CHECK(expected.count(oracle::to_q(slice.coeffs(id))) == 1);
  }
  // frozen from the brute-force count above: 3 (2^(d+1) - 1)
  CHECK(generate_slice(CoxeterMatrix::universal(3), 1, ScalarMode::Exact).size() == 9);
  CHECK(generate_slice(CoxeterMatrix::universal(3), 0, ScalarMode::Exact).size() == 3);
}

TEST_CASE("rank-4 universal slices match brute force") {
  const auto q = oracle::universal_gram(4);
  const auto slice = generate_slice(CoxeterMatrix::universal(4), 4, ScalarMode::Exact);
  CHECK(slice.size() == oracle::brute_force_roots(q, 4).size());
}

TEST_CASE("ids follow depth then descending coefficients") {
  const auto slice = generate_slice(CoxeterMatrix::universal(3), 3, ScalarMode::Exact);
  for (int s = 0; s < 3; ++s) CHECK(slice.lookup(simple_root(3, s)) == std::optional<RootId>(s));
  for (RootId id = 1; id < slice.size(); ++id) {
    if (slice.depth(id - 1) == slice.depth(id)) {
      CHECK(compare_lex(slice.coeffs(id - 1), slice.coeffs(id)) > 0);
    } else {
      CHECK(slice.depth(id - 1) + 1 == slice.depth(id));
    }
  }
  CHECK(slice.count_up_to_depth(1) == 9);
  CHECK(slice.count_up_to_depth(99) == slice.size());
}

TEST_CASE("slice invariants") {
  const auto m = CoxeterMatrix::universal(3);
  const auto slice = generate_slice(m, 6, ScalarMode::Exact);
  const auto& g = slice.gram();
  for (RootId id = 0; id < slice.size(); ++id) {
    CHECK(g.form(slice.coeffs(id), slice.coeffs(id)) == Scalar(1));
    if (auto p = slice.parent(id)) {
      CHECK(slice.depth(p->id) + 1 == slice.depth(id));
      CHECK(reflect(slice.coeffs(p->id), p->letter, g) == slice.root(id));
    } else {
      CHECK(slice.is_simple(id));
    }
  }
  std::mt19937 rng(11);
  std::uniform_int_distribution<RootId> pick(0, static_cast<RootId>(slice.size() - 1));
  for (int i = 0; i < 300; ++i) {
    const auto u = slice.root(pick(rng)), v = slice.root(pick(rng));
    const int s = static_cast<int>(rng() % 3);
    CHECK(g.form(reflect(u, s, g), reflect(v, s, g)) == g.form(u, v));
  }
  const auto bigger = generate_slice(m, 7, ScalarMode::Exact);
  for (RootId id = 0; id < slice.size(); ++id) CHECK(bigger.lookup(slice.coeffs(id)) == std::optional(id));
}

TEST_CASE("finite types saturate") {
  const auto a2 = generate_slice(CoxeterMatrix::type_a(2), 10, ScalarMode::Exact);
  CHECK(a2.size() == 3);
  CHECK(a2.saturated());
  CHECK(a2.lookup(vec({1, 1})).has_value());
  CHECK(generate_slice(CoxeterMatrix::type_a(3), 10, ScalarMode::Exact).size() == 6);
  CHECK(generate_slice(CoxeterMatrix::type_a(4), 10, ScalarMode::Exact).size() == 10);
  const auto b3 = generate_slice(CoxeterMatrix(3, {1, 4, 2, 4, 1, 3, 2, 3, 1}), 20, ScalarMode::Approx);
  CHECK(b3.size() == 9);
  const auto h3 = generate_slice(CoxeterMatrix(3, {1, 5, 2, 5, 1, 3, 2, 3, 1}), 40, ScalarMode::Approx);
  CHECK(h3.size() == 15);
  CHECK(h3.saturated());
}

TEST_CASE("lookup") {
  const auto slice = generate_slice(CoxeterMatrix::universal(3), 3, ScalarMode::Exact);
  CHECK(slice.lookup(vec({1, 0, 0})) == std::optional<RootId>(0));
  CHECK_FALSE(slice.lookup(vec({1, 1, 1})).has_value());
  CHECK(slice.lookup(vec({2, 3, 0})).has_value());
  CHECK_FALSE(slice.lookup(vec({1, 0})).has_value());
}

TEST_CASE("cap") {
  CHECK_THROWS_AS(generate_slice(CoxeterMatrix::universal(3), 10, ScalarMode::Exact, 100), SliceTooLarge);
}

TEST_CASE("reflection words") {
  const auto slice = generate_slice(CoxeterMatrix::universal(3), 5, ScalarMode::Exact);
  CHECK(root_to_reflection(0, slice).letters == std::vector<int>{0});
  const auto id = *slice.lookup(vec({2, 1, 0}));
  CHECK(root_to_reflection(id, slice).letters == std::vector<int>{0, 1, 0});
  for (RootId r = 0; r < slice.size(); ++r) {
    const auto [chain, seed] = root_chain(r, slice);
    CHECK(apply_word(chain, simple_root(3, seed), slice.gram()) == slice.root(r));
    CHECK(static_cast<int>(chain.size()) == slice.depth(r));
    const Word w = root_to_reflection(r, slice);
    CHECK(std::equal(w.letters.begin(), w.letters.end(), w.letters.rbegin()));
    // the reflection sends the root to its negative
    CHECK(apply_word(w.letters, slice.coeffs(r), slice.gram()) == negated(slice.coeffs(r)));
    CHECK(is_reduced(w.letters, slice.gram()));
  }
}

TEST_CASE("reducedness") {
  const auto g = gram_of(CoxeterMatrix::universal(3), ScalarMode::Exact);
  CHECK(is_reduced(std::vector<int>{0, 1, 2, 0, 1}, g));
  CHECK(first_non_reduced(std::vector<int>{0, 1, 1}, g) == 2);
  const auto a = gram_of(CoxeterMatrix::type_a(2), ScalarMode::Exact);
  CHECK(is_reduced(std::vector<int>{0, 1, 0}, a));
  CHECK_FALSE(is_reduced(std::vector<int>{0, 1, 0, 1}, a));
}
