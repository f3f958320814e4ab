#include <doctest.h>

#include <random>
#include <set>

#include "profin/errors.hpp"
#include "profin/mekler.hpp"
#include "profin/quotient.hpp"
#include "support.hpp"

using namespace profin;

namespace {

struct Config {
  GraphPtr graph;
  int p;
};

std::vector<Config> configs() {
  return {{test::c5(), 3}, {test::c5(), 5}, {test::petersen(), 3}, {test::petersen(), 5}};
}

}  // namespace

TEST_CASE("Prime rejects non-primes and 2") {
  CHECK_NOTHROW(Prime(3));
  CHECK_NOTHROW(Prime(7));
  CHECK_THROWS_AS(Prime(2), std::invalid_argument);
  CHECK_THROWS_AS(Prime(9), std::invalid_argument);
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK(Prime(5).reduce(-7) == 3);
}

TEST_CASE("element construction validates its words") {
  const auto g = test::c5();
  CHECK_THROWS_AS(GroupElement(g, Prime(3), {{{0, 1}, 1}}, {}), std::invalid_argument);  // an edge
  CHECK_THROWS_AS(GroupElement(g, Prime(3), {{{2, 0}, 1}}, {}), RangeError);
  CHECK_THROWS_AS(GroupElement(g, Prime(3), {}, {{5, 1}}), RangeError);
  const GroupElement a(g, Prime(3), {{{0, 2}, 3}}, {{1, 4}});
  CHECK(a.beta(0, 2) == 0);
  CHECK(a.alpha(1) == 1);
}

TEST_CASE("group laws on random elements") {
  for (const auto& [g, pv] : configs()) {
    const Prime p(pv);
    std::mt19937_64 rng(1000 + pv + g->n_vertices());
    const auto one = identity(g, p);
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = test::random_element(g, p, rng);
      const auto y = test::random_element(g, p, rng);
      const auto z = test::random_element(g, p, rng);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * inverse(x) == one);
      CHECK(inverse(x) * x == one);
      CHECK(x * one == x);
      CHECK(power(x, pv) == one);
      CHECK(commutator(commutator(x, y), z) == one);
      CHECK(commutator(x, y * z) == commutator(x, y) * commutator(x, z));
      CHECK(commutator(x, y) == inverse(commutator(y, x)));
      CHECK(inverse(x * y) == inverse(y) * inverse(x));
    }
  }
}

TEST_CASE("commutator closed form agrees with a^-1 b^-1 a b") {
  for (const auto& [g, pv] : configs()) {
    const Prime p(pv);
    std::mt19937_64 rng(7 * pv + g->n_vertices());
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = test::random_element(g, p, rng);
      const auto b = test::random_element(g, p, rng);
      const auto c = commutator(a, b);
      CHECK(c == inverse(a) * inverse(b) * a * b);
      CHECK(c.vector().empty());
    }
  }
}

TEST_CASE("generator commutators") {
  for (const auto& [g, pv] : configs()) {
    const Prime p(pv);
    const int n = g->n_vertices();
    for (int r = 0; r < n; ++r) {
      for (int s = r + 1; s < n; ++s) {
        for (int alpha = 1; alpha < pv; ++alpha) {
          for (int beta = 1; beta < pv; ++beta) {
            const auto c = commutator(power(generator(g, p, r), alpha), power(generator(g, p, s), beta));
            if (g->has_edge(r, s)) {
              CHECK(c.is_identity());
            } else {
              CHECK(c == GroupElement(g, p, {{{r, s}, alpha * beta}}, {}));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("products against hand-computed normal forms") {
  const auto g = test::c5();
  const Prime p(3);
  const auto x0 = generator(g, p, 0), x1 = generator(g, p, 1), x2 = generator(g, p, 2);
  // Adjacent generators commute; non-adjacent ones leave a central factor.
  CHECK(x1 * x0 == x0 * x1);
  CHECK(x2 * x0 == GroupElement(g, p, {{{0, 2}, 2}}, {{0, 1}, {2, 1}}));
  CHECK(x0 * x2 == GroupElement(g, p, {}, {{0, 1}, {2, 1}}));
  CHECK(format_element(x2 * x0) == "z(0,2)^2*x0*x2");
}

TEST_CASE("element literals round trip") {
  const auto g = test::petersen();
  const Prime p(5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = test::random_element(g, p, rng);
    CHECK(parse_element(format_element(a), g, p) == a);
  }
  CHECK(parse_element("1", g, p).is_identity());
  CHECK(parse_element("x3^5", g, p).is_identity());
  CHECK(parse_element("z(0,2)", g, p) == commutator(generator(g, p, 0), generator(g, p, 2)));
  CHECK_THROWS_AS(parse_element("x10", g, p), ParseError);
  CHECK_THROWS_AS(parse_element("x1*", g, p), ParseError);
  CHECK_THROWS_AS(parse_element("y1", g, p), ParseError);
  CHECK_THROWS_AS(parse_element("", g, p), ParseError);
}

TEST_CASE("mixing graphs or primes is rejected") {
  const auto a = generator(test::c5(), Prime(3), 0);
  CHECK_THROWS_AS(multiply(a, generator(test::c5(), Prime(5), 0)), IncompatibleError);
  CHECK_THROWS_AS(multiply(a, generator(test::petersen(), Prime(3), 0)), IncompatibleError);
}

TEST_CASE("centre membership") {
  const auto g = test::c5();
  const Prime p(3);
  CHECK(is_central(parse_element("z(0,2)^2*z(1,3)", g, p)));
  CHECK_FALSE(is_central(generator(g, p, 0)));
  CHECK_THROWS_AS(is_central(generator(share(path_graph(3)), p, 0)), UnsupportedGraphError);
}

TEST_CASE("centralizer_equal agrees with enumerated centralizers") {
  // P4 is small enough (order 3^7) to list centralizers outright.
  const auto g = share(path_graph(4));
  const Prime p(3);
  const auto level = QuotientLevel::standard(g, p, 4);
  std::mt19937_64 rng(5);
  auto centralizer_set = [&](const GroupElement& u) {
    std::set<std::string> out;
    for (const auto& c : centralizer_brute(level, u)) out.insert(format_element(c));
    return out;
  };
  int equal_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto u = test::random_element(g, p, rng);
    // Half the time take v = u^k z, which has the same centralizer.
    const auto v = trial % 2 == 0
                       ? power(u, 1 + (trial / 2) % 2) * GroupElement(g, p, {{{0, 2}, trial % 3}}, {})
                       : test::random_element(g, p, rng);
    const bool expected = centralizer_set(u) == centralizer_set(v);
    CHECK(centralizer_equal(u, v) == expected);
    equal_seen += expected;
  }
  CHECK(equal_seen >= 20);
}

TEST_CASE("rank over F_p matches the size of the row span") {
  std::mt19937_64 rng(17);
  const Prime p(3);
  std::uniform_int_distribution<int> digit(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 4, cols = 1 + trial % 5;
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
    for (auto& row : m)
      for (auto& x : row) x = digit(rng);
    // Span size by enumerating every combination of rows.
    std::set<std::vector<int>> span;
    int combos = 1;
    for (int i = 0; i < rows; ++i) combos *= 3;
    for (int c = 0; c < combos; ++c) {
      std::vector<int> v(cols, 0);
      int code = c;
      for (int i = 0; i < rows; ++i, code /= 3)
        for (int j = 0; j < cols; ++j) v[j] = (v[j] + code % 3 * m[i][j]) % 3;
      span.insert(v);
    }
    auto copy = m;
    const int rank = detail::rank_mod_p(copy, p);
    std::size_t expected = 1;
    for (int i = 0; i < rank; ++i) expected *= 3;
    CHECK(span.size() == expected);
  }
}

TEST_CASE("truncation is a homomorphism") {
  const auto g = test::petersen();
  const Prime p(3);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = test::random_element(g, p, rng);
    const auto b = test::random_element(g, p, rng);
    for (int n : {0, 3, 6, 10}) CHECK(truncate(a * b, n) == truncate(a, n) * truncate(b, n));
  }
}

TEST_CASE("relabelling elements follows the graph relabelling") {
  const std::vector<Vertex> perm{1, 2, 3, 4, 0};
  const auto g = test::c5();
  const auto h = share(relabel(*g, perm));
  const Prime p(3);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = test::random_element(g, p, rng);
    const auto b = test::random_element(g, p, rng);
    CHECK(relabel(a * b, perm, h) == relabel(a, perm, h) * relabel(b, perm, h));
  }
}
