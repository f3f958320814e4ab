#include <doctest.h>

#include <map>

#include "profin/errors.hpp"
#include "profin/gamma.hpp"
#include "support.hpp"

using namespace profin;

namespace {

bool isomorphic(const Graph& a, const Graph& b) { return are_isomorphic(a, b).has_value(); }

GroupElement lift(const GraphPtr& g, Prime p, const BarElement& v) { return GroupElement(g, p, {}, v.vector); }

std::uint64_t expected_size(const CaseTag& tag, int p) {
  const std::uint64_t q = static_cast<std::uint64_t>(p);
  switch (tag.index()) {
    case 1:
      return (q - 1) * (q - 1);
    case 2:
      return q * (q - 1);
    default:
      return q - 1;
  }
}

}  // namespace

TEST_CASE("bar forgets the central part") {
  const auto g = test::c5();
  const Prime p(3);
  const auto a = parse_element("z(0,2)*x1^2*x3", g, p);
  CHECK(bar(a) == BarElement{{{1, 2}, {3, 1}}});
  CHECK(bar(a) == bar(a * parse_element("z(1,3)", g, p)));
}

TEST_CASE("sim needs non-central arguments") {
  const auto g = test::c5();
  const Prime p(3);
  CHECK_THROWS_AS(sim(parse_element("z(0,2)", g, p), generator(g, p, 0)), PreconditionError);
  CHECK(sim(generator(g, p, 0), power(generator(g, p, 0), 2)));
  CHECK_FALSE(sim(generator(g, p, 0), generator(g, p, 1)));
  CHECK(sim(generator(g, p, 0), generator(g, p, 0) * parse_element("z(1,3)", g, p)));
}

TEST_CASE("classification of small supports on C5") {
  const auto g = test::c5();
  for (int pv : {3, 5}) {
    const Prime p(pv);
    const auto c1 = classify(generator(g, p, 2));
    CHECK(c1.case_tag == CaseTag{Case1{2}});
    CHECK(c1.size == static_cast<std::uint64_t>(pv - 1));

    const auto c2 = classify(parse_element("x1*x2^2", g, p));
    CHECK(c2.case_tag == CaseTag{Case2{1, 2}});
    CHECK(c2.size == static_cast<std::uint64_t>((pv - 1) * (pv - 1)));

    // 0 and 2 are not adjacent; 1 is adjacent to both.
    const auto c3 = classify(parse_element("x0*x2", g, p));
    CHECK(c3.case_tag == CaseTag{Case3{1}});
    CHECK(c3.size == static_cast<std::uint64_t>(pv * (pv - 1)));

    // 1 is in the support and adjacent to the rest of it.
    const auto c3b = classify(parse_element("x0*x1^2*x2", g, p));
    CHECK(c3b.case_tag == CaseTag{Case3{1}});

    const auto c4 = classify(parse_element("x0*x1*x3", g, p));
    CHECK(std::holds_alternative<Case4>(c4.case_tag));
    CHECK(c4.size == static_cast<std::uint64_t>(pv - 1));
  }
  CHECK_THROWS_AS(classify(parse_element("z(0,2)", g, Prime(3))), PreconditionError);
  CHECK(to_string(CaseTag{Case2{1, 2}}).find("2") != std::string::npos);
}

TEST_CASE("closed-form class sizes match enumeration on all of G(C5)/Z at p = 3") {
  const auto g = test::c5();
  const Prime p(3);
  const auto level = QuotientLevel::standard(g, p, 5);
  const auto classes = brute_classes(level);
  REQUIRE(classes.cosets.size() == 243);
  CHECK(classes.class_of[0] == -1);
  std::map<std::uint64_t, int> census;
  for (std::size_t k = 1; k < classes.cosets.size(); ++k) {
    const auto v = lift(g, p, classes.cosets[k]);
    const auto d = classify(v);
    const auto brute = classes.class_sizes[classes.class_of[k]];
    CHECK(d.size == brute);
    CHECK(d.size == expected_size(d.case_tag, 3));
    ++census[brute];
    // The commutation table is symmetric and agrees with the closed form.
    for (std::size_t j = 1; j < classes.cosets.size(); j += 17) {
      CHECK(static_cast<bool>(classes.commutes[k][j]) == commutes(v, lift(g, p, classes.cosets[j])));
    }
  }
  // Frozen from the enumeration above: 10 generator powers and 152 other
  // elements in classes of size 2, 5 edges * 4, 5 paths of length two * 12.
  CHECK(census[2] == 162);
  CHECK(census[4] == 20);
  CHECK(census[6] == 60);
  CHECK(class_size_brute(level, generator(g, p, 0)) == 2);
}

TEST_CASE("a witness exists exactly for the generator classes") {
  const auto g = test::c5();
  const Prime p(3);
  const auto classes = brute_classes(QuotientLevel::standard(g, p, 5));
  int with_witness = 0;
  for (std::size_t k = 1; k < classes.cosets.size(); ++k) {
    if (classes.class_sizes[classes.class_of[k]] != 2) continue;
    const auto v = lift(g, p, classes.cosets[k]);
    const auto w = find_witness(v);
    CHECK(w.has_value() == std::holds_alternative<Case1>(classify(v).case_tag));
    CHECK(witness_exists(v) == w.has_value());
    if (w) {
      CHECK(commutes(v, *w));
      CHECK_FALSE(sim(v, *w));
      ++with_witness;
    }
  }
  CHECK(with_witness == 10);
}

TEST_CASE("gamma recovers nice graphs") {
  CHECK(isomorphic(gamma_symbolic(test::c5(), Prime(3)), cycle_graph(5)));
  CHECK(isomorphic(gamma_symbolic(test::c5(), Prime(5)), cycle_graph(5)));
  CHECK(isomorphic(gamma_symbolic(test::petersen(), Prime(3)), petersen_graph()));
  for (int n = 6; n <= 9; ++n) {
    const auto g = generate_nice(n, 5);
    REQUIRE(g);
    CHECK(gamma_symbolic(share(*g), Prime(3)) == *g);
  }
}

TEST_CASE("gamma refuses graphs that are not nice") {
  try {
    gamma_symbolic(share(complete_graph(3)), Prime(3));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("Triangle") != std::string::npos);
  }
  CHECK_THROWS_AS(gamma_symbolic(share(cycle_graph(4)), Prime(3)), PreconditionError);
}

TEST_CASE("brute-force gamma on the finite quotient") {
  const auto g = test::c5();
  const auto result = gamma_brute(QuotientLevel::standard(g, Prime(3), 5));
  CHECK(isomorphic(result.graph, cycle_graph(5)));
  CHECK(isomorphic(result.graph, gamma_symbolic(g, Prime(3))));
  REQUIRE(result.labels.size() == 5);
  // Each vertex is the class of one generator, and adjacency follows A.
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      CHECK(result.graph.has_edge(a, b) == g->has_edge(result.labels[a], result.labels[b]));
    }
  }
  const auto six = share(*generate_nice(6, 5));
  CHECK(isomorphic(gamma_brute(QuotientLevel::standard(six, Prime(3), 6)).graph, *six));
  CHECK_THROWS_AS(gamma_brute(QuotientLevel::standard(test::petersen(), Prime(3), 10)), ResourceError);
}

TEST_CASE("round trip verdicts") {
  const auto c5 = test::c5();
  const auto rotated = share(relabel(*c5, {1, 2, 3, 4, 0}));
  const auto iso = roundtrip(c5, rotated, Prime(3));
  CHECK(iso.graphs_isomorphic);
  CHECK(iso.fingerprints_match);
  CHECK(iso.homomorphism_verified);
  CHECK(iso.verified());
  CHECK(iso.summary() == "ISOMORPHIC (fingerprints match)");

  const auto non = roundtrip(c5, test::petersen(), Prime(3));
  CHECK_FALSE(non.graphs_isomorphic);
  CHECK(non.gamma_recovers_a);
  CHECK(non.gamma_recovers_b);
  CHECK(non.gamma_separates);
  CHECK(non.summary() == "NON-ISOMORPHIC (Gamma separates)");

  const auto six_a = share(*generate_nice(6, 5));
  const auto six_b = share(relabel(*six_a, {5, 3, 1, 0, 2, 4}));
  CHECK(roundtrip(six_a, six_b, Prime(3), 2).verified());
}
