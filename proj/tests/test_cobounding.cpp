#include <doctest.h>

#include <map>
#include <set>

#include "skewdens/cobounding.hpp"
#include "support.hpp"

using namespace skewdens;
using namespace testing;

namespace {

// Partition of the cylinders induced by a map, as sets of rendered words.
std::set<std::set<std::string>> blocks(const Shift& x, const CoboundingMap& alpha) {
  std::map<std::size_t, std::set<std::string>> by;
  for (std::size_t i = 0; i < alpha.cylinders.size(); ++i) {
    by[alpha.assignment[i]].insert(render(x, alpha.cylinders[i]));
  }
  std::set<std::set<std::string>> out;
  for (auto& [c, ws] : by) {
    out.insert(ws);
  }
  return out;
}

}  // namespace

TEST_SUITE("cobounding") {

TEST_CASE("Thue-Morse cobounds with length 7 and trivial modulus") {
  const auto x = thue_morse();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  const auto dec = minimal_decomposition(x, phi);
  REQUIRE(dec.found);
  CHECK(dec.h.order() == 1);
  CHECK(dec.count == 2);
  CHECK(dec.map.length == 7);
  CHECK(dec.map.cylinders.size() == 20);
  CHECK(dec.orbit.size() == 2);
  CHECK(verify_cobounding(*x, phi, dec.map).ok);

  const std::set<std::string> zero{"abbabaa", "baabbaa", "aabbaab", "bbaabab", "baababb",
                                   "aababba", "babbaba", "babbaab", "abbaabb"};
  const std::set<std::string> one{"bbabaab", "babaabb", "babaaba", "abaabba", "abbaaba", "abaabab",
                                  "ababbab", "ababbaa", "bbaabba", "baabbab", "aabbaba"};
  CHECK(blocks(*x, dec.map) == std::set<std::set<std::string>>{zero, one});

  const auto mu = default_measure(x);
  const auto m = coset_masses(dec.map, *mu);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("no shorter map exists for Thue-Morse") {
  const auto x = thue_morse();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  CHECK_FALSE(find_cobounding(*x, phi, Subgroup::trivial(phi.group()), 6));
  CHECK(find_cobounding(*x, phi, Subgroup::trivial(phi.group()), 7));
}

TEST_CASE("unimodular map modulo the subgroup generated by (1 2)") {
  const auto x = unimodular();
  const auto g = s3();
  const auto phi = morphism(*x, g, {"(1 2 3)", "(1 2)", "(1 2 3)"});
  const auto dec = minimal_decomposition(x, phi);
  REQUIRE(dec.found);
  CHECK(dec.h.order() == 2);
  CHECK(dec.count == 3);
  CHECK(dec.map.length == 4);
  REQUIRE(dec.orbit.size() == 3);

  const Element t = g->parse_element("(1 2)");
  const Subgroup h = subgroup_generated(*g, std::vector<Element>{t});
  const CoboundingMap* pick = nullptr;
  for (const auto& m : dec.orbit) {
    CHECK(verify_cobounding(*x, phi, m).ok);
    if (m.h == h) {
      CHECK(pick == nullptr);
      pick = &m;
    }
  }
  REQUIRE(pick != nullptr);
  const RightCosets& rc = pick->cosets;
  const std::map<std::string, std::string> coloring{
      {"abac", "()"},      {"bacb", "(1 3)"}, {"aaba", "(2 3)"}, {"cbac", "()"},
      {"abaa", "()"},      {"acba", "(2 3)"}, {"cbaa", "()"},    {"baab", "(1 3)"},
      {"aacb", "(1 3)"},   {"aabb", "(2 3)"},    {"baac", "(2 3)"}, {"bbaa", "(1 3)"},
      {"abba", "()"}};
  for (const auto& [w, rep] : coloring) {
    CAPTURE(w);
    CHECK(pick->value(x->alphabet().parse(w)) == rc.index_of(g->parse_element(rep)));
  }
  // aabba is a factor, so the value on aabb is forced by the one on abba.
  const auto& a = x->alphabet();
  REQUIRE(x->contains(a.parse("aabba")));
  CHECK(rc.act(*g, pick->value(a.parse("aabb")), phi.image(a.parse("a")[0])) ==
        pick->value(a.parse("abba")));
}

TEST_CASE("periodic base: masses 2/3 and 1/3") {
  const auto x = periodic("abc", "abc");
  const auto g = cyclic(2);
  const auto phi = morphism(*x, g, {"1", "1", "0"});
  const auto dec = minimal_decomposition(x, phi);
  REQUIRE(dec.found);
  CHECK(dec.h.order() == 1);
  CHECK(dec.map.length == 1);
  CHECK(dec.ergodicity == "periodic");
  const auto& m = dec.map;
  const auto& a = x->alphabet();
  CHECK(m.value(a.parse("a")) == m.value(a.parse("c")));
  CHECK(m.value(a.parse("a")) != m.value(a.parse("b")));
  const auto exact = coset_masses_exact(m, *default_measure(x));
  REQUIRE(exact);
  const std::size_t ca = m.value(a.parse("a"));
  CHECK((*exact)[ca] == Rational(2, 3));
  CHECK((*exact)[1 - ca] == Rational(1, 3));
}

TEST_CASE("four-letter example splits into two classes") {
  const auto x = fourletter();
  const auto phi = morphism(*x, cyclic(2), {"0", "0", "1", "1"});
  const auto dec = minimal_decomposition(x, phi);
  REQUIRE(dec.found);
  CHECK(dec.count == 2);
  CHECK(verify_cobounding(*x, phi, dec.map).ok);
}

TEST_CASE("Fibonacci has no nontrivial map") {
  const auto x = fibonacci();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  const auto dec = minimal_decomposition(x, phi);
  REQUIRE(dec.found);
  CHECK(dec.count == 1);
  CHECK(dec.h.order() == 2);
}

TEST_CASE("a corrupted map fails verification") {
  const auto x = thue_morse();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  auto alpha = *find_cobounding(*x, phi, Subgroup::trivial(phi.group()), 7);
  alpha.assignment[3] ^= 1u;
  const auto check = verify_cobounding(*x, phi, alpha);
  CHECK_FALSE(check.ok);
  CHECK_FALSE(check.violations.empty());
}

TEST_CASE("left translates are again cobounding") {
  const auto x = unimodular();
  const auto g = s3();
  const auto phi = morphism(*x, g, {"(1 2 3)", "(1 2)", "(1 2 3)"});
  const auto dec = minimal_decomposition(x, phi);
  REQUIRE(dec.found);
  for (Element by : g->elements()) {
    const auto t = left_translate(*g, dec.map, by);
    CHECK(verify_cobounding(*x, phi, t).ok);
    CHECK(t.h == conjugate(*g, dec.h, by));
  }
  const auto mu = default_measure(x);
  double total = 0.0;
  for (double v : coset_masses(dec.map, *mu)) {
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

}
