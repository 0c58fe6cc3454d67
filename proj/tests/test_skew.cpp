#include <doctest.h>

#include "random_cases.hpp"
#include "skewdens/skew.hpp"
#include "support.hpp"

using namespace skewdens;
using namespace testing;

TEST_SUITE("skew") {

TEST_CASE("golden mean shift is phi-irreducible and strongly irreducible") {
  const auto x = sft("ab", 1, {"bb"});
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  CHECK(phi_irreducible(*x, phi));
  CHECK(skew_transitive(*x, phi));
  const auto si = strongly_irreducible(*x);
  CHECK(si.irreducible);
  CHECK(si.strongly_irreducible);
  const auto fe = fiber_ergodic(*x, phi);
  CHECK(fe.value);
  CHECK(fe.image.size() == 2);
}

TEST_CASE("an irreducible shift that is not strongly irreducible") {
  const auto x = sft("abc", 1, {"ca", "ab", "bb", "cc"});
  const auto si = strongly_irreducible(*x);
  CHECK(si.irreducible);
  CHECK_FALSE(si.strongly_irreducible);
  REQUIRE(si.classes.size() == 2);
  std::set<std::vector<std::string>> classes;
  for (const auto& c : si.classes) {
    classes.insert(render_all(*x, c));
  }
  CHECK(classes == std::set<std::vector<std::string>>{{"a", "c"}, {"b"}});
  const auto phi = morphism(*x, cyclic(2), {"0", "1", "1"});
  CHECK_FALSE(phi_irreducible(*x, phi));
  CHECK_FALSE(skew_transitive(*x, phi));
  const auto witness = si_witness_morphism(*x, {1});
  CHECK_FALSE(phi_irreducible(*x, witness));
}

TEST_CASE("skew letters and lifts") {
  const auto x = fibonacci();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  const SkewShift y(x, phi);
  const Word w = x->alphabet().parse("abaab");
  const Word lifted = y.lift(1, w);
  CHECK(y.project(lifted) == w);
  CHECK(y.alphabet().render(lifted) == "1:a 0:b 0:a 1:a 0:b");
  CHECK(y.contains(lifted));
  CHECK(y.language(3).size() == 2 * x->language(3)->size());
  const auto golden = sft("ab", 1, {"bb"});
  const SkewShift gy(golden, morphism(*golden, cyclic(2), {"1", "0"}));
  CHECK(make_shift(gy.as_shift())->is_irreducible());
}

TEST_CASE("phi-irreducibility matches skew transitivity on random SFTs") {
  std::mt19937 rng(2024);
  const auto groups = small_groups();
  int tested = 0;
  while (tested < 60) {
    const auto sample = random_irreducible_sft(rng);
    const auto g = groups[rng() % groups.size()];
    const auto phi = random_onto(rng, sample.x->alphabet(), g);
    if (!phi) {
      continue;
    }
    ++tested;
    const bool a = phi_irreducible(*sample.x, *phi);
    CHECK(a == skew_transitive(*sample.x, *phi));
    const auto si = strongly_irreducible(*sample.x);
    if (si.strongly_irreducible) {
      CHECK(a);
    } else if (sample.step == 1) {
      std::vector<Letter> cls;
      for (const auto& w : si.classes.front()) {
        cls.push_back(w[0]);
      }
      CHECK_FALSE(phi_irreducible(*sample.x, si_witness_morphism(*sample.x, cls)));
    }
  }
}

TEST_CASE("minimality of skew products") {
  const auto fib = fibonacci();
  const auto m = skew_minimal(fib, morphism(*fib, cyclic(2), {"1", "0"}));
  CHECK(m.minimal);
  CHECK(m.exact);
  const auto tm = thue_morse();
  const auto t = skew_minimal(tm, morphism(*tm, cyclic(2), {"1", "0"}));
  CHECK_FALSE(t.minimal);
  CHECK(t.exact);
  const auto per = periodic("abc", "abc");
  const auto p = skew_minimal(per, morphism(*per, cyclic(2), {"1", "1", "0"}));
  CHECK_FALSE(p.minimal);
  CHECK(p.exact);
  const auto gen = periodic("abcd", "abcd");
  CHECK(skew_minimal(gen, morphism(*gen, cyclic(4), {"0", "1", "1", "1"})).minimal);
}

TEST_CASE("return-image evidence on short Thue-Morse prefixes") {
  const auto tm = thue_morse();
  const auto phi = morphism(*tm, cyclic(2), {"1", "0"});
  const auto ev = prefix_evidence(*tm, phi, 8);
  REQUIRE(ev.size() == 8);
  CHECK(ev[0].generated.order() == 2);
  CHECK(ev[1].generated.order() == 2);
  CHECK(ev[7].certified);
  CHECK(ev[7].generated.order() == 1);
}

TEST_CASE("cocycle values at returns to a long prefix") {
  const auto tm = thue_morse();
  const auto phi = morphism(*tm, cyclic(2), {"1", "0"});
  const auto w = welldoc_witness(*tm, phi, 8, 4000);
  CHECK(w.occurrences >= 2);
  CHECK(w.values == std::vector<Element>{0});
  const auto fib = fibonacci();
  const auto f = welldoc_witness(*fib, morphism(*fib, cyclic(2), {"1", "0"}), 8, 4000);
  CHECK(f.values.size() == 2);
}

}
