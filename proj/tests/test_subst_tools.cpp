#include <doctest.h>

#include <random>
#include <set>

#include "skewdens/subst_tools.hpp"
#include "support.hpp"

using namespace skewdens;
using namespace testing;

namespace {

std::string render_images(const SkewSubstitution& s, Letter c) {
  std::string out;
  for (auto t : s.images[c]) {
    out += (out.empty() ? "" : " ") + s.alphabet.label(t);
  }
  return out;
}

// Applies the image list of a free group endomorphism to a free word.
FreeWord substitute(const std::vector<FreeWord>& images, const FreeWord& w) {
  FreeWord out;
  for (int l : w) {
    const auto& img = images[static_cast<std::size_t>(std::abs(l) - 1)];
    out = free_concat(out, l > 0 ? img : free_inverse(img));
  }
  return out;
}

}  // namespace

TEST_SUITE("subst_tools") {

TEST_CASE("invertibility orders") {
  {
    const auto x = fibonacci();
    const auto phi = morphism(*x, cyclic(2), {"1", "0"});
    const auto inv = invertibility_order(x->spec().substitution().images, phi);
    REQUIRE(inv.order);
    CHECK(*inv.order == 3);
  }
  {
    const auto x = fourletter();
    const auto phi = morphism(*x, cyclic(2), {"0", "0", "1", "1"});
    const auto inv = invertibility_order(x->spec().substitution().images, phi);
    REQUIRE(inv.order);
    CHECK(*inv.order == 1);
  }
  {
    const auto x = unimodular();
    const auto phi = morphism(*x, s3(), {"(1 2 3)", "(1 2)", "(1 2 3)"});
    const auto inv = invertibility_order(x->spec().substitution().images, phi);
    CHECK_FALSE(inv.order);
    CHECK(inv.definitive);
  }
  {
    const auto x = thue_morse();
    const auto phi = morphism(*x, cyclic(2), {"1", "0"});
    const auto inv = invertibility_order(x->spec().substitution().images, phi);
    CHECK_FALSE(inv.order);
    CHECK(inv.definitive);
  }
}

TEST_CASE("Fibonacci skew substitution") {
  const auto x = fibonacci();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  const auto s = skew_substitution(*x, phi);
  CHECK(s.power == 3);
  const auto c = [&](const char* l) { return *s.alphabet.find(l); };
  CHECK(render_images(s, c("0:a")) == "0:a 1:b 1:a 0:a 1:b");
  CHECK(render_images(s, c("0:b")) == "0:a 1:b 1:a");
  CHECK(render_images(s, c("1:a")) == "1:a 0:b 0:a 1:a 0:b");
  CHECK(render_images(s, c("1:b")) == "1:a 0:b 0:a");
  CHECK(s.components.size() == 1);
  CHECK(s.primitive == std::vector<bool>{true});
}

TEST_CASE("skew substitution images follow the cocycle recurrence") {
  const auto x = fourletter();
  const auto g = cyclic(2);
  const auto phi = morphism(*x, g, {"0", "0", "1", "1"});
  const auto s = skew_substitution(*x, phi);
  const std::size_t k = x->alphabet().size();
  const auto& sigma = x->spec().substitution().images;
  // σ^power by plain iteration.
  std::vector<Word> power(sigma.size());
  for (Letter a = 0; a < k; ++a) {
    Word w(1, a);
    for (std::size_t p = 0; p < s.power; ++p) {
      Word next;
      for (auto b : w) {
        next += sigma[b];
      }
      w = next;
    }
    power[a] = w;
  }
  for (Element h : g->elements()) {
    for (Letter a = 0; a < k; ++a) {
      Word expected;
      Element cur = h;
      for (auto b : power[a]) {
        expected.push_back(static_cast<Letter>(cur * k + b));
        cur = g->mul(cur, phi.image(b));
      }
      CHECK(s.images[h * k + a] == expected);
    }
  }
  std::size_t letters = 0;
  for (const auto& comp : s.components) {
    letters += comp.size();
  }
  CHECK(letters == g->order() * k);
}

TEST_CASE("skew substitution needs invertibility") {
  const auto x = unimodular();
  const auto phi = morphism(*x, s3(), {"(1 2 3)", "(1 2)", "(1 2 3)"});
  CHECK_THROWS(skew_substitution(*x, phi));
}

TEST_CASE("free group reduction") {
  CHECK(free_reduce({1, -1, 2}) == FreeWord{2});
  CHECK(free_reduce({1, 2, -2, -1}).empty());
  CHECK(free_concat({1, 2}, {-2, 3}) == FreeWord{1, 3});
  CHECK(free_inverse({1, -2}) == FreeWord{2, -1});
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    FreeWord w;
    for (std::size_t i = rng() % 8; i > 0; --i) {
      int l = static_cast<int>(rng() % 3) + 1;
      w.push_back(rng() % 2 ? l : -l);
    }
    CHECK(free_concat(w, free_inverse(w)).empty());
    CHECK(free_reduce(free_reduce(w)) == free_reduce(w));
  }
}

TEST_CASE("Stallings folding") {
  const auto x = fibonacci();
  const auto rb = return_basis_check(*x, x->alphabet().parse("a"));
  CHECK(rb.certified);
  CHECK(rb.rank == 2);
  CHECK(rb.basis);

  const Alphabet c = fourletter()->alphabet();
  std::vector<FreeWord> w;
  for (const char* s : {"a", "ba", "dcba", "dcdca", "dcdcba"}) {
    w.push_back(free_word(c.parse(s)));
  }
  const auto graph = stallings_subgroup(w);
  CHECK(graph.rank() == 3);
  std::set<std::string> basis;
  for (const auto& b : graph.basis()) {
    basis.insert(render_free(c, b));
  }
  CHECK(basis == std::set<std::string>{"a", "b", "dc"});
  for (const auto& g : w) {
    CHECK(graph.contains(g));
  }
  CHECK_FALSE(graph.contains(free_word(c.parse("c"))));
  CHECK_FALSE(graph.is_bouquet(4));
}

TEST_CASE("four-letter return words") {
  const auto x = fourletter();
  const auto rb = return_basis_check(*x, x->alphabet().parse("a"));
  CHECK(rb.certified);
  CHECK(rb.returns.size() == 5);
  CHECK(rb.rank == 3);
  CHECK_FALSE(rb.basis);
  std::set<std::string> basis;
  for (const auto& b : rb.folded_basis) {
    basis.insert(render_free(x->alphabet(), b));
  }
  CHECK(basis.count("dc") == 1);
}

TEST_CASE("free group invertibility") {
  for (const auto& x : {fourletter(), fibonacci()}) {
    const auto& images = x->spec().substitution().images;
    const auto r = free_group_invertible(images);
    CHECK(r.value == Tristate::yes);
    if (!r.inverse.empty()) {
      std::vector<FreeWord> fw;
      for (const auto& w : images) {
        fw.push_back(free_word(w));
      }
      for (std::size_t a = 0; a < images.size(); ++a) {
        const FreeWord letter{static_cast<int>(a) + 1};
        CHECK(substitute(r.inverse, fw[a]) == letter);
        CHECK(substitute(fw, r.inverse[a]) == letter);
      }
    }
  }
  const auto tm = free_group_invertible(thue_morse()->spec().substitution().images);
  CHECK(tm.value == Tristate::no);
  CHECK(tm.abelian_determinant == 0);
  const auto four = free_group_invertible(fourletter()->spec().substitution().images);
  CHECK_FALSE(four.inverse.empty());
}

}
