#include <doctest.h>

#include <random>

#include "skewdens/error.hpp"
#include "skewdens/shifts.hpp"
#include "support.hpp"

using namespace skewdens;
using namespace testing;

namespace {

// All words of length n over k letters avoiding `forbidden` that extend by
// `margin` letters on both sides.
std::set<std::string> sft_oracle(const std::string& letters, const std::vector<std::string>& forbidden,
                                 std::size_t n, std::size_t margin) {
  auto ok = [&](const std::string& w) {
    for (const auto& f : forbidden) {
      if (w.find(f) != std::string::npos) {
        return false;
      }
    }
    return true;
  };
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len < n + 2 * margin; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : letters) {
        std::string v = w + c;
        if (ok(v)) {
          next.push_back(v);
        }
      }
    }
    layer = std::move(next);
  }
  std::set<std::string> out;
  for (const auto& w : layer) {
    out.insert(w.substr(margin, n));
  }
  return out;
}

}  // namespace

TEST_SUITE("shifts") {

TEST_CASE("Fibonacci language of length 3") {
  const auto x = fibonacci();
  CHECK(render_all(*x, *x->language(3)) == std::vector<std::string>{"aab", "aba", "baa", "bab"});
  CHECK(x->contains(x->alphabet().parse("abaab")));
  CHECK_FALSE(x->contains(x->alphabet().parse("bb")));
}

TEST_CASE("substitution languages agree with factors of the fixed point") {
  struct Case {
    std::shared_ptr<const Shift> x;
    std::map<char, std::string> rules;
    char seed;
  };
  const std::vector<Case> cases{
      {fibonacci(), {{'a', "ab"}, {'b', "a"}}, 'a'},
      {thue_morse(), {{'a', "ab"}, {'b', "ba"}}, 'a'},
      {unimodular(), {{'a', "aab"}, {'b', "acb"}, {'c', "ba"}}, 'a'},
      {fourletter(), {{'a', "baa"}, {'b', "adc"}, {'c', "cdc"}, {'d', "ad"}}, 'c'},
  };
  for (const auto& c : cases) {
    const std::string text = iterate_text(c.rules, c.seed, 200000);
    for (std::size_t n = 1; n <= 14; ++n) {
      const auto lib = render_all(*c.x, *c.x->language(n));
      const auto oracle = factors(text, n);
      CHECK(std::set<std::string>(lib.begin(), lib.end()) == oracle);
    }
  }
}

TEST_CASE("Thue-Morse complexity") {
  const auto x = thue_morse();
  const std::vector<std::size_t> expected{1, 2, 4, 6, 10, 12, 16, 20, 22};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    CHECK(x->language(n)->size() == expected[n]);
  }
}

TEST_CASE("SFT languages agree with brute force") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"ab", {"bb"}}, {"abc", {"ca", "ab", "bb", "cc"}}, {"abc", {"aa", "bc", "cb"}}};
  for (const auto& [letters, forbidden] : cases) {
    const auto x = sft(letters, 1, forbidden);
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto lib = render_all(*x, *x->language(n));
      CHECK(std::set<std::string>(lib.begin(), lib.end()) == sft_oracle(letters, forbidden, n, 6));
    }
  }
  const auto two = sft("ab", 2, {"aaa", "bab"});
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto lib = render_all(*two, *two->language(n));
    CHECK(std::set<std::string>(lib.begin(), lib.end()) == sft_oracle("ab", {"aaa", "bab"}, n, 8));
  }
}

TEST_CASE("periodic shifts") {
  const auto x = periodic("abc", "bca");
  CHECK(render(*x, x->spec().periodic().word) == "abc");
  CHECK(render_all(*x, *x->language(2)) == std::vector<std::string>{"ab", "bc", "ca"});
  CHECK(x->language(7)->size() == 3);
}

TEST_CASE("non-primitive substitutions are rejected") {
  const Alphabet ab = Alphabet::from_letters("ab");
  CHECK_THROWS_AS(ShiftSpec::make_substitution(ab, {ab.parse("aa"), ab.parse("bb")}), Error);
}

TEST_CASE("return words") {
  const auto fib = fibonacci();
  const auto r = return_words(*fib, fib->alphabet().parse("a"));
  CHECK(r.complete);
  CHECK(render_all(*fib, r.returns) == std::vector<std::string>{"a", "ab"});
  const auto rb = return_words(*fib, fib->alphabet().parse("aba"));
  CHECK(rb.complete);
  CHECK(rb.returns.size() == 2);
  const auto tm = thue_morse();
  const auto rt = return_words(*tm, tm->alphabet().parse("a"));
  CHECK(render_all(*tm, rt.returns) == std::vector<std::string>{"a", "ab", "abb"});
  // each return word r satisfies: ru in L, u prefix of r u, two occurrences
  const Word u = fib->alphabet().parse("ab");
  for (const auto& w : return_words(*fib, u).returns) {
    const Word ru = w + u;
    CHECK(fib->contains(ru));
    CHECK(count_occurrences(ru, u) == 2);
    CHECK(has_prefix(ru, u));
  }
}

TEST_CASE("extension graphs and dendricity") {
  const auto fib = fibonacci();
  const auto d = dendric_up_to(*fib, 8);
  CHECK(d.dendric);
  const auto tm = thue_morse();
  const auto t = dendric_up_to(*tm, 6);
  CHECK_FALSE(t.dendric);
  REQUIRE(t.witness);
  CHECK(t.witness->empty());
  CHECK_FALSE(extension_graph(*tm, tm->alphabet().parse("aba")).is_connected());
  CHECK(extension_graph(*fib, fib->alphabet().parse("aba")).is_tree());
}

TEST_CASE("block graph of the golden mean shift") {
  const auto x = sft("ab", 1, {"bb"});
  CHECK(x->is_irreducible());
  const auto& g = x->block_graph();
  CHECK(g.blocks.size() == 2);
  CHECK(g.irreducible);
  const auto red = sft("ab", 1, {"ab"});
  CHECK_FALSE(red->is_irreducible());
}

TEST_CASE("higher block recoding round trip") {
  std::mt19937 rng(3);
  const auto x = sft("abc", 1, {"ca", "ab", "bb", "cc"});
  for (std::size_t r = 1; r <= 4; ++r) {
    const HigherBlock hb = higher_block(*x, r);
    const auto words = x->language(9);
    for (int i = 0; i < 20; ++i) {
      const Word& w = (*words)[rng() % words->size()];
      const Word b = hb.block(w);
      CHECK(b.size() == w.size() - r + 1);
      CHECK(hb.unblock(b) == w);
    }
    CHECK(make_shift(hb.shift)->language(5)->size() == x->language(r + 4)->size());
  }
}

TEST_CASE("fixed point prefixes are in the language") {
  for (const auto& x : {fibonacci(), thue_morse(), unimodular(), fourletter()}) {
    const Word w = x->fixed_point_prefix(300);
    CHECK(w.size() == 300);
    for (std::size_t i = 0; i + 12 <= w.size(); i += 17) {
      CHECK(x->contains(w.substr(i, 12)));
    }
  }
}

}
