// One PASS/FAIL line per acceptance criterion. Criteria listed with
// --expect-fail are known not to hold; the exit code is nonzero when any other
// criterion fails or when an expected failure passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "random_cases.hpp"
#include "reference_values.hpp"
#include "skewdens/bifix.hpp"
#include "skewdens/cobounding.hpp"
#include "skewdens/density.hpp"
#include "skewdens/skew.hpp"
#include "skewdens/subst_tools.hpp"
#include "support.hpp"

using namespace skewdens;
using namespace testing;

namespace {

// Collects failed checks with a short description each.
class Checks {
public:
  void operator()(bool ok, const std::string& what) {
    if (!ok) {
      failed_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_.empty(); }
  std::string detail() const {
    std::string out;
    for (const auto& f : failed_) {
      out += (out.empty() ? "" : "; ") + f;
    }
    for (const auto& n : notes_) {
      out += (out.empty() ? "" : "; ") + n;
    }
    return out;
  }

private:
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::string show(const std::optional<Rational>& r) {
  return r ? to_string(*r) : std::string("none");
}

std::set<std::string> rendered(const Shift& x, const std::vector<Word>& ws) {
  auto v = render_all(x, ws);
  return {v.begin(), v.end()};
}

void periodic_example(Checks& check) {
  const auto x = periodic("abc", "abc");
  const auto phi = morphism(*x, cyclic(2), {"1", "1", "0"});
  for (auto [k, want] : {std::pair<Element, Rational>{0, Rational(5, 9)}, {1, Rational(4, 9)}}) {
    const auto q = make_query(x, nullptr, phi, {k});
    const auto e = exact_density(q);
    const auto c = cesaro_density(q, 300);
    const std::string tag = "K={" + std::to_string(k) + "}";
    check(e.route == "cobounding-formula", tag + " route " + e.route);
    check(e.exact && *e.exact == want, tag + " formula " + show(e.exact));
    check(c.exact && *c.exact == want, tag + " cesaro " + show(c.exact));
    check.note(tag + " formula " + show(e.exact) + " cesaro " + show(c.exact));
  }
}

void periodic_family(Checks& check) {
  for (std::size_t n = 3; n <= 6; ++n) {
    std::string letters;
    std::vector<std::string> labels(n, "1");
    labels[0] = "0";
    for (std::size_t i = 0; i < n; ++i) {
      letters += static_cast<char>('a' + i);
    }
    const auto x = periodic(letters, letters);
    const auto q = make_query(x, nullptr, morphism(*x, cyclic(n), labels), {0});
    const auto e = exact_density(q);
    const Rational want(static_cast<long>(2 * n - 1), static_cast<long>(n * n));
    check(e.exact && *e.exact == want,
          "n=" + std::to_string(n) + " got " + show(e.exact) + " expected " + to_string(want));
  }
}

void fibonacci_example(Checks& check) {
  const auto x = fibonacci();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  const auto m = skew_minimal(x, phi);
  check(m.minimal && m.exact, "skew_minimal not certified");
  const auto q = make_query(x, nullptr, phi, {0});
  const auto e = exact_density(q);
  check(e.exact && *e.exact == Rational(1, 2), "exact " + show(e.exact));
  const auto c = cesaro_density(q, 5000);
  check(std::abs(c.value - 0.5) <= 0.02, "cesaro " + fmt(c.value));
  const auto p = fibonacci_probe(4);
  const double f12 = p.rows[2].at_f4n;
  const double f10 = p.rows[1].at_f4n2;
  check(f12 >= 0.9, "mu(L^F(12)) = " + fmt(f12, 4) + " < 0.9");
  check(f10 <= 0.15, "mu(L^F(10)) = " + fmt(f10, 4) + " > 0.15");
  check(p.increasing && p.decreasing, "F(4n)/F(4n+2) columns not monotone");
  check.note(std::string("F(m) limits split by m mod 3: ") + (p.residue_split ? "yes" : "no"));
  check.note("cesaro " + fmt(c.value));
}

void thue_morse_example(Checks& check) {
  const auto x = thue_morse();
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  const auto dec = minimal_decomposition(x, phi);
  check(dec.found && dec.h.order() == 1, "modulus not trivial");
  check(dec.count == 2, "count " + std::to_string(dec.count));
  check(dec.map.length == 7, "length " + std::to_string(dec.map.length));
  const std::set<std::string> zero{"abbabaa", "baabbaa", "aabbaab", "bbaabab", "baababb",
                                   "aababba", "babbaba", "babbaab", "abbaabb"};
  const std::set<std::string> one{"bbabaab", "babaabb", "babaaba", "abaabba", "abbaaba", "abaabab",
                                  "ababbab", "ababbaa", "bbaabba", "baabbab", "aabbaba"};
  bool some_shift = false;
  for (const auto& m : dec.orbit) {
    bool all = m.cylinders.size() == zero.size() + one.size();
    for (std::size_t i = 0; i < m.cylinders.size() && all; ++i) {
      const auto w = render(*x, m.cylinders[i]);
      all = (m.assignment[i] == 0 && zero.count(w)) || (m.assignment[i] == 1 && one.count(w));
    }
    some_shift = some_shift || all;
  }
  check(some_shift, "no G-shift of the map matches the coloring");
  const auto masses = coset_masses(dec.map, *default_measure(x));
  check(masses.size() == 2 && std::abs(masses[0] - 0.5) < 1e-9 && std::abs(masses[1] - 0.5) < 1e-9,
        "coset masses");
  for (Element k = 0; k < 2; ++k) {
    const auto e = exact_density(make_query(x, nullptr, phi, {k}));
    check(e.route == "cobounding-formula" && e.value && std::abs(*e.value - 0.5) < 1e-12,
          "formula density " + (e.value ? fmt(*e.value, 12) : std::string("none")) + " via " +
              e.route);
  }
  check(!skew_minimal(x, phi).minimal, "skew product reported minimal");
  const auto code = bifix_code(*x, phi, Subgroup::trivial(phi.group()));
  check(rendered(*x, code.words) == std::set<std::string>{"b", "aa", "aba", "abba"}, "bifix U");
  check(x_degree(*x, code).degree == 2, "X-degree");
}

void unimodular_example(Checks& check) {
  const auto x = unimodular();
  const auto g = s3();
  const auto phi = morphism(*x, g, {"(1 2 3)", "(1 2)", "(1 2 3)"});
  const auto dec = minimal_decomposition(x, phi);
  check(dec.found && dec.count == 3, "minimal subsets " + std::to_string(dec.count));
  const Element t = g->parse_element("(1 2)");
  const Subgroup h = subgroup_generated(*g, std::vector<Element>{t});
  check(dec.h.order() == 2 && are_conjugate(*g, dec.h, h), "modulus not of order 2");
  check(dec.map.length == 4, "length " + std::to_string(dec.map.length));
  const std::vector<std::pair<const char*, const char*>> coloring{
      {"abac", "()"},    {"bacb", "(1 3)"}, {"aaba", "(2 3)"}, {"cbac", "()"},    {"abaa", "()"},
      {"acba", "(2 3)"}, {"cbaa", "()"},    {"baab", "(1 3)"}, {"aacb", "(1 3)"}, {"baac", "(2 3)"},
      {"bbaa", "(1 3)"}, {"abba", "()"}};
  const auto& a = x->alphabet();
  bool matched = false;
  for (const auto& m : dec.orbit) {
    if (!(m.h == h)) {
      continue;
    }
    bool all = true;
    for (const auto& [w, rep] : coloring) {
      all = all && m.value(a.parse(w)) == m.cosets.index_of(g->parse_element(rep));
    }
    // The drawn value on aabb contradicts abba through the factor aabba; the
    // forced value is checked instead.
    all = all && x->contains(a.parse("aabba")) &&
          m.cosets.act(*g, m.value(a.parse("aabb")), phi.image(0)) == m.value(a.parse("abba"));
    matched = matched || all;
  }
  check(matched, "cobounding map does not match the coloring");
  double total = 0.0;
  double worst = 0.0;
  for (Element k = 0; k < g->order(); ++k) {
    const auto q = make_query(x, nullptr, phi, {k});
    const auto e = exact_density(q);
    check(e.route == "conditional-cobounding-formula", "route " + e.route);
    if (!e.value) {
      check(false, "no formula value");
      continue;
    }
    total += *e.value;
    worst = std::max(worst, std::abs(cesaro_density(q, 3000).value - *e.value));
  }
  check(std::abs(total - 1.0) < 1e-9, "singleton sum " + fmt(total, 12));
  check(worst <= 0.02, "cesaro gap " + fmt(worst));
  check.note("max cesaro gap " + fmt(worst, 3));
}

void golden_mean_example(Checks& check) {
  const auto x = sft("ab", 1, {"bb"});
  const auto phi = morphism(*x, cyclic(2), {"1", "0"});
  check(phi_irreducible(*x, phi), "not phi-irreducible");
  check(strongly_irreducible(*x).strongly_irreducible, "not strongly irreducible");
  double worst = 0.0;
  for (Element k = 0; k < 2; ++k) {
    const auto q = make_query(x, nullptr, phi, {k});
    const auto e = exact_density(q);
    check(e.exact && *e.exact == Rational(1, 2), "exact " + show(e.exact));
    worst = std::max(worst, std::abs(cesaro_density(q, 2000).value - 0.5));
  }
  check(worst <= 1e-3, "cesaro gap " + fmt(worst));
  check.note("max cesaro gap " + fmt(worst, 3));
}

void consistency(Checks& check, const CylinderMeasure& mu, const std::string& name) {
  const Shift& x = mu.shift();
  double worst = 0.0;
  for (std::size_t n = 0; n < 8; ++n) {
    for (const auto& w : *x.language(n)) {
      double left = 0.0;
      double right = 0.0;
      for (Letter c = 0; c < x.alphabet().size(); ++c) {
        left += mu.value(single(c) + w);
        right += mu.value(w + single(c));
      }
      const double v = n == 0 ? 1.0 : mu.value(w);
      worst = std::max({worst, std::abs(left - v), std::abs(right - v)});
    }
  }
  check(worst <= 1e-10, name + " consistency error " + fmt(worst));
}

void measure_fidelity(Checks& check) {
  const auto tm = thue_morse();
  const auto mt = substitution_measure(tm);
  for (const auto& e : kThueMorseMeasure) {
    const double v = mt->value(tm->alphabet().parse(e.word));
    check(std::abs(v - static_cast<double>(e.num) / static_cast<double>(e.den)) <= 1e-9,
          std::string("thue-morse ") + e.word);
  }
  const auto fib = fibonacci();
  const auto mf = substitution_measure(fib);
  const double lambda = (1 + std::sqrt(5.0)) / 2;
  for (const auto& e : kFibonacciMeasure) {
    const double v = mf->value(fib->alphabet().parse(e.word));
    check(std::abs(v - std::pow(lambda, -e.exponent)) <= 1e-9, std::string("fibonacci ") + e.word);
  }
  consistency(check, *mt, "thue-morse");
  consistency(check, *mf, "fibonacci");
  check.note(std::to_string(kThueMorseMeasure.size() + kFibonacciMeasure.size()) +
             " tabulated values");
}

void equivalence_suite(Checks& check) {
  std::mt19937 rng(20240611);
  const auto groups = small_groups();
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::size_t si_violations = 0;
  std::size_t witnesses = 0;
  std::size_t witness_failures = 0;
  std::size_t r2_non_si = 0;
  std::size_t r2_non_si_irreducible = 0;
  for (int s = 0; s < 150; ++s) {
    const auto sample = random_irreducible_sft(rng);
    const auto si = strongly_irreducible(*sample.x);
    bool any_irreducible = false;
    for (const auto& g : groups) {
      const auto phi = random_onto(rng, sample.x->alphabet(), g);
      if (!phi) {
        continue;
      }
      ++cases;
      const bool a = phi_irreducible(*sample.x, *phi);
      mismatches += a != skew_transitive(*sample.x, *phi);
      si_violations += si.strongly_irreducible && !a;
      any_irreducible = any_irreducible || a;
    }
    if (!si.strongly_irreducible && sample.step == 1) {
      ++witnesses;
      std::vector<Letter> cls;
      for (const auto& w : si.classes.front()) {
        cls.push_back(w[0]);
      }
      witness_failures += phi_irreducible(*sample.x, si_witness_morphism(*sample.x, cls));
    }
    if (!si.strongly_irreducible && sample.step == 2) {
      ++r2_non_si;
      r2_non_si_irreducible += any_irreducible;
    }
  }
  check(cases >= 100, "only " + std::to_string(cases) + " cases");
  check(mismatches == 0, std::to_string(mismatches) + " transitivity mismatches");
  check(si_violations == 0, std::to_string(si_violations) + " SI cases not phi-irreducible");
  check(witness_failures == 0, std::to_string(witness_failures) + " witness failures");
  check.note(std::to_string(cases) + " cases, " + std::to_string(witnesses) + " r=1 witnesses");
  check.note("r=2 non-SI shifts " + std::to_string(r2_non_si) + ", phi-irreducible for some tested morphism " +
             std::to_string(r2_non_si_irreducible));
}

void bifix_suite(Checks& check) {
  const auto fib = fibonacci();
  {
    const auto g = s3();
    const auto phi = morphism(*fib, g, {"(1 2)", "(1 3)"});
    std::vector<Element> stab;
    for (Element e : g->elements()) {
      if (g->permutation(e)[0] == 0) {
        stab.push_back(e);
      }
    }
    const auto code = bifix_code(*fib, phi, Subgroup(*g, stab));
    check(rendered(*fib, code.words) == std::set<std::string>{"aa", "aba", "baab", "bab"},
          "fibonacci/S3 U");
  }
  {
    const auto phi = morphism(*fib, cyclic(2), {"1", "0"});
    const auto code = bifix_code(*fib, phi, Subgroup::trivial(phi.group()));
    check(rendered(*fib, code.words) == std::set<std::string>{"aa", "aba", "b"}, "fibonacci/Z2 U");
    check(x_degree(*fib, code).degree == 2, "fibonacci/Z2 X-degree");
    const auto avg = average_length(code, *default_measure(fib));
    check(std::abs(avg.by_words - 2.0) < 1e-9 && std::abs(avg.by_prefixes - 2.0) < 1e-9,
          "fibonacci/Z2 average length " + fmt(avg.by_words));
    const auto rep = degree_surjectivity_check(fib, phi, *default_measure(fib));
    check(rep.checked && rep.degree_ok && rep.length_ok, "degree/length check: " + rep.reason);
  }
  {
    const auto tm = thue_morse();
    const auto phi = morphism(*tm, cyclic(4), {"1", "3"});
    const auto code = bifix_code(*tm, phi, Subgroup::trivial(phi.group()));
    check(rendered(*tm, code.words) ==
              std::set<std::string>{"ab", "ba", "aabb", "bbaa", "aababb", "bbabaa"},
          "thue-morse/Z4 U");
    check(x_degree(*tm, code).degree == 3, "thue-morse/Z4 X-degree");
  }
}

void free_group_suite(Checks& check) {
  const auto fib = fibonacci();
  const auto rb = return_basis_check(*fib, fib->alphabet().parse("a"));
  check(rb.certified && rb.rank == 2 && rb.basis, "fibonacci return words rank");
  const auto four = fourletter();
  const auto r4 = return_basis_check(*four, four->alphabet().parse("a"));
  bool dc = false;
  for (const auto& b : r4.folded_basis) {
    dc = dc || render_free(four->alphabet(), b) == "dc";
  }
  check(r4.rank == 3 && dc, "four-letter return subgroup");
  const auto inv_fib = invertibility_order(fib->spec().substitution().images,
                                           morphism(*fib, cyclic(2), {"1", "0"}));
  check(inv_fib.order && *inv_fib.order == 3, "fibonacci order");
  const auto inv_four = invertibility_order(four->spec().substitution().images,
                                            morphism(*four, cyclic(2), {"0", "0", "1", "1"}));
  check(inv_four.order && *inv_four.order == 1, "four-letter order");
  const auto uni = unimodular();
  const auto inv_uni = invertibility_order(uni->spec().substitution().images,
                                           morphism(*uni, s3(), {"(1 2 3)", "(1 2)", "(1 2 3)"}));
  check(!inv_uni.order, "unimodular order found");
  check.note("unimodular: none up to " + std::to_string(inv_uni.cap) +
             (inv_uni.definitive ? " (orbit closed)" : ""));
}

void contfrac_demo(Checks& check) {
  const auto d = continued_fraction_demo(2, 10000);
  check(d.zero.exact && *d.zero.exact == Rational(1, 3), "exact zero " + show(d.zero.exact));
  check(d.one.exact && *d.one.exact == Rational(2, 3), "exact one " + show(d.one.exact));
  check(std::abs(d.empirical_zero - 1.0 / 3.0) <= 0.02, "empirical zero " + fmt(d.empirical_zero));
  check(std::abs(d.empirical_one - 2.0 / 3.0) <= 0.02, "empirical one " + fmt(d.empirical_one));
  check.note("empirical " + fmt(d.empirical_zero, 4) + " / " + fmt(d.empirical_one, 4));
}

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds
  std::function<void(Checks&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option("--expect-fail", expect_fail, "criteria known not to hold")->delimiter(',');
  app.add_option("--only", only, "run a subset")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "periodic example 5/9 and 4/9", 1, periodic_example},
      {2, "generalized periodic family (2n-1)/n^2", 1, periodic_family},
      {3, "Fibonacci/Z2 minimality, density, probe", 30, fibonacci_example},
      {4, "Thue-Morse/Z2 cobounding and bifix", 10, thue_morse_example},
      {5, "unimodular S3 decomposition and densities", 30, unimodular_example},
      {6, "golden mean SFT with Parry measure", 5, golden_mean_example},
      {7, "measure fidelity", 10, measure_fidelity},
      {8, "irreducibility equivalence on random SFTs", 60, equivalence_suite},
      {9, "bifix suite", 10, bifix_suite},
      {10, "free group suite", 10, free_group_suite},
      {11, "continued fraction demo", 5, contfrac_demo},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
      continue;
    }
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(checks);
    } catch (const std::exception& e) {
      checks(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    checks(secs <= c.budget, "runtime " + fmt(secs, 3) + " s over " + fmt(c.budget) + " s");
    const bool pass = checks.ok();
    const bool expected = std::find(expect_fail.begin(), expect_fail.end(), c.id) != expect_fail.end();
    std::printf("%s %2d %s (%.3f s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                checks.detail().empty() ? "" : ": ", checks.detail().c_str());
    if (pass == expected) {
      ++unexpected;
      if (expected) {
        std::printf("     criterion %d was expected to fail\n", c.id);
      }
    }
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
