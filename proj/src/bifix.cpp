#include "skewdens/bifix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "skewdens/error.hpp"
#include "skewdens/skew.hpp"

namespace skewdens {

std::size_t BifixCode::max_length() const {
  std::size_t m = 0;
  for (const auto& u : words) {
    m = std::max(m, u.size());
  }
  return m;
}

BifixCode bifix_code(const Shift& x, const GroupMorphism& phi, const Subgroup& h,
                     std::size_t cap) {
  if (x.kind() == ShiftKind::sft) {
    semantic_error("bifix_code needs a minimal shift (substitution or periodic)");
  }
  if (!(x.alphabet() == phi.alphabet())) {
    semantic_error("morphism alphabet differs from the shift alphabet");
  }
  const FiniteGroup& g = phi.group();
  BifixCode code;
  code.phi = phi;
  code.h = h;
  code.degree_bound = h.index_in(g);

  // Words of L(X) with no nonempty prefix in φ^-1(H), with their images.
  std::vector<std::pair<Word, Element>> frontier{{Word{}, g.identity()}};
  std::size_t n = 0;
  while (!frontier.empty()) {
    if (n == cap) {
      semantic_error("bifix code not complete by length " + std::to_string(cap) +
                     " (is the skew product over a minimal shift?)");
    }
    ++n;
    std::vector<std::pair<Word, Element>> next;
    for (const auto& [w, e] : frontier) {
      code.prefixes.push_back(w);
      for (Letter a = 0; a < x.alphabet().size(); ++a) {
        Word wa = w;
        wa.push_back(a);
        if (!x.contains(wa)) {
          continue;
        }
        const Element f = g.mul(e, phi.image(a));
        if (h.contains(f)) {
          code.words.push_back(std::move(wa));
        } else {
          next.emplace_back(std::move(wa), f);
        }
      }
    }
    frontier = std::move(next);
  }
  code.complete_length = n;
  std::sort(code.words.begin(), code.words.end());
  std::sort(code.prefixes.begin(), code.prefixes.end());

  code.prefix_code = true;
  code.suffix_code = true;
  for (const auto& u : code.words) {
    for (const auto& v : code.words) {
      if (u.size() < v.size()) {
        code.prefix_code = code.prefix_code && !has_prefix(v, u);
        code.suffix_code = code.suffix_code && !has_suffix(v, u);
      }
    }
  }
  code.suffix_complete = true;
  for (const auto& w : *x.language(n)) {
    const bool hit = std::any_of(code.words.begin(), code.words.end(),
                                 [&](const Word& u) { return has_suffix(w, u); });
    code.suffix_complete = code.suffix_complete && hit;
  }
  return code;
}

ParseData z_degree(const GroupMorphism& phi, const Subgroup& h, const Word& u) {
  const FiniteGroup& g = phi.group();
  ParseData out;
  out.word = u;
  for (std::size_t start = 0; start <= u.size(); ++start) {
    Element e = g.identity();
    bool clean = true;
    for (std::size_t i = start; i < u.size() && clean; ++i) {
      e = g.mul(e, phi.image(u[i]));
      clean = !h.contains(e);
    }
    out.suffixes_in_p += clean ? 1 : 0;
  }
  out.degree = out.suffixes_in_p;
  return out;
}

XDegree x_degree(const Shift& x, const BifixCode& code) {
  XDegree best{0, 0, Word{}};
  std::size_t previous = 0;
  const std::size_t settle = code.max_length() + 2;
  for (std::size_t n = 1; n <= kBifixLengthCap; ++n) {
    std::size_t m = 0;
    Word witness;
    for (const auto& w : *x.language(n)) {
      const std::size_t d = z_degree(code.phi, code.h, w).degree;
      if (d > m) {
        m = d;
        witness = w;
      }
    }
    if (m > best.degree) {
      best = {m, n, witness};
    }
    if (m == code.degree_bound || (n >= settle && m == previous)) {
      return best;
    }
    previous = m;
  }
  return best;
}

AverageLength average_length(const BifixCode& code, const CylinderMeasure& mu) {
  AverageLength out;
  std::optional<Rational> by_words = Rational(0);
  std::optional<Rational> by_prefixes = Rational(0);
  for (const auto& u : code.words) {
    out.by_words += static_cast<double>(u.size()) * mu.value(u);
    const auto e = mu.exact(u);
    if (by_words && e) {
      *by_words += Rational(static_cast<long long>(u.size())) * *e;
    } else {
      by_words.reset();
    }
  }
  for (const auto& w : code.prefixes) {
    if (w.empty()) {
      out.by_prefixes += 1;
      if (by_prefixes) {
        *by_prefixes += 1;
      }
      continue;
    }
    out.by_prefixes += mu.value(w);
    const auto e = mu.exact(w);
    if (by_prefixes && e) {
      *by_prefixes += *e;
    } else {
      by_prefixes.reset();
    }
  }
  out.difference = std::abs(out.by_words - out.by_prefixes);
  if (by_words && by_prefixes) {
    ensure(*by_words == *by_prefixes, "average length formulas disagree exactly");
    out.exact = by_words;
  }
  return out;
}

DegreeReport degree_surjectivity_check(std::shared_ptr<const Shift> x, const GroupMorphism& phi,
                                       const CylinderMeasure& mu) {
  DegreeReport out;
  const FiniteGroup& g = phi.group();
  out.group_order = g.order();
  const MinimalityResult minimal = skew_minimal(x, phi);
  if (!minimal.minimal) {
    out.reason = "skipped: the skew product is not minimal (" + minimal.certificate + ")";
    return out;
  }
  if (!minimal.exact) {
    out.reason = "skipped: minimality of the skew product is not certified";
    return out;
  }
  const BifixCode code = bifix_code(*x, phi, Subgroup::trivial(g));
  out.checked = true;
  out.degree = x_degree(*x, code).degree;
  out.average = average_length(code, mu).by_words;
  out.degree_ok = out.degree == g.order();
  out.length_ok = std::abs(out.average - static_cast<double>(g.order())) < 1e-9;
  out.reason = minimal.certificate;
  return out;
}

std::string render_parse_tree(const Alphabet& alphabet, const BifixCode& code) {
  std::set<Word> inner(code.prefixes.begin(), code.prefixes.end());
  std::set<Word> leaves(code.words.begin(), code.words.end());
  std::ostringstream out;
  auto visit = [&](auto&& self, const Word& w) -> void {
    out << std::string(2 * w.size(), ' ') << (w.empty() ? "ε" : alphabet.render(w))
        << (leaves.count(w) ? " *" : "") << '\n';
    if (!inner.count(w)) {
      return;
    }
    for (Letter a = 0; a < alphabet.size(); ++a) {
      Word wa = w;
      wa.push_back(a);
      if (inner.count(wa) || leaves.count(wa)) {
        self(self, wa);
      }
    }
  };
  visit(visit, Word{});
  return out.str();
}

}  // namespace skewdens
