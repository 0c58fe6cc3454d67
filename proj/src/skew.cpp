#include "skewdens/skew.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "skewdens/error.hpp"

namespace skewdens {

namespace {

std::vector<std::string> skew_labels(const FiniteGroup& g, const Alphabet& a) {
  std::vector<std::string> out;
  for (Element e = 0; e < g.order(); ++e) {
    for (std::size_t l = 0; l < a.size(); ++l) {
      out.push_back(g.label(e) + ":" + a.label(static_cast<Letter>(l)));
    }
  }
  return out;
}

}  // namespace

SkewShift::SkewShift(std::shared_ptr<const Shift> base, GroupMorphism phi)
    : base_(std::move(base)), phi_(std::move(phi)) {
  if (!(phi_.alphabet() == base_->alphabet())) {
    semantic_error("morphism alphabet differs from the shift alphabet");
  }
  alphabet_ = Alphabet(skew_labels(phi_.group(), base_->alphabet()));
}

Word SkewShift::project(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (auto s : w) {
    out.push_back(base_part(s));
  }
  return out;
}

Word SkewShift::lift(Element g, const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (auto a : w) {
    out.push_back(letter(g, a));
    g = group().mul(g, phi_.image(a));
  }
  return out;
}

bool SkewShift::contains(const Word& w) const {
  for (auto s : w) {
    if (s >= alphabet_.size()) {
      return false;
    }
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    Element next = group().mul(group_part(w[i]), phi_.image(base_part(w[i])));
    if (group_part(w[i + 1]) != next) {
      return false;
    }
  }
  return base_->contains(project(w));
}

std::vector<Word> SkewShift::language(std::size_t n) const {
  std::vector<Word> out;
  for (const auto& w : *base_->language(n)) {
    if (n == 0) {
      out.push_back(w);
      continue;
    }
    for (Element g = 0; g < group().order(); ++g) {
      out.push_back(lift(g, w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ShiftSpec SkewShift::as_shift() const {
  if (base_->kind() != ShiftKind::sft) {
    semantic_error("the skew product is presented as an SFT only over an SFT base");
  }
  const std::size_t r = base_->block_graph().step;
  const std::size_t k = alphabet_.size();
  double total = 1;
  for (std::size_t i = 0; i <= r; ++i) {
    total *= static_cast<double>(k);
  }
  if (total > 2e6) {
    semantic_error("skew SFT too large to materialize");
  }
  auto allowed = language(r + 1);
  std::vector<Word> forbidden;
  Word w(r + 1, 0);
  while (true) {
    if (!std::binary_search(allowed.begin(), allowed.end(), w)) {
      forbidden.push_back(w);
    }
    std::size_t i = r + 1;
    while (i > 0) {
      --i;
      if (++w[i] < k) {
        break;
      }
      w[i] = 0;
      if (i == 0) {
        return ShiftSpec::make_sft(alphabet_, r, std::move(forbidden));
      }
    }
  }
}

bool phi_irreducible(const Shift& x, const GroupMorphism& phi) {
  if (x.kind() != ShiftKind::sft) {
    semantic_error("phi-irreducibility is decided for shifts of finite type");
  }
  const auto& graph = x.block_graph();
  if (!graph.irreducible) {
    semantic_error("reducible SFT: phi-irreducibility presumes an irreducible shift");
  }
  const auto& group = phi.group();
  const std::size_t m = group.order();
  const std::size_t n = graph.blocks.size();
  const std::size_t r = graph.step;
  auto pairs = x.language(2 * r);
  for (std::size_t u = 0; u < n; ++u) {
    const Word& ub = graph.blocks[u];
    const Element gu = phi(ub);
    std::vector<char> seen(n * m, 0);
    std::vector<std::size_t> stack;
    auto lo = std::lower_bound(pairs->begin(), pairs->end(), ub);
    for (auto it = lo; it != pairs->end() && has_prefix(*it, ub); ++it) {
      auto v = *graph.index(it->substr(r));
      std::size_t state = v * m + gu;
      if (!seen[state]) {
        seen[state] = 1;
        stack.push_back(state);
      }
    }
    while (!stack.empty()) {
      auto state = stack.back();
      stack.pop_back();
      const std::size_t b = state / m;
      const Element g = static_cast<Element>(state % m);
      const Element next = group.mul(g, phi.image(graph.blocks[b][0]));
      for (auto [a, target] : graph.out[b]) {
        std::size_t s = target * m + next;
        if (!seen[s]) {
          seen[s] = 1;
          stack.push_back(s);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!seen[v * m + group.identity()]) {
        return false;
      }
    }
  }
  return true;
}

namespace {

using ElementSet = std::vector<char>;

ElementSet times(const FiniteGroup& g, const ElementSet& s, Element e) {
  ElementSet out(s.size(), 0);
  for (Element a = 0; a < s.size(); ++a) {
    if (s[a]) {
      out[g.mul(a, e)] = 1;
    }
  }
  return out;
}

ElementSet times(const FiniteGroup& g, Element e, const ElementSet& s) {
  ElementSet out(s.size(), 0);
  for (Element a = 0; a < s.size(); ++a) {
    if (s[a]) {
      out[g.mul(e, a)] = 1;
    }
  }
  return out;
}

void merge_product(const FiniteGroup& g, ElementSet& into, const ElementSet& a, const ElementSet& b) {
  for (Element x = 0; x < a.size(); ++x) {
    if (!a[x]) {
      continue;
    }
    for (Element y = 0; y < b.size(); ++y) {
      if (b[y]) {
        into[g.mul(x, y)] = 1;
      }
    }
  }
}

void merge(ElementSet& into, const ElementSet& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    into[i] = into[i] || from[i];
  }
}

// Image sets of φ on prefixes, suffixes and factors of σ^k(c), per letter.
struct LetterImages {
  Element whole = 0;
  ElementSet prefixes;
  ElementSet suffixes;
  ElementSet factors;
  bool operator<(const LetterImages& o) const {
    return std::tie(whole, prefixes, suffixes, factors) <
           std::tie(o.whole, o.prefixes, o.suffixes, o.factors);
  }
};

std::vector<Element> substitution_image(const Shift& x, const GroupMorphism& phi) {
  const auto& g = phi.group();
  const std::size_t m = g.order();
  const std::size_t k = x.alphabet().size();
  const auto& images = x.spec().substitution().images;
  std::vector<LetterImages> state(k);
  for (std::size_t c = 0; c < k; ++c) {
    auto& s = state[c];
    s.whole = phi.image(static_cast<Letter>(c));
    s.prefixes.assign(m, 0);
    s.prefixes[g.identity()] = 1;
    s.prefixes[s.whole] = 1;
    s.suffixes = s.prefixes;
    s.factors = s.prefixes;
  }
  ElementSet image(m, 0);
  image[g.identity()] = 1;
  auto two = x.language(2);
  std::set<std::vector<LetterImages>> seen;
  for (std::size_t step = 0; step < 100000; ++step) {
    for (const auto& s : state) {
      merge(image, s.factors);
    }
    for (const auto& cd : *two) {
      merge_product(g, image, state[cd[0]].suffixes, state[cd[1]].prefixes);
    }
    if (!seen.insert(state).second) {
      std::vector<Element> out;
      for (Element e = 0; e < m; ++e) {
        if (image[e]) {
          out.push_back(e);
        }
      }
      return out;
    }
    std::vector<LetterImages> next(k);
    for (std::size_t c = 0; c < k; ++c) {
      const Word& img = images[c];
      auto& n = next[c];
      n.prefixes.assign(m, 0);
      n.suffixes.assign(m, 0);
      n.factors.assign(m, 0);
      Element acc = g.identity();
      for (auto b : img) {
        merge(n.prefixes, times(g, acc, state[b].prefixes));
        merge(n.factors, state[b].factors);
        acc = g.mul(acc, state[b].whole);
      }
      n.whole = acc;
      Element tail = g.identity();
      for (std::size_t i = img.size(); i-- > 0;) {
        merge(n.suffixes, times(g, state[img[i]].suffixes, tail));
        tail = g.mul(state[img[i]].whole, tail);
      }
      for (std::size_t i = 0; i < img.size(); ++i) {
        ElementSet left = state[img[i]].suffixes;
        for (std::size_t j = i + 1; j < img.size(); ++j) {
          merge_product(g, n.factors, left, state[img[j]].prefixes);
          left = times(g, left, state[img[j]].whole);
        }
      }
    }
    state = std::move(next);
  }
  internal_error("factor-image closure did not cycle");
}

}  // namespace

FiberErgodicity fiber_ergodic(const Shift& x, const GroupMorphism& phi) {
  const auto& g = phi.group();
  const std::size_t m = g.order();
  FiberErgodicity out;
  ElementSet image(m, 0);
  image[g.identity()] = 1;
  if (x.kind() == ShiftKind::sft) {
    out.method = "block-graph";
    const auto& graph = x.block_graph();
    const std::size_t n = graph.blocks.size();
    std::vector<char> seen(n * m, 0);
    std::vector<std::size_t> stack;
    for (std::size_t b = 0; b < n; ++b) {
      const Word& w = graph.blocks[b];
      Element acc = g.identity();
      for (auto a : w) {
        acc = g.mul(acc, phi.image(a));
        image[acc] = 1;
      }
      std::size_t s = b * m + acc;
      if (!seen[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      const std::size_t b = s / m;
      const Element acc = static_cast<Element>(s % m);
      image[acc] = 1;
      for (auto [a, target] : graph.out[b]) {
        std::size_t t = target * m + g.mul(acc, phi.image(a));
        if (!seen[t]) {
          seen[t] = 1;
          stack.push_back(t);
        }
      }
    }
  } else if (x.kind() == ShiftKind::periodic) {
    out.method = "periodic-exact";
    const Word& p = x.spec().periodic().word;
    const std::size_t len = p.size() * (m + 1);
    for (std::size_t s = 0; s < p.size(); ++s) {
      Element acc = g.identity();
      for (std::size_t i = 0; i < len; ++i) {
        acc = g.mul(acc, phi.image(p[(s + i) % p.size()]));
        image[acc] = 1;
      }
    }
  } else {
    out.method = "substitution-closure";
    for (auto e : substitution_image(x, phi)) {
      image[e] = 1;
    }
  }
  for (Element e = 0; e < m; ++e) {
    if (image[e]) {
      out.image.push_back(e);
    }
  }
  out.value = out.image.size() == m;
  return out;
}

SiRelation strongly_irreducible(const Shift& x) {
  if (x.kind() != ShiftKind::sft) {
    semantic_error("strong irreducibility is defined for shifts of finite type");
  }
  const auto& graph = x.block_graph();
  SiRelation rel;
  rel.step = graph.step;
  rel.irreducible = graph.irreducible;
  const std::size_t n = graph.blocks.size();
  const std::size_t r = graph.step;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto pairs = x.language(2 * r);
  std::size_t i = 0;
  while (i < pairs->size()) {
    Word w = (*pairs)[i].substr(0, r);
    std::optional<std::size_t> first;
    for (; i < pairs->size() && has_prefix((*pairs)[i], w); ++i) {
      auto v = *graph.index((*pairs)[i].substr(r));
      if (!first) {
        first = v;
      } else {
        parent[find(v)] = find(*first);
      }
    }
  }
  std::map<std::size_t, std::vector<Word>> groups;
  for (std::size_t b = 0; b < n; ++b) {
    groups[find(b)].push_back(graph.blocks[b]);
  }
  for (auto& [root, words] : groups) {
    rel.classes.push_back(std::move(words));
  }
  std::sort(rel.classes.begin(), rel.classes.end());
  rel.strongly_irreducible = rel.irreducible && rel.classes.size() == 1;
  return rel;
}

GroupMorphism si_witness_morphism(const Shift& x, const std::vector<Letter>& cls) {
  auto rel = strongly_irreducible(x);
  if (rel.step != 1) {
    semantic_error("the witness construction needs a 1-step SFT");
  }
  if (!rel.irreducible) {
    semantic_error("the witness construction needs an irreducible SFT");
  }
  if (rel.strongly_irreducible) {
    semantic_error("the shift is strongly irreducible; no witness morphism exists");
  }
  Word c(cls.begin(), cls.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  bool is_class = false;
  for (const auto& k : rel.classes) {
    Word letters;
    for (const auto& w : k) {
      letters.push_back(w[0]);
    }
    is_class = is_class || letters == c;
  }
  if (!is_class) {
    semantic_error("the given letters do not form a class of the relation");
  }
  const std::size_t k = x.alphabet().size();
  auto in_c = [&](Letter a) { return std::binary_search(c.begin(), c.end(), a); };
  auto two = x.language(2);
  std::vector<std::vector<Letter>> follow(k);
  for (const auto& w : *two) {
    follow[w[0]].push_back(w[1]);
  }
  auto group = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  std::vector<Element> images(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    const auto& f = follow[a];
    if (f.empty()) {
      continue;
    }
    bool into_c = std::all_of(f.begin(), f.end(), in_c);
    bool out_of_c = std::none_of(f.begin(), f.end(), in_c);
    bool in_b = in_c(static_cast<Letter>(a)) ? out_of_c : into_c;
    images[a] = in_b ? 1 : 0;
  }
  GroupMorphism phi(x.alphabet(), group, images);
  ensure(!phi_irreducible(x, phi), "witness morphism unexpectedly phi-irreducible");
  return phi;
}

bool skew_transitive(const Shift& x, const GroupMorphism& phi) {
  SkewShift skew(make_shift(x.spec()), phi);
  Shift product(skew.as_shift());
  return product.is_irreducible();
}

std::vector<PrefixEvidence> prefix_evidence(const Shift& x, const GroupMorphism& phi,
                                            std::size_t max_prefix, std::size_t window_cap) {
  std::vector<PrefixEvidence> out;
  for (std::size_t len = 1; len <= max_prefix; ++len) {
    PrefixEvidence ev;
    ev.length = len;
    ev.u = x.fixed_point_prefix(len);
    auto cert = return_words(x, ev.u, window_cap);
    ev.returns = cert.returns.size();
    ev.certified = cert.complete;
    std::vector<Element> gens;
    for (const auto& r : cert.returns) {
      gens.push_back(phi(r));
    }
    ev.generated = subgroup_generated(phi.group(), gens);
    out.push_back(std::move(ev));
  }
  return out;
}

WelldocWitness welldoc_witness(const Shift& x, const GroupMorphism& phi, std::size_t n,
                               std::size_t scan) {
  if (!x.is_minimal_kind()) {
    semantic_error("the witness scan needs a substitution or periodic shift");
  }
  Word text = x.fixed_point_prefix(scan + n);
  const auto& g = phi.group();
  std::set<Element> values;
  WelldocWitness out;
  Element acc = g.identity();
  for (std::size_t m = 0; m <= scan; ++m) {
    if (text.compare(m, n, text, 0, n) == 0) {
      values.insert(acc);
      ++out.occurrences;
    }
    acc = g.mul(acc, phi.image(text[m]));
  }
  if (out.occurrences < 2) {
    semantic_error("no recurrence of the prefix within the scan window");
  }
  out.values.assign(values.begin(), values.end());
  return out;
}

}  // namespace skewdens
