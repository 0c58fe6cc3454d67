#include "skewdens/cobounding.hpp"

#include <algorithm>
#include <set>

#include "skewdens/error.hpp"
#include "skewdens/subst_tools.hpp"

namespace skewdens {

namespace {

std::size_t cylinder_index(const std::vector<Word>& cylinders, const Word& w) {
  auto it = std::lower_bound(cylinders.begin(), cylinders.end(), w);
  ensure(it != cylinders.end() && *it == w, "word outside the cylinder list");
  return static_cast<std::size_t>(it - cylinders.begin());
}

}  // namespace

std::size_t CoboundingMap::value(const Word& w) const {
  if (w.size() < length) {
    semantic_error("word shorter than the cylinder length of the map");
  }
  auto it = std::lower_bound(cylinders.begin(), cylinders.end(), w.substr(0, length));
  if (it == cylinders.end() || *it != w.substr(0, length)) {
    semantic_error("word outside the language");
  }
  return assignment[static_cast<std::size_t>(it - cylinders.begin())];
}

std::vector<Element> CoboundingMap::representatives() const {
  std::vector<Element> out;
  out.reserve(assignment.size());
  for (auto c : assignment) {
    out.push_back(cosets.representative(c));
  }
  return out;
}

std::optional<CoboundingMap> find_cobounding(const Shift& x, const GroupMorphism& phi,
                                             const Subgroup& h, std::size_t max_len) {
  const auto& g = phi.group();
  RightCosets cosets(g, h);
  for (std::size_t len = 0; len <= max_len; ++len) {
    auto cyl = x.language(len);
    auto ext = x.language(len + 1);
    const std::size_t n = cyl->size();
    if (n == 0) {
      return std::nullopt;
    }
    struct Edge {
      std::size_t from;
      std::size_t to;
      Element label;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> incident(n);
    for (const auto& z : *ext) {
      Edge e{cylinder_index(*cyl, z.substr(0, len)), cylinder_index(*cyl, z.substr(1)),
             phi.image(z[0])};
      incident[e.from].push_back(edges.size());
      incident[e.to].push_back(edges.size());
      edges.push_back(e);
    }
    for (std::size_t seed = 0; seed < cosets.count(); ++seed) {
      std::vector<long> value(n, -1);
      value[0] = static_cast<long>(seed);
      std::vector<std::size_t> stack{0};
      bool consistent = true;
      while (!stack.empty() && consistent) {
        auto v = stack.back();
        stack.pop_back();
        for (auto ei : incident[v]) {
          const auto& e = edges[ei];
          std::size_t other;
          std::size_t expected;
          if (e.from == v) {
            other = e.to;
            expected = cosets.act(g, static_cast<std::size_t>(value[v]), e.label);
          } else {
            other = e.from;
            expected = cosets.act(g, static_cast<std::size_t>(value[v]), g.inv(e.label));
          }
          if (value[other] < 0) {
            value[other] = static_cast<long>(expected);
            stack.push_back(other);
          } else if (static_cast<std::size_t>(value[other]) != expected) {
            consistent = false;
            break;
          }
        }
      }
      if (!consistent || std::any_of(value.begin(), value.end(), [](long c) { return c < 0; })) {
        continue;
      }
      CoboundingMap alpha;
      alpha.h = h;
      alpha.cosets = cosets;
      alpha.length = len;
      alpha.cylinders = *cyl;
      alpha.assignment.assign(value.begin(), value.end());
      if (verify_cobounding(x, phi, alpha).ok) {
        return alpha;
      }
    }
  }
  return std::nullopt;
}

CoboundingCheck verify_cobounding(const Shift& x, const GroupMorphism& phi,
                                  const CoboundingMap& alpha) {
  CoboundingCheck out;
  auto cyl = x.language(alpha.length);
  if (*cyl != alpha.cylinders || alpha.assignment.size() != cyl->size()) {
    out.ok = false;
    return out;
  }
  const auto& g = phi.group();
  for (const auto& z : *x.language(alpha.length + 1)) {
    auto left = alpha.value(z.substr(0, alpha.length));
    auto right = alpha.value(z.substr(1));
    if (alpha.cosets.act(g, left, phi.image(z[0])) != right) {
      out.ok = false;
      out.violations.push_back(z);
    }
  }
  return out;
}

CoboundingMap left_translate(const FiniteGroup& g, const CoboundingMap& alpha, Element by) {
  CoboundingMap out;
  out.h = conjugate(g, alpha.h, by);
  out.cosets = RightCosets(g, out.h);
  out.length = alpha.length;
  out.cylinders = alpha.cylinders;
  for (auto c : alpha.assignment) {
    out.assignment.push_back(out.cosets.index_of(g.mul(by, alpha.cosets.representative(c))));
  }
  return out;
}

std::vector<double> coset_masses(const CoboundingMap& alpha, const CylinderMeasure& mu) {
  std::vector<double> mass(alpha.cosets.count(), 0.0);
  for (std::size_t i = 0; i < alpha.cylinders.size(); ++i) {
    mass[alpha.assignment[i]] += mu.value(alpha.cylinders[i]);
  }
  return mass;
}

std::optional<std::vector<Rational>> coset_masses_exact(const CoboundingMap& alpha,
                                                        const CylinderMeasure& mu) {
  std::vector<Rational> mass(alpha.cosets.count(), Rational(0));
  for (std::size_t i = 0; i < alpha.cylinders.size(); ++i) {
    auto v = mu.exact(alpha.cylinders[i]);
    if (!v) {
      return std::nullopt;
    }
    mass[alpha.assignment[i]] += *v;
  }
  return mass;
}

double measure_of_y_alpha(const FiniteGroup& g, const CoboundingMap& alpha,
                          const std::vector<double>& masses) {
  const double weight =
      static_cast<double>(alpha.h.order()) / static_cast<double>(g.order());
  double total = 0;
  for (double m : masses) {
    total += weight * m;
  }
  return total;
}

MinimalDecomposition minimal_decomposition(std::shared_ptr<const Shift> x,
                                           const GroupMorphism& phi, std::size_t max_len,
                                           std::size_t window_cap) {
  if (!x->is_minimal_kind()) {
    semantic_error("minimal decompositions need a substitution or periodic shift");
  }
  const auto& g = phi.group();
  MinimalDecomposition dec;
  for (const auto& h : subgroup_classes(g)) {
    auto alpha = find_cobounding(*x, phi, h, max_len);
    if (alpha) {
      dec.found = true;
      dec.h = h;
      dec.map = std::move(*alpha);
      break;
    }
  }
  ensure(dec.found, "no cobounding map found, not even the trivial one");
  dec.canonical = canonical_conjugate(g, dec.h);
  dec.count = dec.h.index_in(g);

  std::set<std::pair<std::vector<Element>, std::vector<Element>>> keys;
  for (Element by = 0; by < g.order(); ++by) {
    auto t = left_translate(g, dec.map, by);
    if (keys.emplace(t.h.members(), t.representatives()).second) {
      dec.orbit.push_back(std::move(t));
    }
  }
  if (dec.orbit.size() != dec.count) {
    dec.warnings.push_back("orbit of the cobounding map has " + std::to_string(dec.orbit.size()) +
                           " maps, index is " + std::to_string(dec.count));
  }

  // Returns of long prefixes must generate g^-1 H g where α(u) = Hg.
  std::size_t base_len = std::max<std::size_t>(dec.map.length, 1);
  if (x->kind() == ShiftKind::periodic) {
    base_len = std::max(base_len, x->spec().periodic().word.size());
  }
  bool all_match = true;
  for (std::size_t len : {base_len, base_len + 1}) {
    PrefixEvidence ev;
    ev.length = len;
    ev.u = x->fixed_point_prefix(len);
    auto cert = return_words(*x, ev.u, window_cap);
    ev.returns = cert.returns.size();
    ev.certified = cert.complete;
    std::vector<Element> gens;
    for (const auto& r : cert.returns) {
      gens.push_back(phi(r));
    }
    ev.generated = subgroup_generated(g, gens);
    Element rep = dec.map.cosets.representative(dec.map.value(ev.u));
    Subgroup expected = conjugate(g, dec.h, g.inv(rep));
    all_match = all_match && cert.complete && ev.generated == expected;
    dec.evidence.push_back(std::move(ev));
  }

  bool components_match = false;
  if (x->kind() == ShiftKind::substitution) {
    auto inv = invertibility_order(x->spec().substitution().images, phi);
    if (inv.order) {
      auto ss = skew_substitution(*x, phi);
      dec.skew_components = ss.components.size();
      bool primitive = std::all_of(ss.primitive.begin(), ss.primitive.end(), [](bool b) { return b; });
      components_match = primitive && ss.components.size() == dec.count;
      if (ss.components.size() != dec.count) {
        dec.warnings.push_back("skew substitution has " + std::to_string(ss.components.size()) +
                               " components but the index is " + std::to_string(dec.count));
      }
    }
  }

  if (dec.h.order() == 1) {
    dec.minimality = "exact";
    dec.minimality_route = "mod1";
    dec.ergodicity = "mod1";
  } else if (x->kind() == ShiftKind::periodic && all_match) {
    dec.minimality = "exact";
    dec.minimality_route = "periodic";
    dec.ergodicity = "periodic";
  } else if (components_match) {
    dec.minimality = "exact";
    dec.minimality_route = "skew-substitution";
    dec.ergodicity = "skew-substitution";
  } else if (all_match) {
    dec.minimality = "semi";
    dec.minimality_route = "return-images";
  } else {
    dec.minimality = "semi";
    dec.minimality_route = "unverified";
    dec.warnings.push_back(
        "return images do not generate the conjugate modulus; a larger cylinder sweep may find a "
        "smaller modulus");
  }
  if (x->kind() == ShiftKind::periodic && dec.ergodicity == "mod1") {
    dec.ergodicity = "periodic";
  }
  return dec;
}

Subgroup minimal_subgroup(std::shared_ptr<const Shift> x, const GroupMorphism& phi,
                          std::size_t max_len) {
  return minimal_decomposition(std::move(x), phi, max_len).canonical;
}

}  // namespace skewdens
