#include "skewdens/subst_tools.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "skewdens/error.hpp"
#include "skewdens/rational.hpp"
#include "skewdens/skew.hpp"

namespace skewdens {

namespace {

Element apply_images(const FiniteGroup& g, const std::vector<Element>& images, const Word& w) {
  Element acc = g.identity();
  for (auto a : w) {
    acc = g.mul(acc, images[a]);
  }
  return acc;
}

}  // namespace

InvertibilityOrder invertibility_order(const std::vector<Word>& images, const GroupMorphism& phi,
                                       std::size_t cap) {
  const auto& g = phi.group();
  const std::size_t k = images.size();
  if (k != phi.alphabet().size()) {
    semantic_error("substitution and morphism alphabets differ");
  }
  InvertibilityOrder out;
  if (cap == 0) {
    double bound = 1;
    for (std::size_t i = 0; i < k; ++i) {
      bound *= static_cast<double>(g.order());
    }
    cap = static_cast<std::size_t>(std::min(bound, 1e6));
  }
  out.cap = cap;
  const auto& start = phi.images();
  std::set<std::vector<Element>> seen;
  std::vector<Element> psi = start;
  for (std::size_t n = 1; n <= cap; ++n) {
    std::vector<Element> next(k);
    for (std::size_t a = 0; a < k; ++a) {
      next[a] = apply_images(g, psi, images[a]);
    }
    psi = std::move(next);
    if (psi == start) {
      out.order = n;
      return out;
    }
    if (!seen.insert(psi).second) {
      out.definitive = true;
      return out;
    }
  }
  return out;
}

SkewSubstitution skew_substitution(const Shift& x, const GroupMorphism& phi, std::size_t cap) {
  if (x.kind() != ShiftKind::substitution) {
    semantic_error("skew substitutions need a substitution shift");
  }
  const auto& images = x.spec().substitution().images;
  auto inv = invertibility_order(images, phi, cap);
  if (!inv.order) {
    semantic_error("the substitution is not invertible under the morphism (checked up to " +
                   std::to_string(inv.cap) + ")");
  }
  const auto& g = phi.group();
  const std::size_t k = images.size();
  SkewShift skew(make_shift(x.spec()), phi);
  SkewSubstitution out;
  out.power = *inv.order;
  out.alphabet = skew.alphabet();
  auto tau = substitution_power(images, out.power);
  out.images.resize(g.order() * k);
  for (Element e = 0; e < g.order(); ++e) {
    for (std::size_t a = 0; a < k; ++a) {
      Word img = skew.lift(e, tau[a]);
      ensure(skew.project(img) == tau[a], "skew substitution breaks the projection law");
      out.images[skew.letter(e, static_cast<Letter>(a))] = std::move(img);
    }
  }
  const Letter seed = x.fixed_point_seed().second;
  std::set<std::vector<Letter>> found;
  for (Element e = 0; e < g.order(); ++e) {
    std::vector<char> reached(out.images.size(), 0);
    std::vector<Letter> stack{skew.letter(e, seed)};
    reached[stack[0]] = 1;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      for (auto t : out.images[s]) {
        if (!reached[t]) {
          reached[t] = 1;
          stack.push_back(t);
        }
      }
    }
    std::vector<Letter> letters;
    for (std::size_t s = 0; s < reached.size(); ++s) {
      if (reached[s]) {
        letters.push_back(static_cast<Letter>(s));
      }
    }
    found.insert(letters);
  }
  for (const auto& letters : found) {
    std::map<Letter, Letter> local;
    for (auto s : letters) {
      local.emplace(s, static_cast<Letter>(local.size()));
    }
    std::vector<Word> restricted;
    for (auto s : letters) {
      Word w;
      for (auto t : out.images[s]) {
        w.push_back(local.at(t));
      }
      restricted.push_back(std::move(w));
    }
    out.components.push_back(letters);
    out.primitive.push_back(is_primitive(restricted, letters.size()));
  }
  return out;
}

FreeWord free_word(const Word& w) {
  FreeWord out;
  for (auto a : w) {
    out.push_back(static_cast<int>(a) + 1);
  }
  return out;
}

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

FreeWord free_inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (auto& x : out) {
    x = -x;
  }
  return out;
}

FreeWord free_concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

std::string render_free(const Alphabet& alphabet, const FreeWord& w) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!alphabet.compact() && i > 0) {
      out += " ";
    }
    out += alphabet.label(static_cast<Letter>(std::abs(w[i]) - 1));
    if (w[i] < 0) {
      out += "^-1";
    }
  }
  return out;
}

StallingsGraph stallings_subgroup(const std::vector<FreeWord>& generators) {
  using Edge = std::tuple<std::size_t, Letter, std::size_t>;
  std::vector<Edge> edges;
  std::size_t count = 1;
  for (const auto& raw : generators) {
    FreeWord g = free_reduce(raw);
    std::size_t cur = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t next = i + 1 == g.size() ? 0 : count++;
      Letter a = static_cast<Letter>(std::abs(g[i]) - 1);
      if (g[i] > 0) {
        edges.emplace_back(cur, a, next);
      } else {
        edges.emplace_back(next, a, cur);
      }
      cur = next;
    }
  }
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  while (true) {
    for (auto& [s, a, t] : edges) {
      s = find(s);
      t = find(t);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::map<std::pair<std::size_t, Letter>, std::size_t> out;
    std::map<std::pair<std::size_t, Letter>, std::size_t> in;
    bool merged = false;
    for (const auto& [s, a, t] : edges) {
      auto [it, fresh] = out.emplace(std::make_pair(s, a), t);
      if (!fresh && it->second != t) {
        parent[find(t)] = find(it->second);
        merged = true;
        break;
      }
      auto [jt, fresh_in] = in.emplace(std::make_pair(t, a), s);
      if (!fresh_in && jt->second != s) {
        parent[find(s)] = find(jt->second);
        merged = true;
        break;
      }
    }
    if (!merged) {
      break;
    }
  }
  std::map<std::size_t, std::size_t> renumber;
  renumber[find(0)] = 0;
  for (std::size_t v = 0; v < count; ++v) {
    renumber.emplace(find(v), renumber.size());
  }
  StallingsGraph graph;
  // Vertices not reached by any edge only survive as the base.
  std::set<std::size_t> used{0};
  for (auto& [s, a, t] : edges) {
    s = renumber.at(s);
    t = renumber.at(t);
    used.insert(s);
    used.insert(t);
  }
  graph.vertices = used.size();
  std::sort(edges.begin(), edges.end());
  graph.edges = std::move(edges);
  return graph;
}

bool StallingsGraph::contains(const FreeWord& raw) const {
  std::size_t v = 0;
  for (int x : free_reduce(raw)) {
    Letter a = static_cast<Letter>(std::abs(x) - 1);
    bool moved = false;
    for (const auto& [s, b, t] : edges) {
      if (b != a) {
        continue;
      }
      if (x > 0 && s == v) {
        v = t;
        moved = true;
        break;
      }
      if (x < 0 && t == v) {
        v = s;
        moved = true;
        break;
      }
    }
    if (!moved) {
      return false;
    }
  }
  return v == 0;
}

std::vector<FreeWord> StallingsGraph::basis() const {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(vertices);  // (edge, other)
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& [s, a, t] = edges[e];
    adj[s].emplace_back(e, t);
    if (s != t) {
      adj[t].emplace_back(e, s);
    }
  }
  std::vector<std::optional<FreeWord>> path(vertices);
  std::vector<char> tree(edges.size(), 0);
  path[0] = FreeWord{};
  std::vector<std::size_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto v = queue[head];
    for (auto [e, w] : adj[v]) {
      if (path[w]) {
        continue;
      }
      const auto& [s, a, t] = edges[e];
      int step = static_cast<int>(a) + 1;
      path[w] = free_concat(*path[v], FreeWord{s == v ? step : -step});
      tree[e] = 1;
      queue.push_back(w);
    }
  }
  std::vector<FreeWord> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (tree[e]) {
      continue;
    }
    const auto& [s, a, t] = edges[e];
    FreeWord w = free_concat(*path[s], FreeWord{static_cast<int>(a) + 1});
    out.push_back(free_concat(w, free_inverse(*path[t])));
  }
  return out;
}

bool StallingsGraph::is_bouquet(std::size_t alphabet_size) const {
  return vertices == 1 && edges.size() == alphabet_size;
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::no:
      return "false";
    case Tristate::yes:
      return "true";
    case Tristate::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) {
      ++p;
    }
    if (p == n) {
      return 0;
    }
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) {
        m[r][k] -= f * m[c][k];
      }
    }
  }
  return det;
}

FreeWord apply_free(const std::vector<FreeWord>& images, const FreeWord& w) {
  FreeWord out;
  for (int x : w) {
    const FreeWord& img = images[static_cast<std::size_t>(std::abs(x) - 1)];
    out = free_concat(out, x > 0 ? img : free_inverse(img));
  }
  return out;
}

}  // namespace

FreeInvertibility free_group_invertible(const std::vector<Word>& images, std::size_t max_steps) {
  const std::size_t k = images.size();
  FreeInvertibility out;
  auto inc = incidence_matrix(images, k);
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m[i][j] = static_cast<long long>(inc[i][j]);
    }
  }
  Rational det = determinant(m);
  out.abelian_determinant = static_cast<long long>(det.convert_to<double>());
  if (det != 1 && det != -1) {
    out.value = Tristate::no;
    out.reason = "abelianization determinant " + to_string(det);
    return out;
  }
  std::vector<FreeWord> sigma;
  for (const auto& w : images) {
    sigma.push_back(free_word(w));
  }
  if (!stallings_subgroup(sigma).is_bouquet(k)) {
    out.value = Tristate::no;
    out.reason = "images do not generate the free group";
    return out;
  }
  // Breadth-first Nielsen moves x_i <- x_i x_j^{±1}, x_j^{±1} x_i that never
  // increase the total length, until every generator is a letter.
  struct State {
    std::vector<FreeWord> gens;
    std::vector<FreeWord> expr;  // over the formal generators σ(a_j)
  };
  auto total = [](const std::vector<FreeWord>& gens) {
    std::size_t t = 0;
    for (const auto& g : gens) {
      t += g.size();
    }
    return t;
  };
  State start{sigma, {}};
  for (std::size_t i = 0; i < k; ++i) {
    start.expr.push_back(FreeWord{static_cast<int>(i) + 1});
  }
  std::set<std::vector<FreeWord>> seen{start.gens};
  std::vector<State> queue{start};
  std::optional<State> done;
  for (std::size_t head = 0; head < queue.size() && head < max_steps && !done; ++head) {
    const State cur = queue[head];
    if (total(cur.gens) == k) {
      done = cur;
      break;
    }
    const std::size_t budget = total(cur.gens);
    for (std::size_t i = 0; i < k && !done; ++i) {
      for (std::size_t j = 0; j < k && !done; ++j) {
        if (i == j) {
          continue;
        }
        const FreeWord inv_g = free_inverse(cur.gens[j]);
        const FreeWord inv_e = free_inverse(cur.expr[j]);
        const std::pair<FreeWord, FreeWord> moves[] = {
            {free_concat(cur.gens[i], cur.gens[j]), free_concat(cur.expr[i], cur.expr[j])},
            {free_concat(cur.gens[i], inv_g), free_concat(cur.expr[i], inv_e)},
            {free_concat(cur.gens[j], cur.gens[i]), free_concat(cur.expr[j], cur.expr[i])},
            {free_concat(inv_g, cur.gens[i]), free_concat(inv_e, cur.expr[i])},
        };
        for (const auto& [g, e] : moves) {
          if (g.empty() || total(cur.gens) - cur.gens[i].size() + g.size() > budget) {
            continue;
          }
          State next = cur;
          next.gens[i] = g;
          next.expr[i] = e;
          if (seen.insert(next.gens).second) {
            if (total(next.gens) == k) {
              done = next;
              break;
            }
            queue.push_back(std::move(next));
          }
        }
      }
    }
  }
  out.value = Tristate::yes;
  if (!done) {
    // A surjective endomorphism of a finitely generated free group is injective.
    out.reason = "images generate the free group (folded graph is a bouquet)";
    return out;
  }
  std::vector<FreeWord> inverse(k);
  for (std::size_t i = 0; i < k; ++i) {
    const int x = done->gens[i][0];
    const auto b = static_cast<std::size_t>(std::abs(x) - 1);
    inverse[b] = x > 0 ? done->expr[i] : free_inverse(done->expr[i]);
  }
  for (std::size_t a = 0; a < k; ++a) {
    FreeWord letter{static_cast<int>(a) + 1};
    ensure(apply_free(sigma, inverse[a]) == letter, "inverse check failed (sigma after psi)");
    ensure(apply_free(inverse, sigma[a]) == letter, "inverse check failed (psi after sigma)");
  }
  out.reason = "explicit inverse found by Nielsen reduction";
  out.inverse = std::move(inverse);
  return out;
}

ReturnBasisReport return_basis_check(const Shift& x, const Word& w, std::size_t window_cap) {
  auto cert = return_words(x, w, window_cap);
  ReturnBasisReport out;
  out.w = w;
  out.returns = cert.returns;
  out.certified = cert.complete;
  std::vector<FreeWord> gens;
  for (const auto& r : cert.returns) {
    gens.push_back(free_word(r));
  }
  auto graph = stallings_subgroup(gens);
  out.rank = graph.rank();
  const std::size_t k = x.alphabet().size();
  out.basis = cert.complete && out.rank == k && cert.returns.size() == k && graph.is_bouquet(k);
  out.folded_basis = graph.basis();
  return out;
}

}  // namespace skewdens
