#include "skewdens/shifts.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

#include "skewdens/error.hpp"

namespace skewdens {

namespace {

void check_letters(const Word& w, std::size_t alphabet_size) {
  for (auto a : w) {
    if (a >= alphabet_size) {
      semantic_error("word uses a letter outside the alphabet");
    }
  }
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) {
      continue;
    }
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) {
      ok = w[i] == w[i - d];
    }
    if (ok) {
      return w.substr(0, d);
    }
  }
  return w;
}

Word least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word r = w.substr(i) + w.substr(0, i);
    if (r < best) {
      best = std::move(r);
    }
  }
  return best;
}

std::vector<Word> sorted_unique(std::unordered_set<Word>&& set) {
  std::vector<Word> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ShiftSpec ShiftSpec::make_sft(Alphabet alphabet, std::size_t step, std::vector<Word> forbidden) {
  if (step < 1) {
    semantic_error("SFT step must be at least 1");
  }
  for (const auto& w : forbidden) {
    check_letters(w, alphabet.size());
    if (w.size() != step + 1) {
      semantic_error("forbidden word '" + alphabet.render(w) + "' must have length step + 1 = " +
                     std::to_string(step + 1));
    }
  }
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  ShiftSpec spec;
  spec.alphabet = std::move(alphabet);
  spec.rules = SftRules{step, std::move(forbidden)};
  return spec;
}

ShiftSpec ShiftSpec::make_substitution(Alphabet alphabet, std::vector<Word> images) {
  if (images.size() != alphabet.size()) {
    semantic_error("substitution needs exactly one rule per letter");
  }
  for (const auto& w : images) {
    if (w.empty()) {
      semantic_error("substitution images must be nonempty");
    }
    check_letters(w, alphabet.size());
  }
  if (!is_primitive(images, alphabet.size())) {
    semantic_error("substitution is not primitive");
  }
  ShiftSpec spec;
  spec.alphabet = std::move(alphabet);
  spec.rules = SubstitutionRules{std::move(images)};
  return spec;
}

ShiftSpec ShiftSpec::make_periodic(Alphabet alphabet, Word word) {
  if (word.empty()) {
    semantic_error("periodic word must be nonempty");
  }
  check_letters(word, alphabet.size());
  ShiftSpec spec;
  spec.alphabet = std::move(alphabet);
  spec.rules = PeriodicRules{least_rotation(primitive_root(word))};
  return spec;
}

std::vector<std::vector<std::size_t>> incidence_matrix(const std::vector<Word>& images,
                                                       std::size_t alphabet_size) {
  std::vector<std::vector<std::size_t>> m(alphabet_size, std::vector<std::size_t>(alphabet_size, 0));
  for (std::size_t b = 0; b < images.size(); ++b) {
    for (auto a : images[b]) {
      ++m[a][b];
    }
  }
  return m;
}

bool is_primitive(const std::vector<Word>& images, std::size_t alphabet_size) {
  if (images.size() != alphabet_size) {
    return false;
  }
  for (const auto& w : images) {
    if (w.empty()) {
      semantic_error("substitution images must be nonempty");
    }
  }
  const std::size_t n = alphabet_size;
  auto inc = incidence_matrix(images, n);
  std::vector<std::vector<char>> base(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      base[i][j] = inc[i][j] > 0;
    }
  }
  auto power = base;
  const std::size_t bound = 2 * n * n;
  for (std::size_t k = 1; k <= bound; ++k) {
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i) {
      for (std::size_t j = 0; j < n && positive; ++j) {
        positive = power[i][j] != 0;
      }
    }
    if (positive) {
      return true;
    }
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < n; ++t) {
        if (!power[i][t]) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          next[i][j] = next[i][j] || base[t][j];
        }
      }
    }
    power = std::move(next);
  }
  return false;
}

Word apply_substitution(const std::vector<Word>& images, const Word& w) {
  Word out;
  for (auto a : w) {
    out += images.at(a);
  }
  return out;
}

Word apply_power(const std::vector<Word>& images, const Word& w, std::size_t k) {
  Word out = w;
  for (std::size_t i = 0; i < k; ++i) {
    out = apply_substitution(images, out);
  }
  return out;
}

std::vector<Word> substitution_power(const std::vector<Word>& images, std::size_t k) {
  std::vector<Word> out;
  out.reserve(images.size());
  for (std::size_t a = 0; a < images.size(); ++a) {
    out.push_back(apply_power(images, single(static_cast<Letter>(a)), k));
  }
  return out;
}

std::optional<std::size_t> BlockGraph::index(const Word& block) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), block);
  if (it == blocks.end() || *it != block) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - blocks.begin());
}

Shift::Shift(ShiftSpec spec) : spec_(std::move(spec)) {
  if (kind() == ShiftKind::sft) {
    const auto& rules = spec_.sft();
    const std::size_t r = rules.step;
    const std::size_t k = alphabet().size();
    double estimate = 1;
    for (std::size_t i = 0; i < r; ++i) {
      estimate *= static_cast<double>(k);
    }
    if (estimate > 2e6) {
      semantic_error("SFT block graph too large (|A|^step > 2e6)");
    }
    std::unordered_set<Word> forbidden(rules.forbidden.begin(), rules.forbidden.end());
    std::vector<Word> all{Word()};
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Word> next;
      for (const auto& w : all) {
        for (std::size_t a = 0; a < k; ++a) {
          next.push_back(w + static_cast<Letter>(a));
        }
      }
      all = std::move(next);
    }
    const std::size_t n = all.size();
    // Blocks in lexicographic order: index arithmetic in base k.
    auto index_of = [&](const Word& w) {
      std::size_t idx = 0;
      for (auto a : w) {
        idx = idx * k + a;
      }
      return idx;
    };
    std::vector<std::vector<std::pair<Letter, std::size_t>>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t a = 0; a < k; ++a) {
        Word ext = all[u] + static_cast<Letter>(a);
        if (forbidden.count(ext)) {
          continue;
        }
        auto v = index_of(ext.substr(1));
        out[u].emplace_back(static_cast<Letter>(a), v);
        ++indeg[v];
      }
    }
    std::vector<char> alive(n, 1);
    std::vector<std::size_t> outdeg(n);
    std::vector<std::vector<std::size_t>> in(n);
    for (std::size_t u = 0; u < n; ++u) {
      outdeg[u] = out[u].size();
      for (auto [a, v] : out[u]) {
        in[v].push_back(u);
      }
    }
    std::vector<std::size_t> queue;
    for (std::size_t u = 0; u < n; ++u) {
      if (indeg[u] == 0 || outdeg[u] == 0) {
        alive[u] = 0;
        queue.push_back(u);
      }
    }
    while (!queue.empty()) {
      auto u = queue.back();
      queue.pop_back();
      for (auto [a, v] : out[u]) {
        if (alive[v] && --indeg[v] == 0) {
          alive[v] = 0;
          queue.push_back(v);
        }
      }
      for (auto p : in[u]) {
        if (alive[p] && --outdeg[p] == 0) {
          alive[p] = 0;
          queue.push_back(p);
        }
      }
    }
    BlockGraph g;
    g.step = r;
    std::vector<std::size_t> renumber(n, n);
    for (std::size_t u = 0; u < n; ++u) {
      if (alive[u]) {
        renumber[u] = g.blocks.size();
        g.blocks.push_back(all[u]);
      }
    }
    g.out.resize(g.blocks.size());
    for (std::size_t u = 0; u < n; ++u) {
      if (!alive[u]) {
        continue;
      }
      for (auto [a, v] : out[u]) {
        if (alive[v]) {
          g.out[renumber[u]].emplace_back(a, renumber[v]);
        }
      }
    }
    if (!g.blocks.empty()) {
      const std::size_t m = g.blocks.size();
      std::vector<std::vector<std::size_t>> rev(m);
      for (std::size_t u = 0; u < m; ++u) {
        for (auto [a, v] : g.out[u]) {
          rev[v].push_back(u);
        }
      }
      auto reach_all = [m](const auto& adj) {
        std::vector<char> seen(m, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
          auto u = stack.back();
          stack.pop_back();
          for (const auto& e : adj[u]) {
            std::size_t v;
            if constexpr (std::is_same_v<std::decay_t<decltype(e)>, std::size_t>) {
              v = e;
            } else {
              v = e.second;
            }
            if (!seen[v]) {
              seen[v] = 1;
              ++count;
              stack.push_back(v);
            }
          }
        }
        return count == m;
      };
      g.irreducible = reach_all(g.out) && reach_all(rev);
    }
    graph_ = std::move(g);
  } else if (kind() == ShiftKind::substitution) {
    const auto& images = spec_.substitution().images;
    std::unordered_set<Word> found;
    for (const auto& img : images) {
      for (std::size_t i = 0; i + 2 <= img.size(); ++i) {
        found.insert(img.substr(i, 2));
      }
    }
    std::vector<Word> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
      std::vector<Word> next;
      for (const auto& cd : frontier) {
        Word join{images[cd[0]].back(), images[cd[1]].front()};
        if (found.insert(join).second) {
          next.push_back(join);
        }
      }
      frontier = std::move(next);
    }
    two_blocks_ = sorted_unique(std::move(found));
  }
}

std::shared_ptr<const Shift> make_shift(ShiftSpec spec) {
  return std::make_shared<const Shift>(std::move(spec));
}

const BlockGraph& Shift::block_graph() const {
  if (!graph_) {
    semantic_error("block graph requested for a shift that is not of finite type");
  }
  return *graph_;
}

bool Shift::is_irreducible() const {
  if (kind() == ShiftKind::sft) {
    return block_graph().irreducible;
  }
  return true;
}

const std::vector<Word>& Shift::two_blocks() const { return *two_blocks_; }

std::shared_ptr<const std::vector<Word>> Shift::language(std::size_t n) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end()) {
      return it->second;
    }
  }
  auto words = std::make_shared<const std::vector<Word>>(compute_language(n));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(n, words);
  return it->second;
}

std::vector<Word> Shift::compute_language(std::size_t n) const {
  if (n == 0) {
    if (kind() == ShiftKind::sft && block_graph().blocks.empty()) {
      return {};
    }
    return {Word()};
  }
  switch (kind()) {
    case ShiftKind::sft:
      return sft_language(n);
    case ShiftKind::substitution:
      return substitution_language(n);
    case ShiftKind::periodic:
      return periodic_language(n);
  }
  return {};
}

std::vector<Word> Shift::sft_language(std::size_t n) const {
  const auto& g = block_graph();
  const std::size_t r = g.step;
  if (n <= r) {
    std::vector<Word> out;
    for (const auto& b : g.blocks) {
      out.push_back(b.substr(0, n));
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::vector<Word> out;
  Word current;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t v, std::size_t remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (auto [a, w] : g.out[v]) {
      current.push_back(a);
      walk(w, remaining - 1);
      current.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.blocks.size(); ++v) {
    current = g.blocks[v];
    walk(v, n - r);
  }
  return out;
}

std::vector<Word> Shift::covering_words(std::size_t n) const {
  if (kind() == ShiftKind::sft) {
    semantic_error("covering words are only defined for minimal shifts");
  }
  if (kind() == ShiftKind::periodic) {
    const Word& p = spec_.periodic().word;
    Word w;
    while (w.size() < p.size() + n) {
      w += p;
    }
    return {w};
  }
  const auto& images = spec_.substitution().images;
  const std::size_t k = alphabet().size();
  if (n <= 1 || k == 1) {
    std::vector<Word> out;
    for (std::size_t a = 0; a < k; ++a) {
      out.push_back(k == 1 ? Word(std::max<std::size_t>(n, 1), 0) : single(static_cast<Letter>(a)));
    }
    return out;
  }
  std::vector<Word> power(k);
  for (std::size_t a = 0; a < k; ++a) {
    power[a] = single(static_cast<Letter>(a));
  }
  auto shortest = [&] {
    std::size_t m = power[0].size();
    for (const auto& w : power) {
      m = std::min(m, w.size());
    }
    return m;
  };
  while (shortest() + 1 < n) {
    for (auto& w : power) {
      w = apply_substitution(images, w);
    }
  }
  std::vector<Word> out;
  for (const auto& cd : two_blocks()) {
    out.push_back(power[cd[0]] + power[cd[1]]);
  }
  return out;
}

std::vector<Word> Shift::substitution_language(std::size_t n) const {
  const std::size_t k = alphabet().size();
  if (k == 1) {
    return {Word(n, 0)};
  }
  if (n == 1) {
    std::vector<Word> out;
    for (std::size_t a = 0; a < k; ++a) {
      out.push_back(single(static_cast<Letter>(a)));
    }
    return out;
  }
  if (n == 2) {
    return two_blocks();
  }
  std::unordered_set<Word> found;
  for (const auto& s : covering_words(n)) {
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
      found.insert(s.substr(i, n));
    }
  }
  return sorted_unique(std::move(found));
}

std::vector<Word> Shift::periodic_language(std::size_t n) const {
  const Word& p = spec_.periodic().word;
  Word w;
  while (w.size() < p.size() + n) {
    w += p;
  }
  std::unordered_set<Word> found;
  for (std::size_t i = 0; i < p.size(); ++i) {
    found.insert(w.substr(i, n));
  }
  return sorted_unique(std::move(found));
}

bool Shift::contains(const Word& w) const {
  if (kind() == ShiftKind::sft) {
    const auto& g = block_graph();
    const std::size_t r = g.step;
    if (w.size() <= r) {
      auto lang = language(w.size());
      return std::binary_search(lang->begin(), lang->end(), w);
    }
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i + r <= w.size(); ++i) {
      auto idx = g.index(w.substr(i, r));
      if (!idx) {
        return false;
      }
      if (prev) {
        bool edge = false;
        for (auto [a, v] : g.out[*prev]) {
          edge = edge || v == *idx;
        }
        if (!edge) {
          return false;
        }
      }
      prev = idx;
    }
    return true;
  }
  if (w.size() <= 64) {
    auto lang = language(w.size());
    return std::binary_search(lang->begin(), lang->end(), w);
  }
  for (const auto& s : covering_words(w.size())) {
    if (s.find(w) != Word::npos) {
      return true;
    }
  }
  return false;
}

std::size_t Shift::index_in_language(const Word& w) const {
  auto lang = language(w.size());
  auto it = std::lower_bound(lang->begin(), lang->end(), w);
  if (it == lang->end() || *it != w) {
    semantic_error("word '" + alphabet().render(w) + "' is not in the language");
  }
  return static_cast<std::size_t>(it - lang->begin());
}

std::pair<std::size_t, Letter> Shift::fixed_point_seed() const {
  if (kind() != ShiftKind::substitution) {
    semantic_error("fixed point seed requested for a shift that is not a substitution");
  }
  const auto& images = spec_.substitution().images;
  const std::size_t k = alphabet().size();
  for (std::size_t a = 0; a < k; ++a) {
    Letter x = static_cast<Letter>(a);
    for (std::size_t p = 1; p <= k; ++p) {
      x = images[x].front();
      if (x != a) {
        continue;
      }
      // Smallest multiple of p whose image of a has length at least 2.
      std::size_t q = p;
      while (k > 1 && apply_power(images, single(static_cast<Letter>(a)), q).size() < 2) {
        q += p;
      }
      return {q, static_cast<Letter>(a)};
    }
  }
  internal_error("no periodic first letter found for the substitution");
}

Word Shift::fixed_point_prefix(std::size_t n) const {
  if (kind() == ShiftKind::periodic) {
    const Word& p = spec_.periodic().word;
    Word w;
    while (w.size() < n) {
      w += p;
    }
    return w.substr(0, n);
  }
  if (kind() != ShiftKind::substitution) {
    semantic_error("fixed point requested for a shift of finite type");
  }
  const auto& images = spec_.substitution().images;
  if (alphabet().size() == 1) {
    return Word(n, 0);
  }
  auto [p, a] = fixed_point_seed();
  Word w = single(a);
  while (w.size() < n) {
    w = apply_power(images, w, p);
  }
  return w.substr(0, n);
}

ReturnWordCertificate return_words(const Shift& x, const Word& u, std::size_t window_cap) {
  if (!x.is_minimal_kind()) {
    semantic_error("return words require a minimal shift (substitution or periodic)");
  }
  if (!x.contains(u)) {
    semantic_error("word '" + x.alphabet().render(u) + "' is not in the language");
  }
  ReturnWordCertificate cert;
  cert.u = u;
  if (u.empty()) {
    for (const auto& a : *x.language(1)) {
      cert.returns.push_back(a);
    }
    cert.window = 1;
    cert.max_gap = 1;
    cert.complete = true;
    return cert;
  }
  std::size_t n = std::max<std::size_t>(2 * u.size() + 2, 16);
  while (true) {
    std::set<Word> found;
    std::size_t max_gap = 0;
    bool windows_ok = true;
    std::boyer_moore_horspool_searcher searcher(u.begin(), u.end());
    for (const auto& s : x.covering_words(n)) {
      std::vector<std::size_t> occ;
      auto it = s.begin();
      while (true) {
        auto hit = std::search(it, s.end(), searcher);
        if (hit == s.end()) {
          break;
        }
        occ.push_back(static_cast<std::size_t>(hit - s.begin()));
        it = hit + 1;
      }
      for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
        std::size_t gap = occ[i + 1] - occ[i];
        max_gap = std::max(max_gap, gap);
        found.insert(s.substr(occ[i], gap));
      }
      // Every length-n window must hold two occurrences of u.
      std::size_t lo = 0;
      for (std::size_t t = 0; windows_ok && t + n <= s.size(); ++t) {
        while (lo < occ.size() && occ[lo] < t) {
          ++lo;
        }
        windows_ok = lo + 1 < occ.size() && occ[lo + 1] + u.size() <= t + n;
      }
    }
    cert.returns.assign(found.begin(), found.end());
    cert.window = n;
    cert.max_gap = max_gap;
    if (windows_ok && n >= 2 * max_gap + 2 * u.size()) {
      cert.complete = true;
      return cert;
    }
    if (n >= window_cap) {
      cert.complete = false;
      return cert;
    }
    n = std::min(2 * n, window_cap);
  }
}

bool ExtensionGraph::is_connected() const {
  const std::size_t nl = left.size();
  const std::size_t n = nl + right.size();
  if (n == 0) {
    return false;
  }
  std::vector<std::vector<std::size_t>> adj(n);
  auto lpos = [&](Letter a) {
    return static_cast<std::size_t>(std::find(left.begin(), left.end(), a) - left.begin());
  };
  auto rpos = [&](Letter b) {
    return nl + static_cast<std::size_t>(std::find(right.begin(), right.end(), b) - right.begin());
  };
  for (auto [a, b] : edges) {
    auto i = lpos(a);
    auto j = rpos(b);
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

bool ExtensionGraph::is_tree() const {
  return is_connected() && edges.size() + 1 == left.size() + right.size();
}

ExtensionGraph extension_graph(const Shift& x, const Word& w) {
  if (!x.contains(w)) {
    semantic_error("word '" + x.alphabet().render(w) + "' is not in the language");
  }
  ExtensionGraph g;
  g.w = w;
  std::set<Letter> left;
  std::set<Letter> right;
  for (const auto& z : *x.language(w.size() + 1)) {
    if (z.compare(1, w.size(), w) == 0) {
      left.insert(z.front());
    }
    if (z.compare(0, w.size(), w) == 0) {
      right.insert(z.back());
    }
  }
  for (const auto& z : *x.language(w.size() + 2)) {
    if (z.compare(1, w.size(), w) == 0) {
      g.edges.emplace_back(z.front(), z.back());
    }
  }
  g.left.assign(left.begin(), left.end());
  g.right.assign(right.begin(), right.end());
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

DendricResult dendric_up_to(const Shift& x, std::size_t n) {
  for (std::size_t len = 0; len <= n; ++len) {
    for (const auto& w : *x.language(len)) {
      if (!extension_graph(x, w).is_tree()) {
        return {false, w};
      }
    }
  }
  return {true, std::nullopt};
}

Word HigherBlock::block(const Word& w) const {
  if (w.size() < r) {
    semantic_error("word shorter than the block length");
  }
  Word out;
  for (std::size_t i = 0; i + r <= w.size(); ++i) {
    auto b = w.substr(i, r);
    auto it = std::lower_bound(blocks.begin(), blocks.end(), b);
    if (it == blocks.end() || *it != b) {
      semantic_error("word contains a block outside the language");
    }
    out.push_back(static_cast<Letter>(it - blocks.begin()));
  }
  return out;
}

Word HigherBlock::unblock(const Word& w) const {
  if (w.empty()) {
    return {};
  }
  Word out = blocks.at(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) {
    out.push_back(blocks.at(w[i]).back());
  }
  return out;
}

HigherBlock higher_block(const Shift& x, std::size_t r) {
  if (x.kind() != ShiftKind::sft) {
    semantic_error("higher block presentation requires a shift of finite type");
  }
  if (r < 1 || r > 8) {
    semantic_error("higher block length must be in 1..8");
  }
  HigherBlock hb;
  hb.r = r;
  hb.blocks = *x.language(r);
  std::vector<std::string> labels;
  for (const auto& b : hb.blocks) {
    labels.push_back(x.alphabet().render(b));
  }
  std::vector<Word> forbidden;
  const std::size_t n = hb.blocks.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& u = hb.blocks[i];
      const auto& v = hb.blocks[j];
      bool overlap = u.compare(1, r - 1, v, 0, r - 1) == 0;
      if (!(overlap && x.contains(u + v.back()))) {
        forbidden.push_back(Word{static_cast<Letter>(i), static_cast<Letter>(j)});
      }
    }
  }
  hb.shift = ShiftSpec::make_sft(Alphabet(std::move(labels)), 1, std::move(forbidden));
  return hb;
}

}  // namespace skewdens
