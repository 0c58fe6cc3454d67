#include "skewdens/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "skewdens/error.hpp"

namespace skewdens {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Rational num(text.substr(0, slash));
      Rational den(text.substr(slash + 1));
      if (den == 0) {
        semantic_error("zero denominator in '" + text + "'");
      }
      return num / den;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      return Rational(text);
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t scale = text.size() - dot - 1;
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = 0; i < scale; ++i) {
      den *= 10;
    }
    return Rational(boost::multiprecision::cpp_int(digits.empty() ? "0" : digits)) / Rational(den);
  } catch (const std::runtime_error&) {
    semantic_error("cannot parse rational '" + text + "'");
  }
}

SparseRows transpose(const SparseRows& m, std::size_t columns) {
  SparseRows t(columns);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (auto [j, v] : m[i]) {
      t[j].emplace_back(i, v);
    }
  }
  return t;
}

PerronResult perron_vector(const SparseRows& m, double tol, std::size_t max_iterations) {
  const std::size_t n = m.size();
  PerronResult out;
  if (n == 0) {
    return out;
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (auto [j, v] : m[i]) {
        s += v * x[j];
      }
      y[i] = s;
      total += s;
    }
    for (auto& v : y) {
      v /= total;
    }
    double lambda = total - 1.0;
    // Residual of M y = lambda y relative to the largest entry.
    double peak = *std::max_element(y.begin(), y.end());
    double residual = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (auto [j, v] : m[i]) {
        s += v * y[j];
      }
      residual = std::max(residual, std::abs(s - lambda * y[i]));
    }
    residual /= std::max(peak, 1e-300) * std::max(1.0, lambda);
    x.swap(y);
    if (residual <= tol) {
      double t = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (auto [j, v] : m[i]) {
          s += v * x[j];
        }
        t += s;
      }
      out.lambda = t;
      out.vector = x;
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  semantic_error("power iteration did not converge within " + std::to_string(max_iterations) +
                 " steps");
}

std::vector<double> CylinderMeasure::distribution(std::size_t n) const {
  auto lang = shift().language(n);
  std::vector<double> out;
  out.reserve(lang->size());
  for (const auto& w : *lang) {
    out.push_back(value(w));
  }
  return out;
}

// ---------------------------------------------------------------- Markov

MarkovMeasure::MarkovMeasure(std::shared_ptr<const Shift> shift, std::size_t step,
                             std::vector<Word> states, std::vector<std::vector<MarkovEdge>> edges,
                             std::vector<double> pi, std::optional<std::vector<Rational>> pi_exact,
                             std::string backend)
    : CylinderMeasure(std::move(shift)),
      step_(step),
      states_(std::move(states)),
      edges_(std::move(edges)),
      pi_(std::move(pi)),
      pi_exact_(std::move(pi_exact)),
      backend_(std::move(backend)) {}

std::optional<std::size_t> MarkovMeasure::state_index(const Word& u) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), u);
  if (it == states_.end() || *it != u) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - states_.begin());
}

double MarkovMeasure::value(const Word& w) const {
  if (w.size() < step_) {
    auto lo = std::lower_bound(states_.begin(), states_.end(), w);
    double s = 0;
    for (auto it = lo; it != states_.end() && has_prefix(*it, w); ++it) {
      s += pi_[static_cast<std::size_t>(it - states_.begin())];
    }
    return s;
  }
  auto idx = state_index(w.substr(0, step_));
  if (!idx) {
    return 0;
  }
  double v = pi_[*idx];
  std::size_t s = *idx;
  for (std::size_t i = step_; i < w.size(); ++i) {
    const MarkovEdge* e = nullptr;
    for (const auto& cand : edges_[s]) {
      if (cand.letter == w[i]) {
        e = &cand;
      }
    }
    if (!e) {
      return 0;
    }
    v *= e->p;
    s = e->target;
  }
  return v;
}

std::optional<Rational> MarkovMeasure::exact(const Word& w) const {
  if (!pi_exact_) {
    return std::nullopt;
  }
  const auto& pi = *pi_exact_;
  if (w.size() < step_) {
    auto lo = std::lower_bound(states_.begin(), states_.end(), w);
    Rational s = 0;
    for (auto it = lo; it != states_.end() && has_prefix(*it, w); ++it) {
      s += pi[static_cast<std::size_t>(it - states_.begin())];
    }
    return s;
  }
  auto idx = state_index(w.substr(0, step_));
  if (!idx) {
    return Rational(0);
  }
  Rational v = pi[*idx];
  std::size_t s = *idx;
  for (std::size_t i = step_; i < w.size(); ++i) {
    const MarkovEdge* e = nullptr;
    for (const auto& cand : edges_[s]) {
      if (cand.letter == w[i]) {
        e = &cand;
      }
    }
    if (!e) {
      return Rational(0);
    }
    if (!e->exact) {
      return std::nullopt;
    }
    v *= *e->exact;
    s = e->target;
  }
  return v;
}

double MarkovMeasure::entropy() const {
  double h = 0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    for (const auto& e : edges_[i]) {
      if (e.p > 0) {
        h -= pi_[i] * e.p * std::log(e.p);
      }
    }
  }
  return h;
}

namespace {

struct BlockChain {
  std::vector<Word> states;
  std::vector<std::vector<std::pair<Letter, std::size_t>>> out;
};

BlockChain block_chain(const Shift& x, std::size_t r) {
  BlockChain c;
  c.states = *x.language(r);
  auto ext = x.language(r + 1);
  c.out.resize(c.states.size());
  for (const auto& z : *ext) {
    Word u = z.substr(0, r);
    Word v = z.substr(1);
    auto i = std::lower_bound(c.states.begin(), c.states.end(), u) - c.states.begin();
    auto j = std::lower_bound(c.states.begin(), c.states.end(), v) - c.states.begin();
    c.out[static_cast<std::size_t>(i)].emplace_back(z.back(), static_cast<std::size_t>(j));
  }
  return c;
}

std::optional<std::vector<Rational>> solve_stationary_exact(
    const std::vector<std::vector<MarkovEdge>>& edges) {
  const std::size_t n = edges.size();
  // Rows: equations sum_i pi_i (P_ij - delta_ij) = 0 for j < n-1, and sum pi = 1.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] -= 1;
    for (const auto& e : edges[i]) {
      a[e.target][i] += *e.exact;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    a[n - 1][i] = 1;
  }
  a[n - 1][n] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) {
      ++piv;
    }
    if (piv == n) {
      return std::nullopt;
    }
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) {
        continue;
      }
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) {
        a[r][k] -= f * a[col][k];
      }
    }
  }
  std::vector<Rational> pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = a[i][n] / a[i][i];
  }
  return pi;
}

double stationarity_residual(const std::vector<std::vector<MarkovEdge>>& edges,
                             const std::vector<double>& pi) {
  std::vector<double> next(pi.size(), 0.0);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    for (const auto& e : edges[i]) {
      next[e.target] += pi[i] * e.p;
    }
  }
  double r = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    r = std::max(r, std::abs(next[i] - pi[i]));
  }
  return r;
}

}  // namespace

std::shared_ptr<const MarkovMeasure> parry_measure(std::shared_ptr<const Shift> shift) {
  if (shift->kind() != ShiftKind::sft) {
    semantic_error("the Parry measure is defined for shifts of finite type");
  }
  const auto& g = shift->block_graph();
  if (!g.irreducible) {
    semantic_error("the Parry measure requires an irreducible shift of finite type");
  }
  const std::size_t n = g.blocks.size();
  SparseRows adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto [a, j] : g.out[i]) {
      adj[i].emplace_back(j, 1.0);
    }
  }
  auto right = perron_vector(adj);
  auto left = perron_vector(transpose(adj, n));
  const double lambda = right.lambda;
  std::vector<std::vector<MarkovEdge>> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto [a, j] : g.out[i]) {
      edges[i].push_back({a, j, right.vector[j] / (lambda * right.vector[i]), std::nullopt});
    }
  }
  std::vector<double> pi(n);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = left.vector[i] * right.vector[i];
    total += pi[i];
  }
  for (auto& v : pi) {
    v /= total;
  }
  return std::make_shared<const MarkovMeasure>(shift, g.step, g.blocks, std::move(edges),
                                               std::move(pi), std::nullopt, "parry");
}

std::shared_ptr<const MarkovMeasure> markov_measure(std::shared_ptr<const Shift> shift,
                                                    const MarkovSpec& spec) {
  if (shift->kind() != ShiftKind::sft) {
    semantic_error("Markov measures are defined on shifts of finite type");
  }
  const auto& alphabet = shift->alphabet();
  const std::size_t r = spec.step;
  if (r < shift->block_graph().step) {
    semantic_error("Markov step must be at least the SFT step");
  }
  auto chain = block_chain(*shift, r);
  if (chain.states.empty()) {
    semantic_error("the shift is empty");
  }
  const std::size_t n = chain.states.size();
  for (const auto& [u, row] : spec.transitions) {
    if (!std::binary_search(chain.states.begin(), chain.states.end(), u)) {
      for (const auto& [a, p] : row) {
        if (p.value > 0) {
          semantic_error("transition row for block '" + alphabet.render(u) +
                         "' outside the support of the shift");
        }
      }
    }
  }
  std::vector<std::vector<MarkovEdge>> edges(n);
  bool all_exact = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Word& u = chain.states[i];
    auto row_it = spec.transitions.find(u);
    if (row_it == spec.transitions.end()) {
      semantic_error("support mismatch: no transition row for block '" + alphabet.render(u) + "'");
    }
    const auto& row = row_it->second;
    for (const auto& [a, p] : row) {
      bool allowed = std::any_of(chain.out[i].begin(), chain.out[i].end(),
                                 [a = a](const auto& e) { return e.first == a; });
      if (!allowed && p.value != 0) {
        semantic_error("support mismatch: positive probability on forbidden word '" +
                       alphabet.render(u + a) + "'");
      }
      if (p.value < 0) {
        semantic_error("negative transition probability");
      }
    }
    double sum = 0;
    Rational exact_sum = 0;
    for (auto [a, j] : chain.out[i]) {
      auto it = row.find(a);
      if (it == row.end() || it->second.value <= 0) {
        semantic_error("support mismatch: word '" + alphabet.render(u + a) +
                       "' is allowed but has zero probability");
      }
      edges[i].push_back({a, j, it->second.value, it->second.exact});
      sum += it->second.value;
      if (it->second.exact) {
        exact_sum += *it->second.exact;
      } else {
        all_exact = false;
      }
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      semantic_error("transition row for block '" + alphabet.render(u) + "' sums to " +
                     std::to_string(sum));
    }
    if (all_exact && exact_sum != 1) {
      semantic_error("transition row for block '" + alphabet.render(u) + "' sums to " +
                     to_string(exact_sum));
    }
  }

  std::vector<double> pi(n, 0.0);
  std::optional<std::vector<Rational>> pi_exact;
  if (spec.pi) {
    bool pi_all_exact = all_exact;
    std::vector<Rational> exact_values(n);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto it = spec.pi->find(chain.states[i]);
      if (it == spec.pi->end() || it->second.value <= 0) {
        semantic_error("support mismatch: stationary vector vanishes on block '" +
                       alphabet.render(chain.states[i]) + "'");
      }
      pi[i] = it->second.value;
      total += pi[i];
      if (it->second.exact) {
        exact_values[i] = *it->second.exact;
      } else {
        pi_all_exact = false;
      }
    }
    for (const auto& [u, p] : *spec.pi) {
      if (p.value > 0 && !std::binary_search(chain.states.begin(), chain.states.end(), u)) {
        semantic_error("stationary vector charges block '" + alphabet.render(u) +
                       "' outside the support");
      }
    }
    if (std::abs(total - 1.0) > 1e-9) {
      semantic_error("stationary vector sums to " + std::to_string(total));
    }
    if (stationarity_residual(edges, pi) > 1e-9) {
      semantic_error("supplied vector is not stationary for the transition matrix");
    }
    if (pi_all_exact) {
      pi_exact = exact_values;
    }
  } else if (all_exact && n <= 64) {
    pi_exact = solve_stationary_exact(edges);
    if (!pi_exact) {
      semantic_error("no unique stationary vector");
    }
    for (std::size_t i = 0; i < n; ++i) {
      pi[i] = to_double((*pi_exact)[i]);
    }
  } else {
    std::fill(pi.begin(), pi.end(), 1.0 / static_cast<double>(n));
    bool converged = false;
    for (std::size_t it = 0; it < 1000000 && !converged; ++it) {
      std::vector<double> next(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : edges[i]) {
          next[e.target] += pi[i] * e.p;
        }
      }
      double diff = 0;
      for (std::size_t i = 0; i < n; ++i) {
        diff = std::max(diff, std::abs(next[i] - pi[i]));
        pi[i] = 0.5 * (pi[i] + next[i]);
      }
      converged = diff <= 1e-13;
    }
    if (!converged) {
      semantic_error("no stationary vector: power iteration did not converge");
    }
    double total = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (auto& v : pi) {
      v /= total;
    }
  }
  return std::make_shared<const MarkovMeasure>(shift, r, chain.states, std::move(edges),
                                               std::move(pi), std::move(pi_exact), "markov");
}

// ---------------------------------------------------------- substitution

namespace {

constexpr std::uint64_t kHashMod = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kHashBase = 1000003;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kHashMod);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kHashMod ? s - kHashMod : s;
}

struct RollingHash {
  std::vector<std::uint64_t> prefix;
  std::vector<std::uint64_t> power;

  explicit RollingHash(const Word& x) : prefix(x.size() + 1, 0), power(x.size() + 1, 1) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::uint64_t h = mulmod(prefix[i], kHashBase) + static_cast<std::uint64_t>(x[i]) + 1;
      prefix[i + 1] = h >= kHashMod ? h - kHashMod : h;
      power[i + 1] = mulmod(power[i], kHashBase);
    }
  }

  std::uint64_t window(std::size_t p, std::size_t n) const {
    std::uint64_t sub = mulmod(prefix[p], power[n]);
    return prefix[p + n] >= sub ? prefix[p + n] - sub : prefix[p + n] + kHashMod - sub;
  }
};

}  // namespace

SubstitutionMeasure::SubstitutionMeasure(std::shared_ptr<const Shift> shift)
    : CylinderMeasure(std::move(shift)) {
  if (this->shift().kind() != ShiftKind::substitution) {
    semantic_error("substitution measure requires a substitution shift");
  }
}

double SubstitutionMeasure::lambda() const {
  const auto& images = shift().spec().substitution().images;
  const std::size_t k = shift().alphabet().size();
  auto inc = incidence_matrix(images, k);
  SparseRows m(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (inc[a][b]) {
        m[a].emplace_back(b, static_cast<double>(inc[a][b]));
      }
    }
  }
  return perron_vector(m).lambda;
}

std::shared_ptr<const std::vector<double>> SubstitutionMeasure::frequencies(std::size_t n) const {
  {
    std::lock_guard lock(mutex_);
    auto it = freq_.find(n);
    if (it != freq_.end()) {
      return it->second;
    }
  }
  auto lang = shift().language(n);
  std::vector<double> result;
  if (lang->size() <= 1) {
    result.assign(lang->size(), 1.0);
  } else {
    const auto& images = shift().spec().substitution().images;
    std::unordered_map<Word, std::size_t> index;
    for (std::size_t i = 0; i < lang->size(); ++i) {
      index.emplace((*lang)[i], i);
    }
    SparseRows m(lang->size());
    for (std::size_t i = 0; i < lang->size(); ++i) {
      const Word& w = (*lang)[i];
      Word img = apply_substitution(images, w);
      const std::size_t first = images[w[0]].size();
      for (std::size_t t = 0; t < first; ++t) {
        auto it = index.find(img.substr(t, n));
        ensure(it != index.end(), "induced block substitution leaves the language");
        m[it->second].emplace_back(i, 1.0);
      }
    }
    result = perron_vector(m).vector;
  }
  auto ptr = std::make_shared<const std::vector<double>>(std::move(result));
  std::lock_guard lock(mutex_);
  return freq_.emplace(n, ptr).first->second;
}

std::shared_ptr<const WindowTable> SubstitutionMeasure::window_frequencies(std::size_t n) const {
  {
    std::lock_guard lock(mutex_);
    auto it = windows_.find(n);
    if (it != windows_.end()) {
      return it->second;
    }
  }
  auto table = compute_windows(n);
  std::lock_guard lock(mutex_);
  return windows_.emplace(n, table).first->second;
}

std::shared_ptr<const WindowTable> SubstitutionMeasure::compute_windows(std::size_t n) const {
  if (n == 0) {
    semantic_error("window length must be positive");
  }
  const Shift& x = shift();
  const auto& images = x.spec().substitution().images;
  const std::size_t k = x.alphabet().size();
  auto table = std::make_shared<WindowTable>();
  table->n = n;
  if (k == 1) {
    table->x = std::make_shared<const Word>(Word(n, 0));
    table->entries = {{0, 1.0}};
    return table;
  }
  auto [period, seed] = x.fixed_point_seed();
  std::size_t power = period;
  auto tau = substitution_power(images, power);
  auto shortest = [](const std::vector<Word>& ws) {
    std::size_t m = ws[0].size();
    for (const auto& w : ws) {
      m = std::min(m, w.size());
    }
    return m;
  };
  while (shortest(tau) < 2) {
    power += period;
    tau = substitution_power(images, power);
  }
  const std::size_t minlen = shortest(tau);
  const std::size_t m = 1 + (n - 1 + minlen - 1) / minlen;

  if (n <= 8 || m >= n) {
    auto lang = x.language(n);
    auto freqs = frequencies(n);
    std::size_t len = 16 * n + 4096;
    while (true) {
      Word prefix = x.fixed_point_prefix(len);
      std::unordered_map<Word, std::size_t> first;
      for (std::size_t p = 0; p + n <= prefix.size(); ++p) {
        first.emplace(prefix.substr(p, n), p);
      }
      bool all = true;
      std::vector<std::pair<std::size_t, double>> entries;
      for (std::size_t i = 0; i < lang->size() && all; ++i) {
        auto it = first.find((*lang)[i]);
        all = it != first.end();
        if (all) {
          entries.emplace_back(it->second, (*freqs)[i]);
        }
      }
      if (all) {
        std::sort(entries.begin(), entries.end());
        table->x = std::make_shared<const Word>(std::move(prefix));
        table->entries = std::move(entries);
        return table;
      }
      len *= 2;
      if (len > (std::size_t{1} << 28)) {
        internal_error("fixed point prefix too long while locating factors");
      }
    }
  }

  auto sub = window_frequencies(m);
  auto f1 = frequencies(1);
  double lambda_k = 0;
  for (std::size_t c = 0; c < k; ++c) {
    lambda_k += (*f1)[c] * static_cast<double>(tau[c].size());
  }
  std::size_t last = 0;
  for (const auto& e : sub->entries) {
    last = std::max(last, e.first);
  }
  std::size_t len = std::max(16 * n + 4096, sub->x->size());
  while (true) {
    Word prefix = x.fixed_point_prefix(len);
    std::vector<std::size_t> pos(last + 2, 0);
    for (std::size_t j = 0; j <= last; ++j) {
      pos[j + 1] = pos[j] + tau[prefix[j]].size();
    }
    bool fits = true;
    for (const auto& e : sub->entries) {
      fits = fits && pos[e.first] + tau[prefix[e.first]].size() - 1 + n <= prefix.size();
    }
    if (!fits) {
      len *= 2;
      if (len > (std::size_t{1} << 28)) {
        internal_error("fixed point prefix too long for window frequencies");
      }
      continue;
    }
    RollingHash hash(prefix);
    std::unordered_map<std::uint64_t, std::size_t> classes;
    std::vector<std::pair<std::size_t, double>> entries;
    for (const auto& [j, f] : sub->entries) {
      for (std::size_t t = 0; t < tau[prefix[j]].size(); ++t) {
        const std::size_t q = pos[j] + t;
        auto [it, inserted] = classes.emplace(hash.window(q, n), entries.size());
        if (inserted) {
          entries.emplace_back(q, f);
        } else {
          auto& entry = entries[it->second];
          ensure(prefix.compare(q, n, prefix, entry.first, n) == 0, "window hash collision");
          entry.first = std::min(entry.first, q);
          entry.second += f;
        }
      }
    }
    for (auto& e : entries) {
      e.second /= lambda_k;
    }
    std::sort(entries.begin(), entries.end());
    table->x = std::make_shared<const Word>(std::move(prefix));
    table->entries = std::move(entries);
    return table;
  }
}

double SubstitutionMeasure::value(const Word& w) const {
  if (w.empty()) {
    return 1.0;
  }
  if (w.size() <= 64) {
    auto lang = shift().language(w.size());
    auto it = std::lower_bound(lang->begin(), lang->end(), w);
    if (it == lang->end() || *it != w) {
      return 0.0;
    }
    return (*frequencies(w.size()))[static_cast<std::size_t>(it - lang->begin())];
  }
  auto table = window_frequencies(w.size());
  for (const auto& [p, f] : table->entries) {
    if (table->x->compare(p, w.size(), w) == 0) {
      return f;
    }
  }
  return 0.0;
}

std::optional<Rational> SubstitutionMeasure::exact(const Word& w) const {
  if (w.empty()) {
    return Rational(1);
  }
  if (!shift().contains(w)) {
    return Rational(0);
  }
  if (shift().alphabet().size() == 1) {
    return Rational(1);
  }
  return std::nullopt;
}

// -------------------------------------------------------------- periodic

PeriodicMeasure::PeriodicMeasure(std::shared_ptr<const Shift> shift)
    : CylinderMeasure(std::move(shift)) {
  if (this->shift().kind() != ShiftKind::periodic) {
    semantic_error("periodic measure requires a periodic shift");
  }
}

std::optional<Rational> PeriodicMeasure::exact(const Word& w) const {
  const Word& p = shift().spec().periodic().word;
  Word text;
  while (text.size() < p.size() + w.size()) {
    text += p;
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    hits += text.compare(i, w.size(), w) == 0;
  }
  return Rational(static_cast<long long>(hits)) / Rational(static_cast<long long>(p.size()));
}

std::shared_ptr<const SubstitutionMeasure> substitution_measure(std::shared_ptr<const Shift> shift) {
  return std::make_shared<const SubstitutionMeasure>(std::move(shift));
}

std::shared_ptr<const PeriodicMeasure> periodic_measure(std::shared_ptr<const Shift> shift) {
  return std::make_shared<const PeriodicMeasure>(std::move(shift));
}

std::shared_ptr<const CylinderMeasure> default_measure(std::shared_ptr<const Shift> shift) {
  switch (shift->kind()) {
    case ShiftKind::sft:
      return parry_measure(std::move(shift));
    case ShiftKind::substitution:
      return substitution_measure(std::move(shift));
    case ShiftKind::periodic:
      return periodic_measure(std::move(shift));
  }
  internal_error("unknown shift kind");
}

}  // namespace skewdens
