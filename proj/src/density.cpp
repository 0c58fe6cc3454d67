#include "skewdens/density.hpp"

#include <algorithm>
#include <cmath>

#include "skewdens/cobounding.hpp"
#include "skewdens/error.hpp"
#include "skewdens/skew.hpp"

namespace skewdens {

namespace {

// Neumaier compensated sum.
class Accumulator {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

private:
  double sum_ = 0;
  double c_ = 0;
};

using Table = std::vector<std::vector<double>>;
using ExactTable = std::vector<std::vector<Rational>>;

SliceDistribution markov_slices(const MarkovMeasure& mu, const GroupMorphism& phi,
                                std::size_t n) {
  const FiniteGroup& g = phi.group();
  const std::size_t order = g.order();
  const auto& states = mu.states();
  const auto& edges = mu.edges();
  const std::size_t r = mu.step();

  bool rational = mu.pi_exact().has_value() && n <= kMaxExactMarkovHorizon;
  for (const auto& row : edges) {
    for (const auto& e : row) {
      rational = rational && e.exact.has_value();
    }
  }

  SliceDistribution out;
  out.method = "markov-dp";
  out.mass.assign(n + 1, std::vector<double>(order, 0.0));
  ExactTable exact;
  if (rational) {
    exact.assign(n + 1, std::vector<Rational>(order, Rational(0)));
  }
  // Lengths below the step are marginals of π.
  for (std::size_t i = 0; i <= std::min(n, r); ++i) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      const Element e = phi.apply(states[s], 0, i);
      out.mass[i][e] += mu.pi()[s];
      if (rational) {
        exact[i][e] += (*mu.pi_exact())[s];
      }
    }
  }
  if (n > r) {
    Table cur(states.size(), std::vector<double>(order, 0.0));
    ExactTable cur_exact;
    if (rational) {
      cur_exact.assign(states.size(), std::vector<Rational>(order, Rational(0)));
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
      const Element e = phi(states[s]);
      cur[s][e] = mu.pi()[s];
      if (rational) {
        cur_exact[s][e] = (*mu.pi_exact())[s];
      }
    }
    for (std::size_t i = r + 1; i <= n; ++i) {
      Table next(states.size(), std::vector<double>(order, 0.0));
      ExactTable next_exact;
      if (rational) {
        next_exact.assign(states.size(), std::vector<Rational>(order, Rational(0)));
      }
      for (std::size_t s = 0; s < states.size(); ++s) {
        for (const auto& e : edges[s]) {
          const Element step = phi.image(e.letter);
          for (Element h = 0; h < order; ++h) {
            if (cur[s][h] != 0) {
              next[e.target][g.mul(h, step)] += cur[s][h] * e.p;
            }
            if (rational && cur_exact[s][h] != 0) {
              next_exact[e.target][g.mul(h, step)] += cur_exact[s][h] * *e.exact;
            }
          }
        }
      }
      cur = std::move(next);
      cur_exact = std::move(next_exact);
      for (std::size_t s = 0; s < states.size(); ++s) {
        for (Element h = 0; h < order; ++h) {
          out.mass[i][h] += cur[s][h];
          if (rational) {
            exact[i][h] += cur_exact[s][h];
          }
        }
      }
    }
  }
  if (rational) {
    out.exact = std::move(exact);
  }
  return out;
}

SliceDistribution periodic_slices(const Shift& x, const GroupMorphism& phi, std::size_t n) {
  const FiniteGroup& g = phi.group();
  const Word& p = x.spec().periodic().word;
  const std::size_t period = p.size();
  SliceDistribution out;
  out.method = "periodic-exact";
  std::vector<std::vector<std::size_t>> counts(n + 1, std::vector<std::size_t>(g.order(), 0));
  for (std::size_t start = 0; start < period; ++start) {
    Element e = g.identity();
    counts[0][e] += 1;
    for (std::size_t i = 1; i <= n; ++i) {
      e = g.mul(e, phi.image(p[(start + i - 1) % period]));
      counts[i][e] += 1;
    }
  }
  out.mass.assign(n + 1, std::vector<double>(g.order(), 0.0));
  ExactTable exact(n + 1, std::vector<Rational>(g.order(), Rational(0)));
  const Rational per(static_cast<long long>(period));
  for (std::size_t i = 0; i <= n; ++i) {
    for (Element h = 0; h < g.order(); ++h) {
      if (counts[i][h] != 0) {
        exact[i][h] = Rational(static_cast<long long>(counts[i][h])) / per;
        out.mass[i][h] = static_cast<double>(counts[i][h]) / static_cast<double>(period);
      }
    }
  }
  out.exact = std::move(exact);
  return out;
}

SliceDistribution substitution_slices(const SubstitutionMeasure& mu, const GroupMorphism& phi,
                                      std::size_t n) {
  const FiniteGroup& g = phi.group();
  SliceDistribution out;
  out.method = "substitution-windows";
  const std::size_t order = g.order();
  std::vector<std::vector<Accumulator>> acc(n + 1, std::vector<Accumulator>(order));
  acc[0][g.identity()].add(1.0);
  if (n > 0) {
    const auto table = mu.window_frequencies(n);
    const Word& x = *table->x;
    for (const auto& [pos, freq] : table->entries) {
      Element e = g.identity();
      for (std::size_t i = 1; i <= n; ++i) {
        e = g.mul(e, phi.image(x[pos + i - 1]));
        acc[i][e].add(freq);
      }
    }
  }
  out.mass.assign(n + 1, std::vector<double>(order, 0.0));
  for (std::size_t i = 0; i <= n; ++i) {
    for (Element h = 0; h < order; ++h) {
      out.mass[i][h] = acc[i][h].value();
    }
  }
  if (mu.shift().alphabet().size() == 1) {
    out.exact = ExactTable(n + 1, std::vector<Rational>(order, Rational(0)));
    for (std::size_t i = 0; i <= n; ++i) {
      (*out.exact)[i][phi(Word(i, 0))] = 1;
    }
  }
  return out;
}

SliceDistribution enumerated_slices(const CylinderMeasure& mu, const GroupMorphism& phi,
                                    std::size_t n) {
  const FiniteGroup& g = phi.group();
  SliceDistribution out;
  out.method = "enumeration";
  out.mass.assign(n + 1, std::vector<double>(g.order(), 0.0));
  for (std::size_t i = 0; i <= n; ++i) {
    const auto words = mu.shift().language(i);
    const auto dist = mu.distribution(i);
    for (std::size_t j = 0; j < words->size(); ++j) {
      out.mass[i][phi((*words)[j])] += dist[j];
    }
  }
  return out;
}

}  // namespace

DensityQuery make_query(std::shared_ptr<const Shift> shift,
                        std::shared_ptr<const CylinderMeasure> measure, GroupMorphism phi,
                        std::vector<Element> k) {
  if (!shift) {
    semantic_error("density query without a shift");
  }
  if (!measure) {
    measure = default_measure(shift);
  }
  if (!(measure->shift().spec() == shift->spec())) {
    semantic_error("the measure lives on a different shift");
  }
  if (!(phi.alphabet() == shift->alphabet())) {
    semantic_error("morphism alphabet differs from the shift alphabet");
  }
  if (k.empty()) {
    semantic_error("target set K is empty");
  }
  for (Element e : k) {
    if (e >= phi.group().order()) {
      semantic_error("target element " + std::to_string(e) + " is not in the group");
    }
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return DensityQuery{std::move(shift), std::move(measure), std::move(phi), std::move(k)};
}

SliceDistribution slice_distribution(const CylinderMeasure& mu, const GroupMorphism& phi,
                                     std::size_t n) {
  if (n > kMaxHorizon) {
    semantic_error("horizon " + std::to_string(n) + " exceeds the cap " +
                   std::to_string(kMaxHorizon));
  }
  if (const auto* markov = dynamic_cast<const MarkovMeasure*>(&mu)) {
    return markov_slices(*markov, phi, n);
  }
  if (dynamic_cast<const PeriodicMeasure*>(&mu) != nullptr) {
    return periodic_slices(mu.shift(), phi, n);
  }
  if (const auto* subst = dynamic_cast<const SubstitutionMeasure*>(&mu)) {
    if (n > kMaxSubstitutionHorizon) {
      semantic_error("horizon " + std::to_string(n) + " exceeds the substitution cap " +
                     std::to_string(kMaxSubstitutionHorizon));
    }
    return substitution_slices(*subst, phi, n);
  }
  if (n > 24) {
    semantic_error("horizon too long for enumeration of a generic measure");
  }
  return enumerated_slices(mu, phi, n);
}

SliceSeries restrict_to(const SliceDistribution& d, const std::vector<Element>& k) {
  SliceSeries out;
  out.method = d.method;
  out.values.reserve(d.mass.size());
  for (const auto& row : d.mass) {
    double v = 0;
    for (Element e : k) {
      v += row[e];
    }
    out.values.push_back(std::clamp(v, 0.0, 1.0));
  }
  if (d.exact) {
    std::vector<Rational> ex;
    for (const auto& row : *d.exact) {
      Rational v = 0;
      for (Element e : k) {
        v += row[e];
      }
      ex.push_back(v);
    }
    out.exact = std::move(ex);
  }
  return out;
}

SliceSeries slice_series(const DensityQuery& q, std::size_t n) {
  return restrict_to(slice_distribution(*q.measure, q.phi, n), q.k);
}

double slice_measure(const DensityQuery& q, std::size_t i) { return slice_series(q, i).values[i]; }

CesaroEstimate cesaro_from(const SliceSeries& s, std::size_t horizon) {
  if (horizon == 0) {
    semantic_error("Cesàro horizon must be at least 1");
  }
  ensure(s.values.size() >= horizon, "slice series shorter than the horizon");
  CesaroEstimate out;
  out.horizon = horizon;
  Accumulator acc;
  const std::size_t from = horizon - horizon / 4;
  out.window_min = 1;
  out.window_max = 0;
  for (std::size_t i = 0; i < horizon; ++i) {
    acc.add(s.values[i]);
    const std::size_t count = i + 1;
    if (count >= from) {
      const double avg = acc.value() / static_cast<double>(count);
      out.window_min = std::min(out.window_min, avg);
      out.window_max = std::max(out.window_max, avg);
    }
  }
  out.value = acc.value() / static_cast<double>(horizon);
  if (s.exact) {
    Rational total = 0;
    for (std::size_t i = 0; i < horizon; ++i) {
      total += (*s.exact)[i];
    }
    out.exact = total / Rational(static_cast<long long>(horizon));
  }
  return out;
}

CesaroEstimate cesaro_density(const DensityQuery& q, std::size_t horizon) {
  if (horizon == 0) {
    semantic_error("Cesàro horizon must be at least 1");
  }
  return cesaro_from(slice_series(q, horizon - 1), horizon);
}

ExactDensity exact_density(const DensityQuery& q, const ExactOptions& options) {
  ExactDensity out;
  const Shift& x = *q.shift;
  const GroupMorphism& phi = q.phi;
  const FiniteGroup& g = phi.group();

  if (x.kind() == ShiftKind::sft) {
    if (!x.is_irreducible()) {
      out.reason = "reducible shift of finite type";
      return out;
    }
    if (!phi_irreducible(x, phi)) {
      out.reason = "the shift is not φ-irreducible, so the skew product is not ergodic";
      return out;
    }
    // φ-irreducibility makes the skew product over the image group ergodic.
    const Subgroup image = phi.image_subgroup();
    long long hits = 0;
    for (Element e : q.k) {
      hits += image.contains(e) ? 1 : 0;
    }
    out.route = "ergodic-formula";
    out.exact = Rational(hits) / Rational(static_cast<long long>(image.order()));
    out.value = to_double(*out.exact);
    out.subgroup_order = image.order();
    out.components = 1;
    out.reason = "φ-irreducible shift of finite type with a Markov measure";
    if (image.order() != g.order()) {
      out.warnings.push_back("morphism is not onto; densities are relative to its image");
    }
    return out;
  }

  const MinimalDecomposition dec =
      minimal_decomposition(q.shift, phi, options.max_len, options.window_cap);
  out.warnings = dec.warnings;
  if (!dec.found) {
    out.reason = "no cobounding map up to cylinder length " + std::to_string(options.max_len);
    return out;
  }
  out.subgroup_order = dec.h.order();
  out.components = dec.count;
  const CoboundingMap& alpha = dec.map;
  const auto masses = coset_masses(alpha, *q.measure);
  auto masses_exact = coset_masses_exact(alpha, *q.measure);
  if (!masses_exact && alpha.cosets.count() == 1) {
    masses_exact = std::vector<Rational>{Rational(1)};
  }
  double value = 0;
  Rational exact = 0;
  for (Element k : q.k) {
    for (std::size_t c = 0; c < alpha.cosets.count(); ++c) {
      const std::size_t d = alpha.cosets.act(g, c, k);
      value += masses[c] * masses[d];
      if (masses_exact) {
        exact += (*masses_exact)[c] * (*masses_exact)[d];
      }
    }
  }
  const auto h_order = static_cast<long long>(dec.h.order());
  out.value = value / static_cast<double>(h_order);
  if (masses_exact) {
    out.exact = exact / Rational(h_order);
    out.value = to_double(*out.exact);
  }
  if (dec.ergodicity == "none") {
    out.route = "conditional-cobounding-formula";
    out.reason = "ergodicity certificate absent on the minimal subsets";
    out.warnings.push_back("ergodicity certificate absent; the formula value is conditional");
  } else {
    out.route = dec.h.order() == g.order() ? "ergodic-formula" : "cobounding-formula";
    out.reason = "ergodicity certificate: " + dec.ergodicity;
  }
  return out;
}

FibonacciProbe fibonacci_probe(std::size_t terms) {
  if (terms < 1 || terms > 5) {
    semantic_error("fibonacci_probe supports 1..5 terms");
  }
  const Alphabet ab = Alphabet::from_letters("ab");
  auto x = make_shift(ShiftSpec::make_substitution(ab, {ab.parse("ab"), ab.parse("a")}));
  auto z2 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  const DensityQuery q = make_query(x, nullptr, GroupMorphism(ab, z2, {1, 0}), {0});

  std::vector<std::size_t> fib{0, 1};
  while (fib.size() <= 4 * terms + 2) {
    fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  }
  const SliceSeries s = slice_series(q, fib[4 * terms + 2]);
  FibonacciProbe out;
  for (std::size_t n = 1; n <= terms; ++n) {
    out.rows.push_back({n, fib[4 * n], s.values[fib[4 * n]], fib[4 * n + 2],
                        s.values[fib[4 * n + 2]]});
  }
  out.increasing = true;
  out.decreasing = true;
  for (std::size_t i = 2; i < out.rows.size(); ++i) {
    out.increasing = out.increasing && out.rows[i].at_f4n > out.rows[i - 1].at_f4n;
    out.decreasing = out.decreasing && out.rows[i].at_f4n2 < out.rows[i - 1].at_f4n2;
  }
  for (std::size_t m = 2; m <= 4 * terms + 2; ++m) {
    out.by_index.emplace_back(m, s.values[fib[m]]);
  }
  out.residue_split = true;
  double last_high = 0;
  double last_low = 1;
  for (const auto& [m, v] : out.by_index) {
    if (m < 7) {
      continue;
    }
    if (m % 3 == 1) {
      out.residue_split = out.residue_split && v > last_high && v > 0.9;
      last_high = v;
    } else {
      out.residue_split = out.residue_split && v < 0.1 && (m % 3 != 2 || v < last_low);
      last_low = m % 3 == 2 ? v : last_low;
    }
  }
  return out;
}

ContfracDemo continued_fraction_demo(std::size_t modulus, std::size_t horizon) {
  if (modulus != 2) {
    semantic_error("the continued-fraction demo is implemented for modulus 2");
  }
  if (horizon < 1 || horizon > kMaxHorizon) {
    semantic_error("continued-fraction horizon out of range");
  }
  const Alphabet digits = Alphabet::from_letters("12");
  auto x = make_shift(
      ShiftSpec::make_substitution(digits, {digits.parse("12"), digits.parse("1")}));
  auto gl = std::make_shared<const FiniteGroup>(FiniteGroup::general_linear_2(2));
  const GroupMorphism phi(digits, gl,
                          {gl->parse_element("[[0,1],[1,1]]"), gl->parse_element("[[0,1],[1,0]]")});
  std::vector<Element> zero;
  std::vector<Element> one;
  for (Element e = 0; e < gl->order(); ++e) {
    (gl->matrix(e)[3] == 0 ? zero : one).push_back(e);
  }
  ContfracDemo out;
  out.modulus = modulus;
  out.horizon = horizon;
  out.zero = exact_density(make_query(x, nullptr, phi, zero));
  out.one = exact_density(make_query(x, nullptr, phi, one));

  const Word w = x->fixed_point_prefix(horizon);
  std::size_t q_prev = 0;  // q_{-1}
  std::size_t q_cur = 1;   // q_0
  std::size_t zeros = 0;
  for (std::size_t n = 0; n < horizon; ++n) {
    const std::size_t a = static_cast<std::size_t>(w[n]) + 1;
    const std::size_t q_next = (a * q_cur + q_prev) % modulus;
    q_prev = q_cur;
    q_cur = q_next;
    zeros += q_cur == 0 ? 1 : 0;
  }
  out.empirical_zero = static_cast<double>(zeros) / static_cast<double>(horizon);
  out.empirical_one = 1.0 - out.empirical_zero;
  return out;
}

}  // namespace skewdens
