#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewdens/algebra.hpp"
#include "skewdens/measures.hpp"
#include "skewdens/rational.hpp"
#include "skewdens/shifts.hpp"

namespace skewdens {

// The language L = φ^-1(K) measured inside X under μ.
struct DensityQuery {
  std::shared_ptr<const Shift> shift;
  std::shared_ptr<const CylinderMeasure> measure;
  GroupMorphism phi;
  std::vector<Element> k;  // sorted, distinct
};

// Validates K against G and the measure against the shift.
DensityQuery make_query(std::shared_ptr<const Shift> shift,
                        std::shared_ptr<const CylinderMeasure> measure, GroupMorphism phi,
                        std::vector<Element> k);

constexpr std::size_t kMaxHorizon = 200000;
constexpr std::size_t kMaxSubstitutionHorizon = 20000;
constexpr std::size_t kMaxExactMarkovHorizon = 256;

// mass[i][g] = μ{w ∈ L(X) ∩ A^i : φ(w) = g}, for i = 0..n.
struct SliceDistribution {
  std::vector<std::vector<double>> mass;
  std::optional<std::vector<std::vector<Rational>>> exact;
  std::string method;  // "markov-dp" | "periodic-exact" | "substitution-windows" | "enumeration"
};
SliceDistribution slice_distribution(const CylinderMeasure& mu, const GroupMorphism& phi,
                                     std::size_t n);

struct SliceSeries {
  std::vector<double> values;  // μ(L ∩ A^i), i = 0..n
  std::optional<std::vector<Rational>> exact;
  std::string method;
};
SliceSeries slice_series(const DensityQuery& q, std::size_t n);
SliceSeries restrict_to(const SliceDistribution& d, const std::vector<Element>& k);
double slice_measure(const DensityQuery& q, std::size_t i);

struct CesaroEstimate {
  std::size_t horizon = 0;
  double value = 0;
  std::optional<Rational> exact;
  // Extremes of the running average over the last quarter of the horizon.
  double window_min = 0;
  double window_max = 0;
};
CesaroEstimate cesaro_density(const DensityQuery& q, std::size_t horizon);
CesaroEstimate cesaro_from(const SliceSeries& s, std::size_t horizon);

struct ExactDensity {
  // "ergodic-formula" | "cobounding-formula" | "conditional-cobounding-formula" | "unavailable"
  std::string route = "unavailable";
  std::optional<double> value;
  std::optional<Rational> exact;
  std::string reason;
  std::size_t subgroup_order = 0;
  std::size_t components = 0;
  std::vector<std::string> warnings;
};

struct ExactOptions {
  std::size_t max_len = 10;
  std::size_t window_cap = kDefaultWindowCap;
};
ExactDensity exact_density(const DensityQuery& q, const ExactOptions& options = {});

struct ProbeRow {
  std::size_t n = 0;
  std::size_t f4n = 0;
  double at_f4n = 0;
  std::size_t f4n2 = 0;
  double at_f4n2 = 0;
};
struct FibonacciProbe {
  std::vector<ProbeRow> rows;
  bool increasing = false;  // F(4n) column, from n = 2 on
  bool decreasing = false;  // F(4n+2) column, from n = 2 on
  // (m, μ(L ∩ A^F(m))) for m = 2..4·terms+2.
  std::vector<std::pair<std::size_t, double>> by_index;
  // Along m ≡ 1 mod 3 the values rise towards 1, elsewhere they fall towards 0
  // (checked from m = 7 on).
  bool residue_split = false;
};
// Fibonacci shift, φ(a) = 1, φ(b) = 0 in Z/2Z, K = {0}.
FibonacciProbe fibonacci_probe(std::size_t terms = 4);

struct ContfracDemo {
  std::size_t modulus = 2;
  std::size_t horizon = 0;
  ExactDensity zero;  // lower-right entry 0
  ExactDensity one;
  double empirical_zero = 0;
  double empirical_one = 0;
};
// Partial quotients along the Fibonacci word over {1, 2}; q_n mod 2 read off
// GL(2, Z/2Z) products of [[0,1],[1,x_n]].
ContfracDemo continued_fraction_demo(std::size_t modulus = 2, std::size_t horizon = 10000);

}  // namespace skewdens
