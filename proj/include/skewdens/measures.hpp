#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "skewdens/rational.hpp"
#include "skewdens/shifts.hpp"

namespace skewdens {

// Sparse nonnegative matrix by rows: rows[i] = {(j, m_ij)}.
using SparseRows = std::vector<std::vector<std::pair<std::size_t, double>>>;

struct PerronResult {
  double lambda = 0;
  std::vector<double> vector;  // nonnegative, sums to 1
  std::size_t iterations = 0;
  double residual = 0;
};

// Right Perron vector of an irreducible nonnegative matrix by power iteration on M + I.
PerronResult perron_vector(const SparseRows& m, double tol = 1e-13,
                           std::size_t max_iterations = 1000000);
SparseRows transpose(const SparseRows& m, std::size_t columns);

class CylinderMeasure {
public:
  explicit CylinderMeasure(std::shared_ptr<const Shift> shift) : shift_(std::move(shift)) {}
  virtual ~CylinderMeasure() = default;

  const Shift& shift() const { return *shift_; }
  std::shared_ptr<const Shift> shift_ptr() const { return shift_; }

  virtual std::string backend() const = 0;
  virtual double value(const Word& w) const = 0;
  // Exact value when the backend is rational.
  virtual std::optional<Rational> exact(const Word& /*w*/) const { return std::nullopt; }
  // mu over language(n), in language order.
  virtual std::vector<double> distribution(std::size_t n) const;

private:
  std::shared_ptr<const Shift> shift_;
};

struct Probability {
  double value = 0;
  std::optional<Rational> exact;
};

struct MarkovSpec {
  std::size_t step = 1;
  std::map<Word, std::map<Letter, Probability>> transitions;  // r-block -> letter -> P
  std::optional<std::map<Word, Probability>> pi;
};

struct MarkovEdge {
  Letter letter = 0;
  std::size_t target = 0;  // state index of (u a)[1..]
  double p = 0;
  std::optional<Rational> exact;
};

class MarkovMeasure : public CylinderMeasure {
public:
  MarkovMeasure(std::shared_ptr<const Shift> shift, std::size_t step, std::vector<Word> states,
                std::vector<std::vector<MarkovEdge>> edges, std::vector<double> pi,
                std::optional<std::vector<Rational>> pi_exact, std::string backend);

  std::string backend() const override { return backend_; }
  double value(const Word& w) const override;
  std::optional<Rational> exact(const Word& w) const override;

  std::size_t step() const { return step_; }
  const std::vector<Word>& states() const { return states_; }
  const std::vector<std::vector<MarkovEdge>>& edges() const { return edges_; }
  const std::vector<double>& pi() const { return pi_; }
  const std::optional<std::vector<Rational>>& pi_exact() const { return pi_exact_; }
  std::optional<std::size_t> state_index(const Word& u) const;
  double entropy() const;

private:
  std::size_t step_;
  std::vector<Word> states_;
  std::vector<std::vector<MarkovEdge>> edges_;
  std::vector<double> pi_;
  std::optional<std::vector<Rational>> pi_exact_;
  std::string backend_;
};

// A length-n frequency table for long windows: each class of L(X) ∩ A^n is
// represented by a position in a prefix x of the fixed point.
struct WindowTable {
  std::size_t n = 0;
  std::shared_ptr<const Word> x;
  std::vector<std::pair<std::size_t, double>> entries;  // (position, frequency), by position
};

class SubstitutionMeasure : public CylinderMeasure {
public:
  explicit SubstitutionMeasure(std::shared_ptr<const Shift> shift);

  std::string backend() const override { return "substitution-perron"; }
  double value(const Word& w) const override;
  std::optional<Rational> exact(const Word& w) const override;
  std::vector<double> distribution(std::size_t n) const override { return *frequencies(n); }

  // Frequencies over language(n) from the induced n-block substitution.
  std::shared_ptr<const std::vector<double>> frequencies(std::size_t n) const;
  // Perron eigenvalue of the substitution.
  double lambda() const;
  std::shared_ptr<const WindowTable> window_frequencies(std::size_t n) const;

private:
  std::shared_ptr<const WindowTable> compute_windows(std::size_t n) const;

  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const std::vector<double>>> freq_;
  mutable std::map<std::size_t, std::shared_ptr<const WindowTable>> windows_;
};

class PeriodicMeasure : public CylinderMeasure {
public:
  explicit PeriodicMeasure(std::shared_ptr<const Shift> shift);

  std::string backend() const override { return "periodic-counting"; }
  double value(const Word& w) const override { return to_double(*exact(w)); }
  std::optional<Rational> exact(const Word& w) const override;
};

std::shared_ptr<const MarkovMeasure> parry_measure(std::shared_ptr<const Shift> shift);
std::shared_ptr<const MarkovMeasure> markov_measure(std::shared_ptr<const Shift> shift,
                                                    const MarkovSpec& spec);
std::shared_ptr<const SubstitutionMeasure> substitution_measure(std::shared_ptr<const Shift> shift);
std::shared_ptr<const PeriodicMeasure> periodic_measure(std::shared_ptr<const Shift> shift);
// Parry for SFTs, the unique invariant measure otherwise.
std::shared_ptr<const CylinderMeasure> default_measure(std::shared_ptr<const Shift> shift);

}  // namespace skewdens
