#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewdens/algebra.hpp"
#include "skewdens/measures.hpp"
#include "skewdens/shifts.hpp"
#include "skewdens/skew.hpp"

namespace skewdens {

// A continuous map X -> H\G constant on cylinders of a fixed length with
// α(Sx) = α(x)·φ(x_0).
struct CoboundingMap {
  Subgroup h;
  RightCosets cosets;
  std::size_t length = 0;
  std::vector<Word> cylinders;        // L(X) ∩ A^length, sorted
  std::vector<std::size_t> assignment;  // coset index per cylinder

  std::size_t value(const Word& w) const;  // w of length >= length
  // Smallest element of the assigned coset, per cylinder.
  std::vector<Element> representatives() const;
};

std::optional<CoboundingMap> find_cobounding(const Shift& x, const GroupMorphism& phi,
                                             const Subgroup& h, std::size_t max_len);

struct CoboundingCheck {
  bool ok = true;
  std::vector<Word> violations;  // words of length ℓ+1 breaking the equation
};
CoboundingCheck verify_cobounding(const Shift& x, const GroupMorphism& phi,
                                  const CoboundingMap& alpha);

// g·α, a cobounding map mod gHg^-1.
CoboundingMap left_translate(const FiniteGroup& g, const CoboundingMap& alpha, Element by);

std::vector<double> coset_masses(const CoboundingMap& alpha, const CylinderMeasure& mu);
std::optional<std::vector<Rational>> coset_masses_exact(const CoboundingMap& alpha,
                                                        const CylinderMeasure& mu);
double measure_of_y_alpha(const FiniteGroup& g, const CoboundingMap& alpha,
                          const std::vector<double>& masses);

struct MinimalDecomposition {
  bool found = false;
  Subgroup h;                        // modulus of `map`
  Subgroup canonical;                // canonical conjugacy representative of h
  std::size_t count = 0;             // [G:H]
  CoboundingMap map;
  std::vector<CoboundingMap> orbit;  // distinct left translates
  // "exact" or "semi"; how the minimality of `map` was checked.
  std::string minimality = "semi";
  std::string minimality_route;
  // "mod1" | "skew-substitution" | "periodic" | "none"
  std::string ergodicity = "none";
  std::optional<std::size_t> skew_components;
  std::vector<PrefixEvidence> evidence;
  std::vector<std::string> warnings;
};

MinimalDecomposition minimal_decomposition(std::shared_ptr<const Shift> x,
                                           const GroupMorphism& phi, std::size_t max_len = 10,
                                           std::size_t window_cap = kDefaultWindowCap);

// Canonical representative of the modulus of the minimal cobounding maps.
Subgroup minimal_subgroup(std::shared_ptr<const Shift> x, const GroupMorphism& phi,
                          std::size_t max_len = 10);

}  // namespace skewdens
