#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewdens/algebra.hpp"
#include "skewdens/shifts.hpp"

namespace skewdens {

// G ⋊ X viewed as a shift over G × A; letter (g, a) has index g·|A| + a.
class SkewShift {
public:
  SkewShift(std::shared_ptr<const Shift> base, GroupMorphism phi);

  const Shift& base() const { return *base_; }
  std::shared_ptr<const Shift> base_ptr() const { return base_; }
  const GroupMorphism& morphism() const { return phi_; }
  const FiniteGroup& group() const { return phi_.group(); }
  const Alphabet& alphabet() const { return alphabet_; }  // labels "g:a"

  Letter letter(Element g, Letter a) const {
    return static_cast<Letter>(g * base_->alphabet().size() + a);
  }
  Element group_part(Letter s) const {
    return static_cast<Element>(s / base_->alphabet().size());
  }
  Letter base_part(Letter s) const { return static_cast<Letter>(s % base_->alphabet().size()); }

  Word project(const Word& w) const;
  // The skew word read from (g, w): g_{i+1} = g_i φ(w_i).
  Word lift(Element g, const Word& w) const;
  bool contains(const Word& w) const;
  // Lifts of L(X) ∩ A^n, sorted.
  std::vector<Word> language(std::size_t n) const;
  // The skew product as an SFT over G × A (base must be an SFT).
  ShiftSpec as_shift() const;

private:
  std::shared_ptr<const Shift> base_;
  GroupMorphism phi_;
  Alphabet alphabet_;
};

// Pair-graph test on (r-block, element) states. Throws for reducible SFTs.
bool phi_irreducible(const Shift& x, const GroupMorphism& phi);

struct FiberErgodicity {
  bool value = false;
  std::vector<Element> image;  // φ(L(X)), sorted
  std::string method;          // "block-graph" | "periodic-exact" | "substitution-closure"
};
FiberErgodicity fiber_ergodic(const Shift& x, const GroupMorphism& phi);

struct SiRelation {
  std::size_t step = 1;
  std::vector<std::vector<Word>> classes;  // sorted classes of r-blocks
  bool irreducible = false;
  bool strongly_irreducible = false;
};
SiRelation strongly_irreducible(const Shift& x);

// Morphism into Z/2Z failing φ-irreducibility, for a 1-step irreducible SFT
// that is not strongly irreducible; `cls` is one class of the relation.
GroupMorphism si_witness_morphism(const Shift& x, const std::vector<Letter>& cls);

// Irreducibility of the skew SFT, computed on the product graph.
bool skew_transitive(const Shift& x, const GroupMorphism& phi);

struct PrefixEvidence {
  std::size_t length = 0;
  Word u;
  std::size_t returns = 0;
  bool certified = false;
  Subgroup generated;  // ⟨φ(R(u))⟩
};

struct MinimalityResult {
  bool minimal = false;
  bool exact = false;          // false: semi-decision
  std::string certificate;     // how the answer was obtained
  std::vector<PrefixEvidence> evidence;
  std::vector<std::string> warnings;
};

// Returns-image evidence on prefixes of the fixed point, lengths 1..max_prefix.
std::vector<PrefixEvidence> prefix_evidence(const Shift& x, const GroupMorphism& phi,
                                            std::size_t max_prefix,
                                            std::size_t window_cap = kDefaultWindowCap);

MinimalityResult skew_minimal(std::shared_ptr<const Shift> x, const GroupMorphism& phi,
                              std::size_t max_len = 10,
                              std::size_t window_cap = kDefaultWindowCap);

struct WelldocWitness {
  std::vector<Element> values;  // sorted cocycle values at occurrences
  std::size_t occurrences = 0;
};
// Cocycle values φ(x[0,m)) at occurrences m <= scan of the prefix x[0,n).
WelldocWitness welldoc_witness(const Shift& x, const GroupMorphism& phi, std::size_t n,
                               std::size_t scan);

}  // namespace skewdens
