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

constexpr std::size_t kBifixLengthCap = 64;

// U = Z ∩ L(X) for the group code Z with Z* = φ^-1(H).
struct BifixCode {
  std::vector<Word> words;     // sorted
  std::vector<Word> prefixes;  // proper prefixes of U in L(X), including ε, sorted
  GroupMorphism phi;
  Subgroup h;
  std::size_t degree_bound = 0;     // [G:H]
  std::size_t complete_length = 0;  // every word of this length has a prefix in U
  bool prefix_code = false;
  bool suffix_code = false;
  bool suffix_complete = false;

  std::size_t max_length() const;
};

BifixCode bifix_code(const Shift& x, const GroupMorphism& phi, const Subgroup& h,
                     std::size_t cap = kBifixLengthCap);

struct ParseData {
  Word word;
  std::size_t suffixes_in_p = 0;
  std::size_t degree = 0;
};

// Number of suffixes of u (ε included) without a nonempty prefix mapping into H.
ParseData z_degree(const GroupMorphism& phi, const Subgroup& h, const Word& u);

struct XDegree {
  std::size_t degree = 0;
  std::size_t length = 0;  // length at which the maximum was certified
  Word witness;            // first word of that length reaching the maximum
};
XDegree x_degree(const Shift& x, const BifixCode& code);

struct AverageLength {
  double by_words = 0;     // Σ |u| μ(u)
  double by_prefixes = 0;  // Σ_{w ∈ P} μ(w)
  double difference = 0;
  std::optional<Rational> exact;
};
AverageLength average_length(const BifixCode& code, const CylinderMeasure& mu);

struct DegreeReport {
  bool checked = false;
  std::string reason;
  std::size_t group_order = 0;
  std::size_t degree = 0;
  double average = 0;
  bool degree_ok = false;
  bool length_ok = false;
};
// With H trivial and a minimal skew product, checks d_X(U) = |G| = ℓ(U).
DegreeReport degree_surjectivity_check(std::shared_ptr<const Shift> x, const GroupMorphism& phi,
                                       const CylinderMeasure& mu);

// The prefix tree of U, one node per line, U-words marked with '*'.
std::string render_parse_tree(const Alphabet& alphabet, const BifixCode& code);

}  // namespace skewdens
