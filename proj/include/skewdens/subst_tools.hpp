#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "skewdens/algebra.hpp"
#include "skewdens/shifts.hpp"

namespace skewdens {

struct InvertibilityOrder {
  std::optional<std::size_t> order;  // least n with φ∘σ^n = φ
  std::size_t cap = 0;
  // True when the orbit of φ under σ_* closed up without meeting φ, so no n exists.
  bool definitive = false;
};

// cap = 0 selects |G|^|A| (clamped to 10^6).
InvertibilityOrder invertibility_order(const std::vector<Word>& images, const GroupMorphism& phi,
                                       std::size_t cap = 0);

struct SkewSubstitution {
  std::size_t power = 1;  // σ replaced by σ^power
  Alphabet alphabet;      // "g:a" letters, index g·|A| + a
  std::vector<Word> images;
  std::vector<std::vector<Letter>> components;  // sorted letter sets
  std::vector<bool> primitive;                  // per component
};

SkewSubstitution skew_substitution(const Shift& x, const GroupMorphism& phi, std::size_t cap = 0);

// Reduced words of the free group on A: letter a is a+1, its inverse -(a+1).
using FreeWord = std::vector<int>;

FreeWord free_word(const Word& w);
FreeWord free_reduce(const FreeWord& w);
FreeWord free_inverse(const FreeWord& w);
FreeWord free_concat(const FreeWord& a, const FreeWord& b);
std::string render_free(const Alphabet& alphabet, const FreeWord& w);

struct StallingsGraph {
  std::size_t vertices = 1;  // vertex 0 is the base
  // (source, letter index, target), sorted
  std::vector<std::tuple<std::size_t, Letter, std::size_t>> edges;

  std::size_t rank() const { return edges.size() + 1 - vertices; }
  bool contains(const FreeWord& w) const;
  std::vector<FreeWord> basis() const;
  // True when the subgroup is the whole free group on `alphabet_size` letters.
  bool is_bouquet(std::size_t alphabet_size) const;
};

StallingsGraph stallings_subgroup(const std::vector<FreeWord>& generators);

enum class Tristate { no, yes, unknown };
std::string to_string(Tristate t);

struct FreeInvertibility {
  Tristate value = Tristate::unknown;
  std::string reason;
  long long abelian_determinant = 0;
  std::vector<FreeWord> inverse;  // images of the inverse automorphism, when found
};

FreeInvertibility free_group_invertible(const std::vector<Word>& images,
                                        std::size_t max_steps = 100000);

struct ReturnBasisReport {
  Word w;
  std::vector<Word> returns;
  bool certified = false;
  std::size_t rank = 0;
  bool basis = false;
  std::vector<FreeWord> folded_basis;
};

ReturnBasisReport return_basis_check(const Shift& x, const Word& w,
                                     std::size_t window_cap = kDefaultWindowCap);

}  // namespace skewdens
