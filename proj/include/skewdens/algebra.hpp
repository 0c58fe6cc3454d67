#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skewdens/word.hpp"

namespace skewdens {

using Element = std::uint32_t;

// One-line images on points 0..degree-1.
using Permutation = std::vector<std::uint32_t>;

constexpr std::size_t kMaxGroupOrder = 10000;

// Product convention: a*b means "apply a, then b", so (a*b)(i) = b(a(i)).
// Words map left to right and permutation groups act on the right.
class FiniteGroup {
public:
  enum class Kind { cyclic, permutation, table, product, matrix };

  // Closure of `generators` from the identity, breadth first, generators sorted.
  static FiniteGroup from_permutations(std::size_t degree, std::vector<Permutation> generators,
                                       Kind kind = Kind::permutation);
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup symmetric(std::size_t n);
  // Rows are left factors: table[a][b] = a*b.
  static FiniteGroup from_table(const std::vector<std::vector<std::size_t>>& table);
  static FiniteGroup direct_product(const std::vector<FiniteGroup>& factors);
  // GL(2, Z/mZ) acting on row vectors, so the product is the matrix product.
  static FiniteGroup general_linear_2(std::uint32_t m);

  std::size_t order() const { return elements_.size(); }
  Kind kind() const { return kind_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const;
  Element inv(Element a) const { return inverse_[a]; }
  Element conj(Element h, Element g) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  std::size_t element_order(Element a) const;

  const std::string& label(Element a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Element> find_label(std::string_view label) const;
  // Accepts a label, or for permutation-like groups cycle notation "(1 2)(3 4)".
  Element parse_element(std::string_view text) const;
  std::optional<Element> find_permutation(const Permutation& p) const;

  const Permutation& permutation(Element a) const { return elements_.at(a); }
  std::size_t degree() const { return degree_; }
  // For matrix groups: the entries (row-major) of element a.
  const std::vector<std::uint32_t>& matrix(Element a) const { return matrices_.at(a); }

  bool is_abelian() const;
  std::vector<Element> elements() const;

  // Exhaustive check of the group axioms (sampled for large orders).
  bool verify_axioms() const;

private:
  FiniteGroup() = default;
  void finish();

  Kind kind_ = Kind::permutation;
  Element identity_ = 0;
  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<std::string> labels_;
  std::vector<Element> inverse_;
  std::vector<Element> table_;  // dense when order is small
  std::unordered_map<std::string, Element> by_key_;
  std::unordered_map<std::string, Element> by_label_;
  std::vector<std::vector<std::uint32_t>> matrices_;
};

std::string cycle_notation(const Permutation& p);
// Parses "(1 2)(3 4)", "(12)" (single digits) or "()" on `degree` points, 1-based.
Permutation parse_cycles(std::string_view text, std::size_t degree);
Permutation compose(const Permutation& a, const Permutation& b);

class Subgroup {
public:
  Subgroup() = default;
  // Throws when `members` is not closed or lacks the identity.
  Subgroup(const FiniteGroup& g, std::vector<Element> members);

  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup whole(const FiniteGroup& g);

  const std::vector<Element>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(Element a) const { return a < mask_.size() && mask_[a]; }
  std::size_t index_in(const FiniteGroup& g) const { return g.order() / order(); }

  bool operator==(const Subgroup& o) const { return members_ == o.members_; }
  bool operator<(const Subgroup& o) const;

private:
  std::vector<Element> members_;
  std::vector<char> mask_;
};

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Element> gens);
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Element by);  // by H by^-1
bool are_conjugate(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
// Conjugate with the lexicographically smallest member list.
Subgroup canonical_conjugate(const FiniteGroup& g, const Subgroup& h);
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);
// Canonical conjugacy-class representatives, by increasing order then member list.
std::vector<Subgroup> subgroup_classes(const FiniteGroup& g);

// Right cosets Hg, each represented by its smallest element index.
class RightCosets {
public:
  RightCosets() = default;
  RightCosets(const FiniteGroup& g, const Subgroup& h);

  std::size_t count() const { return reps_.size(); }
  std::size_t index_of(Element a) const { return coset_of_[a]; }
  Element representative(std::size_t c) const { return reps_[c]; }
  const std::vector<Element>& members(std::size_t c) const { return cosets_[c]; }
  // (Hx)*a
  std::size_t act(const FiniteGroup& g, std::size_t c, Element a) const {
    return coset_of_[g.mul(reps_[c], a)];
  }
  const Subgroup& subgroup() const { return subgroup_; }
  // "H", "H(1 3)", ...
  std::string label(const FiniteGroup& g, std::size_t c) const;

private:
  Subgroup subgroup_;
  std::vector<std::size_t> coset_of_;
  std::vector<Element> reps_;
  std::vector<std::vector<Element>> cosets_;
};

// A monoid morphism A* -> G given by letter images.
class GroupMorphism {
public:
  GroupMorphism() = default;
  GroupMorphism(Alphabet alphabet, std::shared_ptr<const FiniteGroup> group,
                std::vector<Element> images);

  const Alphabet& alphabet() const { return alphabet_; }
  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  Element image(Letter a) const { return images_.at(a); }
  const std::vector<Element>& images() const { return images_; }

  Element operator()(const Word& w) const;
  Element apply(const Word& w, std::size_t from, std::size_t to) const;
  bool is_onto() const;
  Subgroup image_subgroup() const;

private:
  Alphabet alphabet_;
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Element> images_;
};

// A finite window of a two-sided sequence: text[origin] is x_0.
struct WordWindow {
  Word text;
  std::size_t origin = 0;
};

// phi^(n)(x): phi(x[0,n)) for n >= 0 and phi(x[n,0))^-1 for n < 0.
Element cocycle(const GroupMorphism& phi, const WordWindow& x, long n);

}  // namespace skewdens
