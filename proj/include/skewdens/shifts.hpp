#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "skewdens/word.hpp"

namespace skewdens {

enum class ShiftKind { sft, substitution, periodic };

struct SftRules {
  std::size_t step = 1;
  std::vector<Word> forbidden;  // sorted, each of length step + 1
  bool operator==(const SftRules&) const = default;
};

struct SubstitutionRules {
  std::vector<Word> images;  // indexed by letter
  bool operator==(const SubstitutionRules&) const = default;
};

struct PeriodicRules {
  Word word;  // primitive root at its least rotation
  bool operator==(const PeriodicRules&) const = default;
};

struct ShiftSpec {
  Alphabet alphabet;
  std::variant<SftRules, SubstitutionRules, PeriodicRules> rules;

  ShiftKind kind() const { return static_cast<ShiftKind>(rules.index()); }
  const SftRules& sft() const { return std::get<SftRules>(rules); }
  const SubstitutionRules& substitution() const { return std::get<SubstitutionRules>(rules); }
  const PeriodicRules& periodic() const { return std::get<PeriodicRules>(rules); }

  static ShiftSpec make_sft(Alphabet alphabet, std::size_t step, std::vector<Word> forbidden);
  // Throws a semantic error when the substitution is not primitive.
  static ShiftSpec make_substitution(Alphabet alphabet, std::vector<Word> images);
  static ShiftSpec make_periodic(Alphabet alphabet, Word word);

  bool operator==(const ShiftSpec& o) const { return alphabet == o.alphabet && rules == o.rules; }
};

bool is_primitive(const std::vector<Word>& images, std::size_t alphabet_size);
// Incidence counts: m[a][b] = occurrences of a in images[b].
std::vector<std::vector<std::size_t>> incidence_matrix(const std::vector<Word>& images,
                                                       std::size_t alphabet_size);
Word apply_substitution(const std::vector<Word>& images, const Word& w);
Word apply_power(const std::vector<Word>& images, const Word& w, std::size_t k);
std::vector<Word> substitution_power(const std::vector<Word>& images, std::size_t k);

// The r-block graph of an SFT restricted to blocks lying on bi-infinite paths.
struct BlockGraph {
  std::size_t step = 1;
  std::vector<Word> blocks;  // sorted
  // out[i] lists (appended letter, target block) sorted by letter.
  std::vector<std::vector<std::pair<Letter, std::size_t>>> out;
  bool irreducible = false;

  std::optional<std::size_t> index(const Word& block) const;
};

struct ReturnWordCertificate {
  Word u;
  std::vector<Word> returns;  // sorted
  std::size_t window = 0;
  std::size_t max_gap = 0;
  bool complete = false;
};

struct ExtensionGraph {
  Word w;
  std::vector<Letter> left;
  std::vector<Letter> right;
  std::vector<std::pair<Letter, Letter>> edges;

  bool is_connected() const;
  bool is_tree() const;
};

// A shift space together with its memoized language oracle.
class Shift {
public:
  explicit Shift(ShiftSpec spec);

  const ShiftSpec& spec() const { return spec_; }
  const Alphabet& alphabet() const { return spec_.alphabet; }
  ShiftKind kind() const { return spec_.kind(); }
  bool is_minimal_kind() const { return kind() != ShiftKind::sft; }

  // L(X) ∩ A^n, sorted.
  std::shared_ptr<const std::vector<Word>> language(std::size_t n) const;
  bool contains(const Word& w) const;
  std::size_t index_in_language(const Word& w) const;  // position in language(|w|); throws if absent

  // SFT only.
  const BlockGraph& block_graph() const;
  bool is_irreducible() const;

  // Minimal kinds only: a prefix of the lexicographically least fixed point of a
  // power of the substitution, or of p^∞ for periodic shifts.
  Word fixed_point_prefix(std::size_t n) const;
  // Power p and letter a such that σ^p(a) begins with a (substitutions).
  std::pair<std::size_t, Letter> fixed_point_seed() const;
  // Finite words whose length-n factors are exactly L(X) ∩ A^n (n >= 1).
  std::vector<Word> covering_words(std::size_t n) const;

private:
  std::vector<Word> compute_language(std::size_t n) const;
  std::vector<Word> sft_language(std::size_t n) const;
  std::vector<Word> substitution_language(std::size_t n) const;
  std::vector<Word> periodic_language(std::size_t n) const;
  const std::vector<Word>& two_blocks() const;

  ShiftSpec spec_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const std::vector<Word>>> cache_;
  mutable std::optional<BlockGraph> graph_;
  mutable std::optional<std::vector<Word>> two_blocks_;
};

std::shared_ptr<const Shift> make_shift(ShiftSpec spec);

constexpr std::size_t kDefaultWindowCap = std::size_t{1} << 16;

ReturnWordCertificate return_words(const Shift& x, const Word& u,
                                   std::size_t window_cap = kDefaultWindowCap);

ExtensionGraph extension_graph(const Shift& x, const Word& w);

struct DendricResult {
  bool dendric = true;
  std::optional<Word> witness;
};
DendricResult dendric_up_to(const Shift& x, std::size_t n);

struct HigherBlock {
  ShiftSpec shift;
  std::vector<Word> blocks;
  std::size_t r = 1;

  Word block(const Word& w) const;    // β_r coding, |w| >= r
  Word unblock(const Word& w) const;  // inverse on nonempty block words
};
HigherBlock higher_block(const Shift& x, std::size_t r);

}  // namespace skewdens
