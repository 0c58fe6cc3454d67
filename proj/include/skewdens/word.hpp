#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace skewdens {

// Letters are indices into an Alphabet; words are strings of such indices, so
// the natural string order is the lexicographic order induced by the alphabet.
using Letter = char32_t;
using Word = std::u32string;

// Splits UTF-8 text into its Unicode scalar values, each returned as a UTF-8 string.
std::vector<std::string> split_code_points(std::string_view utf8);

class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  // One letter per code point of `letters`, in order.
  static Alphabet from_letters(std::string_view letters);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Letter a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Letter> find(std::string_view label) const;
  Letter at(std::string_view label) const;

  // True when every label is a single code point; words then render without separators.
  bool compact() const { return compact_; }

  Word parse(std::string_view text) const;
  std::string render(const Word& w) const;
  std::string render(Letter a) const { return labels_.at(a); }

  bool operator==(const Alphabet& other) const { return labels_ == other.labels_; }

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Letter> index_;
  bool compact_ = true;
};

Word single(Letter a);

// Number of (possibly overlapping) occurrences of u in w.
std::size_t count_occurrences(const Word& w, const Word& u);

bool has_prefix(const Word& w, const Word& p);
bool has_suffix(const Word& w, const Word& s);

}  // namespace skewdens
