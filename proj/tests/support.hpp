#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "skewdens/algebra.hpp"
#include "skewdens/measures.hpp"
#include "skewdens/shifts.hpp"

namespace testing {

using namespace skewdens;

inline std::shared_ptr<const FiniteGroup> cyclic(std::size_t n) {
  return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n));
}

inline std::shared_ptr<const FiniteGroup> s3() {
  return std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(3));
}

inline std::shared_ptr<const Shift> substitution(const std::string& letters,
                                                 const std::vector<std::string>& images) {
  const Alphabet a = Alphabet::from_letters(letters);
  std::vector<Word> ws;
  for (const auto& s : images) {
    ws.push_back(a.parse(s));
  }
  return make_shift(ShiftSpec::make_substitution(a, ws));
}

inline std::shared_ptr<const Shift> fibonacci() { return substitution("ab", {"ab", "a"}); }
inline std::shared_ptr<const Shift> thue_morse() { return substitution("ab", {"ab", "ba"}); }
inline std::shared_ptr<const Shift> unimodular() { return substitution("abc", {"aab", "acb", "ba"}); }
inline std::shared_ptr<const Shift> fourletter() {
  return substitution("abcd", {"baa", "adc", "cdc", "ad"});
}

inline std::shared_ptr<const Shift> periodic(const std::string& letters, const std::string& word) {
  const Alphabet a = Alphabet::from_letters(letters);
  return make_shift(ShiftSpec::make_periodic(a, a.parse(word)));
}

inline std::shared_ptr<const Shift> sft(const std::string& letters, std::size_t step,
                                        const std::vector<std::string>& forbidden) {
  const Alphabet a = Alphabet::from_letters(letters);
  std::vector<Word> ws;
  for (const auto& s : forbidden) {
    ws.push_back(a.parse(s));
  }
  return make_shift(ShiftSpec::make_sft(a, step, ws));
}

inline GroupMorphism morphism(const Shift& x, std::shared_ptr<const FiniteGroup> g,
                              const std::vector<std::string>& labels) {
  std::vector<Element> images;
  for (const auto& l : labels) {
    images.push_back(g->parse_element(l));
  }
  return GroupMorphism(x.alphabet(), std::move(g), std::move(images));
}

// Plain string rewriting, independent of the library: iterate from `seed`
// until the text reaches length n.
inline std::string iterate_text(const std::map<char, std::string>& rules, char seed, std::size_t n) {
  std::string w(1, seed);
  while (w.size() < n) {
    std::string next;
    for (char c : w) {
      next += rules.at(c);
    }
    w = std::move(next);
  }
  return w;
}

inline std::set<std::string> factors(const std::string& text, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= text.size(); ++i) {
    out.insert(text.substr(i, n));
  }
  return out;
}

inline double sliding_frequency(const std::string& text, const std::string& w) {
  std::size_t hits = 0;
  const std::size_t slots = text.size() - w.size() + 1;
  for (std::size_t i = 0; i < slots; ++i) {
    hits += text.compare(i, w.size(), w) == 0;
  }
  return static_cast<double>(hits) / static_cast<double>(slots);
}

inline std::string render(const Shift& x, const Word& w) { return x.alphabet().render(w); }

inline std::vector<std::string> render_all(const Shift& x, const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) {
    out.push_back(render(x, w));
  }
  return out;
}

}  // namespace testing
