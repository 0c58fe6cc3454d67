#include "skewdens/word.hpp"

#include "skewdens/error.hpp"

namespace skewdens {

std::vector<std::string> split_code_points(std::string_view utf8) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < utf8.size()) {
    auto lead = static_cast<unsigned char>(utf8[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    } else if (lead >= 0x80) {
      semantic_error("invalid UTF-8 lead byte in word");
    }
    if (i + len > utf8.size()) {
      semantic_error("truncated UTF-8 sequence in word");
    }
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(utf8[i + k]) & 0xC0) != 0x80) {
        semantic_error("invalid UTF-8 continuation byte in word");
      }
    }
    out.emplace_back(utf8.substr(i, len));
    i += len;
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    semantic_error("alphabet must not be empty");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto& l = labels_[i];
    if (l.empty()) {
      semantic_error("alphabet letters must be nonempty");
    }
    if (!index_.emplace(l, static_cast<Letter>(i)).second) {
      semantic_error("duplicate letter '" + l + "' in alphabet");
    }
    if (split_code_points(l).size() != 1) {
      compact_ = false;
    }
  }
}

Alphabet Alphabet::from_letters(std::string_view letters) {
  return Alphabet(split_code_points(letters));
}

std::optional<Letter> Alphabet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

Letter Alphabet::at(std::string_view label) const {
  auto a = find(label);
  if (!a) {
    semantic_error("unknown letter '" + std::string(label) + "'");
  }
  return *a;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (compact_) {
    for (const auto& cp : split_code_points(text)) {
      w.push_back(at(cp));
    }
    return w;
  }
  // Multi-character letters are separated by spaces.
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') {
      ++j;
    }
    if (j > i) {
      w.push_back(at(text.substr(i, j - i)));
    }
    i = j;
  }
  return w;
}

std::string Alphabet::render(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact_ && i > 0) {
      out += ' ';
    }
    out += labels_.at(w[i]);
  }
  return out;
}

Word single(Letter a) { return Word(1, a); }

std::size_t count_occurrences(const Word& w, const Word& u) {
  if (u.empty()) {
    return w.size() + 1;
  }
  std::size_t count = 0;
  for (auto pos = w.find(u); pos != Word::npos; pos = w.find(u, pos + 1)) {
    ++count;
  }
  return count;
}

bool has_prefix(const Word& w, const Word& p) {
  return w.size() >= p.size() && w.compare(0, p.size(), p) == 0;
}

bool has_suffix(const Word& w, const Word& s) {
  return w.size() >= s.size() && w.compare(w.size() - s.size(), s.size(), s) == 0;
}

}  // namespace skewdens
