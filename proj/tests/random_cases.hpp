#pragma once

#include <memory>
#include <random>
#include <vector>

#include "skewdens/algebra.hpp"
#include "skewdens/shifts.hpp"

namespace testing {

struct RandomSft {
  std::shared_ptr<const skewdens::Shift> x;
  std::size_t step = 1;
};

// Irreducible SFTs with |A| <= 3 and step <= 2 using every letter, by rejection.
inline RandomSft random_irreducible_sft(std::mt19937& rng) {
  using namespace skewdens;
  for (;;) {
    const std::size_t k = 2 + rng() % 2;
    const std::size_t r = 1 + rng() % 2;
    const Alphabet a = Alphabet::from_letters(k == 2 ? "ab" : "abc");
    std::vector<Word> forbidden;
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 0; len <= r; ++len) {
      std::vector<Word> next;
      for (const auto& w : layer) {
        for (Letter c = 0; c < k; ++c) {
          next.push_back(w + single(c));
        }
      }
      layer = std::move(next);
    }
    for (const auto& w : layer) {
      if (rng() % 100 < 30) {
        forbidden.push_back(w);
      }
    }
    auto x = make_shift(ShiftSpec::make_sft(a, r, forbidden));
    if (x->block_graph().blocks.empty() || !x->is_irreducible() ||
        x->language(1)->size() != k) {
      continue;
    }
    return {x, r};
  }
}

inline std::vector<std::shared_ptr<const skewdens::FiniteGroup>> small_groups() {
  using namespace skewdens;
  return {std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2)),
          std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(3)),
          std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(4)),
          std::make_shared<const FiniteGroup>(
              FiniteGroup::direct_product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)}))};
}

// A morphism onto g, when one exists for this alphabet size.
inline std::optional<skewdens::GroupMorphism> random_onto(
    std::mt19937& rng, const skewdens::Alphabet& a,
    std::shared_ptr<const skewdens::FiniteGroup> g) {
  using namespace skewdens;
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < a.size(); ++i) {
      images.push_back(static_cast<Element>(rng() % g->order()));
    }
    GroupMorphism phi(a, g, images);
    if (phi.is_onto()) {
      return phi;
    }
  }
  return std::nullopt;
}

}  // namespace testing
