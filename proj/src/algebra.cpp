#include "skewdens/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "skewdens/error.hpp"

namespace skewdens {

namespace {

constexpr std::size_t kDenseTableLimit = 2048;

std::string key_of(const Permutation& p) {
  return std::string(reinterpret_cast<const char*>(p.data()), p.size() * sizeof(std::uint32_t));
}

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

void check_permutation(const Permutation& p, std::size_t degree) {
  if (p.size() != degree) {
    semantic_error("permutation has " + std::to_string(p.size()) + " images, expected " +
                   std::to_string(degree));
  }
  std::vector<char> seen(degree, 0);
  for (auto x : p) {
    if (x >= degree) {
      semantic_error("permutation image out of range");
    }
    if (seen[x]) {
      semantic_error("permutation repeats point " + std::to_string(x + 1));
    }
    seen[x] = 1;
  }
}

std::optional<long> parse_integer(std::string_view text) {
  long value = 0;
  auto first = text.data();
  auto last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = b[a[i]];
  }
  return out;
}

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) {
      continue;
    }
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) {
        out += ' ';
      }
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation result = identity_permutation(degree);
  std::size_t i = 0;
  auto skip_spaces = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) {
      ++i;
    }
  };
  skip_spaces();
  if (i == text.size()) {
    semantic_error("empty permutation text");
  }
  while (i < text.size()) {
    if (text[i] != '(') {
      semantic_error("malformed cycle notation '" + std::string(text) + "'");
    }
    ++i;
    std::vector<std::uint32_t> cycle;
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) {
      semantic_error("unclosed cycle in '" + std::string(text) + "'");
    }
    auto body = text.substr(i, close - i);
    bool spaced = body.find_first_of(" ,") != std::string_view::npos;
    std::size_t k = 0;
    while (k < body.size()) {
      if (body[k] == ' ' || body[k] == ',') {
        ++k;
        continue;
      }
      std::size_t end = k + 1;
      if (spaced) {
        while (end < body.size() && body[end] != ' ' && body[end] != ',') {
          ++end;
        }
      }
      auto value = parse_integer(body.substr(k, end - k));
      if (!value || *value < 1 || static_cast<std::size_t>(*value) > degree) {
        semantic_error("cycle point out of range in '" + std::string(text) + "'");
      }
      cycle.push_back(static_cast<std::uint32_t>(*value - 1));
      k = end;
    }
    std::set<std::uint32_t> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) {
      semantic_error("cycle repeats a point in '" + std::string(text) + "'");
    }
    if (!cycle.empty()) {
      Permutation c = identity_permutation(degree);
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        c[cycle[t]] = cycle[(t + 1) % cycle.size()];
      }
      result = compose(result, c);
    }
    i = close + 1;
    skip_spaces();
  }
  return result;
}

FiniteGroup FiniteGroup::from_permutations(std::size_t degree, std::vector<Permutation> generators,
                                           Kind kind) {
  for (const auto& g : generators) {
    check_permutation(g, degree);
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  FiniteGroup group;
  group.kind_ = kind;
  group.degree_ = degree;
  auto id = identity_permutation(degree);
  group.by_key_.emplace(key_of(id), 0);
  group.elements_.push_back(id);
  for (std::size_t head = 0; head < group.elements_.size(); ++head) {
    for (const auto& gen : generators) {
      auto next = compose(group.elements_[head], gen);
      auto key = key_of(next);
      if (group.by_key_.count(key)) {
        continue;
      }
      if (group.elements_.size() >= kMaxGroupOrder) {
        semantic_error("group order exceeds the cap of " + std::to_string(kMaxGroupOrder));
      }
      group.by_key_.emplace(std::move(key), static_cast<Element>(group.elements_.size()));
      group.elements_.push_back(std::move(next));
    }
  }
  for (const auto& p : group.elements_) {
    group.labels_.push_back(cycle_notation(p));
  }
  group.finish();
  return group;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n < 1 || n > kMaxGroupOrder) {
    semantic_error("cyclic group order must be in 1.." + std::to_string(kMaxGroupOrder));
  }
  Permutation shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    shift[i] = static_cast<std::uint32_t>((i + 1) % n);
  }
  std::vector<Permutation> gens;
  if (n > 1) {
    gens.push_back(shift);
  }
  auto group = from_permutations(n, gens, Kind::cyclic);
  // Breadth-first order from the single generator is 0, 1, 2, ...
  for (std::size_t k = 0; k < n; ++k) {
    group.labels_[k] = std::to_string(k);
  }
  group.finish();
  return group;
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n < 1 || n > 7) {
    semantic_error("symmetric group degree must be in 1..7");
  }
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto t = identity_permutation(n);
      std::swap(t[i], t[j]);
      gens.push_back(t);
    }
  }
  return from_permutations(n, gens, Kind::permutation);
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = table.size();
  if (n < 1 || n > kMaxGroupOrder) {
    semantic_error("group table size must be in 1.." + std::to_string(kMaxGroupOrder));
  }
  for (const auto& row : table) {
    if (row.size() != n) {
      semantic_error("group table must be square");
    }
    for (auto x : row) {
      if (x >= n) {
        semantic_error("group table entry out of range");
      }
    }
  }
  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < n && !e; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      ok = table[i][j] == j && table[j][i] == j;
    }
    if (ok) {
      e = i;
    }
  }
  if (!e) {
    semantic_error("group table has no identity element");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> row_seen(n, 0);
    std::vector<char> col_seen(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (row_seen[table[i][j]]++ || col_seen[table[j][i]]++) {
        semantic_error("group table is not a Latin square");
      }
    }
  }
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return table[table[a][b]][c] == table[a][table[b][c]];
  };
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!assoc(a, b, c)) {
            semantic_error("group table is not associative");
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t) {
      if (!assoc(pick(rng), pick(rng), pick(rng))) {
        semantic_error("group table is not associative");
      }
    }
  }

  FiniteGroup group;
  group.kind_ = Kind::table;
  group.degree_ = n;
  group.identity_ = static_cast<Element>(*e);
  for (std::size_t g = 0; g < n; ++g) {
    // Right regular representation: x -> x*g.
    Permutation p(n);
    for (std::size_t x = 0; x < n; ++x) {
      p[x] = static_cast<std::uint32_t>(table[x][g]);
    }
    group.by_key_.emplace(key_of(p), static_cast<Element>(g));
    group.elements_.push_back(std::move(p));
    group.labels_.push_back(std::to_string(g));
  }
  group.finish();
  return group;
}

FiniteGroup FiniteGroup::direct_product(const std::vector<FiniteGroup>& factors) {
  if (factors.empty()) {
    semantic_error("direct product needs at least one factor");
  }
  std::size_t order = 1;
  std::size_t degree = 0;
  for (const auto& f : factors) {
    order *= f.order();
    degree += f.degree();
    if (order > kMaxGroupOrder) {
      semantic_error("group order exceeds the cap of " + std::to_string(kMaxGroupOrder));
    }
  }
  FiniteGroup group;
  group.kind_ = Kind::product;
  group.degree_ = degree;
  std::vector<std::size_t> digits(factors.size(), 0);
  for (std::size_t idx = 0; idx < order; ++idx) {
    // Mixed radix, first factor most significant.
    std::size_t rest = idx;
    for (std::size_t f = factors.size(); f-- > 0;) {
      digits[f] = rest % factors[f].order();
      rest /= factors[f].order();
    }
    Permutation p;
    std::string label = "(";
    std::size_t offset = 0;
    bool is_identity = true;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      const auto& part = factors[f].permutation(static_cast<Element>(digits[f]));
      for (auto x : part) {
        p.push_back(static_cast<std::uint32_t>(x + offset));
      }
      offset += factors[f].degree();
      label += (f ? "," : "") + factors[f].label(static_cast<Element>(digits[f]));
      is_identity = is_identity && digits[f] == factors[f].identity();
    }
    label += ")";
    if (is_identity) {
      group.identity_ = static_cast<Element>(idx);
    }
    group.by_key_.emplace(key_of(p), static_cast<Element>(idx));
    group.elements_.push_back(std::move(p));
    group.labels_.push_back(std::move(label));
  }
  group.finish();
  return group;
}

FiniteGroup FiniteGroup::general_linear_2(std::uint32_t m) {
  if (m < 2 || m > 30) {
    semantic_error("GL(2, Z/mZ) supported for m in 2..30");
  }
  auto point = [m](std::uint32_t x, std::uint32_t y) { return x * m + y; };
  std::vector<std::vector<std::uint32_t>> mats;
  mats.push_back({1, 0, 0, 1});
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = 0; b < m; ++b) {
      for (std::uint32_t c = 0; c < m; ++c) {
        for (std::uint32_t d = 0; d < m; ++d) {
          auto det = static_cast<std::uint32_t>((a * d + m * m - (b * c) % m) % m);
          if (std::gcd(det, m) != 1) {
            continue;
          }
          if (a == 1 && b == 0 && c == 0 && d == 1) {
            continue;
          }
          mats.push_back({a, b, c, d});
        }
      }
    }
  }
  if (mats.size() > kMaxGroupOrder) {
    semantic_error("group order exceeds the cap of " + std::to_string(kMaxGroupOrder));
  }
  FiniteGroup group;
  group.kind_ = Kind::matrix;
  group.degree_ = m * m;
  for (const auto& mat : mats) {
    Permutation p(m * m);
    for (std::uint32_t x = 0; x < m; ++x) {
      for (std::uint32_t y = 0; y < m; ++y) {
        p[point(x, y)] = point((x * mat[0] + y * mat[2]) % m, (x * mat[1] + y * mat[3]) % m);
      }
    }
    group.by_key_.emplace(key_of(p), static_cast<Element>(group.elements_.size()));
    group.elements_.push_back(std::move(p));
    group.labels_.push_back("[[" + std::to_string(mat[0]) + "," + std::to_string(mat[1]) + "],[" +
                            std::to_string(mat[2]) + "," + std::to_string(mat[3]) + "]]");
    group.matrices_.push_back(mat);
  }
  group.finish();
  return group;
}

void FiniteGroup::finish() {
  const std::size_t n = elements_.size();
  by_label_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    by_label_.emplace(labels_[i], static_cast<Element>(i));
  }
  inverse_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Permutation inv(elements_[i].size());
    for (std::size_t x = 0; x < inv.size(); ++x) {
      inv[elements_[i][x]] = static_cast<std::uint32_t>(x);
    }
    inverse_[i] = by_key_.at(key_of(inv));
  }
  table_.clear();
  if (n <= kDenseTableLimit) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table_[a * n + b] = by_key_.at(key_of(compose(elements_[a], elements_[b])));
      }
    }
  }
}

Element FiniteGroup::mul(Element a, Element b) const {
  if (!table_.empty()) {
    return table_[a * elements_.size() + b];
  }
  return by_key_.at(key_of(compose(elements_[a], elements_[b])));
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity_; x = mul(x, a)) {
    ++k;
  }
  return k;
}

std::optional<Element> FiniteGroup::find_label(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<Element> FiniteGroup::find_permutation(const Permutation& p) const {
  auto it = by_key_.find(key_of(p));
  if (it == by_key_.end()) {
    return std::nullopt;
  }
  return it->second;
}

Element FiniteGroup::parse_element(std::string_view text) const {
  if (auto e = find_label(text)) {
    return *e;
  }
  if (kind_ == Kind::cyclic) {
    if (auto v = parse_integer(text)) {
      auto n = static_cast<long>(order());
      return static_cast<Element>(((*v % n) + n) % n);
    }
  }
  if (kind_ == Kind::permutation && !text.empty() && text.front() == '(') {
    auto p = parse_cycles(text, degree_);
    if (auto e = find_permutation(p)) {
      return *e;
    }
    semantic_error("permutation '" + std::string(text) + "' is not in the group");
  }
  semantic_error("unknown group element '" + std::string(text) + "'");
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order(); ++a) {
    for (Element b = 0; b < order(); ++b) {
      if (mul(a, b) != mul(b, a)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Element> FiniteGroup::elements() const {
  std::vector<Element> out(order());
  std::iota(out.begin(), out.end(), Element{0});
  return out;
}

bool FiniteGroup::verify_axioms() const {
  const std::size_t n = order();
  for (Element a = 0; a < n; ++a) {
    if (mul(identity_, a) != a || mul(a, identity_) != a) {
      return false;
    }
    if (mul(a, inv(a)) != identity_ || mul(inv(a), a) != identity_) {
      return false;
    }
  }
  auto assoc = [&](Element a, Element b, Element c) {
    return mul(mul(a, b), c) == mul(a, mul(b, c));
  };
  if (n <= 64) {
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        for (Element c = 0; c < n; ++c) {
          if (!assoc(a, b, c)) {
            return false;
          }
        }
      }
    }
    return true;
  }
  std::mt19937_64 rng(0xa550c);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
  for (int t = 0; t < 20000; ++t) {
    if (!assoc(pick(rng), pick(rng), pick(rng))) {
      return false;
    }
  }
  return true;
}

Subgroup::Subgroup(const FiniteGroup& g, std::vector<Element> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  mask_.assign(g.order(), 0);
  for (auto m : members) {
    if (m >= g.order()) {
      semantic_error("subgroup member out of range");
    }
    mask_[m] = 1;
  }
  if (!mask_[g.identity()]) {
    semantic_error("subgroup must contain the identity");
  }
  for (auto a : members) {
    for (auto b : members) {
      if (!mask_[g.mul(a, b)]) {
        semantic_error("subset is not closed under multiplication");
      }
    }
  }
  if (g.order() % members.size() != 0) {
    internal_error("subgroup order does not divide the group order");
  }
  members_ = std::move(members);
}

Subgroup Subgroup::trivial(const FiniteGroup& g) { return Subgroup(g, {g.identity()}); }

Subgroup Subgroup::whole(const FiniteGroup& g) { return Subgroup(g, g.elements()); }

bool Subgroup::operator<(const Subgroup& o) const {
  if (members_.size() != o.members_.size()) {
    return members_.size() < o.members_.size();
  }
  return members_ < o.members_;
}

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> members{g.identity()};
  seen[g.identity()] = 1;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (auto s : gens) {
      auto next = g.mul(members[head], s);
      if (!seen[next]) {
        seen[next] = 1;
        members.push_back(next);
      }
    }
  }
  return Subgroup(g, std::move(members));
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Element by) {
  std::vector<Element> members;
  members.reserve(h.order());
  for (auto x : h.members()) {
    members.push_back(g.conj(x, by));
  }
  return Subgroup(g, std::move(members));
}

bool are_conjugate(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) {
    return false;
  }
  for (Element x = 0; x < g.order(); ++x) {
    if (conjugate(g, a, x) == b) {
      return true;
    }
  }
  return false;
}

Subgroup canonical_conjugate(const FiniteGroup& g, const Subgroup& h) {
  Subgroup best = h;
  for (Element x = 0; x < g.order(); ++x) {
    auto c = conjugate(g, h, x);
    if (c.members() < best.members()) {
      best = std::move(c);
    }
  }
  return best;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  if (g.order() > 1024) {
    semantic_error("subgroup enumeration is limited to groups of order at most 1024");
  }
  std::map<std::vector<Element>, Subgroup> found;
  std::deque<Subgroup> queue;
  auto add = [&](Subgroup s) {
    auto key = s.members();
    if (found.emplace(key, s).second) {
      queue.push_back(std::move(s));
    }
  };
  add(Subgroup::trivial(g));
  for (Element x = 0; x < g.order(); ++x) {
    Element one[] = {x};
    add(subgroup_generated(g, one));
  }
  // Joins with single elements reach every subgroup from the cyclic ones.
  while (!queue.empty()) {
    auto h = std::move(queue.front());
    queue.pop_front();
    for (Element x = 0; x < g.order(); ++x) {
      if (h.contains(x)) {
        continue;
      }
      auto gens = h.members();
      gens.push_back(x);
      add(subgroup_generated(g, gens));
    }
  }
  std::vector<Subgroup> out;
  for (auto& [key, s] : found) {
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> subgroup_classes(const FiniteGroup& g) {
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> out;
  for (const auto& h : all_subgroups(g)) {
    auto c = canonical_conjugate(g, h);
    if (seen.insert(c.members()).second) {
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RightCosets::RightCosets(const FiniteGroup& g, const Subgroup& h) : subgroup_(h) {
  const std::size_t none = g.order();
  coset_of_.assign(g.order(), none);
  for (Element x = 0; x < g.order(); ++x) {
    if (coset_of_[x] != none) {
      continue;
    }
    std::vector<Element> members;
    for (auto y : h.members()) {
      auto z = g.mul(y, x);
      coset_of_[z] = reps_.size();
      members.push_back(z);
    }
    std::sort(members.begin(), members.end());
    reps_.push_back(x);
    cosets_.push_back(std::move(members));
  }
}

std::string RightCosets::label(const FiniteGroup& g, std::size_t c) const {
  Element rep = reps_.at(c);
  if (rep == g.identity()) {
    return "H";
  }
  const auto& l = g.label(rep);
  return l.front() == '(' ? "H" + l : "H+" + l;
}

GroupMorphism::GroupMorphism(Alphabet alphabet, std::shared_ptr<const FiniteGroup> group,
                             std::vector<Element> images)
    : alphabet_(std::move(alphabet)), group_(std::move(group)), images_(std::move(images)) {
  if (!group_) {
    internal_error("morphism without a target group");
  }
  if (images_.size() != alphabet_.size()) {
    semantic_error("morphism must give an image for every letter");
  }
  for (auto e : images_) {
    if (e >= group_->order()) {
      semantic_error("morphism image out of range");
    }
  }
}

Element GroupMorphism::operator()(const Word& w) const { return apply(w, 0, w.size()); }

Element GroupMorphism::apply(const Word& w, std::size_t from, std::size_t to) const {
  Element acc = group_->identity();
  for (std::size_t i = from; i < to; ++i) {
    acc = group_->mul(acc, images_.at(w[i]));
  }
  return acc;
}

bool GroupMorphism::is_onto() const { return image_subgroup().order() == group_->order(); }

Subgroup GroupMorphism::image_subgroup() const { return subgroup_generated(*group_, images_); }

Element cocycle(const GroupMorphism& phi, const WordWindow& x, long n) {
  if (n >= 0) {
    auto end = x.origin + static_cast<std::size_t>(n);
    if (end > x.text.size()) {
      semantic_error("cocycle index range not available from the window");
    }
    return phi.apply(x.text, x.origin, end);
  }
  auto back = static_cast<std::size_t>(-n);
  if (back > x.origin) {
    semantic_error("cocycle index range not available from the window");
  }
  return phi.group().inv(phi.apply(x.text, x.origin - back, x.origin));
}

}  // namespace skewdens
