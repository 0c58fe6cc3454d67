#include "skewdens/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "skewdens/bifix.hpp"
#include "skewdens/density.hpp"
#include "skewdens/error.hpp"
#include "skewdens/skew.hpp"
#include "skewdens/subst_tools.hpp"

namespace skewdens {

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& message) {
  throw Error(ErrorKind::schema, message, pointer);
}

std::string child(const std::string& pointer, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

const Json& require(const Json& obj, const std::string& key, const std::string& pointer) {
  if (!obj.is_object()) {
    schema_error(pointer, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(child(pointer, key), "missing field \"" + key + "\"");
  }
  return *it;
}

std::string as_string(const Json& j, const std::string& pointer) {
  if (!j.is_string()) {
    schema_error(pointer, "expected a string");
  }
  return j.get<std::string>();
}

std::size_t as_count(const Json& j, const std::string& pointer, std::size_t lo, std::size_t hi) {
  if (!j.is_number_integer()) {
    schema_error(pointer, "expected an integer");
  }
  const auto v = j.get<long long>();
  if (v < static_cast<long long>(lo) || v > static_cast<long long>(hi)) {
    schema_error(pointer, "expected an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<std::size_t>(v);
}

Word parse_word(const Alphabet& alphabet, const Json& j, const std::string& pointer) {
  const std::string text = as_string(j, pointer);
  Word w;
  if (alphabet.compact()) {
    for (const auto& cp : split_code_points(text)) {
      auto a = alphabet.find(cp);
      if (!a) {
        schema_error(pointer, "letter \"" + cp + "\" is not in the alphabet");
      }
      w.push_back(*a);
    }
    return w;
  }
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    auto a = alphabet.find(token);
    if (!a) {
      schema_error(pointer, "letter \"" + token + "\" is not in the alphabet");
    }
    w.push_back(*a);
  }
  return w;
}

Alphabet parse_alphabet(const Json& j, const std::string& pointer) {
  std::vector<std::string> labels;
  if (j.is_string()) {
    labels = split_code_points(j.get<std::string>());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      labels.push_back(as_string(j[i], child(pointer, i)));
    }
  } else {
    schema_error(pointer, "alphabet must be a string or an array of strings");
  }
  if (labels.empty()) {
    schema_error(pointer, "alphabet is empty");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty() || labels[i].find(' ') != std::string::npos) {
      schema_error(child(pointer, i), "letters must be nonempty and contain no spaces");
    }
    if (!seen.insert(labels[i]).second) {
      schema_error(child(pointer, i), "repeated letter \"" + labels[i] + "\"");
    }
  }
  return Alphabet(std::move(labels));
}

Json alphabet_json(const Alphabet& alphabet) {
  if (alphabet.compact()) {
    std::string s;
    for (const auto& l : alphabet.labels()) {
      s += l;
    }
    return s;
  }
  return alphabet.labels();
}

Element parse_element_ref(const FiniteGroup& g, const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0 || v >= static_cast<long long>(g.order())) {
      schema_error(pointer, "element index out of range");
    }
    return static_cast<Element>(v);
  }
  const std::string text = as_string(j, pointer);
  try {
    return g.parse_element(text);
  } catch (const Error& e) {
    schema_error(pointer, "unknown group element \"" + text + "\"");
  }
}

Permutation parse_permutation(const Json& j, std::size_t degree, const std::string& pointer) {
  if (j.is_string()) {
    try {
      return parse_cycles(j.get<std::string>(), degree);
    } catch (const Error& e) {
      schema_error(pointer, e.what());
    }
  }
  if (!j.is_array() || j.size() != degree) {
    schema_error(pointer, "expected cycle notation or " + std::to_string(degree) + " images");
  }
  std::vector<long long> raw;
  for (std::size_t i = 0; i < degree; ++i) {
    if (!j[i].is_number_integer()) {
      schema_error(child(pointer, i), "expected an integer");
    }
    raw.push_back(j[i].get<long long>());
  }
  // One-line images are 1-based unless a 0 occurs.
  const bool zero_based = std::find(raw.begin(), raw.end(), 0) != raw.end();
  Permutation p;
  std::vector<char> hit(degree, 0);
  for (std::size_t i = 0; i < degree; ++i) {
    const long long v = raw[i] - (zero_based ? 0 : 1);
    if (v < 0 || v >= static_cast<long long>(degree) || hit[static_cast<std::size_t>(v)]) {
      schema_error(pointer, "not a permutation");
    }
    hit[static_cast<std::size_t>(v)] = 1;
    p.push_back(static_cast<std::uint32_t>(v));
  }
  return p;
}

Probability parse_probability(const Json& j, const std::string& pointer) {
  Probability p;
  if (j.is_number()) {
    p.value = j.get<double>();
  } else if (j.is_string()) {
    try {
      p.exact = parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      schema_error(pointer, "expected a probability");
    }
    p.value = to_double(*p.exact);
  } else {
    schema_error(pointer, "expected a number or a rational string");
  }
  if (!(p.value >= 0 && p.value <= 1)) {
    schema_error(pointer, "probability outside [0, 1]");
  }
  return p;
}

std::shared_ptr<const CylinderMeasure> parse_measure(const Json& j, std::shared_ptr<const Shift> x,
                                                     const std::string& pointer) {
  const std::string type = as_string(require(j, "type", pointer), child(pointer, "type"));
  if (type == "unique") {
    if (x->kind() == ShiftKind::sft) {
      semantic_error("the unique invariant measure is only available for minimal shifts");
    }
    return default_measure(x);
  }
  if (type == "parry") {
    if (x->kind() != ShiftKind::sft) {
      semantic_error("the Parry measure needs a shift of finite type");
    }
    return parry_measure(x);
  }
  if (type == "markov") {
    if (x->kind() != ShiftKind::sft) {
      semantic_error("Markov measures need a shift of finite type");
    }
    MarkovSpec spec;
    spec.step = as_count(require(j, "step", pointer), child(pointer, "step"), 1, 16);
    const std::string tp = child(pointer, "transitions");
    const Json& tr = require(j, "transitions", pointer);
    if (!tr.is_object()) {
      schema_error(tp, "expected an object");
    }
    for (const auto& [block, row] : tr.items()) {
      const std::string bp = child(tp, block);
      const Word u = parse_word(x->alphabet(), Json(block), bp);
      if (!row.is_object()) {
        schema_error(bp, "expected an object");
      }
      auto& out = spec.transitions[u];
      for (const auto& [letter, prob] : row.items()) {
        auto a = x->alphabet().find(letter);
        if (!a) {
          schema_error(child(bp, letter), "letter is not in the alphabet");
        }
        out[*a] = parse_probability(prob, child(bp, letter));
      }
    }
    if (j.contains("pi")) {
      const std::string pp = child(pointer, "pi");
      if (!j["pi"].is_object()) {
        schema_error(pp, "expected an object");
      }
      std::map<Word, Probability> pi;
      for (const auto& [block, prob] : j["pi"].items()) {
        pi[parse_word(x->alphabet(), Json(block), child(pp, block))] =
            parse_probability(prob, child(pp, block));
      }
      spec.pi = std::move(pi);
    }
    return markov_measure(x, spec);
  }
  schema_error(child(pointer, "type"), "unknown measure type \"" + type + "\"");
}

std::vector<std::string> labels_of(const FiniteGroup& g, const std::vector<Element>& es) {
  std::vector<std::string> out;
  for (Element e : es) {
    out.push_back(g.label(e));
  }
  return out;
}

std::vector<Element> parse_k(const FiniteGroup& g, const Json& query) {
  if (!query.contains("K")) {
    return {g.identity()};
  }
  const Json& k = query["K"];
  const std::string pointer = "/query/K";
  if (!k.is_array() || k.empty()) {
    schema_error(pointer, "K must be a nonempty array of group elements");
  }
  std::vector<Element> out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    out.push_back(parse_element_ref(g, k[i], child(pointer, i)));
  }
  return out;
}

Subgroup parse_subgroup(const FiniteGroup& g, const Json& query) {
  if (!query.contains("subgroup")) {
    return Subgroup::trivial(g);
  }
  const Json& s = query["subgroup"];
  const std::string pointer = "/query/subgroup";
  if (s.is_string()) {
    const std::string name = s.get<std::string>();
    if (name == "trivial") {
      return Subgroup::trivial(g);
    }
    if (name == "whole") {
      return Subgroup::whole(g);
    }
    schema_error(pointer, "expected \"trivial\", \"whole\" or an object");
  }
  if (!s.is_object()) {
    schema_error(pointer, "expected a string or an object");
  }
  if (s.contains("stabilizer")) {
    if (g.kind() != FiniteGroup::Kind::permutation) {
      semantic_error("stabilizer subgroups need a permutation group");
    }
    const std::size_t point =
        as_count(s["stabilizer"], child(pointer, "stabilizer"), 1, g.degree());
    std::vector<Element> members;
    for (Element e = 0; e < g.order(); ++e) {
      if (g.permutation(e)[point - 1] == point - 1) {
        members.push_back(e);
      }
    }
    return Subgroup(g, members);
  }
  if (s.contains("generators")) {
    const Json& gens = s["generators"];
    const std::string gp = child(pointer, "generators");
    if (!gens.is_array()) {
      schema_error(gp, "expected an array");
    }
    std::vector<Element> es;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      es.push_back(parse_element_ref(g, gens[i], child(gp, i)));
    }
    return subgroup_generated(g, es);
  }
  schema_error(pointer, "expected \"stabilizer\" or \"generators\"");
}

std::size_t query_count(const Json& query, const char* key, std::size_t fallback, std::size_t hi) {
  if (!query.contains(key)) {
    return fallback;
  }
  return as_count(query[key], child("/query", key), 0, hi);
}

struct Settings {
  std::size_t horizon = 3000;
  std::size_t max_len = 10;
  std::size_t window_cap = kDefaultWindowCap;
  std::size_t invert_cap = 0;
};

Settings settings_for(const ProblemSpec* spec, const RunOptions& o,
                      std::size_t default_horizon = 3000) {
  const Json empty = Json::object();
  const Json& q = spec ? spec->query : empty;
  Settings s;
  s.horizon = o.horizon ? *o.horizon : query_count(q, "horizon", default_horizon, kMaxHorizon);
  s.max_len = o.max_cylinder ? *o.max_cylinder : query_count(q, "max_cylinder", 10, 64);
  const std::size_t cap = o.cap ? *o.cap : query_count(q, "cap", 0, std::size_t{1} << 24);
  if (cap != 0) {
    s.window_cap = std::max<std::size_t>(cap, 16);
    s.invert_cap = cap;
  }
  if (s.horizon == 0) {
    semantic_error("horizon must be at least 1");
  }
  return s;
}

Json rational_or_null(const std::optional<Rational>& q) {
  return q ? Json(to_string(*q)) : Json(nullptr);
}

Json exact_json(const ExactDensity& ex) {
  Json j{{"route", ex.route},
         {"value", ex.value ? Json(*ex.value) : Json(nullptr)},
         {"rational", rational_or_null(ex.exact)},
         {"reason", ex.reason},
         {"conditional", ex.route == "conditional-cobounding-formula"}};
  if (ex.route != "unavailable") {
    j["subgroup_order"] = ex.subgroup_order;
    j["components"] = ex.components;
  }
  return j;
}

Json cesaro_json(const CesaroEstimate& c, const std::string& method) {
  return Json{{"horizon", c.horizon},
              {"value", c.value},
              {"rational", rational_or_null(c.exact)},
              {"window_min", c.window_min},
              {"window_max", c.window_max},
              {"method", method}};
}

struct Section {
  Json results = Json::object();
  Json certificates = Json::object();
  std::vector<std::string> warnings;
};

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

const ProblemSpec& need(const ProblemSpec* spec, std::string_view command) {
  if (!spec) {
    schema_error("", "command \"" + std::string(command) + "\" needs a problem spec");
  }
  return *spec;
}

void need_minimal(const ProblemSpec& spec, std::string_view command) {
  if (spec.shift->kind() == ShiftKind::sft) {
    semantic_error("command \"" + std::string(command) +
                   "\" needs a minimal shift (substitution or periodic)");
  }
}

Section density_section(const ProblemSpec& spec, const Settings& s) {
  Section out;
  const DensityQuery q = make_query(spec.shift, spec.measure, spec.phi, parse_k(*spec.group, spec.query));
  const ExactDensity ex = exact_density(q, {s.max_len, s.window_cap});
  const SliceSeries series = slice_series(q, s.horizon - 1);
  const CesaroEstimate ces = cesaro_from(series, s.horizon);
  out.results["K"] = labels_of(*spec.group, q.k);
  out.results["exact"] = exact_json(ex);
  out.results["cesaro"] = cesaro_json(ces, series.method);
  if (ex.value) {
    out.results["difference"] = std::abs(ces.value - *ex.value);
  }
  out.certificates["exact"] = ex.route;
  out.certificates["cesaro"] = series.method;
  append(out.warnings, ex.warnings);
  return out;
}

Json evidence_json(const FiniteGroup& g, const Alphabet& alphabet,
                   const std::vector<PrefixEvidence>& ev) {
  Json arr = Json::array();
  for (const auto& e : ev) {
    arr.push_back(Json{{"length", e.length},
                       {"prefix", alphabet.render(e.u)},
                       {"returns", e.returns},
                       {"certified", e.certified},
                       {"generated", labels_of(g, e.generated.members())}});
  }
  return arr;
}

Section minimality_section(const ProblemSpec& spec, const Settings& s) {
  Section out;
  const MinimalityResult m = skew_minimal(spec.shift, spec.phi, s.max_len, s.window_cap);
  out.results = Json{{"minimal", m.minimal},
                     {"exact", m.exact},
                     {"certificate", m.certificate},
                     {"evidence", evidence_json(*spec.group, spec.shift->alphabet(), m.evidence)}};
  out.certificates["minimality"] = (m.exact ? "exact:" : "semi:") + m.certificate;
  append(out.warnings, m.warnings);
  if (!m.exact) {
    out.warnings.push_back("minimality is a semi-decision here: " + m.certificate);
  }
  return out;
}

Section cobounding_section(const ProblemSpec& spec, const Settings& s) {
  Section out;
  const FiniteGroup& g = *spec.group;
  const MinimalDecomposition dec = minimal_decomposition(spec.shift, spec.phi, s.max_len, s.window_cap);
  append(out.warnings, dec.warnings);
  out.results["found"] = dec.found;
  if (!dec.found) {
    out.warnings.push_back("no cobounding map up to cylinder length " + std::to_string(s.max_len));
    out.certificates["cobounding"] = "none";
    return out;
  }
  out.results["subgroup"] = labels_of(g, dec.h.members());
  out.results["canonical_subgroup"] = labels_of(g, dec.canonical.members());
  out.results["subgroup_order"] = dec.h.order();
  out.results["count"] = dec.count;
  out.results["cylinder_length"] = dec.map.length;
  out.results["map"] = cobounding_to_json(g, spec.shift->alphabet(), dec.map);
  Json maps = Json::array();
  for (const auto& m : dec.orbit) {
    maps.push_back(cobounding_to_json(g, spec.shift->alphabet(), m));
  }
  out.results["maps"] = maps;
  const auto masses = coset_masses(dec.map, *spec.measure);
  const auto exact = coset_masses_exact(dec.map, *spec.measure);
  Json mj = Json::object();
  for (std::size_t c = 0; c < dec.map.cosets.count(); ++c) {
    Json entry{{"value", masses[c]}};
    if (exact) {
      entry["rational"] = to_string((*exact)[c]);
    }
    mj[dec.map.cosets.label(g, c)] = entry;
  }
  out.results["coset_masses"] = mj;
  out.results["measure_of_y_alpha"] = measure_of_y_alpha(g, dec.map, masses);
  out.results["minimality"] = dec.minimality;
  out.results["minimality_route"] = dec.minimality_route;
  out.results["ergodicity"] = dec.ergodicity;
  out.results["skew_components"] =
      dec.skew_components ? Json(*dec.skew_components) : Json(nullptr);
  out.results["evidence"] = evidence_json(g, spec.shift->alphabet(), dec.evidence);
  out.certificates["cobounding"] = dec.minimality + ":" + dec.minimality_route;
  out.certificates["ergodicity"] = dec.ergodicity;
  return out;
}

Section bifix_section(const ProblemSpec& spec) {
  Section out;
  const FiniteGroup& g = *spec.group;
  const Alphabet& alphabet = spec.shift->alphabet();
  const Subgroup h = parse_subgroup(g, spec.query);
  const BifixCode code = bifix_code(*spec.shift, spec.phi, h);
  std::vector<std::string> words;
  for (const auto& u : code.words) {
    words.push_back(alphabet.render(u));
  }
  const XDegree xd = x_degree(*spec.shift, code);
  const AverageLength al = average_length(code, *spec.measure);
  out.results = Json{{"subgroup", labels_of(g, h.members())},
                     {"words", words},
                     {"complete_length", code.complete_length},
                     {"prefix_code", code.prefix_code},
                     {"suffix_code", code.suffix_code},
                     {"suffix_complete", code.suffix_complete},
                     {"degree_bound", code.degree_bound},
                     {"x_degree", xd.degree},
                     {"x_degree_witness", alphabet.render(xd.witness)},
                     {"average_length",
                      Json{{"by_words", al.by_words},
                           {"by_prefixes", al.by_prefixes},
                           {"difference", al.difference},
                           {"rational", rational_or_null(al.exact)}}},
                     {"parse_tree", render_parse_tree(alphabet, code)}};
  if (h.order() == 1) {
    const DegreeReport r = degree_surjectivity_check(spec.shift, spec.phi, *spec.measure);
    out.results["degree_check"] = Json{{"checked", r.checked},
                                       {"reason", r.reason},
                                       {"group_order", r.group_order},
                                       {"degree", r.degree},
                                       {"average_length", r.average},
                                       {"degree_ok", r.degree_ok},
                                       {"length_ok", r.length_ok}};
    if (r.checked) {
      // Z* = φ^-1(1) has density 1/|G| = 1/ℓ(U).
      out.results["code_density"] = Json{
          {"value", 1.0 / static_cast<double>(g.order())},
          {"rational", "1/" + std::to_string(g.order())},
          {"inverse_average_length", 1.0 / r.average}};
    }
  }
  out.certificates["bifix"] = "prefix-complete at length " + std::to_string(code.complete_length);
  if (!code.suffix_code || !code.suffix_complete) {
    out.warnings.push_back("suffix-side checks failed on the bifix code");
  }
  return out;
}

Section irreducibility_section(const ProblemSpec& spec) {
  Section out;
  const Shift& x = *spec.shift;
  const FiberErgodicity fe = fiber_ergodic(x, spec.phi);
  out.results["fiber_ergodic"] = fe.value;
  out.results["fiber_image"] = labels_of(*spec.group, fe.image);
  out.certificates["fiber_ergodic"] = fe.method;
  if (x.kind() != ShiftKind::sft) {
    out.results["phi_irreducible"] = nullptr;
    out.results["strongly_irreducible"] = nullptr;
    out.warnings.push_back("φ-irreducibility and strong irreducibility are decided for shifts of finite type only");
    return out;
  }
  const SiRelation si = strongly_irreducible(x);
  out.results["irreducible"] = si.irreducible;
  out.results["strongly_irreducible"] = si.strongly_irreducible;
  Json classes = Json::array();
  for (const auto& c : si.classes) {
    std::vector<std::string> ws;
    for (const auto& w : c) {
      ws.push_back(x.alphabet().render(w));
    }
    classes.push_back(ws);
  }
  out.results["si_classes"] = classes;
  if (si.irreducible) {
    out.results["phi_irreducible"] = phi_irreducible(x, spec.phi);
    out.results["skew_transitive"] = skew_transitive(x, spec.phi);
    out.certificates["phi_irreducible"] = "pair-graph";
  } else {
    out.results["phi_irreducible"] = nullptr;
    out.warnings.push_back("the shift is reducible");
  }
  return out;
}

Section sequence_section(const ProblemSpec& spec, const Settings& s) {
  Section out;
  const DensityQuery q = make_query(spec.shift, spec.measure, spec.phi, parse_k(*spec.group, spec.query));
  const SliceSeries series = slice_series(q, s.horizon - 1);
  out.results["K"] = labels_of(*spec.group, q.k);
  out.results["values"] = series.values;
  if (series.exact) {
    std::vector<std::string> ex;
    for (const auto& v : *series.exact) {
      ex.push_back(to_string(v));
    }
    out.results["rational"] = ex;
  }
  out.certificates["slices"] = series.method;
  return out;
}

Section probe_section() {
  Section out;
  const FibonacciProbe p = fibonacci_probe(4);
  Json rows = Json::array();
  for (const auto& r : p.rows) {
    rows.push_back(Json{{"n", r.n},
                        {"F(4n)", r.f4n},
                        {"mu_F(4n)", r.at_f4n},
                        {"F(4n+2)", r.f4n2},
                        {"mu_F(4n+2)", r.at_f4n2}});
  }
  Json series = Json::array();
  for (const auto& [m, v] : p.by_index) {
    series.push_back(Json{{"m", m}, {"value", v}});
  }
  out.results = Json{{"rows", rows},
                     {"F(4n)_increasing", p.increasing},
                     {"F(4n+2)_decreasing", p.decreasing},
                     {"by_index", series},
                     {"residue_split", p.residue_split}};
  out.certificates["slices"] = "substitution-windows";
  if (!p.increasing || !p.decreasing) {
    out.warnings.push_back(
        "along F(m) the slices tend to 1 for m = 1 mod 3 and to 0 otherwise; the F(4n) and "
        "F(4n+2) columns are not monotone");
  }
  return out;
}

Section contfrac_section(const Settings& s) {
  Section out;
  const ContfracDemo d = continued_fraction_demo(2, s.horizon);
  out.results = Json{{"modulus", d.modulus},
                     {"horizon", d.horizon},
                     {"q_even", exact_json(d.zero)},
                     {"q_odd", exact_json(d.one)},
                     {"empirical_q_even", d.empirical_zero},
                     {"empirical_q_odd", d.empirical_one}};
  out.certificates["q_even"] = d.zero.route;
  out.certificates["q_odd"] = d.one.route;
  return out;
}

Section densities_section(const ProblemSpec& spec, const Settings& s) {
  Section out;
  const FiniteGroup& g = *spec.group;
  const SliceDistribution dist = slice_distribution(*spec.measure, spec.phi, s.horizon - 1);
  Json rows = Json::array();
  double sum = 0;
  std::optional<Rational> exact_sum = Rational(0);
  bool all = true;
  for (Element e = 0; e < g.order(); ++e) {
    const DensityQuery q = make_query(spec.shift, spec.measure, spec.phi, {e});
    const ExactDensity ex = exact_density(q, {s.max_len, s.window_cap});
    const CesaroEstimate ces = cesaro_from(restrict_to(dist, {e}), s.horizon);
    rows.push_back(Json{{"K", Json::array({g.label(e)})},
                        {"exact", exact_json(ex)},
                        {"cesaro", cesaro_json(ces, dist.method)}});
    if (e == 0) {
      append(out.warnings, ex.warnings);
      out.certificates["exact"] = ex.route;
      out.certificates["cesaro"] = dist.method;
    }
    if (ex.value) {
      sum += *ex.value;
    } else {
      all = false;
    }
    if (exact_sum && ex.exact) {
      *exact_sum += *ex.exact;
    } else {
      exact_sum.reset();
    }
  }
  out.results["singletons"] = rows;
  if (all) {
    out.results["partition_sum"] = Json{{"value", sum}, {"rational", rational_or_null(exact_sum)}};
  }
  return out;
}

Section substitution_section(const ProblemSpec& spec, const Settings& s) {
  Section out;
  const Shift& x = *spec.shift;
  const auto& images = x.spec().substitution().images;
  const Alphabet& alphabet = x.alphabet();
  const InvertibilityOrder inv = invertibility_order(images, spec.phi, s.invert_cap);
  out.results["invertibility_order"] = inv.order ? Json(*inv.order) : Json(nullptr);
  out.results["invertibility_cap"] = inv.cap;
  out.results["invertibility_definitive"] = inv.definitive;
  const FreeInvertibility fi = free_group_invertible(images);
  Json inverse = Json::object();
  for (std::size_t a = 0; a < fi.inverse.size(); ++a) {
    inverse[alphabet.label(static_cast<Letter>(a))] = render_free(alphabet, fi.inverse[a]);
  }
  out.results["free_group_automorphism"] = Json{{"value", to_string(fi.value)},
                                                {"reason", fi.reason},
                                                {"abelian_determinant", fi.abelian_determinant},
                                                {"inverse", inverse}};
  const DendricResult dr = dendric_up_to(x, 6);
  out.results["dendric_up_to_6"] = Json{
      {"dendric", dr.dendric},
      {"witness", dr.witness ? Json(alphabet.render(*dr.witness)) : Json(nullptr)}};
  const ReturnBasisReport rb = return_basis_check(x, Word(1, 0), s.window_cap);
  std::vector<std::string> returns;
  std::vector<std::string> basis;
  for (const auto& r : rb.returns) {
    returns.push_back(alphabet.render(r));
  }
  for (const auto& b : rb.folded_basis) {
    basis.push_back(render_free(alphabet, b));
  }
  out.results["return_basis"] = Json{{"word", alphabet.render(rb.w)},
                                     {"returns", returns},
                                     {"certified", rb.certified},
                                     {"rank", rb.rank},
                                     {"basis", rb.basis},
                                     {"folded_basis", basis}};
  return out;
}

}  // namespace

std::shared_ptr<const FiniteGroup> parse_group(const Json& j, const std::string& pointer) {
  const std::string type = as_string(require(j, "type", pointer), child(pointer, "type"));
  if (type == "cyclic") {
    const std::size_t n = as_count(require(j, "n", pointer), child(pointer, "n"), 1, kMaxGroupOrder);
    return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n));
  }
  if (type == "symmetric") {
    const std::size_t n = as_count(require(j, "n", pointer), child(pointer, "n"), 1, 7);
    return std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(n));
  }
  if (type == "gl2") {
    const std::size_t m = as_count(require(j, "m", pointer), child(pointer, "m"), 2, 30);
    return std::make_shared<const FiniteGroup>(
        FiniteGroup::general_linear_2(static_cast<std::uint32_t>(m)));
  }
  if (type == "permutations") {
    const std::size_t d = as_count(require(j, "degree", pointer), child(pointer, "degree"), 1, 64);
    const std::string gp = child(pointer, "generators");
    const Json& gens = require(j, "generators", pointer);
    if (!gens.is_array()) {
      schema_error(gp, "expected an array");
    }
    std::vector<Permutation> ps;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      ps.push_back(parse_permutation(gens[i], d, child(gp, i)));
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(d, std::move(ps)));
  }
  if (type == "table") {
    const std::string tp = child(pointer, "table");
    const Json& t = require(j, "table", pointer);
    if (!t.is_array() || t.empty()) {
      schema_error(tp, "expected a square array");
    }
    std::vector<std::vector<std::size_t>> table;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_array() || t[i].size() != t.size()) {
        schema_error(child(tp, i), "expected a row of length " + std::to_string(t.size()));
      }
      std::vector<std::size_t> row;
      for (std::size_t k = 0; k < t.size(); ++k) {
        row.push_back(as_count(t[i][k], child(child(tp, i), k), 0, t.size() - 1));
      }
      table.push_back(std::move(row));
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table));
  }
  if (type == "product") {
    const std::string fp = child(pointer, "factors");
    const Json& fs = require(j, "factors", pointer);
    if (!fs.is_array() || fs.empty()) {
      schema_error(fp, "expected a nonempty array");
    }
    std::vector<FiniteGroup> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      factors.push_back(*parse_group(fs[i], child(fp, i)));
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::direct_product(factors));
  }
  schema_error(child(pointer, "type"), "unknown group type \"" + type + "\"");
}

ShiftSpec parse_shift(const Json& j, const Alphabet& alphabet, const std::string& pointer) {
  const std::string type = as_string(require(j, "type", pointer), child(pointer, "type"));
  if (type == "sft") {
    const std::size_t step = as_count(require(j, "step", pointer), child(pointer, "step"), 1, 16);
    const std::string fp = child(pointer, "forbidden");
    const Json& f = require(j, "forbidden", pointer);
    if (!f.is_array()) {
      schema_error(fp, "expected an array of words");
    }
    std::vector<Word> forbidden;
    for (std::size_t i = 0; i < f.size(); ++i) {
      Word w = parse_word(alphabet, f[i], child(fp, i));
      if (w.size() != step + 1) {
        schema_error(child(fp, i), "forbidden words must have length step + 1");
      }
      forbidden.push_back(std::move(w));
    }
    return ShiftSpec::make_sft(alphabet, step, std::move(forbidden));
  }
  if (type == "substitution") {
    const std::string rp = child(pointer, "rules");
    const Json& rules = require(j, "rules", pointer);
    if (!rules.is_object()) {
      schema_error(rp, "expected an object");
    }
    std::vector<Word> images(alphabet.size());
    for (const auto& [letter, image] : rules.items()) {
      if (!alphabet.find(letter)) {
        schema_error(child(rp, letter), "letter is not in the alphabet");
      }
    }
    for (Letter a = 0; a < alphabet.size(); ++a) {
      const std::string& l = alphabet.label(a);
      if (!rules.contains(l)) {
        schema_error(child(rp, l), "missing image of letter \"" + l + "\"");
      }
      images[a] = parse_word(alphabet, rules[l], child(rp, l));
      if (images[a].empty()) {
        schema_error(child(rp, l), "images must be nonempty");
      }
    }
    return ShiftSpec::make_substitution(alphabet, std::move(images));
  }
  if (type == "periodic") {
    const std::string wp = child(pointer, "word");
    Word w = parse_word(alphabet, require(j, "word", pointer), wp);
    if (w.empty()) {
      schema_error(wp, "the period must be nonempty");
    }
    return ShiftSpec::make_periodic(alphabet, std::move(w));
  }
  schema_error(child(pointer, "type"), "unknown shift type \"" + type + "\"");
}

Json shift_to_json(const ShiftSpec& spec) {
  const Alphabet& alphabet = spec.alphabet;
  Json j{{"alphabet", alphabet_json(alphabet)}};
  switch (spec.kind()) {
    case ShiftKind::sft: {
      std::vector<std::string> f;
      for (const auto& w : spec.sft().forbidden) {
        f.push_back(alphabet.render(w));
      }
      j["type"] = "sft";
      j["step"] = spec.sft().step;
      j["forbidden"] = f;
      break;
    }
    case ShiftKind::substitution: {
      Json rules = Json::object();
      for (Letter a = 0; a < alphabet.size(); ++a) {
        rules[alphabet.label(a)] = alphabet.render(spec.substitution().images[a]);
      }
      j["type"] = "substitution";
      j["rules"] = rules;
      break;
    }
    case ShiftKind::periodic:
      j["type"] = "periodic";
      j["word"] = alphabet.render(spec.periodic().word);
      break;
  }
  return j;
}

ShiftSpec shift_from_json(const Json& j) {
  const Alphabet alphabet = parse_alphabet(require(j, "alphabet", ""), "/alphabet");
  return parse_shift(j, alphabet, "");
}

Json cobounding_to_json(const FiniteGroup& g, const Alphabet& alphabet, const CoboundingMap& alpha) {
  Json assignment = Json::object();
  const auto reps = alpha.representatives();
  for (std::size_t i = 0; i < alpha.cylinders.size(); ++i) {
    assignment[alphabet.render(alpha.cylinders[i])] = g.label(reps[i]);
  }
  return Json{{"subgroup", labels_of(g, alpha.h.members())},
              {"cylinder_length", alpha.length},
              {"assignment", assignment}};
}

CoboundingMap cobounding_from_json(const Json& j, const Shift& x, const GroupMorphism& phi) {
  const FiniteGroup& g = phi.group();
  const Json& sub = require(j, "subgroup", "");
  if (!sub.is_array()) {
    schema_error("/subgroup", "expected an array");
  }
  std::vector<Element> members;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    members.push_back(parse_element_ref(g, sub[i], child("/subgroup", i)));
  }
  std::sort(members.begin(), members.end());
  CoboundingMap alpha;
  alpha.h = Subgroup(g, members);
  alpha.cosets = RightCosets(g, alpha.h);
  alpha.length = as_count(require(j, "cylinder_length", ""), "/cylinder_length", 0, 64);
  alpha.cylinders = *x.language(alpha.length);
  const Json& as = require(j, "assignment", "");
  if (!as.is_object() || as.size() != alpha.cylinders.size()) {
    schema_error("/assignment", "expected one entry per cylinder");
  }
  for (const auto& w : alpha.cylinders) {
    const std::string key = x.alphabet().render(w);
    const Json& v = require(as, key, "/assignment");
    alpha.assignment.push_back(alpha.cosets.index_of(parse_element_ref(g, v, child("/assignment", key))));
  }
  return alpha;
}

ProblemSpec parse_spec(const Json& j) {
  if (!j.is_object()) {
    schema_error("", "the problem spec must be a JSON object");
  }
  ProblemSpec spec;
  if (j.contains("name")) {
    spec.name = as_string(j["name"], "/name");
  }
  const Alphabet alphabet = parse_alphabet(require(j, "alphabet", ""), "/alphabet");
  spec.group = parse_group(require(j, "group", ""), "/group");
  spec.group_json = j["group"];

  const Json& m = require(j, "morphism", "");
  if (!m.is_object()) {
    schema_error("/morphism", "expected an object mapping letters to group elements");
  }
  for (const auto& [letter, value] : m.items()) {
    if (!alphabet.find(letter)) {
      schema_error(child("/morphism", letter), "letter is not in the alphabet");
    }
  }
  std::vector<Element> images;
  for (Letter a = 0; a < alphabet.size(); ++a) {
    const std::string& l = alphabet.label(a);
    if (!m.contains(l)) {
      schema_error(child("/morphism", l), "missing image of letter \"" + l + "\"");
    }
    images.push_back(parse_element_ref(*spec.group, m[l], child("/morphism", l)));
  }
  spec.phi = GroupMorphism(alphabet, spec.group, std::move(images));
  if (j.contains("onto")) {
    if (!j["onto"].is_boolean()) {
      schema_error("/onto", "expected a boolean");
    }
    if (j["onto"].get<bool>() && !spec.phi.is_onto()) {
      semantic_error("the morphism is declared onto but its image is a proper subgroup");
    }
  }

  spec.shift = make_shift(parse_shift(require(j, "shift", ""), alphabet, "/shift"));
  if (j.contains("measure")) {
    spec.measure_json = j["measure"];
    spec.measure = parse_measure(j["measure"], spec.shift, "/measure");
  } else {
    spec.measure_json = Json{{"type", spec.shift->kind() == ShiftKind::sft ? "parry" : "unique"}};
    spec.measure = default_measure(spec.shift);
  }
  if (j.contains("query")) {
    if (!j["query"].is_object()) {
      schema_error("/query", "expected an object");
    }
    spec.query = j["query"];
  }
  return spec;
}

ProblemSpec parse_spec_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    schema_error("", std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(j);
}

Json to_json(const ProblemSpec& spec) {
  const Alphabet& alphabet = spec.shift->alphabet();
  Json morphism = Json::object();
  for (Letter a = 0; a < alphabet.size(); ++a) {
    morphism[alphabet.label(a)] = spec.group->label(spec.phi.image(a));
  }
  Json shift = shift_to_json(spec.shift->spec());
  shift.erase("alphabet");
  Json j{{"alphabet", alphabet_json(alphabet)},
         {"group", spec.group_json},
         {"morphism", morphism},
         {"shift", shift},
         {"measure", spec.measure_json},
         {"query", spec.query}};
  if (!spec.name.empty()) {
    j["name"] = spec.name;
  }
  return j;
}

bool command_needs_spec(std::string_view command) {
  return command != "probe-fibonacci" && command != "demo-contfrac";
}

Json run_command(std::string_view command, const ProblemSpec* spec, const RunOptions& options) {
  Section s;
  const std::string cmd(command);
  if (cmd == "density") {
    const ProblemSpec& p = need(spec, command);
    s = density_section(p, settings_for(spec, options));
  } else if (cmd == "minimality") {
    const ProblemSpec& p = need(spec, command);
    need_minimal(p, command);
    s = minimality_section(p, settings_for(spec, options));
  } else if (cmd == "cobounding") {
    const ProblemSpec& p = need(spec, command);
    need_minimal(p, command);
    s = cobounding_section(p, settings_for(spec, options));
  } else if (cmd == "bifix") {
    const ProblemSpec& p = need(spec, command);
    need_minimal(p, command);
    s = bifix_section(p);
  } else if (cmd == "irreducibility") {
    s = irreducibility_section(need(spec, command));
  } else if (cmd == "sequence") {
    s = sequence_section(need(spec, command), settings_for(spec, options, 200));
  } else if (cmd == "probe-fibonacci") {
    s = probe_section();
  } else if (cmd == "demo-contfrac") {
    s = contfrac_section(settings_for(spec, options, 10000));
  } else if (cmd == "report") {
    const ProblemSpec& p = need(spec, command);
    const Settings set = settings_for(spec, options);
    std::vector<std::pair<std::string, Section>> parts;
    parts.emplace_back("irreducibility", irreducibility_section(p));
    if (p.shift->kind() != ShiftKind::sft) {
      parts.emplace_back("minimality", minimality_section(p, set));
      parts.emplace_back("cobounding", cobounding_section(p, set));
      try {
        parts.emplace_back("bifix", bifix_section(p));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::semantic) {
          throw;
        }
        Section skipped;
        skipped.warnings.push_back(std::string("bifix: ") + e.what());
        parts.emplace_back("bifix", skipped);
      }
    }
    if (p.shift->kind() == ShiftKind::substitution) {
      parts.emplace_back("substitution", substitution_section(p, set));
    }
    parts.emplace_back("densities", densities_section(p, set));
    for (auto& [name, part] : parts) {
      s.results[name] = part.results;
      for (auto& [k, v] : part.certificates.items()) {
        s.certificates[name + "." + k] = v;
      }
      append(s.warnings, part.warnings);
    }
  } else {
    schema_error("", "unknown command \"" + cmd + "\"");
  }
  Json report{{"command", cmd},
              {"results", s.results},
              {"certificates", s.certificates},
              {"warnings", s.warnings}};
  if (spec) {
    report["name"] = spec->name;
    report["inputs"] = to_json(*spec);
  }
  return report;
}

std::string render_csv(const Json& report) {
  std::ostringstream out;
  out.precision(17);
  const std::string cmd = report.at("command").get<std::string>();
  const Json& r = report.at("results");
  if (cmd == "sequence") {
    out << "i,value\n";
    const Json& v = r.at("values");
    for (std::size_t i = 0; i < v.size(); ++i) {
      out << i << ',' << v[i].get<double>() << '\n';
    }
    return out.str();
  }
  if (cmd == "probe-fibonacci") {
    out << "m,F(m),value\n";
    std::vector<std::size_t> fib{0, 1};
    for (const auto& row : r.at("by_index")) {
      const auto m = row.at("m").get<std::size_t>();
      while (fib.size() <= m) {
        fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
      }
      out << m << ',' << fib[m] << ',' << row.at("value").get<double>() << '\n';
    }
    return out.str();
  }
  semantic_error("CSV output is available for the sequence and probe-fibonacci commands");
}

}  // namespace skewdens
