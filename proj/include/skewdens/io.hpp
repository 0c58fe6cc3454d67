#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "skewdens/algebra.hpp"
#include "skewdens/cobounding.hpp"
#include "skewdens/measures.hpp"
#include "skewdens/shifts.hpp"

namespace skewdens {

using Json = nlohmann::json;

struct ProblemSpec {
  std::string name;
  Json group_json;  // normalized group spec
  std::shared_ptr<const FiniteGroup> group;
  std::shared_ptr<const Shift> shift;
  Json measure_json;
  std::shared_ptr<const CylinderMeasure> measure;
  GroupMorphism phi;
  Json query = Json::object();
};

// Schema errors carry a JSON pointer; semantic errors come from the modules.
ProblemSpec parse_spec(const Json& j);
ProblemSpec parse_spec_text(std::string_view text);
Json to_json(const ProblemSpec& spec);

std::shared_ptr<const FiniteGroup> parse_group(const Json& j, const std::string& pointer = "/group");
ShiftSpec parse_shift(const Json& j, const Alphabet& alphabet, const std::string& pointer = "/shift");
// The shift together with its alphabet, so it re-parses on its own.
Json shift_to_json(const ShiftSpec& spec);
ShiftSpec shift_from_json(const Json& j);

Json cobounding_to_json(const FiniteGroup& g, const Alphabet& alphabet, const CoboundingMap& alpha);
CoboundingMap cobounding_from_json(const Json& j, const Shift& x, const GroupMorphism& phi);

struct RunOptions {
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> max_cylinder;
  std::optional<std::size_t> cap;
};

// Commands that need no problem spec.
bool command_needs_spec(std::string_view command);

// Report object {command, name, inputs, results, certificates, warnings}.
Json run_command(std::string_view command, const ProblemSpec* spec, const RunOptions& options);

// CSV rendering for series-shaped reports (sequence, probe-fibonacci).
std::string render_csv(const Json& report);

}  // namespace skewdens
