// Command-line front end: skewdens <command> [spec.json | -] [flags]
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "skewdens/error.hpp"
#include "skewdens/io.hpp"

#ifndef SKEWDENS_FIXTURE_DIR
#define SKEWDENS_FIXTURE_DIR "fixtures"
#endif

namespace {

int exit_code(skewdens::ErrorKind kind) {
  switch (kind) {
    case skewdens::ErrorKind::schema:
      return 2;
    case skewdens::ErrorKind::semantic:
      return 3;
    case skewdens::ErrorKind::internal:
      return 4;
  }
  return 4;
}

std::string kind_name(skewdens::ErrorKind kind) {
  switch (kind) {
    case skewdens::ErrorKind::schema:
      return "schema";
    case skewdens::ErrorKind::semantic:
      return "semantic";
    case skewdens::ErrorKind::internal:
      return "internal";
  }
  return "internal";
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path fixture_path(const std::string& name) {
  std::string file = name;
  if (file.size() < 5 || file.substr(file.size() - 5) != ".json") {
    file += ".json";
  }
  for (const std::filesystem::path dir : {std::filesystem::path("fixtures"),
                                          std::filesystem::path(SKEWDENS_FIXTURE_DIR)}) {
    if (std::filesystem::exists(dir / file)) {
      return dir / file;
    }
  }
  throw skewdens::Error(skewdens::ErrorKind::schema, "no fixture named \"" + name + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densities of group languages in shift spaces"};
  std::string command;
  std::string input;
  std::string fixture;
  std::string format = "json";
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> max_cylinder;
  std::optional<std::size_t> cap;

  app.add_option("command", command,
                 "density | minimality | cobounding | bifix | irreducibility | sequence | "
                 "probe-fibonacci | demo-contfrac | report")
      ->required();
  app.add_option("spec", input, "problem spec file, or - for stdin");
  app.add_option("--fixture", fixture, "bundled fixture name");
  app.add_option("--horizon", horizon, "Cesàro horizon N")->check(CLI::PositiveNumber);
  app.add_option("--max-cylinder", max_cylinder, "longest cylinder in the cobounding sweep");
  app.add_option("--cap", cap, "invertibility and return-window cap");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::optional<skewdens::ProblemSpec> spec;
    if (!fixture.empty() && !input.empty()) {
      throw skewdens::Error(skewdens::ErrorKind::schema, "give either a spec file or --fixture");
    }
    if (!fixture.empty()) {
      std::ifstream in(fixture_path(fixture));
      spec = skewdens::parse_spec_text(read_all(in));
    } else if (input == "-") {
      spec = skewdens::parse_spec_text(read_all(std::cin));
    } else if (!input.empty()) {
      std::ifstream in(input);
      if (!in) {
        throw skewdens::Error(skewdens::ErrorKind::schema, "cannot read " + input);
      }
      spec = skewdens::parse_spec_text(read_all(in));
    } else if (skewdens::command_needs_spec(command)) {
      throw skewdens::Error(skewdens::ErrorKind::schema,
                            "command \"" + command + "\" needs a spec file or --fixture");
    }
    const skewdens::RunOptions options{horizon, max_cylinder, cap};
    const skewdens::Json report =
        skewdens::run_command(command, spec ? &*spec : nullptr, options);
    if (format == "csv") {
      std::cout << skewdens::render_csv(report);
    } else {
      std::cout << report.dump(2) << '\n';
    }
    return 0;
  } catch (const skewdens::Error& e) {
    skewdens::Json err{{"error", kind_name(e.kind())}, {"message", e.what()}};
    if (e.kind() == skewdens::ErrorKind::schema) {
      err["pointer"] = e.pointer();
    }
    std::cerr << err.dump(2) << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << skewdens::Json{{"error", "internal"}, {"message", e.what()}}.dump(2) << '\n';
    return 4;
  }
}
