// nsproj: runs construction scripts over the non-standard projective kernel.
//
//   nsproj run <file|-> [--order K] [--mode real|complex] [--format text|json]
//                       [--check] [--allow-decimal]
//
// Exit status: 0 ok, 1 assertion failure (with --check), 2 parse or
// evaluation error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsproj/dsl.hpp"

namespace {

struct RunOptions {
  std::string path;
  std::uint32_t order = 8;
  std::string mode = "complex";
  std::string format = "text";
  bool check = false;
  bool allow_decimal = false;
};

bool read_source(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int run(const RunOptions& opt) {
  std::string source;
  if (!read_source(opt.path, source)) {
    std::cerr << "nsproj: cannot read '" << opt.path << "'\n";
    return 2;
  }
  nsproj::dsl::Program program;
  try {
    program = nsproj::dsl::parse(source, {.allow_decimal = opt.allow_decimal});
  } catch (const nsproj::Error& e) {
    if (opt.format == "json") {
      nlohmann::json doc{{"schema", 1},
                         {"statements", nlohmann::json::array()},
                         {"error", {{"kind", nsproj::to_string(e.kind())}, {"message", e.detail()}}}};
      std::cout << doc.dump() << "\n";
    }
    std::cerr << opt.path << ":" << e.what() << "\n";
    return 2;
  }
  nsproj::FieldConfig cfg{.truncation_order = opt.order, .real = opt.mode == "real"};
  nsproj::dsl::Report report = nsproj::dsl::evaluate(program, cfg);
  std::cout << (opt.format == "json" ? nsproj::dsl::emit_json(report) + "\n" : nsproj::dsl::emit_text(report));
  return report.exit_status(opt.check);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact non-standard projective geometry: construction script runner"};
  app.require_subcommand(1);

  RunOptions opt;
  CLI::App* cmd = app.add_subcommand("run", "Evaluate a construction script and print a report");
  cmd->add_option("file", opt.path, "Script path, or - for stdin")->required();
  cmd->add_option("--order", opt.order, "Truncation order K (significant orders kept)")
      ->check(CLI::Range(1u, 1000u))
      ->capture_default_str();
  cmd->add_option("--mode", opt.mode, "Ambient field")
      ->check(CLI::IsMember({"real", "complex"}))
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_flag("--check", opt.check, "Exit with status 1 when an assertion fails");
  cmd->add_flag("--allow-decimal", opt.allow_decimal, "Accept finite decimal literals as exact rationals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run(opt);
}
