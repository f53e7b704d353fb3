#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "daff/dsl/run.hpp"
#include "daff/error.hpp"

namespace daff::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_format() {
  const char* env = std::getenv("DAFF_FORMAT");
  return env && *env ? env : "text";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double affine bundles: constructions and verification suites", "daff"};
  app.require_subcommand(1);

  std::string file, op, suite, output, format = default_format();
  std::uint64_t seed = 0;
  int trials = 100;

  auto* check = app.add_subcommand("check", "Parse and validate a .daff file");
  check->add_option("file", file, "Input file")->required();
  check->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* build = app.add_subcommand("build", "Run a construction on every applicable block");
  build->add_option("--op", op, "Construction")->required();
  build->add_option("file", file, "Input file")->required();
  build->add_option("-o,--output", output, "Write constructed objects (or the report) here");
  build->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name")->required();
  verify->add_option("--trials", trials, "Trials per randomized check")->check(CLI::Range(1, 100000));
  verify->add_option("--seed", seed, "Global seed");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("file", file, "Input file")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (format != "json" && format != "text") {
    err << "unknown format '" << format << "' (DAFF_FORMAT)\n";
    return 2;
  }

  std::string command = "check";
  if (build->parsed()) command = "build:" + op;
  if (verify->parsed()) command = "verify:" + suite;

  dsl::Report report;
  try {
    const dsl::Document doc = dsl::parse(read_file(file));
    report = dsl::run(doc, command, seed, trials);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "json" ? dsl::render_json(report) : dsl::render_text(report);
  out << text;
  if (!output.empty()) {
    std::ofstream o(output, std::ios::binary);
    o << (report.produced.blocks.empty() ? text : dsl::print(report.produced));
    if (!o) {
      err << "cannot write '" << output << "'\n";
      return 2;
    }
  }
  return report.passed() ? 0 : 1;
}

}  // namespace daff::cli
