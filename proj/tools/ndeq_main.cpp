#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ndeq/cli.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream buffer;
  buffer << f.rdbuf();
  out = buffer.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver for games with nondeterministic strategies"};
  app.require_subcommand(1);

  std::string file;
  std::string variant_name = "full";
  std::string csv_path;
  bool trace = false;
  bool json = false;
  std::size_t cap = ndeq::oracle::kDefaultProfileCap;

  const char* variant_help = "best-response variant: full, br1, br2, br3, br4";

  CLI::App* solve = app.add_subcommand(
      "solve", "iterated elimination from the full profile");
  solve->add_option("file", file, "game file (.ndg or .ndmg)")->required();
  solve->add_option("--br", variant_name, variant_help);
  solve->add_flag("--trace", trace, "print every elimination round");
  solve->add_flag("--json", json, "machine-readable output");

  CLI::App* nash = app.add_subcommand("nash", "list pure Nash profiles");
  nash->add_option("file", file, "game file (.ndg)")->required();

  CLI::App* orc = app.add_subcommand(
      "oracle", "exhaustive equilibrium enumeration and engine cross-check");
  orc->add_option("file", file, "game file (.ndg or .ndmg)")->required();
  orc->add_option("--br", variant_name, variant_help);
  orc->add_option("--cap", cap, "profile enumeration cap");

  CLI::App* classg = app.add_subcommand(
      "classg", "aggregate equilibrium payoff over the 2x2 sign class");
  classg->add_option("--csv", csv_path, "write per-game rows to this file");

  CLI11_PARSE(app, argc, argv);

  if (classg->parsed())
    return ndeq::cli::cmd_classg(csv_path, std::cout, std::cerr);

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "error: cannot read " << file << "\n";
    return ndeq::cli::kExitIo;
  }

  if (nash->parsed()) return ndeq::cli::cmd_nash(text, std::cout, std::cerr);

  std::optional<ndeq::strategic::BRVariant> variant =
      ndeq::strategic::variant_from_name(variant_name);
  if (!variant) {
    std::cerr << "error: unknown variant '" << variant_name << "'\n";
    return ndeq::cli::kExitBadInput;
  }

  if (solve->parsed()) {
    ndeq::cli::SolveOptions opts;
    opts.variant = *variant;
    opts.trace = trace;
    opts.json = json;
    return ndeq::cli::cmd_solve(text, opts, std::cout, std::cerr);
  }
  return ndeq::cli::cmd_oracle(text, *variant, cap, std::cout, std::cerr);
}
