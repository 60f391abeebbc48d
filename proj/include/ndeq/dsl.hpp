#pragma once

#include <map>
#include <optional>
#include <string>

#include "ndeq/core.hpp"
#include "ndeq/multigame.hpp"
#include "ndeq/strategic.hpp"

namespace ndeq::cli {

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct ValidationError : Error {
  ValidationError(const std::string& msg, std::string identifier, int line)
      : Error("line " + std::to_string(line) + ": " + msg),
        identifier(std::move(identifier)),
        line(line) {}
  std::string identifier;
  int line;
};

// A parsed .ndg / .ndmg file. Exactly one of the two payloads is set.
struct GameDocument {
  enum class Kind { STRATEGIC, MULTI };

  Kind kind = Kind::STRATEGIC;
  std::string name;
  bool numeric = false;
  std::optional<strategic::StrategicGame> strategic_game;
  std::optional<multigame::MultiGame> multi_game;
  // First line of each directive ("game", "agents", "cell (v1,h1)", ...),
  // kept for error reporting and tooling.
  std::map<std::string, int> spans;
};

// Line-oriented format. `#` starts a comment, identifiers are case-sensitive.
//
//   game <name>                          multigame <name>
//   agents <id>+                         agents <id>+
//   outcomes numeric | outcomes <id>+    nodes <id>+
//   strategies <agent>: <id>+            start <node>          (optional)
//   prefs <agent>: <oc> < <oc>, ...      outcomes <id>+        (explicit mode)
//   cell (<s>,...) -> <outcome>          prefs <agent>: ...    (explicit mode)
//   cell (<s>,...) -> <int> ... <int>    node <id>:
//                                          strategies <agent>: <id>+
//                                          cell (<s>,...) -> <int>... next <n>
//                                          cell (<s>,...) -> outcome <oc> next <n>
//
// Numeric cells carry one integer per agent and mint a fresh outcome per
// cell; explicit cells name a declared outcome. Multigames default to
// numeric mode; declaring `outcomes <id>+` (plus `prefs`) before the first
// node section switches them to explicit cells.
GameDocument parse(const std::string& text);

// Inverse pretty-printer: parse(render(doc)) reconstructs an equal document.
std::string render(const GameDocument& doc);

}  // namespace ndeq::cli
