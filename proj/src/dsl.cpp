#include "ndeq/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <vector>

namespace ndeq::cli {

namespace {

struct Token {
  enum class Type { Word, Number, LParen, RParen, Comma, Colon, Less, Arrow };
  Type type;
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& text, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    int column = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Type::Arrow, "->", column});
      i += 2;
      continue;
    }
    if (c == '(') { out.push_back({Token::Type::LParen, "(", column}); ++i; continue; }
    if (c == ')') { out.push_back({Token::Type::RParen, ")", column}); ++i; continue; }
    if (c == ',') { out.push_back({Token::Type::Comma, ",", column}); ++i; continue; }
    if (c == ':') { out.push_back({Token::Type::Colon, ":", column}); ++i; continue; }
    if (c == '<') { out.push_back({Token::Type::Less, "<", column}); ++i; continue; }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back({Token::Type::Number, text.substr(i, j - i), column});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      out.push_back({Token::Type::Word, text.substr(i, j - i), column});
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_no,
                     column);
  }
  return out;
}

struct Line {
  int no;
  std::vector<Token> tokens;
};

class Cursor {
 public:
  Cursor(const Line& line) : line_(line) {}

  bool done() const { return i_ >= line_.tokens.size(); }

  const Token& peek() const {
    if (done())
      throw ParseError("unexpected end of line", line_.no, end_column());
    return line_.tokens[i_];
  }

  Token take(Token::Type type, const char* what) {
    const Token& t = peek();
    if (t.type != type)
      throw ParseError(std::string("expected ") + what + ", found '" + t.text +
                           "'",
                       line_.no, t.column);
    return line_.tokens[i_++];
  }

  std::string word(const char* what) { return take(Token::Type::Word, what).text; }

  int number(const char* what) {
    Token t = take(Token::Type::Number, what);
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      throw ParseError("integer out of range: " + t.text, line_.no, t.column);
    }
  }

  void finish() {
    if (!done())
      throw ParseError("trailing input: '" + peek().text + "'", line_.no,
                       peek().column);
  }

  int line_no() const { return line_.no; }

 private:
  int end_column() const {
    if (line_.tokens.empty()) return 1;
    const Token& t = line_.tokens.back();
    return t.column + static_cast<int>(t.text.size());
  }

  const Line& line_;
  std::size_t i_ = 0;
};

std::string tuple_key(const std::vector<std::string>& ids) {
  std::string key = "(";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) key += ",";
    key += ids[i];
  }
  return key + ")";
}

struct PrefDecl {
  std::string agent;
  std::vector<std::pair<std::string, std::string>> pairs;
  int line;
};

struct CellDecl {
  std::vector<std::string> tuple;
  bool numeric = false;
  std::vector<int> payoffs;    // numeric form
  std::string outcome;         // explicit form
  std::string next;            // multigames only
  int line = 0;
};

struct NodeSection {
  std::string node;
  int line = 0;
  std::vector<std::pair<std::string, std::vector<std::string>>> strategies;
  std::vector<CellDecl> cells;
};

std::size_t find_id(const std::vector<std::string>& ids, const std::string& id) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return i;
  return ids.size();
}

std::size_t require_id(const std::vector<std::string>& ids, const std::string& id,
                       const char* what, int line) {
  std::size_t i = find_id(ids, id);
  if (i == ids.size())
    throw ValidationError(std::string("unknown ") + what + " '" + id + "'", id,
                          line);
  return i;
}

std::vector<std::string> id_list(Cursor& cur, const char* what) {
  std::vector<std::string> ids;
  ids.push_back(cur.word(what));
  while (!cur.done()) ids.push_back(cur.word(what));
  return ids;
}

void reject_duplicates(const std::vector<std::string>& ids, const char* what,
                       int line) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (ids[i] == ids[j])
        throw ValidationError(std::string("duplicate ") + what + " '" + ids[i] +
                                  "'",
                              ids[i], line);
}

// Tuple and arrow shared by all cell forms: `cell (a,b,...) ->`.
CellDecl parse_cell_head(Cursor& cur) {
  CellDecl cell;
  cell.line = cur.line_no();
  cur.take(Token::Type::LParen, "'('");
  cell.tuple.push_back(cur.word("strategy identifier"));
  while (cur.peek().type == Token::Type::Comma) {
    cur.take(Token::Type::Comma, "','");
    cell.tuple.push_back(cur.word("strategy identifier"));
  }
  cur.take(Token::Type::RParen, "')'");
  cur.take(Token::Type::Arrow, "'->'");
  return cell;
}

class Parser {
 public:
  explicit Parser(const std::string& text) {
    int no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t eol = text.find('\n', start);
      std::string raw = text.substr(
          start, eol == std::string::npos ? std::string::npos : eol - start);
      ++no;
      std::vector<Token> tokens = tokenize(raw, no);
      if (!tokens.empty()) lines_.push_back({no, std::move(tokens)});
      if (eol == std::string::npos) break;
      start = eol + 1;
    }
  }

  GameDocument run() {
    if (lines_.empty()) throw ParseError("empty input", 1, 1);
    Cursor head(lines_[0]);
    std::string first = head.word("'game' or 'multigame'");
    GameDocument doc;
    doc.name = head.word("game name");
    head.finish();
    span(doc, first, 0);
    if (first == "game") {
      doc.kind = GameDocument::Kind::STRATEGIC;
      parse_strategic(doc);
    } else if (first == "multigame") {
      doc.kind = GameDocument::Kind::MULTI;
      parse_multi(doc);
    } else {
      throw ParseError("expected 'game' or 'multigame', found '" + first + "'",
                       lines_[0].no, lines_[0].tokens[0].column);
    }
    return doc;
  }

 private:
  void span(GameDocument& doc, const std::string& key, std::size_t line_idx) {
    doc.spans.emplace(key, lines_[line_idx].no);
  }

  void parse_strategic(GameDocument& doc) {
    std::vector<std::string> agents;
    bool have_agents = false, have_outcomes = false;
    bool numeric = false;
    std::vector<std::string> outcome_ids;
    std::vector<std::pair<std::string, std::vector<std::string>>> strategies;
    std::vector<PrefDecl> prefs;
    std::vector<CellDecl> cells;
    int agents_line = 0;

    for (std::size_t li = 1; li < lines_.size(); ++li) {
      Cursor cur(lines_[li]);
      std::string directive = cur.word("directive");
      if (directive == "agents") {
        if (have_agents)
          throw ParseError("duplicate 'agents' directive", cur.line_no(), 1);
        agents = id_list(cur, "agent identifier");
        reject_duplicates(agents, "agent", cur.line_no());
        have_agents = true;
        agents_line = cur.line_no();
        span(doc, "agents", li);
      } else if (directive == "outcomes") {
        if (have_outcomes)
          throw ParseError("duplicate 'outcomes' directive", cur.line_no(), 1);
        std::string first = cur.word("outcome identifier or 'numeric'");
        if (first == "numeric" && cur.done()) {
          numeric = true;
        } else {
          outcome_ids.push_back(first);
          while (!cur.done()) outcome_ids.push_back(cur.word("outcome identifier"));
          reject_duplicates(outcome_ids, "outcome", cur.line_no());
        }
        have_outcomes = true;
        span(doc, "outcomes", li);
      } else if (directive == "strategies") {
        std::string agent = cur.word("agent identifier");
        cur.take(Token::Type::Colon, "':'");
        std::vector<std::string> ids = id_list(cur, "strategy identifier");
        reject_duplicates(ids, "strategy", cur.line_no());
        require_id(agents, agent, "agent", cur.line_no());
        for (const auto& [existing, _] : strategies)
          if (existing == agent)
            throw ValidationError("duplicate strategies for agent '" + agent +
                                      "'",
                                  agent, cur.line_no());
        strategies.emplace_back(agent, std::move(ids));
        span(doc, "strategies " + agent, li);
      } else if (directive == "prefs") {
        PrefDecl decl;
        decl.agent = cur.word("agent identifier");
        decl.line = cur.line_no();
        require_id(agents, decl.agent, "agent", cur.line_no());
        cur.take(Token::Type::Colon, "':'");
        for (;;) {
          std::string worse = cur.word("outcome identifier");
          cur.take(Token::Type::Less, "'<'");
          std::string better = cur.word("outcome identifier");
          decl.pairs.emplace_back(worse, better);
          if (cur.done()) break;
          cur.take(Token::Type::Comma, "','");
        }
        prefs.push_back(std::move(decl));
        span(doc, "prefs " + prefs.back().agent, li);
      } else if (directive == "cell") {
        CellDecl cell = parse_cell_head(cur);
        if (cur.peek().type == Token::Type::Number) {
          cell.numeric = true;
          while (!cur.done()) cell.payoffs.push_back(cur.number("payoff"));
        } else {
          cell.outcome = cur.word("outcome identifier");
          cur.finish();
        }
        span(doc, "cell " + tuple_key(cell.tuple), li);
        cells.push_back(std::move(cell));
      } else {
        throw ParseError("unknown directive '" + directive + "'", cur.line_no(),
                         1);
      }
    }

    if (!have_agents)
      throw ValidationError("missing 'agents' directive", doc.name, 1);
    if (!have_outcomes)
      throw ValidationError("missing 'outcomes' directive", doc.name, 1);
    doc.numeric = numeric;

    std::vector<std::vector<std::string>> strategy_names(agents.size());
    for (std::size_t a = 0; a < agents.size(); ++a) {
      std::size_t i = find_id_in(strategies, agents[a]);
      if (i == strategies.size())
        throw ValidationError("no strategies declared for agent '" + agents[a] +
                                  "'",
                              agents[a], agents_line);
      strategy_names[a] = strategies[i].second;
    }

    std::size_t cell_count = 1;
    for (const auto& names : strategy_names) cell_count *= names.size();

    std::vector<char> filled(cell_count, 0);
    auto fill = [&](const CellDecl& cell) {
      if (cell.tuple.size() != agents.size())
        throw ValidationError("cell tuple has " +
                                  std::to_string(cell.tuple.size()) +
                                  " entries for " +
                                  std::to_string(agents.size()) + " agents",
                              tuple_key(cell.tuple), cell.line);
      std::size_t idx = 0;
      for (std::size_t a = 0; a < agents.size(); ++a)
        idx = idx * strategy_names[a].size() +
              require_id(strategy_names[a], cell.tuple[a], "strategy", cell.line);
      if (filled[idx])
        throw ValidationError("duplicate cell " + tuple_key(cell.tuple),
                              tuple_key(cell.tuple), cell.line);
      filled[idx] = 1;
      return idx;
    };
    auto check_total = [&]() {
      for (std::size_t i = 0; i < cell_count; ++i)
        if (!filled[i]) {
          std::vector<std::string> tuple(agents.size());
          std::size_t rest = i;
          for (std::size_t a = agents.size(); a-- > 0;) {
            tuple[a] = strategy_names[a][rest % strategy_names[a].size()];
            rest /= strategy_names[a].size();
          }
          throw ValidationError("missing cell " + tuple_key(tuple),
                                tuple_key(tuple), 1);
        }
    };

    if (numeric) {
      if (!prefs.empty())
        throw ValidationError(
            "prefs are not allowed in numeric mode (payoffs define them)",
            prefs.front().agent, prefs.front().line);
      std::vector<std::vector<int>> cell_payoffs(cell_count);
      for (const CellDecl& cell : cells) {
        if (!cell.numeric || cell.payoffs.size() != agents.size())
          throw ValidationError(
              "numeric cell needs one integer payoff per agent",
              tuple_key(cell.tuple), cell.line);
        cell_payoffs[fill(cell)] = cell.payoffs;
      }
      check_total();
      doc.strategic_game = strategic::StrategicGame::from_payoffs(
          doc.name, agents, strategy_names, std::move(cell_payoffs));
    } else {
      std::vector<OutcomeId> table(cell_count, 0);
      for (const CellDecl& cell : cells) {
        if (cell.numeric)
          throw ValidationError("explicit mode expects an outcome identifier",
                                tuple_key(cell.tuple), cell.line);
        std::size_t oc = require_id(outcome_ids, cell.outcome, "outcome",
                                    cell.line);
        table[fill(cell)] = static_cast<OutcomeId>(oc);
      }
      check_total();
      doc.strategic_game = strategic::StrategicGame(
          doc.name, agents, strategy_names, outcome_ids,
          build_prefs(prefs, agents, outcome_ids), std::move(table));
    }
  }

  void parse_multi(GameDocument& doc) {
    std::vector<std::string> agents, nodes, outcome_ids;
    bool have_agents = false, have_nodes = false, have_outcomes = false;
    bool numeric_directive = false;
    std::string start_node;
    int start_line = 0;
    std::vector<PrefDecl> prefs;
    std::vector<NodeSection> sections;

    for (std::size_t li = 1; li < lines_.size(); ++li) {
      Cursor cur(lines_[li]);
      std::string directive = cur.word("directive");
      bool in_section = !sections.empty();
      if (directive == "agents") {
        if (have_agents)
          throw ParseError("duplicate 'agents' directive", cur.line_no(), 1);
        agents = id_list(cur, "agent identifier");
        reject_duplicates(agents, "agent", cur.line_no());
        have_agents = true;
        span(doc, "agents", li);
      } else if (directive == "nodes") {
        if (have_nodes)
          throw ParseError("duplicate 'nodes' directive", cur.line_no(), 1);
        nodes = id_list(cur, "node identifier");
        reject_duplicates(nodes, "node", cur.line_no());
        have_nodes = true;
        span(doc, "nodes", li);
      } else if (directive == "start") {
        start_node = cur.word("node identifier");
        start_line = cur.line_no();
        cur.finish();
        span(doc, "start", li);
      } else if (directive == "outcomes") {
        if (have_outcomes)
          throw ParseError("duplicate 'outcomes' directive", cur.line_no(), 1);
        std::string first = cur.word("outcome identifier or 'numeric'");
        if (first == "numeric" && cur.done()) {
          numeric_directive = true;
        } else {
          outcome_ids.push_back(first);
          while (!cur.done()) outcome_ids.push_back(cur.word("outcome identifier"));
          reject_duplicates(outcome_ids, "outcome", cur.line_no());
        }
        have_outcomes = true;
        span(doc, "outcomes", li);
      } else if (directive == "prefs") {
        PrefDecl decl;
        decl.agent = cur.word("agent identifier");
        decl.line = cur.line_no();
        cur.take(Token::Type::Colon, "':'");
        for (;;) {
          std::string worse = cur.word("outcome identifier");
          cur.take(Token::Type::Less, "'<'");
          std::string better = cur.word("outcome identifier");
          decl.pairs.emplace_back(worse, better);
          if (cur.done()) break;
          cur.take(Token::Type::Comma, "','");
        }
        prefs.push_back(std::move(decl));
        span(doc, "prefs " + prefs.back().agent, li);
      } else if (directive == "node") {
        NodeSection section;
        section.node = cur.word("node identifier");
        section.line = cur.line_no();
        cur.take(Token::Type::Colon, "':'");
        cur.finish();
        span(doc, "node " + section.node, li);
        sections.push_back(std::move(section));
      } else if (directive == "strategies") {
        if (!in_section)
          throw ParseError("'strategies' before any 'node' section",
                           cur.line_no(), 1);
        std::string agent = cur.word("agent identifier");
        cur.take(Token::Type::Colon, "':'");
        std::vector<std::string> ids = id_list(cur, "strategy identifier");
        reject_duplicates(ids, "strategy", cur.line_no());
        sections.back().strategies.emplace_back(agent, std::move(ids));
      } else if (directive == "cell") {
        if (!in_section)
          throw ParseError("'cell' before any 'node' section", cur.line_no(), 1);
        CellDecl cell = parse_cell_head(cur);
        if (cur.peek().type == Token::Type::Number) {
          cell.numeric = true;
          while (cur.peek().type == Token::Type::Number)
            cell.payoffs.push_back(cur.number("payoff"));
        } else {
          std::string keyword = cur.word("'outcome'");
          if (keyword != "outcome")
            throw ParseError("expected payoffs or 'outcome', found '" + keyword +
                                 "'",
                             cur.line_no(), 1);
          cell.outcome = cur.word("outcome identifier");
        }
        std::string next_kw = cur.word("'next'");
        if (next_kw != "next")
          throw ParseError("expected 'next', found '" + next_kw + "'",
                           cur.line_no(), 1);
        cell.next = cur.word("node identifier");
        cur.finish();
        sections.back().cells.push_back(std::move(cell));
      } else {
        throw ParseError("unknown directive '" + directive + "'", cur.line_no(),
                         1);
      }
    }

    if (!have_agents)
      throw ValidationError("missing 'agents' directive", doc.name, 1);
    if (!have_nodes)
      throw ValidationError("missing 'nodes' directive", doc.name, 1);
    bool explicit_mode = have_outcomes && !numeric_directive;
    doc.numeric = !explicit_mode;

    NodeId start = 0;
    if (!start_node.empty())
      start = static_cast<NodeId>(
          require_id(nodes, start_node, "node", start_line));

    // Per node: resolve the section, its strategy sets, and its cell table.
    std::vector<std::vector<std::vector<std::string>>> strategy_names(
        nodes.size());
    std::vector<std::vector<CellDecl>> node_cells(nodes.size());
    std::vector<char> section_seen(nodes.size(), 0);
    for (NodeSection& section : sections) {
      std::size_t n = require_id(nodes, section.node, "node", section.line);
      if (section_seen[n])
        throw ValidationError("duplicate section for node '" + section.node +
                                  "'",
                              section.node, section.line);
      section_seen[n] = 1;
      strategy_names[n].resize(agents.size());
      for (auto& [agent, ids] : section.strategies) {
        std::size_t a = require_id(agents, agent, "agent", section.line);
        if (!strategy_names[n][a].empty())
          throw ValidationError("duplicate strategies for agent '" + agent +
                                    "' at node '" + section.node + "'",
                                agent, section.line);
        strategy_names[n][a] = std::move(ids);
      }
      for (std::size_t a = 0; a < agents.size(); ++a)
        if (strategy_names[n][a].empty())
          throw ValidationError("no strategies for agent '" + agents[a] +
                                    "' at node '" + section.node + "'",
                                agents[a], section.line);
      node_cells[n] = std::move(section.cells);
    }
    for (std::size_t n = 0; n < nodes.size(); ++n)
      if (!section_seen[n])
        throw ValidationError("missing section for node '" + nodes[n] + "'",
                              nodes[n], 1);

    // Flatten cells per node, checking totality and duplicates.
    std::vector<std::vector<CellDecl*>> resolved(nodes.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      std::size_t count = 1;
      for (const auto& ids : strategy_names[n]) count *= ids.size();
      resolved[n].assign(count, nullptr);
      for (CellDecl& cell : node_cells[n]) {
        if (cell.tuple.size() != agents.size())
          throw ValidationError("cell tuple has " +
                                    std::to_string(cell.tuple.size()) +
                                    " entries for " +
                                    std::to_string(agents.size()) + " agents",
                                tuple_key(cell.tuple), cell.line);
        std::size_t idx = 0;
        for (std::size_t a = 0; a < agents.size(); ++a)
          idx = idx * strategy_names[n][a].size() +
                require_id(strategy_names[n][a], cell.tuple[a], "strategy",
                           cell.line);
        if (resolved[n][idx])
          throw ValidationError("duplicate cell " + tuple_key(cell.tuple) +
                                    " at node '" + nodes[n] + "'",
                                tuple_key(cell.tuple), cell.line);
        require_id(nodes, cell.next, "node", cell.line);
        resolved[n][idx] = &cell;
      }
      for (std::size_t i = 0; i < count; ++i)
        if (!resolved[n][i])
          throw ValidationError("node '" + nodes[n] + "' is missing cells",
                                nodes[n], 1);
    }

    if (!explicit_mode) {
      if (!prefs.empty())
        throw ValidationError(
            "prefs are not allowed in numeric mode (payoffs define them)",
            prefs.front().agent, prefs.front().line);
      std::vector<std::vector<std::pair<std::vector<int>, NodeId>>> cells(
          nodes.size());
      for (std::size_t n = 0; n < nodes.size(); ++n)
        for (CellDecl* cell : resolved[n]) {
          if (!cell->numeric || cell->payoffs.size() != agents.size())
            throw ValidationError(
                "numeric cell needs one integer payoff per agent",
                tuple_key(cell->tuple), cell->line);
          cells[n].emplace_back(
              cell->payoffs,
              static_cast<NodeId>(find_id(nodes, cell->next)));
        }
      doc.multi_game = multigame::MultiGame::from_payoffs(
          doc.name, agents, nodes, std::move(strategy_names), std::move(cells),
          start);
    } else {
      std::vector<std::vector<std::pair<OutcomeId, NodeId>>> table(nodes.size());
      for (std::size_t n = 0; n < nodes.size(); ++n)
        for (CellDecl* cell : resolved[n]) {
          if (cell->numeric)
            throw ValidationError("explicit mode expects 'outcome <id>'",
                                  tuple_key(cell->tuple), cell->line);
          table[n].emplace_back(
              static_cast<OutcomeId>(require_id(outcome_ids, cell->outcome,
                                                "outcome", cell->line)),
              static_cast<NodeId>(find_id(nodes, cell->next)));
        }
      doc.multi_game = multigame::MultiGame(
          doc.name, agents, nodes, std::move(strategy_names), outcome_ids,
          build_prefs(prefs, agents, outcome_ids), std::move(table), {}, start);
    }
  }

  static std::size_t find_id_in(
      const std::vector<std::pair<std::string, std::vector<std::string>>>& list,
      const std::string& id) {
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i].first == id) return i;
    return list.size();
  }

  static std::vector<order::Preference> build_prefs(
      const std::vector<PrefDecl>& decls, const std::vector<std::string>& agents,
      const std::vector<std::string>& outcome_ids) {
    std::vector<std::vector<std::pair<OutcomeId, OutcomeId>>> pairs(
        agents.size());
    for (const PrefDecl& decl : decls) {
      std::size_t a = require_id(agents, decl.agent, "agent", decl.line);
      for (const auto& [worse, better] : decl.pairs)
        pairs[a].emplace_back(
            static_cast<OutcomeId>(
                require_id(outcome_ids, worse, "outcome", decl.line)),
            static_cast<OutcomeId>(
                require_id(outcome_ids, better, "outcome", decl.line)));
    }
    std::vector<order::Preference> prefs;
    prefs.reserve(agents.size());
    for (std::size_t a = 0; a < agents.size(); ++a) {
      try {
        prefs.push_back(
            order::Preference::from_pairs(outcome_ids.size(), pairs[a]));
      } catch (const CycleError& e) {
        int line = 1;
        for (const PrefDecl& decl : decls)
          if (decl.agent == agents[a]) line = decl.line;
        throw ValidationError(
            "preference cycle for agent '" + agents[a] + "': " + e.what(),
            agents[a], line);
      }
    }
    return prefs;
  }

  std::vector<Line> lines_;
};

void render_pref_lines(std::string& out, const std::vector<std::string>& agents,
                       const std::vector<std::string>& outcome_names,
                       const std::function<const order::Preference&(std::size_t)>&
                           pref_of) {
  for (std::size_t a = 0; a < agents.size(); ++a) {
    auto pairs = pref_of(a).pairs();
    if (pairs.empty()) continue;
    std::string line = "prefs " + agents[a] + ": ";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i) line += ", ";
      line += outcome_names[pairs[i].first] + " < " +
              outcome_names[pairs[i].second];
    }
    out += line + "\n";
  }
}

}  // namespace

GameDocument parse(const std::string& text) { return Parser(text).run(); }

std::string render(const GameDocument& doc) {
  std::string out;
  auto words = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) s += " " + id;
    return s;
  };

  if (doc.kind == GameDocument::Kind::STRATEGIC) {
    const strategic::StrategicGame& g = *doc.strategic_game;
    out += "game " + g.name() + "\n";
    out += "agents" + words(g.agent_names()) + "\n";
    out += doc.numeric ? "outcomes numeric\n"
                       : "outcomes" + words(g.outcome_names()) + "\n";
    for (std::size_t a = 0; a < g.agent_count(); ++a)
      out += "strategies " + g.agent_names()[a] + ":" +
             words(g.strategy_names(static_cast<AgentId>(a))) + "\n";
    if (!doc.numeric)
      render_pref_lines(out, g.agent_names(), g.outcome_names(),
                        [&](std::size_t a) -> const order::Preference& {
                          return g.preference(static_cast<AgentId>(a));
                        });
    for (std::size_t idx = 0; idx < g.table().size(); ++idx) {
      std::vector<std::string> tuple(g.agent_count());
      std::size_t rest = idx;
      for (std::size_t a = g.agent_count(); a-- > 0;) {
        std::size_t k = g.strategy_count(static_cast<AgentId>(a));
        tuple[a] = g.strategy_names(static_cast<AgentId>(a))[rest % k];
        rest /= k;
      }
      out += "cell " + tuple_key(tuple) + " ->";
      if (doc.numeric) {
        for (int p : g.payoffs()[g.table()[idx]]) out += " " + std::to_string(p);
      } else {
        out += " " + g.outcome_names()[g.table()[idx]];
      }
      out += "\n";
    }
    return out;
  }

  const multigame::MultiGame& mg = *doc.multi_game;
  out += "multigame " + mg.name() + "\n";
  out += "agents" + words(mg.agent_names()) + "\n";
  out += "nodes" + words(mg.node_names()) + "\n";
  out += "start " + mg.node_names()[mg.start_node()] + "\n";
  if (!doc.numeric) {
    out += "outcomes" + words(mg.outcome_names()) + "\n";
    render_pref_lines(out, mg.agent_names(), mg.outcome_names(),
                      [&](std::size_t a) -> const order::Preference& {
                        return mg.preference(static_cast<AgentId>(a));
                      });
  }
  for (NodeId n = 0; n < mg.node_count(); ++n) {
    out += "node " + mg.node_names()[n] + ":\n";
    for (std::size_t a = 0; a < mg.agent_count(); ++a)
      out += "strategies " + mg.agent_names()[a] + ":" +
             words(mg.local_strategy_names(n, static_cast<AgentId>(a))) + "\n";
    std::size_t count = mg.local_profile_count(n);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<std::string> tuple(mg.agent_count());
      std::size_t rest = idx;
      for (std::size_t a = mg.agent_count(); a-- > 0;) {
        const auto& ids = mg.local_strategy_names(n, static_cast<AgentId>(a));
        tuple[a] = ids[rest % ids.size()];
        rest /= ids.size();
      }
      const auto& [oc, succ] = mg.transition(n, idx);
      out += "cell " + tuple_key(tuple) + " ->";
      if (doc.numeric) {
        for (int p : mg.payoffs()[oc]) out += " " + std::to_string(p);
      } else {
        out += " outcome " + mg.outcome_names()[oc];
      }
      out += " next " + mg.node_names()[succ] + "\n";
    }
  }
  return out;
}

}  // namespace ndeq::cli
