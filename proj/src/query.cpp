#include "cfs/query.hpp"

#include <map>
#include <set>
#include <sstream>

#include "cfs/counterfactual.hpp"
#include "cfs/error.hpp"
#include "cfs/report.hpp"
#include "tables.hpp"

namespace cfs {

using detail::Token;
using detail::TokenStream;

std::string render(const EventExpr& e) {
  switch (e.kind) {
    case EventExpr::Kind::All: return "()";
    case EventExpr::Kind::Atom: return e.key + "=" + e.label;
    case EventExpr::Kind::Name: return e.key;
    case EventExpr::Kind::Not: {
      const auto& inner = e.operands[0];
      bool simple = inner.kind != EventExpr::Kind::And && inner.kind != EventExpr::Kind::Or;
      return "!" + (simple ? render(inner) : "(" + render(inner) + ")");
    }
    case EventExpr::Kind::And:
    case EventExpr::Kind::Or: {
      const char* op = e.kind == EventExpr::Kind::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        const auto& o = e.operands[i];
        bool wrap = (o.kind == EventExpr::Kind::And || o.kind == EventExpr::Kind::Or) && o.kind != e.kind;
        if (i > 0) out += op;
        out += wrap ? "(" + render(o) + ")" : render(o);
      }
      return out;
    }
  }
  return "";
}

std::string render(const Operand& o) {
  if (!o.coords) {
    auto text = render(o.event);
    return o.event.kind == EventExpr::Kind::Atom || o.event.kind == EventExpr::Kind::Name ||
                   o.event.kind == EventExpr::Kind::All
               ? text
               : "(" + text + ")";
  }
  std::string out = "{";
  for (std::size_t i = 0; i < o.keys.size(); ++i) out += (i ? ", " : "") + o.keys[i];
  return out + "}";
}

namespace {

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : ts_(text) {}

  QueryScript parse() {
    QueryScript script;
    ts_.skip_separators();
    while (!ts_.at_end()) {
      script.statements.push_back(statement());
      ts_.skip_separators();
    }
    return script;
  }

 private:
  Statement statement() {
    Token at = ts_.expect_identifier("a statement");
    Statement s;
    s.line = at.line;
    s.column = at.column;
    const std::string& kw = at.text;
    if (kw == "LET") {
      s.kind = Statement::Kind::Let;
      Token name = ts_.expect_identifier("a name");
      if (keyword(name.text)) TokenStream::fail_at(name, "'" + name.text + "' is reserved");
      ts_.expect_punct("=");
      Operand o;
      if (ts_.accept_word("EVENT")) {
        ts_.expect_punct("(");
        o.event = ts_.is_punct(")") ? EventExpr{} : expr();
        ts_.expect_punct(")");
      } else {
        o.event = expr();
      }
      s.name = name.text;
      s.operands.push_back(std::move(o));
      names_.insert(name.text);
    } else if (kw == "CONDITION") {
      s.kind = Statement::Kind::Condition;
      s.operands.push_back(event_operand());
    } else if (kw == "INTERVENE") {
      s.kind = Statement::Kind::Intervene;
      s.operands.push_back(coords_operand());
      ts_.expect_word("WITH");
      s.distribution = distribution();
    } else if (kw == "PROB") {
      s.kind = Statement::Kind::Prob;
      s.operands.push_back(event_operand());
    } else if (kw == "EFFECT") {
      s.kind = Statement::Kind::Effect;
      s.operands.push_back(coords_operand());
      ts_.expect_word("ON");
      s.operands.push_back(event_operand());
      if (ts_.accept_word("GIVEN")) s.given = event_operand();
    } else if (kw == "INDEP") {
      s.kind = Statement::Kind::Indep;
      s.operands.push_back(any_operand());
      s.operands.push_back(any_operand());
      if (ts_.accept_word("GIVEN")) s.given = any_operand();
    } else if (kw == "SYNC") {
      s.kind = Statement::Kind::Sync;
      s.operands.push_back(coords_operand());
      s.operands.push_back(coords_operand());
    } else if (kw == "EQUAL") {
      s.kind = Statement::Kind::Equal;
      s.operands.push_back(event_operand());
      s.operands.push_back(event_operand());
    } else if (kw == "SOURCE") {
      s.kind = Statement::Kind::Source;
      s.operands.push_back(coords_operand());
      if (ts_.accept_word("ON")) s.operands.push_back(event_operand());
    } else if (kw == "CHECK") {
      s.kind = Statement::Kind::Check;
    } else {
      TokenStream::fail_at(at, "unknown statement '" + kw + "'");
    }
    return s;
  }

  static bool keyword(const std::string& w) {
    static const std::set<std::string> words = {"LET",  "EVENT", "CONDITION", "INTERVENE", "WITH", "PROB",
                                                "EFFECT", "ON",  "GIVEN",     "INDEP",     "SYNC", "EQUAL",
                                                "SOURCE", "CHECK"};
    return words.count(w) != 0;
  }

  Operand event_operand() {
    Operand o;
    o.event = expr();
    return o;
  }

  Operand coords_operand() {
    Operand o;
    o.coords = true;
    for (auto& [t, key] : detail::parse_key_list(ts_)) o.keys.push_back(key);
    return o;
  }

  Operand any_operand() { return ts_.is_punct("{") ? coords_operand() : event_operand(); }

  Distribution distribution() {
    Distribution d;
    if (ts_.accept_word("uniform")) {
      d.kind = Distribution::Kind::Uniform;
    } else if (ts_.accept_word("point")) {
      d.kind = Distribution::Kind::Point;
      auto tuple = detail::parse_tuple(ts_);
      std::vector<std::pair<std::string, std::string>> row;
      for (const auto& item : tuple.items) row.emplace_back(item.key, item.label);
      d.rows.emplace_back(std::move(row), Rational(1));
    } else if (ts_.is_punct("{")) {
      d.kind = Distribution::Kind::Table;
      auto table = detail::parse_weight_table(ts_);
      for (const auto& r : table.rows) {
        std::vector<std::pair<std::string, std::string>> row;
        for (const auto& item : r.tuple.items) row.emplace_back(item.key, item.label);
        d.rows.emplace_back(std::move(row), r.weight);
      }
      d.fallback = table.fallback;
    } else {
      ts_.fail("expected point(...), uniform or a weight table");
    }
    return d;
  }

  EventExpr expr() {
    EventExpr first = term();
    if (!ts_.is_punct("|")) return first;
    EventExpr e{EventExpr::Kind::Or, "", "", {std::move(first)}};
    while (ts_.accept_punct("|")) e.operands.push_back(term());
    return e;
  }

  EventExpr term() {
    EventExpr first = factor();
    if (!ts_.is_punct("&")) return first;
    EventExpr e{EventExpr::Kind::And, "", "", {std::move(first)}};
    while (ts_.accept_punct("&")) e.operands.push_back(factor());
    return e;
  }

  EventExpr factor() {
    if (ts_.accept_punct("!")) return EventExpr{EventExpr::Kind::Not, "", "", {factor()}};
    if (ts_.accept_punct("(")) {
      if (ts_.accept_punct(")")) return EventExpr{};
      EventExpr inner = expr();
      ts_.expect_punct(")");
      return inner;
    }
    auto [at, key] = detail::parse_key(ts_);
    if (ts_.accept_punct("=")) return EventExpr{EventExpr::Kind::Atom, key, ts_.expect_label().text, {}};
    if (key.find('.') != std::string::npos) TokenStream::fail_at(at, "expected '=' after " + key);
    if (keyword(key)) TokenStream::fail_at(at, "expected an event, found '" + key + "'");
    if (!names_.count(key)) TokenStream::fail_at(at, "unbound name " + key);
    return EventExpr{EventExpr::Kind::Name, key, "", {}};
  }

  TokenStream ts_;
  std::set<std::string> names_;
};

class Runner {
 public:
  Runner(const CfSpace& space, std::ostream& out, std::ostream* diag) : space_(space), out_(out), diag_(diag) {}

  int run(const QueryScript& script) {
    int status = 0;
    for (const auto& s : script.statements) {
      at_ = Token{Token::Kind::Word, "", s.line, s.column};
      status = std::max(status, execute(s));
    }
    return status;
  }

 private:
  const SpaceSchema& schema() const { return space_.schema(); }

  Event event(const EventExpr& e) const {
    const auto& ptr = space_.schema_ptr();
    switch (e.kind) {
      case EventExpr::Kind::All: return Event::all(ptr);
      case EventExpr::Kind::Atom: {
        auto p = detail::resolve_coord(schema(), at_, e.key);
        auto label = schema().coord(p).label_index(e.label);
        if (!label) TokenStream::fail_at(at_, "unknown label " + e.label + " for " + schema().coord(p).qualified());
        return cylinder(ptr, Assignment{{p, *label}});
      }
      case EventExpr::Kind::Name: return bound_.at(e.key);
      case EventExpr::Kind::Not: return ~event(e.operands[0]);
      case EventExpr::Kind::And:
      case EventExpr::Kind::Or: {
        Event acc = event(e.operands[0]);
        for (std::size_t i = 1; i < e.operands.size(); ++i) {
          acc = e.kind == EventExpr::Kind::And ? acc & event(e.operands[i]) : acc | event(e.operands[i]);
        }
        return acc;
      }
    }
    return Event::all(ptr);
  }

  CoordSet coords(const Operand& o) const {
    std::vector<std::pair<Token, std::string>> keys;
    for (const auto& k : o.keys) keys.emplace_back(at_, k);
    return detail::resolve_coordset(schema(), keys);
  }

  Partition partition(const Operand& o) const {
    if (o.coords) return atoms_of(space_.schema_ptr(), coords(o));
    Event a = event(o.event);
    std::vector<std::size_t> block(a.bits().size());
    for (std::size_t w = 0; w < block.size(); ++w) block[w] = a.contains(w) ? 0 : 1;
    return Partition(space_.schema_ptr(), std::move(block));
  }

  Measure distribution(CoordSet u, const Distribution& d) const {
    auto sub = std::make_shared<const SpaceSchema>(schema().restrict(u));
    if (d.kind == Distribution::Kind::Uniform) return Measure::uniform(sub);
    detail::WeightTable table;
    table.at = at_;
    table.fallback = d.kind == Distribution::Kind::Point ? std::optional<Rational>(0) : d.fallback;
    for (const auto& [row, weight] : d.rows) {
      detail::Tuple tuple{at_, {}};
      for (const auto& [key, label] : row) tuple.items.push_back({at_, key, label});
      table.rows.push_back({std::move(tuple), weight});
    }
    return Measure(sub, detail::resolve_weights(schema(), u, table));
  }

  void line(const std::string& head, const std::string& value) {
    out_ << head << " = " << value << "\n";
  }

  static std::string value(const Rational& r) { return to_string(r) + " (" + to_decimal(r) + ")"; }
  static std::string truth(bool b) { return b ? "true" : "false"; }

  int execute(const Statement& s) {
    switch (s.kind) {
      case Statement::Kind::Let:
        bound_.insert_or_assign(s.name, event(s.operands[0].event));
        return 0;
      case Statement::Kind::Condition:
        space_ = condition(space_, event(s.operands[0].event));
        return 0;
      case Statement::Kind::Intervene: {
        CoordSet u = coords(s.operands[0]);
        DerivationReport report;
        space_ = intervene(space_, u, distribution(u, s.distribution), &report);
        if (diag_ && !report.underived.empty()) {
          *diag_ << "note: " << s.line << ":" << s.column << ": kernels not derivable after intervention:";
          for (auto k : report.underived) *diag_ << " " << schema().describe(k);
          *diag_ << "\n";
        }
        return 0;
      }
      case Statement::Kind::Prob:
        line("PROB " + render(s.operands[0]), value(prob(space_.measure(), event(s.operands[0].event))));
        return 0;
      case Statement::Kind::Equal: {
        Event a = event(s.operands[0].event);
        Event b = event(s.operands[1].event);
        Rational diff = prob(space_.measure(), a ^ b);
        line("EQUAL " + render(s.operands[0]) + " " + render(s.operands[1]),
             truth(diff == 0) + ", P(symmetric difference) = " + value(diff));
        return 0;
      }
      case Statement::Kind::Effect: {
        CoordSet u = coords(s.operands[0]);
        Event a = event(s.operands[1].event);
        std::string head = "EFFECT " + render(s.operands[0]) + " ON " + render(s.operands[1]);
        if (s.given) {
          head += " GIVEN " + render(*s.given);
          auto ce = conditional_active_effect(space_, u, a, event(s.given->event));
          line(head, describe_conditional_effect(schema(), u, ce));
        } else {
          line(head, describe_effect(schema(), classify_effect(space_, u, a)));
        }
        return 0;
      }
      case Statement::Kind::Indep: {
        std::string head = "INDEP " + render(s.operands[0]) + " " + render(s.operands[1]);
        const auto& p = space_.measure();
        bool result;
        if (!s.given) {
          result = independent_sigmas(p, partition(s.operands[0]), partition(s.operands[1]));
        } else {
          head += " GIVEN " + render(*s.given);
          if (s.given->coords) {
            result = independent_sigmas_given(p, partition(s.operands[0]), partition(s.operands[1]),
                                              partition(*s.given));
          } else {
            result = independent_sigmas_given(p, partition(s.operands[0]), partition(s.operands[1]),
                                              event(s.given->event));
          }
        }
        line(head, truth(result));
        return 0;
      }
      case Statement::Kind::Sync:
        line("SYNC " + render(s.operands[0]) + " " + render(s.operands[1]),
             truth(synchronized(space_.measure(), coords(s.operands[0]), coords(s.operands[1]))));
        return 0;
      case Statement::Kind::Source: {
        CoordSet u = coords(s.operands[0]);
        if (s.operands.size() > 1) {
          line("SOURCE " + render(s.operands[0]) + " ON " + render(s.operands[1]),
               truth(is_source(space_, u, event(s.operands[1].event))));
        } else {
          line("SOURCE " + render(s.operands[0]), truth(global_source(space_, u)));
        }
        return 0;
      }
      case Statement::Kind::Check: {
        std::ostringstream detail;
        std::size_t n = write_violations(space_, detail);
        line("CHECK", n == 0 ? "ok" : std::to_string(n) + (n == 1 ? " violation" : " violations"));
        out_ << detail.str();
        return n == 0 ? 0 : 1;
      }
    }
    return 0;
  }

  CfSpace space_;
  std::ostream& out_;
  std::ostream* diag_;
  std::map<std::string, Event> bound_;
  Token at_;
};

}  // namespace

QueryScript parse_query(std::string_view text) { return QueryParser(text).parse(); }

int run(const CfSpace& space, const QueryScript& script, std::ostream& out, std::ostream* diagnostics) {
  return Runner(space, out, diagnostics).run(script);
}

std::string transcript(const CfSpace& space, const QueryScript& script, int* status) {
  std::ostringstream out;
  int s = run(space, script, out);
  if (status) *status = s;
  return out.str();
}

}  // namespace cfs
