#include "cfs/space_format.hpp"

#include <map>
#include <sstream>

#include "cfs/counterfactual.hpp"
#include "cfs/error.hpp"
#include "tables.hpp"

namespace cfs {

using detail::Token;
using detail::TokenStream;

namespace {

struct PendingKernel {
  Token at;
  std::vector<std::pair<Token, std::string>> on;
  std::vector<std::pair<detail::Tuple, detail::WeightTable>> entries;
};

std::vector<std::pair<std::string, std::vector<std::string>>> parse_world_body(TokenStream& ts) {
  std::vector<std::pair<std::string, std::vector<std::string>>> components;
  ts.expect_punct("{");
  while (!ts.accept_punct("}")) {
    ts.expect_word("component");
    auto name = ts.expect_identifier("a component name").text;
    std::vector<std::string> labels;
    ts.expect_punct("{");
    while (!ts.accept_punct("}")) {
      labels.push_back(ts.expect_label().text);
      ts.skip_separators();
    }
    components.emplace_back(name, std::move(labels));
    ts.skip_separators();
  }
  return components;
}

}  // namespace

CfSpace SpaceDocument::space() const {
  if (measure) return CfSpace(*measure, kernels);
  if (const auto* k = kernels.find(CoordSet{}); k && k->find(0)) return CfSpace(*k->find(0), kernels);
  throw SchemaError("space " + name + " has neither a measure nor a kernel on {}");
}

bool SpaceDocument::operator==(const SpaceDocument& other) const {
  return name == other.name && same_schema(schema, other.schema) && measure == other.measure &&
         kernels == other.kernels && mirror == other.mirror;
}

SpaceDocument parse_space(std::string_view text) {
  TokenStream ts(text);
  SpaceDocument doc;
  ts.expect_word("space");
  doc.name = ts.expect_identifier("a space name").text;

  std::vector<Coordinate> coords;
  std::vector<std::string> worlds;
  std::map<std::string, std::vector<std::pair<std::string, std::vector<std::string>>>> bodies;
  std::optional<std::pair<std::string, std::string>> implied_mirror;
  while (ts.is_word("world")) {
    ts.next();
    Token name = ts.expect_identifier("a world name");
    if (bodies.count(name.text)) TokenStream::fail_at(name, "world " + name.text + " declared twice");
    std::vector<std::pair<std::string, std::vector<std::string>>> body;
    if (ts.accept_word("mirror")) {
      Token source = ts.expect_identifier("a world name");
      auto it = bodies.find(source.text);
      if (it == bodies.end()) TokenStream::fail_at(source, "unknown world " + source.text);
      body = it->second;
      if (!implied_mirror) implied_mirror.emplace(source.text, name.text);
    } else {
      body = parse_world_body(ts);
    }
    if (body.empty()) TokenStream::fail_at(name, "world " + name.text + " has no components");
    for (const auto& [component, labels] : body) coords.push_back({name.text, component, labels});
    worlds.push_back(name.text);
    bodies[name.text] = std::move(body);
  }
  if (worlds.empty()) ts.fail("expected at least one world");
  try {
    doc.schema = make_schema(std::move(coords), std::move(worlds));
  } catch (const Error& e) {
    ts.fail(e.what());
  }

  std::optional<detail::WeightTable> measure;
  std::vector<PendingKernel> kernels;
  std::optional<std::pair<Token, std::pair<std::string, std::string>>> mirror;
  while (!ts.at_end()) {
    if (ts.is_word("measure")) {
      Token at = ts.next();
      if (measure) TokenStream::fail_at(at, "duplicate measure block");
      measure = detail::parse_weight_table(ts);
    } else if (ts.is_word("kernel")) {
      PendingKernel k;
      k.at = ts.next();
      ts.expect_word("on");
      k.on = detail::parse_key_list(ts);
      ts.expect_punct("{");
      while (!ts.accept_punct("}")) {
        ts.expect_word("given");
        auto tuple = detail::parse_tuple(ts);
        auto table = detail::parse_weight_table(ts);
        k.entries.emplace_back(std::move(tuple), std::move(table));
        ts.skip_separators();
      }
      kernels.push_back(std::move(k));
    } else if (ts.is_word("mirror")) {
      Token at = ts.next();
      if (mirror) TokenStream::fail_at(at, "duplicate mirror declaration");
      auto a = ts.expect_identifier("a world name").text;
      auto b = ts.expect_identifier("a world name").text;
      mirror.emplace(at, std::make_pair(a, b));
    } else {
      ts.fail("expected 'measure', 'kernel' or 'mirror', found '" + ts.peek().text + "'");
    }
    ts.skip_separators();
  }

  if (measure) doc.measure = detail::resolve_measure(doc.schema, *measure);
  for (const auto& k : kernels) {
    CoordSet on = detail::resolve_coordset(*doc.schema, k.on);
    if (doc.kernels.contains(on)) TokenStream::fail_at(k.at, "duplicate kernel on " + doc.schema->describe(on));
    Kernel kernel(doc.schema, on);
    for (const auto& [tuple, table] : k.entries) {
      auto index = detail::resolve_partial(*doc.schema, tuple, on);
      if (kernel.find(index)) TokenStream::fail_at(tuple.at, "duplicate kernel entry");
      kernel.set(index, detail::resolve_measure(doc.schema, table));
    }
    doc.kernels.add(std::move(kernel));
  }
  if (mirror) {
    doc.mirror = mirror->second;
  } else {
    doc.mirror = implied_mirror;
  }
  if (doc.mirror) {
    try {
      WorldMirror check(doc.schema, doc.mirror->first, doc.mirror->second);
    } catch (const Error& e) {
      if (mirror) TokenStream::fail_at(mirror->first, e.what());
      throw ParseError(e.what(), 1, 1);
    }
  }
  if (!doc.measure && !doc.kernels.contains(CoordSet{})) {
    throw ParseError("space needs a measure block or a kernel on {}", ts.peek().line, ts.peek().column);
  }
  return doc;
}

namespace {

void write_measure_body(std::ostringstream& out, const Measure& m, const std::string& indent) {
  const auto& schema = m.schema();
  out << "{\n";
  for (std::size_t w = 0; w < schema.outcome_count(); ++w) {
    if (m.weight(w) == 0) continue;
    out << indent << "  " << schema.describe_outcome(w) << " = " << to_string(m.weight(w)) << "\n";
  }
  out << indent << "  default = 0\n" << indent << "}";
}

}  // namespace

std::string serialize_space(const SpaceDocument& doc) {
  std::ostringstream out;
  const auto& schema = *doc.schema;
  out << "space " << doc.name << "\n";
  for (std::size_t j = 0; j < schema.worlds().size(); ++j) {
    out << "\nworld " << schema.worlds()[j] << " {\n";
    for (auto p : schema.world_coords(j).members()) {
      const auto& c = schema.coord(p);
      out << "  component " << c.name << " {";
      for (const auto& l : c.labels) out << " " << l;
      out << " }\n";
    }
    out << "}\n";
  }
  if (doc.measure) {
    out << "\nmeasure ";
    write_measure_body(out, *doc.measure, "");
    out << "\n";
  }
  for (const auto& [on, kernel] : doc.kernels) {
    out << "\nkernel on " << schema.describe(on) << " {\n";
    for (std::size_t e = 0; e < kernel.entry_count(); ++e) {
      const auto* m = kernel.find(e);
      if (!m) continue;
      out << "  given " << schema.describe_partial(on, e) << " ";
      write_measure_body(out, *m, "  ");
      out << "\n";
    }
    out << "}\n";
  }
  if (doc.mirror) out << "\nmirror " << doc.mirror->first << " " << doc.mirror->second << "\n";
  return out.str();
}

SpaceDocument document_of(const CfSpace& space, std::string name,
                          std::optional<std::pair<std::string, std::string>> mirror) {
  SpaceDocument doc;
  doc.name = std::move(name);
  doc.schema = space.schema_ptr();
  doc.measure = space.measure();
  for (const auto& [on, kernel] : space.mechanism()) {
    if (on.empty() && kernel.total() && kernel.at(0) == space.measure()) continue;
    doc.kernels.add(kernel);
  }
  doc.mirror = std::move(mirror);
  return doc;
}

}  // namespace cfs
