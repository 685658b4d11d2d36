#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cfs/compilers.hpp"
#include "cfs/error.hpp"
#include "cfs/model_format.hpp"
#include "cfs/query.hpp"
#include "cfs/report.hpp"
#include "cfs/repro.hpp"
#include "cfs/space_format.hpp"

namespace {

enum Exit { kOk = 0, kViolation = 1, kParse = 2, kConditioning = 3, kMissingKernel = 4, kUsage = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parse errors are reported as path:line:col.
struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Fn>
auto parse_file(const std::string& path, Fn fn) {
  auto text = slurp(path);
  try {
    return fn(text);
  } catch (const cfs::ParseError& e) {
    throw FileParseError(path + ":" + e.what());
  }
}

cfs::SpaceDocument load_space(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return cfs::parse_space(t); });
}

int cmd_check(const std::string& path) {
  auto space = load_space(path).space();
  return cfs::write_check_report(space, std::cout) == 0 ? kOk : kViolation;
}

int cmd_run(const std::string& space_path, const std::string& query_path) {
  auto space = load_space(space_path).space();
  auto script = parse_file(query_path, [](const std::string& t) { return cfs::parse_query(t); });
  try {
    return cfs::run(space, script, std::cout, &std::cerr);
  } catch (const cfs::ParseError& e) {
    throw FileParseError(query_path + ":" + e.what());
  }
}

std::string stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  auto base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

int cmd_compile(const std::string& kind, const std::string& model_path, const std::string& out_path) {
  std::string body;
  if (kind == "po") {
    auto doc = parse_file(model_path, [](const std::string& t) { return cfs::parse_po(t); });
    auto compiled = cfs::compile_po(doc.model);
    for (std::size_t i = 0; i < compiled.assignments.size(); ++i) {
      body += "# W" + std::to_string(i + 1) + ": do(";
      for (std::size_t j = 0; j < compiled.assignments[i].size(); ++j) {
        body += (j ? ", " : "") + compiled.assignments[i][j].first + "=" + compiled.assignments[i][j].second;
      }
      body += ")\n";
    }
    body += cfs::serialize_space(cfs::document_of(compiled.space, doc.name.empty() ? stem(model_path) : doc.name));
  } else {
    auto doc = parse_file(model_path, [](const std::string& t) { return cfs::parse_scm(t); });
    auto options = doc.options();
    cfs::CfSpace space = [&] {
      if (kind == "scm") {
        if (doc.coupling) throw UsageError("model has a coupling block; use `compile bscm`");
        return cfs::compile_scm(doc.model, options);
      }
      if (!doc.coupling) throw UsageError("bscm model needs a coupling block");
      return cfs::compile_backtracking(doc.model, doc.model, *doc.coupling, options);
    }();
    auto mirror = std::make_pair(options.factual, options.counterfactual);
    body = cfs::serialize_space(cfs::document_of(space, doc.name.empty() ? stem(model_path) : doc.name, mirror));
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << body)) throw UsageError("cannot write " + out_path);
  return kOk;
}

int cmd_repro(const std::string& target) {
  std::size_t failed = 0;
  for (const auto& line : cfs::reproduce(target)) {
    std::cout << (line.pass ? "PASS " : "FAIL ") << line.target << ": " << line.label << " = " << line.actual;
    if (!line.pass) std::cout << " (expected " << line.expected << ")";
    std::cout << "\n";
    failed += line.pass ? 0 : 1;
  }
  return failed == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual spaces: check, query, compile and reproduce."};
  app.require_subcommand(1);

  std::string space_path, query_path, kind, model_path, out_path, target;

  auto* check = app.add_subcommand("check", "Check axioms and cross-world effects of a space");
  check->add_option("space", space_path, "space file (.cfs)")->required();

  auto* run = app.add_subcommand("run", "Run a query script against a space");
  run->add_option("space", space_path, "space file (.cfs)")->required();
  run->add_option("script", query_path, "query script (.cfq)")->required();

  auto* compile = app.add_subcommand("compile", "Compile an SCM, backtracking SCM or PO model into a space");
  compile->add_option("kind", kind, "scm, bscm or po")->required()->check(CLI::IsMember({"scm", "bscm", "po"}));
  compile->add_option("model", model_path, "model file")->required();
  compile->add_option("-o,--output", out_path, "output .cfs (default: stdout)");

  auto* repro = app.add_subcommand("repro", "Recompute the bundled example values");
  repro->add_option("target", target, "exam, star, disease, disease-asym, dormant, exam-cycle or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(space_path);
    if (*run) return cmd_run(space_path, query_path);
    if (*compile) return cmd_compile(kind, model_path, out_path);
    return cmd_repro(target);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cfs::ConditioningUndefined& e) {
    std::cerr << "error: conditioning undefined: " << e.what() << "\n";
    return kConditioning;
  } catch (const cfs::MissingKernel& e) {
    std::cerr << "error: missing kernel: " << e.what() << "\n";
    return kMissingKernel;
  } catch (const FileParseError& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  } catch (const cfs::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  } catch (const cfs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
}
