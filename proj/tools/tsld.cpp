#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tsld/engine.hpp"
#include "tsld/export.hpp"
#include "tsld/parser.hpp"
#include "tsld/semantics.hpp"

namespace {

constexpr int kUsageError = 64;

struct RunConfig {
  std::string program_path;
  int depth = 64;
  int max_answers = 10;
  std::string format = "text";
  bool semantic = false;
};

int default_depth() {
  if (const char* env = std::getenv("TSLD_DEPTH")) {
    try {
      int d = std::stoi(env);
      if (d >= 1) return d;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid TSLD_DEPTH value\n";
  }
  return 64;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<tsld::Program> load_program(const RunConfig& cfg) {
  auto src = read_file(cfg.program_path);
  if (!src) {
    std::cerr << "error: cannot read program file '" << cfg.program_path << "'\n";
    return std::nullopt;
  }
  try {
    return tsld::parse_program(*src);
  } catch (const tsld::ParseError& e) {
    std::cerr << "error: " << cfg.program_path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

// Queries may be empty ("" or "."); parse_query itself requires an atom.
std::optional<tsld::Query> load_query(const std::string& text) {
  std::string stripped;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
  if (stripped.empty() || stripped == ".") return tsld::Query{};
  try {
    return tsld::parse_query(text);
  } catch (const tsld::ParseError& e) {
    std::cerr << "error: query: " << e.what() << "\n";
    return std::nullopt;
  }
}

int exit_code_for(tsld::TreeClassification c) {
  switch (c) {
    case tsld::TreeClassification::Successful: return 0;
    case tsld::TreeClassification::FinitelyFailed: return 1;
    case tsld::TreeClassification::FinitelyErroneous: return 2;
    default: return 3;
  }
}

int cmd_solve(const RunConfig& cfg, const std::string& query_text) {
  auto program = load_program(cfg);
  if (!program) return kUsageError;
  auto query = load_query(query_text);
  if (!query) return kUsageError;

  tsld::SolveResult r = tsld::solve(*program, *query, cfg.depth, cfg.max_answers);

  if (cfg.format == "json") {
    std::cout << tsld::solve_result_to_json(r).dump(2) << "\n";
  } else {
    std::cout << "classification: " << tsld::to_string(r.classification) << "\n";
    if (r.answers.empty()) {
      std::cout << "answers: none\n";
    } else {
      std::cout << "answers:\n";
      for (const auto& s : r.answers)
        std::cout << "  " << (s.empty() ? "true" : tsld::to_string(s)) << "\n";
    }
    std::cout << "diagnosis: " << tsld::to_string(r.diagnosis.verdict) << "\n";
    for (int id : r.diagnosis.blamed) std::cout << "  blamed: c" << id << "\n";
  }
  return exit_code_for(r.classification);
}

int cmd_check(const RunConfig& cfg) {
  auto program = load_program(cfg);
  if (!program) return kUsageError;

  tsld::Query gq = tsld::generic_query(*program);
  tsld::Diagnosis d = tsld::diagnose_program(*program, cfg.depth);

  if (cfg.format == "json") {
    nlohmann::json out;
    out["generic_query"] = tsld::to_string(gq);
    out["operational"] = tsld::diagnosis_to_json(d);
    if (cfg.semantic) {
      tsld::TypedCheckResult t = tsld::is_ill_typed_program(*program, tsld::EnumBounds{});
      out["declarative"] = tsld::typed_check_to_json(t);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "generic query: " << tsld::to_string(gq) << "\n";
    std::cout << "operational verdict: " << tsld::to_string(d.verdict) << "\n";
    for (int id : d.blamed) {
      const tsld::Clause* c = program->clause_by_id(id);
      std::cout << "  blamed c" << id << ": " << (c ? tsld::to_string(*c) : "?") << "\n";
    }
    if (cfg.semantic) {
      tsld::TypedCheckResult t = tsld::is_ill_typed_program(*program, tsld::EnumBounds{});
      std::cout << "declarative verdict: " << tsld::to_string(t.verdict) << "\n";
      if (t.violated_clause) std::cout << "  unmodelable clause: c" << *t.violated_clause << "\n";
    }
  }

  switch (d.verdict) {
    case tsld::DiagnosisVerdict::NoTypeError: return 0;
    case tsld::DiagnosisVerdict::TypeErrorInProgram: return 2;
    default: return 3;
  }
}

int cmd_tree(const RunConfig& cfg, const std::string& query_text) {
  auto program = load_program(cfg);
  if (!program) return kUsageError;
  auto query = load_query(query_text);
  if (!query) return kUsageError;

  tsld::TsldTree t = tsld::build_tree(*program, *query, cfg.depth);
  if (cfg.format == "json")
    std::cout << tsld::tree_to_json(t).dump(2) << "\n";
  else
    std::cout << tsld::tree_to_dot(t);
  return 0;
}

void repl_answer(const tsld::SolveResult& r) {
  if (!r.answers.empty()) {
    for (std::size_t i = 0; i < r.answers.size(); ++i) {
      const auto& s = r.answers[i];
      std::cout << (s.empty() ? "true" : tsld::to_string(s)) << std::flush;
      if (i + 1 == r.answers.size()) {
        std::cout << ".\n";
        break;
      }
      std::cout << " " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) return;
      std::string stripped;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
      if (stripped != ";") {
        std::cout << ".\n";
        return;
      }
    }
    return;
  }
  switch (r.classification) {
    case tsld::TreeClassification::FinitelyErroneous: std::cout << "wrong.\n"; break;
    case tsld::TreeClassification::DepthBounded: std::cout << "unknown (depth bounded).\n"; break;
    default: std::cout << "false.\n"; break;
  }
}

int repl(RunConfig cfg) {
  tsld::Program program;
  bool loaded = false;
  if (!cfg.program_path.empty()) {
    auto p = load_program(cfg);
    if (p) {
      program = std::move(*p);
      loaded = true;
      std::cout << "loaded " << cfg.program_path << " (" << program.clauses.size()
                << " clauses)\n";
    }
  }

  std::string line;
  std::cout << "?- " << std::flush;
  while (std::getline(std::cin, line)) {
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
      trimmed.erase(trimmed.begin());
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();

    if (trimmed.empty()) {
      std::cout << "?- " << std::flush;
      continue;
    }
    if (trimmed == ":quit" || trimmed == ":q") return 0;
    if (trimmed.rfind(":load ", 0) == 0) {
      cfg.program_path = trimmed.substr(6);
      auto p = load_program(cfg);
      if (p) {
        program = std::move(*p);
        loaded = true;
        std::cout << "loaded " << cfg.program_path << " (" << program.clauses.size()
                  << " clauses)\n";
      }
    } else if (trimmed == ":check") {
      if (!loaded) {
        std::cerr << "no program loaded; use :load <file>\n";
      } else {
        tsld::Diagnosis d = tsld::diagnose_program(program, cfg.depth);
        std::cout << tsld::to_string(d.verdict) << "\n";
        for (int id : d.blamed) std::cout << "  blamed: c" << id << "\n";
      }
    } else if (trimmed.rfind(":tree ", 0) == 0) {
      auto q = load_query(trimmed.substr(6));
      if (q && loaded)
        std::cout << tsld::tree_to_dot(tsld::build_tree(program, *q, cfg.depth));
      else if (!loaded)
        std::cerr << "no program loaded; use :load <file>\n";
    } else if (trimmed[0] == ':') {
      std::cerr << "unknown directive; available: :load <file>, :check, :tree <query>, :quit\n";
    } else if (!loaded) {
      std::cerr << "no program loaded; use :load <file>\n";
    } else {
      auto q = load_query(trimmed);
      if (q) repl_answer(tsld::solve(program, *q, cfg.depth, cfg.max_answers));
    }
    std::cout << "?- " << std::flush;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsld: typed logic-programming engine with run-time type-error tracking"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.depth = default_depth();
  std::string query_text;

  auto add_common = [&](CLI::App* sub, bool needs_program) {
    auto* opt = sub->add_option("--program", cfg.program_path, "program file");
    if (needs_program) opt->required();
    sub->add_option("--depth", cfg.depth, "search depth bound")->check(CLI::PositiveNumber);
    sub->add_option("--max-answers", cfg.max_answers, "answer cap")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "answer a query");
  add_common(solve, true);
  solve->add_option("query", query_text, "query text")->required();

  CLI::App* check = app.add_subcommand("check", "diagnose the program for type errors");
  add_common(check, true);
  check->add_flag("--semantic", cfg.semantic, "also run the declarative model check");

  CLI::App* tree = app.add_subcommand("tree", "export the search tree");
  add_common(tree, true);
  tree->add_option("query", query_text, "query text");

  CLI::App* repl_cmd = app.add_subcommand("repl", "interactive session");
  add_common(repl_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  if (tree->parsed() && cfg.format == "text") cfg.format = "dot";

  try {
    if (solve->parsed()) return cmd_solve(cfg, query_text);
    if (check->parsed()) return cmd_check(cfg);
    if (tree->parsed()) return cmd_tree(cfg, query_text);
    return repl(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
