#include "tsld/export.hpp"

#include <functional>
#include <sstream>

namespace tsld {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

const char* terminal_name(TsldTree::Terminal t) {
  switch (t) {
    case TsldTree::Terminal::Success: return "success";
    case TsldTree::Terminal::False: return "false";
    case TsldTree::Terminal::Wrong: return "wrong";
    case TsldTree::Terminal::Depth: return "depth";
    default: return "none";
  }
}

}  // namespace

std::string tree_to_dot(const TsldTree& t) {
  std::ostringstream os;
  os << "digraph tsld {\n";
  int next_id = 0;
  std::function<int(const TsldTree&)> emit = [&](const TsldTree& node) {
    int id = next_id++;
    if (node.is_terminal()) {
      switch (node.terminal) {
        case TsldTree::Terminal::Success:
          os << "  n" << id << " [shape=doublecircle, label=\"\xE2\x96\xA1\"];\n";
          break;
        case TsldTree::Terminal::Wrong:
          os << "  n" << id << " [shape=octagon, label=\"wrong\"];\n";
          break;
        case TsldTree::Terminal::Depth:
          os << "  n" << id << " [shape=plaintext, label=\"...\"];\n";
          break;
        default:
          os << "  n" << id << " [shape=plaintext, label=\"false\"];\n";
          break;
      }
      return id;
    }
    os << "  n" << id << " [shape=box, label=\"" << dot_escape(to_string(node.query)) << "\"];\n";
    for (const auto& e : node.children) {
      int child = emit(e.child);
      os << "  n" << id << " -> n" << child << " [label=\"c" << e.clause_id << "\"];\n";
    }
    return id;
  };
  emit(t);
  os << "}\n";
  return os.str();
}

nlohmann::json substitution_to_json(const Substitution& s) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [v, t] : s.bindings()) out[v] = to_string(t);
  return out;
}

nlohmann::json tree_to_json(const TsldTree& t) {
  nlohmann::json node;
  if (t.is_terminal()) {
    node["terminal"] = terminal_name(t.terminal);
    return node;
  }
  node["terminal"] = nullptr;
  node["query"] = to_string(t.query);
  node["selected_index"] = t.selected_index;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : t.children) {
    nlohmann::json edge;
    edge["clause"] = "c" + std::to_string(e.clause_id);
    edge["mgu"] = e.has_mgu ? substitution_to_json(e.mgu) : nlohmann::json(nullptr);
    edge["child"] = tree_to_json(e.child);
    edges.push_back(std::move(edge));
  }
  node["edges"] = std::move(edges);
  return node;
}

nlohmann::json diagnosis_to_json(const Diagnosis& d) {
  nlohmann::json out;
  out["verdict"] = to_string(d.verdict);
  nlohmann::json blamed = nlohmann::json::array();
  for (int id : d.blamed) blamed.push_back("c" + std::to_string(id));
  out["blamed"] = std::move(blamed);
  out["evidence"] = d.evidence;
  return out;
}

nlohmann::json solve_result_to_json(const SolveResult& r) {
  nlohmann::json out;
  out["classification"] = to_string(r.classification);
  nlohmann::json answers = nlohmann::json::array();
  for (const Substitution& s : r.answers) answers.push_back(substitution_to_json(s));
  out["answers"] = std::move(answers);
  out["diagnosis"] = diagnosis_to_json(r.diagnosis);
  out["tree"] = tree_to_json(r.tree);
  return out;
}

nlohmann::json interpretation_to_json(const Interpretation& i) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, pi] : i.preds) {
    nlohmann::json entry;
    nlohmann::json sigs = nlohmann::json::array();
    for (const auto& sig : pi.signature) {
      nlohmann::json tuple = nlohmann::json::array();
      for (const auto& d : sig) tuple.push_back(to_string(d));
      sigs.push_back(std::move(tuple));
    }
    entry["signature"] = std::move(sigs);
    nlohmann::json truth = nlohmann::json::array();
    for (const auto& vals : pi.truth) {
      nlohmann::json tuple = nlohmann::json::array();
      for (const auto& v : vals) tuple.push_back(to_string(v));
      truth.push_back(std::move(tuple));
    }
    entry["truth"] = std::move(truth);
    out[key.pred + "/" + std::to_string(key.arity)] = std::move(entry);
  }
  return out;
}

nlohmann::json typed_check_to_json(const TypedCheckResult& r) {
  nlohmann::json out;
  out["verdict"] = to_string(r.verdict);
  out["truncated"] = r.truncated;
  if (r.witness)
    out["witness"] = interpretation_to_json(*r.witness);
  else
    out["witness"] = nullptr;
  if (r.violated_clause)
    out["violated_clause"] = "c" + std::to_string(*r.violated_clause);
  else
    out["violated_clause"] = nullptr;
  return out;
}

}  // namespace tsld
