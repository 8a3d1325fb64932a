#pragma once

#include <string>

#include "tsld/engine.hpp"
#include "tsld/semantics.hpp"

#include <json.hpp>

namespace tsld {

// Graphviz rendering of a search tree. Node shapes: box for query nodes,
// doublecircle for the empty query, octagon for wrong, plaintext for false
// and for depth cutoffs (rendered "...").
std::string tree_to_dot(const TsldTree& t);

nlohmann::json tree_to_json(const TsldTree& t);
nlohmann::json substitution_to_json(const Substitution& s);
nlohmann::json diagnosis_to_json(const Diagnosis& d);
nlohmann::json solve_result_to_json(const SolveResult& r);
nlohmann::json typed_check_to_json(const TypedCheckResult& r);
nlohmann::json interpretation_to_json(const Interpretation& i);

}  // namespace tsld
