#pragma once

#include <string>

#include "exactpde/expr.hpp"
#include "exactpde/solution_spec.hpp"

namespace testing_support {

inline std::string source_path(const std::string& rel) { return std::string(EXACTPDE_SOURCE_DIR) + "/" + rel; }

inline exactpde::BuiltSolution load(const std::string& config) {
  return exactpde::build_solution(exactpde::load_solution_spec(source_path(config)));
}

/// Parses with every symbol allowed.
inline exactpde::Expr ex(const char* src) {
  using exactpde::Var;
  return exactpde::parse_expr(src, exactpde::make_var_set({Var::t, Var::x, Var::y, Var::z, Var::w, Var::varpi}));
}

}  // namespace testing_support
