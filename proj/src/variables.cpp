#include "exactpde/variables.hpp"

#include <cstdio>

#include "exactpde/errors.hpp"

namespace exactpde {

namespace {
constexpr std::array<std::string_view, kSymbolCount> kNames = {"t", "x", "y", "z", "w", "varpi"};
}

std::string_view var_name(Var v) { return kNames[index_of(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (kNames[i] == name) return static_cast<Var>(i);
  return std::nullopt;
}

VarList::VarList(std::initializer_list<Var> vars) {
  if (vars.size() > kMax) throw UsageError("a jet supports at most 4 variables");
  for (Var v : vars) {
    if (contains(v)) throw UsageError("duplicate variable '" + std::string(var_name(v)) + "' in variable list");
    vars_[size_++] = v;
  }
}

bool VarList::contains(Var v) const { return position(v).has_value(); }

std::optional<std::size_t> VarList::position(Var v) const {
  for (std::size_t i = 0; i < size_; ++i)
    if (vars_[i] == v) return i;
  return std::nullopt;
}

std::string VarList::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) out += ",";
    out += var_name(vars_[i]);
  }
  return out + "}";
}

double Point::operator[](Var v) const {
  switch (v) {
    case Var::t: return t;
    case Var::x: return x;
    case Var::y: return y;
    case Var::z: return z;
    default: throw UsageError("'" + std::string(var_name(v)) + "' is not a space-time coordinate");
  }
}

double& Point::operator[](Var v) {
  switch (v) {
    case Var::t: return t;
    case Var::x: return x;
    case Var::y: return y;
    case Var::z: return z;
    default: throw UsageError("'" + std::string(var_name(v)) + "' is not a space-time coordinate");
  }
}

std::string to_string(const Point& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(t=%.6g, x=%.6g, y=%.6g, z=%.6g)", p.t, p.x, p.y, p.z);
  return buf;
}

}  // namespace exactpde
