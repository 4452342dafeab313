#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace exactpde {

/// Symbols an expression may reference. The first four are space-time
/// coordinates; `w` and `varpi` are the auxiliary slots of the parameter
/// functions F(w, varpi) and alpha(varpi).
enum class Var : std::uint8_t { t = 0, x = 1, y = 2, z = 3, w = 4, varpi = 5 };

inline constexpr std::size_t kSymbolCount = 6;
inline constexpr std::size_t kCoordCount = 4;

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

constexpr std::size_t index_of(Var v) { return static_cast<std::size_t>(v); }
constexpr bool is_coordinate(Var v) { return index_of(v) < kCoordCount; }

/// Ordered list of at most four distinct variables; jets are expanded in these.
class VarList {
 public:
  static constexpr std::size_t kMax = 4;

  VarList() = default;
  VarList(std::initializer_list<Var> vars);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  Var operator[](std::size_t i) const { return vars_[i]; }
  const Var* begin() const { return vars_.data(); }
  const Var* end() const { return vars_.data() + size_; }

  bool contains(Var v) const;
  /// Position of v in the list, or nullopt.
  std::optional<std::size_t> position(Var v) const;

  std::string to_string() const;

  friend bool operator==(const VarList& a, const VarList& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.vars_[i] != b.vars_[i]) return false;
    return true;
  }

 private:
  std::array<Var, kMax> vars_{};
  std::size_t size_ = 0;
};

inline const VarList kGeoVars{Var::t, Var::x, Var::y};
inline const VarList kMhdVars{Var::t, Var::x, Var::y, Var::z};

/// A point of (t, x, y, z) space. Geopotential fields ignore z.
struct Point {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](Var v) const;
  double& operator[](Var v);

  friend bool operator==(const Point&, const Point&) = default;
};

std::string to_string(const Point& p);

}  // namespace exactpde
