#pragma once
// Indexed variables: lambda variables l[i,s] (vertex i, slot s) plus the two
// equivariant parameters t1, t2 and the quantization parameter hbar.  The
// total order (kind, vertex, slot) is fixed here once; every normal form in
// the library depends on it being deterministic.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coha {

enum class VarKind : std::uint8_t { lambda = 0, t1 = 1, t2 = 2, hbar = 3 };

struct VariableId {
  VarKind kind = VarKind::hbar;
  std::string vertex;  // lambda only; empty for parameters
  int slot = 0;        // lambda only; >= 1

  friend auto operator<=>(const VariableId&, const VariableId&) = default;

  static VariableId lam(std::string vertex, int slot) {
    if (slot < 1) throw std::invalid_argument("lambda slot must be >= 1");
    return VariableId{VarKind::lambda, std::move(vertex), slot};
  }
  static VariableId t1() { return VariableId{VarKind::t1, {}, 0}; }
  static VariableId t2() { return VariableId{VarKind::t2, {}, 0}; }
  static VariableId hbar() { return VariableId{VarKind::hbar, {}, 0}; }

  bool is_lambda() const { return kind == VarKind::lambda; }

  std::string name() const {
    switch (kind) {
      case VarKind::lambda:
        return "l[" + vertex + "," + std::to_string(slot) + "]";
      case VarKind::t1: return "t1";
      case VarKind::t2: return "t2";
      case VarKind::hbar: return "hbar";
    }
    return "?";
  }
};

}  // namespace coha
