// Canonical variable names shared by the polynomial and expression printers
// and the parser. Index 0..3 print as x, y, z, t; higher indices as x<i>.
// The parser also accepts x<i> as an alias for any index.
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace addxor {

// Arity cap implied by the table guard (q^k <= 2^24 with q >= 2).
constexpr int max_arity = 24;

inline std::string var_name(int index) {
  switch (index) {
    case 0: return "x";
    case 1: return "y";
    case 2: return "z";
    case 3: return "t";
    default: return "x" + std::to_string(index);
  }
}

inline std::optional<int> var_index_of(std::string_view name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name == "t") return 3;
  if (name.size() >= 2 && name.size() <= 3 && name[0] == 'x') {
    int idx = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      idx = idx * 10 + (c - '0');
    }
    if (name.size() == 3 && name[1] == '0') return std::nullopt;  // x00, x01
    if (idx >= max_arity) return std::nullopt;
    return idx;
  }
  return std::nullopt;
}

}  // namespace addxor
