#pragma once

#include <algorithm>
#include <string>

namespace itt {

// Universe index. i == -1 is the impredicative bottom universe Type;
// i >= 0 are the predicative tiers Type0, Type1, ... above it.
// Total order: Type < Type0 < Type1 < ...
struct Level {
  int i = -1;

  static Level impredicative() { return Level{-1}; }
  static Level predicative(int n) { return Level{n}; }

  bool impred() const { return i < 0; }
  Level succ() const { return Level{i + 1}; }

  friend bool operator==(Level a, Level b) { return a.i == b.i; }
  friend bool operator!=(Level a, Level b) { return a.i != b.i; }
};

inline bool leq_level(Level a, Level b) { return a.i <= b.i; }
inline Level max_level(Level a, Level b) { return Level{std::max(a.i, b.i)}; }

inline std::string show_level(Level l) {
  return l.impred() ? "Type" : "Type" + std::to_string(l.i);
}

}  // namespace itt
