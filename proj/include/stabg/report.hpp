#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stabg/linalg.hpp"

namespace stabg {

enum class Regime { Exhaustive, Sampled };

inline const char* regime_name(Regime r) { return r == Regime::Exhaustive ? "exhaustive" : "sampled"; }

/// A counterexample diagram: universe indices plus the maps between them, in the order the axiom names them.
struct Diagram {
  std::vector<std::size_t> objects;
  std::vector<FpMatrix> maps;
  std::string text;
};

struct CheckReport {
  std::string axiom;
  bool passed = true;
  Regime regime = Regime::Exhaustive;
  std::uint64_t count = 0;  ///< diagrams examined
  std::uint64_t seed = 0;
  std::vector<Diagram> witnesses;
  std::vector<std::string> notes;

  static constexpr std::size_t kMaxWitnesses = 8;
  void fail(Diagram d) {
    passed = false;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(d));
  }
};

inline bool all_passed(const std::vector<CheckReport>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

}  // namespace stabg
