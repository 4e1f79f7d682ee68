//
// muxreloc -- simulation-based combinational equivalence check
//
// Exhaustive up to a PI budget, seeded random word-packed vectors beyond.
// This is the independent safety net behind every accepted relocation.
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "muxreloc/netlist.hpp"

namespace muxreloc {

struct Counterexample {
  std::vector<std::pair<std::string, bool>> pi_values;
  std::string po_name;
  bool value_a = false;
  bool value_b = false;
};

struct EquivVerdict {
  enum class Status { Equal, Counterexample, Inconclusive };
  enum class Mode { Exhaustive, Random };
  Status status = Status::Inconclusive;
  Mode mode = Mode::Exhaustive;
  uint64_t vectors_used = 0;
  Counterexample cex;  // valid when status == Counterexample

  bool equal() const { return status == Status::Equal; }
  std::string describe() const;
};

struct EquivOptions {
  int exhaustive_limit = 16;   // max PI count for exhaustive mode
  uint64_t random_vectors = 100000;
  uint64_t seed = 1;
};

// Throws std::runtime_error when PI or PO name sets differ.
EquivVerdict equivalent(const Netlist& a, const Netlist& b, const EquivOptions& opts = {});

}  // namespace muxreloc
