//
// muxreloc -- structural 2-to-1 multiplexer detection
//
// Pre-processing: reverse-engineer muxes from four gate patterns, verify each
// against the mux truth table by local 8-row simulation, group survivors of
// the data-fanout filter into vector multiplexers by select net, and cut one
// sub-circuit cone per vector.
//

#pragma once

#include <vector>

#include "muxreloc/netlist.hpp"

namespace muxreloc {

enum class MuxPattern { Mux2Cell, NandNand, AndOr, AoiInv };
const char* mux_pattern_name(MuxPattern p);

struct MuxInstance {
  NetId sel = kNoNet;
  NetId d0 = kNoNet;  // selected when sel = 0
  NetId d1 = kNoNet;  // selected when sel = 1
  NetId out = kNoNet;
  std::vector<GateId> internal_gates;  // ascending; excludes any shared select inverter
  MuxPattern pattern = MuxPattern::Mux2Cell;
};

struct VectorMux {
  NetId sel = kNoNet;
  std::vector<MuxInstance> muxes;  // ordered by out net id
};

struct SubCircuit {
  VectorMux vector;
  Cone cone;  // rooted at all member outputs, support at PIs
};

// All pattern matches, each verified by 8-row simulation; overlaps resolved
// greedily by ascending output-net id.
std::vector<MuxInstance> detect_muxes(const Netlist& netlist);

// Applies the data-fanout filter and groups by select net.
std::vector<VectorMux> group_vector_muxes(const Netlist& netlist,
                                          const std::vector<MuxInstance>& muxes);

std::vector<SubCircuit> extract_subcircuits(const Netlist& netlist,
                                            const std::vector<VectorMux>& vectors);

// True iff the driver structure of `m.out` realizes out = ~sel&d0 | sel&d1
// over all 8 local input combinations (used by detection and the tests).
bool verify_mux_instance(const Netlist& netlist, const MuxInstance& m);

}  // namespace muxreloc
