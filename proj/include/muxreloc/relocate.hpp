//
// muxreloc -- multiplexer relocation across matched common logic
//
// Per mux: compute the boundary, predict the gain, apply the edit (boundary
// muxes m_i = x_i*s + y_i*s~, XOR2 parity repairs, dead-logic sweep) and keep
// it only if the measured netlist area strictly decreased. optimize() drives
// the whole pipeline mux by mux, smallest data cone first, to a fixpoint.
//

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "muxreloc/iso_match.hpp"
#include "muxreloc/mux_detect.hpp"

namespace muxreloc {

struct RelocationResult {
  bool accepted = false;
  bool matched = false;
  AreaMicro area_before = 0;
  AreaMicro area_after = 0;
  AreaMicro estimated_gain = 0;
  int boundary_depth = 0;
  int muxes_added = 0;
  int xors_added = 0;
  int invs_added = 0;
  int gates_removed = 0;
  int gates_cloned = 0;
  std::string reject_reason;  // empty when accepted: "no-match" | "no-gain" | "area"
};

struct EditCounts {
  int muxes = 0;
  int xors = 0;
  int invs = 0;
  int clones = 0;
  int removed = 0;
};

// The unconditional transform: assumes `boundary` was computed for `mux` on
// this exact netlist. relocate_single_mux wraps it with the gain gate,
// validation and rollback.
EditCounts apply_relocation(Netlist& netlist, const SubCircuit& sub, const MuxInstance& mux,
                            const Boundary& boundary, const MatchOptions& opts);

AreaMicro estimate_gain(const Netlist& netlist, const SubCircuit& sub, const MuxInstance& mux,
                        const Boundary& boundary, const AreaTable& table,
                        const MatchOptions& opts);

RelocationResult relocate_single_mux(Netlist& netlist, const SubCircuit& sub,
                                     const MuxInstance& mux, const MatchOptions& opts,
                                     const AreaTable& table);

struct OptimizeReport {
  struct Relocation {
    std::string mux_out;
    RelocationResult result;
  };
  struct SubEntry {
    std::string sel;
    int pass = 0;
    int mux_count = 0;
    std::vector<Relocation> relocations;
  };
  std::string module_name;
  AreaMicro area_before = 0;
  AreaMicro area_after = 0;
  int accepted = 0;
  int muxes_added = 0;
  int xors_added = 0;
  int gates_removed = 0;
  int gates_cloned = 0;
  int boundary_depth = 0;  // max over accepted relocations
  int passes = 0;
  int muxes_detected = 0;
  int vectors_detected = 0;
  std::vector<SubEntry> subcircuits;

  nlohmann::ordered_json to_json() const;
};

// Called after every accepted edit with the current netlist.
using EditObserver = std::function<void(const Netlist&, const RelocationResult&)>;

std::pair<Netlist, OptimizeReport> optimize(const Netlist& netlist, const MatchOptions& opts,
                                            const AreaTable& table,
                                            const EditObserver& observer = {});

}  // namespace muxreloc
