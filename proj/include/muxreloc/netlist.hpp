//
// muxreloc -- gate-level netlist core
//
// The unweighted typed DAG from the paper's representation: gates are typed
// vertices, nets are the single-driver edges. Dense integer ids in creation
// order drive every iteration order, which keeps the whole pipeline
// deterministic. Gates are tombstoned on removal so ids stay stable.
//

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "muxreloc/cells.hpp"

namespace muxreloc {

using NetId = int32_t;
using GateId = int32_t;
inline constexpr NetId kNoNet = -1;
inline constexpr GateId kNoGate = -1;

struct PinRef {
  GateId gate;
  int pin;  // input pin index on `gate`
  bool operator==(const PinRef&) const = default;
};

struct Net {
  NetId id = kNoNet;
  std::string name;
  bool is_pi = false;
  bool is_po = false;
  std::vector<GateId> drivers;  // well-formed netlists have exactly one, or none for a PI
  std::vector<PinRef> fanouts;

  GateId driver() const { return drivers.empty() ? kNoGate : drivers.front(); }
};

struct Gate {
  GateId id = kNoGate;
  bool live = true;
  CellKind cell = CellKind::INV;
  std::string name;
  std::vector<NetId> pins;  // one net per declared input pin
  NetId out = kNoNet;
};

struct Diagnostic {
  enum class Kind { Cycle, MultiDriver, Dangling, PinMismatch, DuplicateName };
  Kind kind;
  std::string message;
};

class Netlist {
 public:
  std::string module_name = "top";

  // --- construction ----------------------------------------------------
  NetId add_net(const std::string& name);
  NetId ensure_net(const std::string& name);     // find by name or create
  std::optional<NetId> find_net(const std::string& name) const;
  void mark_pi(NetId net);
  void mark_po(NetId net);
  GateId add_gate(CellKind cell, const std::string& instance, NetId out,
                  const std::vector<NetId>& pins, bool canonicalize = true);

  // --- edits ------------------------------------------------------------
  void rewire_pin(GateId gate, int pin, NetId net);
  void set_out_net(GateId gate, NetId net);
  void remove_gate(GateId gate);
  std::string fresh_net_name(const std::string& stem);
  std::string fresh_instance_name(const std::string& stem);

  // --- access -----------------------------------------------------------
  const Net& net(NetId id) const { return nets_[id]; }
  const Gate& gate(GateId id) const { return gates_[id]; }
  size_t net_count() const { return nets_.size(); }
  size_t gate_count() const { return gates_.size(); }  // includes tombstones
  int live_gate_count() const { return live_gates_; }
  const std::vector<NetId>& primary_inputs() const { return pis_; }
  const std::vector<NetId>& primary_outputs() const { return pos_; }
  GateId driver(NetId id) const { return nets_[id].driver(); }
  bool instance_name_taken(const std::string& name) const { return instance_names_.count(name) > 0; }

  // Live gate ids in ascending order.
  template <typename F>
  void for_each_gate(F&& f) const {
    for (const Gate& g : gates_)
      if (g.live) f(g);
  }

 private:
  std::vector<Net> nets_;
  std::vector<Gate> gates_;
  std::vector<NetId> pis_;
  std::vector<NetId> pos_;
  std::unordered_map<std::string, NetId> net_by_name_;
  std::unordered_set<std::string> instance_names_;
  int live_gates_ = 0;
  int fresh_counter_ = 0;
};

// --- analyses -------------------------------------------------------------

std::vector<Diagnostic> validate(const Netlist& netlist);
bool is_valid(const Netlist& netlist);

// Topological order of live gate ids; throws std::runtime_error on a cycle.
std::vector<GateId> topo_order(const Netlist& netlist);

// Levels per net: PIs are 0, INV/BUF outputs add 0, everything else adds 1.
struct LevelMap {
  std::vector<int> level;  // indexed by net id; -1 for undriven non-PI nets
  int of(NetId n) const { return level[n]; }
  int max_level = 0;
};
LevelMap levels(const Netlist& netlist);

struct Cone {
  std::vector<NetId> root_nets;
  std::vector<GateId> member_gates;          // ascending
  std::vector<NetId> support;                // PIs / stop nets encountered, ascending
  std::vector<char> in_cone;                 // indexed by gate id
  bool contains(GateId g) const { return g >= 0 && g < (int)in_cone.size() && in_cone[g]; }
};
Cone extract_cone(const Netlist& netlist, const std::vector<NetId>& roots,
                  const std::vector<NetId>& stop_at = {});

// Fixpoint removal of gates whose output has no consumers and is not
// protected. `protect` must include every PO (asserted).
int remove_dead(Netlist& netlist, const std::vector<NetId>& protect);

// Word-parallel simulation: pi_words[i] holds the lanes for primary_inputs()[i],
// one uint64 per word of 64 vectors. Returns lanes per PO in PO order.
std::vector<std::vector<uint64_t>> simulate(const Netlist& netlist,
                                            const std::vector<std::vector<uint64_t>>& pi_words);

// Scalar convenience: named PI assignment -> named PO values.
std::vector<std::pair<std::string, bool>> simulate_scalar(
    const Netlist& netlist, const std::vector<std::pair<std::string, bool>>& pi_values);

AreaMicro area(const Netlist& netlist, const AreaTable& table);

}  // namespace muxreloc
