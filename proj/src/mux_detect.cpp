#include "muxreloc/mux_detect.hpp"

#include <algorithm>
#include <map>

namespace muxreloc {

namespace {

// Output net of `gate` is consumed by exactly one pin, on `by`, and is not a PO.
bool feeds_only(const Netlist& nl, GateId gate, GateId by) {
  const Net& out = nl.net(nl.gate(gate).out);
  return !out.is_po && out.fanouts.size() == 1 && out.fanouts[0].gate == by;
}

// Net `v` is the output of INV(s); returns the inverter.
GateId inverter_of(const Netlist& nl, NetId v, NetId s) {
  GateId d = nl.driver(v);
  if (d == kNoGate) return kNoGate;
  const Gate& g = nl.gate(d);
  if (!g.live || g.cell != CellKind::INV || g.pins[0] != s) return kNoGate;
  return d;
}

// Local scalar evaluation of the closure {internal gates + select inverter}
// with leaves {d0, d1, sel}. Returns false if some needed net is undriven
// inside the closure.
bool eval_closure(const Netlist& nl, const MuxInstance& m, GateId sel_inv, bool vd0, bool vd1,
                  bool vs, bool& out) {
  std::map<NetId, bool> value{{m.d0, vd0}, {m.d1, vd1}, {m.sel, vs}};
  std::vector<GateId> closure = m.internal_gates;
  if (sel_inv != kNoGate) closure.push_back(sel_inv);
  // Tiny closures; iterate to fixpoint instead of topo-sorting.
  for (size_t round = 0; round <= closure.size(); ++round) {
    bool progress = false;
    for (GateId gid : closure) {
      const Gate& g = nl.gate(gid);
      if (value.count(g.out)) continue;
      bool bits[3];
      bool ready = true;
      for (size_t p = 0; p < g.pins.size(); ++p) {
        auto it = value.find(g.pins[p]);
        if (it == value.end()) {
          ready = false;
          break;
        }
        bits[p] = it->second;
      }
      if (!ready) continue;
      value[g.out] = eval_cell(g.cell, std::span<const bool>(bits, g.pins.size()));
      progress = true;
    }
    if (!progress) break;
  }
  auto it = value.find(m.out);
  if (it == value.end()) return false;
  out = it->second;
  return true;
}

GateId closure_sel_inverter(const Netlist& nl, const MuxInstance& m) {
  // A NAND_NAND / AND_OR / AOI_INV instance may read sel through a shared
  // inverter; find it by looking at the internal gates' pins.
  for (GateId gid : m.internal_gates) {
    for (NetId p : nl.gate(gid).pins) {
      GateId inv = inverter_of(nl, p, m.sel);
      if (inv != kNoGate &&
          std::find(m.internal_gates.begin(), m.internal_gates.end(), inv) ==
              m.internal_gates.end())
        return inv;
    }
  }
  return kNoGate;
}

// Internal gates other than the out driver must be consumed only inside the
// pattern (and must not be POs).
bool internals_private(const Netlist& nl, const MuxInstance& m) {
  GateId top = nl.driver(m.out);
  for (GateId gid : m.internal_gates) {
    if (gid == top) continue;
    const Net& out = nl.net(nl.gate(gid).out);
    if (out.is_po) return false;
    for (const PinRef& pr : out.fanouts)
      if (std::find(m.internal_gates.begin(), m.internal_gates.end(), pr.gate) ==
          m.internal_gates.end())
        return false;
  }
  return true;
}

void try_two_branch(const Netlist& nl, const Gate& top, CellKind branch_kind,
                    MuxPattern pattern, std::vector<MuxInstance>& out) {
  GateId ga = nl.driver(top.pins[0]);
  GateId gb = nl.driver(top.pins[1]);
  if (ga == kNoGate || gb == kNoGate || ga == gb) return;
  const Gate& a = nl.gate(ga);
  const Gate& b = nl.gate(gb);
  if (!a.live || !b.live || a.cell != branch_kind || b.cell != branch_kind) return;
  if (!feeds_only(nl, ga, top.id) || !feeds_only(nl, gb, top.id)) return;
  // One branch reads sel directly (its other pin is d1), the other reads
  // INV(sel) (its other pin is d0).
  for (int swap = 0; swap < 2; ++swap) {
    const Gate& g1 = swap ? b : a;  // candidate true-select branch
    const Gate& g0 = swap ? a : b;
    for (int ps = 0; ps < 2; ++ps) {
      NetId sel = g1.pins[ps];
      NetId d1 = g1.pins[1 - ps];
      for (int pv = 0; pv < 2; ++pv) {
        GateId inv = inverter_of(nl, g0.pins[pv], sel);
        if (inv == kNoGate) continue;
        MuxInstance m;
        m.sel = sel;
        m.d1 = d1;
        m.d0 = g0.pins[1 - pv];
        m.out = top.out;
        m.internal_gates = {top.id, g1.id, g0.id};
        std::sort(m.internal_gates.begin(), m.internal_gates.end());
        m.pattern = pattern;
        if (internals_private(nl, m) && verify_mux_instance(nl, m)) {
          out.push_back(m);
          return;
        }
      }
    }
  }
}

void try_aoi_inv(const Netlist& nl, const Gate& top, std::vector<MuxInstance>& out) {
  // top is INV; below it AOI21, whose C pin is fed by an AND2:
  // out = ~AOI21(A,B,C) = (A&B) | (u&v) with C = AND2(u,v).
  GateId g_aoi = nl.driver(top.pins[0]);
  if (g_aoi == kNoGate) return;
  const Gate& aoi = nl.gate(g_aoi);
  if (!aoi.live || aoi.cell != CellKind::AOI21 || !feeds_only(nl, g_aoi, top.id)) return;
  GateId g_and = nl.driver(aoi.pins[2]);
  if (g_and == kNoGate) return;
  const Gate& gand = nl.gate(g_and);
  if (!gand.live || gand.cell != CellKind::AND2 || !feeds_only(nl, g_and, g_aoi)) return;
  // Products: {aoi.A, aoi.B} and {gand.A, gand.B}; one carries sel, the other ~sel.
  struct Leg {
    NetId x, y;
  };
  Leg ab{aoi.pins[0], aoi.pins[1]};
  Leg uv{gand.pins[0], gand.pins[1]};
  for (int swap = 0; swap < 2; ++swap) {
    Leg true_leg = swap ? uv : ab;   // carries sel and d1
    Leg false_leg = swap ? ab : uv;  // carries INV(sel) and d0
    for (int ps = 0; ps < 2; ++ps) {
      NetId sel = ps ? true_leg.y : true_leg.x;
      NetId d1 = ps ? true_leg.x : true_leg.y;
      for (int pv = 0; pv < 2; ++pv) {
        NetId nv = pv ? false_leg.y : false_leg.x;
        if (inverter_of(nl, nv, sel) == kNoGate) continue;
        MuxInstance m;
        m.sel = sel;
        m.d1 = d1;
        m.d0 = pv ? false_leg.x : false_leg.y;
        m.out = top.out;
        m.internal_gates = {top.id, g_aoi, g_and};
        std::sort(m.internal_gates.begin(), m.internal_gates.end());
        m.pattern = MuxPattern::AoiInv;
        if (internals_private(nl, m) && verify_mux_instance(nl, m)) {
          out.push_back(m);
          return;
        }
      }
    }
  }
}

}  // namespace

const char* mux_pattern_name(MuxPattern p) {
  switch (p) {
    case MuxPattern::Mux2Cell: return "MUX2_CELL";
    case MuxPattern::NandNand: return "NAND_NAND";
    case MuxPattern::AndOr: return "AND_OR";
    case MuxPattern::AoiInv: return "AOI_INV";
  }
  return "?";
}

bool verify_mux_instance(const Netlist& nl, const MuxInstance& m) {
  if (m.d0 == m.out || m.d1 == m.out || m.sel == m.out) return false;
  GateId sel_inv = closure_sel_inverter(nl, m);
  for (int v = 0; v < 8; ++v) {
    bool d0 = v & 1, d1 = v & 2, s = v & 4;
    bool got = false;
    if (!eval_closure(nl, m, sel_inv, d0, d1, s, got)) return false;
    bool want = s ? d1 : d0;
    if (got != want) return false;
  }
  return true;
}

std::vector<MuxInstance> detect_muxes(const Netlist& nl) {
  std::vector<MuxInstance> candidates;
  nl.for_each_gate([&](const Gate& g) {
    switch (g.cell) {
      case CellKind::MUX2: {
        MuxInstance m;
        m.sel = g.pins[2];
        m.d0 = g.pins[0];
        m.d1 = g.pins[1];
        m.out = g.out;
        m.internal_gates = {g.id};
        m.pattern = MuxPattern::Mux2Cell;
        if (verify_mux_instance(nl, m)) candidates.push_back(m);
        break;
      }
      case CellKind::NAND2:
        try_two_branch(nl, g, CellKind::NAND2, MuxPattern::NandNand, candidates);
        break;
      case CellKind::OR2:
        try_two_branch(nl, g, CellKind::AND2, MuxPattern::AndOr, candidates);
        break;
      case CellKind::INV:
        try_aoi_inv(nl, g, candidates);
        break;
      default:
        break;
    }
  });
  std::sort(candidates.begin(), candidates.end(),
            [](const MuxInstance& a, const MuxInstance& b) { return a.out < b.out; });
  std::vector<char> claimed(nl.gate_count(), 0);
  std::vector<MuxInstance> accepted;
  for (MuxInstance& m : candidates) {
    bool free = true;
    for (GateId gid : m.internal_gates)
      if (claimed[gid]) free = false;
    if (!free) continue;
    for (GateId gid : m.internal_gates) claimed[gid] = 1;
    accepted.push_back(std::move(m));
  }
  return accepted;
}

std::vector<VectorMux> group_vector_muxes(const Netlist& nl,
                                          const std::vector<MuxInstance>& muxes) {
  auto data_ok = [&](const MuxInstance& m, NetId n) {
    const Net& net = nl.net(n);
    if (net.is_po) return false;
    for (const PinRef& pr : net.fanouts)
      if (std::find(m.internal_gates.begin(), m.internal_gates.end(), pr.gate) ==
          m.internal_gates.end())
        return false;
    return true;
  };
  std::map<NetId, VectorMux> groups;
  for (const MuxInstance& m : muxes) {
    if (!data_ok(m, m.d0) || !data_ok(m, m.d1)) continue;
    VectorMux& v = groups[m.sel];
    v.sel = m.sel;
    v.muxes.push_back(m);
  }
  std::vector<VectorMux> out;
  out.reserve(groups.size());
  for (auto& [sel, v] : groups) {
    std::sort(v.muxes.begin(), v.muxes.end(),
              [](const MuxInstance& a, const MuxInstance& b) { return a.out < b.out; });
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<SubCircuit> extract_subcircuits(const Netlist& nl,
                                            const std::vector<VectorMux>& vectors) {
  std::vector<SubCircuit> subs;
  subs.reserve(vectors.size());
  for (const VectorMux& v : vectors) {
    SubCircuit sc;
    sc.vector = v;
    std::vector<NetId> roots;
    roots.reserve(v.muxes.size());
    for (const MuxInstance& m : v.muxes) roots.push_back(m.out);
    sc.cone = extract_cone(nl, roots);
    subs.push_back(std::move(sc));
  }
  return subs;
}

}  // namespace muxreloc
