#include "muxreloc/relocate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace muxreloc {

namespace {

bool is_internal(const MuxInstance& mux, GateId g) {
  return std::find(mux.internal_gates.begin(), mux.internal_gates.end(), g) !=
         mux.internal_gates.end();
}

GateId find_mux_gate_excluding(const Netlist& nl, NetId x, NetId y, NetId sel,
                               const MuxInstance& mux) {
  GateId g = find_mux_gate(nl, x, y, sel);
  return (g != kNoGate && is_internal(mux, g)) ? kNoGate : g;
}

// Dirty = the gate's cone1 output is observed by something the relocation does
// not absorb (used for DUPLICATE-mode cloning).
struct DirtyClassifier {
  const Netlist& nl;
  const MuxInstance& mux;
  bool approximate;
  std::vector<char> matched1;
  std::vector<int8_t> memo;

  DirtyClassifier(const Netlist& nl_, const MuxInstance& mux_, const Boundary& b, bool approx)
      : nl(nl_), mux(mux_), approximate(approx) {
    matched1.assign(nl.gate_count(), 0);
    for (const MatchedPair& p : b.pairs) matched1[p.g1] = 1;
    memo.assign(nl.net_count(), -1);
  }

  bool absorbed(NetId n) {
    if (memo[n] >= 0) return memo[n];
    memo[n] = 1;
    bool ok = !nl.net(n).is_po;
    if (ok) {
      for (const PinRef& pr : nl.net(n).fanouts) {
        const Gate& c = nl.gate(pr.gate);
        if (matched1[pr.gate]) continue;
        if (is_internal(mux, pr.gate)) continue;
        if ((c.cell == CellKind::BUF || (c.cell == CellKind::INV && approximate)) &&
            absorbed(c.out))
          continue;
        if (c.cell == CellKind::MUX2 && c.pins[2] == mux.sel && pr.pin == 1 && absorbed(c.out))
          continue;
        ok = false;
        break;
      }
    }
    memo[n] = ok ? 1 : 0;
    return ok;
  }

  bool dirty(GateId g) { return !absorbed(nl.gate(g).out); }
};

}  // namespace

EditCounts apply_relocation(Netlist& nl, const SubCircuit& sub, const MuxInstance& mux,
                            const Boundary& b, const MatchOptions& opts) {
  (void)sub;
  EditCounts counts;
  const NetId sel = mux.sel;

  // DUPLICATE mode: gates with outside observers keep their original wiring
  // and a clone joins the shared region instead.
  std::vector<GateId> effective(b.pairs.size());
  std::vector<char> cloned(b.pairs.size(), 0);
  for (size_t i = 0; i < b.pairs.size(); ++i) effective[i] = b.pairs[i].g1;
  if (opts.safety == MatchOptions::Safety::Duplicate) {
    DirtyClassifier dc(nl, mux, b, opts.approximate);
    for (size_t i = 0; i < b.pairs.size(); ++i) {
      GateId g = b.pairs[i].g1;
      if (!dc.dirty(g)) continue;
      const Gate& orig = nl.gate(g);
      NetId out = nl.add_net(nl.fresh_net_name("_rcn"));
      GateId clone = nl.add_gate(orig.cell, nl.fresh_instance_name("_rc"), out, orig.pins,
                                 /*canonicalize=*/false);
      effective[i] = clone;
      cloned[i] = 1;
      ++counts.clones;
    }
  }

  NetId selbar = kNoNet;
  auto get_selbar = [&]() {
    if (selbar != kNoNet) return selbar;
    GateId inv = find_inv_gate(nl, sel);
    if (inv != kNoGate && !is_internal(mux, inv)) {
      selbar = nl.gate(inv).out;
      return selbar;
    }
    NetId out = nl.add_net(nl.fresh_net_name("_rn"));
    nl.add_gate(CellKind::INV, nl.fresh_instance_name("_ri"), out, {sel});
    ++counts.invs;
    selbar = out;
    return selbar;
  };

  std::map<std::pair<NetId, NetId>, NetId> mux_cache;
  auto make_mux = [&](NetId x, NetId y) {
    if (x == y) return x;
    auto key = std::pair(x, y);
    if (auto it = mux_cache.find(key); it != mux_cache.end()) return it->second;
    NetId out;
    if (GateId g = find_mux_gate_excluding(nl, x, y, sel, mux); g != kNoGate) {
      out = nl.gate(g).out;
    } else {
      out = nl.add_net(nl.fresh_net_name("_rm"));
      nl.add_gate(CellKind::MUX2, nl.fresh_instance_name("_rmg"), out, {y, x, sel},
                  /*canonicalize=*/false);
      ++counts.muxes;
    }
    mux_cache[key] = out;
    return out;
  };

  std::map<NetId, NetId> inv_cache;
  auto make_inv = [&](NetId m) {
    if (auto it = inv_cache.find(m); it != inv_cache.end()) return it->second;
    NetId out;
    if (GateId g = find_inv_gate(nl, m); g != kNoGate && !is_internal(mux, g)) {
      out = nl.gate(g).out;
    } else {
      out = nl.add_net(nl.fresh_net_name("_rn"));
      nl.add_gate(CellKind::INV, nl.fresh_instance_name("_ri"), out, {m});
      ++counts.invs;
    }
    inv_cache[m] = out;
    return out;
  };

  std::map<std::pair<NetId, bool>, NetId> xor_cache;
  auto make_xor = [&](NetId m, bool use_sbar) {
    auto key = std::pair(m, use_sbar);
    if (auto it = xor_cache.find(key); it != xor_cache.end()) return it->second;
    NetId pol = use_sbar ? get_selbar() : sel;
    NetId out;
    if (GateId g = find_xor_gate(nl, m, pol); g != kNoGate && !is_internal(mux, g)) {
      out = nl.gate(g).out;
    } else {
      out = nl.add_net(nl.fresh_net_name("_rx"));
      nl.add_gate(CellKind::XOR2, nl.fresh_instance_name("_rxg"), out, {m, pol},
                  /*canonicalize=*/false);
      ++counts.xors;
    }
    xor_cache[key] = out;
    return out;
  };

  // Non-root edges first; the root re-drive comes after the mux is gone.
  for (const MatchEdge& e : b.edges) {
    if (e.is_root()) continue;
    GateId consumer = effective[e.consumer_pair];
    const int p1 = e.parity1 & 1, p0 = e.parity0 & 1;
    NetId current = nl.gate(consumer).pins[e.pin];

    if (e.child_pair >= 0) {
      NetId child_out = nl.gate(effective[e.child_pair]).out;
      if (p1 == p0) {
        if (!cloned[e.child_pair]) continue;  // physical chain already feeds this pin
        NetId target = p1 ? make_inv(child_out) : child_out;
        nl.rewire_pin(consumer, e.pin, target);
      } else {
        NetId target = make_xor(child_out, /*use_sbar=*/p0 == 1);
        if (current != target) nl.rewire_pin(consumer, e.pin, target);
      }
      continue;
    }

    NetId m = make_mux(e.x, e.y);
    if (p1 == p0) {
      if (p1 == 0) {
        if (current != m) nl.rewire_pin(consumer, e.pin, m);
      } else {
        GateId d = nl.driver(current);
        const Gate* dg = d == kNoGate ? nullptr : &nl.gate(d);
        if (dg && dg->cell == CellKind::INV && dg->pins[0] == m) {
          // already wired
        } else if (dg && dg->cell == CellKind::INV && !nl.net(current).is_po &&
                   nl.net(current).fanouts.size() == 1 && !is_internal(mux, d)) {
          nl.rewire_pin(d, 0, m);  // the kept inverter, repointed at the boundary mux
        } else {
          NetId target = make_inv(m);
          if (current != target) nl.rewire_pin(consumer, e.pin, target);
        }
      }
    } else {
      NetId target = make_xor(m, /*use_sbar=*/p0 == 1);
      if (current != target) nl.rewire_pin(consumer, e.pin, target);
    }
  }

  // Root edge: delete the mux and reconnect its output net to the cone1 root.
  const MatchEdge& root = b.edges.front();
  for (GateId g : mux.internal_gates) {
    nl.remove_gate(g);
    ++counts.removed;
  }
  const NetId F = mux.out;
  const int p1 = root.parity1 & 1, p0 = root.parity0 & 1;
  if (!cloned[0]) {
    if (p1 == p0) {
      nl.set_out_net(nl.driver(mux.d1), F);
    } else {
      NetId pol = p1 ? sel : get_selbar();
      nl.add_gate(CellKind::XOR2, nl.fresh_instance_name("_rxg"), F, {root.x, pol},
                  /*canonicalize=*/false);
      ++counts.xors;
    }
  } else {
    NetId cout = nl.gate(effective[0]).out;
    if (p1 == p0 && p1 == 0) {
      nl.set_out_net(effective[0], F);
    } else if (p1 == p0) {
      nl.add_gate(CellKind::INV, nl.fresh_instance_name("_ri"), F, {cout});
      ++counts.invs;
    } else {
      NetId pol = p1 ? sel : get_selbar();
      nl.add_gate(CellKind::XOR2, nl.fresh_instance_name("_rxg"), F, {cout, pol},
                  /*canonicalize=*/false);
      ++counts.xors;
    }
  }

  counts.removed += remove_dead(nl, nl.primary_outputs());
  return counts;
}

AreaMicro estimate_gain(const Netlist& nl, const SubCircuit& sub, const MuxInstance& mux,
                        const Boundary& b, const AreaTable& table, const MatchOptions& opts) {
  (void)sub;
  const NetId sel = mux.sel;
  AreaMicro adds = 0;

  bool selbar_exists = false;
  if (GateId inv = find_inv_gate(nl, sel); inv != kNoGate && !is_internal(mux, inv))
    selbar_exists = true;
  bool selbar_planned = false;
  auto plan_selbar = [&]() {
    if (selbar_exists || selbar_planned) return;
    selbar_planned = true;
    adds += table.of(CellKind::INV);
  };

  std::vector<char> cloned(b.pairs.size(), 0);
  if (opts.safety == MatchOptions::Safety::Duplicate) {
    DirtyClassifier dc(nl, mux, b, opts.approximate);
    for (size_t i = 0; i < b.pairs.size(); ++i) {
      if (dc.dirty(b.pairs[i].g1)) {
        cloned[i] = 1;
        adds += table.of(nl.gate(b.pairs[i].g1).cell);
      }
    }
  }

  std::set<std::pair<NetId, NetId>> mux_new;   // planned boundary muxes
  std::set<std::pair<NetId, NetId>> mux_seen;  // resolved (incl. reused) pairs
  std::map<std::pair<NetId, NetId>, bool> mux_exists;
  auto mux_net_known = [&](NetId x, NetId y) {
    if (x == y) return std::pair(true, x);
    auto key = std::pair(x, y);
    if (mux_seen.count(key)) {
      if (mux_exists[key]) {
        GateId g = find_mux_gate_excluding(nl, x, y, sel, mux);
        return std::pair(true, nl.gate(g).out);
      }
      return std::pair(false, kNoNet);
    }
    mux_seen.insert(key);
    GateId g = find_mux_gate_excluding(nl, x, y, sel, mux);
    if (g != kNoGate) {
      mux_exists[key] = true;
      return std::pair(true, nl.gate(g).out);
    }
    mux_exists[key] = false;
    mux_new.insert(key);
    adds += table.of(CellKind::MUX2);
    return std::pair(false, kNoNet);
  };

  std::set<std::pair<NetId, bool>> xor_planned;  // keyed by (source-ish net, polarity)
  auto plan_xor = [&](NetId key_net, bool use_sbar, NetId m_known, NetId current) {
    if (use_sbar && !selbar_exists) plan_selbar();
    if (m_known != kNoNet) {
      NetId pol = use_sbar
                      ? (selbar_exists ? nl.gate(find_inv_gate(nl, sel)).out : kNoNet)
                      : sel;
      if (pol != kNoNet) {
        if (GateId g = find_xor_gate(nl, m_known, pol); g != kNoGate && !is_internal(mux, g)) {
          (void)current;
          return;  // reusable
        }
      }
    }
    auto key = std::pair(key_net, use_sbar);
    if (xor_planned.count(key)) return;
    xor_planned.insert(key);
    adds += table.of(CellKind::XOR2);
  };

  std::set<std::pair<NetId, NetId>> inv_planned;
  auto plan_parity_inv = [&](NetId x, NetId y, NetId m_known, NetId current) {
    if (m_known != kNoNet) {
      GateId d = nl.driver(current);
      if (d != kNoGate && nl.gate(d).cell == CellKind::INV &&
          (nl.gate(d).pins[0] == m_known ||
           (nl.net(current).fanouts.size() == 1 && !nl.net(current).is_po && !is_internal(mux, d))))
        return;  // rule 1 or 2: reuse the existing inverter
      if (GateId g = find_inv_gate(nl, m_known); g != kNoGate && !is_internal(mux, g)) return;
    }
    auto key = std::pair(x, y);
    if (inv_planned.count(key)) return;
    inv_planned.insert(key);
    adds += table.of(CellKind::INV);
  };

  // Death candidates: matched cone0 gates, traced transparent chains on the
  // cone0 side, cone1 chains bypassed by XOR repairs, and the mux itself.
  std::set<GateId> cand(mux.internal_gates.begin(), mux.internal_gates.end());
  std::set<NetId> kept_nets;  // nets the surviving structure keeps reading
  for (const MatchedPair& p : b.pairs) cand.insert(p.g0);
  for (const MatchEdge& e : b.edges) {
    for (GateId g : e.chain0) cand.insert(g);
    const int p1 = e.parity1 & 1, p0 = e.parity0 & 1;
    if (p1 != p0)
      for (GateId g : e.chain1) cand.insert(g);
    if (e.is_boundary()) {
      kept_nets.insert(e.x);
      kept_nets.insert(e.y);
    }
  }

  // Walk the edges the way apply_relocation will, charging new gates.
  for (const MatchEdge& e : b.edges) {
    const int p1 = e.parity1 & 1, p0 = e.parity0 & 1;
    if (e.is_root()) {
      if (cloned.size() && cloned[0]) {
        if (p1 == p0 && p1 == 1)
          adds += table.of(CellKind::INV);
        else if (p1 != p0)
          plan_xor(e.x, p0 == 1, kNoNet, kNoNet);
      } else if (p1 != p0) {
        if (p0 == 1) plan_selbar();
        adds += table.of(CellKind::XOR2);
      }
      continue;
    }
    NetId current = nl.gate(b.pairs[e.consumer_pair].g1).pins[e.pin];
    if (e.child_pair >= 0) {
      if (p1 == p0) {
        if (cloned[e.child_pair] && p1 == 1)
          plan_parity_inv(e.x, e.x, nl.gate(b.pairs[e.child_pair].g1).out, current);
        continue;
      }
      plan_xor(e.x, p0 == 1, nl.gate(b.pairs[e.child_pair].g1).out, current);
      continue;
    }
    auto [known, m] = mux_net_known(e.x, e.y);
    if (p1 == p0) {
      if (p1 == 1) plan_parity_inv(e.x, e.y, known ? m : kNoNet, current);
    } else {
      plan_xor(e.x, p0 == 1, known ? m : kNoNet, current);
    }
  }

  // Predict deaths by fixpoint over the candidate set.
  std::map<GateId, bool> dead;
  for (GateId g : cand) dead[g] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [g, alive_flag] : dead) {
      if (!alive_flag) continue;
      if (is_internal(mux, g)) continue;  // removed unconditionally
      const Net& out = nl.net(nl.gate(g).out);
      bool survives = out.is_po || kept_nets.count(out.id) > 0;
      if (!survives) {
        for (const PinRef& pr : out.fanouts) {
          auto it = dead.find(pr.gate);
          if (it == dead.end() || !it->second) {
            survives = true;
            break;
          }
        }
      }
      if (survives) {
        alive_flag = false;
        changed = true;
      }
    }
  }
  AreaMicro dies = 0;
  for (auto& [g, flag] : dead)
    if (flag) dies += table.of(nl.gate(g).cell);
  return dies - adds;
}

RelocationResult relocate_single_mux(Netlist& nl, const SubCircuit& sub, const MuxInstance& mux,
                                     const MatchOptions& opts, const AreaTable& table) {
  RelocationResult r;
  r.area_before = r.area_after = area(nl, table);
  auto boundary = relocation_boundary(nl, sub, mux, opts);
  if (!boundary) {
    r.reject_reason = "no-match";
    return r;
  }
  r.matched = true;
  r.boundary_depth = boundary->depth;
  r.estimated_gain = estimate_gain(nl, sub, mux, *boundary, table, opts);
  if (r.estimated_gain <= 0) {
    r.reject_reason = "no-gain";
    return r;
  }
  Netlist snapshot = nl;
  EditCounts counts = apply_relocation(nl, sub, mux, *boundary, opts);
  auto diags = validate(nl);
  if (!diags.empty()) {
    nl = std::move(snapshot);
    throw std::runtime_error("relocation produced an invalid netlist: " + diags.front().message);
  }
  r.area_after = area(nl, table);
  if (r.area_after < r.area_before) {
    r.accepted = true;
    r.muxes_added = counts.muxes;
    r.xors_added = counts.xors;
    r.invs_added = counts.invs;
    r.gates_removed = counts.removed;
    r.gates_cloned = counts.clones;
  } else {
    nl = std::move(snapshot);
    r.area_after = r.area_before;
    r.reject_reason = "area";
  }
  return r;
}

namespace {

bool member_still_valid(const Netlist& nl, const MuxInstance& m) {
  for (GateId g : m.internal_gates)
    if (!nl.gate(g).live) return false;
  if (!verify_mux_instance(nl, m)) return false;
  auto data_ok = [&](NetId n) {
    if (nl.net(n).is_po) return false;
    for (const PinRef& pr : nl.net(n).fanouts)
      if (!is_internal(m, pr.gate)) return false;
    return true;
  };
  return data_ok(m.d0) && data_ok(m.d1);
}

}  // namespace

std::pair<Netlist, OptimizeReport> optimize(const Netlist& input, const MatchOptions& opts,
                                            const AreaTable& table, const EditObserver& observer) {
  Netlist nl = input;
  OptimizeReport rep;
  rep.module_name = nl.module_name;
  rep.area_before = area(nl, table);
  for (;;) {
    auto muxes = detect_muxes(nl);
    auto vectors = group_vector_muxes(nl, muxes);
    if (rep.passes == 0) {
      rep.muxes_detected = 0;
      for (const VectorMux& v : vectors) rep.muxes_detected += static_cast<int>(v.muxes.size());
      rep.vectors_detected = static_cast<int>(vectors.size());
    }
    int accepted_this_pass = 0;
    for (const VectorMux& vec : vectors) {
      OptimizeReport::SubEntry entry;
      entry.sel = nl.net(vec.sel).name;
      entry.pass = rep.passes + 1;
      entry.mux_count = static_cast<int>(vec.muxes.size());
      // Smallest data cone first; boundary muxes placed by earlier relocations
      // get reused by the bigger ones.
      std::vector<std::pair<int, size_t>> order;
      for (size_t i = 0; i < vec.muxes.size(); ++i) {
        Cone cone = extract_cone(nl, {vec.muxes[i].d0, vec.muxes[i].d1});
        order.emplace_back(static_cast<int>(cone.member_gates.size()), i);
      }
      std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return vec.muxes[a.second].out < vec.muxes[b.second].out;
      });
      for (auto [size, i] : order) {
        (void)size;
        const MuxInstance& m = vec.muxes[i];
        if (!member_still_valid(nl, m)) continue;
        SubCircuit sub;
        sub.vector.sel = vec.sel;
        std::vector<NetId> roots;
        for (const MuxInstance& other : vec.muxes) {
          if (!member_still_valid(nl, other)) continue;
          sub.vector.muxes.push_back(other);
          roots.push_back(other.out);
        }
        sub.cone = extract_cone(nl, roots);
        RelocationResult r = relocate_single_mux(nl, sub, m, opts, table);
        entry.relocations.push_back({nl.net(m.out).name, r});
        if (r.accepted) {
          ++accepted_this_pass;
          ++rep.accepted;
          rep.muxes_added += r.muxes_added;
          rep.xors_added += r.xors_added;
          rep.gates_removed += r.gates_removed;
          rep.gates_cloned += r.gates_cloned;
          rep.boundary_depth = std::max(rep.boundary_depth, r.boundary_depth);
          if (observer) observer(nl, r);
        }
      }
      if (!entry.relocations.empty()) rep.subcircuits.push_back(std::move(entry));
    }
    ++rep.passes;
    if (accepted_this_pass == 0) break;
  }
  rep.area_after = area(nl, table);
  return {std::move(nl), std::move(rep)};
}

nlohmann::ordered_json OptimizeReport::to_json() const {
  nlohmann::ordered_json j;
  j["module"] = module_name;
  j["area_before"] = static_cast<double>(area_before) / kAreaUnit;
  j["area_after"] = static_cast<double>(area_after) / kAreaUnit;
  j["accepted"] = accepted;
  j["muxes_added"] = muxes_added;
  j["xors_added"] = xors_added;
  j["gates_removed"] = gates_removed;
  j["gates_cloned"] = gates_cloned;
  j["boundary_depth"] = boundary_depth;
  j["passes"] = passes;
  j["muxes_detected"] = muxes_detected;
  j["vectors_detected"] = vectors_detected;
  j["subcircuits"] = nlohmann::ordered_json::array();
  for (const SubEntry& e : subcircuits) {
    nlohmann::ordered_json je;
    je["sel"] = e.sel;
    je["pass"] = e.pass;
    je["muxes"] = e.mux_count;
    je["relocations"] = nlohmann::ordered_json::array();
    for (const Relocation& r : e.relocations) {
      nlohmann::ordered_json jr;
      jr["out"] = r.mux_out;
      jr["accepted"] = r.result.accepted;
      jr["area_before"] = static_cast<double>(r.result.area_before) / kAreaUnit;
      jr["area_after"] = static_cast<double>(r.result.area_after) / kAreaUnit;
      jr["estimated_gain"] = static_cast<double>(r.result.estimated_gain) / kAreaUnit;
      jr["boundary_depth"] = r.result.boundary_depth;
      jr["muxes_added"] = r.result.muxes_added;
      jr["xors_added"] = r.result.xors_added;
      jr["invs_added"] = r.result.invs_added;
      jr["gates_removed"] = r.result.gates_removed;
      jr["gates_cloned"] = r.result.gates_cloned;
      if (!r.result.reject_reason.empty()) jr["rejected"] = r.result.reject_reason;
      je["relocations"].push_back(std::move(jr));
    }
    j["subcircuits"].push_back(std::move(je));
  }
  return j;
}

}  // namespace muxreloc
