#include "muxreloc/netlist.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace muxreloc {

NetId Netlist::add_net(const std::string& name) {
  if (net_by_name_.count(name))
    throw std::runtime_error("duplicate net name " + name);
  NetId id = static_cast<NetId>(nets_.size());
  Net n;
  n.id = id;
  n.name = name;
  nets_.push_back(std::move(n));
  net_by_name_.emplace(name, id);
  return id;
}

NetId Netlist::ensure_net(const std::string& name) {
  auto it = net_by_name_.find(name);
  if (it != net_by_name_.end()) return it->second;
  return add_net(name);
}

std::optional<NetId> Netlist::find_net(const std::string& name) const {
  auto it = net_by_name_.find(name);
  if (it == net_by_name_.end()) return std::nullopt;
  return it->second;
}

void Netlist::mark_pi(NetId net) {
  if (!nets_[net].is_pi) {
    nets_[net].is_pi = true;
    pis_.push_back(net);
  }
}

void Netlist::mark_po(NetId net) {
  if (!nets_[net].is_po) {
    nets_[net].is_po = true;
    pos_.push_back(net);
  }
}

GateId Netlist::add_gate(CellKind cell, const std::string& instance, NetId out,
                         const std::vector<NetId>& pins, bool canonicalize) {
  const CellType& info = cell_info(cell);
  if (static_cast<int>(pins.size()) != info.num_inputs)
    throw std::runtime_error("gate " + instance + ": pin count mismatch for " + info.name);
  if (instance_names_.count(instance))
    throw std::runtime_error("duplicate instance name " + instance);
  GateId id = static_cast<GateId>(gates_.size());
  Gate g;
  g.id = id;
  g.cell = cell;
  g.name = instance;
  g.pins = pins;
  if (canonicalize) canonical_pin_order(cell, std::span<int32_t>(g.pins));
  g.out = out;
  for (int i = 0; i < info.num_inputs; ++i)
    nets_[g.pins[i]].fanouts.push_back({id, i});
  nets_[out].drivers.push_back(id);
  gates_.push_back(std::move(g));
  instance_names_.insert(instance);
  ++live_gates_;
  return id;
}

void Netlist::rewire_pin(GateId gate, int pin, NetId net) {
  Gate& g = gates_[gate];
  NetId old = g.pins[pin];
  if (old == net) return;
  auto& fo = nets_[old].fanouts;
  fo.erase(std::find(fo.begin(), fo.end(), PinRef{gate, pin}));
  g.pins[pin] = net;
  nets_[net].fanouts.push_back({gate, pin});
}

void Netlist::set_out_net(GateId gate, NetId net) {
  Gate& g = gates_[gate];
  if (g.out == net) return;
  auto& dr = nets_[g.out].drivers;
  dr.erase(std::find(dr.begin(), dr.end(), gate));
  g.out = net;
  nets_[net].drivers.push_back(gate);
}

void Netlist::remove_gate(GateId gate) {
  Gate& g = gates_[gate];
  if (!g.live) return;
  for (int i = 0; i < static_cast<int>(g.pins.size()); ++i) {
    auto& fo = nets_[g.pins[i]].fanouts;
    fo.erase(std::find(fo.begin(), fo.end(), PinRef{gate, i}));
  }
  auto& dr = nets_[g.out].drivers;
  dr.erase(std::find(dr.begin(), dr.end(), gate));
  g.live = false;
  --live_gates_;
}

std::string Netlist::fresh_net_name(const std::string& stem) {
  for (;;) {
    std::string name = stem + std::to_string(++fresh_counter_);
    if (!net_by_name_.count(name)) return name;
  }
}

std::string Netlist::fresh_instance_name(const std::string& stem) {
  for (;;) {
    std::string name = stem + std::to_string(++fresh_counter_);
    if (!instance_names_.count(name)) return name;
  }
}

std::vector<Diagnostic> validate(const Netlist& nl) {
  std::vector<Diagnostic> out;
  // Driver discipline and dangling nets.
  for (NetId n = 0; n < static_cast<NetId>(nl.net_count()); ++n) {
    const Net& net = nl.net(n);
    if (net.drivers.size() > 1)
      out.push_back({Diagnostic::Kind::MultiDriver,
                     "net " + net.name + " has " + std::to_string(net.drivers.size()) + " drivers"});
    if (net.is_pi && !net.drivers.empty())
      out.push_back({Diagnostic::Kind::MultiDriver, "primary input " + net.name + " is driven by a gate"});
    bool used = !net.fanouts.empty() || net.is_po;
    if (used && net.drivers.empty() && !net.is_pi)
      out.push_back({Diagnostic::Kind::Dangling, "net " + net.name + " is used but never driven"});
  }
  // Pin counts and fanout mirror.
  nl.for_each_gate([&](const Gate& g) {
    const CellType& info = cell_info(g.cell);
    if (static_cast<int>(g.pins.size()) != info.num_inputs) {
      out.push_back({Diagnostic::Kind::PinMismatch,
                     "gate " + g.name + " has " + std::to_string(g.pins.size()) + " pins, " +
                         info.name + " wants " + std::to_string(info.num_inputs)});
      return;
    }
    for (int i = 0; i < info.num_inputs; ++i) {
      const auto& fo = nl.net(g.pins[i]).fanouts;
      if (std::find(fo.begin(), fo.end(), PinRef{g.id, i}) == fo.end())
        out.push_back({Diagnostic::Kind::Dangling,
                       "fanout list of net " + nl.net(g.pins[i]).name + " misses pin of " + g.name});
    }
  });
  // Cycles.
  try {
    topo_order(nl);
  } catch (const std::runtime_error& e) {
    out.push_back({Diagnostic::Kind::Cycle, e.what()});
  }
  return out;
}

bool is_valid(const Netlist& nl) { return validate(nl).empty(); }

std::vector<GateId> topo_order(const Netlist& nl) {
  std::vector<int> pending(nl.gate_count(), 0);
  std::vector<GateId> ready;
  int live = 0;
  nl.for_each_gate([&](const Gate& g) {
    ++live;
    int deps = 0;
    for (NetId p : g.pins) {
      GateId d = nl.driver(p);
      if (d != kNoGate && nl.gate(d).live) ++deps;
    }
    pending[g.id] = deps;
    if (deps == 0) ready.push_back(g.id);
  });
  std::vector<GateId> order;
  order.reserve(live);
  // `ready` is kept sorted by construction: gates enter in ascending id per wave.
  for (size_t head = 0; head < ready.size(); ++head) {
    GateId gid = ready[head];
    order.push_back(gid);
    for (const PinRef& pr : nl.net(nl.gate(gid).out).fanouts) {
      if (!nl.gate(pr.gate).live) continue;
      if (--pending[pr.gate] == 0) ready.push_back(pr.gate);
    }
  }
  if (static_cast<int>(order.size()) != live)
    throw std::runtime_error("netlist contains a combinational cycle");
  return order;
}

LevelMap levels(const Netlist& nl) {
  LevelMap lm;
  lm.level.assign(nl.net_count(), -1);
  for (NetId n : nl.primary_inputs()) lm.level[n] = 0;
  for (GateId gid : topo_order(nl)) {
    const Gate& g = nl.gate(gid);
    int in = 0;
    for (NetId p : g.pins) in = std::max(in, lm.level[p] < 0 ? 0 : lm.level[p]);
    int lvl = in + (is_transparent(g.cell) ? 0 : 1);
    lm.level[g.out] = std::max(lm.level[g.out], lvl);
    lm.max_level = std::max(lm.max_level, lvl);
  }
  return lm;
}

Cone extract_cone(const Netlist& nl, const std::vector<NetId>& roots,
                  const std::vector<NetId>& stop_at) {
  Cone cone;
  cone.root_nets = roots;
  cone.in_cone.assign(nl.gate_count(), 0);
  std::vector<char> stop(nl.net_count(), 0);
  for (NetId n : stop_at) stop[n] = 1;
  std::vector<char> net_seen(nl.net_count(), 0);
  std::vector<char> support_seen(nl.net_count(), 0);
  std::deque<NetId> queue;
  for (NetId n : roots) {
    if (n < 0 || n >= static_cast<NetId>(nl.net_count()))
      throw std::runtime_error("extract_cone: unknown net id");
    if (!net_seen[n]) {
      net_seen[n] = 1;
      queue.push_back(n);
    }
  }
  while (!queue.empty()) {
    NetId n = queue.front();
    queue.pop_front();
    GateId d = nl.driver(n);
    if (stop[n] || d == kNoGate || !nl.gate(d).live) {
      if (!support_seen[n]) {
        support_seen[n] = 1;
        cone.support.push_back(n);
      }
      continue;
    }
    if (cone.in_cone[d]) continue;
    cone.in_cone[d] = 1;
    cone.member_gates.push_back(d);
    for (NetId p : nl.gate(d).pins) {
      if (!net_seen[p]) {
        net_seen[p] = 1;
        queue.push_back(p);
      }
    }
  }
  std::sort(cone.member_gates.begin(), cone.member_gates.end());
  std::sort(cone.support.begin(), cone.support.end());
  return cone;
}

int remove_dead(Netlist& nl, const std::vector<NetId>& protect) {
  std::vector<char> prot(nl.net_count(), 0);
  for (NetId n : protect) prot[n] = 1;
  for (NetId n : nl.primary_outputs()) assert(prot[n] && "protected set must cover POs");
  int removed = 0;
  std::vector<GateId> candidates;
  nl.for_each_gate([&](const Gate& g) { candidates.push_back(g.id); });
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<GateId> next;
    for (GateId gid : candidates) {
      const Gate& g = nl.gate(gid);
      if (!g.live) continue;
      const Net& out = nl.net(g.out);
      if (!prot[g.out] && out.fanouts.empty() && !out.is_po) {
        nl.remove_gate(gid);
        ++removed;
        changed = true;
      } else {
        next.push_back(gid);
      }
    }
    candidates.swap(next);
  }
  return removed;
}

std::vector<std::vector<uint64_t>> simulate(const Netlist& nl,
                                            const std::vector<std::vector<uint64_t>>& pi_words) {
  const auto& pis = nl.primary_inputs();
  if (pi_words.size() != pis.size())
    throw std::runtime_error("simulate: expected one lane vector per primary input");
  size_t nwords = pi_words.empty() ? 0 : pi_words.front().size();
  for (const auto& w : pi_words)
    if (w.size() != nwords) throw std::runtime_error("simulate: ragged lane vectors");

  std::vector<std::vector<uint64_t>> value(nl.net_count());
  for (size_t i = 0; i < pis.size(); ++i) value[pis[i]] = pi_words[i];
  std::vector<uint64_t> zeros(nwords, 0);
  auto lanes_of = [&](NetId n) -> const std::vector<uint64_t>& {
    return value[n].empty() ? zeros : value[n];
  };
  for (GateId gid : topo_order(nl)) {
    const Gate& g = nl.gate(gid);
    std::vector<uint64_t>& out = value[g.out];
    out.assign(nwords, 0);
    uint64_t in[3];
    for (size_t w = 0; w < nwords; ++w) {
      for (size_t p = 0; p < g.pins.size(); ++p) in[p] = lanes_of(g.pins[p])[w];
      out[w] = eval_cell_words(g.cell, in);
    }
  }
  std::vector<std::vector<uint64_t>> po_out;
  po_out.reserve(nl.primary_outputs().size());
  for (NetId n : nl.primary_outputs()) po_out.push_back(lanes_of(n));
  return po_out;
}

std::vector<std::pair<std::string, bool>> simulate_scalar(
    const Netlist& nl, const std::vector<std::pair<std::string, bool>>& pi_values) {
  std::vector<std::vector<uint64_t>> lanes(nl.primary_inputs().size());
  for (size_t i = 0; i < lanes.size(); ++i) lanes[i] = {0};
  for (const auto& [name, bit] : pi_values) {
    auto net = nl.find_net(name);
    if (!net || !nl.net(*net).is_pi)
      throw std::runtime_error("simulate: unknown primary input " + name);
    for (size_t i = 0; i < nl.primary_inputs().size(); ++i)
      if (nl.primary_inputs()[i] == *net) lanes[i][0] = bit ? ~0ull : 0ull;
  }
  auto po = simulate(nl, lanes);
  std::vector<std::pair<std::string, bool>> out;
  for (size_t i = 0; i < po.size(); ++i)
    out.emplace_back(nl.net(nl.primary_outputs()[i]).name, (po[i][0] & 1ull) != 0);
  return out;
}

AreaMicro area(const Netlist& nl, const AreaTable& table) {
  AreaMicro total = 0;
  nl.for_each_gate([&](const Gate& g) { total += table.of(g.cell); });
  return total;
}

}  // namespace muxreloc
