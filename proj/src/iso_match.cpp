#include "muxreloc/iso_match.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace muxreloc {

namespace {

struct SrcRef {
  NetId net = kNoNet;
  GateId gate = kNoGate;
  int parity = 0;
  std::vector<GateId> chain;  // traversed transparent gates, consumer side first
};

// Walks backward through BUF always, INV in approximate mode, and (when
// mux_transparent) through MUX2 cells driven by `sel` via the side's selected
// data pin. The root edge keeps mux_transparent off: reusing the physical d1
// chain to re-drive the mux output is only sound for pure INV/BUF chains.
SrcRef trace_source(const Netlist& nl, NetId start, NetId sel, int side, bool approximate,
                    bool mux_transparent) {
  SrcRef s;
  s.net = start;
  for (;;) {
    GateId d = nl.driver(s.net);
    if (d == kNoGate) break;
    const Gate& g = nl.gate(d);
    if (g.cell == CellKind::BUF) {
      s.chain.push_back(d);
      s.net = g.pins[0];
      continue;
    }
    if (g.cell == CellKind::INV && approximate) {
      s.chain.push_back(d);
      s.parity ^= 1;
      s.net = g.pins[0];
      continue;
    }
    if (mux_transparent && g.cell == CellKind::MUX2 && g.pins[2] == sel) {
      s.chain.push_back(d);
      s.net = side == 1 ? g.pins[1] : g.pins[0];
      continue;
    }
    s.gate = d;
    break;
  }
  return s;
}

int in_cone_side_fanouts(const Netlist& nl, const SubCircuit& sub, GateId g) {
  int count = 0;
  for (const PinRef& pr : nl.net(nl.gate(g).out).fanouts)
    if (sub.cone.contains(pr.gate)) ++count;
  return std::max(0, count - 1);
}

struct Slot {
  int pin = -1;
  SrcRef src;
};

class Matcher {
 public:
  Matcher(const Netlist& nl, const SubCircuit& sub, const MuxInstance& mux,
          const MatchOptions& opts)
      : nl_(nl), sub_(sub), mux_(mux), opts_(opts) {
    member_owner_.assign(nl.gate_count(), -1);
    for (size_t i = 0; i < sub.vector.muxes.size(); ++i)
      for (GateId g : sub.vector.muxes[i].internal_gates)
        member_owner_[g] = static_cast<int>(i);
    confined_memo_.assign(nl.net_count(), -1);
  }

  std::optional<Boundary> run();

  // Resolves one ambiguous same-signature group; exposed through lookahead_pair.
  std::vector<std::pair<GateId, GateId>> resolve_ambiguous(std::vector<GateId> g1s,
                                                           std::vector<GateId> g0s);

  MatchStats& stats() { return stats_; }

 private:
  struct Pair {
    GateId g1, g0;
    int depth;
    bool alive = true;
  };

  void process_pair(int idx);
  void resolve_group(int pair_idx, int cls, std::vector<Slot>& sl1, std::vector<Slot>& sl0);
  bool make_pair(int parent_idx, const Slot& s1, const Slot& s0);
  int tentative_extend(const std::vector<std::pair<GateId, GateId>>& seeds, int depth);
  void trim();
  void kill_pair(int idx);
  bool ok_net(NetId n);
  bool confined_net(NetId n);
  bool edge_alive(const MatchEdge& e) const {
    return e.is_root() ? pairs_[0].alive : pairs_[e.consumer_pair].alive;
  }
  std::optional<Boundary> finalize();

  const Netlist& nl_;
  const SubCircuit& sub_;
  const MuxInstance& mux_;
  MatchOptions opts_;
  std::vector<Pair> pairs_;
  std::vector<MatchEdge> edges_;
  std::unordered_map<GateId, int> matched1_, matched0_;
  std::map<int, PairFrontier> frontiers_;
  MatchStats stats_;
  std::vector<int> member_owner_;
  std::vector<int8_t> confined_memo_;
  std::vector<int8_t> oknet_memo_;
};

std::optional<Boundary> Matcher::run() {
  SrcRef s1 = trace_source(nl_, mux_.d1, mux_.sel, 1, opts_.approximate, false);
  SrcRef s0 = trace_source(nl_, mux_.d0, mux_.sel, 0, opts_.approximate, false);
  if (s1.gate == kNoGate || s0.gate == kNoGate) return std::nullopt;
  if (s1.net == s0.net || s1.gate == s0.gate) return std::nullopt;
  if (nl_.gate(s1.gate).cell != nl_.gate(s0.gate).cell) return std::nullopt;

  pairs_.push_back({s1.gate, s0.gate, 1});
  matched1_[s1.gate] = 0;
  matched0_[s0.gate] = 0;
  stats_.gate_visits += 2;
  MatchEdge root;
  root.consumer_pair = -1;
  root.pin = -1;
  root.x = s1.net;
  root.y = s0.net;
  root.parity1 = s1.parity;
  root.parity0 = s0.parity;
  root.chain1 = s1.chain;
  root.chain0 = s0.chain;
  root.child_pair = 0;
  edges_.push_back(std::move(root));

  for (int qi = 0; qi < static_cast<int>(pairs_.size()); ++qi) process_pair(qi);
  trim();
  return finalize();
}

void Matcher::process_pair(int idx) {
  const GateId g1_id = pairs_[idx].g1;
  const GateId g0_id = pairs_[idx].g0;
  const Gate& g1 = nl_.gate(g1_id);
  const Gate& g0 = nl_.gate(g0_id);
  const CellType& info = cell_info(g1.cell);
  for (int cls = 0; cls < info.num_classes; ++cls) {
    std::vector<Slot> sl1, sl0;
    for (int pin = 0; pin < info.num_inputs; ++pin) {
      if (info.pin_class[pin] != cls) continue;
      sl1.push_back({pin, trace_source(nl_, g1.pins[pin], mux_.sel, 1, opts_.approximate, true)});
      sl0.push_back({pin, trace_source(nl_, g0.pins[pin], mux_.sel, 0, opts_.approximate, true)});
    }
    resolve_group(idx, cls, sl1, sl0);
  }
}

void Matcher::resolve_group(int pair_idx, int cls, std::vector<Slot>& sl1,
                            std::vector<Slot>& sl0) {
  const int depth = pairs_[pair_idx].depth;
  PairFrontier& fr = frontiers_[depth + 1];
  fr.level = depth + 1;
  for (const Slot& s : sl1)
    if (s.src.gate != kNoGate && !matched1_.count(s.src.gate)) fr.l1.push_back(s.src.gate);
  for (const Slot& s : sl0)
    if (s.src.gate != kNoGate && !matched0_.count(s.src.gate)) fr.l0.push_back(s.src.gate);

  std::vector<char> used1(sl1.size(), 0), used0(sl0.size(), 0);
  auto emit = [&](size_t i1, size_t i0, int child) {
    used1[i1] = used0[i0] = 1;
    MatchEdge e;
    e.consumer_pair = pair_idx;
    e.pin = sl1[i1].pin;
    e.x = sl1[i1].src.net;
    e.y = sl0[i0].src.net;
    e.parity1 = sl1[i1].src.parity;
    e.parity0 = sl0[i0].src.parity;
    e.chain1 = sl1[i1].src.chain;
    e.chain0 = sl0[i0].src.chain;
    e.child_pair = child;
    edges_.push_back(std::move(e));
  };

  // 1. Identical nets pair with themselves and leave the frontier.
  for (size_t i = 0; i < sl1.size(); ++i) {
    if (used1[i]) continue;
    for (size_t j = 0; j < sl0.size(); ++j) {
      if (used0[j]) continue;
      if (sl1[i].src.net == sl0[j].src.net) {
        emit(i, j, -1);
        ++stats_.shared_eliminated;
        break;
      }
    }
  }

  // 2. Reconvergence into already-matched gates.
  for (size_t i = 0; i < sl1.size(); ++i) {
    if (used1[i] || sl1[i].src.gate == kNoGate) continue;
    auto it = matched1_.find(sl1[i].src.gate);
    if (it == matched1_.end()) continue;
    GateId partner = pairs_[it->second].g0;
    for (size_t j = 0; j < sl0.size(); ++j) {
      if (used0[j]) continue;
      if (sl0[j].src.gate == partner) {
        emit(i, j, it->second);
        break;
      }
    }
  }

  // 3. Fresh candidates grouped by signature.
  std::map<Signature, std::pair<std::vector<size_t>, std::vector<size_t>>> groups;
  for (size_t i = 0; i < sl1.size(); ++i) {
    if (used1[i] || sl1[i].src.gate == kNoGate || matched1_.count(sl1[i].src.gate)) continue;
    groups[signature_of(nl_, sub_, sl1[i].src.gate, cls)].first.push_back(i);
  }
  for (size_t j = 0; j < sl0.size(); ++j) {
    if (used0[j] || sl0[j].src.gate == kNoGate || matched0_.count(sl0[j].src.gate)) continue;
    groups[signature_of(nl_, sub_, sl0[j].src.gate, cls)].second.push_back(j);
  }
  for (auto& [sig, grp] : groups) {
    auto& [v1, v0] = grp;
    if (v1.empty() || v0.empty()) continue;
    if (v1.size() == 1 && v0.size() == 1) {
      if (make_pair(pair_idx, sl1[v1[0]], sl0[v0[0]])) {
        used1[v1[0]] = used0[v0[0]] = 1;
        ++stats_.forced_unique;
      }
      continue;
    }
    std::vector<GateId> g1s, g0s;
    for (size_t i : v1) g1s.push_back(sl1[i].src.gate);
    for (size_t j : v0) g0s.push_back(sl0[j].src.gate);
    std::sort(g1s.begin(), g1s.end());
    std::sort(g0s.begin(), g0s.end());
    g1s.erase(std::unique(g1s.begin(), g1s.end()), g1s.end());
    g0s.erase(std::unique(g0s.begin(), g0s.end()), g0s.end());
    for (auto [a, b] : resolve_ambiguous(g1s, g0s)) {
      // Map the chosen gates back onto unused slots.
      size_t si = sl1.size(), sj = sl0.size();
      for (size_t i : v1)
        if (!used1[i] && sl1[i].src.gate == a && si == sl1.size()) si = i;
      for (size_t j : v0)
        if (!used0[j] && sl0[j].src.gate == b && sj == sl0.size()) sj = j;
      if (si == sl1.size() || sj == sl0.size()) continue;
      if (make_pair(pair_idx, sl1[si], sl0[sj])) used1[si] = used0[sj] = 1;
    }
  }

  // 4. Leftovers become boundary pairs, zipped by ascending source net.
  std::vector<size_t> rest1, rest0;
  for (size_t i = 0; i < sl1.size(); ++i)
    if (!used1[i]) rest1.push_back(i);
  for (size_t j = 0; j < sl0.size(); ++j)
    if (!used0[j]) rest0.push_back(j);
  auto by_net1 = [&](size_t a, size_t b) {
    return std::pair(sl1[a].src.net, sl1[a].pin) < std::pair(sl1[b].src.net, sl1[b].pin);
  };
  auto by_net0 = [&](size_t a, size_t b) {
    return std::pair(sl0[a].src.net, sl0[a].pin) < std::pair(sl0[b].src.net, sl0[b].pin);
  };
  std::sort(rest1.begin(), rest1.end(), by_net1);
  std::sort(rest0.begin(), rest0.end(), by_net0);
  for (size_t k = 0; k < rest1.size() && k < rest0.size(); ++k) emit(rest1[k], rest0[k], -1);
}

bool Matcher::make_pair(int parent_idx, const Slot& s1, const Slot& s0) {
  GateId a = s1.src.gate, b = s0.src.gate;
  if (a == kNoGate || b == kNoGate || a == b) return false;
  if (matched1_.count(a) || matched0_.count(b)) return false;
  if (nl_.gate(a).cell != nl_.gate(b).cell) return false;
  int idx = static_cast<int>(pairs_.size());
  pairs_.push_back({a, b, pairs_[parent_idx].depth + 1});
  matched1_[a] = idx;
  matched0_[b] = idx;
  stats_.gate_visits += 2;
  MatchEdge e;
  e.consumer_pair = parent_idx;
  e.pin = s1.pin;
  e.x = s1.src.net;
  e.y = s0.src.net;
  e.parity1 = s1.src.parity;
  e.parity0 = s0.src.parity;
  e.chain1 = s1.src.chain;
  e.chain0 = s0.src.chain;
  e.child_pair = idx;
  edges_.push_back(std::move(e));
  return true;
}

std::vector<std::pair<GateId, GateId>> Matcher::resolve_ambiguous(std::vector<GateId> g1s,
                                                                  std::vector<GateId> g0s) {
  ++stats_.lookahead_calls;
  std::vector<std::pair<GateId, GateId>> result;
  const int depth = std::max(1, opts_.lookahead_depth);
  if (g1s.size() == g0s.size() && g1s.size() <= 4) {
    std::vector<size_t> perm(g0s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<size_t> best_perm;
    int best_score = -1;
    do {
      std::vector<std::pair<GateId, GateId>> seeds;
      for (size_t i = 0; i < g1s.size(); ++i) seeds.emplace_back(g1s[i], g0s[perm[i]]);
      int score = tentative_extend(seeds, depth);
      ++stats_.bijections_scored;
      if (score > best_score) {
        best_score = score;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (size_t i = 0; i < g1s.size(); ++i) result.emplace_back(g1s[i], g0s[best_perm[i]]);
    return result;
  }
  // Large or uneven groups: greedy per gate.
  std::vector<char> taken(g0s.size(), 0);
  for (GateId a : g1s) {
    int best = -1;
    int best_score = -1;
    for (size_t j = 0; j < g0s.size(); ++j) {
      if (taken[j]) continue;
      int score = tentative_extend({{a, g0s[j]}}, depth);
      ++stats_.bijections_scored;
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || best_score <= 0) continue;
    taken[best] = 1;
    result.emplace_back(a, g0s[best]);
  }
  return result;
}

int Matcher::tentative_extend(const std::vector<std::pair<GateId, GateId>>& seeds, int depth) {
  std::unordered_map<GateId, GateId> m1, m0;
  std::deque<std::tuple<GateId, GateId, int>> queue;
  int score = 0;
  auto try_pair = [&](GateId a, GateId b, int d) {
    if (a == kNoGate || b == kNoGate || a == b) return;
    if (matched1_.count(a) || matched0_.count(b)) return;
    if (m1.count(a) || m0.count(b)) return;
    if (nl_.gate(a).cell != nl_.gate(b).cell) return;
    m1[a] = b;
    m0[b] = a;
    ++score;
    ++stats_.gate_visits;
    if (d > 0) queue.push_back({a, b, d});
  };
  for (auto [a, b] : seeds) try_pair(a, b, depth);
  while (!queue.empty()) {
    auto [a, b, d] = queue.front();
    queue.pop_front();
    const Gate& ga = nl_.gate(a);
    const Gate& gb = nl_.gate(b);
    const CellType& info = cell_info(ga.cell);
    for (int cls = 0; cls < info.num_classes; ++cls) {
      std::vector<Slot> s1, s0;
      for (int pin = 0; pin < info.num_inputs; ++pin) {
        if (info.pin_class[pin] != cls) continue;
        s1.push_back({pin, trace_source(nl_, ga.pins[pin], mux_.sel, 1, opts_.approximate, true)});
        s0.push_back({pin, trace_source(nl_, gb.pins[pin], mux_.sel, 0, opts_.approximate, true)});
      }
      // Drop shared nets, group the rest by signature, pair by ascending id.
      std::vector<char> u1(s1.size(), 0), u0(s0.size(), 0);
      for (size_t i = 0; i < s1.size(); ++i)
        for (size_t j = 0; j < s0.size(); ++j)
          if (!u1[i] && !u0[j] && s1[i].src.net == s0[j].src.net) u1[i] = u0[j] = 1;
      std::map<Signature, std::pair<std::vector<GateId>, std::vector<GateId>>> groups;
      for (size_t i = 0; i < s1.size(); ++i)
        if (!u1[i] && s1[i].src.gate != kNoGate)
          groups[signature_of(nl_, sub_, s1[i].src.gate, cls)].first.push_back(s1[i].src.gate);
      for (size_t j = 0; j < s0.size(); ++j)
        if (!u0[j] && s0[j].src.gate != kNoGate)
          groups[signature_of(nl_, sub_, s0[j].src.gate, cls)].second.push_back(s0[j].src.gate);
      for (auto& [sig, grp] : groups) {
        auto& [c1, c0] = grp;
        std::sort(c1.begin(), c1.end());
        std::sort(c0.begin(), c0.end());
        for (size_t k = 0; k < c1.size() && k < c0.size(); ++k) try_pair(c1[k], c0[k], d - 1);
      }
    }
  }
  return score;
}

bool Matcher::ok_net(NetId n) {
  if (oknet_memo_[n] >= 0) return oknet_memo_[n];
  oknet_memo_[n] = 1;  // DAG; a tentative value only guards against re-entry
  bool ok = true;
  if (nl_.net(n).is_po) ok = false;
  if (ok) {
    for (const PinRef& pr : nl_.net(n).fanouts) {
      const Gate& c = nl_.gate(pr.gate);
      if (matched1_.count(pr.gate)) continue;
      if (std::find(mux_.internal_gates.begin(), mux_.internal_gates.end(), pr.gate) !=
          mux_.internal_gates.end())
        continue;
      if (c.cell == CellKind::BUF || (c.cell == CellKind::INV && opts_.approximate)) {
        if (ok_net(c.out)) continue;
        ok = false;
        break;
      }
      if (c.cell == CellKind::MUX2 && c.pins[2] == mux_.sel && pr.pin == 1) {
        if (ok_net(c.out)) continue;
        ok = false;
        break;
      }
      ok = false;
      break;
    }
  }
  oknet_memo_[n] = ok ? 1 : 0;
  return ok;
}

bool Matcher::confined_net(NetId n) {
  if (confined_memo_[n] >= 0) return confined_memo_[n];
  confined_memo_[n] = 0;
  bool ok = !nl_.net(n).is_po;
  if (ok) {
    for (const PinRef& pr : nl_.net(n).fanouts) {
      const Gate& c = nl_.gate(pr.gate);
      if (c.cell == CellKind::MUX2 && c.pins[2] == mux_.sel && pr.pin == 1) continue;
      int owner = member_owner_[pr.gate];
      if (owner >= 0) {
        if (n == sub_.vector.muxes[owner].d1) continue;
        ok = false;
        break;
      }
      if (!confined_net(c.out)) {
        ok = false;
        break;
      }
    }
  }
  confined_memo_[n] = ok ? 1 : 0;
  return ok;
}

void Matcher::trim() {
  if (opts_.safety == MatchOptions::Safety::Duplicate) return;
  for (;;) {
    oknet_memo_.assign(nl_.net_count(), -1);
    // Edits per edge against the current netlist.
    std::vector<char> edit(edges_.size(), 0);
    for (size_t e = 0; e < edges_.size(); ++e) {
      const MatchEdge& me = edges_[e];
      if (!edge_alive(me) || me.is_root()) continue;
      MatchEdge view = me;
      if (view.child_pair >= 0 && !pairs_[view.child_pair].alive) view.child_pair = -1;
      NetId current = nl_.gate(pairs_[me.consumer_pair].g1).pins[me.pin];
      edit[e] = edge_needs_edit(nl_, mux_.sel, view, current);
    }
    // Taint flows from deeper pairs toward the root along interior edges.
    // Reconvergent edges break any per-depth ordering, so iterate to a fixpoint.
    std::vector<char> taint(pairs_.size(), 0);
    bool taint_changed = true;
    while (taint_changed) {
      taint_changed = false;
      for (size_t e = 0; e < edges_.size(); ++e) {
        const MatchEdge& me = edges_[e];
        if (!edge_alive(me) || me.is_root()) continue;
        bool t = edit[e];
        if (me.child_pair >= 0 && pairs_[me.child_pair].alive && taint[me.child_pair]) t = true;
        if (t && !taint[me.consumer_pair]) {
          taint[me.consumer_pair] = 1;
          taint_changed = true;
        }
      }
    }
    // Trim tainted pairs whose gate is observed outside the match and whose
    // s=0 values would leak.
    bool changed = false;
    for (size_t i = 0; i < pairs_.size(); ++i) {
      if (!pairs_[i].alive || !taint[i]) continue;
      NetId out = nl_.gate(pairs_[i].g1).out;
      if (ok_net(out)) continue;
      if (confined_net(out)) continue;
      kill_pair(static_cast<int>(i));
      changed = true;
    }
    if (!pairs_[0].alive) return;
    if (!changed) return;
    // Orphans: pairs no longer reachable from the root via interior edges.
    std::vector<char> reach(pairs_.size(), 0);
    reach[0] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const MatchEdge& me : edges_) {
        if (me.child_pair < 0 || !pairs_[me.child_pair].alive) continue;
        bool from_root = me.is_root() || (pairs_[me.consumer_pair].alive && reach[me.consumer_pair]);
        if (from_root && !reach[me.child_pair]) {
          reach[me.child_pair] = 1;
          grew = true;
        }
      }
    }
    for (size_t i = 0; i < pairs_.size(); ++i)
      if (pairs_[i].alive && !reach[i]) kill_pair(static_cast<int>(i));
  }
}

void Matcher::kill_pair(int idx) {
  pairs_[idx].alive = false;
  matched1_.erase(pairs_[idx].g1);
  matched0_.erase(pairs_[idx].g0);
  ++stats_.trimmed_pairs;
  for (MatchEdge& e : edges_)
    if (e.child_pair == idx) e.child_pair = -1;
}

std::optional<Boundary> Matcher::finalize() {
  if (!pairs_[0].alive) return std::nullopt;
  Boundary b;
  std::vector<int> remap(pairs_.size(), -1);
  for (size_t i = 0; i < pairs_.size(); ++i) {
    if (!pairs_[i].alive) continue;
    remap[i] = static_cast<int>(b.pairs.size());
    b.pairs.push_back({pairs_[i].g1, pairs_[i].g0, pairs_[i].depth});
    b.depth = std::max(b.depth, pairs_[i].depth);
  }
  for (const MatchEdge& e : edges_) {
    if (!edge_alive(e)) continue;
    MatchEdge out = e;
    if (out.consumer_pair >= 0) out.consumer_pair = remap[out.consumer_pair];
    if (out.child_pair >= 0) out.child_pair = remap[out.child_pair];
    b.edges.push_back(std::move(out));
  }
  for (auto& [level, fr] : frontiers_) b.frontiers.push_back(fr);
  b.stats = stats_;
  return b;
}

}  // namespace

Signature signature_of(const Netlist& nl, const SubCircuit& sub, GateId gate,
                       int reached_pin_class) {
  return Signature{nl.gate(gate).cell, reached_pin_class, in_cone_side_fanouts(nl, sub, gate)};
}

GateId find_mux_gate(const Netlist& nl, NetId x, NetId y, NetId sel) {
  GateId best = kNoGate;
  for (const PinRef& pr : nl.net(x).fanouts) {
    const Gate& g = nl.gate(pr.gate);
    if (pr.pin != 1 || g.cell != CellKind::MUX2) continue;
    if (g.pins[0] == y && g.pins[2] == sel)
      if (best == kNoGate || pr.gate < best) best = pr.gate;
  }
  return best;
}

GateId find_inv_gate(const Netlist& nl, NetId in) {
  GateId best = kNoGate;
  for (const PinRef& pr : nl.net(in).fanouts)
    if (nl.gate(pr.gate).cell == CellKind::INV)
      if (best == kNoGate || pr.gate < best) best = pr.gate;
  return best;
}

GateId find_xor_gate(const Netlist& nl, NetId in, NetId other) {
  GateId best = kNoGate;
  for (const PinRef& pr : nl.net(in).fanouts) {
    const Gate& g = nl.gate(pr.gate);
    if (g.cell != CellKind::XOR2) continue;
    NetId opposite = g.pins[pr.pin == 0 ? 1 : 0];
    if (opposite == other)
      if (best == kNoGate || pr.gate < best) best = pr.gate;
  }
  return best;
}

bool edge_needs_edit(const Netlist& nl, NetId sel, const MatchEdge& e, NetId current) {
  if (e.is_root()) return false;
  const int p1 = e.parity1 & 1, p0 = e.parity0 & 1;
  NetId selbar = kNoNet;
  if (GateId inv = find_inv_gate(nl, sel); inv != kNoGate) selbar = nl.gate(inv).out;
  if (e.child_pair >= 0) {
    if (p1 == p0) return false;
    NetId pol = p1 ? sel : selbar;
    if (pol == kNoNet) return true;
    GateId x = find_xor_gate(nl, e.x, pol);
    return x == kNoGate || nl.gate(x).out != current;
  }
  // Boundary edge.
  NetId m = kNoNet;
  if (e.x == e.y) {
    m = e.x;
  } else {
    GateId mg = find_mux_gate(nl, e.x, e.y, sel);
    if (mg == kNoGate) return true;
    m = nl.gate(mg).out;
  }
  if (p1 == p0) {
    if (p1 == 0) return current != m;
    GateId d = nl.driver(current);
    return !(d != kNoGate && nl.gate(d).cell == CellKind::INV && nl.gate(d).pins[0] == m);
  }
  NetId pol = p1 ? sel : selbar;
  if (pol == kNoNet) return true;
  GateId x = find_xor_gate(nl, m, pol);
  return x == kNoGate || nl.gate(x).out != current;
}

std::vector<std::pair<NetId, NetId>> Boundary::boundary_pairs() const {
  std::vector<std::pair<NetId, NetId>> out;
  for (const MatchEdge& e : edges)
    if (e.is_boundary()) out.emplace_back(e.x, e.y);
  return out;
}

std::vector<std::pair<int, int>> Boundary::inv_positions1() const {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].parity1 & 1) out.emplace_back(static_cast<int>(i), edges[i].parity1 & 1);
  return out;
}

std::vector<std::pair<int, int>> Boundary::inv_positions0() const {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].parity0 & 1) out.emplace_back(static_cast<int>(i), edges[i].parity0 & 1);
  return out;
}

int Boundary::pair_index_of_cone1(GateId g) const {
  for (size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].g1 == g) return static_cast<int>(i);
  return -1;
}

std::optional<Boundary> relocation_boundary(const Netlist& nl, const SubCircuit& sub,
                                            const MuxInstance& mux, const MatchOptions& opts) {
  Matcher m(nl, sub, mux, opts);
  return m.run();
}

InvRepair inv2xor_positions(const Boundary& b) {
  InvRepair r;
  for (size_t i = 0; i < b.edges.size(); ++i) {
    const int p1 = b.edges[i].parity1 & 1, p0 = b.edges[i].parity0 & 1;
    if (p1 == 1 && p0 == 0)
      r.xor_s.push_back(static_cast<int>(i));
    else if (p1 == 0 && p0 == 1)
      r.xor_sbar.push_back(static_cast<int>(i));
    else if (p1 == 1 && p0 == 1)
      r.keep.push_back(static_cast<int>(i));
  }
  return r;
}

UniqueFanoutResult unique_fanout_pairs(const Netlist& nl, const SubCircuit& sub,
                                       const std::vector<GateId>& l0,
                                       const std::vector<GateId>& l1) {
  auto sig = [&](GateId g) {
    return std::pair(nl.gate(g).cell, in_cone_side_fanouts(nl, sub, g));
  };
  std::map<std::pair<CellKind, int>, int> count0, count1;
  for (GateId g : l0) ++count0[sig(g)];
  for (GateId g : l1) ++count1[sig(g)];
  UniqueFanoutResult r;
  std::vector<char> used1(l1.size(), 0);
  for (GateId g : l0) {
    auto s = sig(g);
    if (count0[s] == 1 && count1[s] == 1) {
      for (size_t j = 0; j < l1.size(); ++j) {
        if (!used1[j] && sig(l1[j]) == s) {
          used1[j] = 1;
          r.pairs.emplace_back(g, l1[j]);
          break;
        }
      }
    } else {
      r.rest0.push_back(g);
    }
  }
  for (size_t j = 0; j < l1.size(); ++j)
    if (!used1[j]) r.rest1.push_back(l1[j]);
  return r;
}

std::vector<std::pair<GateId, GateId>> lookahead_pair(const Netlist& nl, const SubCircuit& sub,
                                                      const MuxInstance& mux,
                                                      const std::vector<GateId>& group1,
                                                      const std::vector<GateId>& group0,
                                                      int depth, const MatchOptions& opts) {
  MatchOptions o = opts;
  o.lookahead_depth = depth;
  Matcher m(nl, sub, mux, o);
  std::vector<GateId> g1 = group1, g0 = group0;
  std::sort(g1.begin(), g1.end());
  std::sort(g0.begin(), g0.end());
  return m.resolve_ambiguous(g1, g0);
}

}  // namespace muxreloc
