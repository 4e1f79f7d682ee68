#include "doctest.h"
#include "fixtures.hpp"
#include "muxreloc/bench_gen.hpp"
#include "muxreloc/iso_match.hpp"

#include <map>
#include <numeric>
#include <set>

using namespace muxreloc;
using namespace muxreloc::fixtures;

namespace {

SubCircuit single_sub(const Netlist& nl) {
  auto vectors = group_vector_muxes(nl, detect_muxes(nl));
  REQUIRE(vectors.size() == 1);
  auto subs = extract_subcircuits(nl, vectors);
  return subs[0];
}

// ---------------------------------------------------------------------------
// Independent structural verification of a Boundary: re-traces every edge with
// its own walker and checks that the matched regions are isomorphic as typed
// DAGs with parity-annotated edges.
// ---------------------------------------------------------------------------

struct TestTrace {
  NetId net;
  GateId gate;
  int parity;
};

TestTrace test_trace(const Netlist& nl, NetId n, NetId sel, int side, bool approx,
                     bool through_mux) {
  TestTrace t{n, kNoGate, 0};
  for (;;) {
    GateId d = nl.driver(t.net);
    if (d == kNoGate) return t;
    const Gate& g = nl.gate(d);
    if (g.cell == CellKind::BUF) {
      t.net = g.pins[0];
    } else if (g.cell == CellKind::INV && approx) {
      t.parity ^= 1;
      t.net = g.pins[0];
    } else if (through_mux && g.cell == CellKind::MUX2 && g.pins[2] == sel) {
      t.net = side == 1 ? g.pins[1] : g.pins[0];
    } else {
      t.gate = d;
      return t;
    }
  }
}

void check_boundary_soundness(const Netlist& nl, const MuxInstance& mux, const Boundary& b,
                              bool approx) {
  // Bijection over equal cell types.
  std::set<GateId> seen1, seen0;
  for (const MatchedPair& p : b.pairs) {
    CHECK(!seen1.count(p.g1));
    CHECK(!seen0.count(p.g0));
    seen1.insert(p.g1);
    seen0.insert(p.g0);
    CHECK(nl.gate(p.g1).cell == nl.gate(p.g0).cell);
  }

  // Exactly one edge per input pin of every matched cone1 gate, plus the root.
  std::map<std::pair<int, int>, int> edge_count;
  int root_edges = 0;
  for (const MatchEdge& e : b.edges) {
    if (e.is_root()) {
      ++root_edges;
      continue;
    }
    edge_count[{e.consumer_pair, e.pin}]++;
  }
  CHECK(root_edges == 1);
  for (size_t i = 0; i < b.pairs.size(); ++i)
    for (size_t pin = 0; pin < nl.gate(b.pairs[i].g1).pins.size(); ++pin)
      CHECK(edge_count[{static_cast<int>(i), static_cast<int>(pin)}] == 1);

  // Every edge re-traces to its recorded sources on the cone1 side.
  for (const MatchEdge& e : b.edges) {
    NetId start1 = e.is_root() ? mux.d1 : nl.gate(b.pairs[e.consumer_pair].g1).pins[e.pin];
    TestTrace t1 = test_trace(nl, start1, mux.sel, 1, approx, !e.is_root());
    CHECK(t1.net == e.x);
    CHECK((t1.parity & 1) == (e.parity1 & 1));
    if (e.child_pair >= 0 && !e.is_root()) {
      CHECK(t1.gate == b.pairs[e.child_pair].g1);
      CHECK(nl.gate(b.pairs[e.child_pair].g1).out == e.x);
      CHECK(nl.gate(b.pairs[e.child_pair].g0).out == e.y);
    }
  }
  {
    const MatchEdge& root = b.edges.front();
    CHECK(root.is_root());
    TestTrace t0 = test_trace(nl, mux.d0, mux.sel, 0, approx, false);
    CHECK(t0.net == root.y);
    CHECK((t0.parity & 1) == (root.parity0 & 1));
    CHECK(t0.gate == b.pairs[0].g0);
  }

  // Cone0 side: per pair and symmetry class there must exist a bijection of
  // g0 pins onto the edges consistent with the recorded (y, parity0).
  for (size_t i = 0; i < b.pairs.size(); ++i) {
    const Gate& g0 = nl.gate(b.pairs[i].g0);
    const CellType& info = cell_info(g0.cell);
    for (int cls = 0; cls < info.num_classes; ++cls) {
      std::vector<const MatchEdge*> edges;
      std::vector<int> pins;
      for (const MatchEdge& e : b.edges)
        if (!e.is_root() && e.consumer_pair == static_cast<int>(i) &&
            info.pin_class[e.pin] == cls)
          edges.push_back(&e);
      for (int p = 0; p < info.num_inputs; ++p)
        if (info.pin_class[p] == cls) pins.push_back(p);
      REQUIRE(edges.size() == pins.size());
      std::vector<size_t> perm(pins.size());
      std::iota(perm.begin(), perm.end(), 0);
      bool assignable = false;
      do {
        bool ok = true;
        for (size_t k = 0; k < edges.size() && ok; ++k) {
          TestTrace t = test_trace(nl, g0.pins[pins[perm[k]]], mux.sel, 0, approx, true);
          ok = t.net == edges[k]->y && (t.parity & 1) == (edges[k]->parity0 & 1);
          if (ok && edges[k]->child_pair >= 0)
            ok = t.gate == b.pairs[edges[k]->child_pair].g0;
        }
        assignable |= ok;
      } while (!assignable && std::next_permutation(perm.begin(), perm.end()));
      CHECK(assignable);
    }
  }
}

}  // namespace

TEST_CASE("two AOI cones match fully, forced entirely by structure") {
  Netlist nl = two_cone_aoi();
  SubCircuit sub = single_sub(nl);
  const MuxInstance& mux = sub.vector.muxes[0];
  MatchOptions opts;
  auto b = relocation_boundary(nl, sub, mux, opts);
  REQUIRE(b.has_value());
  CHECK(b->pairs.size() == 5);
  CHECK(b->stats.lookahead_calls == 0);
  CHECK(b->stats.bijections_scored == 0);
  CHECK(b->stats.trimmed_pairs == 0);

  // The AOI21 pin classes force g2-g8 and g3-g9.
  auto paired_with = [&](const char* name1) -> GateId {
    GateId g = gate_named(nl, name1);
    for (const MatchedPair& p : b->pairs)
      if (p.g1 == g) return p.g0;
    return kNoGate;
  };
  CHECK(paired_with("g2") == gate_named(nl, "g8"));
  CHECK(paired_with("g3") == gate_named(nl, "g9"));
  CHECK(paired_with("g1") == gate_named(nl, "g6"));
  CHECK(paired_with("g4") == gate_named(nl, "g7"));

  // All boundary pairs are shared nets here.
  for (auto [x, y] : b->boundary_pairs()) CHECK(x == y);

  check_boundary_soundness(nl, mux, *b, opts.approximate);

  // Work bound: every cone gate enters the matching at most once; with all
  // groups forced, visits stay within (depth+1) * cone size.
  CHECK(b->stats.gate_visits <=
        static_cast<long>((opts.lookahead_depth + 1) * sub.cone.member_gates.size()));
}

TEST_CASE("no-match when the data-cone drivers cannot pair") {
  Netlist nl = parse_gnl(
      ".module t\n.inputs a b c d s\n.outputs f\n"
      ".gate NAND2 u O=d1 A=a B=b\n"
      ".gate NOR2 v O=d0 A=c B=d\n"
      ".gate MUX2 m O=f A=d0 B=d1 S=s\n.end\n");
  SubCircuit sub = single_sub(nl);
  CHECK(!relocation_boundary(nl, sub, sub.vector.muxes[0], {}).has_value());

  // Data inputs driven by PIs cannot pair either.
  Netlist pis = parse_gnl(
      ".module t\n.inputs a b s\n.outputs f\n"
      ".gate MUX2 m O=f A=a B=b S=s\n.end\n");
  SubCircuit sub2 = single_sub(pis);
  CHECK(!relocation_boundary(pis, sub2, sub2.vector.muxes[0], {}).has_value());
}

TEST_CASE("unique_fanout_pairs reproduces the side-fanout pairing") {
  Netlist nl = fanout_example();
  SubCircuit sub = single_sub(nl);
  std::vector<GateId> l0 = {gate_named(nl, "g1"), gate_named(nl, "g2"), gate_named(nl, "g3"),
                            gate_named(nl, "g4")};
  std::vector<GateId> l1 = {gate_named(nl, "g6"), gate_named(nl, "g7"), gate_named(nl, "g8"),
                            gate_named(nl, "g9")};
  auto r = unique_fanout_pairs(nl, sub, l0, l1);
  REQUIRE(r.pairs.size() == 4);
  CHECK(r.pairs[0] == std::pair(gate_named(nl, "g1"), gate_named(nl, "g7")));
  CHECK(r.pairs[1] == std::pair(gate_named(nl, "g2"), gate_named(nl, "g8")));
  CHECK(r.pairs[2] == std::pair(gate_named(nl, "g3"), gate_named(nl, "g6")));
  CHECK(r.pairs[3] == std::pair(gate_named(nl, "g4"), gate_named(nl, "g9")));
  CHECK(r.rest0.empty());
  CHECK(r.rest1.empty());
}

TEST_CASE("unique_fanout_pairs leaves identical signatures alone") {
  Netlist nl = parse_gnl(
      ".module t\n.inputs a b c d s\n.outputs f\n"
      ".gate NAND2 p O=po A=a B=b\n"
      ".gate NAND2 q O=qo A=c B=d\n"
      ".gate NAND2 u O=d1 A=po B=qo\n"
      ".gate NAND2 p2 O=p2o A=a B=b\n"
      ".gate NAND2 q2 O=q2o A=c B=d\n"
      ".gate NAND2 v O=d0 A=p2o B=q2o\n"
      ".gate MUX2 m O=f A=d0 B=d1 S=s\n.end\n");
  SubCircuit sub = single_sub(nl);
  std::vector<GateId> l0 = {gate_named(nl, "p"), gate_named(nl, "q")};
  std::vector<GateId> l1 = {gate_named(nl, "p2"), gate_named(nl, "q2")};
  auto r = unique_fanout_pairs(nl, sub, l0, l1);
  CHECK(r.pairs.empty());
  CHECK(r.rest0 == l0);
  CHECK(r.rest1 == l1);
}

TEST_CASE("unique_fanout_pairs distinguishes by fanout count alone") {
  // p has one extra in-cone consumer, q none; mirrored on the other side.
  Netlist nl = parse_gnl(
      ".module t\n.inputs a b c d s\n.outputs f\n"
      ".gate NAND2 p O=po A=a B=b\n"
      ".gate NAND2 q O=qo A=c B=d\n"
      ".gate XOR2 u1 O=u1o A=po B=qo\n"
      ".gate AND2 u2 O=u2o A=po B=u1o\n"
      ".gate NAND2 q2 O=q2o A=c B=d\n"
      ".gate NAND2 p2 O=p2o A=a B=b\n"
      ".gate XOR2 v1 O=v1o A=p2o B=q2o\n"
      ".gate AND2 v2 O=v2o A=p2o B=v1o\n"
      ".gate MUX2 m O=f A=v2o B=u2o S=s\n.end\n");
  SubCircuit sub = single_sub(nl);
  std::vector<GateId> l0 = {gate_named(nl, "p"), gate_named(nl, "q")};
  std::vector<GateId> l1 = {gate_named(nl, "q2"), gate_named(nl, "p2")};
  auto r = unique_fanout_pairs(nl, sub, l0, l1);
  REQUIRE(r.pairs.size() == 2);
  CHECK(r.pairs[0] == std::pair(gate_named(nl, "p"), gate_named(nl, "p2")));
  CHECK(r.pairs[1] == std::pair(gate_named(nl, "q"), gate_named(nl, "q2")));
}

TEST_CASE("lookahead picks the pairing with more common logic") {
  Netlist nl = parse_gnl(
      ".module la\n.inputs w1 w2 w3 w4 z1 z2 s\n.outputs f\n"
      ".gate AND2 sa1 O=sa1o A=w1 B=w2\n"
      ".gate AND2 sa2 O=sa2o A=w3 B=w4\n"
      ".gate NAND2 k1 O=k1o A=sa1o B=sa2o\n"
      ".gate NAND2 k2 O=k2o A=z1 B=z2\n"
      ".gate NOR2 r1 O=d1 A=k1o B=k2o\n"
      ".gate AND2 ta1 O=ta1o A=w1 B=w2\n"
      ".gate AND2 ta2 O=ta2o A=w3 B=w4\n"
      ".gate NAND2 m1 O=m1o A=ta1o B=ta2o\n"
      ".gate NAND2 m2 O=m2o A=z1 B=z2\n"
      ".gate NOR2 r0 O=d0 A=m1o B=m2o\n"
      ".gate MUX2 mx O=f A=d0 B=d1 S=s\n.end\n");
  SubCircuit sub = single_sub(nl);
  const MuxInstance& mux = sub.vector.muxes[0];

  auto chosen = lookahead_pair(nl, sub, mux, {gate_named(nl, "k1"), gate_named(nl, "k2")},
                               {gate_named(nl, "m1"), gate_named(nl, "m2")}, 3);
  REQUIRE(chosen.size() == 2);
  CHECK(chosen[0] == std::pair(gate_named(nl, "k1"), gate_named(nl, "m1")));
  CHECK(chosen[1] == std::pair(gate_named(nl, "k2"), gate_named(nl, "m2")));

  // End to end: the NAND2 group needs one lookahead, the tied AND2 group
  // below it another; the full 5-gate cone still matches.
  MatchOptions opts;
  auto b = relocation_boundary(nl, sub, mux, opts);
  REQUIRE(b.has_value());
  CHECK(b->stats.lookahead_calls == 2);
  CHECK(b->pairs.size() == 5);
  bool k1m1 = false;
  for (const MatchedPair& p : b->pairs)
    k1m1 |= (p.g1 == gate_named(nl, "k1") && p.g0 == gate_named(nl, "m1"));
  CHECK(k1m1);
  check_boundary_soundness(nl, mux, *b, opts.approximate);
}

TEST_CASE("lookahead tie breaks to ascending gate ids") {
  Netlist nl = parse_gnl(
      ".module tie\n.inputs z1 z2 s\n.outputs f\n"
      ".gate NAND2 k1 O=k1o A=z1 B=z2\n"
      ".gate NAND2 k2 O=k2o A=z1 B=z2\n"
      ".gate NOR2 r1 O=d1 A=k1o B=k2o\n"
      ".gate NAND2 m1 O=m1o A=z1 B=z2\n"
      ".gate NAND2 m2 O=m2o A=z1 B=z2\n"
      ".gate NOR2 r0 O=d0 A=m1o B=m2o\n"
      ".gate MUX2 mx O=f A=d0 B=d1 S=s\n.end\n");
  SubCircuit sub = single_sub(nl);
  auto chosen = lookahead_pair(nl, sub, sub.vector.muxes[0],
                               {gate_named(nl, "k1"), gate_named(nl, "k2")},
                               {gate_named(nl, "m1"), gate_named(nl, "m2")}, 3);
  REQUIRE(chosen.size() == 2);
  CHECK(chosen[0] == std::pair(gate_named(nl, "k1"), gate_named(nl, "m1")));
  CHECK(chosen[1] == std::pair(gate_named(nl, "k2"), gate_named(nl, "m2")));

  auto single = lookahead_pair(nl, sub, sub.vector.muxes[0], {gate_named(nl, "k1")},
                               {gate_named(nl, "m2")}, 3);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::pair(gate_named(nl, "k1"), gate_named(nl, "m2")));
}

TEST_CASE("the relocation example matches with parities recorded") {
  Netlist nl = reloc_example();
  SubCircuit sub = single_sub(nl);
  const MuxInstance& mux = sub.vector.muxes[0];
  MatchOptions opts;
  auto b = relocation_boundary(nl, sub, mux, opts);
  REQUIRE(b.has_value());
  CHECK(b->pairs.size() == 5);
  CHECK(b->depth == 3);

  auto bp = b->boundary_pairs();
  REQUIRE(bp.size() == 5);
  std::set<std::pair<NetId, NetId>> want = {
      {net_named(nl, "p1"), net_named(nl, "q1")}, {net_named(nl, "p2"), net_named(nl, "q2")},
      {net_named(nl, "p3"), net_named(nl, "q3")}, {net_named(nl, "p4"), net_named(nl, "q4")},
      {net_named(nl, "p5"), net_named(nl, "q5")}};
  CHECK(std::set<std::pair<NetId, NetId>>(bp.begin(), bp.end()) == want);

  InvRepair repair = inv2xor_positions(*b);
  REQUIRE(repair.xor_sbar.size() == 1);
  CHECK(repair.xor_s.empty());
  REQUIRE(repair.keep.size() == 1);
  // The single-sided inverter sits on the edge into u0's A pin from (u1,v1);
  // the kept one on the edge into u2 from (u4,v4).
  const MatchEdge& sbar_edge = b->edges[repair.xor_sbar[0]];
  CHECK(b->pairs[sbar_edge.consumer_pair].g1 == gate_named(nl, "u0"));
  CHECK(sbar_edge.parity1 == 0);
  CHECK(sbar_edge.parity0 == 1);
  const MatchEdge& keep_edge = b->edges[repair.keep[0]];
  CHECK(b->pairs[keep_edge.consumer_pair].g1 == gate_named(nl, "u2"));
  CHECK(keep_edge.parity1 == 1);
  CHECK(keep_edge.parity0 == 1);

  check_boundary_soundness(nl, mux, *b, opts.approximate);
}

TEST_CASE("no inverters anywhere: every repair set is empty") {
  Netlist nl = two_cone_aoi();
  SubCircuit sub = single_sub(nl);
  auto b = relocation_boundary(nl, sub, sub.vector.muxes[0], {});
  REQUIRE(b.has_value());
  InvRepair repair = inv2xor_positions(*b);
  CHECK(repair.xor_s.empty());
  CHECK(repair.xor_sbar.empty());
  CHECK(repair.keep.empty());
}

TEST_CASE("exact mode treats inverters as vertices") {
  Netlist nl = reloc_example();
  SubCircuit sub = single_sub(nl);
  const MuxInstance& mux = sub.vector.muxes[0];
  MatchOptions exact;
  exact.approximate = false;
  auto b = relocation_boundary(nl, sub, mux, exact);
  REQUIRE(b.has_value());
  // u1/v1 cannot pair: v0 reads v1 through an inverter that u0 lacks.
  bool u1_matched = false;
  for (const MatchedPair& p : b->pairs) u1_matched |= p.g1 == gate_named(nl, "u1");
  CHECK(!u1_matched);
  bool found_cut = false;
  for (auto [x, y] : b->boundary_pairs())
    found_cut |= (x == net_named(nl, "nu1") && y == net_named(nl, "nv1i"));
  CHECK(found_cut);
  // The double-sided inverters pair with each other as ordinary vertices.
  bool inv_pair = false;
  for (const MatchedPair& p : b->pairs)
    inv_pair |= (p.g1 == gate_named(nl, "iu") && p.g0 == gate_named(nl, "iv4"));
  CHECK(inv_pair);
  check_boundary_soundness(nl, mux, *b, exact.approximate);
}

TEST_CASE("strict mode trims tainted gates observed from outside") {
  // u1 feeds the extra PO g, and matching it would rewire its b input.
  Netlist nl = parse_gnl(
      ".module t\n.inputs a b c d e s\n.outputs f g\n"
      ".gate NAND2 u1 O=nu1 A=a B=b\n"
      ".gate NAND2 u0 O=d1 A=nu1 B=e\n"
      ".gate NAND2 v1 O=nv1 A=a B=d\n"
      ".gate NAND2 v0 O=d0 A=nv1 B=e\n"
      ".gate MUX2 m O=f A=d0 B=d1 S=s\n"
      ".gate INV obs O=g A=nu1\n"
      ".end\n");
  SubCircuit sub = single_sub(nl);
  const MuxInstance& mux = sub.vector.muxes[0];
  MatchOptions opts;
  auto b = relocation_boundary(nl, sub, mux, opts);
  REQUIRE(b.has_value());
  CHECK(b->stats.trimmed_pairs >= 1);
  for (const MatchedPair& p : b->pairs) CHECK(p.g1 != gate_named(nl, "u1"));
  bool cut = false;
  for (auto [x, y] : b->boundary_pairs())
    cut |= (x == net_named(nl, "nu1") && y == net_named(nl, "nv1"));
  CHECK(cut);
  check_boundary_soundness(nl, mux, *b, opts.approximate);

  // Without the observer the same pair survives.
  Netlist free_nl = parse_gnl(
      ".module t\n.inputs a b c d e s\n.outputs f\n"
      ".gate NAND2 u1 O=nu1 A=a B=b\n"
      ".gate NAND2 u0 O=d1 A=nu1 B=e\n"
      ".gate NAND2 v1 O=nv1 A=a B=d\n"
      ".gate NAND2 v0 O=d0 A=nv1 B=e\n"
      ".gate MUX2 m O=f A=d0 B=d1 S=s\n.end\n");
  SubCircuit free_sub = single_sub(free_nl);
  auto fb = relocation_boundary(free_nl, free_sub, free_sub.vector.muxes[0], opts);
  REQUIRE(fb.has_value());
  bool matched = false;
  for (const MatchedPair& p : fb->pairs) matched |= p.g1 == gate_named(free_nl, "u1");
  CHECK(matched);
}

TEST_CASE("strict mode keeps select-confined side fanouts matchable") {
  // u1 also feeds u2, whose only sink is the d1 pin of a second same-select
  // mux: every extra path is select-confined, so u1 stays matchable.
  Netlist nl = parse_gnl(
      ".module t\n.inputs a b c d e h s\n.outputs f f2\n"
      ".gate NAND2 u1 O=nu1 A=a B=b\n"
      ".gate NAND2 u0 O=d1 A=nu1 B=e\n"
      ".gate NAND2 u2 O=d1b A=nu1 B=h\n"
      ".gate NAND2 v1 O=nv1 A=a B=d\n"
      ".gate NAND2 v0 O=d0 A=nv1 B=e\n"
      ".gate NAND2 v2 O=d0b A=nv1 B=h\n"
      ".gate MUX2 m O=f A=d0 B=d1 S=s\n"
      ".gate MUX2 m2 O=f2 A=d0b B=d1b S=s\n"
      ".end\n");
  auto vectors = group_vector_muxes(nl, detect_muxes(nl));
  REQUIRE(vectors.size() == 1);
  REQUIRE(vectors[0].muxes.size() == 2);
  auto subs = extract_subcircuits(nl, vectors);
  const MuxInstance& mux = subs[0].vector.muxes[0];
  auto b = relocation_boundary(nl, subs[0], mux, {});
  REQUIRE(b.has_value());
  bool matched = false;
  for (const MatchedPair& p : b->pairs) matched |= p.g1 == gate_named(nl, "u1");
  CHECK(matched);
  CHECK(b->stats.trimmed_pairs == 0);
}

TEST_CASE("shared nets become x=y boundary pairs") {
  Netlist nl = parse_gnl(
      ".module t\n.inputs a b c s\n.outputs f\n"
      ".gate XOR2 u O=d1 A=a B=b\n"
      ".gate XOR2 v O=d0 A=a B=c\n"
      ".gate MUX2 m O=f A=d0 B=d1 S=s\n.end\n");
  SubCircuit sub = single_sub(nl);
  auto b = relocation_boundary(nl, sub, sub.vector.muxes[0], {});
  REQUIRE(b.has_value());
  auto bp = b->boundary_pairs();
  REQUIRE(bp.size() == 2);
  std::set<std::pair<NetId, NetId>> got(bp.begin(), bp.end());
  CHECK(got.count({net_named(nl, "a"), net_named(nl, "a")}) == 1);
  CHECK(got.count({net_named(nl, "b"), net_named(nl, "c")}) == 1);
}

TEST_CASE("matching is deterministic") {
  for (int run = 0; run < 2; ++run) {
    Netlist n1 = reloc_example();
    Netlist n2 = reloc_example();
    SubCircuit s1 = single_sub(n1);
    SubCircuit s2 = single_sub(n2);
    auto b1 = relocation_boundary(n1, s1, s1.vector.muxes[0], {});
    auto b2 = relocation_boundary(n2, s2, s2.vector.muxes[0], {});
    REQUIRE(b1.has_value());
    REQUIRE(b2.has_value());
    REQUIRE(b1->pairs.size() == b2->pairs.size());
    for (size_t i = 0; i < b1->pairs.size(); ++i) {
      CHECK(b1->pairs[i].g1 == b2->pairs[i].g1);
      CHECK(b1->pairs[i].g0 == b2->pairs[i].g0);
    }
    REQUIRE(b1->edges.size() == b2->edges.size());
    for (size_t i = 0; i < b1->edges.size(); ++i) {
      CHECK(b1->edges[i].x == b2->edges[i].x);
      CHECK(b1->edges[i].y == b2->edges[i].y);
      CHECK(b1->edges[i].parity1 == b2->edges[i].parity1);
      CHECK(b1->edges[i].parity0 == b2->edges[i].parity0);
    }
  }
}

TEST_CASE("boundary soundness holds on generated benchmarks") {
  for (BenchKind kind : {BenchKind::AddAdd, BenchKind::AddSub, BenchKind::MulMul}) {
    Netlist nl = generate({kind, 4});
    auto vectors = group_vector_muxes(nl, detect_muxes(nl));
    REQUIRE(vectors.size() == 1);
    auto subs = extract_subcircuits(nl, vectors);
    MatchOptions opts;
    for (const MuxInstance& mux : subs[0].vector.muxes) {
      auto b = relocation_boundary(nl, subs[0], mux, opts);
      if (!b) continue;
      CAPTURE(bench_kind_name(kind));
      check_boundary_soundness(nl, mux, *b, opts.approximate);
    }
  }
}
