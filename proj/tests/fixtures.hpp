// Shared circuit fixtures for the test suites.
#pragma once

#include <string>

#include "muxreloc/gnl.hpp"

namespace muxreloc::fixtures {

// The AOI21 + two NAND2 netlist: f = ~( ~(b*c + a) * ~(a*d) ) = a + b*c.
inline const char* kAoiNand =
    ".module fig_aoi\n"
    ".inputs a b c d\n"
    ".outputs f\n"
    ".gate AOI21 n1g O=n1 A=b B=c C=a\n"
    ".gate NAND2 n2g O=n2 A=a B=d\n"
    ".gate NAND2 fg O=f A=n1 B=n2\n"
    ".end\n";

inline Netlist aoi_nand() { return parse_gnl(kAoiNand); }

// Two structurally mirrored cones (one AOI21 + three NAND2 each) on shared
// primary inputs, selected by a MUX2. The AOI21's pin classes force the
// level-3 NAND2 pairing.
inline const char* kTwoConeAoi =
    ".module two_cones\n"
    ".inputs a b c d e s\n"
    ".outputs f\n"
    "# s=1 cone\n"
    ".gate NAND2 g2 O=u2 A=a B=b\n"
    ".gate NAND2 g3 O=u3 A=c B=d\n"
    ".gate AOI21 g1 O=u1 A=u2 B=e C=u3\n"
    ".gate NAND2 g4 O=u4 A=d B=e\n"
    ".gate NAND2 g0 O=d1 A=u1 B=u4\n"
    "# s=0 cone\n"
    ".gate NAND2 g8 O=v2 A=a B=b\n"
    ".gate NAND2 g9 O=v3 A=c B=d\n"
    ".gate AOI21 g6 O=v1 A=v2 B=e C=v3\n"
    ".gate NAND2 g7 O=v4 A=d B=e\n"
    ".gate NAND2 g5 O=d0 A=v1 B=v4\n"
    ".gate MUX2 m O=f A=d0 B=d1 S=s\n"
    ".end\n";

inline Netlist two_cone_aoi() { return parse_gnl(kTwoConeAoi); }

// The worked relocation example: two 5-gate cones under one mux. The s=0
// cone carries one extra inverter (iv1) that the s=1 cone lacks; both cones
// share a double-sided inverter position in front of the deepest NOR2.
// Boundary: 5 primary-input pairs (p_i, q_i).
inline const char* kRelocExample =
    ".module reloc_example\n"
    ".inputs p1 p2 p3 p4 p5 q1 q2 q3 q4 q5 s\n"
    ".outputs F\n"
    "# s=1 cone: u0 = NOR2(u1, u2), u1 = NAND2(u2, p1), u2 = NAND2(u3, ~u4)\n"
    ".gate NAND2 u3 O=nu3 A=p2 B=p3\n"
    ".gate NOR2 u4 O=nu4 A=p4 B=p5\n"
    ".gate INV iu O=nui A=nu4\n"
    ".gate NAND2 u2 O=nu2 A=nu3 B=nui\n"
    ".gate NAND2 u1 O=nu1 A=nu2 B=p1\n"
    ".gate NOR2 u0 O=d1 A=nu1 B=nu2\n"
    "# s=0 cone: same shape plus an inverter between v1 and v0\n"
    ".gate NAND2 v3 O=nv3 A=q2 B=q3\n"
    ".gate NOR2 v4 O=nv4 A=q4 B=q5\n"
    ".gate INV iv4 O=nvi A=nv4\n"
    ".gate NAND2 v2 O=nv2 A=nv3 B=nvi\n"
    ".gate NAND2 v1 O=nv1 A=nv2 B=q1\n"
    ".gate INV iv1 O=nv1i A=nv1\n"
    ".gate NOR2 v0 O=d0 A=nv1i B=nv2\n"
    ".gate MUX2 m O=F A=d0 B=d1 S=s\n"
    ".end\n";

inline Netlist reloc_example() { return parse_gnl(kRelocExample); }

// Four same-signature NAND2 drivers per cone under an XOR2 tree, with
// engineered in-cone side fanouts {3,2,1,0} vs {1,3,2,0}. The side consumers
// reconverge into the cone roots so the counts are in-cone by construction.
inline const char* kFanoutExample =
    ".module fanout_example\n"
    ".inputs a1 b1 a2 b2 a3 b3 a4 b4 e1 h1 e2 h2 e3 h3 e4 h4 s\n"
    ".outputs F\n"
    ".gate NAND2 g1 O=n0 A=a1 B=b1\n"
    ".gate NAND2 g2 O=n1 A=a2 B=b2\n"
    ".gate NAND2 g3 O=n2 A=a3 B=b3\n"
    ".gate NAND2 g4 O=n3 A=a4 B=b4\n"
    ".gate XOR2 x1 O=x1o A=n0 B=n1\n"
    ".gate XOR2 x2 O=x2o A=n2 B=n3\n"
    ".gate XOR2 x0 O=x0o A=x1o B=x2o\n"
    ".gate AND2 s1 O=s1o A=n0 B=n1\n"
    ".gate AND2 s2 O=s2o A=n0 B=n1\n"
    ".gate AND2 s3 O=s3o A=n0 B=n2\n"
    ".gate OR2 r1 O=r1o A=s1o B=s2o\n"
    ".gate OR2 r2 O=r2o A=r1o B=s3o\n"
    ".gate AND2 top1 O=dd1 A=x0o B=r2o\n"
    ".gate NAND2 g6 O=n4 A=e1 B=h1\n"
    ".gate NAND2 g7 O=n5 A=e2 B=h2\n"
    ".gate NAND2 g8 O=n6 A=e3 B=h3\n"
    ".gate NAND2 g9 O=n7 A=e4 B=h4\n"
    ".gate XOR2 y1 O=y1o A=n4 B=n5\n"
    ".gate XOR2 y2 O=y2o A=n6 B=n7\n"
    ".gate XOR2 y0 O=y0o A=y1o B=y2o\n"
    ".gate AND2 t1 O=t1o A=n5 B=n6\n"
    ".gate AND2 t2 O=t2o A=n5 B=n6\n"
    ".gate AND2 t3 O=t3o A=n5 B=n4\n"
    ".gate OR2 q1 O=q1o A=t1o B=t2o\n"
    ".gate OR2 q2 O=q2o A=q1o B=t3o\n"
    ".gate AND2 top0 O=dd0 A=y0o B=q2o\n"
    ".gate MUX2 m O=F A=dd0 B=dd1 S=s\n"
    ".end\n";

inline Netlist fanout_example() { return parse_gnl(kFanoutExample); }

inline GateId gate_named(const Netlist& nl, const std::string& instance) {
  GateId found = kNoGate;
  nl.for_each_gate([&](const Gate& g) {
    if (g.name == instance) found = g.id;
  });
  return found;
}

inline NetId net_named(const Netlist& nl, const std::string& name) {
  auto id = nl.find_net(name);
  return id ? *id : kNoNet;
}

}  // namespace muxreloc::fixtures
