//
// muxreloc -- common-specification matching over the two data cones of a mux
//
// Backward lockstep pairing from the two data inputs. Candidates are grouped
// per matched parent and pin symmetry class, then resolved by shared-net
// elimination, unique (cell, pin class, side fanout) signatures, and a
// depth-bounded lookahead for the remaining ties. In approximate mode INV is
// traversed transparently with its position recorded as an edge parity, to be
// repaired by a select-gated XOR2. MUX2 cells driven by the same select are
// traversed through their selected input, which lets later relocations reuse
// boundary muxes inserted by earlier ones.
//

#pragma once

#include <optional>
#include <vector>

#include "muxreloc/mux_detect.hpp"
#include "muxreloc/netlist.hpp"

namespace muxreloc {

struct MatchOptions {
  enum class Safety { Strict, Duplicate };
  bool approximate = true;
  int lookahead_depth = 3;
  Safety safety = Safety::Strict;
};

struct Signature {
  CellKind cell;
  int pin_class;     // symmetry class of the pin through which the gate was reached
  int side_fanouts;  // in-cone consumers of the gate's output beyond the reached edge
  auto operator<=>(const Signature&) const = default;
};
Signature signature_of(const Netlist& netlist, const SubCircuit& sub, GateId gate,
                       int reached_pin_class);

struct MatchedPair {
  GateId g1 = kNoGate;  // cone_{s=1} gate
  GateId g0 = kNoGate;  // cone_{s=0} gate
  int depth = 0;        // levels from the mux, root pair = 1, INV/BUF cost 0
};

// One resolved input slot of the matched region. consumer_pair/pin name the
// cone1 pin this edge feeds; x/y are the effective sources on each side after
// transparent tracing, parity1/parity0 the inverter counts mod 2, and
// chain1/chain0 the traversed transparent gates (consumer side first).
struct MatchEdge {
  int consumer_pair = -1;  // -1: the edge into the relocated mux itself
  int pin = -1;
  NetId x = kNoNet;
  NetId y = kNoNet;
  int parity1 = 0;
  int parity0 = 0;
  int child_pair = -1;  // >= 0: interior edge into that pair
  std::vector<GateId> chain1, chain0;
  bool is_boundary() const { return child_pair < 0 && consumer_pair >= 0; }
  bool is_root() const { return consumer_pair < 0; }
};

struct PairFrontier {
  std::vector<GateId> l0, l1;  // unmatched candidates per side at this level
  int level = 0;
};

struct MatchStats {
  int lookahead_calls = 0;
  int bijections_scored = 0;
  int forced_unique = 0;
  int shared_eliminated = 0;
  int trimmed_pairs = 0;
  long gate_visits = 0;
};

struct Boundary {
  std::vector<MatchedPair> pairs;  // pairs[0] holds the two data-cone roots
  std::vector<MatchEdge> edges;    // edges[0] is the root edge
  std::vector<PairFrontier> frontiers;
  int depth = 0;  // B
  MatchStats stats;

  std::vector<std::pair<NetId, NetId>> boundary_pairs() const;
  // Inverter positions per cone: (edge index, parity), parity > 0 entries only.
  std::vector<std::pair<int, int>> inv_positions1() const;
  std::vector<std::pair<int, int>> inv_positions0() const;
  int pair_index_of_cone1(GateId g) const;
};

// no-match is an empty optional (the two data-cone drivers cannot pair).
std::optional<Boundary> relocation_boundary(const Netlist& netlist, const SubCircuit& sub,
                                            const MuxInstance& mux, const MatchOptions& opts);

// Classification of every matched edge by inversion parity.
struct InvRepair {
  std::vector<int> xor_s;     // parity1=1, parity0=0: XOR2 with extra input s
  std::vector<int> xor_sbar;  // parity1=0, parity0=1: XOR2 with extra input ~s
  std::vector<int> keep;      // parity1=parity0=1: inverters stay as they are
};
InvRepair inv2xor_positions(const Boundary& boundary);

// Pairs gates whose (cell, side-fanout) signature is unique in both lists.
struct UniqueFanoutResult {
  std::vector<std::pair<GateId, GateId>> pairs;  // (from l0, from l1)
  std::vector<GateId> rest0, rest1;
};
UniqueFanoutResult unique_fanout_pairs(const Netlist& netlist, const SubCircuit& sub,
                                       const std::vector<GateId>& l0,
                                       const std::vector<GateId>& l1);

// Resolves one ambiguous same-signature group by scoring tentative extensions
// `depth` levels deep; ties fall to ascending gate ids. Exposed for tests; the
// matcher calls the same machinery internally.
std::vector<std::pair<GateId, GateId>> lookahead_pair(const Netlist& netlist,
                                                      const SubCircuit& sub,
                                                      const MuxInstance& mux,
                                                      const std::vector<GateId>& group1,
                                                      const std::vector<GateId>& group0,
                                                      int depth,
                                                      const MatchOptions& opts = {});

// Structure-reuse lookups shared by the matcher's edit prediction and the
// relocation editor. Lowest gate id wins.
GateId find_mux_gate(const Netlist& netlist, NetId x, NetId y, NetId sel);  // MUX2 B=x A=y S=sel
GateId find_inv_gate(const Netlist& netlist, NetId in);
GateId find_xor_gate(const Netlist& netlist, NetId in, NetId other);

// True when realizing this edge would change the consumer pin's wiring (the
// repaired signal is not already what the pin reads). Mirrors the rules
// apply_relocation uses, which is what makes trimming sound.
bool edge_needs_edit(const Netlist& netlist, NetId sel, const MatchEdge& edge, NetId current);

}  // namespace muxreloc
