//
// muxreloc -- generators for the mux-selected operator-pair design family
//
// Each benchmark computes F = s ? OP1 : OP0 bit-sliced through MUX2 cells,
// with the operators built structurally (ripple adders, array multipliers,
// magnitude comparators, decoders). reference_function supplies the integer
// oracle the generated netlists are checked against.
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "muxreloc/netlist.hpp"

namespace muxreloc {

enum class BenchKind { AddAdd, AddSub, LtLt, LtLe, MulMul, MuladdSwap, DecDec };

struct BenchSpec {
  BenchKind kind = BenchKind::AddAdd;
  int bits = 4;
  uint64_t seed = 0;  // reserved
};

const char* bench_kind_name(BenchKind kind);
bool bench_kind_from_name(const std::string& name, BenchKind& out);
std::vector<BenchKind> all_bench_kinds();

// Throws std::invalid_argument for unsupported specs.
void validate_spec(const BenchSpec& spec);
Netlist generate(const BenchSpec& spec);

struct Reference {
  BenchSpec spec;
  int out_bits() const;
  int num_pi_bits() const;  // total PI count including s
  bool uses_c() const;
  // Output value as packed words (LSB first), out_bits wide. Inputs are
  // masked to the spec width.
  std::vector<uint64_t> eval(uint64_t a, uint64_t b, uint64_t c, bool s) const;
  uint64_t eval_u64(uint64_t a, uint64_t b, uint64_t c, bool s) const;
};
Reference reference_function(const BenchSpec& spec);

}  // namespace muxreloc
