#include "muxreloc/bench_gen.hpp"

#include <stdexcept>

namespace muxreloc {

namespace {

struct Builder {
  Netlist nl;
  int seq = 0;

  NetId emit(CellKind kind, const std::vector<NetId>& pins) {
    int id = seq++;
    NetId out = nl.add_net("n" + std::to_string(id));
    nl.add_gate(kind, "g" + std::to_string(id), out, pins);
    return out;
  }
  NetId inv(NetId a) { return emit(CellKind::INV, {a}); }
  NetId and2(NetId a, NetId b) { return emit(CellKind::AND2, {a, b}); }
  NetId or2(NetId a, NetId b) { return emit(CellKind::OR2, {a, b}); }
  NetId xor2(NetId a, NetId b) { return emit(CellKind::XOR2, {a, b}); }
  NetId xnor2(NetId a, NetId b) { return emit(CellKind::XNOR2, {a, b}); }

  std::vector<NetId> pi_vector(const std::string& stem, int n) {
    std::vector<NetId> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
      NetId net = nl.add_net(stem + "[" + std::to_string(i) + "]");
      nl.mark_pi(net);
      v.push_back(net);
    }
    return v;
  }
};

NetId at(const std::vector<NetId>& v, size_t i) { return i < v.size() ? v[i] : kNoNet; }

// x + y (+ cin). Missing high bits are folded as constant zero; returns
// max(|x|,|y|)+1 bits when a carry out exists.
std::vector<NetId> ripple_add(Builder& bld, const std::vector<NetId>& x,
                              const std::vector<NetId>& y, NetId cin = kNoNet) {
  std::vector<NetId> sum;
  NetId carry = cin;
  size_t width = std::max(x.size(), y.size());
  for (size_t i = 0; i < width; ++i) {
    NetId xi = at(x, i), yi = at(y, i);
    if (xi == kNoNet) std::swap(xi, yi);  // i < max width, so xi is present now
    if (yi == kNoNet) {
      if (carry == kNoNet) {
        sum.push_back(xi);
      } else {
        sum.push_back(bld.xor2(xi, carry));
        carry = bld.and2(xi, carry);
      }
      continue;
    }
    if (carry == kNoNet) {  // half adder
      sum.push_back(bld.xor2(xi, yi));
      carry = bld.and2(xi, yi);
      continue;
    }
    NetId t = bld.xor2(xi, yi);
    sum.push_back(bld.xor2(t, carry));
    NetId g1 = bld.and2(xi, yi);
    NetId g2 = bld.and2(t, carry);
    carry = bld.or2(g1, g2);
  }
  if (carry != kNoNet) sum.push_back(carry);
  return sum;
}

// A - C as A + ~C + 1 with the constant carry folded into the first cell.
std::vector<NetId> ripple_sub(Builder& bld, const std::vector<NetId>& a,
                              const std::vector<NetId>& c) {
  std::vector<NetId> sum;
  NetId carry = kNoNet;
  for (size_t i = 0; i < a.size(); ++i) {
    NetId nc = bld.inv(c[i]);
    if (i == 0) {
      // a0 + ~c0 + 1: sum = a0 ^ c0, carry = a0 | ~c0
      sum.push_back(bld.xor2(a[0], c[0]));
      carry = bld.or2(a[0], nc);
      continue;
    }
    NetId t = bld.xor2(a[i], nc);
    sum.push_back(bld.xor2(t, carry));
    NetId g1 = bld.and2(a[i], nc);
    NetId g2 = bld.and2(t, carry);
    carry = bld.or2(g1, g2);
  }
  sum.push_back(carry);
  return sum;
}

// x < y, unsigned. LSB-first ripple: a higher bit overrides the lower result
// unless the operands are equal there.
NetId less_than(Builder& bld, const std::vector<NetId>& x, const std::vector<NetId>& y) {
  NetId r = kNoNet;
  for (size_t i = 0; i < x.size(); ++i) {
    NetId lt = bld.and2(bld.inv(x[i]), y[i]);
    if (r == kNoNet) {
      r = lt;
    } else {
      NetId eq = bld.xnor2(x[i], y[i]);
      r = bld.or2(lt, bld.and2(eq, r));
    }
  }
  return r;
}

NetId less_equal(Builder& bld, const std::vector<NetId>& x, const std::vector<NetId>& y) {
  return bld.inv(less_than(bld, y, x));  // x <= y  ==  !(y < x)
}

// Array multiplier: AND2 partial products accumulated row by row.
std::vector<NetId> multiply(Builder& bld, const std::vector<NetId>& x,
                            const std::vector<NetId>& y) {
  const size_t n = x.size();
  auto row = [&](size_t j) {
    std::vector<NetId> r;
    r.reserve(n);
    for (size_t i = 0; i < n; ++i) r.push_back(bld.and2(x[i], y[j]));
    return r;
  };
  std::vector<NetId> out;
  std::vector<NetId> acc = row(0);
  out.push_back(acc[0]);
  std::vector<NetId> high(acc.begin() + 1, acc.end());
  for (size_t j = 1; j < n; ++j) {
    std::vector<NetId> sum = ripple_add(bld, high, row(j));
    out.push_back(sum[0]);
    high.assign(sum.begin() + 1, sum.end());
  }
  out.insert(out.end(), high.begin(), high.end());
  return out;  // 2n bits
}

std::vector<NetId> decoder(Builder& bld, const std::vector<NetId>& x) {
  const size_t n = x.size();
  std::vector<NetId> lit0;
  lit0.reserve(n);
  for (NetId xi : x) lit0.push_back(bld.inv(xi));
  std::vector<NetId> out;
  out.reserve(size_t{1} << n);
  for (size_t j = 0; j < (size_t{1} << n); ++j) {
    NetId acc = (j & 1) ? x[0] : lit0[0];
    for (size_t i = 1; i < n; ++i) acc = bld.and2(acc, (j >> i) & 1 ? x[i] : lit0[i]);
    out.push_back(acc);
  }
  return out;
}

}  // namespace

const char* bench_kind_name(BenchKind kind) {
  switch (kind) {
    case BenchKind::AddAdd: return "add-add";
    case BenchKind::AddSub: return "add-sub";
    case BenchKind::LtLt: return "lt-lt";
    case BenchKind::LtLe: return "lt-le";
    case BenchKind::MulMul: return "mul-mul";
    case BenchKind::MuladdSwap: return "muladd-swap";
    case BenchKind::DecDec: return "dec-dec";
  }
  return "?";
}

bool bench_kind_from_name(const std::string& name, BenchKind& out) {
  for (BenchKind k : all_bench_kinds()) {
    if (name == bench_kind_name(k)) {
      out = k;
      return true;
    }
  }
  return false;
}

std::vector<BenchKind> all_bench_kinds() {
  return {BenchKind::AddAdd,  BenchKind::AddSub,     BenchKind::LtLt,  BenchKind::LtLe,
          BenchKind::MulMul,  BenchKind::MuladdSwap, BenchKind::DecDec};
}

void validate_spec(const BenchSpec& spec) {
  if (spec.bits < 2) throw std::invalid_argument("bench: bits must be >= 2");
  switch (spec.kind) {
    case BenchKind::DecDec:
      if (spec.bits > 8) throw std::invalid_argument("dec-dec: bits must be <= 8");
      break;
    case BenchKind::MulMul:
    case BenchKind::MuladdSwap:
      if (spec.bits > 32) throw std::invalid_argument("multiplier kinds: bits must be <= 32");
      break;
    default:
      if (spec.bits > 63) throw std::invalid_argument("bench: bits must be <= 63");
      break;
  }
}

bool Reference::uses_c() const {
  switch (spec.kind) {
    case BenchKind::LtLe:
    case BenchKind::DecDec:
      return false;
    default:
      return true;
  }
}

int Reference::out_bits() const {
  switch (spec.kind) {
    case BenchKind::AddAdd:
    case BenchKind::AddSub:
      return spec.bits + 1;
    case BenchKind::LtLt:
    case BenchKind::LtLe:
      return 1;
    case BenchKind::MulMul:
      return 2 * spec.bits;
    case BenchKind::MuladdSwap:
      return 2 * spec.bits + 1;
    case BenchKind::DecDec:
      return 1 << spec.bits;
  }
  return 0;
}

int Reference::num_pi_bits() const { return spec.bits * (uses_c() ? 3 : 2) + 1; }

std::vector<uint64_t> Reference::eval(uint64_t a, uint64_t b, uint64_t c, bool s) const {
  const int n = spec.bits;
  const uint64_t mask = n >= 64 ? ~0ull : (1ull << n) - 1;
  a &= mask;
  b &= mask;
  c &= mask;
  const int ob = out_bits();
  std::vector<uint64_t> words((ob + 63) / 64, 0);
  if (spec.kind == BenchKind::DecDec) {
    uint64_t idx = s ? a : b;
    words[idx / 64] |= 1ull << (idx % 64);
    return words;
  }
  unsigned __int128 v = 0;
  switch (spec.kind) {
    case BenchKind::AddAdd:
      v = s ? a + b : a + c;
      break;
    case BenchKind::AddSub:
      v = s ? a + b : a + ((~c) & mask) + 1;
      break;
    case BenchKind::LtLt:
      v = s ? (a < b) : (a < c);
      break;
    case BenchKind::LtLe:
      v = s ? (a <= b) : (a < b);
      break;
    case BenchKind::MulMul:
      v = s ? static_cast<unsigned __int128>(a) * b : static_cast<unsigned __int128>(a) * c;
      break;
    case BenchKind::MuladdSwap:
      v = s ? static_cast<unsigned __int128>(a) * b + c : static_cast<unsigned __int128>(b) * c + a;
      break;
    case BenchKind::DecDec:
      break;
  }
  for (int i = 0; i < ob; ++i)
    if ((v >> i) & 1) words[i / 64] |= 1ull << (i % 64);
  return words;
}

uint64_t Reference::eval_u64(uint64_t a, uint64_t b, uint64_t c, bool s) const {
  auto w = eval(a, b, c, s);
  return w.empty() ? 0 : w[0];
}

Reference reference_function(const BenchSpec& spec) {
  validate_spec(spec);
  return Reference{spec};
}

Netlist generate(const BenchSpec& spec) {
  validate_spec(spec);
  Reference ref{spec};
  Builder bld;
  std::string module = std::string(bench_kind_name(spec.kind)) + "_" + std::to_string(spec.bits);
  for (char& ch : module)
    if (ch == '-') ch = '_';
  bld.nl.module_name = module;
  // PI declaration order: a, b, [c], s.
  auto a = bld.pi_vector("a", spec.bits);
  auto b = bld.pi_vector("b", spec.bits);
  std::vector<NetId> c;
  if (ref.uses_c()) c = bld.pi_vector("c", spec.bits);
  NetId s = bld.nl.add_net("s");
  bld.nl.mark_pi(s);

  std::vector<NetId> op1, op0;
  switch (spec.kind) {
    case BenchKind::AddAdd:
      op1 = ripple_add(bld, a, b);
      op0 = ripple_add(bld, a, c);
      break;
    case BenchKind::AddSub:
      op1 = ripple_add(bld, a, b);
      op0 = ripple_sub(bld, a, c);
      break;
    case BenchKind::LtLt:
      op1 = {less_than(bld, a, b)};
      op0 = {less_than(bld, a, c)};
      break;
    case BenchKind::LtLe:
      op1 = {less_equal(bld, a, b)};
      op0 = {less_than(bld, a, b)};
      break;
    case BenchKind::MulMul:
      op1 = multiply(bld, a, b);
      op0 = multiply(bld, a, c);
      break;
    case BenchKind::MuladdSwap:
      op1 = ripple_add(bld, multiply(bld, a, b), c);
      op0 = ripple_add(bld, multiply(bld, b, c), a);
      break;
    case BenchKind::DecDec:
      op1 = decoder(bld, a);
      op0 = decoder(bld, b);
      break;
  }
  const int ob = ref.out_bits();
  if (static_cast<int>(op1.size()) != ob || static_cast<int>(op0.size()) != ob)
    throw std::logic_error("bench generator produced wrong width");
  for (int i = 0; i < ob; ++i) {
    NetId f = bld.nl.add_net("f[" + std::to_string(i) + "]");
    bld.nl.add_gate(CellKind::MUX2, "mux" + std::to_string(i), f, {op0[i], op1[i], s},
                    /*canonicalize=*/false);
    bld.nl.mark_po(f);
  }
  return std::move(bld.nl);
}

}  // namespace muxreloc
