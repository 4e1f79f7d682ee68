#include "muxreloc/cells.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace muxreloc {

namespace {

// Truth tables index with pin 0 as bit 0. MUX2 is O = (~S&A) | (S&B), so the
// B input is the one selected when S=1.
constexpr std::array<CellType, kCellKindCount> kCells = {{
    {CellKind::INV, "INV", 1, {"A", nullptr, nullptr}, {0, -1, -1}, 1, 0x0001},
    {CellKind::BUF, "BUF", 1, {"A", nullptr, nullptr}, {0, -1, -1}, 1, 0x0002},
    {CellKind::NAND2, "NAND2", 2, {"A", "B", nullptr}, {0, 0, -1}, 1, 0x0007},
    {CellKind::NAND3, "NAND3", 3, {"A", "B", "C"}, {0, 0, 0}, 1, 0x007F},
    {CellKind::NOR2, "NOR2", 2, {"A", "B", nullptr}, {0, 0, -1}, 1, 0x0001},
    {CellKind::NOR3, "NOR3", 3, {"A", "B", "C"}, {0, 0, 0}, 1, 0x0001},
    {CellKind::AND2, "AND2", 2, {"A", "B", nullptr}, {0, 0, -1}, 1, 0x0008},
    {CellKind::OR2, "OR2", 2, {"A", "B", nullptr}, {0, 0, -1}, 1, 0x000E},
    {CellKind::XOR2, "XOR2", 2, {"A", "B", nullptr}, {0, 0, -1}, 1, 0x0006},
    {CellKind::XNOR2, "XNOR2", 2, {"A", "B", nullptr}, {0, 0, -1}, 1, 0x0009},
    // AOI21: O = ~((A&B) | C); the AND pair {A,B} and the OR leg {C} are
    // distinct symmetry classes.
    {CellKind::AOI21, "AOI21", 3, {"A", "B", "C"}, {0, 0, 1}, 2, 0x0007},
    {CellKind::OAI21, "OAI21", 3, {"A", "B", "C"}, {0, 0, 1}, 2, 0x001F},
    {CellKind::MUX2, "MUX2", 3, {"A", "B", "S"}, {0, 1, 2}, 3, 0x00CA},
}};

}  // namespace

const CellType& cell_info(CellKind kind) { return kCells[static_cast<size_t>(kind)]; }

std::optional<CellKind> cell_from_name(std::string_view name) {
  for (const auto& c : kCells)
    if (name == c.name) return c.kind;
  return std::nullopt;
}

bool eval_cell(CellKind kind, std::span<const bool> bits) {
  const CellType& c = cell_info(kind);
  if (static_cast<int>(bits.size()) != c.num_inputs)
    throw std::invalid_argument(std::string(c.name) + ": wrong input count");
  unsigned v = 0;
  for (int i = 0; i < c.num_inputs; ++i)
    if (bits[i]) v |= 1u << i;
  return (c.truth >> v) & 1u;
}

bool eval_cell(CellKind kind, const std::vector<std::pair<std::string, bool>>& named) {
  const CellType& c = cell_info(kind);
  if (static_cast<int>(named.size()) != c.num_inputs)
    throw std::invalid_argument(std::string(c.name) + ": expected " +
                                std::to_string(c.num_inputs) + " pins, got " +
                                std::to_string(named.size()));
  std::array<bool, 3> bits{};
  std::array<bool, 3> seen{};
  for (const auto& [pin, value] : named) {
    int idx = -1;
    for (int i = 0; i < c.num_inputs; ++i)
      if (pin == c.pins[i]) idx = i;
    if (idx < 0)
      throw std::invalid_argument(std::string(c.name) + ": unknown pin " + pin);
    if (seen[idx])
      throw std::invalid_argument(std::string(c.name) + ": duplicate pin " + pin);
    seen[idx] = true;
    bits[idx] = value;
  }
  return eval_cell(kind, std::span<const bool>(bits.data(), c.num_inputs));
}

uint64_t eval_cell_words(CellKind kind, const uint64_t* w) {
  switch (kind) {
    case CellKind::INV: return ~w[0];
    case CellKind::BUF: return w[0];
    case CellKind::NAND2: return ~(w[0] & w[1]);
    case CellKind::NAND3: return ~(w[0] & w[1] & w[2]);
    case CellKind::NOR2: return ~(w[0] | w[1]);
    case CellKind::NOR3: return ~(w[0] | w[1] | w[2]);
    case CellKind::AND2: return w[0] & w[1];
    case CellKind::OR2: return w[0] | w[1];
    case CellKind::XOR2: return w[0] ^ w[1];
    case CellKind::XNOR2: return ~(w[0] ^ w[1]);
    case CellKind::AOI21: return ~((w[0] & w[1]) | w[2]);
    case CellKind::OAI21: return ~((w[0] | w[1]) & w[2]);
    case CellKind::MUX2: return (~w[2] & w[0]) | (w[2] & w[1]);
  }
  return 0;
}

void canonical_pin_order(CellKind kind, std::span<int32_t> nets) {
  const CellType& c = cell_info(kind);
  for (int cls = 0; cls < c.num_classes; ++cls) {
    int begin = -1;
    for (int i = 0; i < c.num_inputs; ++i) {
      if (c.pin_class[i] != cls) continue;
      if (begin < 0) begin = i;
    }
    if (begin < 0) continue;
    // Symmetry classes are contiguous in the declared pin order.
    int end = begin;
    while (end < c.num_inputs && c.pin_class[end] == cls) ++end;
    std::sort(nets.begin() + begin, nets.begin() + end);
  }
}

AreaTable AreaTable::defaults() {
  AreaTable t;
  auto set = [&t](CellKind k, int64_t units) { t.micro[static_cast<size_t>(k)] = units * kAreaUnit; };
  set(CellKind::INV, 1);
  set(CellKind::BUF, 1);
  set(CellKind::NAND2, 2);
  set(CellKind::NOR2, 2);
  set(CellKind::NAND3, 3);
  set(CellKind::NOR3, 3);
  set(CellKind::AND2, 3);
  set(CellKind::OR2, 3);
  set(CellKind::AOI21, 3);
  set(CellKind::OAI21, 3);
  set(CellKind::XOR2, 5);
  set(CellKind::XNOR2, 5);
  set(CellKind::MUX2, 4);
  return t;
}

std::optional<AreaMicro> parse_area(std::string_view text) {
  if (text.empty()) return std::nullopt;
  size_t dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (frac.size() > 6) return std::nullopt;
  int64_t w = 0;
  if (!whole.empty()) {
    auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
    if (ec != std::errc() || p != whole.data() + whole.size()) return std::nullopt;
  }
  int64_t f = 0;
  if (!frac.empty()) {
    auto [p, ec] = std::from_chars(frac.data(), frac.data() + frac.size(), f);
    if (ec != std::errc() || p != frac.data() + frac.size()) return std::nullopt;
    for (size_t i = frac.size(); i < 6; ++i) f *= 10;
  }
  AreaMicro area = w * kAreaUnit + f;
  if (area <= 0) return std::nullopt;
  return area;
}

std::string format_area(AreaMicro area) {
  std::string s = std::to_string(area / kAreaUnit);
  int64_t frac = area % kAreaUnit;
  if (frac < 0) frac = -frac;
  if (frac != 0) {
    char buf[8];
    snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(frac));
    std::string f(buf);
    while (!f.empty() && f.back() == '0') f.pop_back();
    s += "." + f;
  }
  return s;
}

void AreaTable::apply_overrides(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name, value, extra;
    if (!(ls >> name)) continue;
    if (!(ls >> value) || (ls >> extra))
      throw std::runtime_error("area table line " + std::to_string(lineno) +
                               ": expected `CELLNAME <area>`");
    auto kind = cell_from_name(name);
    if (!kind)
      throw std::runtime_error("area table line " + std::to_string(lineno) +
                               ": unknown cell " + name);
    auto area = parse_area(value);
    if (!area)
      throw std::runtime_error("area table line " + std::to_string(lineno) +
                               ": bad area " + value);
    micro[static_cast<size_t>(*kind)] = *area;
  }
}

AreaTable AreaTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open area table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  AreaTable t = defaults();
  t.apply_overrides(ss.str());
  return t;
}

}  // namespace muxreloc
