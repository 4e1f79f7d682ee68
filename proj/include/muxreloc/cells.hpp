//
// muxreloc -- standard-cell vocabulary
//
// The fixed 13-cell library the whole tool operates on. Cells carry pin
// names, pin symmetry classes and a truth table; per-cell areas live in
// AreaTable so they can be overridden from a file.
//

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace muxreloc {

enum class CellKind : uint8_t {
  INV,
  BUF,
  NAND2,
  NAND3,
  NOR2,
  NOR3,
  AND2,
  OR2,
  XOR2,
  XNOR2,
  AOI21,
  OAI21,
  MUX2,
};

inline constexpr int kCellKindCount = 13;

// Area in exact micro-units (1 unit = 1'000'000). Keeps the accept test and
// the monotone-termination argument free of float comparisons.
using AreaMicro = int64_t;
inline constexpr AreaMicro kAreaUnit = 1'000'000;

struct CellType {
  CellKind kind;
  const char* name;
  int num_inputs;
  std::array<const char*, 3> pins;    // declared pin order, nullptr-padded
  std::array<int8_t, 3> pin_class;    // symmetry class id per pin
  int num_classes;
  uint16_t truth;                     // bit v = output for input bits v (pin i -> bit i)
};

const CellType& cell_info(CellKind kind);
std::optional<CellKind> cell_from_name(std::string_view name);
inline const char* cell_name(CellKind kind) { return cell_info(kind).name; }
inline bool is_transparent(CellKind kind) { return kind == CellKind::INV || kind == CellKind::BUF; }

// Evaluate by positional input bits (pin i -> bits[i]).
bool eval_cell(CellKind kind, std::span<const bool> bits);

// Evaluate by named pins; throws std::invalid_argument on a pin mismatch.
bool eval_cell(CellKind kind, const std::vector<std::pair<std::string, bool>>& named);

// 64 simulation lanes at once; words[i] belongs to pin i.
uint64_t eval_cell_words(CellKind kind, const uint64_t* words);

// Sorts the nets assigned to pins of the same symmetry class by net id.
// `nets` has one entry per declared input pin. Function is preserved by
// construction (symmetry classes are exhaustively checked in the tests).
void canonical_pin_order(CellKind kind, std::span<int32_t> nets);

struct AreaTable {
  std::array<AreaMicro, kCellKindCount> micro{};

  static AreaTable defaults();
  AreaMicro of(CellKind kind) const { return micro[static_cast<size_t>(kind)]; }

  // Override file: one `CELLNAME <decimal-area>` per line, '#' comments.
  // Throws std::runtime_error with a line number on bad input.
  void apply_overrides(std::string_view text);
  static AreaTable from_file(const std::string& path);
};

// Parses a positive decimal (up to 6 fraction digits) into micro-units.
std::optional<AreaMicro> parse_area(std::string_view text);
std::string format_area(AreaMicro area);

}  // namespace muxreloc
