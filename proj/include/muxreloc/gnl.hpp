//
// muxreloc -- GNL text format
//
// .module <name> / .inputs / .outputs / .gate CELL inst O=net A=net ... / .end
// Identifiers are [A-Za-z_][A-Za-z0-9_.\[\]]*, '#' starts a comment.
//

#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "muxreloc/netlist.hpp"

namespace muxreloc {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Parses, canonicalizes pin order and validates. Throws ParseError.
Netlist parse_gnl(const std::string& text);
Netlist read_gnl_file(const std::string& path);

// Canonical form: header, inputs, outputs, gates in ascending id order, .end.
std::string write_gnl(const Netlist& netlist);
void write_gnl_file(const Netlist& netlist, const std::string& path);

struct NetlistStats {
  std::string module_name;
  int num_pis = 0;
  int num_pos = 0;
  int num_gates = 0;
  int max_level = 0;
  AreaMicro total_area = 0;
  std::map<std::string, int> cells;  // cell name -> count

  std::string to_string() const;
  int count(CellKind kind) const;
};
NetlistStats stats(const Netlist& netlist, const AreaTable& table);

}  // namespace muxreloc
