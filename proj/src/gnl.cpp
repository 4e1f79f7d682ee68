#include "muxreloc/gnl.hpp"

#include <fstream>
#include <sstream>

namespace muxreloc {

namespace {

bool is_ident(const std::string& tok) {
  if (tok.empty()) return false;
  auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto tail = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' || c == ']';
  };
  if (!head(tok[0])) return false;
  for (size_t i = 1; i < tok.size(); ++i)
    if (!tail(tok[i])) return false;
  return true;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    size_t hash = t.find('#');
    if (hash != std::string::npos) {
      if (hash > 0) toks.push_back(t.substr(0, hash));
      break;
    }
    toks.push_back(t);
  }
  return toks;
}

}  // namespace

Netlist parse_gnl(const std::string& text) {
  Netlist nl;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_module = false, saw_end = false;

  auto net_of = [&](const std::string& name) {
    if (!is_ident(name)) throw ParseError(lineno, "bad identifier `" + name + "`");
    return nl.ensure_net(name);
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (saw_end) throw ParseError(lineno, "content after .end");
    const std::string& head = toks[0];
    if (head == ".module") {
      if (saw_module) throw ParseError(lineno, "duplicate .module");
      if (toks.size() != 2 || !is_ident(toks[1])) throw ParseError(lineno, ".module wants one name");
      nl.module_name = toks[1];
      saw_module = true;
    } else if (head == ".inputs") {
      if (!saw_module) throw ParseError(lineno, ".inputs before .module");
      for (size_t i = 1; i < toks.size(); ++i) {
        NetId n = net_of(toks[i]);
        if (nl.net(n).is_pi) throw ParseError(lineno, "duplicate input " + toks[i]);
        nl.mark_pi(n);
      }
    } else if (head == ".outputs") {
      if (!saw_module) throw ParseError(lineno, ".outputs before .module");
      for (size_t i = 1; i < toks.size(); ++i) {
        NetId n = net_of(toks[i]);
        if (nl.net(n).is_po) throw ParseError(lineno, "duplicate output " + toks[i]);
        nl.mark_po(n);
      }
    } else if (head == ".gate") {
      if (!saw_module) throw ParseError(lineno, ".gate before .module");
      if (toks.size() < 3) throw ParseError(lineno, ".gate wants `CELL inst O=... pins`");
      auto kind = cell_from_name(toks[1]);
      if (!kind) throw ParseError(lineno, "unknown cell " + toks[1]);
      const std::string& inst = toks[2];
      if (!is_ident(inst)) throw ParseError(lineno, "bad instance name `" + inst + "`");
      if (nl.instance_name_taken(inst)) throw ParseError(lineno, "duplicate instance name " + inst);
      const CellType& info = cell_info(*kind);
      NetId out = kNoNet;
      std::vector<NetId> pins(info.num_inputs, kNoNet);
      for (size_t i = 3; i < toks.size(); ++i) {
        size_t eq = toks[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= toks[i].size())
          throw ParseError(lineno, "expected PIN=net, got `" + toks[i] + "`");
        std::string pin = toks[i].substr(0, eq);
        std::string net_name = toks[i].substr(eq + 1);
        if (pin == "O") {
          if (out != kNoNet) throw ParseError(lineno, "duplicate O pin");
          out = net_of(net_name);
        } else {
          int idx = -1;
          for (int p = 0; p < info.num_inputs; ++p)
            if (pin == info.pins[p]) idx = p;
          if (idx < 0)
            throw ParseError(lineno, std::string(info.name) + " has no pin " + pin);
          if (pins[idx] != kNoNet) throw ParseError(lineno, "duplicate pin " + pin);
          pins[idx] = net_of(net_name);
        }
      }
      if (out == kNoNet) throw ParseError(lineno, "gate " + inst + " misses O pin");
      for (int p = 0; p < info.num_inputs; ++p)
        if (pins[p] == kNoNet)
          throw ParseError(lineno, "gate " + inst + " misses pin " + info.pins[p]);
      if (nl.net(out).is_pi)
        throw ParseError(lineno, "gate " + inst + " drives primary input " + nl.net(out).name);
      if (nl.driver(out) != kNoGate)
        throw ParseError(lineno, "net " + nl.net(out).name + " driven twice");
      nl.add_gate(*kind, inst, out, pins);
    } else if (head == ".end") {
      if (!saw_module) throw ParseError(lineno, ".end before .module");
      if (toks.size() != 1) throw ParseError(lineno, ".end takes no arguments");
      saw_end = true;
    } else {
      throw ParseError(lineno, "unknown directive `" + head + "`");
    }
  }
  if (!saw_module) throw ParseError(lineno, "missing .module");
  if (!saw_end) throw ParseError(lineno, "missing .end");
  auto diags = validate(nl);
  if (!diags.empty()) throw ParseError(lineno, diags.front().message);
  return nl;
}

Netlist read_gnl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gnl(ss.str());
}

std::string write_gnl(const Netlist& nl) {
  std::ostringstream out;
  out << ".module " << nl.module_name << "\n";
  out << ".inputs";
  for (NetId n : nl.primary_inputs()) out << " " << nl.net(n).name;
  out << "\n.outputs";
  for (NetId n : nl.primary_outputs()) out << " " << nl.net(n).name;
  out << "\n";
  nl.for_each_gate([&](const Gate& g) {
    const CellType& info = cell_info(g.cell);
    out << ".gate " << info.name << " " << g.name << " O=" << nl.net(g.out).name;
    for (int p = 0; p < info.num_inputs; ++p)
      out << " " << info.pins[p] << "=" << nl.net(g.pins[p]).name;
    out << "\n";
  });
  out << ".end\n";
  return out.str();
}

void write_gnl_file(const Netlist& nl, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << write_gnl(nl);
}

NetlistStats stats(const Netlist& nl, const AreaTable& table) {
  NetlistStats s;
  s.module_name = nl.module_name;
  s.num_pis = static_cast<int>(nl.primary_inputs().size());
  s.num_pos = static_cast<int>(nl.primary_outputs().size());
  s.num_gates = nl.live_gate_count();
  s.total_area = area(nl, table);
  nl.for_each_gate([&](const Gate& g) { s.cells[cell_name(g.cell)]++; });
  s.max_level = levels(nl).max_level;
  return s;
}

int NetlistStats::count(CellKind kind) const {
  auto it = cells.find(cell_name(kind));
  return it == cells.end() ? 0 : it->second;
}

std::string NetlistStats::to_string() const {
  std::ostringstream out;
  out << "module " << module_name << "\n";
  out << "  inputs " << num_pis << "  outputs " << num_pos << "  gates " << num_gates << "\n";
  out << "  area " << format_area(total_area) << "  max-level " << max_level << "\n";
  out << "  cells:";
  for (const auto& [name, count] : cells) out << " " << name << "=" << count;
  out << "\n";
  return out.str();
}

}  // namespace muxreloc
