#include "qimg/qasm.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "qimg/error.hpp"

namespace qimg {
namespace {

class Emitter {
 public:
  explicit Emitter(int logical_qubits) : first_ancilla_(logical_qubits) {}

  void x(int t) { out_ << "x " << q(t) << ";\n"; }
  void h(int t) { out_ << "h " << q(t) << ";\n"; }
  void z(int t) { out_ << "z " << q(t) << ";\n"; }
  void cx(int c, int t) { out_ << "cx " << q(c) << "," << q(t) << ";\n"; }
  void ccx(int a, int b, int t) {
    out_ << "ccx " << q(a) << "," << q(b) << "," << q(t) << ";\n";
  }

  void mcx(const std::vector<int>& controls, int target) {
    const auto k = controls.size();
    if (k == 0) return x(target);
    if (k == 1) return cx(controls[0], target);
    if (k == 2) return ccx(controls[0], controls[1], target);

    // Ancilla j holds AND(controls[0..j+1]).
    auto compute = [&] {
      ccx(controls[0], controls[1], ancilla(0));
      for (std::size_t i = 2; i + 1 < k; ++i) {
        ccx(controls[i], ancilla(static_cast<int>(i) - 2), ancilla(static_cast<int>(i) - 1));
      }
    };
    auto uncompute = [&] {
      for (std::size_t i = k - 2; i >= 2; --i) {
        ccx(controls[i], ancilla(static_cast<int>(i) - 2), ancilla(static_cast<int>(i) - 1));
      }
      ccx(controls[0], controls[1], ancilla(0));
    };
    compute();
    ccx(controls[k - 1], ancilla(static_cast<int>(k) - 3), target);
    uncompute();
  }

  void mcz(const std::vector<int>& qubits) {
    if (qubits.size() == 1) return z(qubits[0]);
    const int target = qubits.back();
    std::vector<int> controls(qubits.begin(), qubits.end() - 1);
    h(target);
    mcx(controls, target);
    h(target);
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string q(int i) { return "q[" + std::to_string(i) + "]"; }
  int ancilla(int j) const { return first_ancilla_ + j; }

  int first_ancilla_;
  std::ostringstream out_;
};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& what, std::string_view stmt) {
  throw Error(ErrorCode::ParseError, what + " in statement '" + std::string(stmt) + "'");
}

int parse_int(std::string_view s, std::string_view stmt) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) fail("bad integer", stmt);
  return v;
}

// "name[idx]" -> (name, idx)
std::pair<std::string, int> parse_ref(std::string_view s, std::string_view stmt) {
  s = trim(s);
  const auto open = s.find('[');
  if (open == std::string_view::npos || s.back() != ']') fail("expected register[index]", stmt);
  return {std::string(trim(s.substr(0, open))),
          parse_int(s.substr(open + 1, s.size() - open - 2), stmt)};
}

std::string strip_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 2, "//") == 0) {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

}  // namespace

int qasm_ancilla_count(const Circuit& circuit) {
  int needed = 0;
  for (const auto& gate : circuit.gates()) {
    int controls = 0;
    if (const auto* g = std::get_if<MCXGate>(&gate)) {
      controls = static_cast<int>(g->controls.size());
    } else if (const auto* g = std::get_if<MCZGate>(&gate)) {
      controls = static_cast<int>(g->qubits.size()) - 1;
    }
    needed = std::max(needed, controls - 2);
  }
  return needed;
}

std::string circuit_to_qasm(const Circuit& circuit) {
  const int width = circuit.qubit_count() + qasm_ancilla_count(circuit);
  Emitter em(circuit.qubit_count());
  for (const auto& gate : circuit.gates()) {
    if (const auto* g = std::get_if<XGate>(&gate)) em.x(g->target);
    else if (const auto* g = std::get_if<HGate>(&gate)) em.h(g->target);
    else if (const auto* g = std::get_if<ZGate>(&gate)) em.z(g->target);
    else if (const auto* g = std::get_if<CXGate>(&gate)) em.cx(g->control, g->target);
    else if (const auto* g = std::get_if<CCXGate>(&gate)) em.ccx(g->control_a, g->control_b, g->target);
    else if (const auto* g = std::get_if<MCXGate>(&gate)) em.mcx(g->controls, g->target);
    else if (const auto* g = std::get_if<MCZGate>(&gate)) em.mcz(g->qubits);
  }
  std::ostringstream out;
  out << "OPENQASM 2.0;\n"
      << "include \"qelib1.inc\";\n"
      << "qreg q[" << width << "];\n"
      << em.str();
  return out.str();
}

Circuit parse_qasm(std::string_view text) {
  const std::string clean = strip_comments(text);
  std::optional<Circuit> circuit;
  std::string reg_name;
  bool saw_header = false;

  std::size_t pos = 0;
  while (pos < clean.size()) {
    const auto semi = clean.find(';', pos);
    const std::string_view rest = trim(std::string_view(clean).substr(pos));
    if (semi == std::string::npos) {
      if (!rest.empty()) fail("missing ';'", rest);
      break;
    }
    const std::string_view stmt = trim(std::string_view(clean).substr(pos, semi - pos));
    pos = semi + 1;
    if (stmt.empty()) continue;

    const auto sp = stmt.find_first_of(" \t\r\n");
    const std::string_view head = stmt.substr(0, sp);
    const std::string_view args = sp == std::string_view::npos ? "" : trim(stmt.substr(sp));

    if (head == "OPENQASM") {
      if (args != "2.0") fail("unsupported version", stmt);
      saw_header = true;
      continue;
    }
    if (!saw_header) fail("program must start with 'OPENQASM 2.0;'", stmt);
    if (head == "include" || head == "creg" || head == "barrier") continue;
    if (head == "qreg") {
      if (circuit) fail("only one qreg is supported", stmt);
      auto [name, size] = parse_ref(args, stmt);
      if (size < 1 || size > kMaxQubits) fail("register size out of range", stmt);
      reg_name = name;
      circuit.emplace(size);
      continue;
    }
    if (!circuit) fail("gate before qreg", stmt);

    std::vector<int> qubits;
    std::size_t start = 0;
    while (start <= args.size()) {
      const auto comma = args.find(',', start);
      const auto piece = args.substr(start, comma == std::string_view::npos ? args.npos : comma - start);
      auto [name, idx] = parse_ref(piece, stmt);
      if (name != reg_name) fail("unknown register '" + name + "'", stmt);
      qubits.push_back(idx);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }

    auto expect_arity = [&](std::size_t n) {
      if (qubits.size() != n) fail("wrong operand count", stmt);
    };
    try {
      if (head == "x") { expect_arity(1); circuit->x(qubits[0]); }
      else if (head == "h") { expect_arity(1); circuit->h(qubits[0]); }
      else if (head == "z") { expect_arity(1); circuit->z(qubits[0]); }
      else if (head == "cx") { expect_arity(2); circuit->cx(qubits[0], qubits[1]); }
      else if (head == "ccx") { expect_arity(3); circuit->ccx(qubits[0], qubits[1], qubits[2]); }
      else fail("unsupported gate '" + std::string(head) + "'", stmt);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      fail(e.what(), stmt);
    }
  }
  if (!circuit) throw Error(ErrorCode::ParseError, "program declares no qreg");
  return *std::move(circuit);
}

}  // namespace qimg
