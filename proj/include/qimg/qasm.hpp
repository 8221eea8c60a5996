#pragma once

#include <string>
#include <string_view>

#include "qimg/statevector.hpp"

namespace qimg {

/// Number of ancilla qubits the exporter appends after the logical register:
/// c - 2 for the widest multi-controlled gate with c > 2 controls, else 0.
/// An MCZ over k qubits counts as k - 1 controls.
int qasm_ancilla_count(const Circuit& circuit);

/// OpenQASM 2.0 program over `qreg q[qubit_count + ancillas]` using only
/// x, h, z, cx and ccx. Wide MCX/MCZ gates become a V-chain of Toffolis that
/// computes the control conjunction into clean ancillas and uncomputes it.
std::string circuit_to_qasm(const Circuit& circuit);

/// Reads the subset of OpenQASM 2.0 the exporter emits: one `qreg`, gates
/// x/h/z/cx/ccx, `//` comments. `creg` and `barrier` are accepted and ignored.
/// Throws ParseError on anything else.
Circuit parse_qasm(std::string_view text);

}  // namespace qimg
