#pragma once

#include <cstdint>
#include <string>

#include "rcs/circuit.hpp"
#include "rcs/errors.hpp"
#include "rcs/statevector.hpp"

namespace rcs {

inline void apply_gate(StateVector& state, const Gate& gate) {
  const GateMatrix u = gate_unitary(gate.kind);
  if (gate.arity() == 1)
    apply_1q(state, u, gate.qubits[0]);
  else
    apply_2q(state, u, gate.qubits[0], gate.qubits[1]);
}

/// Applies moments in order, gates within a moment in listed order.
inline StateVector run_circuit(const Circuit& circuit, const SimLimits& limits = {}) {
  validate(circuit);
  StateVector state = StateVector::zero(circuit.n_qubits, limits);
  for (const auto& m : circuit.moments)
    for (const auto& g : m.gates) apply_gate(state, g);
  return state;
}

inline ProbabilityTable ideal_distribution(const Circuit& circuit,
                                           const SimLimits& limits = {}) {
  return probabilities(run_circuit(circuit, limits));
}

/// Noiseless probability of one bitstring. Simulates the whole circuit; use
/// ideal_distribution or score_samples when scoring many outputs.
inline double ideal_probability(const Circuit& circuit, Bitstring bitstring,
                                const SimLimits& limits = {}) {
  if (circuit.n_qubits < 64 && bitstring >> circuit.n_qubits)
    throw IndexError("bitstring " + std::to_string(bitstring) +
                     " out of range for " + std::to_string(circuit.n_qubits) +
                     " qubits");
  const StateVector s = run_circuit(circuit, limits);
  return std::norm(s[bitstring]);
}

}  // namespace rcs
