#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/errors.hpp"
#include "rcs/rng.hpp"

namespace rcs {

/// Random circuit of the supremacy family.
///
/// Cycle k (0-based) is a moment of single-qubit gates followed by a moment
/// of `two_qubit` gates on the couplers labelled
/// topology.pattern_for_cycle(k). One more single-qubit moment closes the
/// circuit, so there are 2 * cycles + 1 moments.
///
/// Single-qubit layer k draws qubit q's gate from stream (seed, {k, q}):
/// uniformly among {sx, sy, sw} in layer 0, afterwards uniformly among the
/// two gates that differ from the qubit's previous one.
inline Circuit generate_random_circuit(int n_qubits, const Topology& topology,
                                       int cycles, std::uint64_t seed,
                                       GateKind two_qubit = GateKind::cz()) {
  if (cycles < 0) throw ArgumentError("cycles must be non-negative");
  if (n_qubits != topology.num_qubits())
    throw ArgumentError("qubit count " + std::to_string(n_qubits) +
                        " does not match topology " + topology.describe());
  if (n_qubits < 1 || n_qubits > 62) throw SizeError("qubit count out of range");
  if (two_qubit.arity() != 2)
    throw ArgumentError("two-qubit layer needs a two-qubit gate");
  (void)gate_unitary(two_qubit);  // rejects non-finite angles

  static constexpr std::array<GateKind, 3> kSingle = {
      GateKind::sqrt_x(), GateKind::sqrt_y(), GateKind::sqrt_w()};

  Circuit c{n_qubits, topology, {}, cycles, seed};
  std::vector<int> previous(n_qubits, -1);

  auto single_layer = [&](int layer) {
    Moment m;
    m.gates.reserve(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
      auto rng = make_stream(seed, {static_cast<std::uint64_t>(layer),
                                    static_cast<std::uint64_t>(q)});
      int pick;
      if (previous[q] < 0) {
        pick = static_cast<int>(rng.below(3));
      } else {
        pick = static_cast<int>(rng.below(2));
        if (pick >= previous[q]) ++pick;
      }
      previous[q] = pick;
      m.gates.push_back(Gate::one(kSingle[pick], q));
    }
    return m;
  };

  for (int k = 0; k < cycles; ++k) {
    c.moments.push_back(single_layer(k));
    Moment two;
    for (const auto& cp : topology.couplers_with_pattern(topology.pattern_for_cycle(k)))
      two.gates.push_back(Gate::two(two_qubit, cp.a, cp.b));
    c.moments.push_back(std::move(two));
  }
  c.moments.push_back(single_layer(cycles));
  return c;
}

namespace detail {

inline std::vector<bool> membership(const Circuit& circuit,
                                    const std::set<int>& partition) {
  if (partition.empty())
    throw ArgumentError("partition must not be empty");
  if (static_cast<int>(partition.size()) >= circuit.n_qubits)
    throw ArgumentError("partition must be a proper subset of the qubits");
  std::vector<bool> in(circuit.n_qubits, false);
  for (int q : partition) {
    if (q < 0 || q >= circuit.n_qubits)
      throw ArgumentError("partition qubit " + std::to_string(q) +
                          " out of range");
    in[q] = true;
  }
  return in;
}

}  // namespace detail

/// Drops every two-qubit gate with one qubit inside `partition` and one
/// outside. Moments are kept even when they become empty.
inline Circuit make_patch(const Circuit& circuit, const std::set<int>& partition) {
  const auto in = detail::membership(circuit, partition);
  Circuit out = circuit;
  for (auto& m : out.moments)
    std::erase_if(m.gates, [&](const Gate& g) {
      return g.arity() == 2 && in[g.qubits[0]] != in[g.qubits[1]];
    });
  return out;
}

/// Number of two-qubit gates crossing the partition boundary.
inline std::size_t crossing_gate_count(const Circuit& circuit,
                                       const std::set<int>& partition) {
  const auto in = detail::membership(circuit, partition);
  std::size_t n = 0;
  for (const auto& m : circuit.moments)
    for (const auto& g : m.gates)
      n += g.arity() == 2 && in[g.qubits[0]] != in[g.qubits[1]];
  return n;
}

/// Restricts a circuit to a block of qubits that no gate connects to the
/// rest, renumbering qubits in ascending order. The block must be a
/// contiguous run of a chain or a rectangle of a grid.
inline Circuit restrict_to(const Circuit& circuit, const std::set<int>& qubits) {
  const auto in = detail::membership(circuit, qubits);
  const auto& topo = circuit.topology;
  const int cols = topo.cols();
  int r0 = circuit.n_qubits, r1 = -1, c0 = circuit.n_qubits, c1 = -1;
  for (int q : qubits) {
    r0 = std::min(r0, q / cols);
    r1 = std::max(r1, q / cols);
    c0 = std::min(c0, q % cols);
    c1 = std::max(c1, q % cols);
  }
  const int h = r1 - r0 + 1, w = c1 - c0 + 1;
  if (h * w != static_cast<int>(qubits.size()))
    throw ArgumentError("qubit block is not a contiguous rectangle");

  std::vector<int> remap(circuit.n_qubits, -1);
  int next = 0;
  for (int q : qubits) remap[q] = next++;

  Circuit out;
  out.n_qubits = next;
  out.topology = topo.kind() == Topology::Kind::Chain ? Topology::chain(w)
                                                      : Topology::grid(h, w);
  out.cycles = circuit.cycles;
  out.seed = circuit.seed;
  for (const auto& m : circuit.moments) {
    Moment sub;
    for (const auto& g : m.gates) {
      const bool first = in[g.qubits[0]];
      if (g.arity() == 2 && first != in[g.qubits[1]])
        throw ArgumentError("a two-qubit gate crosses the block boundary");
      if (!first) continue;
      Gate ng = g;
      ng.qubits[0] = remap[g.qubits[0]];
      if (g.arity() == 2) ng.qubits[1] = remap[g.qubits[1]];
      sub.gates.push_back(ng);
    }
    out.moments.push_back(std::move(sub));
  }
  return out;
}

}  // namespace rcs
