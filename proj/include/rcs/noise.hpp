#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/errors.hpp"
#include "rcs/rng.hpp"
#include "rcs/simulate.hpp"
#include "rcs/statevector.hpp"
#include "rcs/xeb.hpp"

namespace rcs {

/// Digital error model: a Pauli error after each gate with probability
/// e1 (single-qubit) or e2 (two-qubit), and independent readout flips with
/// probability em per bit.
struct NoiseModel {
  double e1 = 0.0;
  double e2 = 0.0;
  double em = 0.0;

  void check() const {
    auto ok = [](double e) { return e >= 0.0 && e <= 1.0; };
    if (!ok(e1) || !ok(e2) || !ok(em))
      throw ArgumentError("noise rates must lie in [0, 1]");
  }
  bool noiseless() const noexcept { return e1 == 0.0 && e2 == 0.0 && em == 0.0; }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// f * ideal + (1 - f) * uniform.
inline ProbabilityTable white_noise_mix(const ProbabilityTable& ideal, double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw ArgumentError("mixture weight must lie in [0, 1]");
  ideal.check_normalized();
  ProbabilityTable out{ideal.n_qubits, std::vector<double>(ideal.size())};
  const double floor = std::ldexp(1.0 - f, -ideal.n_qubits);
  for (std::size_t i = 0; i < ideal.size(); ++i) out.p[i] = f * ideal.p[i] + floor;
  return out;
}

/// Product of (1 - e) over every gate and every measured qubit. Valid as a
/// fidelity estimate for chaotic circuits where each error decorrelates the
/// output.
inline double predict_fidelity(const Circuit& circuit, const NoiseModel& noise) {
  noise.check();
  return std::pow(1.0 - noise.e1, static_cast<double>(circuit.gate_count(1))) *
         std::pow(1.0 - noise.e2, static_cast<double>(circuit.gate_count(2))) *
         std::pow(1.0 - noise.em, static_cast<double>(circuit.n_qubits));
}

namespace detail {

inline const GateMatrix& pauli(int k) {
  using namespace std::complex_literals;
  static const std::array<GateMatrix, 4> kPaulis = {
      GateMatrix::identity(2),
      GateMatrix::one_qubit({0.0, 1.0, 1.0, 0.0}),
      GateMatrix::one_qubit({0.0, -1i, 1i, 0.0}),
      GateMatrix::one_qubit({1.0, 0.0, 0.0, -1.0}),
  };
  return kPaulis[k];
}

// Substream purposes within one trajectory.
inline constexpr std::uint64_t kNoiseStream = 0;
inline constexpr std::uint64_t kSampleStream = 1;
inline constexpr std::uint64_t kReadoutStream = 2;

inline std::size_t trajectory_count(std::size_t n_samples, std::size_t per_trajectory) {
  if (per_trajectory < 1) throw ArgumentError("samples per trajectory must be >= 1");
  return (n_samples + per_trajectory - 1) / per_trajectory;
}

}  // namespace detail

inline constexpr std::size_t kDefaultSamplesPerTrajectory = 100;

/// Stochastic Pauli unraveling of `noise`.
///
/// Trajectory t uses streams (seed, {t, 0}) for error locations,
/// (seed, {t, 1}) for drawing bitstrings and (seed, {t, 2}) for readout
/// flips. After every gate one uniform draw decides whether an error fires;
/// if so a uniformly random non-identity Pauli (3 choices for one qubit, 15
/// for two) is applied. Each trajectory contributes `per_trajectory`
/// bitstrings (the last one fewer if needed), tagged with group id t.
inline SampleSet pauli_trajectory_sample(
    const Circuit& circuit, const NoiseModel& noise, std::size_t n_samples,
    std::uint64_t seed,
    std::size_t per_trajectory = kDefaultSamplesPerTrajectory,
    const SimLimits& limits = {}) {
  noise.check();
  validate(circuit);
  if (circuit.n_qubits > limits.max_qubits)
    throw CapacityError(circuit.n_qubits, limits.max_qubits);
  const std::size_t trajectories = detail::trajectory_count(n_samples, per_trajectory);

  std::vector<std::vector<GateMatrix>> unitaries;
  for (const auto& m : circuit.moments) {
    unitaries.emplace_back();
    for (const auto& g : m.gates) unitaries.back().push_back(gate_unitary(g.kind));
  }

  SampleSet out{circuit.n_qubits, std::vector<Bitstring>(n_samples),
                std::vector<std::uint64_t>(n_samples), seed};
  const auto t_count = static_cast<std::int64_t>(trajectories);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t t = 0; t < t_count; ++t) {
    const auto tu = static_cast<std::uint64_t>(t);
    auto noise_rng = make_stream(seed, {tu, detail::kNoiseStream});
    StateVector state = StateVector::zero(circuit.n_qubits, limits);
    for (std::size_t mi = 0; mi < circuit.moments.size(); ++mi) {
      const auto& gates = circuit.moments[mi].gates;
      for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        const Gate& g = gates[gi];
        const GateMatrix& u = unitaries[mi][gi];
        if (g.arity() == 1) {
          apply_1q(state, u, g.qubits[0]);
          if (noise_rng.uniform01() < noise.e1)
            apply_1q(state, detail::pauli(1 + static_cast<int>(noise_rng.below(3))),
                     g.qubits[0]);
        } else {
          apply_2q(state, u, g.qubits[0], g.qubits[1]);
          if (noise_rng.uniform01() < noise.e2) {
            const int k = 1 + static_cast<int>(noise_rng.below(15));
            if (k % 4) apply_1q(state, detail::pauli(k % 4), g.qubits[0]);
            if (k / 4) apply_1q(state, detail::pauli(k / 4), g.qubits[1]);
          }
        }
      }
    }

    const ProbabilityTable table = probabilities(state);
    const DiscreteSampler sampler(table.p);
    auto sample_rng = make_stream(seed, {tu, detail::kSampleStream});
    auto readout_rng = make_stream(seed, {tu, detail::kReadoutStream});
    const std::size_t lo = tu * per_trajectory;
    const std::size_t hi = std::min(n_samples, lo + per_trajectory);
    for (std::size_t i = lo; i < hi; ++i) {
      Bitstring x = sampler(sample_rng);
      if (noise.em > 0.0)
        for (int b = 0; b < circuit.n_qubits; ++b)
          if (readout_rng.uniform01() < noise.em) x ^= Bitstring{1} << b;
      out.bitstrings[i] = x;
      out.groups[i] = tu;
    }
  }
  return out;
}

/// Noiseless counterpart with the same group structure and sampling
/// streams; with an all-zero NoiseModel, pauli_trajectory_sample returns
/// exactly these bitstrings.
inline SampleSet sample_noiseless(const Circuit& circuit, std::size_t n_samples,
                                  std::uint64_t seed,
                                  std::size_t per_trajectory = kDefaultSamplesPerTrajectory,
                                  const SimLimits& limits = {}) {
  const std::size_t trajectories = detail::trajectory_count(n_samples, per_trajectory);
  const ProbabilityTable table = ideal_distribution(circuit, limits);
  const DiscreteSampler sampler(table.p);
  SampleSet out{circuit.n_qubits, std::vector<Bitstring>(n_samples),
                std::vector<std::uint64_t>(n_samples), seed};
  for (std::size_t t = 0; t < trajectories; ++t) {
    auto rng = make_stream(seed, {t, detail::kSampleStream});
    const std::size_t lo = t * per_trajectory;
    const std::size_t hi = std::min(n_samples, lo + per_trajectory);
    for (std::size_t i = lo; i < hi; ++i) {
      out.bitstrings[i] = sampler(rng);
      out.groups[i] = t;
    }
  }
  return out;
}

}  // namespace rcs
