#pragma once

// Classical samplers that pass linear XEB, and a probe of what verifying
// them costs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/errors.hpp"
#include "rcs/generate.hpp"
#include "rcs/noise.hpp"
#include "rcs/rng.hpp"
#include "rcs/xeb.hpp"

namespace rcs {

/// Uniform n-bit strings; draw i uses stream (seed, {i / kSampleBlock}).
inline SampleSet coin_toss_sampler(int n_qubits, std::size_t count, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > 63) throw SizeError("qubit count out of range");
  if (count < 1) throw ArgumentError("count must be at least 1");
  SampleSet out{n_qubits, std::vector<Bitstring>(count), {}, seed};
  const auto blocks = static_cast<std::int64_t>((count + kSampleBlock - 1) / kSampleBlock);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (blocks > 1)
#endif
  for (std::int64_t b = 0; b < blocks; ++b) {
    auto rng = make_stream(seed, {static_cast<std::uint64_t>(b)});
    const std::size_t lo = static_cast<std::size_t>(b) * kSampleBlock;
    const std::size_t hi = std::min(count, lo + kSampleBlock);
    for (std::size_t i = lo; i < hi; ++i) out.bitstrings[i] = rng.bits(n_qubits);
  }
  return out;
}

/// White-noise weight whose expected XEB equals target_f:
/// target_f / (2^n sum p^2 - 1).
inline double spoof_mix_weight(const ProbabilityTable& ideal, double target_f) {
  if (!(target_f >= 0.0)) throw ArgumentError("target fidelity must be non-negative");
  const double max_f = ideal_xeb(ideal);
  if (target_f > max_f) throw UnachievableError(target_f, max_f);
  if (target_f == 0.0) return 0.0;
  return std::clamp(target_f / max_f, 0.0, 1.0);
}

/// Samples from white_noise_mix(ideal, w) with w = spoof_mix_weight. The
/// ideal table comes from the same simulation path score_samples uses.
inline SampleSet targeted_spoofer(const Circuit& circuit, double target_f,
                                  std::size_t count, std::uint64_t seed,
                                  const SimLimits& limits = {}) {
  if (circuit.n_qubits > limits.max_qubits)
    throw CapacityError(circuit.n_qubits, limits.max_qubits);
  const ProbabilityTable ideal = ideal_distribution(circuit, limits);
  const double w = spoof_mix_weight(ideal, target_f);
  return sample_from_distribution(white_noise_mix(ideal, w), count, seed);
}

struct CostRow {
  int n = 0;
  double median_seconds = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t bytes = 0;
  std::optional<double> ratio_vs_prev;  // time(n) / time(previous row)
  std::string error;                    // capacity error, if any
};

/// Least-squares fit log2(seconds) = intercept + slope * n.
struct CostFit {
  double intercept = 0.0;
  double slope = 0.0;  // log2 of time growth per added qubit
  double growth_per_qubit() const { return std::exp2(slope); }
  double extrapolate_seconds(int n) const { return std::exp2(intercept + slope * n); }
};

struct CostReport {
  std::vector<CostRow> rows;
  std::optional<CostFit> fit;
};

inline constexpr double kSecondsPerYear = 365.25 * 24 * 3600;

/// Memory of one scoring pass: amplitudes (16 bytes) plus the probability
/// table (8 bytes) per basis state.
inline std::uint64_t scoring_bytes(int n) {
  return n >= 59 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{24} << n;
}

inline std::optional<CostFit> fit_cost(const std::vector<CostRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.error.empty() && r.median_seconds > 0.0)
      pts.emplace_back(r.n, std::log2(r.median_seconds));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0, sxy = 0;
  for (auto [x, y] : pts) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
  if (sxx == 0.0) return std::nullopt;
  CostFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

/// Times score_samples (simulation plus lookup of `samples_per_probe`
/// uniform bitstrings) on a Chain(n) random circuit for each n, reporting the
/// median over `repetitions`. n above the limit yields an error row.
inline CostReport verification_cost_probe(const std::vector<int>& n_list, int cycles,
                                          int repetitions, const SimLimits& limits = {},
                                          std::size_t samples_per_probe = 1000) {
  if (repetitions < 1) throw ArgumentError("repetitions must be at least 1");
  CostReport report;
  std::optional<double> prev;
  for (int n : n_list) {
    CostRow row;
    row.n = n;
    row.bytes = scoring_bytes(n);
    if (n < 1 || n > limits.max_qubits) {
      row.error = CapacityError(n, limits.max_qubits).what();
      report.rows.push_back(row);
      prev.reset();
      continue;
    }
    const Circuit c = generate_random_circuit(n, Topology::chain(n), cycles,
                                              static_cast<std::uint64_t>(n));
    const SampleSet s = coin_toss_sampler(n, samples_per_probe, 1);
    std::vector<double> times;
    for (int r = 0; r < repetitions; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const ScoredSamples scored = score_samples(c, s, limits);
      const auto t1 = std::chrono::steady_clock::now();
      if (scored.ideal_p.size() != s.size()) throw Error("scoring lost samples");
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t m = times.size();
    row.median_seconds = m % 2 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
    if (prev) row.ratio_vs_prev = row.median_seconds / *prev;
    prev = row.median_seconds;
    report.rows.push_back(row);
  }
  report.fit = fit_cost(report.rows);
  return report;
}

}  // namespace rcs
