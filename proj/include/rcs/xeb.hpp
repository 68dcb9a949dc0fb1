#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/errors.hpp"
#include "rcs/rng.hpp"
#include "rcs/simulate.hpp"
#include "rcs/statevector.hpp"

namespace rcs {

/// Observed n-bit outputs. `groups`, when non-empty, tags each bitstring
/// with the independence unit it came from (e.g. a noise trajectory).
struct SampleSet {
  int n_qubits = 0;
  std::vector<Bitstring> bitstrings;
  std::vector<std::uint64_t> groups;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return bitstrings.size(); }
  bool grouped() const noexcept { return !groups.empty(); }

  void check() const {
    if (n_qubits < 1 || n_qubits > 63) throw SizeError("sample width out of range");
    for (std::size_t i = 0; i < bitstrings.size(); ++i)
      if (bitstrings[i] >> n_qubits)
        throw IndexError("sample " + std::to_string(i) + " out of range");
    if (grouped() && groups.size() != bitstrings.size())
      throw ArgumentError("group ids do not align with bitstrings");
  }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

struct ScoredSamples {
  SampleSet samples;
  std::vector<double> ideal_p;  // aligned with samples.bitstrings
};

struct XebEstimate {
  int n_qubits = 0;
  double f = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::size_t effective_samples = 0;  // independence groups
  double mean_p = 0.0;
};

/// Draws from a fixed discrete distribution by inverting its cumulative
/// table. The cumulative sums are accumulated in index order, so the table
/// (and every draw) is the same on any platform.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights) {
    if (weights.empty()) throw ArgumentError("empty distribution");
    cdf_.resize(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!(weights[i] >= 0.0)) throw ArgumentError("negative or NaN weight");
      acc += weights[i];
      cdf_[i] = acc;
      if (weights[i] > 0.0) last_positive_ = i;
    }
    if (!(acc > 0.0)) throw ArgumentError("distribution has zero mass");
  }

  std::uint64_t operator()(Xoshiro256& rng) const {
    const double u = rng.uniform01() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto i = static_cast<std::size_t>(it - cdf_.begin());
    return std::min(i, last_positive_);
  }

 private:
  std::vector<double> cdf_;
  std::size_t last_positive_ = 0;
};

inline constexpr std::size_t kSampleBlock = std::size_t{1} << 16;

/// i.i.d. draws; draw i uses stream (seed, {i / kSampleBlock}).
inline SampleSet sample_from_distribution(const ProbabilityTable& dist,
                                          std::size_t count, std::uint64_t seed) {
  dist.check_normalized();
  const DiscreteSampler sampler(dist.p);
  SampleSet out{dist.n_qubits, std::vector<Bitstring>(count), {}, seed};
  const auto blocks = static_cast<std::int64_t>((count + kSampleBlock - 1) / kSampleBlock);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (blocks > 1)
#endif
  for (std::int64_t b = 0; b < blocks; ++b) {
    auto rng = make_stream(seed, {static_cast<std::uint64_t>(b)});
    const std::size_t lo = static_cast<std::size_t>(b) * kSampleBlock;
    const std::size_t hi = std::min(count, lo + kSampleBlock);
    for (std::size_t i = lo; i < hi; ++i) out.bitstrings[i] = sampler(rng);
  }
  return out;
}

/// Attaches the noiseless probability of each observed bitstring.
inline ScoredSamples score_samples(const ProbabilityTable& ideal,
                                   const SampleSet& samples) {
  if (samples.n_qubits != ideal.n_qubits)
    throw ArgumentError("samples have " + std::to_string(samples.n_qubits) +
                        " bits but the circuit has " +
                        std::to_string(ideal.n_qubits) + " qubits");
  samples.check();
  ScoredSamples out{samples, std::vector<double>(samples.size())};
  for (std::size_t i = 0; i < samples.size(); ++i)
    out.ideal_p[i] = ideal.p[samples.bitstrings[i]];
  return out;
}

/// One simulation of the circuit, reused for every sample. Circuits above
/// the qubit limit raise CapacityError with the memory estimate.
inline ScoredSamples score_samples(const Circuit& circuit, const SampleSet& samples,
                                   const SimLimits& limits = {}) {
  if (samples.n_qubits != circuit.n_qubits)
    throw ArgumentError("samples have " + std::to_string(samples.n_qubits) +
                        " bits but the circuit has " +
                        std::to_string(circuit.n_qubits) + " qubits");
  if (circuit.n_qubits > limits.max_qubits)
    throw CapacityError(circuit.n_qubits, limits.max_qubits);
  samples.check();
  return score_samples(ideal_distribution(circuit, limits), samples);
}

/// Linear cross-entropy fidelity f = 2^n <p> - 1.
///
/// stderr is the sample standard deviation of 2^n p_i - 1 over all samples
/// divided by sqrt(G), where G is the number of distinct group ids (or the
/// sample count for ungrouped sets).
inline XebEstimate linear_xeb(const ScoredSamples& scored) {
  const std::size_t n = scored.ideal_p.size();
  if (n < 2) throw ArgumentError("linear XEB needs at least 2 samples");
  if (scored.samples.size() != n)
    throw ArgumentError("scores do not align with samples");
  const int nq = scored.samples.n_qubits;

  double sum = 0.0;
  for (double p : scored.ideal_p) sum += p;
  const double mean_p = sum / static_cast<double>(n);

  const double mean_x = std::ldexp(mean_p, nq) - 1.0;
  double ss = 0.0;
  for (double p : scored.ideal_p) {
    const double d = (std::ldexp(p, nq) - 1.0) - mean_x;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  std::size_t effective = n;
  if (scored.samples.grouped()) {
    effective = std::set<std::uint64_t>(scored.samples.groups.begin(),
                                        scored.samples.groups.end())
                    .size();
  }

  XebEstimate e;
  e.n_qubits = nq;
  e.mean_p = mean_p;
  e.f = std::ldexp(mean_p, nq) - 1.0;
  e.std_error = sd / std::sqrt(static_cast<double>(effective));
  e.n_samples = n;
  e.effective_samples = effective;
  return e;
}

struct XebEndpoints {
  double p_best;   // 2 / 2^n, Porter-Thomas sampling
  double p_worst;  // 1 / 2^n, uniform output
};

inline XebEndpoints xeb_endpoints(int n_qubits) {
  if (n_qubits < 1) throw SizeError("qubit count must be at least 1");
  return {std::ldexp(2.0, -n_qubits), std::ldexp(1.0, -n_qubits)};
}

/// Expected linear XEB of exact sampling: 2^n sum p^2 - 1.
inline double ideal_xeb(const ProbabilityTable& dist) {
  double s = 0.0;
  for (double p : dist.p) s += p * p;
  return std::ldexp(s, dist.n_qubits) - 1.0;
}

struct PTStats {
  double ks_distance = 0.0;
  double bin_width = 0.25;
  std::vector<std::uint64_t> histogram;  // last bin collects overflow
  std::size_t n_points = 0;
};

/// Kolmogorov-Smirnov distance between the empirical CDF of `x` and the
/// unit exponential 1 - exp(-x).
inline double ks_exponential(std::vector<double> x) {
  if (x.empty()) throw ArgumentError("no points");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = x[i] > 0.0 ? -std::expm1(-x[i]) : 0.0;
    // Ties: the empirical CDF steps only after the last equal value.
    const double below = static_cast<double>(i) / n;
    std::size_t j = i;
    while (j + 1 < x.size() && x[j + 1] == x[i]) ++j;
    const double at = static_cast<double>(j + 1) / n;
    d = std::max({d, cdf - below, at - cdf});
    i = j;
  }
  return d;
}

inline PTStats pt_stats_of(const std::vector<double>& x, double bin_width = 0.25,
                           std::size_t bins = 40) {
  if (!(bin_width > 0.0) || bins < 1) throw ArgumentError("bad histogram shape");
  PTStats s;
  s.bin_width = bin_width;
  s.histogram.assign(bins + 1, 0);
  s.n_points = x.size();
  for (double v : x) {
    const double b = std::floor(v / bin_width);
    const auto idx = b < static_cast<double>(bins) ? static_cast<std::size_t>(std::max(b, 0.0))
                                                   : bins;
    ++s.histogram[idx];
  }
  s.ks_distance = ks_exponential(x);
  return s;
}

/// Porter-Thomas check over the whole enumerated distribution: x_i = 2^n p_i
/// against the exponential law.
inline PTStats pt_test(const ProbabilityTable& dist, double bin_width = 0.25,
                       std::size_t bins = 40) {
  dist.check_normalized();
  std::vector<double> x(dist.p.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::ldexp(dist.p[i], dist.n_qubits);
  return pt_stats_of(x, bin_width, bins);
}

/// Sampled variant: x = 2^n p over outcomes drawn uniformly at random
/// (e.g. coin-toss samples scored against a circuit).
inline PTStats pt_test_sampled(const ScoredSamples& uniform_scored,
                               double bin_width = 0.25, std::size_t bins = 40) {
  std::vector<double> x(uniform_scored.ideal_p.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::ldexp(uniform_scored.ideal_p[i], uniform_scored.samples.n_qubits);
  return pt_stats_of(x, bin_width, bins);
}

}  // namespace rcs
