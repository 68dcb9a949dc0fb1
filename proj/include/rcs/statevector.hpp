#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rcs/errors.hpp"

namespace rcs {

using Amplitude = std::complex<double>;

/// Bitstring of measurement outcomes. Qubit q is bit q (qubit 0 is the
/// least-significant bit).
using Bitstring = std::uint64_t;

inline constexpr int kDefaultMaxQubits = 26;

struct SimLimits {
  int max_qubits = kDefaultMaxQubits;
};

inline constexpr std::int64_t kParallelMinDim = std::int64_t{1} << 14;

/// Dense 2x2 or 4x4 complex matrix, row-major.
///
/// For 4x4 matrices the local basis index is b_first + 2 * b_second, where
/// b_first is the bit of the first qubit operand passed to apply_2q.
class GateMatrix {
 public:
  static GateMatrix one_qubit(const std::array<Amplitude, 4>& entries) {
    GateMatrix m(2);
    std::copy(entries.begin(), entries.end(), m.entries_.begin());
    return m;
  }
  static GateMatrix two_qubit(const std::array<Amplitude, 16>& entries) {
    GateMatrix m(4);
    m.entries_ = entries;
    return m;
  }
  static GateMatrix identity(int dim) {
    GateMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const noexcept { return dim_; }
  Amplitude& operator()(int r, int c) { return entries_[r * dim_ + c]; }
  const Amplitude& operator()(int r, int c) const {
    return entries_[r * dim_ + c];
  }

  GateMatrix operator*(const GateMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw ValidationError("gate dimension mismatch");
    GateMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) {
        Amplitude acc = 0.0;
        for (int k = 0; k < dim_; ++k) acc += (*this)(r, k) * rhs(k, c);
        out(r, c) = acc;
      }
    return out;
  }

  /// max_{jk} |(U^dagger U - I)_{jk}|
  double unitarity_error() const {
    double worst = 0.0;
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        Amplitude acc = 0.0;
        for (int r = 0; r < dim_; ++r)
          acc += std::conj((*this)(r, j)) * (*this)(r, k);
        if (j == k) acc -= 1.0;
        worst = std::max(worst, std::abs(acc));
      }
    return worst;
  }

  bool is_unitary(double tol = 1e-12) const { return unitarity_error() <= tol; }

  /// max |a_jk - b_jk|
  double max_deviation(const GateMatrix& other) const {
    if (other.dim_ != dim_) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i)
      worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    return worst;
  }

 private:
  explicit GateMatrix(int dim) : dim_(dim) { entries_.fill(0.0); }
  int dim_;
  std::array<Amplitude, 16> entries_{};
};

/// Pure state of n qubits as 2^n dense amplitudes; index i is the bitstring
/// with qubit 0 in the least-significant bit.
class StateVector {
 public:
  /// |0...0>. Throws SizeError for n < 1 and CapacityError above the limit.
  static StateVector zero(int n_qubits, const SimLimits& limits = {}) {
    if (n_qubits < 1) throw SizeError("qubit count must be at least 1");
    if (n_qubits > limits.max_qubits || n_qubits > 62)
      throw CapacityError(n_qubits, limits.max_qubits);
    StateVector s;
    s.n_qubits_ = n_qubits;
    s.amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    s.amps_[0] = 1.0;
    return s;
  }

  int num_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
  }

  bool all_finite() const noexcept {
    for (const auto& a : amps_)
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
  }

  /// |<this|other>|^2
  double overlap(const StateVector& other) const {
    if (other.n_qubits_ != n_qubits_)
      throw SizeError("overlap of states with different qubit counts");
    Amplitude acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      acc += std::conj(amps_[i]) * other.amps_[i];
    return std::norm(acc);
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  StateVector() = default;
  int n_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

namespace detail {

inline std::uint64_t insert_zero_bit(std::uint64_t k, int bit) noexcept {
  const std::uint64_t low = k & ((std::uint64_t{1} << bit) - 1);
  return ((k >> bit) << (bit + 1)) | low;
}

// Plain complex multiply; std::complex operator* takes the slow C99 Annex G
// path under default GCC flags.
inline Amplitude mul(const Amplitude& x, const Amplitude& y) noexcept {
  return {x.real() * y.real() - x.imag() * y.imag(),
          x.real() * y.imag() + x.imag() * y.real()};
}

inline void check_qubit(const StateVector& s, int q) {
  if (q < 0 || q >= s.num_qubits())
    throw IndexError("qubit " + std::to_string(q) + " out of range for " +
                     std::to_string(s.num_qubits()) + " qubits");
}

}  // namespace detail

inline void apply_1q(StateVector& state, const GateMatrix& u, int q) {
  detail::check_qubit(state, q);
  if (u.dim() != 2) throw ValidationError("apply_1q needs a 2x2 matrix");
  if (!u.is_unitary()) throw ValidationError("gate matrix is not unitary");

  const Amplitude u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  const std::uint64_t mask = std::uint64_t{1} << q;
  const auto pairs = static_cast<std::int64_t>(state.size() / 2);
  Amplitude* a = state.amplitudes().data();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (pairs >= kParallelMinDim)
#endif
  for (std::int64_t k = 0; k < pairs; ++k) {
    const std::uint64_t i0 = detail::insert_zero_bit(k, q);
    const std::uint64_t i1 = i0 | mask;
    const Amplitude v0 = a[i0], v1 = a[i1];
    a[i0] = detail::mul(u00, v0) + detail::mul(u01, v1);
    a[i1] = detail::mul(u10, v0) + detail::mul(u11, v1);
  }
}

inline void apply_2q(StateVector& state, const GateMatrix& u, int q_first,
                     int q_second) {
  detail::check_qubit(state, q_first);
  detail::check_qubit(state, q_second);
  if (q_first == q_second)
    throw IndexError("two-qubit gate on repeated qubit " +
                     std::to_string(q_first));
  if (u.dim() != 4) throw ValidationError("apply_2q needs a 4x4 matrix");
  if (!u.is_unitary()) throw ValidationError("gate matrix is not unitary");

  std::array<Amplitude, 16> m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r * 4 + c] = u(r, c);

  const int lo = std::min(q_first, q_second);
  const int hi = std::max(q_first, q_second);
  const std::uint64_t m_first = std::uint64_t{1} << q_first;
  const std::uint64_t m_second = std::uint64_t{1} << q_second;
  const auto groups = static_cast<std::int64_t>(state.size() / 4);
  Amplitude* a = state.amplitudes().data();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (groups >= kParallelMinDim)
#endif
  for (std::int64_t k = 0; k < groups; ++k) {
    const std::uint64_t base =
        detail::insert_zero_bit(detail::insert_zero_bit(k, lo), hi);
    const std::array<std::uint64_t, 4> idx = {
        base, base | m_first, base | m_second, base | m_first | m_second};
    const std::array<Amplitude, 4> v = {a[idx[0]], a[idx[1]], a[idx[2]],
                                        a[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      const Amplitude* row = &m[r * 4];
      a[idx[r]] = detail::mul(row[0], v[0]) + detail::mul(row[1], v[1]) +
                  detail::mul(row[2], v[2]) + detail::mul(row[3], v[3]);
    }
  }
}

/// Outcome probabilities |a_i|^2 over all 2^n bitstrings.
struct ProbabilityTable {
  int n_qubits = 0;
  std::vector<double> p;

  std::size_t size() const noexcept { return p.size(); }
  double operator[](std::size_t i) const { return p[i]; }
  double sum() const noexcept { return std::accumulate(p.begin(), p.end(), 0.0); }

  /// Throws ArgumentError unless the table has 2^n entries summing to 1.
  void check_normalized(double tol = 1e-9) const {
    if (n_qubits < 1 || n_qubits > 62 || p.size() != (std::size_t{1} << n_qubits))
      throw ArgumentError("probability table size does not match qubit count");
    const double s = sum();
    if (!(std::abs(s - 1.0) <= tol))
      throw ArgumentError("probability table sums to " + std::to_string(s));
  }

  friend bool operator==(const ProbabilityTable&,
                         const ProbabilityTable&) = default;
};

inline ProbabilityTable probabilities(const StateVector& state) {
  ProbabilityTable t;
  t.n_qubits = state.num_qubits();
  t.p.resize(state.size());
  const auto amps = state.amplitudes();
  const auto n = static_cast<std::int64_t>(amps.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (n >= kParallelMinDim)
#endif
  for (std::int64_t i = 0; i < n; ++i) t.p[i] = std::norm(amps[i]);
  return t;
}

}  // namespace rcs
