#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "rcs/errors.hpp"
#include "rcs/statevector.hpp"

namespace rcs {

enum class GateType { SqrtX, SqrtY, SqrtW, CZ, FSim };

struct GateKind {
  GateType type = GateType::SqrtX;
  double theta = 0.0;  // FSim only
  double phi = 0.0;    // FSim only

  static constexpr GateKind sqrt_x() { return {GateType::SqrtX}; }
  static constexpr GateKind sqrt_y() { return {GateType::SqrtY}; }
  static constexpr GateKind sqrt_w() { return {GateType::SqrtW}; }
  static constexpr GateKind cz() { return {GateType::CZ}; }
  static constexpr GateKind fsim(double theta, double phi) {
    return {GateType::FSim, theta, phi};
  }
  /// The Sycamore-like fSim(pi/2, pi/6).
  static constexpr GateKind sycamore() {
    return fsim(std::numbers::pi / 2, std::numbers::pi / 6);
  }

  int arity() const noexcept {
    return type == GateType::CZ || type == GateType::FSim ? 2 : 1;
  }

  friend bool operator==(const GateKind&, const GateKind&) = default;
};

inline std::string_view gate_name(GateType t) {
  switch (t) {
    case GateType::SqrtX: return "sx";
    case GateType::SqrtY: return "sy";
    case GateType::SqrtW: return "sw";
    case GateType::CZ: return "cz";
    case GateType::FSim: return "fsim";
  }
  return "?";
}

/// Matrices of the circuit gate set.
///
///   sqrt(X) = 1/2 [[1+i, 1-i], [1-i, 1+i]]
///   sqrt(Y) = 1/2 [[1+i, -1-i], [1+i, 1+i]]
///   sqrt(W) = [[(1+i)/2, -i/sqrt2], [1/sqrt2, (1+i)/2]],  W = (X+Y)/sqrt2
///   CZ      = diag(1, 1, 1, -1)
///   fSim(theta, phi): 1 on |00>, [[cos, -i sin], [-i sin, cos]] on
///                     {|01>, |10>}, exp(-i phi) on |11>
///
/// Each square root is the principal one, (1+i)/2 I + (1-i)/2 P for P in
/// {X, Y, W}.
inline GateMatrix gate_unitary(const GateKind& kind) {
  using namespace std::complex_literals;
  const Amplitude p = (1.0 + 1i) / 2.0;
  const Amplitude m = (1.0 - 1i) / 2.0;
  const double r = std::numbers::sqrt2 / 2;
  switch (kind.type) {
    case GateType::SqrtX:
      return GateMatrix::one_qubit({p, m, m, p});
    case GateType::SqrtY:
      return GateMatrix::one_qubit({p, -p, p, p});
    case GateType::SqrtW:
      return GateMatrix::one_qubit({p, Amplitude(0.0, -r), Amplitude(r, 0.0), p});
    case GateType::CZ: {
      GateMatrix u = GateMatrix::identity(4);
      u(3, 3) = -1.0;
      return u;
    }
    case GateType::FSim: {
      if (!std::isfinite(kind.theta) || !std::isfinite(kind.phi))
        throw ValidationError("fsim angles must be finite");
      GateMatrix u = GateMatrix::identity(4);
      const double c = std::cos(kind.theta), s = std::sin(kind.theta);
      u(1, 1) = c;
      u(1, 2) = Amplitude(0.0, -s);
      u(2, 1) = Amplitude(0.0, -s);
      u(2, 2) = c;
      u(3, 3) = std::exp(Amplitude(0.0, -kind.phi));
      return u;
    }
  }
  throw ValidationError("unknown gate type");
}

struct Gate {
  GateKind kind;
  std::array<int, 2> qubits{0, 0};  // second entry unused by 1q gates

  static Gate one(GateKind k, int q) { return {k, {q, 0}}; }
  static Gate two(GateKind k, int a, int b) { return {k, {a, b}}; }
  int arity() const noexcept { return kind.arity(); }

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Moment {
  std::vector<Gate> gates;
  friend bool operator==(const Moment&, const Moment&) = default;
};

struct Coupler {
  int a = 0;
  int b = 0;
  int pattern = 0;  // layer label, 0 = A
  friend bool operator==(const Coupler&, const Coupler&) = default;
};

/// Chain(n) or Grid(rows, cols); grid site (r, c) is qubit r * cols + c.
///
/// Pattern labels: Chain uses A for couplers (i, i+1) with i even and B for
/// i odd. Grid uses A/B for horizontal couplers starting in an even/odd
/// column and C/D for vertical couplers starting in an even/odd row.
class Topology {
 public:
  enum class Kind { Chain, Grid };

  static Topology chain(int n) {
    if (n < 1) throw SizeError("chain needs at least one qubit");
    return Topology(Kind::Chain, 1, n);
  }
  static Topology grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw SizeError("grid dimensions must be positive");
    return Topology(Kind::Grid, rows, cols);
  }

  Kind kind() const noexcept { return kind_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int num_qubits() const noexcept { return rows_ * cols_; }
  int num_patterns() const noexcept { return kind_ == Kind::Chain ? 2 : 4; }

  std::vector<Coupler> couplers() const {
    std::vector<Coupler> out;
    if (kind_ == Kind::Chain) {
      for (int i = 0; i + 1 < cols_; ++i) out.push_back({i, i + 1, i % 2});
      return out;
    }
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c + 1 < cols_; ++c)
        out.push_back({r * cols_ + c, r * cols_ + c + 1, c % 2});
    for (int r = 0; r + 1 < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        out.push_back({r * cols_ + c, (r + 1) * cols_ + c, 2 + r % 2});
    return out;
  }

  std::vector<Coupler> couplers_with_pattern(int label) const {
    std::vector<Coupler> all = couplers(), out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [label](const Coupler& c) { return c.pattern == label; });
    return out;
  }

  /// Pattern label driving the two-qubit layer of a cycle:
  /// Chain A,B,A,B,...; Grid A,B,C,D,C,D,A,B repeating.
  int pattern_for_cycle(int cycle) const noexcept {
    if (kind_ == Kind::Chain) return cycle % 2;
    static constexpr std::array<int, 8> kGridSequence = {0, 1, 2, 3, 2, 3, 0, 1};
    return kGridSequence[cycle % 8];
  }

  bool adjacent(int a, int b) const {
    if (a < 0 || b < 0 || a >= num_qubits() || b >= num_qubits()) return false;
    const int ra = a / cols_, ca = a % cols_, rb = b / cols_, cb = b % cols_;
    return std::abs(ra - rb) + std::abs(ca - cb) == 1;
  }

  std::string describe() const {
    return kind_ == Kind::Chain
               ? "chain " + std::to_string(cols_)
               : "grid " + std::to_string(rows_) + " " + std::to_string(cols_);
  }

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  Topology(Kind kind, int rows, int cols) : kind_(kind), rows_(rows), cols_(cols) {}
  Kind kind_;
  int rows_;
  int cols_;
};

struct Circuit {
  int n_qubits = 0;
  Topology topology = Topology::chain(1);
  std::vector<Moment> moments;
  int cycles = 0;
  std::uint64_t seed = 0;

  std::size_t gate_count() const noexcept {
    std::size_t n = 0;
    for (const auto& m : moments) n += m.gates.size();
    return n;
  }
  std::size_t gate_count(int arity) const noexcept {
    std::size_t n = 0;
    for (const auto& m : moments)
      for (const auto& g : m.gates) n += g.arity() == arity;
    return n;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Throws ValidationError unless every gate sits inside the register, no
/// qubit appears twice in a moment, and two-qubit gates act on couplers.
inline void validate(const Circuit& c) {
  if (c.n_qubits < 1) throw ValidationError("circuit has no qubits");
  if (c.topology.num_qubits() != c.n_qubits)
    throw ValidationError("topology has " +
                          std::to_string(c.topology.num_qubits()) +
                          " sites but circuit declares " +
                          std::to_string(c.n_qubits) + " qubits");
  std::vector<int> seen(c.n_qubits, -1);
  for (std::size_t mi = 0; mi < c.moments.size(); ++mi) {
    for (const auto& g : c.moments[mi].gates) {
      for (int k = 0; k < g.arity(); ++k) {
        const int q = g.qubits[k];
        if (q < 0 || q >= c.n_qubits)
          throw ValidationError("moment " + std::to_string(mi) + ": qubit " +
                                std::to_string(q) + " out of range");
        if (seen[q] == static_cast<int>(mi))
          throw ValidationError("moment " + std::to_string(mi) + ": qubit " +
                                std::to_string(q) + " used twice");
        seen[q] = static_cast<int>(mi);
      }
      if (g.arity() == 2 && !c.topology.adjacent(g.qubits[0], g.qubits[1]))
        throw ValidationError("moment " + std::to_string(mi) +
                              ": no coupler between qubits " +
                              std::to_string(g.qubits[0]) + " and " +
                              std::to_string(g.qubits[1]));
      if (g.kind.type == GateType::FSim &&
          (!std::isfinite(g.kind.theta) || !std::isfinite(g.kind.phi)))
        throw ValidationError("fsim angles must be finite");
    }
  }
}

}  // namespace rcs
