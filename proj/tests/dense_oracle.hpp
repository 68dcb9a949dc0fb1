#pragma once

// Test-only reference: full 2^n x 2^n unitaries built entry by entry from
// the gate matrices, independent of the strided kernels under test.

#include <complex>
#include <cstdint>
#include <vector>

#include "rcs/circuit.hpp"

namespace rcs::testing {

using cplx = std::complex<double>;

struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<cplx> a;  // row-major

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m{dim, std::vector<cplx>(dim * dim)};
    for (std::size_t i = 0; i < dim; ++i) m.a[i * dim + i] = 1.0;
    return m;
  }
  cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  cplx at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

  DenseMatrix operator*(const DenseMatrix& rhs) const {
    DenseMatrix out{dim, std::vector<cplx>(dim * dim)};
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t k = 0; k < dim; ++k) {
        const cplx v = at(r, k);
        if (v == cplx(0.0)) continue;
        for (std::size_t c = 0; c < dim; ++c) out.a[r * dim + c] += v * rhs.at(k, c);
      }
    return out;
  }

  std::vector<cplx> apply(const std::vector<cplx>& v) const {
    std::vector<cplx> out(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) out[r] += at(r, c) * v[c];
    return out;
  }
};

inline int bit(std::uint64_t x, int q) { return static_cast<int>((x >> q) & 1); }

/// Embeds a gate on `qubits` into n qubits: entry (r, c) is the gate entry
/// for the local bits of r and c when all other bits agree, else 0.
inline DenseMatrix expand(const GateMatrix& u, std::vector<int> qubits, int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::uint64_t mask = 0;
  for (int q : qubits) mask |= std::uint64_t{1} << q;
  DenseMatrix m{dim, std::vector<cplx>(dim * dim)};
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      int lr = 0, lc = 0;
      for (std::size_t k = 0; k < qubits.size(); ++k) {
        lr |= bit(r, qubits[k]) << k;
        lc |= bit(c, qubits[k]) << k;
      }
      m.at(r, c) = u(lr, lc);
    }
  return m;
}

inline DenseMatrix circuit_unitary(const Circuit& c) {
  DenseMatrix u = DenseMatrix::identity(std::size_t{1} << c.n_qubits);
  for (const auto& m : c.moments)
    for (const auto& g : m.gates) {
      std::vector<int> qs{g.qubits[0]};
      if (g.arity() == 2) qs.push_back(g.qubits[1]);
      u = expand(gate_unitary(g.kind), qs, c.n_qubits) * u;
    }
  return u;
}

inline std::vector<cplx> oracle_state(const Circuit& c) {
  std::vector<cplx> zero(std::size_t{1} << c.n_qubits);
  zero[0] = 1.0;
  return circuit_unitary(c).apply(zero);
}

}  // namespace rcs::testing
