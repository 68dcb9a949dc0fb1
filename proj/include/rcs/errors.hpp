#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rcs {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Qubit count outside the supported range.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// The dense state would exceed the configured qubit limit. Carries the
/// memory the amplitude array alone would need.
class CapacityError : public SizeError {
 public:
  CapacityError(int n_qubits, int max_qubits)
      : SizeError("capacity exceeded: " + std::to_string(n_qubits) +
                  " qubits needs " + std::to_string(bytes_for(n_qubits)) +
                  " bytes of amplitudes (limit " + std::to_string(max_qubits) +
                  " qubits)"),
        n_qubits_(n_qubits),
        required_bytes_(bytes_for(n_qubits)) {}

  int n_qubits() const noexcept { return n_qubits_; }
  /// 16 bytes per amplitude; saturates at 2^64-1 past 59 qubits.
  std::uint64_t required_bytes() const noexcept { return required_bytes_; }

  static std::uint64_t bytes_for(int n_qubits) noexcept {
    if (n_qubits < 0) return 0;
    if (n_qubits >= 60) return ~std::uint64_t{0};
    return std::uint64_t{16} << n_qubits;
  }

 private:
  int n_qubits_;
  std::uint64_t required_bytes_;
};

/// Qubit index or bitstring out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input, e.g. a non-unitary gate matrix or a
/// circuit whose moments overlap.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Bad argument value (probabilities outside [0,1], empty partitions, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Requested fidelity above what the ideal distribution allows.
class UnachievableError : public ArgumentError {
 public:
  UnachievableError(double requested, double maximum)
      : ArgumentError("target fidelity " + std::to_string(requested) +
                      " is unachievable; maximum is " +
                      std::to_string(maximum)),
        maximum_(maximum) {}
  double maximum() const noexcept { return maximum_; }

 private:
  double maximum_;
};

/// Circuit text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rcs
