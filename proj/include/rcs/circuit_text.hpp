#pragma once

// Circuit text format, one item per line, LF endings:
//
//   # comment
//   qubits <n>
//   topology chain <n> | topology grid <rows> <cols>
//   moment                      starts a new moment
//   sx <q> | sy <q> | sw <q>
//   cz <q1> <q2>
//   fsim <q1> <q2> <theta> <phi>   angles in radians, 17 significant digits
//
// serialize() additionally writes `# cycles <c> seed <s>`, which parse()
// reads back into Circuit::cycles / Circuit::seed.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rcs/circuit.hpp"
#include "rcs/errors.hpp"

namespace rcs {

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  return std::string(buf, end);
}

inline std::string serialize(const Circuit& c) {
  std::string out;
  out += "# random circuit\n";
  out += "qubits " + std::to_string(c.n_qubits) + "\n";
  out += "topology " + c.topology.describe() + "\n";
  out += "# cycles " + std::to_string(c.cycles) + " seed " +
         std::to_string(c.seed) + "\n";
  for (const auto& m : c.moments) {
    out += "moment\n";
    for (const auto& g : m.gates) {
      out += gate_name(g.kind.type);
      out += ' ';
      out += std::to_string(g.qubits[0]);
      if (g.arity() == 2) {
        out += ' ';
        out += std::to_string(g.qubits[1]);
      }
      if (g.kind.type == GateType::FSim) {
        out += ' ' + format_double(g.kind.theta);
        out += ' ' + format_double(g.kind.phi);
      }
      out += '\n';
    }
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view tok) {
  T value{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if constexpr (std::is_floating_point_v<T>) {
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr != last) return std::nullopt;
  } else {
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
  }
  return value;
}

}  // namespace detail

inline Circuit parse(std::string_view text) {
  std::optional<int> n_qubits;
  std::optional<Topology> topology;
  Circuit c;
  std::vector<int> last_moment_of;  // per-qubit index of last moment used

  auto qubit_arg = [&](std::string_view tok, std::size_t line_no) {
    auto q = detail::parse_number<int>(tok);
    if (!q) throw ParseError(line_no, "bad qubit index '" + std::string(tok) + "'");
    if (*q < 0 || *q >= *n_qubits)
      throw ParseError(line_no, "qubit " + std::to_string(*q) + " out of range");
    const int mi = static_cast<int>(c.moments.size()) - 1;
    if (last_moment_of[*q] == mi)
      throw ParseError(line_no, "qubit " + std::to_string(*q) +
                                    " used twice in one moment");
    last_moment_of[*q] = mi;
    return *q;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto toks = detail::split_ws(line.substr(hash + 1));
      if (toks.size() == 4 && toks[0] == "cycles" && toks[2] == "seed") {
        auto cy = detail::parse_number<int>(toks[1]);
        auto sd = detail::parse_number<std::uint64_t>(toks[3]);
        if (cy && sd) {
          c.cycles = *cy;
          c.seed = *sd;
        }
      }
      line = line.substr(0, hash);
    }
    const auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const std::string_view head = toks[0];

    if (head == "qubits") {
      if (toks.size() != 2) throw ParseError(line_no, "expected 'qubits <n>'");
      if (n_qubits) throw ParseError(line_no, "duplicate qubits line");
      auto n = detail::parse_number<int>(toks[1]);
      if (!n || *n < 1 || *n > 62) throw ParseError(line_no, "bad qubit count");
      n_qubits = *n;
      last_moment_of.assign(*n, -1);
      if (topology && topology->num_qubits() != *n_qubits)
        throw ParseError(line_no, "topology size does not match qubit count");
      continue;
    }
    if (head == "topology") {
      if (topology) throw ParseError(line_no, "duplicate topology line");
      if (toks.size() == 3 && toks[1] == "chain") {
        auto n = detail::parse_number<int>(toks[2]);
        if (!n || *n < 1) throw ParseError(line_no, "bad chain length");
        topology = Topology::chain(*n);
      } else if (toks.size() == 4 && toks[1] == "grid") {
        auto r = detail::parse_number<int>(toks[2]);
        auto k = detail::parse_number<int>(toks[3]);
        if (!r || !k || *r < 1 || *k < 1)
          throw ParseError(line_no, "bad grid dimensions");
        topology = Topology::grid(*r, *k);
      } else {
        throw ParseError(line_no,
                         "expected 'topology chain <n>' or 'topology grid <r> <c>'");
      }
      if (n_qubits && topology->num_qubits() != *n_qubits)
        throw ParseError(line_no, "topology size does not match qubit count");
      continue;
    }
    if (head == "moment") {
      if (toks.size() != 1) throw ParseError(line_no, "unexpected tokens after 'moment'");
      if (!n_qubits || !topology)
        throw ParseError(line_no, "'qubits' and 'topology' must precede moments");
      if (topology->num_qubits() != *n_qubits)
        throw ParseError(line_no, "topology size does not match qubit count");
      c.moments.emplace_back();
      continue;
    }

    GateKind kind;
    std::size_t expected = 0;
    if (head == "sx") {
      kind = GateKind::sqrt_x(), expected = 2;
    } else if (head == "sy") {
      kind = GateKind::sqrt_y(), expected = 2;
    } else if (head == "sw") {
      kind = GateKind::sqrt_w(), expected = 2;
    } else if (head == "cz") {
      kind = GateKind::cz(), expected = 3;
    } else if (head == "fsim") {
      kind = GateKind::fsim(0, 0), expected = 5;
    } else {
      throw ParseError(line_no, "unknown gate or keyword '" + std::string(head) + "'");
    }
    if (c.moments.empty()) throw ParseError(line_no, "gate before first 'moment'");
    if (toks.size() != expected)
      throw ParseError(line_no, "'" + std::string(head) + "' expects " +
                                    std::to_string(expected - 1) + " arguments");
    Gate g{kind, {qubit_arg(toks[1], line_no), 0}};
    if (kind.arity() == 2) {
      g.qubits[1] = qubit_arg(toks[2], line_no);
      if (!topology->adjacent(g.qubits[0], g.qubits[1]))
        throw ParseError(line_no, "qubits " + std::to_string(g.qubits[0]) +
                                      " and " + std::to_string(g.qubits[1]) +
                                      " are not coupled");
    }
    if (kind.type == GateType::FSim) {
      auto theta = detail::parse_number<double>(toks[3]);
      auto phi = detail::parse_number<double>(toks[4]);
      if (!theta || !phi || !std::isfinite(*theta) || !std::isfinite(*phi))
        throw ParseError(line_no, "bad fsim angle");
      g.kind.theta = *theta;
      g.kind.phi = *phi;
    }
    c.moments.back().gates.push_back(g);
  }

  if (!n_qubits) throw ParseError(line_no, "missing 'qubits' line");
  if (!topology) throw ParseError(line_no, "missing 'topology' line");
  if (topology->num_qubits() != *n_qubits)
    throw ParseError(line_no, "topology size does not match qubit count");
  c.n_qubits = *n_qubits;
  c.topology = *topology;
  return c;
}

/// FNV-1a 64 of the canonical text, as 16 hex digits.
inline std::string circuit_hash(const Circuit& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rcs
