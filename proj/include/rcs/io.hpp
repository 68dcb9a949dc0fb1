#pragma once

// File formats.
//
//   samples CSV   bitstring_hex,group
//   scored CSV    bitstring_hex,ideal_p
//   cost CSV      n,median_seconds,bytes,ratio_vs_prev
//   estimate JSON n_qubits, n_samples, mean_p, f, stderr (+ provenance)
//
// Hex bitstrings are lowercase, zero-padded to ceil(n/4) digits, qubit 0 in
// the least-significant bit. Reals use 17 significant digits. Ungrouped
// sample sets write each sample's index as its group, which gives the same
// independence count as no grouping at all.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcs/circuit_text.hpp"
#include "rcs/errors.hpp"
#include "rcs/spoof.hpp"
#include "rcs/xeb.hpp"

namespace rcs {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline std::string to_hex(Bitstring x, int n_qubits) {
  const int width = (n_qubits + 3) / 4;
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i, x >>= 4) s[i] = "0123456789abcdef"[x & 0xf];
  return s;
}

inline std::string samples_csv(const SampleSet& s) {
  std::string out = "bitstring_hex,group\n";
  out.reserve(out.size() + s.size() * 16);
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += to_hex(s.bitstrings[i], s.n_qubits);
    out += ',';
    out += std::to_string(s.grouped() ? s.groups[i] : i);
    out += '\n';
  }
  return out;
}

inline std::string scored_csv(const ScoredSamples& s) {
  std::string out = "bitstring_hex,ideal_p\n";
  for (std::size_t i = 0; i < s.ideal_p.size(); ++i) {
    out += to_hex(s.samples.bitstrings[i], s.samples.n_qubits);
    out += ',';
    out += format_double(s.ideal_p[i]);
    out += '\n';
  }
  return out;
}

/// Reads a samples CSV (or any CSV whose first column is bitstring_hex; a
/// `group` column is used when present). Row numbers in errors count the
/// header as row 1.
inline SampleSet parse_samples_csv(std::string_view text, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 63) throw SizeError("qubit count out of range");
  SampleSet s;
  s.n_qubits = n_qubits;
  std::size_t pos = 0, row = 0;
  int group_col = -1;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++row;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string_view> cols;
    for (std::size_t a = 0;;) {
      const std::size_t b = line.find(',', a);
      cols.push_back(line.substr(a, b == std::string_view::npos ? b : b - a));
      if (b == std::string_view::npos) break;
      a = b + 1;
    }
    if (!header_seen) {
      header_seen = true;
      if (cols[0] != "bitstring_hex")
        throw ParseError(row, "expected header starting with 'bitstring_hex'");
      for (std::size_t c = 1; c < cols.size(); ++c)
        if (cols[c] == "group") group_col = static_cast<int>(c);
      continue;
    }
    std::string_view hex = cols[0];
    if (hex.starts_with("0x")) hex.remove_prefix(2);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
    if (hex.empty() || ec != std::errc() || ptr != hex.data() + hex.size())
      throw ParseError(row, "bad hex bitstring '" + std::string(cols[0]) + "'");
    if (value >> n_qubits)
      throw IndexError("row " + std::to_string(row) + ": bitstring " +
                       std::string(cols[0]) + " out of range for " +
                       std::to_string(n_qubits) + " qubits");
    s.bitstrings.push_back(value);
    if (group_col >= 0) {
      if (static_cast<int>(cols.size()) <= group_col)
        throw ParseError(row, "missing group column");
      std::uint64_t g = 0;
      auto gc = cols[group_col];
      auto [gp, gec] = std::from_chars(gc.data(), gc.data() + gc.size(), g);
      if (gec != std::errc() || gp != gc.data() + gc.size())
        throw ParseError(row, "bad group id '" + std::string(gc) + "'");
      s.groups.push_back(g);
    }
  }
  if (!header_seen) throw ParseError(1, "empty sample file");
  return s;
}

inline std::string cost_csv(const CostReport& report) {
  std::string out = "n,median_seconds,bytes,ratio_vs_prev\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + ',';
    if (r.error.empty()) out += format_double(r.median_seconds);
    out += ',' + std::to_string(r.bytes) + ',';
    if (r.ratio_vs_prev) out += format_double(*r.ratio_vs_prev);
    out += '\n';
  }
  return out;
}

inline CostReport parse_cost_csv(std::string_view text) {
  CostReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1) {
      if (line != "n,median_seconds,bytes,ratio_vs_prev")
        throw ParseError(row, "unexpected cost CSV header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    if (line.back() == ',') cols.emplace_back();
    if (cols.size() != 4) throw ParseError(row, "expected 4 columns");
    CostRow r;
    auto n = detail::parse_number<int>(cols[0]);
    auto bytes = detail::parse_number<std::uint64_t>(cols[2]);
    if (!n || !bytes) throw ParseError(row, "bad n or bytes");
    r.n = *n;
    r.bytes = *bytes;
    if (cols[1].empty()) {
      r.error = "no timing";
    } else {
      auto t = detail::parse_number<double>(cols[1]);
      if (!t) throw ParseError(row, "bad median_seconds");
      r.median_seconds = *t;
    }
    if (!cols[3].empty()) {
      auto q = detail::parse_number<double>(cols[3]);
      if (!q) throw ParseError(row, "bad ratio_vs_prev");
      r.ratio_vs_prev = *q;
    }
    report.rows.push_back(r);
  }
  report.fit = fit_cost(report.rows);
  return report;
}

/// Reproduction metadata embedded in every JSON output.
struct Provenance {
  std::string command_line;
  std::vector<std::uint64_t> seeds;
  std::string circuit_hash;  // empty when no circuit is involved
};

inline nlohmann::ordered_json provenance_json(const Provenance& p) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command_line"] = p.command_line;
  j["seeds"] = p.seeds;
  if (!p.circuit_hash.empty()) j["circuit_hash"] = p.circuit_hash;
  return j;
}

inline nlohmann::ordered_json estimate_json(const XebEstimate& e) {
  nlohmann::ordered_json j;
  j["kind"] = "xeb_estimate";
  j["n_qubits"] = e.n_qubits;
  j["n_samples"] = e.n_samples;
  j["mean_p"] = e.mean_p;
  j["f"] = e.f;
  j["stderr"] = e.std_error;
  j["effective_samples"] = e.effective_samples;
  return j;
}

inline nlohmann::ordered_json pt_json(const PTStats& s) {
  nlohmann::ordered_json j;
  j["kind"] = "pt_stats";
  j["ks_distance"] = s.ks_distance;
  j["n_points"] = s.n_points;
  j["bin_width"] = s.bin_width;
  j["histogram"] = s.histogram;
  return j;
}

inline nlohmann::ordered_json extrapolation_json(const CostFit& fit, int n = 53) {
  const double seconds = fit.extrapolate_seconds(n);
  nlohmann::ordered_json j;
  j["label"] = "EXTRAPOLATION from a log-linear fit of measured times; not measured";
  j["n"] = n;
  j["growth_per_qubit"] = fit.growth_per_qubit();
  j["seconds"] = seconds;
  j["years"] = seconds / kSecondsPerYear;
  j["bytes"] = scoring_bytes(n);
  return j;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ArgumentError("write failed for '" + path + "'");
}

}  // namespace rcs
