// Acceptance suite: one PASS/FAIL line per criterion. With --dir D the
// measured metrics go to D/acceptance.json and the cost probe to D/cost.csv,
// both of which `rcslab report --dir D` picks up.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "dense_oracle.hpp"
#include "rcs/cli.hpp"
#include "rcs/rcs.hpp"

namespace {

using namespace rcs;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

const Topology kGrid12 = Topology::grid(3, 4);

struct Outcome {
  bool pass = false;
  std::string summary;
  ojson metrics;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

bool within(double value, double expected, double tol) { return std::abs(value - expected) <= tol; }

// Mean and grouped standard error of arbitrary per-sample scores.
std::pair<double, double> grouped_mean(const std::vector<double>& v,
                                       const std::vector<std::uint64_t>& groups) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  const double g = groups.empty() ? static_cast<double>(v.size())
                                  : static_cast<double>(std::set(groups.begin(), groups.end()).size());
  return {mean, sd / std::sqrt(g)};
}

Outcome endpoints() {
  Outcome o;
  double sum = 0.0;
  ojson per_seed = ojson::array();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double v = ideal_xeb(ideal_distribution(generate_random_circuit(12, kGrid12, 14, seed)));
    per_seed.push_back(v);
    sum += v;
  }
  const double mean = sum / 20;
  const Circuit c = generate_random_circuit(12, kGrid12, 14, 1);
  const XebEstimate uni = linear_xeb(score_samples(c, coin_toss_sampler(12, 100000, 101)));
  o.pass = mean >= 0.95 && mean <= 1.05 && within(uni.f, 0.0, 3 * uni.std_error);
  o.summary = "mean 2^n sum p^2 - 1 over 20 seeds = " + num(mean) + " (want [0.95, 1.05]); uniform f = " +
              num(uni.f) + " +/- " + num(uni.std_error);
  o.metrics = {{"mean_ideal_xeb", mean}, {"per_seed", per_seed},
               {"uniform_f", uni.f}, {"uniform_stderr", uni.std_error}};
  return o;
}

Outcome porter_thomas() {
  Outcome o;
  std::vector<double> deep, shallow;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    deep.push_back(pt_test(ideal_distribution(generate_random_circuit(12, kGrid12, 14, seed))).ks_distance);
    shallow.push_back(pt_test(ideal_distribution(generate_random_circuit(12, kGrid12, 1, seed))).ks_distance);
  }
  std::vector<double> sorted = deep;
  std::sort(sorted.begin(), sorted.end());
  const double median_deep = sorted[2];
  const double min_shallow = *std::min_element(shallow.begin(), shallow.end());
  o.pass = median_deep < 0.02 && min_shallow > 0.1;
  o.summary = "14 cycles median KS = " + num(median_deep) + " (< 0.02); 1 cycle min KS = " +
              num(min_shallow) + " (> 0.1)";
  o.metrics = {{"ks_14_cycles", deep}, {"ks_14_cycles_median", median_deep},
               {"ks_1_cycle", shallow}};
  return o;
}

Outcome estimator() {
  Outcome o;
  const auto table = ideal_distribution(generate_random_circuit(12, kGrid12, 14, 3));
  const XebEstimate e = linear_xeb(score_samples(table, sample_from_distribution(table, 100000, 303)));
  const double oracle = ideal_xeb(table);
  o.pass = within(e.f, oracle, 3 * e.std_error);
  o.summary = "f = " + num(e.f) + " +/- " + num(e.std_error) + " vs enumerated " + num(oracle);
  o.metrics = {{"f", e.f}, {"stderr", e.std_error}, {"enumerated", oracle}, {"n_samples", e.n_samples}};
  return o;
}

Outcome affinity() {
  Outcome o;
  o.pass = true;
  const auto table = ideal_distribution(generate_random_circuit(12, kGrid12, 14, 4));
  const double full = ideal_xeb(table);
  ojson rows = ojson::array();
  for (double f : {0.0, 0.25, 0.5, 1.0}) {
    const XebEstimate e =
        linear_xeb(score_samples(table, sample_from_distribution(white_noise_mix(table, f), 1000000, 404)));
    const bool ok = within(e.f, f * full, 3 * e.std_error);
    o.pass = o.pass && ok;
    rows.push_back({{"mix", f}, {"f", e.f}, {"stderr", e.std_error}, {"expected", f * full}, {"pass", ok}});
    o.summary += "mix " + num(f) + ": " + num(e.f) + " vs " + num(f * full) + (ok ? "; " : " (off); ");
  }
  o.metrics = {{"points", rows}};
  return o;
}

Outcome spoofing() {
  Outcome o;
  const Circuit c = generate_random_circuit(12, kGrid12, 14, 5);
  const XebEstimate e = linear_xeb(score_samples(c, targeted_spoofer(c, 0.002, 10000000, 505)));
  o.pass = within(e.f, 0.002, 3 * e.std_error);
  o.summary = "target 0.002: f = " + num(e.f) + " +/- " + num(e.std_error) + " over 1e7 samples";
  o.metrics = {{"target_f", 0.002}, {"f", e.f}, {"stderr", e.std_error}, {"n_samples", e.n_samples}};
  return o;
}

Outcome noise_prediction() {
  Outcome o;
  o.pass = true;
  const NoiseModel noise{0.002, 0.002, 0.0};
  ojson rows = ojson::array();
  for (int n : {10, 12}) {
    const Circuit c = generate_random_circuit(n, n == 10 ? Topology::grid(2, 5) : kGrid12, 14, 6);
    const auto table = ideal_distribution(c);
    const SampleSet s = pauli_trajectory_sample(c, noise, 200000, 606);
    const XebEstimate e = linear_xeb(score_samples(table, s));
    // Linear XEB measures F * (2^n sum p^2 - 1); divide out the noiseless value.
    const double reference = ideal_xeb(table);
    const double fidelity = e.f / reference;
    const double pred = predict_fidelity(c, noise);
    const double rel = std::abs(fidelity - pred) / pred;
    const bool ok = rel < 0.25 && e.effective_samples >= 2000;
    o.pass = o.pass && ok;
    rows.push_back({{"n_qubits", n}, {"f", e.f}, {"stderr", e.std_error}, {"noiseless_xeb", reference},
                    {"fidelity", fidelity}, {"predicted", pred}, {"relative_error", rel},
                    {"raw_relative_error", std::abs(e.f - pred) / pred},
                    {"trajectories", e.effective_samples}});
    o.summary += "n=" + std::to_string(n) + ": f = " + num(e.f) + ", f / noiseless " + num(fidelity) +
                 " vs predicted " + num(pred) + " (rel " + num(rel) + "); ";
  }
  o.metrics = {{"e1", noise.e1}, {"e2", noise.e2}, {"points", rows}};
  return o;
}

Outcome patches() {
  Outcome o;
  const std::set<int> left = {0, 1, 4, 5, 8, 9}, right = {2, 3, 6, 7, 10, 11};
  const Circuit full = generate_random_circuit(12, kGrid12, 14, 7);
  const Circuit patched = make_patch(full, left);
  const Circuit ca = restrict_to(patched, left), cb = restrict_to(patched, right);
  const auto pa = ideal_distribution(ca), pb = ideal_distribution(cb);
  const auto joint = ideal_distribution(patched);

  auto split = [&](Bitstring x) {
    Bitstring xa = 0, xb = 0;
    int ia = 0, ib = 0;
    for (int q = 0; q < 12; ++q) {
      const Bitstring bit = (x >> q) & 1;
      if (left.count(q)) xa |= bit << ia++;
      else xb |= bit << ib++;
    }
    return std::pair{xa, xb};
  };
  double worst = 0.0;
  for (Bitstring x = 0; x < joint.size(); ++x) {
    const auto [xa, xb] = split(x);
    worst = std::max(worst, std::abs(joint[x] - pa[xa] * pb[xb]));
  }

  const NoiseModel noise{0.005, 0.01, 0.0};
  const XebEstimate fa = linear_xeb(score_samples(pa, pauli_trajectory_sample(ca, noise, 200000, 701)));
  const XebEstimate fb = linear_xeb(score_samples(pb, pauli_trajectory_sample(cb, noise, 200000, 702)));
  const SampleSet s = pauli_trajectory_sample(patched, noise, 200000, 703);
  std::vector<double> kernel(s.size()), plain(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto [xa, xb] = split(s.bitstrings[i]);
    kernel[i] = (std::ldexp(pa[xa], 6) - 1.0) * (std::ldexp(pb[xb], 6) - 1.0);
    plain[i] = std::ldexp(joint[s.bitstrings[i]], 12) - 1.0;
  }
  const auto [f_full, se_full] = grouped_mean(kernel, s.groups);
  const auto [f_plain, se_plain] = grouped_mean(plain, s.groups);
  const double product = fa.f * fb.f;
  const double se_product = std::hypot(fb.f * fa.std_error, fa.f * fb.std_error);
  const double sigma = std::hypot(se_product, se_full);
  const double composed = (1 + fa.f) * (1 + fb.f) - 1;
  const double se_composed = std::hypot((1 + fb.f) * fa.std_error, (1 + fa.f) * fb.std_error);
  const double sigma_plain = std::hypot(se_composed, se_plain);

  o.pass = worst < 1e-10 && within(product, f_full, 3 * sigma) &&
           within(composed, f_plain, 3 * sigma_plain);
  o.summary = "factorization max dev " + num(worst) + "; F_A*F_B = " + num(product) +
              " vs patched " + num(f_full) + " (3 sigma " + num(3 * sigma) + ")";
  o.metrics = {{"max_factorization_deviation", worst},
               {"f_a", fa.f}, {"f_b", fb.f}, {"product", product}, {"product_stderr", se_product},
               {"patched_factorized_f", f_full}, {"patched_factorized_stderr", se_full},
               {"composed_plain", composed}, {"patched_plain_f", f_plain},
               {"patched_plain_stderr", se_plain}};
  return o;
}

Outcome verification_gap(const fs::path* dir) {
  Outcome o;
  const CostReport r = verification_cost_probe({16, 18, 20, 22, 24}, 4, 3);
  bool mem_ok = true;
  ojson ratios = ojson::array();
  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) {
    const double per_qubit = std::pow(static_cast<double>(r.rows[i + 1].bytes) / r.rows[i].bytes,
                                      1.0 / (r.rows[i + 1].n - r.rows[i].n));
    mem_ok = mem_ok && within(per_qubit, 2.0, 0.2);
    ratios.push_back(r.rows[i + 1].ratio_vs_prev.value_or(std::nan("")));
  }
  const double growth = r.fit ? r.fit->growth_per_qubit() : 0.0;
  o.pass = r.fit && growth >= 1.7 && growth <= 2.4 && mem_ok;
  o.summary = "time growth per qubit " + num(growth) + " (want [1.7, 2.4]); memory x2 per qubit " +
              (mem_ok ? "ok" : "off");
  if (r.fit) {
    const ojson ex = extrapolation_json(*r.fit);
    o.summary += "; EXTRAPOLATED n=53: " + num(ex["years"].get<double>()) + " years";
    o.metrics["extrapolation"] = ex;
  }
  o.metrics["growth_per_qubit"] = growth;
  o.metrics["ratio_per_two_qubits"] = ratios;
  o.metrics["csv"] = cost_csv(r);
  if (dir) write_file((*dir / "cost.csv").string(), cost_csv(r));
  return o;
}

Outcome determinism() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / "rcslab_acceptance_determinism";
  fs::remove_all(base);
  auto cli = [](std::vector<std::string> args) {
    args.insert(args.begin(), "rcslab");
    std::ostringstream out, err;
    return cli::run(args, out, err);
  };
  // Every command writes under <base>/run so the recorded command lines match.
  auto suite = [&]() {
    const fs::path d = base / "run";
    fs::remove_all(d);
    fs::create_directories(d);
    const std::string c = (d / "c.txt").string();
    int bad = 0;
    bad += cli({"generate", "--qubits", "12", "--topology", "grid", "3x4", "--cycles", "10",
                "--seed", "9", "--out", c}) != 0;
    bad += cli({"run", "--circuit", c, "--samples", "200000", "--seed", "1", "--score",
                "--out", (d / "ideal").string()}) != 0;
    bad += cli({"run", "--circuit", c, "--samples", "5000", "--seed", "2", "--noise",
                "0.002,0.002,0.01", "--samples-per-trajectory", "10", "--score", "--out",
                (d / "noisy").string()}) != 0;
    bad += cli({"run", "--circuit", c, "--samples", "200000", "--seed", "3", "--mix", "0.25",
                "--score", "--out", (d / "mix").string()}) != 0;
    bad += cli({"spoof", "--target-f", "0.002", "--circuit", c, "--samples", "200000",
                "--seed", "4", "--out", (d / "spoof.csv").string()}) != 0;
    bad += cli({"spoof", "--coin", "--circuit", c, "--samples", "200000", "--seed", "5",
                "--out", (d / "coin.csv").string()}) != 0;
    bad += cli({"verify", "--circuit", c, "--samples-csv", (d / "spoof.csv").string(),
                "--out", (d / "verify.json").string()}) != 0;
    bad += cli({"pt", "--circuit", c, "--out", (d / "pt.json").string()}) != 0;
    bad += cli({"report", "--dir", d.string(), "--out", (d / "report.json").string()}) != 0;
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& e : fs::recursive_directory_iterator(d))
      if (e.is_regular_file())
        files.emplace_back(fs::relative(e.path(), d).string(), read_file(e.path().string()));
    std::sort(files.begin(), files.end());
    return std::pair{bad, files};
  };

#if defined(_OPENMP)
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const auto [bad_a, a] = suite();
  const auto [bad_b, b] = suite();
#if defined(_OPENMP)
  omp_set_num_threads(4);
#endif
  const auto [bad_c, c] = suite();
#if defined(_OPENMP)
  omp_set_num_threads(saved);
#endif
  fs::remove_all(base);

  std::size_t differing = 0;
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
    differing += a[i] != b[i] || a[i] != c[i];
  o.pass = bad_a + bad_b + bad_c == 0 && a.size() == c.size() && b.size() == c.size() &&
           a.size() == 15 && differing == 0;
  o.summary = std::to_string(a.size()) + " output files, " + std::to_string(differing) +
              " differ between reruns and thread counts 1/4";
  o.metrics = {{"files", a.size()}, {"differing", differing}};
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Xoshiro256 rng(1010);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const Topology topo = n == 4 || n == 6 ? Topology::grid(2, n / 2) : Topology::chain(n);
    const GateKind two = trial % 2 ? GateKind::fsim(rng.uniform01() * 6.3, rng.uniform01() * 6.3)
                                   : GateKind::cz();
    const Circuit c = generate_random_circuit(n, topo, static_cast<int>(rng.below(15)), rng.next(), two);
    const auto expected = rcs::testing::oracle_state(c);
    const StateVector s = run_circuit(c);
    for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(expected[i] - s[i]));
  }
  o.pass = worst < 1e-10;
  o.summary = "max amplitude deviation over 100 circuits = " + num(worst);
  o.metrics = {{"max_deviation", worst}, {"circuits", 100}};
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<fs::path> dir;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--dir" && i + 1 < argc) {
      dir = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--dir D]\n";
      return 2;
    }
  }
  if (dir) fs::create_directories(*dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"xeb_endpoints", endpoints},
      {"porter_thomas", porter_thomas},
      {"estimator", estimator},
      {"white_noise_affinity", affinity},
      {"spoofed_small_fidelity", spoofing},
      {"noise_model_prediction", noise_prediction},
      {"patch_factorization", patches},
      {"verification_gap", [&] { return verification_gap(dir ? &*dir : nullptr); }},
      {"determinism", determinism},
      {"oracle_equivalence", oracle_equivalence},
  };

  ojson results = ojson::array();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << " " << criteria[i].first << ": "
              << o.summary << " [" << num(secs) << " s]" << std::endl;
    results.push_back({{"id", i + 1}, {"name", criteria[i].first}, {"pass", o.pass},
                       {"summary", o.summary}, {"metrics", o.metrics}});
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/"
            << criteria.size() << std::endl;

  if (dir) {
    ojson j;
    j["kind"] = "acceptance";
    j["passed"] = criteria.size() - failed;
    j["total"] = criteria.size();
    j["criteria"] = results;
    j["provenance"] = provenance_json({"acceptance --dir " + dir->string(), {}, ""});
    write_file((*dir / "acceptance.json").string(), dump(j));
  }
  return failed ? 1 : 0;
}
