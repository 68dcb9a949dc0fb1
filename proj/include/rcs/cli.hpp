#pragma once

// rcslab command-line front end. Exit codes: 0 success, 2 usage or input
// error, 3 capacity error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rcs/circuit.hpp"
#include "rcs/circuit_text.hpp"
#include "rcs/errors.hpp"
#include "rcs/generate.hpp"
#include "rcs/io.hpp"
#include "rcs/noise.hpp"
#include "rcs/spoof.hpp"
#include "rcs/xeb.hpp"

namespace rcs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace detail {

inline Topology parse_topology(const std::vector<std::string>& tokens, int qubits) {
  if (tokens.empty()) throw ArgumentError("--topology needs 'chain' or 'grid RxC'");
  if (tokens[0] == "chain") {
    if (tokens.size() > 2) throw ArgumentError("chain takes at most one size");
    if (tokens.size() == 2) {
      auto n = rcs::detail::parse_number<int>(tokens[1]);
      if (!n || *n != qubits)
        throw ArgumentError("chain length does not match --qubits");
    }
    return Topology::chain(qubits);
  }
  if (tokens[0] == "grid") {
    if (tokens.size() != 2) throw ArgumentError("grid needs RxC, e.g. 'grid 3x4'");
    const auto x = tokens[1].find('x');
    if (x == std::string::npos) throw ArgumentError("grid needs RxC, e.g. 'grid 3x4'");
    auto r = rcs::detail::parse_number<int>(std::string_view(tokens[1]).substr(0, x));
    auto c = rcs::detail::parse_number<int>(std::string_view(tokens[1]).substr(x + 1));
    if (!r || !c || *r < 1 || *c < 1) throw ArgumentError("bad grid dimensions");
    if (*r * *c != qubits)
      throw ArgumentError("grid " + tokens[1] + " has " + std::to_string(*r * *c) +
                          " sites but --qubits is " + std::to_string(qubits));
    return Topology::grid(*r, *c);
  }
  throw ArgumentError("unknown topology '" + tokens[0] + "'");
}

inline NoiseModel parse_noise(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    auto d = rcs::detail::parse_number<double>(tok);
    if (!d) throw ArgumentError("bad noise value '" + tok + "'");
    v.push_back(*d);
  }
  if (v.size() != 3) throw ArgumentError("--noise expects e1,e2,em");
  NoiseModel m{v[0], v[1], v[2]};
  m.check();
  return m;
}

inline NoiseModel noise_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_noise(j.get<std::string>());
  NoiseModel m{j.value("e1", 0.0), j.value("e2", 0.0), j.value("em", 0.0)};
  m.check();
  return m;
}

inline ojson noise_json(const NoiseModel& m) {
  return ojson{{"e1", m.e1}, {"e2", m.e2}, {"em", m.em}};
}

inline ojson circuit_json(const Circuit& c) {
  ojson j;
  j["n_qubits"] = c.n_qubits;
  j["topology"] = c.topology.describe();
  j["cycles"] = c.cycles;
  j["seed"] = c.seed;
  j["gates_1q"] = c.gate_count(1);
  j["gates_2q"] = c.gate_count(2);
  j["hash"] = circuit_hash(c);
  return j;
}

inline Circuit load_circuit(const std::string& path) {
  try {
    Circuit c = parse(read_file(path));
    validate(c);
    return c;
  } catch (const ParseError& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

inline void write_output(const std::string& path, std::string_view content,
                         std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  write_file(path, content);
}

inline std::string join_command(const std::vector<std::string>& args) {
  std::string s = "rcslab";
  for (std::size_t i = 1; i < args.size(); ++i) s += " " + args[i];
  return s;
}

}  // namespace detail

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    command_line_ = detail::join_command(args);
    CLI::App app{"Random circuit sampling and linear XEB verification lab", "rcslab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    std::function<int()> action;
    add_generate(app, action);
    add_run(app, action);
    add_verify(app, action);
    add_spoof(app, action);
    add_pt(app, action);
    add_probe(app, action);
    add_report(app, action);

    std::vector<std::string> rev(args.begin() + std::min<std::size_t>(1, args.size()),
                                 args.end());
    std::reverse(rev.begin(), rev.end());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::CallForVersion&) {
      out_ << kToolVersion << "\n";
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    try {
      return action ? action() : kExitUsage;
    } catch (const CapacityError& e) {
      err_ << "capacity error: " << e.what() << "\n";
      return kExitCapacity;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const fs::filesystem_error& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

 private:
  ojson provenance(std::vector<std::uint64_t> seeds, const Circuit* c) const {
    return provenance_json({command_line_, std::move(seeds), c ? circuit_hash(*c) : ""});
  }

  // generate --qubits N --topology chain|grid RxC --cycles C --seed S [--gate cz|fsim] [--out F]
  void add_generate(CLI::App& app, std::function<int()>& action) {
    auto* sub = app.add_subcommand("generate", "Write a random circuit in text format");
    struct Opts {
      int qubits = 0;
      std::vector<std::string> topology;
      int cycles = 14;
      std::uint64_t seed = 0;
      std::string gate = "cz";
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--qubits", o->qubits, "Number of qubits")->required();
    sub->add_option("--topology", o->topology, "chain | grid RxC")
        ->required()
        ->expected(1, 2);
    sub->add_option("--cycles", o->cycles, "Number of cycles")->capture_default_str();
    sub->add_option("--seed", o->seed, "Generator seed")->capture_default_str();
    sub->add_option("--gate", o->gate, "Two-qubit gate")
        ->check(CLI::IsMember({"cz", "fsim"}))
        ->capture_default_str();
    sub->add_option("--out", o->out, "Output file (default stdout)");
    sub->callback([this, o, &action] {
      action = [this, o] {
        if (o->qubits < 1) throw ArgumentError("--qubits must be positive");
        const Topology topo = detail::parse_topology(o->topology, o->qubits);
        const GateKind two = o->gate == "cz" ? GateKind::cz() : GateKind::sycamore();
        const Circuit c = generate_random_circuit(o->qubits, topo, o->cycles, o->seed, two);
        detail::write_output(o->out, serialize(c), out_);
        return kExitOk;
      };
    });
  }

  // run --circuit F --samples N --seed S [--noise e1,e2,em | --mix f] [--score] --out DIR
  void add_run(CLI::App& app, std::function<int()>& action) {
    auto* sub = app.add_subcommand("run", "Sample a circuit (optionally noisy) and score it");
    struct Opts {
      std::string config, circuit, noise, out;
      std::size_t samples = 0;
      std::uint64_t seed = 0;
      double mix = 1.0;
      bool score = false;
      std::size_t per_trajectory = kDefaultSamplesPerTrajectory;
      int max_qubits = kDefaultMaxQubits;
    };
    auto o = std::make_shared<Opts>();
    auto* o_config = sub->add_option("--config", o->config, "JSON config mirroring the flags");
    auto* o_circuit = sub->add_option("--circuit", o->circuit, "Circuit file");
    auto* o_samples = sub->add_option("--samples", o->samples, "Number of bitstrings");
    auto* o_seed = sub->add_option("--seed", o->seed, "Sampling seed");
    auto* o_noise = sub->add_option("--noise", o->noise, "Pauli trajectory noise e1,e2,em");
    auto* o_mix = sub->add_option("--mix", o->mix, "White-noise weight of the ideal distribution");
    auto* o_score = sub->add_flag("--score", o->score, "Score samples and estimate XEB");
    auto* o_out = sub->add_option("--out", o->out, "Output directory");
    auto* o_k = sub->add_option("--samples-per-trajectory", o->per_trajectory,
                                "Bitstrings drawn per noise trajectory");
    auto* o_max = sub->add_option("--max-qubits", o->max_qubits, "Simulation qubit limit");
    (void)o_config;
    sub->callback([=, this, &action] {
      action = [=, this] {
        bool use_noise = o_noise->count() > 0;
        bool use_mix = o_mix->count() > 0;
        NoiseModel noise;
        if (use_noise) noise = detail::parse_noise(o->noise);
        if (!o->config.empty()) {
          const auto cfg = nlohmann::json::parse(read_file(o->config));
          auto take = [&](CLI::Option* opt, const char* key, auto& field) {
            if (opt->count() == 0 && cfg.contains(key))
              field = cfg.at(key).get<std::remove_reference_t<decltype(field)>>();
          };
          take(o_circuit, "circuit", o->circuit);
          take(o_samples, "samples", o->samples);
          take(o_seed, "seed", o->seed);
          take(o_score, "score", o->score);
          take(o_out, "out", o->out);
          take(o_k, "samples_per_trajectory", o->per_trajectory);
          take(o_max, "max_qubits", o->max_qubits);
          // --noise and --mix select the sampling mode; a flag for either
          // overrides both config keys.
          if (!use_noise && !use_mix) {
            if (cfg.contains("noise") && !cfg.at("noise").is_null()) {
              noise = detail::noise_from_json(cfg.at("noise"));
              use_noise = true;
            }
            if (cfg.contains("mix") && !cfg.at("mix").is_null()) {
              o->mix = cfg.at("mix").get<double>();
              use_mix = true;
            }
          }
        }
        if (o->circuit.empty()) throw ArgumentError("--circuit is required");
        if (o->out.empty()) throw ArgumentError("--out is required");
        if (o->samples < 1) throw ArgumentError("--samples must be at least 1");
        if (use_noise && use_mix) throw ArgumentError("--noise and --mix are exclusive");
        return do_run(*o, use_noise, noise, use_mix);
      };
    });
  }

  template <typename Opts>
  int do_run(const Opts& o, bool use_noise, const NoiseModel& noise, bool use_mix) {
    const Circuit c = detail::load_circuit(o.circuit);
    const SimLimits limits{o.max_qubits};
    if (c.n_qubits > limits.max_qubits) throw CapacityError(c.n_qubits, limits.max_qubits);
    const ProbabilityTable ideal = ideal_distribution(c, limits);

    SampleSet samples;
    std::string mode = "noiseless";
    if (use_noise) {
      mode = "noise";
      samples = pauli_trajectory_sample(c, noise, o.samples, o.seed, o.per_trajectory, limits);
    } else if (use_mix) {
      mode = "mix";
      samples = sample_from_distribution(white_noise_mix(ideal, o.mix), o.samples, o.seed);
    } else {
      samples = sample_from_distribution(ideal, o.samples, o.seed);
    }

    fs::create_directories(o.out);
    const fs::path dir(o.out);
    write_file((dir / "samples.csv").string(), samples_csv(samples));
    if (!o.score) {
      out_ << "wrote " << samples.size() << " samples to " << (dir / "samples.csv").string()
           << "\n";
      return kExitOk;
    }
    const ScoredSamples scored = score_samples(ideal, samples);
    write_file((dir / "scored.csv").string(), scored_csv(scored));
    const XebEstimate est = linear_xeb(scored);

    ojson j = estimate_json(est);
    j["mode"] = mode;
    const double ideal_f = ideal_xeb(ideal);
    j["ideal_xeb"] = ideal_f;
    if (use_mix) {
      j["mix"] = o.mix;
      j["expected_f"] = o.mix * ideal_f;
    } else if (use_noise) {
      j["noise"] = detail::noise_json(noise);
      j["samples_per_trajectory"] = o.per_trajectory;
      j["predicted_fidelity"] = predict_fidelity(c, noise);
      j["expected_f"] = predict_fidelity(c, noise);
    } else {
      j["expected_f"] = ideal_f;
    }
    j["circuit"] = detail::circuit_json(c);
    j["provenance"] = provenance({o.seed, c.seed}, &c);
    write_file((dir / "estimate.json").string(), dump(j));
    out_ << "f = " << format_double(est.f) << " +/- " << format_double(est.std_error)
         << " (" << est.n_samples << " samples, mode " << mode << ")\n";
    return kExitOk;
  }

  // verify --circuit F --samples-csv F2 [--out F3]
  void add_verify(CLI::App& app, std::function<int()>& action) {
    auto* sub = app.add_subcommand("verify", "Score an external sample file against a circuit");
    struct Opts {
      std::string circuit, samples_csv, out;
      int max_qubits = kDefaultMaxQubits;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--circuit", o->circuit, "Circuit file")->required();
    sub->add_option("--samples-csv", o->samples_csv, "Samples CSV")->required();
    sub->add_option("--out", o->out, "Estimate JSON (default stdout)");
    sub->add_option("--max-qubits", o->max_qubits, "Simulation qubit limit");
    sub->callback([this, o, &action] {
      action = [this, o] {
        const Circuit c = detail::load_circuit(o->circuit);
        const SimLimits limits{o->max_qubits};
        if (c.n_qubits > limits.max_qubits) throw CapacityError(c.n_qubits, limits.max_qubits);
        SampleSet samples;
        try {
          samples = parse_samples_csv(read_file(o->samples_csv), c.n_qubits);
        } catch (const ParseError& e) {
          const std::string what = e.what();
          throw ArgumentError(o->samples_csv + ": row " + std::to_string(e.line()) +
                              what.substr(what.find(':')));
        }
        const XebEstimate est = linear_xeb(score_samples(c, samples, limits));
        ojson j = estimate_json(est);
        j["mode"] = "verify";
        j["circuit"] = detail::circuit_json(c);
        j["provenance"] = provenance({c.seed}, &c);
        detail::write_output(o->out, dump(j), out_);
        if (!o->out.empty() && o->out != "-")
          out_ << "f = " << format_double(est.f) << " +/- " << format_double(est.std_error)
               << "\n";
        return kExitOk;
      };
    });
  }

  // spoof (--target-f F --circuit C | --coin [--circuit C | --qubits N]) --samples N --seed S --out F
  void add_spoof(CLI::App& app, std::function<int()>& action) {
    auto* sub = app.add_subcommand("spoof", "Produce classical samples with a chosen XEB");
    struct Opts {
      std::string circuit, out;
      double target = 0.0;
      bool coin = false;
      int qubits = 0;
      std::size_t samples = 0;
      std::uint64_t seed = 0;
      int max_qubits = kDefaultMaxQubits;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--circuit", o->circuit, "Circuit file");
    auto* o_target = sub->add_option("--target-f", o->target, "Target XEB fidelity");
    sub->add_flag("--coin", o->coin, "Uniform coin-toss sampler");
    sub->add_option("--qubits", o->qubits, "Bit width for --coin without a circuit");
    sub->add_option("--samples", o->samples, "Number of bitstrings")->required();
    sub->add_option("--seed", o->seed, "Sampling seed");
    sub->add_option("--out", o->out, "Samples CSV (default stdout)");
    sub->add_option("--max-qubits", o->max_qubits, "Simulation qubit limit");
    sub->callback([this, o, o_target, &action] {
      action = [this, o, o_target] {
        if (o->coin == (o_target->count() > 0))
          throw ArgumentError("choose exactly one of --coin and --target-f");
        SampleSet s;
        if (o->coin) {
          int n = o->qubits;
          if (!o->circuit.empty()) n = detail::load_circuit(o->circuit).n_qubits;
          if (n < 1) throw ArgumentError("--coin needs --circuit or --qubits");
          s = coin_toss_sampler(n, o->samples, o->seed);
        } else {
          if (o->circuit.empty()) throw ArgumentError("--target-f needs --circuit");
          const Circuit c = detail::load_circuit(o->circuit);
          s = targeted_spoofer(c, o->target, o->samples, o->seed, SimLimits{o->max_qubits});
        }
        detail::write_output(o->out, samples_csv(s), out_);
        return kExitOk;
      };
    });
  }

  // pt --circuit F [--out F2]
  void add_pt(CLI::App& app, std::function<int()>& action) {
    auto* sub = app.add_subcommand("pt", "Porter-Thomas statistics of a circuit's output");
    struct Opts {
      std::string circuit, out;
      double bin_width = 0.25;
      std::size_t bins = 40;
      int max_qubits = kDefaultMaxQubits;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--circuit", o->circuit, "Circuit file")->required();
    sub->add_option("--out", o->out, "PT statistics JSON (default stdout)");
    sub->add_option("--bin-width", o->bin_width, "Histogram bin width in x = 2^n p")
        ->capture_default_str();
    sub->add_option("--bins", o->bins, "Histogram bins before the overflow bin")
        ->capture_default_str();
    sub->add_option("--max-qubits", o->max_qubits, "Simulation qubit limit");
    sub->callback([this, o, &action] {
      action = [this, o] {
        const Circuit c = detail::load_circuit(o->circuit);
        const SimLimits limits{o->max_qubits};
        if (c.n_qubits > limits.max_qubits) throw CapacityError(c.n_qubits, limits.max_qubits);
        const ProbabilityTable ideal = ideal_distribution(c, limits);
        ojson j = pt_json(pt_test(ideal, o->bin_width, o->bins));
        j["ideal_xeb"] = ideal_xeb(ideal);
        j["circuit"] = detail::circuit_json(c);
        j["provenance"] = provenance({c.seed}, &c);
        detail::write_output(o->out, dump(j), out_);
        return kExitOk;
      };
    });
  }

  // probe --n-min A --n-max B --cycles C --reps R --out cost.csv [--summary F]
  void add_probe(CLI::App& app, std::function<int()>& action) {
    auto* sub = app.add_subcommand("probe", "Time exact scoring as the qubit count grows");
    struct Opts {
      int n_min = 16, n_max = 24, cycles = 4, reps = 3;
      std::string out, summary;
      int max_qubits = kDefaultMaxQubits;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--n-min", o->n_min)->capture_default_str();
    sub->add_option("--n-max", o->n_max)->capture_default_str();
    sub->add_option("--cycles", o->cycles)->capture_default_str();
    sub->add_option("--reps", o->reps)->capture_default_str();
    sub->add_option("--out", o->out, "Cost CSV (default stdout)");
    sub->add_option("--summary", o->summary, "Also write rows, fit and extrapolation as JSON");
    sub->add_option("--max-qubits", o->max_qubits, "Simulation qubit limit");
    sub->callback([this, o, &action] {
      action = [this, o] {
        if (o->n_min < 1 || o->n_max < o->n_min) throw ArgumentError("bad qubit range");
        std::vector<int> ns;
        for (int n = o->n_min; n <= o->n_max; ++n) ns.push_back(n);
        const CostReport report =
            verification_cost_probe(ns, o->cycles, o->reps, SimLimits{o->max_qubits});
        detail::write_output(o->out, cost_csv(report), out_);
        ojson j;
        j["kind"] = "cost_summary";
        j["csv"] = cost_csv(report);
        if (report.fit) {
          j["extrapolation"] = extrapolation_json(*report.fit);
          err_ << "growth per qubit " << format_double(report.fit->growth_per_qubit())
               << "; EXTRAPOLATED n=53 time "
               << format_double(report.fit->extrapolate_seconds(53) / kSecondsPerYear)
               << " years\n";
        }
        j["provenance"] = provenance({}, nullptr);
        if (!o->summary.empty()) detail::write_output(o->summary, dump(j), out_);
        return kExitOk;
      };
    });
  }

  // report --dir D --out report.json
  void add_report(CLI::App& app, std::function<int()>& action) {
    auto* sub = app.add_subcommand("report", "Aggregate experiment outputs into one JSON");
    struct Opts {
      std::string dir, out;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--dir", o->dir, "Directory of experiment outputs")->required();
    sub->add_option("--out", o->out, "Report JSON (default stdout)");
    sub->callback([this, o, &action] {
      action = [this, o] {
        detail::write_output(o->out, dump(build_report(o->dir, o->out)), out_);
        return kExitOk;
      };
    });
  }

  ojson build_report(const std::string& dir, const std::string& out_path) const {
    if (!fs::is_directory(dir)) throw ArgumentError("'" + dir + "' is not a directory");
    std::optional<fs::path> skip;
    if (!out_path.empty() && fs::exists(out_path)) skip = fs::canonical(out_path);

    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());

    ojson estimates = ojson::array(), pts = ojson::array(), costs = ojson::array(),
          acceptance = ojson::array(), unreadable = ojson::array();
    ojson f_vs_cycles = ojson::array(), f_vs_noise = ojson::array();

    for (const auto& path : files) {
      if (skip && fs::canonical(path) == *skip) continue;
      const std::string rel = fs::relative(path, dir).generic_string();
      const std::string ext = path.extension().string();
      try {
        if (ext == ".json") {
          const auto j = ojson::parse(read_file(path.string()));
          const std::string kind = j.is_object() ? j.value("kind", "") : "";
          if (kind == "xeb_estimate") {
            ojson row = j;
            row["file"] = rel;
            estimates.push_back(row);
            if (j.contains("circuit")) {
              f_vs_cycles.push_back({{"n_qubits", j["n_qubits"]},
                                     {"cycles", j["circuit"].value("cycles", 0)},
                                     {"mode", j.value("mode", "")},
                                     {"f", j["f"]},
                                     {"stderr", j["stderr"]},
                                     {"file", rel}});
            }
            if (j.contains("noise") || j.contains("mix")) {
              ojson r;
              r["mix"] = j.contains("mix") ? j["mix"] : ojson();
              r["e1"] = j.contains("noise") ? j["noise"]["e1"] : ojson();
              r["e2"] = j.contains("noise") ? j["noise"]["e2"] : ojson();
              r["em"] = j.contains("noise") ? j["noise"]["em"] : ojson();
              r["f"] = j["f"];
              r["stderr"] = j["stderr"];
              r["expected_f"] = j.contains("expected_f") ? j["expected_f"] : ojson();
              r["file"] = rel;
              f_vs_noise.push_back(r);
            }
          } else if (kind == "pt_stats") {
            pts.push_back({{"file", rel},
                           {"ks_distance", j["ks_distance"]},
                           {"n_points", j["n_points"]},
                           {"n_qubits", j.contains("circuit") ? j["circuit"]["n_qubits"] : ojson()},
                           {"cycles", j.contains("circuit") ? j["circuit"]["cycles"] : ojson()}});
          } else if (kind == "acceptance") {
            ojson row = j;
            row["file"] = rel;
            acceptance.push_back(row);
          }
        } else if (ext == ".csv") {
          const std::string text = read_file(path.string());
          if (text.starts_with("n,median_seconds,bytes,ratio_vs_prev")) {
            const CostReport r = parse_cost_csv(text);
            ojson rows = ojson::array();
            for (const auto& row : r.rows)
              rows.push_back({{"n", row.n},
                              {"median_seconds", row.error.empty() ? ojson(row.median_seconds)
                                                                   : ojson()},
                              {"bytes", row.bytes},
                              {"ratio_vs_prev", row.ratio_vs_prev ? ojson(*row.ratio_vs_prev)
                                                                  : ojson()}});
            ojson c{{"file", rel}, {"rows", rows}};
            if (r.fit) c["extrapolation"] = extrapolation_json(*r.fit);
            costs.push_back(c);
          }
        }
      } catch (const std::exception& e) {
        unreadable.push_back({{"file", rel}, {"reason", e.what()}});
      }
    }

    std::stable_sort(f_vs_cycles.begin(), f_vs_cycles.end(),
                     [](const ojson& a, const ojson& b) {
                       return std::make_tuple(a["n_qubits"].get<int>(), a["cycles"].get<int>()) <
                              std::make_tuple(b["n_qubits"].get<int>(), b["cycles"].get<int>());
                     });

    ojson rep;
    rep["kind"] = "report";
    rep["estimates"] = estimates;
    rep["pt_stats"] = pts;
    rep["cost_probes"] = costs;
    rep["f_vs_cycles"] = f_vs_cycles;
    rep["f_vs_noise"] = f_vs_noise;
    rep["acceptance"] = acceptance;
    ojson missing = ojson::array();
    for (const char* k : {"estimates", "pt_stats", "cost_probes", "acceptance"})
      if (rep[k].empty()) missing.push_back(k);
    rep["missing"] = missing;
    rep["unreadable"] = unreadable;
    rep["provenance"] = provenance({}, nullptr);
    return rep;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::string command_line_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return App(out, err).run(args);
}

}  // namespace rcs::cli
