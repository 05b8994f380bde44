// Copyright 2026 The DDB Tomography Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: partitions, bases, circuits, element measurements,
// simulation, reconstruction and experiment sweeps.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ddb/bases.hpp"
#include "ddb/circuits.hpp"
#include "ddb/error.hpp"
#include "ddb/experiment.hpp"
#include "ddb/partitions.hpp"
#include "ddb/random.hpp"
#include "ddb/reconstruct.hpp"
#include "ddb/serialize.hpp"
#include "ddb/simulator.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
};

void emit(const Globals &g, const std::string &text, const std::string &path_override = "") {
  const std::string &path = path_override.empty() ? g.out : path_override;
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write to " + path);
  f << text;
  if (!f) throw UsageError("failed writing " + path);
}

std::string dump(const ddb::json &j) { return j.dump(2) + "\n"; }

ddb::BasisLabel parse_label(const std::string &text) {
  const auto l = ddb::BasisLabel::parse(text);
  if (!l) throw UsageError("bad basis label '" + text + "'");
  return *l;
}

ddb::PowerMode parse_mode(const std::string &text) {
  if (text == "binary") return ddb::PowerMode::Binary;
  if (text == "signed-digit") return ddb::PowerMode::SignedDigit;
  throw UsageError("unknown mode '" + text + "'");
}

ddb::json location_json(const ddb::BasisLabel &label, std::uint64_t bits, int n) {
  std::string s;
  for (int q = 0; q < n; ++q) s.push_back(((bits >> (n - 1 - q)) & 1) ? '1' : '0');
  return {{"basis", label.to_string()}, {"bitstring", s}, {"index", bits}};
}

std::string summary_path(const std::string &out) {
  std::filesystem::path p(out);
  const auto stem = p.stem().string();
  return (p.parent_path() / (stem + "_summary.csv")).string();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dense dual basis tomography toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Base seed for every stochastic step")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format (json, text, csv; command dependent)");

  // partitions
  auto *partitions = app.add_subcommand("partitions", "Pair-cover partitions for dimension d");
  int p_dim = 0;
  partitions->add_option("--dim", p_dim, "Dimension d >= 2")->required()->check(CLI::Range(2, 4096));

  // bases
  auto *bases = app.add_subcommand("bases", "Dump DDB vectors");
  int b_dim = 0;
  std::string b_label;
  bases->add_option("--dim", b_dim, "Dimension d >= 2")->required()->check(CLI::Range(2, 1024));
  bases->add_option("--label", b_label, "Single basis, e.g. B3 or C5");

  // circuits
  auto *circuits = app.add_subcommand("circuits", "Measurement circuit for one basis of dimension 2^n");
  int c_n = 0;
  std::string c_label, c_emit = "gatelist", c_mode = "binary";
  bool c_counts = false;
  circuits->add_option("--n", c_n, "Number of qubits")->required()->check(CLI::Range(1, 16));
  circuits->add_option("--label", c_label, "Basis label")->required();
  circuits->add_option("--emit", c_emit, "gatelist | qasm | json")->check(CLI::IsMember({"gatelist", "qasm", "json"}));
  circuits->add_option("--mode", c_mode, "binary | signed-digit")->check(CLI::IsMember({"binary", "signed-digit"}));
  circuits->add_flag("--counts", c_counts, "Append gate-count report");

  // element
  auto *element = app.add_subcommand("element", "Three measurements that determine rho_jk");
  int e_n = 0;
  std::uint64_t e_j = 0, e_k = 0;
  std::string e_mode = "binary";
  element->add_option("--n", e_n, "Number of qubits")->required()->check(CLI::Range(1, 16));
  element->add_option("--j", e_j, "Row index")->required();
  element->add_option("--k", e_k, "Column index (> j)")->required();
  element->add_option("--mode", e_mode, "binary | signed-digit")->check(CLI::IsMember({"binary", "signed-digit"}));

  // simulate
  auto *simulate = app.add_subcommand("simulate", "Sample counts for every basis of the family");
  int s_dim = 0, s_rank = 1;
  std::uint64_t s_shots = 1000;
  std::string s_state = "random";
  simulate->add_option("--dim", s_dim, "Dimension")->required()->check(CLI::Range(2, 256));
  simulate->add_option("--rank", s_rank, "Rank of the random state");
  simulate->add_option("--state", s_state, "random | mixed | balanced | separable | entangled");
  simulate->add_option("--shots", s_shots, "Shots per basis")->check(CLI::PositiveNumber);

  // reconstruct
  auto *reconstruct = app.add_subcommand("reconstruct", "Estimate the state from a counts file");
  std::string r_counts, r_method = "direct";
  bool r_project = false;
  reconstruct->add_option("--counts", r_counts, "Counts JSON file")->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--method", r_method, "direct | sdp | band:<r>");
  reconstruct->add_flag("--project", r_project, "Project the direct estimate onto density matrices");

  // experiment
  auto *experiment = app.add_subcommand("experiment", "Simulate, reconstruct and score over trials");
  std::string x_config, x_state = "random";
  int x_dim = 6, x_trials = 20;
  int x_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<int> x_ranks{1}, x_num;
  std::vector<std::uint64_t> x_shots{0};
  std::vector<std::string> x_methods{"direct"};
  experiment->add_option("--config", x_config, "JSON config; command-line values are ignored when given")
      ->check(CLI::ExistingFile);
  experiment->add_option("--dim", x_dim, "Dimension")->check(CLI::Range(2, 256));
  experiment->add_option("--ranks", x_ranks, "Ranks of the random states")->delimiter(',');
  experiment->add_option("--shots", x_shots, "Shots per basis; 0 = exact probabilities")->delimiter(',');
  experiment->add_option("--num", x_num, "Shot exponents: shots = 100 * 2^num")->delimiter(',');
  experiment->add_option("--trials", x_trials, "Repetitions per point")->check(CLI::PositiveNumber);
  experiment->add_option("--methods", x_methods, "direct, sdp, band:<b>, pauli-cs:<m>")->delimiter(',');
  experiment->add_option("--state", x_state, "random | mixed | balanced | separable | entangled");
  experiment->add_option("--threads", x_threads, "Worker threads")->check(CLI::PositiveNumber);

  // error-sweep
  auto *sweep = app.add_subcommand("error-sweep", "Squared error of direct reconstruction vs basis disturbance");
  int w_dim = 8, w_trials = 1;
  std::vector<double> w_eps{0.01, 0.02, 0.05, 0.1};
  sweep->add_option("--dim", w_dim, "Dimension")->check(CLI::Range(2, 256));
  sweep->add_option("--eps-grid", w_eps, "Disturbance strengths")->delimiter(',');
  sweep->add_option("--trials", w_trials, "Random states averaged per point")->check(CLI::PositiveNumber);

  for (auto *sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*partitions) {
      const auto ps = ddb::construct_partitions(p_dim);
      if (g.format.empty() || g.format == "json") {
        emit(g, dump(ddb::to_json(ps)));
      } else if (g.format == "text") {
        emit(g, ddb::partitions_text(ps));
      } else {
        throw UsageError("partitions: --format must be json or text");
      }
    } else if (*bases) {
      const ddb::DdbFamily fam(b_dim);
      if (b_label.empty()) {
        emit(g, dump(ddb::to_json(fam)));
      } else {
        const auto label = parse_label(b_label);
        if (!fam.contains(label)) throw UsageError("basis " + b_label + " is not part of the d=" + std::to_string(b_dim) + " family");
        auto j = ddb::to_json(fam.basis(label));
        j["schema"] = ddb::kSchemaVersion;
        emit(g, dump(j));
      }
    } else if (*circuits) {
      const auto spec = ddb::synth_basis_circuit(c_n, parse_label(c_label), parse_mode(c_mode));
      std::string text;
      if (c_emit == "qasm") {
        text = ddb::to_qasm(spec);
      } else if (c_emit == "json" || g.format == "json") {
        auto j = ddb::to_json(spec);
        j["schema"] = ddb::kSchemaVersion;
        if (c_counts) {
          j["counts"] = {ddb::to_json(ddb::gate_count(spec.circuit, ddb::CountModel::Expanded)),
                         ddb::to_json(ddb::gate_count(spec.circuit, ddb::CountModel::BarencoEstimate))};
        }
        text = dump(j);
      } else {
        text = ddb::to_gatelist(spec.circuit);
        text += "# layer " + ddb::layer_string(spec.layer) + "\n";
      }
      if (c_counts && c_emit != "json" && g.format != "json") {
        const auto ex = ddb::gate_count(spec.circuit, ddb::CountModel::Expanded);
        const auto est = ddb::gate_count(spec.circuit, ddb::CountModel::BarencoEstimate);
        std::ostringstream os;
        os << "# gates expanded " << ex.total << " (ancillas " << ex.ancillas << ")";
        for (const auto &[k, n] : ex.by_kind) os << ' ' << ddb::gate_name(k) << '=' << n;
        os << "\n# gates barenco-estimate " << ddb::format_double(est.total) << "\n";
        text += os.str();
      }
      emit(g, text);
    } else if (*element) {
      const auto es = ddb::element_circuits(e_n, e_j, e_k, parse_mode(e_mode));
      ddb::json j = {{"schema", ddb::kSchemaVersion},
                     {"n", e_n},
                     {"j", e_j},
                     {"k", e_k},
                     {"first_diff", es.first_diff},
                     {"shift", es.shift},
                     {"partition", es.t},
                     {"diag", ddb::to_json(es.diag)},
                     {"phi", ddb::to_json(es.phi)},
                     {"psi", ddb::to_json(es.psi)}};
      j["recipe"] = {{"rho_jj", location_json(es.diag.label, e_j, e_n)},
                     {"rho_kk", location_json(es.diag.label, e_k, e_n)},
                     {"p_phi_plus", location_json(es.phi.label, es.phi_plus_outcome, e_n)},
                     {"p_psi_plus", location_json(es.psi.label, es.psi_plus_outcome, e_n)},
                     {"formula", "rho_jk = (p_phi_plus - i p_psi_plus) - ((1 - i) / 2) (rho_jj + rho_kk)"}};
      emit(g, dump(j));
    } else if (*simulate) {
      const auto kind = ddb::parse_state_kind(s_state);
      if (!kind) throw UsageError("unknown state '" + s_state + "'");
      ddb::ExperimentConfig cfg;
      cfg.dim = s_dim;
      cfg.state = *kind;
      cfg.seed = g.seed;
      cfg.ranks = {s_rank};
      cfg.trials = 1;
      cfg.validate();
      const auto rho = ddb::experiment_state(cfg, s_rank, 0);
      const ddb::DdbFamily fam(s_dim);
      ddb::CountsFile cf{s_dim, s_shots, {}};
      for (const auto &b : fam.bases()) {
        const auto seed = ddb::derive_seed(g.seed, {ddb::label_tag("simulate"), ddb::label_tag(b.label.to_string())});
        cf.records.push_back({b.label, ddb::sample_counts(ddb::born_probs(rho, b), s_shots, seed)});
      }
      emit(g, dump(ddb::to_json(cf)));
    } else if (*reconstruct) {
      std::ifstream f(r_counts);
      ddb::json j;
      try {
        j = ddb::json::parse(f);
      } catch (const ddb::json::exception &e) {
        throw UsageError(std::string("counts file: ") + e.what());
      }
      const auto cf = ddb::counts_from_json(j);
      const auto probs = ddb::to_prob_table(cf);
      ddb::ReconstructionReport rep;
      if (r_method == "direct") {
        rep = ddb::direct_full(probs, cf.dim, {r_project});
      } else if (r_method == "sdp") {
        rep = ddb::refine_sdp(probs, cf.dim);
      } else {
        const auto m = ddb::MethodSpec::parse(r_method);
        if (m.kind != ddb::MethodSpec::Kind::Band) throw UsageError("reconstruct: unsupported method " + r_method);
        rep = ddb::rank_r_reconstruct(ddb::band_from_family(probs, cf.dim, m.param));
      }
      emit(g, dump(ddb::to_json(rep)));
    } else if (*experiment) {
      ddb::ExperimentConfig cfg;
      if (!x_config.empty()) {
        std::ifstream f(x_config);
        try {
          cfg = ddb::config_from_json(ddb::json::parse(f));
        } catch (const ddb::json::exception &e) {
          throw UsageError(std::string("config file: ") + e.what());
        }
      } else {
        cfg.dim = x_dim;
        cfg.ranks = x_ranks;
        cfg.shots = x_shots;
        if (!x_num.empty()) {
          cfg.shots.clear();
          for (int num : x_num) {
            if (num < 0 || num >= 40) throw UsageError("--num values must be in [0, 40)");
            cfg.shots.push_back(std::uint64_t{100} << num);
          }
        }
        cfg.trials = x_trials;
        cfg.seed = g.seed;
        cfg.methods.clear();
        for (const auto &m : x_methods) cfg.methods.push_back(ddb::MethodSpec::parse(m));
        const auto kind = ddb::parse_state_kind(x_state);
        if (!kind) throw UsageError("unknown state '" + x_state + "'");
        cfg.state = *kind;
        cfg.threads = x_threads;
        cfg.validate();
      }
      const auto rows = ddb::run_experiment(cfg);
      const auto summary = ddb::summarize(rows);
      if (g.out.empty()) {
        std::cout << ddb::trials_csv(rows) << '\n' << ddb::summary_csv(summary);
      } else {
        emit(g, ddb::trials_csv(rows));
        emit(g, ddb::summary_csv(summary), summary_path(g.out));
      }
    } else if (*sweep) {
      const auto s = ddb::error_sweep(w_dim, w_eps, g.seed, w_trials);
      std::string text = ddb::error_sweep_csv(s);
      if (s.slope) {
        text += "# slope " + ddb::format_double(*s.slope) + "\n";
      } else {
        text += "# slope n/a\n";
      }
      emit(g, text);
    }
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ddb::NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
