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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddb/pauli.hpp"
#include "ddb/reconstruct.hpp"
#include "json.hpp"

namespace ddb {

enum class StateKind { Random, Mixed, Balanced, Separable, Entangled };

std::string to_string(StateKind k);
std::optional<StateKind> parse_state_kind(std::string_view text);

/// "direct", "sdp", "band:<b>" (band reconstruction from the width-b bases),
/// "pauli-cs:<m>" (baseline with m random Pauli strings).
struct MethodSpec {
  enum class Kind { Direct, Sdp, Band, PauliCs };
  Kind kind = Kind::Direct;
  int param = 0;

  std::string tag() const;
  /// Throws std::invalid_argument on unknown methods.
  static MethodSpec parse(std::string_view text);
  bool operator==(const MethodSpec &) const = default;
};

struct ExperimentConfig {
  int dim = 6;
  /// Rank of the random states; echoed in the r column for every state kind.
  std::vector<int> ranks{1};
  /// 0 means exact probabilities.
  std::vector<std::uint64_t> shots{0};
  int trials = 20;
  std::uint64_t seed = 1;
  std::vector<MethodSpec> methods{MethodSpec{}};
  StateKind state = StateKind::Random;
  int threads = 1;
  SdpOptions sdp;
  RankOptions rank;
  PauliCsOptions pauli;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const ExperimentConfig &c);

struct TrialRow {
  int d = 0;
  int r = 0;
  std::string method;
  std::uint64_t shots = 0;
  int trial = 0;
  double frobenius = 0.0;
  double fidelity = 0.0;
  int iters = 0;
  std::string flags;
  int settings = 0;    // measurement bases (or Pauli observables)
  int projectors = 0;  // measured outcome projectors
};

/// One row per (r, method, shots, trial), in that order regardless of thread
/// count. Every trial draws its state and samples from seeds derived from the
/// config seed, so the state and counts are shared across methods.
std::vector<TrialRow> run_experiment(const ExperimentConfig &cfg);

/// The state used by trial `trial` at rank r.
DensityMatrix experiment_state(const ExperimentConfig &cfg, int r, int trial);

struct SummaryRow {
  int d = 0;
  int r = 0;
  std::string method;
  std::uint64_t shots = 0;
  int trials = 0;
  double frobenius_mean = 0.0;
  double frobenius_std = 0.0;
  double fidelity_mean = 0.0;
  double fidelity_std = 0.0;
  double fidelity_median = 0.0;
  int settings = 0;
  int projectors = 0;
};

/// Mean, sample standard deviation and median per (r, method, shots).
std::vector<SummaryRow> summarize(const std::vector<TrialRow> &rows);

std::string trials_csv(const std::vector<TrialRow> &rows);
std::string summary_csv(const std::vector<SummaryRow> &rows);

struct ErrorSweepPoint {
  double eps = 0.0;
  double sq_error = 0.0;  // squared Frobenius error, averaged over trials
};

struct ErrorSweep {
  int d = 0;
  std::vector<ErrorSweepPoint> points;
  std::optional<double> slope;  // log-log fit over eps > 0
};

/// Direct reconstruction from perturbed probabilities of random full-rank
/// states.
ErrorSweep error_sweep(int d, const std::vector<double> &eps, std::uint64_t seed, int trials = 1);
std::string error_sweep_csv(const ErrorSweep &s);

/// Least-squares slope of log y against log x over positive pairs; nullopt
/// with fewer than two usable points.
std::optional<double> loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace ddb
