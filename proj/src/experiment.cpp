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

#include "ddb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ddb/random.hpp"
#include "ddb/serialize.hpp"
#include "ddb/simulator.hpp"

namespace ddb {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok) throw std::invalid_argument(what);
}

struct Job {
  int r;
  std::size_t method;
  std::uint64_t shots;
  int trial;
};

ProbTable measured_probs(const DensityMatrix &rho, const DdbFamily &fam, const std::vector<BasisLabel> &labels,
                         std::uint64_t shots, std::uint64_t seed) {
  ProbTable exact;
  for (const auto &l : labels) exact.emplace(l, born_probs(rho, fam.basis(l)));
  if (shots == 0) return exact;
  return sample_table(exact, shots, seed);
}

std::string flag_string(const ReconstructionReport &rep) {
  std::string s;
  auto add = [&](const std::string &tok) {
    if (!s.empty()) s += ' ';
    s += tok;
  };
  if (!rep.converged) add("noconv");
  if (!rep.singular_flags.empty()) add("singular=" + std::to_string(rep.singular_flags.size()));
  if (!rep.adaptive_removed.empty()) add("removed=" + std::to_string(rep.adaptive_removed.size()));
  return s;
}

TrialRow run_job(const ExperimentConfig &cfg, const DdbFamily &fam, const Job &job) {
  const int d = cfg.dim;
  const auto &m = cfg.methods[job.method];
  const auto rho = experiment_state(cfg, job.r, job.trial);
  const auto sample_seed = derive_seed(cfg.seed, {label_tag("shots"), static_cast<std::uint64_t>(job.r), job.shots,
                                                  static_cast<std::uint64_t>(job.trial)});
  TrialRow row;
  row.d = d;
  row.r = job.r;
  row.method = m.tag();
  row.shots = job.shots;
  row.trial = job.trial;

  ReconstructionReport rep;
  switch (m.kind) {
    case MethodSpec::Kind::Direct:
    case MethodSpec::Kind::Sdp: {
      std::vector<BasisLabel> labels;
      for (const auto &b : fam.bases()) labels.push_back(b.label);
      const auto probs = measured_probs(rho, fam, labels, job.shots, sample_seed);
      rep = m.kind == MethodSpec::Kind::Direct ? direct_full(probs, fam) : refine_sdp(probs, fam, cfg.sdp);
      row.settings = static_cast<int>(labels.size());
      row.projectors = row.settings * d;
      break;
    }
    case MethodSpec::Kind::Band: {
      const auto labels = band_bases(fam, m.param);
      const auto probs = measured_probs(rho, fam, labels, job.shots, sample_seed);
      rep = rank_r_reconstruct(band_from_family(probs, fam, m.param), cfg.rank);
      row.settings = static_cast<int>(labels.size());
      row.projectors = row.settings * d;
      break;
    }
    case MethodSpec::Kind::PauliCs: {
      const auto pauli_seed = derive_seed(cfg.seed, {label_tag("pauli"), static_cast<std::uint64_t>(job.r), job.shots,
                                                     static_cast<std::uint64_t>(job.trial)});
      rep = pauli_cs_baseline(pauli_measure(rho, m.param, pauli_seed, job.shots), cfg.pauli);
      row.settings = m.param;
      row.projectors = 2 * m.param;
      break;
    }
  }
  row.frobenius = frobenius_distance(rep.estimate, rho.matrix());
  row.fidelity = uhlmann_fidelity(rho, rep.state());
  row.iters = rep.iterations;
  row.flags = flag_string(rep);
  return row;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::pair<double, double> mean_std(const std::vector<double> &v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

std::string to_string(StateKind k) {
  switch (k) {
    case StateKind::Random:
      return "random";
    case StateKind::Mixed:
      return "mixed";
    case StateKind::Balanced:
      return "balanced";
    case StateKind::Separable:
      return "separable";
    case StateKind::Entangled:
      return "entangled";
  }
  return "?";
}

std::optional<StateKind> parse_state_kind(std::string_view text) {
  for (auto k : {StateKind::Random, StateKind::Mixed, StateKind::Balanced, StateKind::Separable, StateKind::Entangled}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string MethodSpec::tag() const {
  switch (kind) {
    case Kind::Direct:
      return "direct";
    case Kind::Sdp:
      return "sdp";
    case Kind::Band:
      return "band:" + std::to_string(param);
    case Kind::PauliCs:
      return "pauli-cs:" + std::to_string(param);
  }
  return "?";
}

MethodSpec MethodSpec::parse(std::string_view text) {
  if (text == "direct") return {Kind::Direct, 0};
  if (text == "sdp") return {Kind::Sdp, 0};
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto head = text.substr(0, colon);
    const auto tail = text.substr(colon + 1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), v);
    if (ec == std::errc() && ptr == tail.data() + tail.size() && v >= 1) {
      if (head == "band") return {Kind::Band, v};
      if (head == "pauli-cs") return {Kind::PauliCs, v};
    }
  }
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  require(dim >= 2 && dim <= 256, "config: dim must be in [2, 256]");
  require(trials >= 1, "config: trials must be >= 1");
  require(!ranks.empty(), "config: ranks must be nonempty");
  require(!shots.empty(), "config: shots schedule must be nonempty");
  require(!methods.empty(), "config: methods must be nonempty");
  require(threads >= 1, "config: threads must be >= 1");
  for (int r : ranks) require(r >= 1 && r <= dim, "config: rank " + std::to_string(r) + " outside [1, dim]");
  if (state != StateKind::Random) require(dim == 6, "config: qubit-qutrit states need dim 6");
  for (const auto &m : methods) {
    if (m.kind == MethodSpec::Kind::Band) {
      require(m.param <= dim - 1, "config: band width exceeds dim - 1 in " + m.tag());
    }
    if (m.kind == MethodSpec::Kind::PauliCs) {
      require(dim >= 2 && (dim & (dim - 1)) == 0, "config: " + m.tag() + " needs a power-of-two dim");
      require(static_cast<long long>(m.param) <= static_cast<long long>(dim) * dim,
              "config: too many Pauli observables in " + m.tag());
    }
  }
}

ExperimentConfig config_from_json(const nlohmann::json &j) {
  require(j.is_object(), "config: expected an object");
  ExperimentConfig c;
  if (j.contains("schema")) require(j.at("schema") == kSchemaVersion, "config: unsupported schema version");
  if (j.contains("dim")) c.dim = j.at("dim").get<int>();
  if (j.contains("ranks")) c.ranks = j.at("ranks").get<std::vector<int>>();
  if (j.contains("shots")) c.shots = j.at("shots").get<std::vector<std::uint64_t>>();
  if (j.contains("num")) {
    c.shots.clear();
    for (int num : j.at("num").get<std::vector<int>>()) {
      require(num >= 0 && num < 40, "config: num out of range");
      c.shots.push_back(std::uint64_t{100} << num);
    }
  }
  if (j.contains("trials")) c.trials = j.at("trials").get<int>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto &m : j.at("methods")) c.methods.push_back(MethodSpec::parse(m.get<std::string>()));
  }
  if (j.contains("state")) {
    const auto s = parse_state_kind(j.at("state").get<std::string>());
    require(s.has_value(), "config: unknown state kind");
    c.state = *s;
  }
  if (j.contains("sdp_max_iter")) c.sdp.max_iter = j.at("sdp_max_iter").get<int>();
  if (j.contains("sdp_tol")) c.sdp.tol = j.at("sdp_tol").get<double>();
  if (j.contains("pocs_max_iter")) c.rank.max_iter = j.at("pocs_max_iter").get<int>();
  if (j.contains("pocs_tol")) c.rank.tol = j.at("pocs_tol").get<double>();
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig &c) {
  std::vector<std::string> methods;
  for (const auto &m : c.methods) methods.push_back(m.tag());
  return {{"schema", kSchemaVersion}, {"dim", c.dim},           {"ranks", c.ranks},
          {"shots", c.shots},         {"trials", c.trials},     {"seed", c.seed},
          {"methods", methods},       {"state", to_string(c.state)}, {"threads", c.threads},
          {"sdp_max_iter", c.sdp.max_iter}, {"sdp_tol", c.sdp.tol}, {"pocs_max_iter", c.rank.max_iter},
          {"pocs_tol", c.rank.tol}};
}

DensityMatrix experiment_state(const ExperimentConfig &cfg, int r, int trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  if (cfg.state == StateKind::Random) {
    return random_rank_r_dm(cfg.dim, r, derive_seed(cfg.seed, {label_tag("state"), static_cast<std::uint64_t>(r), t}));
  }
  const auto seed = derive_seed(cfg.seed, {label_tag("state"), t});
  switch (cfg.state) {
    case StateKind::Mixed:
      return qubit_qutrit_state(QubitQutritState::Mixed, seed);
    case StateKind::Balanced:
      return qubit_qutrit_state(QubitQutritState::Balanced, seed);
    case StateKind::Separable:
      return qubit_qutrit_state(QubitQutritState::Separable, seed);
    case StateKind::Entangled:
      return qubit_qutrit_state(QubitQutritState::Entangled, seed);
    case StateKind::Random:
      break;
  }
  throw std::invalid_argument("unknown state kind");
}

std::vector<TrialRow> run_experiment(const ExperimentConfig &cfg) {
  cfg.validate();
  const DdbFamily fam(cfg.dim);
  std::vector<Job> jobs;
  for (int r : cfg.ranks) {
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      for (auto s : cfg.shots) {
        for (int t = 0; t < cfg.trials; ++t) jobs.push_back({r, m, s, t});
      }
    }
  }
  std::vector<TrialRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        rows[i] = run_job(cfg, fam, jobs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
        return;
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::min<std::size_t>(cfg.threads, jobs.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRow> &rows) {
  std::vector<SummaryRow> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    std::vector<double> frob, fid;
    while (j < rows.size() && rows[j].r == rows[i].r && rows[j].method == rows[i].method &&
           rows[j].shots == rows[i].shots && rows[j].d == rows[i].d) {
      frob.push_back(rows[j].frobenius);
      fid.push_back(rows[j].fidelity);
      ++j;
    }
    SummaryRow s;
    s.d = rows[i].d;
    s.r = rows[i].r;
    s.method = rows[i].method;
    s.shots = rows[i].shots;
    s.trials = static_cast<int>(j - i);
    std::tie(s.frobenius_mean, s.frobenius_std) = mean_std(frob);
    std::tie(s.fidelity_mean, s.fidelity_std) = mean_std(fid);
    s.fidelity_median = median(fid);
    s.settings = rows[i].settings;
    s.projectors = rows[i].projectors;
    out.push_back(std::move(s));
    i = j;
  }
  return out;
}

std::string trials_csv(const std::vector<TrialRow> &rows) {
  std::string out = "d,r,method,shots,trial,frobenius,fidelity,iters,flags,settings,projectors\n";
  for (const auto &r : rows) {
    out += std::to_string(r.d) + ',' + std::to_string(r.r) + ',' + r.method + ',' + std::to_string(r.shots) + ',' +
           std::to_string(r.trial) + ',' + format_double(r.frobenius) + ',' + format_double(r.fidelity) + ',' +
           std::to_string(r.iters) + ',' + r.flags + ',' + std::to_string(r.settings) + ',' +
           std::to_string(r.projectors) + '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow> &rows) {
  std::string out =
      "d,r,method,shots,trials,frobenius_mean,frobenius_std,fidelity_mean,fidelity_std,fidelity_median,settings,"
      "projectors\n";
  for (const auto &s : rows) {
    out += std::to_string(s.d) + ',' + std::to_string(s.r) + ',' + s.method + ',' + std::to_string(s.shots) + ',' +
           std::to_string(s.trials) + ',' + format_double(s.frobenius_mean) + ',' + format_double(s.frobenius_std) +
           ',' + format_double(s.fidelity_mean) + ',' + format_double(s.fidelity_std) + ',' +
           format_double(s.fidelity_median) + ',' + std::to_string(s.settings) + ',' + std::to_string(s.projectors) +
           '\n';
  }
  return out;
}

ErrorSweep error_sweep(int d, const std::vector<double> &eps, std::uint64_t seed, int trials) {
  require(trials >= 1, "error_sweep: trials must be >= 1");
  require(!eps.empty(), "error_sweep: empty eps grid");
  const DdbFamily fam(d);
  ErrorSweep out;
  out.d = d;
  for (double e : eps) {
    require(e >= 0.0 && std::isfinite(e), "error_sweep: eps must be finite and >= 0");
    double acc = 0.0;
    for (int t = 0; t < trials; ++t) {
      const auto rho = random_rank_r_dm(d, d, derive_seed(seed, {label_tag("error-sweep"), static_cast<std::uint64_t>(t)}));
      ProbTable probs;
      for (const auto &b : fam.bases()) probs.emplace(b.label, perturbed_probs(rho, b, e));
      const double f = frobenius_distance(direct_full(probs, fam).estimate, rho.matrix());
      acc += f * f;
    }
    out.points.push_back({e, acc / trials});
  }
  std::vector<double> xs, ys;
  for (const auto &p : out.points) {
    xs.push_back(p.eps);
    ys.push_back(p.sq_error);
  }
  out.slope = loglog_slope(xs, ys);
  return out;
}

std::string error_sweep_csv(const ErrorSweep &s) {
  std::string out = "d,eps,sq_frobenius\n";
  for (const auto &p : s.points) {
    out += std::to_string(s.d) + ',' + format_double(p.eps) + ',' + format_double(p.sq_error) + '\n';
  }
  return out;
}

std::optional<double> loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace ddb
