// Copyright 2026 The dpcp Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpcp/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dpcp/altsolvers.h"
#include "dpcp/dataset_io.h"
#include "dpcp/eval.h"
#include "dpcp/init.h"
#include "dpcp/kernels.h"
#include "dpcp/pointcloud.h"
#include "dpcp/psgm.h"
#include "dpcp/quantities.h"
#include "dpcp/random.h"
#include "dpcp/report_json.h"
#include "dpcp/synth.h"

namespace dpcp::cli {
namespace {

namespace fs = std::filesystem;

// Raised for invalid flag values discovered after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::optional<int> threads;
  bool deterministic = false;
  std::string out = ".";
};

struct Context {
  GlobalFlags global;
  ExecutionPolicy policy;
  std::vector<std::string> argv;
  std::ostream* out = nullptr;
};

ExecutionPolicy ResolvePolicy(const GlobalFlags& flags) {
  int threads = 0;
  if (flags.threads) {
    threads = *flags.threads;
  } else if (const char* env = std::getenv("DPCP_THREADS"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      threads = std::stoi(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("DPCP_THREADS must be an integer, got '") + env + "'");
    }
  }
  if (threads < 0) throw UsageError("thread count must be non-negative");
  ExecutionPolicy policy;
  policy.parallel = threads != 1;
  policy.threads = threads;
  policy.reduction = flags.deterministic ? ReductionMode::kDeterministic : ReductionMode::kFast;
  return policy;
}

fs::path OutputPath(const Context& ctx, const std::string& name) {
  const fs::path dir(ctx.global.out);
  fs::create_directories(dir);
  return dir / name;
}

std::ofstream OpenOutput(const fs::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw RuntimeError("cannot write " + path.string());
  file << std::setprecision(17);
  return file;
}

void WriteJson(const fs::path& path, const Json& json) {
  std::ofstream file = OpenOutput(path);
  file << json.dump(2) << '\n';
  if (!file) throw RuntimeError("failed writing " + path.string());
}

// The manifest carries everything needed to rerun the command: the argv,
// the resolved configuration and the global execution settings.
void WriteManifest(const Context& ctx, const std::string& command, const Json& config,
                   const std::vector<fs::path>& outputs) {
  Json files = Json::array();
  for (const auto& path : outputs) files.push_back(path.filename().string());
  const Json manifest{{"command", command},
                      {"argv", ctx.argv},
                      {"seed", ctx.global.seed},
                      {"threads", ctx.policy.threads},
                      {"deterministic", ctx.global.deterministic},
                      {"random_stream_version", kRandomStreamVersion},
                      {"binary_format_version", kBinaryFormatVersion},
                      {"config", config},
                      {"outputs", std::move(files)}};
  WriteJson(OutputPath(ctx, command + ".manifest.json"), manifest);
}

// Wall-clock readings are the only non-reproducible output; deterministic
// runs report them as zero so that output files compare byte for byte.
void ScrubTimings(const Context& ctx, SolveReport& report) {
  if (!ctx.global.deterministic) return;
  report.wall_nanos = 0;
  for (TraceRow& row : report.trace) row.wall_nanos = 0;
}

std::optional<SubspaceModel> TruthIfLabeled(const Dataset& data) {
  if (!data.labeled() || data.inlier_count() == 0) return std::nullopt;
  return TruthFromLabels(data);
}

// ---------------------------------------------------------------------------
// synth

struct SynthFlags {
  int D = 30;
  int d = 29;
  Eigen::Index N = 500;
  std::optional<Eigen::Index> M;
  std::optional<double> ratio;
  std::string format = "csv";
};

void RunSynth(const Context& ctx, const SynthFlags& flags) {
  if (flags.M && flags.ratio) throw UsageError("pass either --M or --ratio, not both");
  if (flags.ratio && !(*flags.ratio >= 0.0 && *flags.ratio < 1.0)) {
    throw UsageError("--ratio must lie in [0, 1)");
  }
  const Eigen::Index M = flags.M ? *flags.M : flags.ratio ? OutlierRatioToM(flags.N, *flags.ratio) : 0;
  const SphericalModelSpec spec{
      .D = flags.D, .d = flags.d, .N = flags.N, .M = M, .seed = ctx.global.seed};
  const SyntheticInstance instance = SampleSpherical(spec);

  const fs::path data_path = OutputPath(ctx, "dataset." + flags.format);
  SaveDataset(instance.data, data_path);
  const fs::path truth_path = OutputPath(ctx, "truth.json");
  const SubspaceModel model = instance.truth.model.Completed();
  Json basis = Json::array();
  for (Eigen::Index j = 0; j < model.basis().cols(); ++j) basis.push_back(ToJson(model.basis().col(j)));
  Json normals = Json::array();
  for (Eigen::Index j = 0; j < model.normals().cols(); ++j) {
    normals.push_back(ToJson(model.normals().col(j)));
  }
  WriteJson(truth_path, Json{{"basis", std::move(basis)}, {"normals", std::move(normals)}});

  const Json config{{"D", spec.D}, {"d", spec.d}, {"N", spec.N}, {"M", spec.M},
                    {"ratio", flags.ratio ? Json(*flags.ratio) : Json(nullptr)},
                    {"format", flags.format}};
  WriteManifest(ctx, "synth", config, {data_path, truth_path});
  *ctx.out << "wrote " << data_path.string() << " (D=" << spec.D << ", N=" << spec.N
           << ", M=" << spec.M << ")\n";
}

// ---------------------------------------------------------------------------
// fit

struct FitFlags {
  std::string data;
  std::string method = "psgm";
  std::string schedule = "pgd";
  std::string mu0 = "auto";
  int K0 = 30;
  int K = 4;
  double beta = 0.5;
  int max_iters = 1000;
  double grad_tol = 1e-10;
  std::optional<double> angle_tol;
  std::string init = "spectral";
  double delta = 1e-10;
  std::string lp = "dual";
};

StepSchedule BuildSchedule(const FitFlags& flags, double mu0) {
  if (flags.schedule == "const") return StepSchedule::Constant(mu0);
  if (flags.schedule == "harmonic") return StepSchedule::Harmonic(mu0);
  if (flags.schedule == "pgd") return StepSchedule::PiecewiseGeometric(mu0, flags.K0, flags.K, flags.beta);
  if (flags.schedule == "mbls") return StepSchedule::Mbls(mu0);
  throw UsageError("unknown schedule '" + flags.schedule + "'");
}

void RunFit(const Context& ctx, const FitFlags& flags) {
  const Dataset data = LoadDataset(flags.data);
  if (data.empty()) throw UsageError("dataset is empty");
  const std::optional<SubspaceModel> truth = TruthIfLabeled(data);

  UnitVector b0 = flags.init == "spectral" ? SpectralInit(data, ctx.policy)
                  : flags.init == "random" ? RandomInit(static_cast<int>(data.dim()), ctx.global.seed)
                                           : throw UsageError("unknown init '" + flags.init + "'");

  Json config{{"data", flags.data}, {"method", flags.method}, {"init", flags.init},
              {"max_iters", flags.max_iters}};
  SolveReport report{.final_b = b0};
  std::vector<double> extra_chain;
  if (flags.method == "psgm" || flags.method == "mbls") {
    const std::string schedule_name = flags.method == "mbls" ? "mbls" : flags.schedule;
    double mu0 = 0.0;
    if (flags.mu0 == "auto") {
      mu0 = BacktrackingInitialStep(data, b0);
    } else {
      try {
        mu0 = std::stod(flags.mu0);
      } catch (const std::exception&) {
        throw UsageError("--mu0 must be 'auto' or a number");
      }
    }
    FitFlags resolved = flags;
    resolved.schedule = schedule_name;
    SolveOptions options{.schedule = BuildSchedule(resolved, mu0),
                         .max_iters = flags.max_iters,
                         .angle_tol = flags.angle_tol,
                         .grad_tol = flags.grad_tol,
                         .seed = ctx.global.seed,
                         .policy = ctx.policy};
    options.schedule.Validate();
    config["schedule"] = ToJson(options.schedule);
    config["mu0_source"] = flags.mu0 == "auto" ? "backtracking" : "flag";
    config["grad_tol"] = flags.grad_tol;
    report = Solve(data, b0, options, truth);
  } else if (flags.method == "alp") {
    AlpSolveOptions options{.max_iters = flags.max_iters, .angle_tol = flags.angle_tol};
    if (flags.lp == "primal") {
      options.step.formulation = AlpFormulation::kPrimal;
    } else if (flags.lp != "dual") {
      throw UsageError("--lp must be dual or primal");
    }
    config["lp"] = flags.lp;
    AlpSolveReport alp = AlpSolve(data, b0, options, truth);
    report = std::move(alp.report);
    extra_chain = std::move(alp.objective_chain);
  } else if (flags.method == "irls") {
    IrlsOptions options{.delta = flags.delta, .max_iters = flags.max_iters, .policy = ctx.policy};
    config["delta"] = flags.delta;
    IrlsReport irls = IrlsSolve(data, b0, options, truth);
    report = std::move(irls.report);
    extra_chain = std::move(irls.damped_objective);
  } else {
    throw UsageError("unknown method '" + flags.method + "'");
  }
  ScrubTimings(ctx, report);

  Json result = ToJson(report);
  if (!extra_chain.empty()) {
    Json chain = Json::array();
    for (double v : extra_chain) chain.push_back(JsonNumber(v));
    result[flags.method == "alp" ? "objective_chain" : "damped_objective"] = std::move(chain);
  }
  const fs::path report_path = OutputPath(ctx, "fit.json");
  WriteJson(report_path, result);
  const fs::path trace_path = OutputPath(ctx, "trace.csv");
  {
    std::ofstream trace = OpenOutput(trace_path);
    WriteTraceCsv(report, trace);
  }
  WriteManifest(ctx, "fit", config, {report_path, trace_path});
  *ctx.out << std::setprecision(17) << "objective " << report.final_objective << " iters "
           << report.iters << " termination " << TerminationName(report.termination) << '\n';
}

// ---------------------------------------------------------------------------
// quantities

struct QuantitiesFlags {
  std::string data;
  std::int64_t budget = 4000;
  std::optional<double> t;
  double C0 = 1.0;
};

void RunQuantities(const Context& ctx, const QuantitiesFlags& flags) {
  const Dataset data = LoadDataset(flags.data);
  const std::optional<SubspaceModel> truth = TruthIfLabeled(data);
  if (!truth) throw UsageError("quantities need a labeled dataset with inliers");
  const GeometryStats stats =
      EstimateStats(data, *truth, {.budget = flags.budget, .seed = ctx.global.seed});
  const UnitVector b0 = SpectralInit(data, ctx.policy);
  const AngleReading angle = PrincipalAngle(truth->Completed(), b0);

  Json conditions = Json::array();
  conditions.push_back(ToJson(CheckGlobalOptimality(stats)));
  conditions.push_back(ToJson(CheckPsgmPreconditions(stats, angle.theta_from_complement)));
  conditions.push_back(ToJson(CheckAlpConditions(stats, angle.phi_from_S)));
  conditions.push_back(ToJson(CheckSpectralPsgm(stats, data)));
  if (flags.t) {
    conditions.push_back(ToJson(CheckRandomModelBound({.N = stats.N,
                                                       .M = stats.M,
                                                       .D = static_cast<int>(stats.D),
                                                       .d = static_cast<int>(stats.d),
                                                       .t = *flags.t,
                                                       .C0 = flags.C0})));
  }
  const AlpAngles angles = ComputeAlpAngles(stats);
  const Json result{{"stats", ToJson(stats)},
                    {"spectral_theta0", angle.theta_from_complement},
                    {"spectral_phi0", angle.phi_from_S},
                    {"mu_prime", JsonNumber(MuPrime(stats))},
                    {"alp_angles",
                     {{"phi_natural", JsonNumber(angles.phi_natural)},
                      {"phi_star", JsonNumber(angles.phi_star)},
                      {"vacuous", angles.vacuous},
                      {"clamped", angles.clamped}}},
                    {"conditions", std::move(conditions)}};
  const fs::path path = OutputPath(ctx, "quantities.json");
  WriteJson(path, result);
  const Json config{{"data", flags.data}, {"budget", flags.budget},
                    {"t", flags.t ? Json(*flags.t) : Json(nullptr)}, {"C0", flags.C0}};
  WriteManifest(ctx, "quantities", config, {path});
  *ctx.out << "wrote " << path.string() << '\n';
}

// ---------------------------------------------------------------------------
// phase

struct PhaseFlags {
  std::vector<Eigen::Index> Ms{50, 100, 200, 400, 800, 1600, 3200};
  // Quarter-octave steps from 16 to 512.
  std::vector<Eigen::Index> Ns{16, 19, 23, 27, 32, 38, 45, 54, 64, 76, 91, 108, 128, 152, 181, 215, 256, 304, 362, 431, 512};
  int D = 10;
  int d = 9;
  int trials = 10;
  double theta_star = 0.01;
  int max_iters = 500;
  std::string init = "spectral";
};

void RunPhase(const Context& ctx, const PhaseFlags& flags) {
  PhaseConfig config{.Ms = flags.Ms,
                     .Ns = flags.Ns,
                     .D = flags.D,
                     .d = flags.d,
                     .theta_star = flags.theta_star,
                     .trials = flags.trials,
                     .seed = ctx.global.seed};
  config.solver.schedule = StepSchedule::PiecewiseGeometric(1e-2);
  config.solver.max_iters = flags.max_iters;
  config.solver.record_trace = false;
  config.solver.policy = ctx.policy;
  if (flags.init == "random") {
    config.init = InitKind::kRandom;
  } else if (flags.init != "spectral") {
    throw UsageError("--init must be spectral or random");
  }
  const PhaseGrid grid = PhaseTransition(config);
  const fs::path csv_path = OutputPath(ctx, "phase.csv");
  {
    std::ofstream csv = OpenOutput(csv_path);
    WritePhaseCsv(grid, csv);
  }
  const fs::path json_path = OutputPath(ctx, "phase.json");
  const Json json = ToJson(grid);
  WriteJson(json_path, json);
  WriteManifest(ctx, "phase", json["config"], {csv_path, json_path});
  *ctx.out << "boundary fit: a=" << grid.boundary.a << " loglog_slope=" << grid.boundary.loglog_slope
           << '\n';
}

// ---------------------------------------------------------------------------
// grid-alp

struct GridFlags {
  Eigen::Index N = 500;
  int D = 30;
  std::vector<double> ratios{0.1, 0.3, 0.5, 0.7};
  std::vector<double> rel_dims{0.1, 0.3, 0.5, 0.7, 0.9};
  int trials = 10;
  std::int64_t budget = 4000;
  int alp_iters = 3;
};

void RunGridAlp(const Context& ctx, const GridFlags& flags) {
  const ConditionGridConfig config{.N = flags.N,
                                   .D = flags.D,
                                   .ratios = flags.ratios,
                                   .rel_dims = flags.rel_dims,
                                   .trials = flags.trials,
                                   .seed = ctx.global.seed,
                                   .estimator = {.budget = flags.budget, .seed = ctx.global.seed},
                                   .alp_iters = flags.alp_iters};
  const std::vector<ConditionTrial> trials = ConditionGrid(config);
  const fs::path csv_path = OutputPath(ctx, "grid_alp.csv");
  {
    std::ofstream csv = OpenOutput(csv_path);
    WriteConditionCsv(trials, csv);
  }
  const fs::path json_path = OutputPath(ctx, "grid_alp.json");
  Json rows = Json::array();
  for (const ConditionTrial& trial : trials) rows.push_back(ToJson(trial));
  WriteJson(json_path, rows);
  const Json manifest_config{{"N", config.N},         {"D", config.D},
                             {"ratios", config.ratios}, {"rel_dims", config.rel_dims},
                             {"trials", config.trials}, {"budget", flags.budget},
                             {"alp_iters", config.alp_iters},
                             {"normal_tolerance", config.normal_tolerance}};
  WriteManifest(ctx, "grid-alp", manifest_config, {csv_path, json_path});
  const auto errors = std::count_if(trials.begin(), trials.end(),
                                    [](const ConditionTrial& t) { return t.error; });
  *ctx.out << "wrote " << trials.size() << " trials (" << errors << " errors)\n";
}

// ---------------------------------------------------------------------------
// roc

struct RocFlags {
  std::string cloud;
  std::string format;
  std::string labels;
  bool synthetic = false;
  std::size_t inliers = 500;
  std::size_t outliers = 500;
  double noise = 0.01;
  std::string method = "psgm";
  double threshold = 1e-3;
  double weight = 1.0;
  bool no_prefilter = false;
  int max_iters = 200;
  std::int64_t ransac_iters = 200;
};

void RunRoc(const Context& ctx, const RocFlags& flags) {
  PointCloud cloud;
  Json source;
  if (flags.synthetic) {
    if (!flags.cloud.empty()) throw UsageError("--synthetic and --cloud are exclusive");
    cloud = SamplePlaneScene({.inliers = flags.inliers,
                              .outliers = flags.outliers,
                              .noise = flags.noise,
                              .seed = ctx.global.seed});
    source = {{"synthetic", true}, {"inliers", flags.inliers}, {"outliers", flags.outliers},
              {"noise", flags.noise}};
  } else {
    if (flags.cloud.empty()) throw UsageError("pass --cloud or --synthetic");
    std::string format = flags.format;
    if (format.empty()) format = fs::path(flags.cloud).extension() == ".bin" ? "bin" : "xyz";
    if (format != "bin" && format != "xyz") throw UsageError("--format must be bin or xyz");
    cloud = LoadCloud(flags.cloud, format == "bin" ? CloudFormat::kBinF32x4 : CloudFormat::kAsciiXyz);
    if (!flags.labels.empty()) cloud.labels = LoadLabelSidecar(flags.labels, cloud.size());
    source = {{"cloud", flags.cloud}, {"format", format}, {"labels", flags.labels}};
  }

  HomogenizeOptions homogenize{.weight = flags.weight};
  if (flags.no_prefilter) homogenize.prefilter.reset();
  const HomogenizedCloud homogenized = Homogenize(cloud, homogenize);

  DetectOptions options;
  options.method = ParsePlaneMethod(flags.method);
  options.threshold = flags.threshold;
  options.psgm.max_iters = flags.max_iters;
  options.psgm.record_trace = false;
  options.psgm.policy = ctx.policy;
  options.irls.policy = ctx.policy;
  options.ransac_iterations = flags.ransac_iters;
  options.seed = ctx.global.seed;
  PlaneDetection detection = DetectPlane(homogenized.data, options);
  if (ctx.global.deterministic) detection.wall_nanos = 0;

  Json result{{"detection", ToJson(detection)},
              {"points_in", cloud.size()},
              {"points_kept", homogenized.kept.size()}};
  if (homogenized.data.labeled() && detection.auc) {
    result["roc"] = ToJson(RocFromScores(detection.scores, homogenized.data.labels()));
  }
  const fs::path json_path = OutputPath(ctx, "roc.json");
  WriteJson(json_path, result);
  const fs::path scores_path = OutputPath(ctx, "scores.csv");
  {
    std::ofstream csv = OpenOutput(scores_path);
    csv << "index,score,predicted,label\n";
    for (std::size_t k = 0; k < homogenized.kept.size(); ++k) {
      const auto j = static_cast<Eigen::Index>(k);
      csv << homogenized.kept[k] << ',' << detection.scores[j] << ','
          << (detection.inlier_mask[k] ? "in" : "out") << ','
          << (homogenized.data.labeled() ? LabelName(homogenized.data.labels()[k]) : "unk") << '\n';
    }
  }
  const Json config{{"source", source},
                    {"method", flags.method},
                    {"threshold", flags.threshold},
                    {"weight", flags.weight},
                    {"prefilter", !flags.no_prefilter},
                    {"max_iters", flags.max_iters},
                    {"ransac_iters", flags.ransac_iters}};
  WriteManifest(ctx, "roc", config, {json_path, scores_path});
  *ctx.out << "method " << detection.method << " inliers " << detection.inlier_count;
  if (detection.auc) *ctx.out << " auc " << *detection.auc;
  *ctx.out << '\n';
}

// ---------------------------------------------------------------------------
// oracle

struct OracleFlags {
  std::string data;
  int resolution = 1000000;
};

void RunOracle(const Context& ctx, const OracleFlags& flags) {
  const Dataset data = LoadDataset(flags.data);
  const OracleResult result = GridOracle(data, flags.resolution);
  const fs::path path = OutputPath(ctx, "oracle.json");
  WriteJson(path, Json{{"b", ToJson(result.b.vec())},
                       {"objective", JsonNumber(result.objective)},
                       {"resolution", flags.resolution}});
  WriteManifest(ctx, "oracle", Json{{"data", flags.data}, {"resolution", flags.resolution}}, {path});
  *ctx.out << std::setprecision(17) << "objective " << result.objective << '\n';
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual principal component pursuit: robust hyperplane and subspace recovery", "dpcp"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  app.add_option("--seed", global.seed, "Root seed for every random stream");
  app.add_option("--threads", global.threads, "Worker threads (0: OpenMP default; env DPCP_THREADS)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--deterministic", global.deterministic,
               "Fixed-order reductions; timings reported as zero");
  app.add_option("--out", global.out, "Output directory")->capture_default_str();

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Sample a random spherical dataset");
  synth_cmd->add_option("--D", synth.D, "Ambient dimension")->capture_default_str();
  synth_cmd->add_option("--d", synth.d, "Subspace dimension")->capture_default_str();
  synth_cmd->add_option("--N", synth.N, "Inlier count")->capture_default_str();
  synth_cmd->add_option("--M", synth.M, "Outlier count");
  synth_cmd->add_option("--ratio", synth.ratio, "Outlier ratio M / (M + N)");
  synth_cmd->add_option("--format", synth.format, "csv or bin")
      ->check(CLI::IsMember({"csv", "bin"}))
      ->capture_default_str();

  FitFlags fit;
  auto* fit_cmd = app.add_subcommand("fit", "Recover one normal vector");
  fit_cmd->add_option("--data", fit.data, "Dataset (.csv or binary)")->required();
  fit_cmd->add_option("--method", fit.method)
      ->check(CLI::IsMember({"psgm", "mbls", "alp", "irls"}))
      ->capture_default_str();
  fit_cmd->add_option("--schedule", fit.schedule, "const, harmonic, pgd or mbls")
      ->check(CLI::IsMember({"const", "harmonic", "pgd", "mbls"}))
      ->capture_default_str();
  fit_cmd->add_option("--mu0", fit.mu0, "Initial step or 'auto'")->capture_default_str();
  fit_cmd->add_option("--K0", fit.K0)->capture_default_str();
  fit_cmd->add_option("--K", fit.K)->capture_default_str();
  fit_cmd->add_option("--beta", fit.beta)->capture_default_str();
  fit_cmd->add_option("--max-iters", fit.max_iters)->capture_default_str();
  fit_cmd->add_option("--grad-tol", fit.grad_tol)->capture_default_str();
  fit_cmd->add_option("--angle-tol", fit.angle_tol, "Stop at this angle (labeled data only)");
  fit_cmd->add_option("--init", fit.init)
      ->check(CLI::IsMember({"spectral", "random"}))
      ->capture_default_str();
  fit_cmd->add_option("--delta", fit.delta, "IRLS damping")->capture_default_str();
  fit_cmd->add_option("--lp", fit.lp, "ALP step formulation")
      ->check(CLI::IsMember({"dual", "primal"}))
      ->capture_default_str();

  QuantitiesFlags quantities;
  auto* quantities_cmd =
      app.add_subcommand("quantities", "Geometric statistics and condition reports");
  quantities_cmd->add_option("--data", quantities.data)->required();
  quantities_cmd->add_option("--budget", quantities.budget, "Estimator evaluations")
      ->capture_default_str();
  quantities_cmd->add_option("--t", quantities.t, "Also check the random-model bound with this t");
  quantities_cmd->add_option("--C0", quantities.C0)->capture_default_str();

  PhaseFlags phase;
  auto* phase_cmd = app.add_subcommand("phase", "Phase transition over (M, N)");
  phase_cmd->add_option("--Ms", phase.Ms)->delimiter(',')->capture_default_str();
  phase_cmd->add_option("--Ns", phase.Ns)->delimiter(',')->capture_default_str();
  phase_cmd->add_option("--D", phase.D)->capture_default_str();
  phase_cmd->add_option("--d", phase.d)->capture_default_str();
  phase_cmd->add_option("--trials", phase.trials)->capture_default_str();
  phase_cmd->add_option("--theta-star", phase.theta_star)->capture_default_str();
  phase_cmd->add_option("--max-iters", phase.max_iters)->capture_default_str();
  phase_cmd->add_option("--init", phase.init)
      ->check(CLI::IsMember({"spectral", "random"}))
      ->capture_default_str();

  GridFlags grid;
  auto* grid_cmd = app.add_subcommand("grid-alp", "ALP conditions against observed runs");
  grid_cmd->add_option("--N", grid.N)->capture_default_str();
  grid_cmd->add_option("--D", grid.D)->capture_default_str();
  grid_cmd->add_option("--ratios", grid.ratios)->delimiter(',')->capture_default_str();
  grid_cmd->add_option("--rel-dims", grid.rel_dims)->delimiter(',')->capture_default_str();
  grid_cmd->add_option("--trials", grid.trials)->capture_default_str();
  grid_cmd->add_option("--budget", grid.budget)->capture_default_str();
  grid_cmd->add_option("--alp-iters", grid.alp_iters)->capture_default_str();

  RocFlags roc;
  auto* roc_cmd = app.add_subcommand("roc", "Plane detection on a point cloud with ROC/F1");
  roc_cmd->add_option("--cloud", roc.cloud, "Point cloud file");
  roc_cmd->add_option("--format", roc.format, "xyz or bin (default: from extension)");
  roc_cmd->add_option("--labels", roc.labels, "Label sidecar, one byte per point");
  roc_cmd->add_flag("--synthetic", roc.synthetic, "Use a sampled ground-plane scene");
  roc_cmd->add_option("--inliers", roc.inliers)->capture_default_str();
  roc_cmd->add_option("--outliers", roc.outliers)->capture_default_str();
  roc_cmd->add_option("--noise", roc.noise)->capture_default_str();
  roc_cmd->add_option("--method", roc.method)
      ->check(CLI::IsMember({"psgm", "alp", "irls", "ransac"}))
      ->capture_default_str();
  roc_cmd->add_option("--threshold", roc.threshold)->capture_default_str();
  roc_cmd->add_option("--weight", roc.weight, "Homogeneous coordinate")->capture_default_str();
  roc_cmd->add_flag("--no-prefilter", roc.no_prefilter, "Keep points outside the range box");
  roc_cmd->add_option("--max-iters", roc.max_iters)->capture_default_str();
  roc_cmd->add_option("--ransac-iters", roc.ransac_iters)->capture_default_str();

  OracleFlags oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force minimizer for D = 2 or 3");
  oracle_cmd->add_option("--data", oracle.data)->required();
  oracle_cmd->add_option("--resolution", oracle.resolution)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Context ctx{.global = global, .argv = args, .out = &out};
  try {
    ctx.policy = ResolvePolicy(global);
    SetDefaultExecutionPolicy(ctx.policy);
    if (synth_cmd->parsed()) RunSynth(ctx, synth);
    if (fit_cmd->parsed()) RunFit(ctx, fit);
    if (quantities_cmd->parsed()) RunQuantities(ctx, quantities);
    if (phase_cmd->parsed()) RunPhase(ctx, phase);
    if (grid_cmd->parsed()) RunGridAlp(ctx, grid);
    if (roc_cmd->parsed()) RunRoc(ctx, roc);
    if (oracle_cmd->parsed()) RunOracle(ctx, oracle);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int Main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Run(args, std::cout, std::cerr);
}

}  // namespace dpcp::cli
