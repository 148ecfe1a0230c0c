// Command-line front end: build and cache plans, run transforms, compute
// spectral weights and projections, verify plans against the dense oracle,
// and benchmark.
//
// Exit codes: 0 ok, 1 usage, 2 I/O or malformed file, 3 verification or
// construction failure, 4 resource budget exceeded.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jfft/jfft.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerification = 3;
constexpr int kExitBudget = 4;

jfft::FileFormat pick_format(const std::string& fmt_flag, const std::string& out_path) {
  if (fmt_flag == "json") return jfft::FileFormat::json;
  if (fmt_flag == "csv") return jfft::FileFormat::csv;
  return jfft::format_from_path(out_path);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_plan(int n, int k, const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  jfft::TransformPlan plan = jfft::build_plan(n, k);
  double build_ms = elapsed_ms(t0);
  jfft::save_plan(plan, out_path);
  std::uint64_t bound = 100ULL * static_cast<std::uint64_t>(plan.n) * plan.dim;
  std::printf("dim %d\n", plan.dim);
  std::printf("factors %zu\n", plan.factors.size());
  std::printf("build ops %llu (bound %llu)\n", static_cast<unsigned long long>(plan.build_ops),
              static_cast<unsigned long long>(bound));
  std::printf("build time %.3f ms\n", build_ms);
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

int cmd_transform(const std::string& plan_path, const std::string& in_path,
                  const std::string& direction, const std::string& out_path,
                  const std::string& fmt_flag, int threads) {
  jfft::TransformPlan plan = jfft::load_plan(plan_path);
  jfft::OpCounter counter;
  std::uint64_t bound = 2ULL * static_cast<std::uint64_t>(std::max(0, plan.n - 1)) * plan.dim;
  jfft::FileFormat out_fmt = pick_format(fmt_flag, out_path);

  if (direction == "forward") {
    auto values = jfft::read_vector_file(in_path, plan, jfft::VectorKind::function_values);
    jfft::FunctionVector f{plan.n, plan.k, std::move(values)};
    jfft::GtCoefficients c = jfft::forward(plan, f, &counter, threads);
    jfft::write_vector_file(out_path, plan, jfft::VectorKind::gt_coefficients, out_fmt, c.values);
  } else {
    auto values = jfft::read_vector_file(in_path, plan, jfft::VectorKind::gt_coefficients);
    jfft::GtCoefficients c{plan.n, plan.k, std::move(values)};
    jfft::FunctionVector f = jfft::inverse(plan, c, &counter, threads);
    jfft::write_vector_file(out_path, plan, jfft::VectorKind::function_values, out_fmt, f.values);
  }
  std::printf("ops %llu (bound %llu)\n", static_cast<unsigned long long>(counter.fma),
              static_cast<unsigned long long>(bound));
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

int cmd_weights(const std::string& plan_path, const std::string& in_path) {
  jfft::TransformPlan plan = jfft::load_plan(plan_path);
  auto values = jfft::read_vector_file(in_path, plan, jfft::VectorKind::function_values);
  jfft::FunctionVector f{plan.n, plan.k, std::move(values)};
  jfft::OpCounter counter;
  jfft::SpectralReport rep = jfft::weights(plan, f, &counter);
  std::uint64_t bound = static_cast<std::uint64_t>(std::max(1, 2 * plan.n - 1)) * plan.dim;
  std::printf("%-4s %-10s %-22s %s\n", "a", "shape", "weight", "share");
  for (size_t a = 0; a < rep.weights.size(); ++a) {
    char shape[32];
    std::snprintf(shape, sizeof shape, "(%d,%zu)", plan.n - static_cast<int>(a), a);
    std::printf("%-4zu %-10s %-22.15g %.9f\n", a, shape, rep.weights[a], rep.shares[a]);
  }
  std::printf("total %.15g\n", rep.total);
  std::printf("ops %llu (bound %llu)\n", static_cast<unsigned long long>(counter.fma),
              static_cast<unsigned long long>(bound));
  return kExitOk;
}

int cmd_project(const std::string& plan_path, const std::string& in_path,
                const std::vector<int>& components, const std::string& out_path,
                const std::string& fmt_flag, int threads) {
  jfft::TransformPlan plan = jfft::load_plan(plan_path);
  auto values = jfft::read_vector_file(in_path, plan, jfft::VectorKind::function_values);
  jfft::FunctionVector f{plan.n, plan.k, std::move(values)};
  std::set<int> h(components.begin(), components.end());
  jfft::OpCounter counter;
  jfft::FunctionVector g = jfft::project(plan, f, h, &counter, threads);
  std::uint64_t bound = 4ULL * static_cast<std::uint64_t>(std::max(0, plan.n - 1)) * plan.dim;
  jfft::write_vector_file(out_path, plan, jfft::VectorKind::function_values,
                          pick_format(fmt_flag, out_path), g.values);
  std::printf("ops %llu (bound %llu)\n", static_cast<unsigned long long>(counter.fma),
              static_cast<unsigned long long>(bound));
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

int cmd_verify(const std::string& plan_path) {
  jfft::TransformPlan plan = jfft::load_plan(plan_path);
  jfft::oracle::VerificationReport rep = jfft::oracle::verify_plan(plan);
  std::fputs(rep.to_text().c_str(), stdout);
  if (!rep.all_pass()) {
    std::printf("verification FAILED\n");
    return kExitVerification;
  }
  std::printf("all checks passed\n");
  return kExitOk;
}

int cmd_bench(int n, int k, int reps, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  jfft::TransformPlan plan = jfft::build_plan(n, k);
  double build_ms = elapsed_ms(t0);

  std::mt19937_64 rng(0xBE5CF17ULL);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  jfft::FunctionVector f{n, k, std::vector<double>(static_cast<size_t>(plan.dim))};
  for (auto& v : f.values) v = dist(rng);

  jfft::OpCounter fwd_counter;
  jfft::GtCoefficients c = jfft::forward(plan, f, &fwd_counter);
  std::uint64_t fwd_ops = fwd_counter.fma;

  auto t1 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) c = jfft::forward(plan, f, nullptr, threads);
  double fwd_ms = elapsed_ms(t1) / std::max(1, reps);

  auto t2 = std::chrono::steady_clock::now();
  jfft::FunctionVector back;
  for (int r = 0; r < reps; ++r) back = jfft::inverse(plan, c, nullptr, threads);
  double inv_ms = elapsed_ms(t2) / std::max(1, reps);

  std::uint64_t fwd_bound = 2ULL * static_cast<std::uint64_t>(std::max(0, n - 1)) * plan.dim;
  std::uint64_t build_bound = 100ULL * static_cast<std::uint64_t>(n) * plan.dim;
  std::printf("dim %d\n", plan.dim);
  std::printf("build %.3f ms, ops %llu (bound %llu)\n", build_ms,
              static_cast<unsigned long long>(plan.build_ops),
              static_cast<unsigned long long>(build_bound));
  std::printf("forward %.3f ms/run, ops %llu (bound %llu)\n", fwd_ms,
              static_cast<unsigned long long>(fwd_ops), static_cast<unsigned long long>(fwd_bound));
  std::printf("inverse %.3f ms/run (same bound)\n", inv_ms);
  std::printf("threads %d, reps %d\n", threads, reps);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse orthogonal Fourier transform on k-subsets of an n-set"};
  app.require_subcommand(1);

  int n = 0, k = 0, reps = 10, threads = 1;
  std::string plan_path, in_path, out_path;
  std::string direction = "forward", format;
  std::vector<int> components;

  auto* plan_cmd = app.add_subcommand("plan", "build a plan and write it to a cache file");
  plan_cmd->add_option("--n", n, "set size")->required();
  plan_cmd->add_option("--k", k, "subset size")->required();
  plan_cmd->add_option("--out", out_path, "plan file to write")->required();

  auto* transform_cmd = app.add_subcommand("transform", "apply the transform to a vector file");
  transform_cmd->add_option("--plan", plan_path, "plan file")->required();
  transform_cmd->add_option("--in", in_path, "input vector file")->required();
  transform_cmd->add_option("--out", out_path, "output vector file")->required();
  transform_cmd->add_option("--direction", direction, "forward or inverse")
      ->check(CLI::IsMember({"forward", "inverse"}));
  transform_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  transform_cmd->add_option("--threads", threads, "worker threads for block application");

  auto* weights_cmd = app.add_subcommand("weights", "isotypic component weights of a function");
  weights_cmd->add_option("--plan", plan_path, "plan file")->required();
  weights_cmd->add_option("--in", in_path, "input function file")->required();

  auto* project_cmd = app.add_subcommand("project", "band-pass projection onto selected components");
  project_cmd->add_option("--plan", plan_path, "plan file")->required();
  project_cmd->add_option("--in", in_path, "input function file")->required();
  project_cmd->add_option("--components", components, "component indices to keep")
      ->required()
      ->delimiter(',');
  project_cmd->add_option("--out", out_path, "output function file")->required();
  project_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  project_cmd->add_option("--threads", threads, "worker threads for block application");

  auto* verify_cmd = app.add_subcommand("verify", "run the dense oracle checks on a plan");
  verify_cmd->add_option("--plan", plan_path, "plan file")->required();

  auto* bench_cmd = app.add_subcommand("bench", "build and time transforms");
  bench_cmd->add_option("--n", n, "set size")->required();
  bench_cmd->add_option("--k", k, "subset size")->required();
  bench_cmd->add_option("--reps", reps, "timed repetitions");
  bench_cmd->add_option("--threads", threads, "worker threads for block application");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (plan_cmd->parsed()) return cmd_plan(n, k, out_path);
    if (transform_cmd->parsed()) return cmd_transform(plan_path, in_path, direction, out_path, format, threads);
    if (weights_cmd->parsed()) return cmd_weights(plan_path, in_path);
    if (project_cmd->parsed()) return cmd_project(plan_path, in_path, components, out_path, format, threads);
    if (verify_cmd->parsed()) return cmd_verify(plan_path);
    if (bench_cmd->parsed()) return cmd_bench(n, k, reps, threads);
  } catch (const jfft::ResourceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const jfft::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const jfft::ConstructionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerification;
  }
  return kExitUsage;
}
