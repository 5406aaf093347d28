// Microbenchmarks for the metric pipeline on a synthetic switchboard
// task: parse + ground, single-plan analysis, per-metric pair scoring,
// full pairwise matrices, and greedy selection.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <plandiv/ground.hpp>
#include <plandiv/metrics.hpp>
#include <plandiv/pddl.hpp>
#include <plandiv/selection.hpp>

namespace {

using namespace plandiv;

constexpr const char* kDomain = R"((define (domain switchboard)
  (:requirements :strips)
  (:predicates (ready ?s) (on ?s) (checked ?s))
  (:action prep
    :parameters (?s)
    :precondition (and)
    :effect (and (ready ?s)))
  (:action flip
    :parameters (?s)
    :precondition (and (ready ?s))
    :effect (and (on ?s) (not (ready ?s))))
  (:action check
    :parameters (?s)
    :precondition (and (on ?s))
    :effect (and (checked ?s)))))";

std::string problem_text(int n_switches) {
  std::string text = "(define (problem switchboard-task)\n"
                     "  (:domain switchboard)\n  (:objects";
  for (int i = 1; i <= n_switches; ++i) text += " s" + std::to_string(i);
  text += ")\n  (:init)\n  (:goal (and (checked s1))))";
  return text;
}

PlanStep step(const char* action, int i) {
  return PlanStep{0, action, {"s" + std::to_string(i)}};
}

void reindex(Plan& plan) {
  for (std::size_t i = 0; i < plan.steps.size(); ++i)
    plan.steps[i].index = static_cast<int>(i);
}

/// 30 preps + 29 flips + the goal check: 60 steps, valid in both orders.
Plan sixty_step_plan(bool reversed) {
  Plan plan;
  if (reversed) {
    for (int i = 30; i >= 1; --i) plan.steps.push_back(step("prep", i));
    for (int i = 29; i >= 1; --i) plan.steps.push_back(step("flip", i));
  } else {
    for (int i = 1; i <= 30; ++i) plan.steps.push_back(step("prep", i));
    for (int i = 1; i <= 29; ++i) plan.steps.push_back(step("flip", i));
  }
  plan.steps.push_back(step("check", 1));
  reindex(plan);
  return plan;
}

/// Distinct valid plans for one task: the s1 chain plus randomly
/// interleaved prep/flip pairs for the other switches.
std::vector<Plan> many_plans(std::size_t count, int switches,
                             std::mt19937& rng) {
  std::vector<Plan> plans;
  while (plans.size() < count) {
    Plan plan;
    plan.steps = {step("prep", 1), step("flip", 1), step("check", 1)};
    for (int i = 2; i <= switches; ++i) {
      if (rng() % 2 == 0) continue;
      std::uniform_int_distribution<std::size_t> at(0, plan.steps.size());
      std::size_t prep_at = at(rng);
      plan.steps.insert(plan.steps.begin() + static_cast<long>(prep_at),
                        step("prep", i));
      std::uniform_int_distribution<std::size_t> after(prep_at + 1,
                                                       plan.steps.size());
      plan.steps.insert(plan.steps.begin() + static_cast<long>(after(rng)),
                        step("flip", i));
    }
    reindex(plan);
    plans.push_back(std::move(plan));
  }
  return plans;
}

struct PairSetup {
  DomainModel dom = parse_domain(kDomain);
  ProblemModel prob = parse_problem(problem_text(30), dom);
  TaskContext ctx{dom, prob};
  Plan forward = sixty_step_plan(false);
  Plan reversed = sixty_step_plan(true);
};

PairSetup& pair_setup() {
  static PairSetup setup;
  return setup;
}

struct MatrixSetup {
  DomainModel dom = parse_domain(kDomain);
  ProblemModel prob = parse_problem(problem_text(12), dom);
  TaskContext ctx{dom, prob};
  std::vector<Plan> plans;
  std::vector<std::string> labels;

  MatrixSetup() {
    std::mt19937 rng(7);
    plans = many_plans(100, 12, rng);
    for (std::size_t i = 0; i < plans.size(); ++i)
      labels.push_back("p" + std::to_string(i));
  }
};

MatrixSetup& matrix_setup() {
  static MatrixSetup setup;
  return setup;
}

void bench_parse_and_ground(benchmark::State& state) {
  std::string prob_text = problem_text(30);
  for (auto _ : state) {
    DomainModel dom = parse_domain(kDomain);
    ProblemModel prob = parse_problem(prob_text, dom);
    TaskContext ctx(dom, prob);
    benchmark::DoNotOptimize(ctx.initial_state());
  }
}

void bench_analyze_plan(benchmark::State& state) {
  PairSetup& setup = pair_setup();
  AnalysisNeeds needs{true, true, true, true};
  for (auto _ : state) {
    PlanAnalysis analysis = analyze_plan(setup.ctx, setup.forward, needs);
    benchmark::DoNotOptimize(analysis.signatures);
  }
}

/// End-to-end pair score: analyzes both 60-step plans, then combines.
void bench_pair(benchmark::State& state, MetricId id) {
  PairSetup& setup = pair_setup();
  for (auto _ : state) {
    MetricValue value = similarity(id, setup.ctx, setup.forward,
                                   setup.reversed);
    benchmark::DoNotOptimize(value.value);
  }
}

/// Combination only: the per-cell cost inside a pairwise matrix.
void bench_combine(benchmark::State& state, MetricId id) {
  PairSetup& setup = pair_setup();
  AnalysisNeeds needs = AnalysisNeeds::for_metrics({id});
  PlanAnalysis a = analyze_plan(setup.ctx, setup.forward, needs);
  PlanAnalysis b = analyze_plan(setup.ctx, setup.reversed, needs);
  for (auto _ : state) {
    double value = pair_similarity(id, a, b);
    benchmark::DoNotOptimize(value);
  }
}

void bench_matrix(benchmark::State& state, const MetricSpec& spec) {
  MatrixSetup& setup = matrix_setup();
  for (auto _ : state) {
    SimilarityMatrix m =
        pairwise_matrix(setup.ctx, setup.plans, setup.labels, spec);
    benchmark::DoNotOptimize(m.values);
  }
}

void bench_select(benchmark::State& state) {
  MatrixSetup& setup = matrix_setup();
  SimilarityMatrix m = pairwise_matrix(setup.ctx, setup.plans, setup.labels,
                                       MetricSpec::single(MetricId::actions));
  for (auto _ : state) {
    std::vector<std::string> picks = select_diverse(m, 10);
    benchmark::DoNotOptimize(picks);
  }
}

void register_benchmarks() {
  benchmark::RegisterBenchmark("parse_and_ground/30_switches",
                               bench_parse_and_ground);
  benchmark::RegisterBenchmark("analyze_plan/60_steps", bench_analyze_plan);
  for (MetricId id : kAllMetrics) {
    benchmark::RegisterBenchmark(("pair_60_steps/" + to_string(id)).c_str(),
                                 [id](benchmark::State& s) {
                                   bench_pair(s, id);
                                 });
    benchmark::RegisterBenchmark(("combine/" + to_string(id)).c_str(),
                                 [id](benchmark::State& s) {
                                   bench_combine(s, id);
                                 });
  }
  benchmark::RegisterBenchmark("matrix_100_plans/flex",
                               [](benchmark::State& s) {
                                 bench_matrix(s, MetricSpec::single(
                                                     MetricId::flex));
                               });
  benchmark::RegisterBenchmark(
      "matrix_100_plans/aggregate6", [](benchmark::State& s) {
        std::vector<MetricId> ids(kAllMetrics.begin(), kAllMetrics.end());
        bench_matrix(s, MetricSpec::weighted(
                            ids, std::vector<double>(ids.size(), 1.0)));
      });
  benchmark::RegisterBenchmark("select_10_of_100", bench_select);
}

}  // namespace

int main(int argc, char** argv) {
  register_benchmarks();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
