#include "plandiv/selection.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

namespace plandiv {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

MetricSpec MetricSpec::single(MetricId id) { return {{id}, {1.0}}; }

MetricSpec MetricSpec::weighted(std::vector<MetricId> ids,
                                std::vector<double> weights) {
  if (ids.empty())
    throw std::invalid_argument("metric spec needs at least one metric");
  if (ids.size() != weights.size())
    throw std::invalid_argument("metric spec needs one weight per metric");
  std::set<MetricId> seen;
  for (MetricId id : ids)
    if (!seen.insert(id).second)
      throw std::invalid_argument("duplicate metric '" + to_string(id) +
                                  "' in weighted spec");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0)
      throw std::invalid_argument("metric weights must be non-negative");
    total += w;
  }
  if (total == 0.0)
    throw std::invalid_argument("metric weights must not all be zero");
  return {std::move(ids), std::move(weights)};
}

std::string MetricSpec::id_string() const {
  if (ids.size() == 1) return to_string(ids.front());
  return "aggregate";
}

DiversityMode diversity_mode_from_string(const std::string& name) {
  if (name == "average") return DiversityMode::average;
  if (name == "minimum") return DiversityMode::minimum;
  throw std::invalid_argument("unknown diversity mode '" + name +
                              "' (expected average or minimum)");
}

SimilarityMatrix pairwise_matrix(const TaskContext& ctx,
                                 const std::vector<Plan>& plans,
                                 const std::vector<std::string>& labels,
                                 const MetricSpec& spec, unsigned threads) {
  if (plans.size() != labels.size())
    throw std::invalid_argument("pairwise matrix needs one label per plan");
  if (spec.ids.empty() || spec.ids.size() != spec.weights.size())
    throw std::invalid_argument("malformed metric spec");
  {
    std::set<std::string> seen;
    for (const std::string& label : labels)
      if (!seen.insert(label).second)
        throw std::invalid_argument("duplicate plan label '" + label + "'");
  }

  const std::size_t n = plans.size();
  for (std::size_t i = 0; i < n; ++i) {
    ValidationReport report = validate(ctx, plans[i]);
    if (report.valid) continue;
    std::string msg = "plan '" + labels[i] + "' is invalid: " + report.reason;
    if (report.failing_step)
      msg += " (step " + std::to_string(*report.failing_step) + ")";
    throw TaskError(msg);
  }

  // Grounding interns atoms into the shared table, so the per-plan
  // analyses are built sequentially; everything after this loop only
  // reads them.
  AnalysisNeeds needs = AnalysisNeeds::for_metrics(spec.ids);
  std::vector<PlanAnalysis> analyses;
  analyses.reserve(n);
  for (const Plan& plan : plans)
    analyses.push_back(analyze_plan(ctx, plan, needs));

  SimilarityMatrix m;
  m.labels = labels;
  m.metric = spec.id_string();
  m.values.assign(n, std::vector<double>(n, 0.0));
  m.timings_ms.assign(n, std::vector<double>(n, 0.0));

  double weight_total = 0.0;
  for (double w : spec.weights) weight_total += w;

  auto fill_cell = [&](std::size_t i, std::size_t j) {
    auto t0 = Clock::now();
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.ids.size(); ++k)
      acc += spec.weights[k] *
             pair_similarity(spec.ids[k], analyses[i], analyses[j]);
    m.values[i][j] = acc / weight_total;
    m.timings_ms[i][j] = ms_since(t0);
  };

  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) fill_cell(i, j);
  } else {
    std::atomic<std::size_t> next_row{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t row = next_row.fetch_add(1);
        if (row >= n) return;
        for (std::size_t j = 0; j < n; ++j) fill_cell(row, j);
      }
    };
    std::vector<std::thread> pool;
    unsigned count = static_cast<unsigned>(
        std::min<std::size_t>(threads, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return m;
}

double diversity_score(const SimilarityMatrix& m, DiversityMode mode) {
  const std::size_t n = m.size();
  if (n < 2)
    throw std::invalid_argument("diversity score needs at least two plans");
  double sum = 0.0;
  double minimum = std::numeric_limits<double>::infinity();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = m.dissimilarity(i, j);
      sum += d;
      minimum = std::min(minimum, d);
      ++pairs;
    }
  }
  return mode == DiversityMode::average ? sum / static_cast<double>(pairs)
                                        : minimum;
}

std::vector<std::string> select_diverse(const SimilarityMatrix& m,
                                        std::size_t k) {
  const std::size_t n = m.size();
  if (k == 0 || k > n)
    throw std::invalid_argument("selection size must be between 1 and " +
                                std::to_string(n));

  if (k == 1) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (m.labels[i] < m.labels[best]) best = i;
    return {m.labels[best]};
  }

  // Seed pair: maximal dissimilarity over all ordered cells; ties are
  // broken on the unordered label pair.
  double best_d = -1.0;
  std::pair<std::string, std::string> best_pair;
  std::pair<std::size_t, std::size_t> seed{0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d = m.dissimilarity(i, j);
      if (d < best_d) continue;
      std::pair<std::string, std::string> pair =
          std::minmax(m.labels[i], m.labels[j]);
      if (d > best_d || pair < best_pair) {
        best_d = d;
        best_pair = pair;
        seed = m.labels[i] < m.labels[j] ? std::pair{i, j} : std::pair{j, i};
      }
    }
  }

  std::vector<std::size_t> picks = {seed.first, seed.second};
  std::vector<bool> selected(n, false);
  selected[seed.first] = selected[seed.second] = true;

  while (picks.size() < k) {
    std::size_t best_c = n;
    double best_score = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (selected[c]) continue;
      double score = std::numeric_limits<double>::infinity();
      for (std::size_t s : picks)
        score = std::min(score, m.dissimilarity(c, s));
      if (best_c == n || score > best_score ||
          (score == best_score && m.labels[c] < m.labels[best_c])) {
        best_c = c;
        best_score = score;
      }
    }
    selected[best_c] = true;
    picks.push_back(best_c);
  }

  std::vector<std::string> out;
  out.reserve(picks.size());
  for (std::size_t index : picks) out.push_back(m.labels[index]);
  return out;
}

double diversity_score(const TaskContext& ctx, const std::vector<Plan>& plans,
                       const std::vector<std::string>& labels,
                       const MetricSpec& spec, DiversityMode mode) {
  return diversity_score(pairwise_matrix(ctx, plans, labels, spec), mode);
}

std::vector<std::string> select_diverse(const TaskContext& ctx,
                                        const std::vector<Plan>& plans,
                                        const std::vector<std::string>& labels,
                                        const MetricSpec& spec,
                                        std::size_t k) {
  return select_diverse(pairwise_matrix(ctx, plans, labels, spec), k);
}

}  // namespace plandiv
