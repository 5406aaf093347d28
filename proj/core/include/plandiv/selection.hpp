// Pairwise similarity matrices over plan sets, diversity scoring, and
// greedy selection of maximally diverse subsets.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "plandiv/ground.hpp"
#include "plandiv/metrics.hpp"

namespace plandiv {

/// What a matrix is computed over: a single metric, or a weighted
/// aggregate of several. Aggregating similarities with the same weights
/// as dissimilarities keeps D = 1 - delta true cell by cell, so the two
/// views never disagree.
struct MetricSpec {
  std::vector<MetricId> ids;
  std::vector<double> weights;  // parallel to ids

  static MetricSpec single(MetricId id);
  /// Throws std::invalid_argument on size mismatch, duplicate ids,
  /// negative weights, or all-zero weights.
  static MetricSpec weighted(std::vector<MetricId> ids,
                             std::vector<double> weights);

  bool is_aggregate() const { return ids.size() > 1; }
  std::string id_string() const;  // the metric's name, or "aggregate"
};

/// Full ordered matrix: values[i][j] is the similarity of plan i to plan
/// j in that order, which matters only for the asymmetric uniqueness
/// metric. The diagonal is computed, not assumed.
struct SimilarityMatrix {
  std::vector<std::string> labels;
  std::string metric;  // MetricSpec::id_string()
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> timings_ms;  // per-cell combine time

  std::size_t size() const { return labels.size(); }
  double dissimilarity(std::size_t i, std::size_t j) const {
    return 1.0 - values[i][j];
  }
};

enum class DiversityMode { average, minimum };

/// Accepts "average" and "minimum"; throws std::invalid_argument else.
DiversityMode diversity_mode_from_string(const std::string& name);

/// Validates every plan up front (throwing TaskError that names the
/// offending label), analyzes each plan once, then fills all n*n cells.
/// Grounding interns atoms and so runs sequentially; with threads > 1
/// only the pure per-cell combination is split across workers, one row
/// at a time. Every cell is an independent computation with a fixed
/// operation order, so results are bit-identical for any thread count.
SimilarityMatrix pairwise_matrix(const TaskContext& ctx,
                                 const std::vector<Plan>& plans,
                                 const std::vector<std::string>& labels,
                                 const MetricSpec& spec, unsigned threads = 1);

/// Average or minimum dissimilarity over unordered pairs, reading
/// D[i][j] with i < j (the choice matters only for the asymmetric
/// uniqueness metric). Throws std::invalid_argument below two plans.
double diversity_score(const SimilarityMatrix& m, DiversityMode mode);

/// Greedy max-min selection of k labels, returned in pick order.
/// Seeds with the pair of maximal dissimilarity over all ordered cells
/// (ties: lexicographically smallest label pair, emitted smaller label
/// first); then repeatedly adds the candidate whose minimum D to the
/// selected set is largest, reading D[candidate][selected] (ties:
/// smallest label). k = 1 returns the lexicographically smallest label.
/// Throws std::invalid_argument when k is zero or exceeds the plan
/// count.
std::vector<std::string> select_diverse(const SimilarityMatrix& m,
                                        std::size_t k);

// Convenience forms that build the matrix first.
double diversity_score(const TaskContext& ctx, const std::vector<Plan>& plans,
                       const std::vector<std::string>& labels,
                       const MetricSpec& spec, DiversityMode mode);
std::vector<std::string> select_diverse(const TaskContext& ctx,
                                        const std::vector<Plan>& plans,
                                        const std::vector<std::string>& labels,
                                        const MetricSpec& spec, std::size_t k);

}  // namespace plandiv
