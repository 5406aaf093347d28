// Command-line front-end: parse a task and a set of plans, then score
// pairwise similarity matrices, select a diverse subset, or print
// subgoal traces, as JSON or CSV.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plandiv/metrics.hpp"
#include "plandiv/pddl.hpp"
#include "plandiv/selection.hpp"
#include "plandiv/subgoals.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plandiv;

namespace {

/// A diagnostic already formatted for stderr.
struct Diag : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string domain;
  std::string problem;
  std::vector<std::string> plans;
  std::string metrics;
  std::string weights;
  std::string format = "json";
  std::string output = "-";
  std::string mode = "minimum";
  unsigned threads = 1;
  std::size_t k = 0;
  bool timing = false;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Diag(path.string() + ": error: cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

struct PlanInput {
  std::string label;
  fs::path path;
};

/// Expands directories to their regular files, labels every file by its
/// stem, and sorts by label. Duplicate labels are ambiguous and rejected.
std::vector<PlanInput> collect_plan_files(
    const std::vector<std::string>& inputs) {
  std::vector<PlanInput> files;
  for (const std::string& raw : inputs) {
    fs::path path(raw);
    if (fs::is_directory(path)) {
      for (const fs::directory_entry& entry : fs::directory_iterator(path))
        if (entry.is_regular_file())
          files.push_back({entry.path().stem().string(), entry.path()});
    } else if (fs::is_regular_file(path)) {
      files.push_back({path.stem().string(), path});
    } else {
      throw Diag(raw + ": error: no such file or directory");
    }
  }
  if (files.empty()) throw Diag("error: no plan files given");
  std::sort(files.begin(), files.end(),
            [](const PlanInput& a, const PlanInput& b) {
              return a.label < b.label;
            });
  for (std::size_t i = 1; i < files.size(); ++i)
    if (files[i].label == files[i - 1].label)
      throw Diag("error: duplicate plan label '" + files[i].label + "' (" +
                 files[i - 1].path.string() + ", " + files[i].path.string() +
                 ")");
  return files;
}

template <class Fn>
auto parse_or_diag(Fn&& fn, const fs::path& path) {
  try {
    return fn();
  } catch (const ParseError& err) {
    throw Diag(path.string() + ":" + std::to_string(err.pos().line) + ":" +
               std::to_string(err.pos().col) + ": error: " + err.what());
  }
}

struct Inputs {
  DomainModel dom;
  ProblemModel prob;
  std::vector<std::string> labels;
  std::vector<Plan> plans;
  std::vector<fs::path> paths;
};

Inputs load_inputs(const Options& opt) {
  Inputs in;
  std::string domain_text = read_file(opt.domain);
  in.dom =
      parse_or_diag([&] { return parse_domain(domain_text); }, opt.domain);
  std::string problem_text = read_file(opt.problem);
  in.prob = parse_or_diag([&] { return parse_problem(problem_text, in.dom); },
                          opt.problem);
  for (const PlanInput& file : collect_plan_files(opt.plans)) {
    std::string text = read_file(file.path);
    Plan plan = parse_or_diag(
        [&] { return parse_plan(text, in.dom, in.prob); }, file.path);
    plan.source = file.label;
    in.labels.push_back(file.label);
    in.plans.push_back(std::move(plan));
    in.paths.push_back(file.path);
  }
  return in;
}

void require_valid_plans(const TaskContext& ctx, const Inputs& in) {
  for (std::size_t i = 0; i < in.plans.size(); ++i) {
    ValidationReport report = validate(ctx, in.plans[i]);
    if (report.valid) continue;
    std::string msg = in.paths[i].string() + ": error: plan '" + in.labels[i] +
                      "' is invalid: " + report.reason;
    if (report.failing_step)
      msg += " (step " + std::to_string(*report.failing_step) + ")";
    throw Diag(msg);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

MetricId metric_or_diag(const std::string& name) {
  try {
    return metric_from_string(name);
  } catch (const std::invalid_argument& err) {
    throw Diag(std::string("error: ") + err.what());
  }
}

std::vector<MetricId> parse_metric_list(const std::string& arg) {
  std::vector<MetricId> ids;
  for (const std::string& token : split(arg, ',')) {
    if (token.empty())
      throw Diag("error: empty metric name in '" + arg + "'");
    MetricId id = metric_or_diag(token);
    if (std::find(ids.begin(), ids.end(), id) != ids.end())
      throw Diag("error: metric '" + to_string(id) + "' listed twice");
    ids.push_back(id);
  }
  return ids;
}

/// Parses "metric=weight,..." and checks every named metric is among the
/// requested ones (when a request list is present at all).
MetricSpec parse_weights(const std::string& arg,
                         const std::vector<MetricId>& requested) {
  std::vector<MetricId> ids;
  std::vector<double> weights;
  for (const std::string& token : split(arg, ',')) {
    std::size_t eq = token.find('=');
    if (eq == std::string::npos)
      throw Diag("error: weight entries look like metric=value, got '" +
                 token + "'");
    MetricId id = metric_or_diag(token.substr(0, eq));
    std::string text = token.substr(eq + 1);
    double weight = 0.0;
    std::size_t used = 0;
    try {
      weight = std::stod(text, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != text.size() || !std::isfinite(weight))
      throw Diag("error: invalid weight '" + text + "' for metric '" +
                 to_string(id) + "'");
    if (!requested.empty() &&
        std::find(requested.begin(), requested.end(), id) == requested.end())
      throw Diag("error: weight given for metric '" + to_string(id) +
                 "', which is not in --metrics");
    ids.push_back(id);
    weights.push_back(weight);
  }
  try {
    return MetricSpec::weighted(std::move(ids), std::move(weights));
  } catch (const std::invalid_argument& err) {
    throw Diag(std::string("error: ") + err.what());
  }
}

/// Matrix values are snapped to six decimals so output is byte-stable.
double snap(double v) { return std::round(v * 1e6) / 1e6; }

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json grid_json(const std::vector<std::vector<double>>& grid) {
  json rows = json::array();
  for (const std::vector<double>& row : grid) {
    json cells = json::array();
    for (double v : row) cells.push_back(snap(v));
    rows.push_back(std::move(cells));
  }
  return rows;
}

json matrix_json(const SimilarityMatrix& m, bool timing) {
  json entry;
  entry["matrix"] = grid_json(m.values);
  if (timing) entry["timings_ms"] = grid_json(m.timings_ms);
  return entry;
}

void csv_grid_section(std::string& out, const std::string& title,
                      const std::vector<std::string>& labels,
                      const std::vector<std::vector<double>>& grid) {
  out += "# " + title + "\n";
  for (const std::string& label : labels) out += "," + csv_field(label);
  out += "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += csv_field(labels[i]);
    for (double v : grid[i]) out += "," + fixed6(snap(v));
    out += "\n";
  }
}

void csv_matrix(std::string& out, const SimilarityMatrix& m, bool timing) {
  csv_grid_section(out, "metric: " + m.metric, m.labels, m.values);
  if (timing)
    csv_grid_section(out, "timings_ms: " + m.metric, m.labels, m.timings_ms);
}

void write_output(const std::string& target, const std::string& content) {
  if (target == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw Diag(target + ": error: cannot open for writing");
  out << content;
  if (!out) throw Diag(target + ": error: write failed");
}

/// Diversity of a chosen subset, read from the full matrix's upper
/// triangle in original index order.
double subset_diversity(const SimilarityMatrix& m,
                        const std::vector<std::string>& chosen,
                        DiversityMode mode) {
  std::vector<std::size_t> indices;
  for (const std::string& label : chosen) {
    auto it = std::find(m.labels.begin(), m.labels.end(), label);
    indices.push_back(static_cast<std::size_t>(it - m.labels.begin()));
  }
  std::sort(indices.begin(), indices.end());
  double sum = 0.0;
  double minimum = std::numeric_limits<double>::infinity();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      double d = m.dissimilarity(indices[i], indices[j]);
      sum += d;
      minimum = std::min(minimum, d);
      ++pairs;
    }
  }
  return mode == DiversityMode::average ? sum / static_cast<double>(pairs)
                                        : minimum;
}

/// Combines already-computed single-metric matrices into the weighted
/// aggregate, cell by cell, in the weight list's order.
SimilarityMatrix combine_aggregate(const std::vector<SimilarityMatrix>& parts,
                                   const std::vector<MetricId>& part_ids,
                                   const MetricSpec& spec) {
  SimilarityMatrix out;
  out.labels = parts.front().labels;
  out.metric = spec.id_string();
  const std::size_t n = out.labels.size();
  out.values.assign(n, std::vector<double>(n, 0.0));
  out.timings_ms.assign(n, std::vector<double>(n, 0.0));
  double total = 0.0;
  for (double w : spec.weights) total += w;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      double time = 0.0;
      for (std::size_t k = 0; k < spec.ids.size(); ++k) {
        std::size_t part = static_cast<std::size_t>(
            std::find(part_ids.begin(), part_ids.end(), spec.ids[k]) -
            part_ids.begin());
        acc += spec.weights[k] * parts[part].values[i][j];
        time += parts[part].timings_ms[i][j];
      }
      out.values[i][j] = acc / total;
      out.timings_ms[i][j] = time;
    }
  }
  return out;
}

int run_score(const Options& opt) {
  Inputs in = load_inputs(opt);
  TaskContext ctx(in.dom, in.prob);
  require_valid_plans(ctx, in);

  std::vector<MetricId> ids;
  if (opt.metrics.empty())
    ids.assign(kAllMetrics.begin(), kAllMetrics.end());
  else
    ids = parse_metric_list(opt.metrics);
  std::optional<MetricSpec> agg;
  if (!opt.weights.empty()) agg = parse_weights(opt.weights, ids);

  std::vector<SimilarityMatrix> matrices;
  matrices.reserve(ids.size());
  for (MetricId id : ids)
    matrices.push_back(pairwise_matrix(ctx, in.plans, in.labels,
                                       MetricSpec::single(id), opt.threads));
  if (agg) matrices.push_back(combine_aggregate(matrices, ids, *agg));

  if (opt.format == "json") {
    json out;
    out["schema"] = 1;
    out["plans"] = in.labels;
    out["metrics"] = json::object();
    for (const SimilarityMatrix& m : matrices)
      out["metrics"][m.metric] = matrix_json(m, opt.timing);
    write_output(opt.output, out.dump(2) + "\n");
  } else {
    std::string out;
    for (const SimilarityMatrix& m : matrices) {
      if (!out.empty()) out += "\n";
      csv_matrix(out, m, opt.timing);
    }
    write_output(opt.output, out);
  }
  return 0;
}

int run_select(const Options& opt) {
  Inputs in = load_inputs(opt);
  TaskContext ctx(in.dom, in.prob);
  require_valid_plans(ctx, in);

  std::vector<MetricId> ids;
  if (!opt.metrics.empty()) ids = parse_metric_list(opt.metrics);
  MetricSpec spec = MetricSpec::single(MetricId::actions);
  if (!opt.weights.empty()) {
    spec = parse_weights(opt.weights, ids);
  } else if (ids.size() == 1) {
    spec = MetricSpec::single(ids.front());
  } else {
    throw Diag(
        "error: select needs exactly one metric in --metrics, or aggregate "
        "--weights");
  }
  DiversityMode mode = diversity_mode_from_string(opt.mode);

  SimilarityMatrix m =
      pairwise_matrix(ctx, in.plans, in.labels, spec, opt.threads);
  std::vector<std::string> chosen = select_diverse(m, opt.k);
  std::optional<double> score;
  if (chosen.size() >= 2) score = subset_diversity(m, chosen, mode);

  if (opt.format == "json") {
    json out;
    out["schema"] = 1;
    out["plans"] = in.labels;
    out["metrics"] = json::object();
    out["metrics"][m.metric] = matrix_json(m, opt.timing);
    json sel;
    sel["metric"] = m.metric;
    sel["mode"] = opt.mode;
    sel["k"] = opt.k;
    sel["labels"] = chosen;
    sel["diversity_score"] = score ? json(snap(*score)) : json(nullptr);
    out["selection"] = std::move(sel);
    write_output(opt.output, out.dump(2) + "\n");
  } else {
    std::string out;
    csv_matrix(out, m, opt.timing);
    out += "\n# selection\n";
    out += "metric," + csv_field(m.metric) + "\n";
    out += "mode," + opt.mode + "\n";
    out += "k," + std::to_string(opt.k) + "\n";
    out += "diversity_score," + (score ? fixed6(snap(*score)) : "n/a") + "\n";
    out += "selected";
    for (const std::string& label : chosen) out += "," + csv_field(label);
    out += "\n";
    write_output(opt.output, out);
  }
  return 0;
}

int run_trace(const Options& opt) {
  Inputs in = load_inputs(opt);
  TaskContext ctx(in.dom, in.prob);
  require_valid_plans(ctx, in);

  SubgoalAlphabet alpha = subgoal_alphabet(ctx);
  std::vector<std::string> traces;
  traces.reserve(in.plans.size());
  for (const Plan& plan : in.plans)
    traces.push_back(subgoal_trace(ctx, plan).render());

  if (opt.format == "json") {
    json out;
    out["schema"] = 1;
    out["plans"] = in.labels;
    json letters = json::array();
    for (std::size_t i = 0; i < alpha.goal_atoms.size(); ++i) {
      json entry;
      entry["symbol"] = alpha.symbols[i];
      entry["atom"] = ctx.atoms().name(alpha.goal_atoms[i]);
      letters.push_back(std::move(entry));
    }
    out["alphabet"] = std::move(letters);
    json rendered = json::object();
    for (std::size_t i = 0; i < in.labels.size(); ++i)
      rendered[in.labels[i]] = traces[i];
    out["traces"] = std::move(rendered);
    write_output(opt.output, out.dump(2) + "\n");
  } else {
    std::string out = "# alphabet\nsymbol,atom\n";
    for (std::size_t i = 0; i < alpha.goal_atoms.size(); ++i)
      out += alpha.symbols[i] + "," +
             csv_field(ctx.atoms().name(alpha.goal_atoms[i])) + "\n";
    out += "\n# traces\nplan,trace\n";
    for (std::size_t i = 0; i < in.labels.size(); ++i)
      out += csv_field(in.labels[i]) + "," + traces[i] + "\n";
    write_output(opt.output, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Plan similarity metrics, diversity scoring, and diverse-subset "
      "selection for STRIPS planning tasks"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool with_metrics) {
    cmd->add_option("--domain", opt.domain, "PDDL domain file")->required();
    cmd->add_option("--problem", opt.problem, "PDDL problem file")->required();
    cmd->add_option("--plans", opt.plans,
                    "plan files or directories of plan files")
        ->required();
    cmd->add_option("--format", opt.format, "output format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", opt.output,
                    "output path, - for stdout (default)");
    if (with_metrics) {
      cmd->add_option("--metrics", opt.metrics,
                      "comma-separated metrics: actions|a, states|s, "
                      "causal|c, uniqueness|u, flex, sgo");
      cmd->add_option("--weights", opt.weights,
                      "aggregate weights, e.g. a=0.5,sgo=0.5");
      cmd->add_flag("--timing", opt.timing, "emit per-pair compute times");
      cmd->add_option("--threads", opt.threads,
                      "worker threads for matrix cells (default 1)")
          ->check(CLI::PositiveNumber);
    }
  };

  CLI::App* score =
      app.add_subcommand("score", "compute pairwise similarity matrices");
  add_common(score, true);
  CLI::App* select =
      app.add_subcommand("select", "pick k maximally diverse plans");
  add_common(select, true);
  select->add_option("--select-k", opt.k, "number of plans to select")
      ->required()
      ->check(CLI::PositiveNumber);
  select
      ->add_option("--diversity-mode", opt.mode,
                   "score reported for the selection (default minimum)")
      ->check(CLI::IsMember({"average", "minimum"}));
  CLI::App* trace =
      app.add_subcommand("trace", "print subgoal alphabets and traces");
  add_common(trace, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return run_score(opt);
    if (select->parsed()) return run_select(opt);
    return run_trace(opt);
  } catch (const Diag& diag) {
    std::cerr << diag.what() << '\n';
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
