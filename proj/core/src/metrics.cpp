#include "piq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "piq/errors.hpp"

namespace piq {

double average_precision(const std::vector<char>& relevance, int num_relevant_total) {
  if (num_relevant_total <= 0)
    throw DegenerateQuery("query has no relevant gallery items");
  long hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < relevance.size(); ++k) {
    if (relevance[k]) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  if (hits > num_relevant_total)
    throw RangeError("relevance list contains more hits than num_relevant_total");
  return sum / static_cast<double>(num_relevant_total);
}

RetrievalResult rank_gallery(const Eigen::Ref<const Eigen::RowVectorXf>& query_row,
                             const EmbeddingMatrix& gallery,
                             const std::unordered_set<int>& excluded,
                             std::string query_id) {
  if (gallery.rows() > 0 && query_row.size() != gallery.cols())
    throw DimensionMismatch("query has " + std::to_string(query_row.size()) +
                            " dims, gallery has " + std::to_string(gallery.cols()));

  const Eigen::RowVectorXd q = query_row.cast<double>();
  const double qn = q.norm();

  RetrievalResult result;
  result.query_id = std::move(query_id);
  std::vector<std::pair<double, int>> scored;
  scored.reserve(static_cast<std::size_t>(gallery.rows()));
  for (int i = 0; i < gallery.rows(); ++i) {
    if (excluded.count(i)) continue;
    const Eigen::RowVectorXd g = gallery.row(i).cast<double>();
    const double gn = g.norm();
    const double sim = (qn > 0.0 && gn > 0.0) ? q.dot(g) / (qn * gn) : 0.0;
    scored.emplace_back(sim, i);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  result.ranked.reserve(scored.size());
  result.similarity.reserve(scored.size());
  for (const auto& [sim, idx] : scored) {
    result.ranked.push_back(idx);
    result.similarity.push_back(sim);
  }
  return result;
}

std::unordered_set<int> exclusion_set(const std::string& query_id,
                                      const GroupAssignment& groups,
                                      const std::vector<std::string>& gallery_ids) {
  std::unordered_set<int> out;
  const auto it = groups.group_of.find(query_id);
  if (it == groups.group_of.end()) return out;
  const int group = it->second;
  for (std::size_t i = 0; i < gallery_ids.size(); ++i) {
    const auto git = groups.group_of.find(gallery_ids[i]);
    if (git != groups.group_of.end() && git->second == group)
      out.insert(static_cast<int>(i));
  }
  return out;
}

RetrievalSummary macro_retrieval(
    const std::map<std::string, std::vector<RetrievalResult>>& queries_by_person,
    const std::vector<std::string>& gallery_person_ids) {
  RetrievalSummary summary;
  double sum_map = 0.0, sum_r1 = 0.0, sum_r5 = 0.0;

  for (const auto& [person_id, results] : queries_by_person) {
    double id_ap = 0.0, id_r1 = 0.0, id_r5 = 0.0;
    int scored = 0;
    for (const RetrievalResult& r : results) {
      std::vector<char> relevance(r.ranked.size(), 0);
      int total = 0;
      for (std::size_t k = 0; k < r.ranked.size(); ++k) {
        const int idx = r.ranked[k];
        if (idx < 0 || static_cast<std::size_t>(idx) >= gallery_person_ids.size())
          throw RangeError("retrieval result references gallery index " + std::to_string(idx));
        if (gallery_person_ids[static_cast<std::size_t>(idx)] == person_id) {
          relevance[k] = 1;
          ++total;
        }
      }
      if (total == 0) {
        ++summary.num_queries_dropped;
        continue;
      }
      id_ap += average_precision(relevance, total);
      auto hit_within = [&relevance](std::size_t k) {
        const std::size_t top = std::min(k, relevance.size());
        for (std::size_t i = 0; i < top; ++i)
          if (relevance[i]) return 1.0;
        return 0.0;
      };
      id_r1 += hit_within(1);
      id_r5 += hit_within(5);
      ++scored;
    }
    if (scored == 0) continue;
    sum_map += id_ap / scored;
    sum_r1 += id_r1 / scored;
    sum_r5 += id_r5 / scored;
    summary.num_queries += scored;
    ++summary.num_ids;
  }

  if (summary.num_ids == 0)
    throw EmptyQuerySet("no id has a scorable query");
  summary.macro_map = sum_map / summary.num_ids;
  summary.macro_rank1 = sum_r1 / summary.num_ids;
  summary.macro_rank5 = sum_r5 / summary.num_ids;
  return summary;
}

namespace {

ClassScore score_from_counts(int label, long tp, long fp, long fn) {
  ClassScore s;
  s.label = label;
  s.support = tp + fn;
  s.predicted = tp + fp;
  s.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  s.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  s.f1 = (s.precision + s.recall) > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  s.included = (s.support > 0 || s.predicted > 0);
  return s;
}

double macro_mean(const std::vector<ClassScore>& per_class) {
  double sum = 0.0;
  int n = 0;
  for (const ClassScore& s : per_class) {
    if (!s.included) continue;
    sum += s.f1;
    ++n;
  }
  return n > 0 ? sum / n : 0.0;
}

}  // namespace

TaskMetric macro_f1_single(const std::vector<int>& pred, const std::vector<int>& gt,
                           int cardinality, std::string task_name) {
  if (pred.size() != gt.size())
    throw LengthMismatch("pred has " + std::to_string(pred.size()) + " entries, gt has " +
                         std::to_string(gt.size()));
  std::vector<long> tp(static_cast<std::size_t>(cardinality), 0);
  std::vector<long> fp(static_cast<std::size_t>(cardinality), 0);
  std::vector<long> fn(static_cast<std::size_t>(cardinality), 0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const int p = pred[i], g = gt[i];
    if (p < 0 || p >= cardinality || g < 0 || g >= cardinality)
      throw RangeError("label index out of range at sample " + std::to_string(i));
    if (p == g) {
      ++tp[static_cast<std::size_t>(p)];
    } else {
      ++fp[static_cast<std::size_t>(p)];
      ++fn[static_cast<std::size_t>(g)];
    }
  }
  TaskMetric metric;
  metric.task = std::move(task_name);
  for (int c = 0; c < cardinality; ++c)
    metric.per_class.push_back(score_from_counts(
        c, tp[static_cast<std::size_t>(c)], fp[static_cast<std::size_t>(c)],
        fn[static_cast<std::size_t>(c)]));
  metric.macro_f1 = macro_mean(metric.per_class);
  return metric;
}

TaskMetric macro_f1_multilabel(const std::vector<std::vector<int>>& pred,
                               const std::vector<std::vector<int>>& gt,
                               int cardinality, std::string task_name) {
  if (pred.size() != gt.size())
    throw LengthMismatch("pred has " + std::to_string(pred.size()) + " entries, gt has " +
                         std::to_string(gt.size()));
  std::vector<long> tp(static_cast<std::size_t>(cardinality), 0);
  std::vector<long> fp(static_cast<std::size_t>(cardinality), 0);
  std::vector<long> fn(static_cast<std::size_t>(cardinality), 0);
  std::vector<char> in_gt(static_cast<std::size_t>(cardinality));
  std::vector<char> in_pred(static_cast<std::size_t>(cardinality));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (gt[i].empty())
      throw EmptyGroundTruthSet("sample " + std::to_string(i) + " has an empty label set");
    std::fill(in_gt.begin(), in_gt.end(), 0);
    std::fill(in_pred.begin(), in_pred.end(), 0);
    for (int g : gt[i]) {
      if (g < 0 || g >= cardinality)
        throw RangeError("gt label index out of range at sample " + std::to_string(i));
      in_gt[static_cast<std::size_t>(g)] = 1;
    }
    for (int p : pred[i]) {
      if (p < 0 || p >= cardinality)
        throw IndexOutOfRange("pred label index out of range at sample " + std::to_string(i));
      in_pred[static_cast<std::size_t>(p)] = 1;
    }
    for (int c = 0; c < cardinality; ++c) {
      const std::size_t cc = static_cast<std::size_t>(c);
      if (in_gt[cc] && in_pred[cc]) ++tp[cc];
      if (!in_gt[cc] && in_pred[cc]) ++fp[cc];
      if (in_gt[cc] && !in_pred[cc]) ++fn[cc];
    }
  }
  TaskMetric metric;
  metric.task = std::move(task_name);
  for (int c = 0; c < cardinality; ++c)
    metric.per_class.push_back(score_from_counts(
        c, tp[static_cast<std::size_t>(c)], fp[static_cast<std::size_t>(c)],
        fn[static_cast<std::size_t>(c)]));
  metric.macro_f1 = macro_mean(metric.per_class);
  return metric;
}

double piq_score(double macro_map, double macro_rank1,
                 const std::array<double, 4>& appearance_f1,
                 const std::array<double, 2>& posture_f1, double expression_f1) {
  auto check01 = [](double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
      throw RangeError(std::string(what) + " must lie in [0,1]");
  };
  check01(macro_map, "macro_map");
  check01(macro_rank1, "macro_rank1");
  for (double v : appearance_f1) check01(v, "appearance F1");
  for (double v : posture_f1) check01(v, "posture F1");
  check01(expression_f1, "expression F1");

  const double reid = (macro_rank1 + macro_map) / 2.0;
  const double app =
      (appearance_f1[0] + appearance_f1[1] + appearance_f1[2] + appearance_f1[3]) / 4.0;
  const double pos = (posture_f1[0] + posture_f1[1]) / 2.0;
  const double emo = expression_f1;
  return (reid + app + pos + emo) / 4.0;
}

double lts(const std::vector<long long>& counts, double k) {
  if (!(k > 0.0 && k < 1.0)) throw RangeError("k must lie in (0,1)");
  if (counts.empty()) throw EmptyHistogram("histogram has no classes");
  long long total = 0;
  for (long long c : counts) {
    if (c < 0) throw RangeError("histogram counts must be non-negative");
    total += c;
  }
  if (total == 0) throw EmptyHistogram("histogram is all zeros");

  // The covering threshold k*total is compared exactly: k is quantized to
  // nanobits so integer sums never lose to float rounding at the boundary
  // (e.g. 90 >= 0.9 * 100 must hold).
  const unsigned long long k_num =
      std::max(1LL, std::llround(k * 1e9));
  auto covers = [&](long long sum) {
    return static_cast<unsigned __int128>(sum) * 1000000000ULL >=
           static_cast<unsigned __int128>(k_num) * static_cast<unsigned long long>(total);
  };

  std::vector<long long> sorted(counts);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  long long acc = 0;
  int m = 0;
  for (long long c : sorted) {
    if (covers(acc)) break;
    acc += c;
    ++m;
  }
  return static_cast<double>(m) / (k * static_cast<double>(counts.size()));
}

void finalize_report(EvaluationReport& report) {
  report.appearance_score = (report.appearance[0].macro_f1 + report.appearance[1].macro_f1 +
                             report.appearance[2].macro_f1 + report.appearance[3].macro_f1) /
                            4.0;
  report.posture_score = (report.posture[0].macro_f1 + report.posture[1].macro_f1) / 2.0;
  report.piq = piq_score(report.reid.macro_map, report.reid.macro_rank1,
                         {report.appearance[0].macro_f1, report.appearance[1].macro_f1,
                          report.appearance[2].macro_f1, report.appearance[3].macro_f1},
                         {report.posture[0].macro_f1, report.posture[1].macro_f1},
                         report.emotion.macro_f1);
}

}  // namespace piq
