#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "piq/dedup.hpp"

namespace piq {

// N x D row-major feature rows, one per sample, aligned with an id list.
using EmbeddingMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One query's ranked gallery, excluded indices already removed.
struct RetrievalResult {
  std::string query_id;
  std::vector<int> ranked;          // gallery row indices, best first
  std::vector<double> similarity;   // aligned with ranked, non-increasing
};

struct ClassScore {
  int label = 0;
  long support = 0;    // ground-truth count
  long predicted = 0;  // prediction count
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool included = false;  // contributes to the macro mean
};

struct TaskMetric {
  std::string task;
  double macro_f1 = 0.0;
  std::vector<ClassScore> per_class;
};

struct RetrievalSummary {
  double macro_map = 0.0;
  double macro_rank1 = 0.0;
  double macro_rank5 = 0.0;
  int num_ids = 0;             // ids contributing to the macro mean
  int num_queries = 0;         // queries scored
  int num_queries_dropped = 0; // exclusion left them without relevant items
};

struct EvaluationReport {
  RetrievalSummary reid;
  std::array<TaskMetric, 4> appearance;  // gender, age, physique, height
  double appearance_score = 0.0;
  std::array<TaskMetric, 2> posture;     // body, arm
  double posture_score = 0.0;
  TaskMetric emotion;                    // expression
  double piq = 0.0;
};

// AP = sum over relevant ranks of precision@rank, divided by
// num_relevant_total. The list may be a truncated ranking, hence the
// explicit total. Throws DegenerateQuery when the total is zero.
double average_precision(const std::vector<char>& relevance, int num_relevant_total);

// Cosine similarity of the query against every non-excluded gallery row,
// sorted descending; ties broken by ascending gallery index.
RetrievalResult rank_gallery(const Eigen::Ref<const Eigen::RowVectorXf>& query_row,
                             const EmbeddingMatrix& gallery,
                             const std::unordered_set<int>& excluded,
                             std::string query_id = {});

// Gallery indices sharing the query's dedup group; empty if ungrouped.
std::unordered_set<int> exclusion_set(const std::string& query_id,
                                      const GroupAssignment& groups,
                                      const std::vector<std::string>& gallery_ids);

// Per-ID mean of AP / rank-k hits over that id's queries, then an unweighted
// mean over ids. Queries whose exclusion removed every relevant gallery item
// are dropped; ids left without queries are dropped from the macro mean.
RetrievalSummary macro_retrieval(
    const std::map<std::string, std::vector<RetrievalResult>>& queries_by_person,
    const std::vector<std::string>& gallery_person_ids);

// Macro F1 over a single-label task. Classes with zero ground-truth support
// and zero predictions are excluded from the macro mean.
TaskMetric macro_f1_single(const std::vector<int>& pred, const std::vector<int>& gt,
                           int cardinality, std::string task_name = {});

// Macro F1 over a multi-label task: per-label one-vs-rest binary F1,
// averaged over labels with support or predictions.
TaskMetric macro_f1_multilabel(const std::vector<std::vector<int>>& pred,
                               const std::vector<std::vector<int>>& gt,
                               int cardinality, std::string task_name = {});

// PIQ = mean of the four aspect scores, where
//   ReID = (macro_rank1 + macro_map) / 2, App = mean of the four appearance
//   F1s, Pos = mean of the two posture F1s, Emo = expression F1.
double piq_score(double macro_map, double macro_rank1,
                 const std::array<double, 4>& appearance_f1,
                 const std::array<double, 2>& posture_f1, double expression_f1);

// Long Tail Score: the minimum number of classes whose counts cover a k
// fraction of all samples, divided by k*N. Greedy over descending counts,
// which is optimal for this covering problem.
double lts(const std::vector<long long>& counts, double k);

// Aspect aggregates + PIQ from already-computed task metrics.
void finalize_report(EvaluationReport& report);

}  // namespace piq
