#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divcdcr/model.hpp"

namespace divcdcr {

// Scoring of two annotations of the same documents. The first corpus is
// gold, the second is system; agreement studies score both orders.

struct MentionRef {
  std::string document_id;
  std::string mention_id;
  Span span;

  friend bool operator==(const MentionRef&, const MentionRef&) = default;
};

struct MentionAlignment {
  std::vector<std::pair<MentionRef, MentionRef>> pairs;  // (gold, system)
  std::vector<MentionRef> unmatched_a;
  std::vector<MentionRef> unmatched_b;
};

// Exact (document id, span) matching; duplicates pair up in mention-id order.
// Documents present on one side only leave all their mentions unmatched.
// Throws Error(TextMismatch) when a shared document id has different text.
MentionAlignment align_mentions(const Corpus& a, const Corpus& b);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Prf&, const Prf&) = default;
};

// 0/0 resolves to 0 for every ratio.
double safe_ratio(double num, double den) noexcept;
Prf make_prf(double precision, double recall) noexcept;

// Clusters are sets of mention indices. A mention missing from one side has
// no counterpart there: it is its own part for MUC and overlaps nothing for
// the other metrics. build_clusterings covers the same universe on both sides.
using Clustering = std::vector<std::vector<std::size_t>>;

struct ClusteringPair {
  std::vector<MentionRef> mentions;  // index -> mention
  Clustering gold;
  Clustering sys;
};

// Identity clusters of both sides over the union of their mentions. Aligned
// pairs share one index; unclustered and unmatched mentions are singletons.
ClusteringPair build_clusterings(const Corpus& gold, const Corpus& sys,
                                 const MentionAlignment& alignment);

Prf mention_detection_f1(const MentionAlignment& alignment);
Prf muc(const Clustering& gold, const Clustering& sys);
Prf b_cubed(const Clustering& gold, const Clustering& sys);
// Entity-based CEAF with phi4 similarity and an optimal one-to-one alignment.
Prf ceaf_e(const Clustering& gold, const Clustering& sys);
// Link-based entity-aware metric; a singleton counts one self-link, resolved
// only when the mention is a singleton on the other side too.
Prf lea(const Clustering& gold, const Clustering& sys);
double conll_average(const Prf& muc, const Prf& b_cubed, const Prf& ceaf_e) noexcept;

struct LabelCounts {
  std::size_t gold = 0;
  std::size_t sys = 0;
  std::size_t matched = 0;

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct ConfusionCell {
  RelationType gold;
  RelationType sys;
  std::size_t count = 0;
  int rank_distance = 0;  // |precedence_rank(gold) - precedence_rank(sys)|

  friend bool operator==(const ConfusionCell&, const ConfusionCell&) = default;
};

struct EdgeScores {
  std::map<RelationType, LabelCounts> counts;  // all six labels
  std::map<RelationType, Prf> per_label;
  Prf micro;
  std::vector<ConfusionCell> confusion;  // endpoint-matched, label-mismatched

  friend bool operator==(const EdgeScores&, const EdgeScores&) = default;
};

// An edge matches when both endpoints are aligned pairwise in the same
// direction and the labels agree. Edges with out-of-vocabulary labels are
// ignored.
EdgeScores relation_edge_prf(const Corpus& a, const Corpus& b,
                             const MentionAlignment& alignment);

// Cohen's kappa over entity types of aligned mentions. When chance agreement
// is 1, kappa is 1 for perfect observed agreement and 0 otherwise. Throws
// Error(EmptyAlignment) when there are no aligned pairs.
double entity_type_kappa(const MentionAlignment& alignment, const Corpus& a, const Corpus& b);

struct ScoreReport {
  Prf mentions;
  Prf muc;
  Prf b_cubed;
  Prf ceaf_e;
  Prf lea;
  double conll = 0.0;
  EdgeScores edges;
  std::optional<double> kappa;  // absent when no mention is aligned

  friend bool operator==(const ScoreReport&, const ScoreReport&) = default;
};

ScoreReport score_corpora(const Corpus& gold, const Corpus& sys);

// Metric names accepted by format_report's selection.
inline constexpr std::string_view kMetricNames[] = {"mentions", "muc",  "b3",    "ceaf_e",
                                                    "lea",      "conll", "edges", "kappa"};

// Aligned text table, values with four decimals.
std::string format_report(const ScoreReport& report, const std::set<std::string>& metrics);
// A single JSON object mirroring ScoreReport.
std::string report_to_machine(const ScoreReport& report);
ScoreReport report_from_machine(std::string_view text);

}  // namespace divcdcr
