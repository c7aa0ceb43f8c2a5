#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divcdcr/model.hpp"

namespace divcdcr {

// Local clusters of one discourse that share a referent. Clusters are
// grouped by Wikidata URI; URI-less clusters join by global entity name,
// including joining the URI group of a same-named linked cluster.
struct DiscourseEntity {
  std::string discourse_id;
  std::string key;  // URI when any member cluster has one, else the name
  bool key_is_uri = false;
  std::vector<LocalCluster> clusters;  // by (document id, first mention offset)

  std::size_t mention_count() const;
  friend bool operator==(const DiscourseEntity&, const DiscourseEntity&) = default;
};

// Discourse entities that share a URI across discourses. Never built for
// URI-less entities.
struct GlobalReferent {
  std::string uri;
  std::vector<DiscourseEntity> discourse_entities;  // by discourse id

  friend bool operator==(const GlobalReferent&, const GlobalReferent&) = default;
};

struct FrameSurface {
  std::string document_id;
  std::string mention_id;
  Span span;
  std::string text;
  EntityTypeLabel entity_type = EntityType::PER;

  friend bool operator==(const FrameSurface&, const FrameSurface&) = default;
};

// The word choices used for one referent by one outlet.
struct Frame {
  std::string referent_key;
  OutletCode outlet = OutletCode::M;
  std::vector<FrameSurface> surfaces;  // document order

  friend bool operator==(const Frame&, const Frame&) = default;
};

// Sorted by discourse id, then URI-keyed entities by numeric QID, then
// name-keyed entities by name. Throws Error(AmbiguousGrouping) when a global
// entity name carries two different URIs anywhere in the corpus.
std::vector<DiscourseEntity> build_discourse_entities(const Corpus& corpus);

// Sorted by numeric QID.
std::vector<GlobalReferent> build_global_referents(const Corpus& corpus);

// referent is a QID or a name. A QID selects every discourse entity keyed by
// it; a name selects entities keyed by it or containing a cluster of that
// name. One frame per outlet with at least one mention, in LL..RR order.
// Throws Error(UnknownReferent).
std::vector<Frame> extract_frames(const Corpus& corpus, std::string_view referent);

struct RelationStats {
  std::map<std::pair<OutletCode, RelationType>, std::size_t> counts;
  std::map<std::string, std::size_t> discourse_totals;

  friend bool operator==(const RelationStats&, const RelationStats&) = default;
};

// Edge counts per (outlet, label) and per discourse. With dense, every
// outlet x label combination is present, zero or not. Edges whose label is
// outside the vocabulary are not counted.
RelationStats relation_stats(const Corpus& corpus, bool dense = false);

// Orders QIDs by their numeric part.
bool qid_less(std::string_view a, std::string_view b);

// Single-line JSON records. The *_from_machine readers throw
// Error(SyntaxError) for malformed JSON and Error(SchemaError) for missing
// or mistyped fields.
std::string to_machine(const DiscourseEntity& entity);
std::string to_machine(const GlobalReferent& referent);
std::string to_machine(const Frame& frame);
std::string to_machine(const RelationStats& stats);
DiscourseEntity discourse_entity_from_machine(std::string_view line);
GlobalReferent global_referent_from_machine(std::string_view line);
Frame frame_from_machine(std::string_view line);
RelationStats relation_stats_from_machine(std::string_view line);

}  // namespace divcdcr
