#include "divcdcr/entity_graph.hpp"

#include <algorithm>
#include <tuple>

#include "divcdcr/unicode.hpp"
#include "divcdcr/validation.hpp"

namespace divcdcr {

std::size_t DiscourseEntity::mention_count() const {
  std::size_t n = 0;
  for (const auto& c : clusters) n += c.mention_ids.size();
  return n;
}

bool qid_less(std::string_view a, std::string_view b) {
  const auto digits = [](std::string_view q) {
    q.remove_prefix(1);
    while (q.size() > 1 && q.front() == '0') q.remove_prefix(1);
    return q;
  };
  if (is_qid(a) && is_qid(b)) {
    const auto da = digits(a);
    const auto db = digits(b);
    if (da.size() != db.size()) return da.size() < db.size();
    if (da != db) return da < db;
  }
  return a < b;
}

std::vector<DiscourseEntity> build_discourse_entities(const Corpus& corpus) {
  if (auto conflicts = name_uri_conflicts(corpus); !conflicts.empty()) {
    const auto& [name, uris] = *conflicts.begin();
    throw Error(ErrorKind::AmbiguousGrouping,
                "name '" + name + "' carries " + std::to_string(uris.size()) +
                    " different Wikidata values (" + std::to_string(conflicts.size()) +
                    " conflicting names)");
  }

  std::vector<DiscourseEntity> entities;
  for (const auto& discourse : corpus.discourses) {
    std::vector<LocalCluster> clusters;
    for (const auto& doc : discourse.documents) {
      for (auto& c : derive_local_clusters(doc)) clusters.push_back(std::move(c));
    }
    // With names mapping to at most one URI, a URI-less cluster belongs to
    // the URI group of its name if one exists in this discourse.
    std::map<std::string, std::string> uri_of_name;
    for (const auto& c : clusters) {
      if (c.uri) uri_of_name.emplace(c.name, *c.uri);
    }
    std::map<std::pair<bool, std::string>, std::size_t> index;
    for (auto& c : clusters) {
      std::pair<bool, std::string> key{false, c.name};
      if (c.uri) {
        key = {true, *c.uri};
      } else if (auto it = uri_of_name.find(c.name); it != uri_of_name.end()) {
        key = {true, it->second};
      }
      auto [it, inserted] = index.try_emplace(key, entities.size());
      if (inserted) {
        entities.push_back(DiscourseEntity{discourse.id, key.second, key.first, {}});
      }
      entities[it->second].clusters.push_back(std::move(c));
    }
  }

  for (auto& e : entities) {
    // Cluster order within a document is preserved by the stable sort.
    std::stable_sort(e.clusters.begin(), e.clusters.end(),
                     [](const LocalCluster& a, const LocalCluster& b) {
                       return a.document_id < b.document_id;
                     });
  }
  std::sort(entities.begin(), entities.end(),
            [](const DiscourseEntity& a, const DiscourseEntity& b) {
              if (a.discourse_id != b.discourse_id) return a.discourse_id < b.discourse_id;
              if (a.key_is_uri != b.key_is_uri) return a.key_is_uri;
              if (a.key_is_uri) return qid_less(a.key, b.key);
              return a.key < b.key;
            });
  return entities;
}

std::vector<GlobalReferent> build_global_referents(const Corpus& corpus) {
  std::map<std::string, std::vector<DiscourseEntity>> by_uri;
  for (auto& e : build_discourse_entities(corpus)) {
    if (e.key_is_uri) by_uri[e.key].push_back(std::move(e));
  }
  std::vector<GlobalReferent> referents;
  for (auto& [uri, entities] : by_uri) {
    referents.push_back(GlobalReferent{uri, std::move(entities)});
  }
  std::sort(referents.begin(), referents.end(),
            [](const GlobalReferent& a, const GlobalReferent& b) { return qid_less(a.uri, b.uri); });
  return referents;
}

std::vector<Frame> extract_frames(const Corpus& corpus, std::string_view referent) {
  const bool by_uri = is_qid(referent);
  std::vector<DiscourseEntity> selected;
  for (auto& e : build_discourse_entities(corpus)) {
    bool match = false;
    if (by_uri) {
      match = e.key_is_uri && e.key == referent;
    } else {
      match = (!e.key_is_uri && e.key == referent) ||
              std::any_of(e.clusters.begin(), e.clusters.end(),
                          [&](const LocalCluster& c) { return c.name == referent; });
    }
    if (match) selected.push_back(std::move(e));
  }
  if (selected.empty()) {
    throw Error(ErrorKind::UnknownReferent, "no discourse entity for '" +
                                                std::string(referent) + "'");
  }

  std::map<OutletCode, std::vector<FrameSurface>> by_outlet;
  for (const auto& e : selected) {
    for (const auto& c : e.clusters) {
      const Document* doc = corpus.find_document(c.document_id);
      const unicode::TextIndex text(doc->text);
      for (const auto& id : c.mention_ids) {
        const Mention* m = doc->find_mention(id);
        by_outlet[doc->outlet].push_back(FrameSurface{
            doc->id, m->id, m->span, std::string(text.slice(m->span.start, m->span.end)),
            m->entity_type});
      }
    }
  }

  std::vector<Frame> frames;
  for (OutletCode outlet : kAllOutlets) {
    auto it = by_outlet.find(outlet);
    if (it == by_outlet.end()) continue;
    auto& surfaces = it->second;
    std::sort(surfaces.begin(), surfaces.end(), [](const FrameSurface& a, const FrameSurface& b) {
      return std::tie(a.document_id, a.span, a.mention_id) <
             std::tie(b.document_id, b.span, b.mention_id);
    });
    frames.push_back(Frame{std::string(referent), outlet, std::move(surfaces)});
  }
  return frames;
}

RelationStats relation_stats(const Corpus& corpus, bool dense) {
  RelationStats stats;
  if (dense) {
    for (OutletCode o : kAllOutlets) {
      for (RelationType r : kAllRelationTypes) stats.counts[{o, r}] = 0;
    }
  }
  for (const auto& discourse : corpus.discourses) {
    if (dense) stats.discourse_totals[discourse.id] += 0;
    for (const auto& doc : discourse.documents) {
      for (const auto& e : doc.relations) {
        if (!e.label.known()) continue;
        ++stats.counts[{doc.outlet, e.label.value()}];
        ++stats.discourse_totals[discourse.id];
      }
    }
  }
  return stats;
}

}  // namespace divcdcr
