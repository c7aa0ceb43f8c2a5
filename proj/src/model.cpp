#include "divcdcr/model.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "divcdcr/unicode.hpp"

namespace divcdcr {

std::string_view to_string(OutletCode v) {
  switch (v) {
    case OutletCode::LL: return "LL";
    case OutletCode::L: return "L";
    case OutletCode::M: return "M";
    case OutletCode::R: return "R";
    case OutletCode::RR: return "RR";
  }
  return "?";
}

std::string_view to_string(EntityType v) {
  switch (v) {
    case EntityType::PER: return "PER";
    case EntityType::ORG: return "ORG";
    case EntityType::GRP: return "GRP";
    case EntityType::GPE: return "GPE";
    case EntityType::LOC: return "LOC";
    case EntityType::OBJ: return "OBJ";
  }
  return "?";
}

std::string_view to_string(RelationType v) {
  switch (v) {
    case RelationType::MET: return "MET";
    case RelationType::MER: return "MER";
    case RelationType::CLS: return "CLS";
    case RelationType::STF: return "STF";
    case RelationType::DEC: return "DEC";
    case RelationType::BRD: return "BRD";
  }
  return "?";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::error: return "error";
  }
  return "?";
}

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view s, const Enum (&values)[N]) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<OutletCode> parse_outlet(std::string_view s) { return lookup(s, kAllOutlets); }
std::optional<EntityType> parse_entity_type(std::string_view s) {
  return lookup(s, kAllEntityTypes);
}
std::optional<RelationType> parse_relation_type(std::string_view s) {
  return lookup(s, kAllRelationTypes);
}
std::optional<Severity> parse_severity(std::string_view s) {
  constexpr Severity all[] = {Severity::info, Severity::warning, Severity::error};
  return lookup(s, all);
}

bool is_qid(std::string_view s) noexcept {
  if (s.size() < 2 || s[0] != 'Q') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

const Mention* Document::find_mention(std::string_view mention_id) const {
  for (const auto& m : mentions) {
    if (m.id == mention_id) return &m;
  }
  return nullptr;
}

std::size_t Corpus::document_count() const {
  std::size_t n = 0;
  for (const auto& d : discourses) n += d.documents.size();
  return n;
}

const Document* Corpus::find_document(std::string_view document_id) const {
  for (const auto& d : discourses) {
    for (const auto& doc : d.documents) {
      if (doc.id == document_id) return &doc;
    }
  }
  return nullptr;
}

std::vector<LocalCluster> derive_local_clusters(const Document& document) {
  std::vector<const Mention*> named;
  for (const auto& m : document.mentions) {
    if (m.global_entity && !m.global_entity->empty()) named.push_back(&m);
  }
  std::sort(named.begin(), named.end(), [](const Mention* a, const Mention* b) {
    return std::tie(a->span.start, a->span.end, a->id) <
           std::tie(b->span.start, b->span.end, b->id);
  });

  std::vector<LocalCluster> clusters;
  std::map<std::string, std::size_t, std::less<>> by_name;
  for (const Mention* m : named) {
    auto [it, inserted] = by_name.try_emplace(*m->global_entity, clusters.size());
    if (inserted) {
      clusters.push_back(LocalCluster{document.id, *m->global_entity, {}, std::nullopt});
    }
    LocalCluster& cluster = clusters[it->second];
    cluster.mention_ids.push_back(m->id);
    if (m->wikidata && !m->wikidata->empty()) {
      if (cluster.uri && *cluster.uri != *m->wikidata) {
        throw Error(ErrorKind::ConflictingUri, "cluster '" + cluster.name + "' in document " +
                                                   document.id + ": " + *cluster.uri +
                                                   " vs " + *m->wikidata);
      }
      cluster.uri = *m->wikidata;
    }
  }
  return clusters;
}

std::string surface_text(const Document& document, const Span& span) {
  return std::string(unicode::TextIndex(document.text).slice(span.start, span.end));
}

Corpus canonicalize(Corpus corpus) {
  std::sort(corpus.discourses.begin(), corpus.discourses.end(),
            [](const Discourse& a, const Discourse& b) { return a.id < b.id; });
  for (auto& discourse : corpus.discourses) {
    std::sort(discourse.documents.begin(), discourse.documents.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    for (auto& doc : discourse.documents) {
      std::sort(doc.mentions.begin(), doc.mentions.end(),
                [](const Mention& a, const Mention& b) {
                  return std::tie(a.span.start, a.span.end, a.id) <
                         std::tie(b.span.start, b.span.end, b.id);
                });
      std::stable_sort(doc.relations.begin(), doc.relations.end(),
                       [](const RelationEdge& a, const RelationEdge& b) {
                         return std::tie(a.source, a.target, a.label.text()) <
                                std::tie(b.source, b.target, b.label.text());
                       });
    }
  }
  return corpus;
}

}  // namespace divcdcr
