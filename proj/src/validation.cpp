#include "divcdcr/validation.hpp"

#include <algorithm>
#include <tuple>

#include <json.hpp>

#include "divcdcr/tabular.hpp"
#include "divcdcr/unicode.hpp"

namespace divcdcr {

namespace {

constexpr RuleInfo kCatalog[] = {
    {"V01", Severity::error, "entity type is one of PER, ORG, GRP, GPE, LOC, OBJ"},
    {"V02", Severity::error, "relation label is one of MET, MER, CLS, STF, DEC, BRD"},
    {"V03", Severity::error, "mention span has no leading or trailing whitespace/punctuation"},
    {"V04", Severity::error, "every local cluster has at least two mentions"},
    {"V05", Severity::warning,
     "every mention is in a cluster of two or more or is an endpoint of a relation"},
    {"V06", Severity::error, "all mentions of a cluster share one entity type"},
    {"V07", Severity::warning, "at most one mention per cluster carries a Wikidata value"},
    {"V08a", Severity::error, "a global entity name maps to at most one Wikidata value"},
    {"V08b", Severity::warning, "a Wikidata value is used under one global entity name"},
    {"V09", Severity::warning, "relation antecedent does not start after its anaphor"},
    {"V10", Severity::warning, "at most one MET relation per ordered pair of clusters"},
    {"V11", Severity::error, "relation endpoints are distinct mentions of the same document"},
    {"V12", Severity::error, "Wikidata value matches Q[0-9]+"},
    {"V13", Severity::warning, "no duplicate (source, target, label) relations"},
    {"V14", Severity::warning, "document id has the form <digits>_<LL|L|M|R|RR>"},
    {"V15", Severity::warning, "no two mentions share an identical span"},
    {"A01", Severity::warning, "linked Wikidata identifier exists"},
    {"A02", Severity::info, "cluster name shares a token with the Wikidata label"},
    {"A03", Severity::info, "unlinked cluster has a unique matching Wikidata candidate"},
    {"A04", Severity::info, "link could not be verified"},
};

struct Cluster {
  std::string name;
  std::vector<const Mention*> members;  // document order
};

// Groups named mentions by name without failing on URI conflicts.
std::vector<Cluster> group_by_name(const Document& doc) {
  std::vector<const Mention*> named;
  for (const auto& m : doc.mentions) {
    if (m.global_entity && !m.global_entity->empty()) named.push_back(&m);
  }
  std::sort(named.begin(), named.end(), [](const Mention* a, const Mention* b) {
    return std::tie(a->span.start, a->span.end, a->id) <
           std::tie(b->span.start, b->span.end, b->id);
  });
  std::vector<Cluster> clusters;
  std::map<std::string_view, std::size_t> index;
  for (const Mention* m : named) {
    auto [it, inserted] = index.try_emplace(*m->global_entity, clusters.size());
    if (inserted) clusters.push_back(Cluster{*m->global_entity, {}});
    clusters[it->second].members.push_back(m);
  }
  return clusters;
}

class DocumentChecker {
 public:
  DocumentChecker(const Document& doc, std::vector<ValidationFinding>& out,
                  const std::set<std::string_view>& enabled)
      : doc_(doc), out_(out), enabled_(enabled) {}

  void run() {
    for (const auto& m : doc_.mentions) by_id_.emplace(m.id, &m);
    clusters_ = group_by_name(doc_);
    for (const auto& c : clusters_) {
      for (const Mention* m : c.members) cluster_of_[m->id] = &c;
    }
    check_mentions();
    check_clusters();
    check_relations();
    check_document_id();
  }

 private:
  void emit(std::string_view rule, std::string subject, std::size_t offset,
            std::string message) {
    if (!enabled_.contains(rule)) return;
    const RuleInfo* info = find_rule(rule);
    out_.push_back(ValidationFinding{std::string(rule), info->severity, doc_.id,
                                     std::move(subject), offset, std::move(message)});
  }

  const Mention* mention(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : it->second;
  }

  static std::string edge_subject(const RelationEdge& e) {
    return e.source + "->" + e.target + ":" + e.label.text();
  }

  std::size_t edge_offset(const RelationEdge& e) const {
    const Mention* src = mention(e.source);
    return src ? src->span.start : 0;
  }

  void check_mentions() {
    std::set<std::string_view> endpoints;
    for (const auto& e : doc_.relations) {
      endpoints.insert(e.source);
      endpoints.insert(e.target);
    }
    const unicode::TextIndex text(doc_.text);
    std::map<Span, const Mention*> first_at_span;

    std::vector<const Mention*> ordered;
    for (const auto& m : doc_.mentions) ordered.push_back(&m);
    std::sort(ordered.begin(), ordered.end(), [](const Mention* a, const Mention* b) {
      return std::tie(a->span.start, a->span.end, a->id) <
             std::tie(b->span.start, b->span.end, b->id);
    });

    for (const Mention* m : ordered) {
      const std::size_t at = m->span.start;
      if (!m->entity_type.known()) {
        emit("V01", m->id, at,
             "entity type '" + m->entity_type.text() + "' is outside PER/ORG/GRP/GPE/LOC/OBJ");
      }
      if (m->span.start < m->span.end && m->span.end <= text.size()) {
        const char32_t first = text.at(m->span.start);
        const char32_t last = text.at(m->span.end - 1);
        if (unicode::is_trim_char(first) || unicode::is_trim_char(last)) {
          emit("V03", m->id, at,
               "surface '" + std::string(text.slice(m->span.start, m->span.end)) +
                   "' begins or ends with whitespace or punctuation");
        }
      }
      auto c = cluster_of_.find(m->id);
      const bool clustered = c != cluster_of_.end() && c->second->members.size() >= 2;
      if (!clustered && !endpoints.contains(m->id)) {
        emit("V05", m->id, at, "mention participates in no cluster and no relation");
      }
      if (m->wikidata && !is_qid(*m->wikidata)) {
        emit("V12", m->id, at, "Wikidata value '" + *m->wikidata + "' is not a QID");
      }
      auto [it, inserted] = first_at_span.emplace(m->span, m);
      if (!inserted) {
        emit("V15", m->id, at, "same span as mention " + it->second->id);
      }
    }
  }

  void check_clusters() {
    for (const auto& c : clusters_) {
      const std::size_t at = c.members.front()->span.start;
      if (c.members.size() < 2) {
        emit("V04", c.name, at, "cluster has a single mention " + c.members.front()->id);
      }
      std::set<std::string> types;
      std::size_t linked = 0;
      for (const Mention* m : c.members) {
        types.insert(m->entity_type.text());
        if (m->wikidata) ++linked;
      }
      if (types.size() > 1) {
        std::string list;
        for (const auto& t : types) list += (list.empty() ? "" : ",") + t;
        emit("V06", c.name, at, "cluster mixes entity types " + list);
      }
      if (linked > 1) {
        emit("V07", c.name, at,
             std::to_string(linked) + " mentions carry a Wikidata value");
      }
    }
  }

  void check_relations() {
    std::map<std::tuple<std::string_view, std::string_view, std::string_view>, int> seen;
    std::map<std::pair<const Cluster*, const Cluster*>, std::vector<const RelationEdge*>> met;
    for (const auto& e : doc_.relations) {
      const std::size_t at = edge_offset(e);
      if (!e.label.known()) {
        emit("V02", edge_subject(e), at,
             "label '" + e.label.text() + "' is outside MET/MER/CLS/STF/DEC/BRD");
      }
      const Mention* src = mention(e.source);
      const Mention* tgt = mention(e.target);
      if (!src || !tgt) {
        emit("V11", edge_subject(e), at,
             "endpoint " + (src ? e.target : e.source) + " is not a mention of this document");
      } else if (e.source == e.target) {
        emit("V11", edge_subject(e), at, "relation connects a mention to itself");
      } else if (tgt->span.start > src->span.start) {
        emit("V09", edge_subject(e), at, "antecedent " + e.target + " follows anaphor " +
                                             e.source + " (cataphoric)");
      }
      if (++seen[{e.source, e.target, e.label.text()}] == 2) {
        emit("V13", edge_subject(e), at, "duplicate relation");
      }
      if (src && tgt && e.label == RelationType::MET) {
        auto cs = cluster_of_.find(e.source);
        auto ct = cluster_of_.find(e.target);
        if (cs != cluster_of_.end() && ct != cluster_of_.end() && cs->second != ct->second) {
          met[{cs->second, ct->second}].push_back(&e);
        }
      }
    }
    for (const auto& [pair, edges] : met) {
      if (edges.size() > 1) {
        std::vector<std::size_t> offsets;
        for (const RelationEdge* e : edges) offsets.push_back(edge_offset(*e));
        std::sort(offsets.begin(), offsets.end());
        emit("V10", pair.first->name + "=>" + pair.second->name, offsets[1],
             std::to_string(edges.size()) + " MET relations between the same clusters");
      }
    }
  }

  void check_document_id() {
    auto parts = split_document_id(doc_.id);
    if (!parts) {
      emit("V14", doc_.id, 0, "document id is not of the form <digits>_<outlet>");
    } else if (parts->second != doc_.outlet) {
      emit("V14", doc_.id, 0,
           "outlet in id disagrees with outlet " + std::string(to_string(doc_.outlet)));
    }
  }

  const Document& doc_;
  std::vector<ValidationFinding>& out_;
  const std::set<std::string_view>& enabled_;
  std::map<std::string_view, const Mention*> by_id_;
  std::vector<Cluster> clusters_;
  std::map<std::string_view, const Cluster*> cluster_of_;
};

std::string join(const std::set<std::string>& values) {
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : ", ") + v;
  return out;
}

}  // namespace

std::span<const RuleInfo> rule_catalog() { return kCatalog; }

const RuleInfo* find_rule(std::string_view id) {
  for (const auto& r : kCatalog) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::clean: return "clean";
    case Outcome::warning: return "warning";
    case Outcome::error: return "error";
  }
  return "?";
}

std::map<std::string, std::set<std::string>> name_uri_conflicts(const Corpus& corpus) {
  std::map<std::string, std::set<std::string>> uris;
  for_each_document(corpus, [&](const Document& doc) {
    for (const auto& m : doc.mentions) {
      if (m.global_entity && m.wikidata) uris[*m.global_entity].insert(*m.wikidata);
    }
  });
  std::erase_if(uris, [](const auto& kv) { return kv.second.size() < 2; });
  return uris;
}

void sort_findings(std::vector<ValidationFinding>& findings) {
  std::sort(findings.begin(), findings.end(),
            [](const ValidationFinding& a, const ValidationFinding& b) {
              return std::tie(a.document_id, a.rule_id, a.subject_offset, a.subject, a.message) <
                     std::tie(b.document_id, b.rule_id, b.subject_offset, b.subject, b.message);
            });
}

std::vector<ValidationFinding> validate_corpus(const Corpus& corpus,
                                               const ValidationConfig& config) {
  std::set<std::string_view> enabled;
  for (const auto& r : kCatalog) {
    if (r.id[0] == 'V') enabled.insert(r.id);
  }
  for (const auto& id : config.disabled_rules) {
    if (id == "V08") {
      enabled.erase("V08a");
      enabled.erase("V08b");
    } else if (!enabled.erase(id)) {
      throw Error(ErrorKind::ConfigError, "unknown rule id '" + id + "'");
    }
  }

  std::vector<ValidationFinding> findings;
  for_each_document(corpus, [&](const Document& doc) {
    DocumentChecker(doc, findings, enabled).run();
  });

  if (enabled.contains("V08a")) {
    for (const auto& [name, uris] : name_uri_conflicts(corpus)) {
      findings.push_back(ValidationFinding{"V08a", Severity::error, std::nullopt, name, 0,
                                           "name used with Wikidata values " + join(uris) +
                                               "; disambiguate with a document-id suffix"});
    }
  }
  if (enabled.contains("V08b")) {
    std::map<std::string, std::set<std::string>> names;
    for_each_document(corpus, [&](const Document& doc) {
      for (const auto& m : doc.mentions) {
        if (m.global_entity && m.wikidata) names[*m.wikidata].insert(*m.global_entity);
      }
    });
    for (const auto& [uri, used] : names) {
      if (used.size() > 1) {
        findings.push_back(ValidationFinding{"V08b", Severity::warning, std::nullopt, uri, 0,
                                             "Wikidata value used under names " + join(used)});
      }
    }
  }
  sort_findings(findings);
  return findings;
}

Outcome max_severity(std::span<const ValidationFinding> findings) {
  Outcome out = Outcome::clean;
  for (const auto& f : findings) {
    if (f.severity == Severity::error) return Outcome::error;
    if (f.severity == Severity::warning) out = Outcome::warning;
  }
  return out;
}

bool fails(std::span<const ValidationFinding> findings, Severity fail_level) {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const ValidationFinding& f) { return f.severity >= fail_level; });
}

std::string format_finding(const ValidationFinding& f) {
  std::string subject = f.subject;
  if (subject.empty() || std::any_of(subject.begin(), subject.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n';
      })) {
    subject = nlohmann::json(subject).dump();
  }
  return f.rule_id + " " + std::string(to_string(f.severity)) + " " +
         f.document_id.value_or("-") + " " + subject + " " + f.message;
}

std::string finding_to_machine(const ValidationFinding& f) {
  nlohmann::ordered_json j;
  j["rule_id"] = f.rule_id;
  j["severity"] = to_string(f.severity);
  j["document_id"] = f.document_id ? nlohmann::ordered_json(*f.document_id) : nullptr;
  j["subject"] = f.subject;
  j["subject_offset"] = f.subject_offset;
  j["message"] = f.message;
  return j.dump();
}

ValidationFinding finding_from_machine(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line.begin(), line.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, e.what());
  }
  try {
    ValidationFinding f;
    f.rule_id = j.at("rule_id").get<std::string>();
    auto severity = parse_severity(j.at("severity").get<std::string>());
    if (!severity) throw Error(ErrorKind::SchemaError, "bad severity");
    f.severity = *severity;
    if (!j.at("document_id").is_null()) f.document_id = j.at("document_id").get<std::string>();
    f.subject = j.at("subject").get<std::string>();
    f.subject_offset = j.at("subject_offset").get<std::size_t>();
    f.message = j.at("message").get<std::string>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, e.what());
  }
}

}  // namespace divcdcr
