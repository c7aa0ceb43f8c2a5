#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divcdcr/error.hpp"

namespace divcdcr {

// Political-leaning code of a news outlet, embedded in document ids.
enum class OutletCode { LL, L, M, R, RR };

enum class EntityType { PER, ORG, GRP, GPE, LOC, OBJ };

// Near-identity and bridging relation labels. Identity is never an explicit edge.
enum class RelationType { MET, MER, CLS, STF, DEC, BRD };

inline constexpr OutletCode kAllOutlets[] = {OutletCode::LL, OutletCode::L, OutletCode::M,
                                             OutletCode::R, OutletCode::RR};
inline constexpr EntityType kAllEntityTypes[] = {EntityType::PER, EntityType::ORG,
                                                 EntityType::GRP, EntityType::GPE,
                                                 EntityType::LOC, EntityType::OBJ};
inline constexpr RelationType kAllRelationTypes[] = {RelationType::MET, RelationType::MER,
                                                     RelationType::CLS, RelationType::STF,
                                                     RelationType::DEC, RelationType::BRD};

std::string_view to_string(OutletCode v);
std::string_view to_string(EntityType v);
std::string_view to_string(RelationType v);

std::optional<OutletCode> parse_outlet(std::string_view s);
std::optional<EntityType> parse_entity_type(std::string_view s);
std::optional<RelationType> parse_relation_type(std::string_view s);

// A closed-vocabulary value as it was read from an annotation source. Tool
// exports may carry spellings outside the vocabulary; those are kept verbatim
// so that validation can report them instead of the reader discarding them.
template <typename Enum>
class Label {
 public:
  Label(Enum kind) : kind_(kind), text_(to_string(kind)) {}  // NOLINT(implicit)

  static Label from_text(std::string_view text);

  bool known() const noexcept { return kind_.has_value(); }
  // Throws Error(BadEnum) for an out-of-vocabulary spelling.
  Enum value() const;
  const std::optional<Enum>& kind() const noexcept { return kind_; }
  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const Label& a, const Label& b) { return a.text_ == b.text_; }
  friend bool operator==(const Label& a, Enum b) { return a.kind_ == b; }

 private:
  Label() = default;
  std::optional<Enum> kind_;
  std::string text_;
};

namespace detail {
inline std::optional<OutletCode> parse_enum(std::string_view s, OutletCode*) {
  return parse_outlet(s);
}
inline std::optional<EntityType> parse_enum(std::string_view s, EntityType*) {
  return parse_entity_type(s);
}
inline std::optional<RelationType> parse_enum(std::string_view s, RelationType*) {
  return parse_relation_type(s);
}
}  // namespace detail

template <typename Enum>
Label<Enum> Label<Enum>::from_text(std::string_view text) {
  Label label;
  label.kind_ = detail::parse_enum(text, static_cast<Enum*>(nullptr));
  label.text_ = std::string(text);
  return label;
}

template <typename Enum>
Enum Label<Enum>::value() const {
  if (!kind_) throw Error(ErrorKind::BadEnum, "'" + text_ + "' is not a known label");
  return *kind_;
}

using EntityTypeLabel = Label<EntityType>;
using RelationLabel = Label<RelationType>;

// Code-point offsets, end-exclusive.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end > start ? end - start : 0; }
  bool contains(const Span& other) const noexcept {
    return start <= other.start && other.end <= end;
  }
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Mention {
  std::string id;
  Span span;
  EntityTypeLabel entity_type = EntityType::PER;
  std::optional<std::string> global_entity;
  std::optional<std::string> wikidata;

  friend bool operator==(const Mention&, const Mention&) = default;
};

// Directed anaphor (source) -> antecedent (target).
struct RelationEdge {
  std::string source;
  std::string target;
  RelationLabel label = RelationType::MET;

  friend bool operator==(const RelationEdge&, const RelationEdge&) = default;
};

struct Document {
  std::string id;
  std::string discourse_id;
  OutletCode outlet = OutletCode::M;
  std::string text;
  std::vector<Mention> mentions;
  std::vector<RelationEdge> relations;

  const Mention* find_mention(std::string_view mention_id) const;

  friend bool operator==(const Document&, const Document&) = default;
};

struct LocalCluster {
  std::string document_id;
  std::string name;
  std::vector<std::string> mention_ids;  // document order
  std::optional<std::string> uri;

  friend bool operator==(const LocalCluster&, const LocalCluster&) = default;
};

struct Discourse {
  std::string id;
  std::vector<Document> documents;

  friend bool operator==(const Discourse&, const Discourse&) = default;
};

inline constexpr std::string_view kFormatVersion = "1.0";

struct Corpus {
  std::string version{kFormatVersion};
  std::vector<Discourse> discourses;

  std::size_t document_count() const;
  const Document* find_document(std::string_view document_id) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Calls fn(const Document&) for every document in corpus order.
template <typename Fn>
void for_each_document(const Corpus& corpus, Fn&& fn) {
  for (const auto& discourse : corpus.discourses) {
    for (const auto& doc : discourse.documents) fn(doc);
  }
}

enum class Severity { info, warning, error };
std::string_view to_string(Severity s);
std::optional<Severity> parse_severity(std::string_view s);

struct ValidationFinding {
  std::string rule_id;
  Severity severity = Severity::error;
  std::optional<std::string> document_id;
  std::string subject;
  std::size_t subject_offset = 0;
  std::string message;

  friend bool operator==(const ValidationFinding&, const ValidationFinding&) = default;
};

// True for strings of the form Q<digits>.
bool is_qid(std::string_view s) noexcept;

// One cluster per distinct global entity name, ordered by first mention offset.
// Throws Error(ConflictingUri) when a cluster's members carry two different QIDs.
std::vector<LocalCluster> derive_local_clusters(const Document& document);

// Identity tag for precedence_rank; identity is the most preferred link.
struct IdentityLink {};
inline constexpr IdentityLink kIdentity{};

// ID=0 < MET=1 < MER=2 < CLS=3 = STF=3 < DEC=4 < BRD=5.
constexpr int precedence_rank(IdentityLink) noexcept { return 0; }
constexpr int precedence_rank(RelationType label) noexcept {
  switch (label) {
    case RelationType::MET: return 1;
    case RelationType::MER: return 2;
    case RelationType::CLS: return 3;
    case RelationType::STF: return 3;
    case RelationType::DEC: return 4;
    case RelationType::BRD: return 5;
  }
  return 5;
}

// Exact code-point slice of the document text. Throws Error(OutOfBounds).
std::string surface_text(const Document& document, const Span& span);

// Sorts discourses, documents, mentions and relations into export order.
Corpus canonicalize(Corpus corpus);

}  // namespace divcdcr
