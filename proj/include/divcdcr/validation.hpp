#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divcdcr/model.hpp"

namespace divcdcr {

struct RuleInfo {
  std::string_view id;
  Severity severity;
  std::string_view description;
};

// V01-V15 (V08 split into V08a/V08b) followed by the link-audit rules A01-A04.
std::span<const RuleInfo> rule_catalog();
const RuleInfo* find_rule(std::string_view id);

struct ValidationConfig {
  Severity fail_level = Severity::error;
  // Rule ids to skip; "V08" disables both V08a and V08b.
  std::set<std::string, std::less<>> disabled_rules;
};

// Findings sorted by (document_id, rule_id, subject offset); corpus-wide
// findings carry no document id and sort first. Throws Error(ConfigError)
// for unknown ids in disabled_rules.
std::vector<ValidationFinding> validate_corpus(const Corpus& corpus,
                                               const ValidationConfig& config = {});

enum class Outcome { clean, warning, error };
std::string_view to_string(Outcome o);

// Info findings do not raise the outcome above clean.
Outcome max_severity(std::span<const ValidationFinding> findings);

// True when some finding is at or above fail_level.
bool fails(std::span<const ValidationFinding> findings, Severity fail_level);

// Global entity names that carry more than one distinct Wikidata value
// anywhere in the corpus, with those values in sorted order.
std::map<std::string, std::set<std::string>> name_uri_conflicts(const Corpus& corpus);

void sort_findings(std::vector<ValidationFinding>& findings);

// `RULE SEVERITY doc subject message`; doc is `-` when absent, subjects
// containing whitespace are double-quoted.
std::string format_finding(const ValidationFinding& finding);
// One JSON object per finding, mirroring the ValidationFinding fields.
std::string finding_to_machine(const ValidationFinding& finding);
// Throws Error(SyntaxError/SchemaError) on malformed records.
ValidationFinding finding_from_machine(std::string_view line);

}  // namespace divcdcr
