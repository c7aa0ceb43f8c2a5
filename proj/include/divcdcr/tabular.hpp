#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divcdcr/model.hpp"

namespace divcdcr {

// Import of the annotation tool's tab-separated export (WebAnno TSV 3.3
// subset). The grammar accepted:
//
//   #FORMAT=WebAnno TSV 3.3
//   #T_SP=<layer>|<feature>|...           span layers
//   #T_CH=<layer>|<feature>|...           chain layers (ignored)
//   #T_RL=<layer>|<feature>|...|BT_<span> relation layers
//   <blank line>
//   #Text=<sentence text>                 ignored
//   <sent>-<tok> TAB <begin>-<end> TAB <token> TAB <layer columns...>
//
// Offsets are document-global code points. A cell is `_` when empty, else a
// `|`-separated stack of entries `value` or `value[n]`, where n is the
// disambiguation index shared by all rows of one multi-token span; `*` marks
// an annotation whose feature is empty.
//
// The one span layer whose features are entity type, global entity name and
// Wikidata is imported as mentions. The relation layer pointing at it (with
// a `label` feature) is imported as edges: the row carrying the relation is
// the anaphor, the pointer `<sent>-<tok>[<pointed>_<row>]` addresses the
// antecedent. Relations labelled ID are dropped because identity is carried
// by the shared global entity name; a notice reports ID relations whose
// endpoints do not share one. Every other layer is skipped with a notice.

struct DocumentPlacement {
  std::string discourse_id;
  std::optional<OutletCode> outlet;  // taken from the `<digits>_<outlet>` id when absent
};

struct TabularImport {
  Corpus corpus;
  std::vector<std::string> notices;  // info-level, one line each
};

// files: document id -> file content. Throws Error with kind GrammarError,
// DanglingRelationPointer or OffsetMismatch; the detail names the document
// and the 1-based line.
TabularImport import_tabular_export(const std::map<std::string, std::string>& files,
                                    const std::map<std::string, DocumentPlacement>& placement);

// Writes one document in the grammar above. Tokens are whitespace-separated
// runs with punctuation split off; one sentence per text line. Throws
// Error(Precondition) when a mention does not start and end on token
// boundaries or a label is outside its vocabulary.
std::string export_tabular(const Document& document);

// Parses `<digits>_<outlet>` document ids.
std::optional<std::pair<std::string, OutletCode>> split_document_id(std::string_view id);

}  // namespace divcdcr
