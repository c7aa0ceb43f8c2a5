#include "divcdcr/tabular.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <tuple>

#include "divcdcr/unicode.hpp"

namespace divcdcr {

namespace {

enum class LayerKind { span, chain, relation };

struct LayerDecl {
  LayerKind kind;
  std::string name;
  std::vector<std::string> items;  // features; for relations the last one is BT_<layer>
  std::size_t first_column = 0;
  std::size_t columns = 0;
};

struct Entry {
  std::string value;
  bool empty_feature = false;  // `*`
  unsigned index = 0;
};

struct Token {
  std::string address;
  std::size_t begin;
  std::size_t end;
};

struct PendingSpan {
  std::size_t begin;
  std::size_t end;
  unsigned index;
  std::size_t order;
  std::size_t first_token;
  std::size_t last_token;
  std::string type;
  std::string name;
  std::string wikidata;
};

struct PendingRelation {
  std::size_t line;
  std::size_t token;
  Entry label;
  std::string pointer;
};

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::vector<std::string> split_plain(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.emplace_back(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

// Splits on `sep` not preceded by a backslash escape; escapes are kept.
std::vector<std::string> split_unescaped(std::string_view s, char sep) {
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      out.back().push_back(s[i]);
      out.back().push_back(s[++i]);
    } else if (s[i] == sep) {
      out.emplace_back();
    } else {
      out.back().push_back(s[i]);
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      const char c = s[++i];
      out.push_back(c == 't' ? '\t' : c == 'n' ? '\n' : c == 'r' ? '\r' : c);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': case '[': case ']': case '|': case '_': case '*': case ';':
        out.push_back('\\');
        out.push_back(c);
        break;
      default: out.push_back(c);
    }
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::optional<std::string> canonical_qid(std::string_view value) {
  const std::size_t slash = value.rfind('/');
  if (slash == std::string_view::npos || value.find("wikidata.org/") == std::string_view::npos) {
    return std::nullopt;
  }
  std::string_view tail = value.substr(slash + 1);
  if (!is_qid(tail)) return std::nullopt;
  return std::string(tail);
}

class DocumentReader {
 public:
  DocumentReader(std::string doc_id, std::string_view content,
                 std::vector<std::string>& notices)
      : doc_id_(std::move(doc_id)), content_(content), notices_(notices) {}

  Document read() {
    const auto lines = split_plain(content_, '\n');
    bool header_seen = false;
    bool rows_started = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      line_ = i + 1;
      std::string_view line = lines[i];
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!header_seen) {
        if (line.rfind("#FORMAT=WebAnno TSV 3", 0) != 0) {
          fail(ErrorKind::GrammarError, "expected '#FORMAT=WebAnno TSV 3.x' header");
        }
        header_seen = true;
        continue;
      }
      if (line.empty()) continue;
      if (line[0] == '#') {
        if (line.rfind("#T_", 0) == 0) {
          if (rows_started) fail(ErrorKind::GrammarError, "layer declaration after token rows");
          declare_layer(line);
        }
        continue;  // #Text= and other comments
      }
      if (!rows_started) {
        rows_started = true;
        bind_layers();
      }
      read_row(line);
    }
    if (!header_seen) fail(ErrorKind::GrammarError, "empty file");
    if (!rows_started) bind_layers();
    return build();
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& what) const {
    throw Error(kind, "document " + doc_id_ + " line " + std::to_string(line_) + ": " + what);
  }

  void declare_layer(std::string_view line) {
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::GrammarError, "malformed layer header");
    const std::string_view tag = line.substr(0, eq);
    LayerDecl decl;
    if (tag == "#T_SP") {
      decl.kind = LayerKind::span;
    } else if (tag == "#T_CH") {
      decl.kind = LayerKind::chain;
    } else if (tag == "#T_RL") {
      decl.kind = LayerKind::relation;
    } else {
      fail(ErrorKind::GrammarError, "unknown layer header '" + std::string(tag) + "'");
    }
    auto parts = split_plain(line.substr(eq + 1), '|');
    decl.name = parts.front();
    if (decl.name.empty()) fail(ErrorKind::GrammarError, "layer without a name");
    decl.items.assign(parts.begin() + 1, parts.end());
    if (decl.kind == LayerKind::relation &&
        (decl.items.empty() || decl.items.back().rfind("BT_", 0) != 0)) {
      fail(ErrorKind::GrammarError, "relation layer " + decl.name + " lacks a BT_ column");
    }
    decl.columns = std::max<std::size_t>(1, decl.items.size());
    decl.first_column = next_column_;
    next_column_ += decl.columns;
    layers_.push_back(std::move(decl));
  }

  void bind_layers() {
    for (const auto& layer : layers_) {
      if (layer.kind != LayerKind::span || span_layer_) continue;
      std::optional<std::size_t> type, name, wikidata;
      for (std::size_t f = 0; f < layer.items.size(); ++f) {
        const std::string n = normalize(layer.items[f]);
        if (!wikidata && (n.find("wikidata") != n.npos || n == "uri" || n == "identifier")) {
          wikidata = f;
        } else if (!type && n.find("type") != n.npos) {
          type = f;
        } else if (!name && (n.find("name") != n.npos || n.find("global") != n.npos)) {
          name = f;
        }
      }
      if (type && name && wikidata) {
        span_layer_ = &layer;
        type_col_ = layer.first_column + *type;
        name_col_ = layer.first_column + *name;
        wikidata_col_ = layer.first_column + *wikidata;
      }
    }
    if (!span_layer_) {
      fail(ErrorKind::GrammarError,
           "no span layer with entity type, global entity name and Wikidata features");
    }
    for (const auto& layer : layers_) {
      if (layer.kind != LayerKind::relation || relation_layer_ ||
          layer.items.back() != "BT_" + span_layer_->name) {
        continue;
      }
      for (std::size_t f = 0; f + 1 < layer.items.size(); ++f) {
        const std::string n = normalize(layer.items[f]);
        if (n.find("label") != n.npos || n.find("type") != n.npos) {
          relation_layer_ = &layer;
          label_col_ = layer.first_column + f;
          pointer_col_ = layer.first_column + layer.items.size() - 1;
          break;
        }
      }
    }
    for (const auto& layer : layers_) {
      if (&layer != span_layer_ && &layer != relation_layer_) {
        notices_.push_back("document " + doc_id_ + ": layer " + layer.name + " ignored");
      }
    }
  }

  std::vector<Entry> parse_cell(std::string_view cell) const {
    std::vector<Entry> entries;
    if (cell == "_") return entries;
    for (const auto& raw : split_unescaped(cell, '|')) {
      Entry e;
      std::string_view v = raw;
      if (!v.empty() && v.back() == ']' && (v.size() < 2 || v[v.size() - 2] != '\\')) {
        const std::size_t open = v.rfind('[');
        if (open == std::string_view::npos || (open > 0 && v[open - 1] == '\\') ||
            !parse_int(v.substr(open + 1, v.size() - open - 2), e.index) || e.index == 0) {
          fail(ErrorKind::GrammarError, "bad disambiguation index in '" + raw + "'");
        }
        v = v.substr(0, open);
      }
      if (v == "*") {
        e.empty_feature = true;
      } else {
        e.value = unescape(v);
      }
      entries.push_back(std::move(e));
    }
    return entries;
  }

  void read_row(std::string_view line) {
    auto fields = split_plain(line, '\t');
    const std::size_t expected = next_column_;
    if (fields.size() == expected + 1 && fields.back().empty()) fields.pop_back();
    if (fields.size() != expected) {
      fail(ErrorKind::GrammarError, "expected " + std::to_string(expected) + " columns, found " +
                                        std::to_string(fields.size()));
    }

    const std::string& address = fields[0];
    const auto dash = address.find('-');
    unsigned sent = 0, tok = 0;
    if (address.find('.') != std::string::npos) {
      fail(ErrorKind::GrammarError, "sub-token rows are not supported");
    }
    if (dash == std::string::npos || !parse_int(std::string_view(address).substr(0, dash), sent) ||
        !parse_int(std::string_view(address).substr(dash + 1), tok)) {
      fail(ErrorKind::GrammarError, "bad token address '" + address + "'");
    }

    const std::string& offsets = fields[1];
    const auto odash = offsets.find('-');
    Token token{address, 0, 0};
    if (odash == std::string::npos ||
        !parse_int(std::string_view(offsets).substr(0, odash), token.begin) ||
        !parse_int(std::string_view(offsets).substr(odash + 1), token.end)) {
      fail(ErrorKind::GrammarError, "bad offsets '" + offsets + "'");
    }
    const std::u32string form = unicode::decode(unescape(fields[2]));
    if (token.begin >= token.end || token.end - token.begin != form.size()) {
      fail(ErrorKind::OffsetMismatch, "offsets " + offsets + " do not match token '" +
                                          fields[2] + "' of length " +
                                          std::to_string(form.size()));
    }
    if (token.begin < text_.size()) {
      fail(ErrorKind::OffsetMismatch, "offsets " + offsets + " overlap the previous token");
    }
    if (!addresses_.emplace(address, tokens_.size()).second) {
      fail(ErrorKind::GrammarError, "duplicate token address " + address);
    }
    text_.append(token.begin - text_.size(), U' ');
    text_ += form;
    const std::size_t token_index = tokens_.size();
    tokens_.push_back(token);

    read_spans(fields, token_index);
    if (relation_layer_) read_relations(fields, token_index);
  }

  void read_spans(const std::vector<std::string>& fields, std::size_t token_index) {
    const auto types = parse_cell(fields[type_col_]);
    auto names = parse_cell(fields[name_col_]);
    auto qids = parse_cell(fields[wikidata_col_]);
    if (names.empty()) names.resize(types.size(), Entry{"", true, 0});
    if (qids.empty()) qids.resize(types.size(), Entry{"", true, 0});
    if (names.size() != types.size() || qids.size() != types.size()) {
      fail(ErrorKind::GrammarError, "span feature columns stack different numbers of entries");
    }
    const Token& token = tokens_[token_index];
    for (std::size_t k = 0; k < types.size(); ++k) {
      const unsigned index = types[k].index;
      if (names[k].index != index || qids[k].index != index) {
        fail(ErrorKind::GrammarError, "span feature columns disagree on disambiguation index");
      }
      if (index != 0) {
        auto it = indexed_.find(index);
        if (it != indexed_.end()) {
          PendingSpan& span = spans_[it->second];
          if (span.last_token + 1 != token_index) {
            fail(ErrorKind::GrammarError,
                 "span [" + std::to_string(index) + "] is not contiguous");
          }
          span.end = token.end;
          span.last_token = token_index;
          continue;
        }
        indexed_.emplace(index, spans_.size());
      }
      PendingSpan span{token.begin, token.end, index, spans_.size(), token_index, token_index,
                       types[k].value, names[k].value, qids[k].value};
      if (auto qid = canonical_qid(span.wikidata)) {
        notices_.push_back("document " + doc_id_ + " line " + std::to_string(line_) +
                           ": Wikidata URL " + span.wikidata + " stored as " + *qid);
        span.wikidata = *qid;
      }
      spans_.push_back(std::move(span));
    }
  }

  void read_relations(const std::vector<std::string>& fields, std::size_t token_index) {
    const auto labels = parse_cell(fields[label_col_]);
    const std::string& pointer_cell = fields[pointer_col_];
    std::vector<std::string> pointers;
    if (pointer_cell != "_") pointers = split_plain(pointer_cell, '|');
    if (labels.size() != pointers.size()) {
      fail(ErrorKind::GrammarError, "relation label and pointer columns stack different counts");
    }
    for (std::size_t k = 0; k < labels.size(); ++k) {
      relations_.push_back(PendingRelation{line_, token_index, labels[k], pointers[k]});
    }
  }

  // The mention addressed by (token, disambiguation index); index 0 means the
  // one unindexed span on that token.
  std::optional<std::size_t> resolve(std::size_t token, unsigned index) const {
    if (index != 0) {
      auto it = indexed_.find(index);
      if (it == indexed_.end()) return std::nullopt;
      const PendingSpan& s = spans_[it->second];
      if (token < s.first_token || token > s.last_token) return std::nullopt;
      return it->second;
    }
    std::vector<std::size_t> unindexed, any;
    for (std::size_t i = 0; i < spans_.size(); ++i) {
      const PendingSpan& s = spans_[i];
      if (s.first_token <= token && token <= s.last_token) {
        any.push_back(i);
        if (s.index == 0) unindexed.push_back(i);
      }
    }
    if (unindexed.size() == 1) return unindexed.front();
    if (unindexed.empty() && any.size() == 1) return any.front();
    return std::nullopt;
  }

  Document build() {
    std::vector<std::size_t> order(spans_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(spans_[a].begin, spans_[a].end, spans_[a].order) <
             std::tie(spans_[b].begin, spans_[b].end, spans_[b].order);
    });
    std::vector<std::string> ids(spans_.size());
    Document doc;
    doc.id = doc_id_;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const PendingSpan& s = spans_[order[rank]];
      ids[order[rank]] = "m" + std::to_string(rank + 1);
      Mention m;
      m.id = ids[order[rank]];
      m.span = Span{s.begin, s.end};
      m.entity_type = EntityTypeLabel::from_text(s.type);
      if (!s.name.empty()) m.global_entity = s.name;
      if (!s.wikidata.empty()) m.wikidata = s.wikidata;
      doc.mentions.push_back(std::move(m));
    }

    for (const auto& r : relations_) {
      line_ = r.line;
      std::string_view pointer = r.pointer;
      unsigned pointed_index = 0, row_index = 0;
      if (const auto open = pointer.find('['); open != std::string_view::npos) {
        const auto under = pointer.find('_', open);
        if (pointer.back() != ']' || under == std::string_view::npos ||
            !parse_int(pointer.substr(open + 1, under - open - 1), pointed_index) ||
            !parse_int(pointer.substr(under + 1, pointer.size() - under - 2), row_index)) {
          fail(ErrorKind::GrammarError, "bad relation pointer '" + r.pointer + "'");
        }
        pointer = pointer.substr(0, open);
      }
      auto target_token = addresses_.find(std::string(pointer));
      if (target_token == addresses_.end()) {
        fail(ErrorKind::DanglingRelationPointer,
             "pointer '" + r.pointer + "' addresses no token");
      }
      const auto source = resolve(r.token, row_index);
      const auto target = resolve(target_token->second, pointed_index);
      if (!source) {
        fail(ErrorKind::DanglingRelationPointer,
             "relation row " + tokens_[r.token].address + " carries no matching mention");
      }
      if (!target) {
        fail(ErrorKind::DanglingRelationPointer,
             "pointer '" + r.pointer + "' addresses no mention");
      }
      const std::string label = r.label.empty_feature ? "" : r.label.value;
      if (label == "ID") {
        // Identity is carried by the shared global entity name.
        const PendingSpan& a = spans_[*source];
        const PendingSpan& b = spans_[*target];
        if (a.name.empty() || a.name != b.name) {
          notices_.push_back("document " + doc_id_ + " line " + std::to_string(r.line) +
                             ": ID relation between mentions without a shared global entity "
                             "name dropped");
        }
        continue;
      }
      doc.relations.push_back(
          RelationEdge{ids[*source], ids[*target], RelationLabel::from_text(label)});
    }
    doc.text = unicode::encode(text_);
    return doc;
  }

  std::string doc_id_;
  std::string_view content_;
  std::vector<std::string>& notices_;
  std::size_t line_ = 0;

  std::vector<LayerDecl> layers_;
  std::size_t next_column_ = 3;
  const LayerDecl* span_layer_ = nullptr;
  const LayerDecl* relation_layer_ = nullptr;
  std::size_t type_col_ = 0, name_col_ = 0, wikidata_col_ = 0, label_col_ = 0, pointer_col_ = 0;

  std::u32string text_;
  std::vector<Token> tokens_;
  std::map<std::string, std::size_t> addresses_;
  std::vector<PendingSpan> spans_;
  std::map<unsigned, std::size_t> indexed_;
  std::vector<PendingRelation> relations_;
};

}  // namespace

std::optional<std::pair<std::string, OutletCode>> split_document_id(std::string_view id) {
  const auto underscore = id.find('_');
  if (underscore == std::string_view::npos || underscore == 0) return std::nullopt;
  const std::string_view digits = id.substr(0, underscore);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  auto outlet = parse_outlet(id.substr(underscore + 1));
  if (!outlet) return std::nullopt;
  return std::make_pair(std::string(digits), *outlet);
}

TabularImport import_tabular_export(const std::map<std::string, std::string>& files,
                                    const std::map<std::string, DocumentPlacement>& placement) {
  TabularImport result;
  std::map<std::string, Discourse> discourses;
  for (const auto& [doc_id, content] : files) {
    Document doc = DocumentReader(doc_id, content, result.notices).read();
    std::optional<std::pair<std::string, OutletCode>> derived = split_document_id(doc_id);
    auto placed = placement.find(doc_id);
    if (placed != placement.end()) {
      doc.discourse_id = placed->second.discourse_id;
      if (placed->second.outlet) {
        doc.outlet = *placed->second.outlet;
      } else if (derived) {
        doc.outlet = derived->second;
      } else {
        throw Error(ErrorKind::GrammarError,
                    "document " + doc_id + ": no outlet in id or discourse map");
      }
    } else if (derived) {
      doc.discourse_id = derived->first;
      doc.outlet = derived->second;
    } else {
      throw Error(ErrorKind::GrammarError, "document " + doc_id +
                                               " is not named <digits>_<outlet> and has no "
                                               "discourse assignment");
    }
    auto& discourse = discourses[doc.discourse_id];
    discourse.id = doc.discourse_id;
    discourse.documents.push_back(std::move(doc));
  }
  for (auto& [id, discourse] : discourses) result.corpus.discourses.push_back(std::move(discourse));
  return result;
}

std::string export_tabular(const Document& document) {
  const std::u32string text = unicode::decode(document.text);

  struct Tok {
    std::size_t begin;
    std::size_t end;
    std::size_t sentence;
    std::size_t number;
  };
  std::vector<Tok> tokens;
  std::vector<std::pair<std::size_t, std::size_t>> sentences;  // [first token, last token)
  {
    std::size_t sentence = 0;
    std::size_t number = 0;
    std::size_t sentence_first = 0;
    auto close_sentence = [&] {
      if (tokens.size() > sentence_first) {
        sentences.emplace_back(sentence_first, tokens.size());
        ++sentence;
      }
      sentence_first = tokens.size();
      number = 0;
    };
    std::size_t i = 0;
    while (i < text.size()) {
      const char32_t c = text[i];
      if (c == U'\n') {
        close_sentence();
        ++i;
      } else if (unicode::is_whitespace(c)) {
        ++i;
      } else if (unicode::is_punctuation(c)) {
        tokens.push_back(Tok{i, i + 1, sentence + 1, ++number});
        ++i;
      } else {
        std::size_t j = i;
        while (j < text.size() && !unicode::is_trim_char(text[j])) ++j;
        tokens.push_back(Tok{i, j, sentence + 1, ++number});
        i = j;
      }
    }
    close_sentence();
  }

  auto address = [&](std::size_t t) {
    return std::to_string(tokens[t].sentence) + "-" + std::to_string(tokens[t].number);
  };

  // Token range of each mention.
  std::map<std::size_t, std::size_t> by_begin, by_end;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    by_begin.emplace(tokens[t].begin, t);
    by_end.emplace(tokens[t].end, t);
  }
  std::vector<const Mention*> mentions;
  for (const auto& m : document.mentions) mentions.push_back(&m);
  std::sort(mentions.begin(), mentions.end(), [](const Mention* a, const Mention* b) {
    return std::tie(a->span.start, a->span.end, a->id) <
           std::tie(b->span.start, b->span.end, b->id);
  });
  std::map<std::string, std::pair<std::size_t, std::size_t>> range;
  std::vector<std::vector<const Mention*>> covering(tokens.size());
  for (const Mention* m : mentions) {
    auto b = by_begin.find(m->span.start);
    auto e = by_end.find(m->span.end);
    if (b == by_begin.end() || e == by_end.end() || e->second < b->second) {
      throw Error(ErrorKind::Precondition,
                  "mention " + m->id + " of " + document.id + " is not token-aligned");
    }
    range[m->id] = {b->second, e->second};
    for (std::size_t t = b->second; t <= e->second; ++t) covering[t].push_back(m);
  }
  std::map<std::string, unsigned> index;
  unsigned next_index = 1;
  for (const Mention* m : mentions) {
    const auto [first, last] = range[m->id];
    if (first != last || covering[first].size() > 1) index[m->id] = next_index++;
  }
  auto index_of = [&](const std::string& id) {
    auto it = index.find(id);
    return it == index.end() ? 0u : it->second;
  };

  std::vector<std::vector<const RelationEdge*>> relations(tokens.size());
  for (const auto& r : document.relations) {
    auto src = range.find(r.source);
    auto tgt = range.find(r.target);
    if (src == range.end() || tgt == range.end()) {
      throw Error(ErrorKind::Precondition,
                  "relation " + r.source + "->" + r.target + " has an unknown endpoint");
    }
    relations[src->second.first].push_back(&r);
  }

  auto feature = [](const std::string& value, unsigned idx) {
    std::string cell = value.empty() ? "*" : escape(value);
    if (idx) cell += "[" + std::to_string(idx) + "]";
    return cell;
  };
  auto join = [](const std::vector<std::string>& cells) {
    if (cells.empty()) return std::string("_");
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back('|');
      out += cells[i];
    }
    return out;
  };

  std::ostringstream out;
  out << "#FORMAT=WebAnno TSV 3.3\n"
      << "#T_SP=webanno.custom.Entity|entity_type|global_entity_name|wikidata\n"
      << "#T_RL=webanno.custom.Relation|label|BT_webanno.custom.Entity\n\n";
  for (const auto& [first, last] : sentences) {
    const std::size_t b = tokens[first].begin;
    const std::size_t e = tokens[last - 1].end;
    out << "\n#Text=" << escape(unicode::encode(std::u32string_view(text).substr(b, e - b)))
        << "\n";
    for (std::size_t t = first; t < last; ++t) {
      std::vector<std::string> types, names, qids, labels, pointers;
      for (const Mention* m : covering[t]) {
        const unsigned idx = index_of(m->id);
        types.push_back(feature(m->entity_type.text(), idx));
        names.push_back(feature(m->global_entity.value_or(""), idx));
        qids.push_back(feature(m->wikidata.value_or(""), idx));
      }
      for (const RelationEdge* r : relations[t]) {
        labels.push_back(r->label.text().empty() ? "*" : escape(r->label.text()));
        std::string pointer = address(range[r->target].first);
        const unsigned ti = index_of(r->target);
        const unsigned si = index_of(r->source);
        if (ti || si) pointer += "[" + std::to_string(ti) + "_" + std::to_string(si) + "]";
        pointers.push_back(std::move(pointer));
      }
      out << address(t) << '\t' << tokens[t].begin << '-' << tokens[t].end << '\t'
          << escape(unicode::encode(std::u32string_view(text).substr(
                 tokens[t].begin, tokens[t].end - tokens[t].begin)))
          << '\t' << join(types) << '\t' << join(names) << '\t' << join(qids) << '\t'
          << join(labels) << '\t' << join(pointers) << "\t\n";
    }
  }
  return out.str();
}

}  // namespace divcdcr
