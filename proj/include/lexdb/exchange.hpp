#ifndef LEXDB_EXCHANGE_HPP
#define LEXDB_EXCHANGE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lexdb/bias.hpp"
#include "lexdb/concept_store.hpp"
#include "lexdb/error.hpp"
#include "lexdb/mapping.hpp"

namespace lexdb {

inline constexpr std::string_view kFormatVersion = "1.0";

// ---- document model ----------------------------------------------------------
//
// Records reference each other by stable string ids: languages by code,
// interlingual concepts as "ukc:C12", language concepts as "lc:fr:3" or
// "local:ja:7", senses as "ws:fr:4". Numeric store ids never appear.

struct DocLanguage {
  std::string code;
  std::string name;
  LanguageRole role = LanguageRole::local;
  std::optional<nlohmann::json> provenance;
};

struct DocConcept {
  std::string id;
  std::optional<std::string> label;
};

struct DocRelation {
  std::string source;
  std::string target;
  SemanticKind kind = SemanticKind::hypernym;
};

enum class LexicalizationType { linked, local_concept, sense, gap };

std::string_view to_string(LexicalizationType type);

// One entry of the lexicalizations section. Which fields apply depends on
// `type`:
//   concept        id, language, interlingual, pos, gloss?
//   local_concept  id, language, parent, pos, gloss?
//   sense          id, language, concept, lemma
//   gap            language, interlingual
struct DocLexicalization {
  LexicalizationType type = LexicalizationType::linked;
  std::string id;
  std::string language;
  std::optional<std::string> interlingual;
  std::optional<std::string> parent;
  std::optional<std::string> concept_id;
  std::optional<std::string> lemma;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::optional<std::string> gloss;
};

struct DocLink {
  std::string source;
  std::string target;
  LinkKind kind = LinkKind::cognate;
};

// Exactly one of concept / interlingual / gap is set.
struct DocEndpoint {
  std::string language;
  std::optional<std::string> concept_id;       // any language concept by its id
  std::optional<std::string> interlingual;  // the language's concept for this interlingual concept
  std::optional<std::string> gap;           // the language's gap on this interlingual concept
};

struct DocMappingRelation {
  DocEndpoint source;
  DocEndpoint target;
  MappingKind kind = MappingKind::equivalent;
};

struct DocMappingSet {
  std::string name;
  std::vector<std::string> languages;
  std::vector<DocMappingRelation> relations;
};

struct DocPerfTable {
  std::string name;
  std::vector<PerfRecord> records;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string section;
  std::optional<std::size_t> index;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

struct ExchangeDocument {
  std::string format_version{kFormatVersion};
  std::optional<nlohmann::json> provenance;
  std::vector<std::string> external;  // ids defined outside this document
  std::vector<DocLanguage> languages;
  std::vector<DocConcept> concepts;
  std::vector<DocRelation> semantic_relations;
  std::vector<DocLexicalization> lexicalizations;
  std::vector<DocLink> lexical_links;
  std::vector<DocMappingSet> mapping_sets;
  std::vector<DocPerfTable> perf_tables;

  // Unknown sections and keys seen while parsing.
  std::vector<Diagnostic> parse_warnings;
};

// ---- syntax ------------------------------------------------------------------

// Throws LexError(parse_error) on malformed JSON or wrongly typed fields.
ExchangeDocument parse_document(std::string_view text);
ExchangeDocument document_from_json(const nlohmann::json& j);
nlohmann::ordered_json document_to_json(const ExchangeDocument& doc);
// Canonical text: fixed key order, two-space indent, trailing newline.
std::string serialize_document(const ExchangeDocument& doc);

ExchangeDocument read_document_file(const std::string& path);
void write_document_file(const ExchangeDocument& doc, const std::string& path);

// ---- semantics ---------------------------------------------------------------

std::vector<Diagnostic> validate_document(const ExchangeDocument& doc);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

class ValidationError : public LexError {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ExportScope {
  std::optional<std::vector<std::string>> languages;  // unset: every language

  static ExportScope all() { return {}; }
  static ExportScope of(std::vector<std::string> codes) { return ExportScope{std::move(codes)}; }
};

struct ExportSections {
  bool concepts = true;
  bool semantic_relations = true;
  bool lexicalizations = true;
  bool lexical_links = true;
};

// The scoped lexicons, every interlingual concept they touch (all of them
// for an unrestricted scope) and the relations among those concepts.
ExchangeDocument export_document(const ConceptStore& store, const ExportScope& scope = ExportScope::all(),
                                 const ExportSections& sections = {});

struct ImportSummary {
  std::size_t languages = 0;
  std::size_t concepts = 0;
  std::size_t semantic_relations = 0;
  std::size_t language_concepts = 0;
  std::size_t senses = 0;
  std::size_t gaps = 0;
  std::size_t lexical_links = 0;
  std::size_t unchanged = 0;  // records already present with identical content
};

// Merges into `store`, all or nothing. Throws ValidationError when the
// document has errors, LexError(merge_conflict) when a stable id or pair
// already exists with different content.
ImportSummary merge_document(const ExchangeDocument& doc, ConceptStore& store);
ConceptStore import_document(const ExchangeDocument& doc);

MappingSet resolve_mapping_set(const DocMappingSet& set, const ConceptStore& store);
DocMappingSet mapping_set_to_doc(const MappingSet& set, const ConceptStore& store, std::string name);

ModelCapability capability_from_json(const nlohmann::json& j);
nlohmann::ordered_json capability_to_json(const ModelCapability& capability);

PerfRecord perf_record_from_json(const nlohmann::json& j);
nlohmann::ordered_json perf_record_to_json(const PerfRecord& record);
nlohmann::ordered_json mapping_set_to_json(const DocMappingSet& set);
nlohmann::ordered_json bias_report_to_json(const BiasReport& report);

}  // namespace lexdb

#endif
