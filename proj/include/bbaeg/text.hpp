// Copyright 2026 The BBAEG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bbaeg {

struct Token {
  std::string surface;
  int index = 0;
  int char_start = 0;  // offsets into the document text, [char_start, char_end)
  int char_end = 0;
  bool is_punct = false;
  bool has_digits = false;
};

/// A tokenized document. Values are immutable by convention: every edit
/// produces a new Document, so instances can be shared freely across threads.
struct Document {
  std::string text;
  std::vector<Token> tokens;
  std::optional<int> label;

  int size() const { return static_cast<int>(tokens.size()); }
  const std::string& surface(int i) const { return tokens[static_cast<std::size_t>(i)].surface; }
  std::vector<std::string> surfaces() const;

  /// Token-level equality (surfaces and label). The raw text may differ in
  /// whitespace between two equal documents.
  bool operator==(const Document& other) const;
};

enum class EntityType { drug, disease };

const char* to_string(EntityType type);
std::optional<EntityType> entity_type_from_string(std::string_view name);

/// An inclusive token range recognized as a drug or disease mention and
/// linked to an ontology identifier.
struct EntitySpan {
  int start_token = 0;
  int end_token = 0;
  EntityType entity_type = EntityType::disease;
  std::string ontology_id;
  std::string canonical_name;
};

/// Perturbation channel that produced a replacement.
enum class Sieve { sieve1_ne, sieve1_mlm, sieve2_n1, sieve2_n2, sieve3_num };

const char* to_string(Sieve sieve);
std::optional<Sieve> sieve_from_string(std::string_view name);

bool is_ascii_punct(char c);
bool is_punct_token(std::string_view s);
bool has_digit(std::string_view s);
std::string to_lower(std::string_view s);

/// True for a small closed class of English function words (determiners,
/// prepositions, auxiliaries...). Expects a lowercased word.
bool is_function_word(const std::string& word);

/// Splits on whitespace, then peels leading/trailing ASCII punctuation into
/// single-character tokens. Internal punctuation ("21-year-old", "don't")
/// stays inside the token. Casing is preserved.
Document tokenize(const std::string& text);

/// Single-space join with punctuation reattachment: closers (.,;:!?)]}...)
/// glue to the previous token, openers (([{) glue to the next.
/// detokenize(tokenize(detokenize(d))) == detokenize(d) for any d.
std::string detokenize(const Document& doc);
std::string detokenize_surfaces(const std::vector<std::string>& surfaces);

/// Returns a new document with tokens [start, end] replaced by the
/// retokenized replacement (the token count may change). The input document
/// is left untouched.
Document replace_span(const Document& doc, int start, int end, const std::string& replacement);

/// A document plus the provenance of every token and the set of original
/// token positions its edits touched.
struct PerturbedDocument {
  Document doc;
  std::vector<std::optional<Sieve>> provenance;  // per current token; nullopt = original
  std::vector<bool> original_changed;            // per original token position
};

/// Fraction of original token positions altered by the edits that produced
/// `adversarial` (a replaced k-token span counts k positions).
double perturbed_fraction(const Document& original, const PerturbedDocument& adversarial);

/// Tracks a sequence of span replacements against a source document:
/// keeps the evolving copy, maps original token ranges to their current
/// location, and accounts for which original positions were touched.
class PerturbationLog {
 public:
  explicit PerturbationLog(Document original);

  const Document& original() const { return original_; }
  const Document& current() const { return current_; }
  bool dirty() const { return dirty_; }

  /// Current location of an original token range. The range stays contiguous
  /// under edits because every edit replaces a whole contiguous span.
  std::pair<int, int> current_span(int original_start, int original_end) const;

  /// Replaces current tokens [start, end] and records provenance. Throws
  /// SpanError on bad indices or when the edit would not change the document.
  void apply(int start, int end, const std::string& replacement, Sieve sieve);

  PerturbedDocument to_perturbed() const;

 private:
  Document original_;
  Document current_;
  std::vector<std::pair<int, int>> origin_;  // per current token: original range it descends from
  std::vector<std::optional<Sieve>> provenance_;
  std::vector<bool> changed_;
  bool dirty_ = false;
};

}  // namespace bbaeg
