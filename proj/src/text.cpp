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

#include "bbaeg/text.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Punctuation that glues to the previous token when detokenizing.
bool attaches_left(const std::string& tok) {
  static const std::string kClosers = ".,;:!?)]}%'\"";
  return is_punct_token(tok) && kClosers.find(tok.front()) != std::string::npos;
}

// Punctuation that glues to the following token.
bool attaches_right(const std::string& tok) {
  static const std::string kOpeners = "([{";
  return is_punct_token(tok) && kOpeners.find(tok.front()) != std::string::npos;
}

const std::unordered_set<std::string>& function_words() {
  static const std::unordered_set<std::string> kWords = {
      "the", "a",     "an",    "and",   "or",    "but",   "if",     "then",  "than",
      "that", "this",  "these", "those", "of",    "in",    "on",     "at",    "by",
      "for", "with",  "to",    "from",  "as",    "is",    "are",    "was",   "were",
      "be",  "been",  "being", "has",   "have",  "had",   "it",     "its",   "he",
      "she", "they",  "we",    "you",   "i",     "not",   "no",     "do",    "does",
      "did", "will",  "would", "can",   "could", "may",   "might",  "must",  "shall",
      "should", "after", "before", "during", "while", "when", "where", "into", "over",
      "under", "about", "against", "between", "within", "without", "per", "via"};
  return kWords;
}

}  // namespace

std::vector<std::string> Document::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

bool Document::operator==(const Document& other) const {
  if (label != other.label || tokens.size() != other.tokens.size()) return false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].surface != other.tokens[i].surface) return false;
  }
  return true;
}

const char* to_string(EntityType type) {
  return type == EntityType::drug ? "drug" : "disease";
}

std::optional<EntityType> entity_type_from_string(std::string_view name) {
  if (name == "drug") return EntityType::drug;
  if (name == "disease") return EntityType::disease;
  return std::nullopt;
}

const char* to_string(Sieve sieve) {
  switch (sieve) {
    case Sieve::sieve1_ne: return "sieve1_ne";
    case Sieve::sieve1_mlm: return "sieve1_mlm";
    case Sieve::sieve2_n1: return "sieve2_n1";
    case Sieve::sieve2_n2: return "sieve2_n2";
    case Sieve::sieve3_num: return "sieve3_num";
  }
  return "unknown";
}

std::optional<Sieve> sieve_from_string(std::string_view name) {
  if (name == "sieve1_ne") return Sieve::sieve1_ne;
  if (name == "sieve1_mlm") return Sieve::sieve1_mlm;
  if (name == "sieve2_n1") return Sieve::sieve2_n1;
  if (name == "sieve2_n2") return Sieve::sieve2_n2;
  if (name == "sieve3_num") return Sieve::sieve3_num;
  return std::nullopt;
}

bool is_ascii_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

bool is_punct_token(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), is_ascii_punct);
}

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_function_word(const std::string& word) { return function_words().count(word) > 0; }

Document tokenize(const std::string& text) {
  Document doc;
  doc.text = text;

  auto push = [&doc](const std::string& surface, int start, int end) {
    Token t;
    t.surface = surface;
    t.index = static_cast<int>(doc.tokens.size());
    t.char_start = start;
    t.char_end = end;
    t.is_punct = is_punct_token(surface);
    t.has_digits = has_digit(surface);
    doc.tokens.push_back(std::move(t));
  };

  const int n = static_cast<int>(text.size());
  int i = 0;
  while (i < n) {
    if (is_space(text[static_cast<std::size_t>(i)])) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && !is_space(text[static_cast<std::size_t>(j)])) ++j;
    // chunk is text[i, j)
    int core_begin = i;
    int core_end = j;
    while (core_begin < core_end && is_ascii_punct(text[static_cast<std::size_t>(core_begin)]))
      ++core_begin;
    while (core_end > core_begin && is_ascii_punct(text[static_cast<std::size_t>(core_end - 1)]))
      --core_end;
    if (core_begin == core_end) {
      // all-punctuation chunk: one token per character
      for (int k = i; k < j; ++k) push(text.substr(static_cast<std::size_t>(k), 1), k, k + 1);
    } else {
      for (int k = i; k < core_begin; ++k) push(text.substr(static_cast<std::size_t>(k), 1), k, k + 1);
      push(text.substr(static_cast<std::size_t>(core_begin),
                       static_cast<std::size_t>(core_end - core_begin)),
           core_begin, core_end);
      for (int k = core_end; k < j; ++k) push(text.substr(static_cast<std::size_t>(k), 1), k, k + 1);
    }
    i = j;
  }

  if (doc.tokens.empty()) throw EmptyInputError("empty or whitespace-only text");
  return doc;
}

std::string detokenize_surfaces(const std::vector<std::string>& surfaces) {
  std::string out;
  const std::string* prev = nullptr;
  for (const std::string& tok : surfaces) {
    bool space = !out.empty();
    if (attaches_left(tok)) space = false;
    if (prev != nullptr && attaches_right(*prev)) space = false;
    if (space) out += ' ';
    out += tok;
    prev = &tok;
  }
  return out;
}

std::string detokenize(const Document& doc) { return detokenize_surfaces(doc.surfaces()); }

Document replace_span(const Document& doc, int start, int end, const std::string& replacement) {
  if (start < 0 || end < start || end >= doc.size()) {
    throw SpanError("replace_span indices [" + std::to_string(start) + ", " + std::to_string(end) +
                    "] out of range for document of length " + std::to_string(doc.size()));
  }
  Document repl = tokenize(replacement);  // throws EmptyInputError for blank replacements

  std::vector<std::string> surfaces;
  surfaces.reserve(doc.tokens.size() + repl.tokens.size());
  for (int i = 0; i < start; ++i) surfaces.push_back(doc.surface(i));
  for (const Token& t : repl.tokens) surfaces.push_back(t.surface);
  for (int i = end + 1; i < doc.size(); ++i) surfaces.push_back(doc.surface(i));

  Document out = tokenize(detokenize_surfaces(surfaces));
  out.label = doc.label;
  return out;
}

double perturbed_fraction(const Document& original, const PerturbedDocument& adversarial) {
  if (original.tokens.empty()) throw EmptyInputError("original document is empty");
  if (adversarial.original_changed.size() != original.tokens.size()) {
    throw SpanError("perturbed document does not align with the given original");
  }
  int changed = 0;
  for (bool c : adversarial.original_changed) changed += c ? 1 : 0;
  return static_cast<double>(changed) / static_cast<double>(original.tokens.size());
}

PerturbationLog::PerturbationLog(Document original)
    : original_(std::move(original)), current_(original_) {
  const std::size_t n = original_.tokens.size();
  origin_.reserve(n);
  for (int i = 0; i < static_cast<int>(n); ++i) origin_.emplace_back(i, i);
  provenance_.assign(n, std::nullopt);
  changed_.assign(n, false);
}

std::pair<int, int> PerturbationLog::current_span(int original_start, int original_end) const {
  if (original_start < 0 || original_end < original_start ||
      original_end >= original_.size()) {
    throw SpanError("original span out of range");
  }
  int lo = -1;
  int hi = -1;
  for (int i = 0; i < static_cast<int>(origin_.size()); ++i) {
    const auto& [a, b] = origin_[static_cast<std::size_t>(i)];
    if (b >= original_start && a <= original_end) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  if (lo < 0) throw SpanError("original span vanished from the current document");
  return {lo, hi};
}

void PerturbationLog::apply(int start, int end, const std::string& replacement, Sieve sieve) {
  if (start < 0 || end < start || end >= current_.size()) {
    throw SpanError("edit span out of range");
  }
  Document next = replace_span(current_, start, end, replacement);
  if (next == current_) throw SpanError("edit does not change the document");

  const int repl_count =
      next.size() - (current_.size() - (end - start + 1));
  if (repl_count <= 0) throw SpanError("replacement produced no tokens");

  const int orig_lo = origin_[static_cast<std::size_t>(start)].first;
  const int orig_hi = origin_[static_cast<std::size_t>(end)].second;

  std::vector<std::pair<int, int>> origin;
  std::vector<std::optional<Sieve>> provenance;
  origin.reserve(static_cast<std::size_t>(next.size()));
  provenance.reserve(static_cast<std::size_t>(next.size()));
  for (int i = 0; i < start; ++i) {
    origin.push_back(origin_[static_cast<std::size_t>(i)]);
    provenance.push_back(provenance_[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < repl_count; ++i) {
    origin.emplace_back(orig_lo, orig_hi);
    provenance.push_back(sieve);
  }
  for (int i = end + 1; i < current_.size(); ++i) {
    origin.push_back(origin_[static_cast<std::size_t>(i)]);
    provenance.push_back(provenance_[static_cast<std::size_t>(i)]);
  }

  for (int i = orig_lo; i <= orig_hi; ++i) changed_[static_cast<std::size_t>(i)] = true;

  current_ = std::move(next);
  origin_ = std::move(origin);
  provenance_ = std::move(provenance);
  dirty_ = true;
}

PerturbedDocument PerturbationLog::to_perturbed() const {
  PerturbedDocument out;
  out.doc = current_;
  out.provenance = provenance_;
  out.original_changed = changed_;
  return out;
}

}  // namespace bbaeg
