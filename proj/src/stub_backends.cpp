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

#include "bbaeg/stub_backends.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Tokenizes leniently: empty or whitespace-only text yields no tokens
// (deletion queries can legitimately produce an empty document).
std::vector<std::string> lenient_tokens(const std::string& text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return tokenize(text).surfaces();
  }
  return {};
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

const char* to_string(PosTag tag) {
  switch (tag) {
    case PosTag::noun: return "noun";
    case PosTag::verb: return "verb";
    case PosTag::adjective: return "adjective";
    case PosTag::adverb: return "adverb";
    case PosTag::numeral: return "numeral";
    case PosTag::other: return "other";
  }
  return "other";
}

KeywordClassifier::KeywordClassifier(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

double KeywordClassifier::decision_value(const std::string& text) const {
  double score = lexicon_.bias;
  for (const std::string& tok : lenient_tokens(text)) {
    auto it = lexicon_.weights.find(to_lower(tok));
    if (it != lexicon_.weights.end()) score += it->second;
  }
  return score;
}

std::vector<ProbabilityDistribution> KeywordClassifier::predict(
    const std::vector<std::string>& texts) {
  std::vector<ProbabilityDistribution> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    const double p1 = logistic(decision_value(text));
    out.push_back({{1.0 - p1, p1}});
  }
  return out;
}

double TokenOverlapScorer::similarity(const std::string& a, const std::string& b) {
  const std::vector<std::string> ta = lenient_tokens(a);
  const std::vector<std::string> tb = lenient_tokens(b);
  if (ta.empty() && tb.empty()) return 1.0;
  const std::size_t longer = std::max(ta.size(), tb.size());
  if (longer == 0) return 1.0;
  std::size_t equal = 0;
  const std::size_t shorter = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < shorter; ++i) {
    if (ta[i] == tb[i]) ++equal;
  }
  return static_cast<double>(equal) / static_cast<double>(longer);
}

StaticRecognizer::StaticRecognizer(std::map<std::string, GazetteerEntry> gazetteer)
    : gazetteer_(std::move(gazetteer)) {}

StaticRecognizer StaticRecognizer::from_fixture(const OntologyFixture& fixture) {
  std::map<std::string, GazetteerEntry> gazetteer;
  for (const auto& [id, entry] : fixture.entries()) {
    GazetteerEntry g;
    g.type = entry.type;
    g.ontology_id = id;
    g.canonical_name = entry.canonical;
    gazetteer[to_lower(entry.canonical)] = std::move(g);
  }
  return StaticRecognizer(std::move(gazetteer));
}

std::vector<EntitySpan> StaticRecognizer::recognize(const Document& doc) {
  std::vector<EntitySpan> spans;
  const int n = doc.size();
  int i = 0;
  while (i < n) {
    if (doc.tokens[static_cast<std::size_t>(i)].is_punct) {
      ++i;
      continue;
    }
    bool matched = false;
    const int max_len = std::min(kMaxPhraseTokens, n - i);
    for (int len = max_len; len >= 1 && !matched; --len) {
      // a candidate window may not contain punctuation-only tokens
      bool clean = true;
      for (int k = i; k < i + len; ++k) {
        if (doc.tokens[static_cast<std::size_t>(k)].is_punct) {
          clean = false;
          break;
        }
      }
      if (!clean) continue;
      std::string phrase;
      for (int k = i; k < i + len; ++k) {
        if (!phrase.empty()) phrase += ' ';
        phrase += to_lower(doc.surface(k));
      }
      auto it = gazetteer_.find(phrase);
      if (it == gazetteer_.end()) continue;
      EntitySpan span;
      span.start_token = i;
      span.end_token = i + len - 1;
      span.entity_type = it->second.type;
      span.ontology_id = it->second.ontology_id;
      span.canonical_name =
          it->second.canonical_name.empty() ? phrase : it->second.canonical_name;
      spans.push_back(std::move(span));
      i += len;
      matched = true;
    }
    if (!matched) ++i;
  }
  return spans;
}

FixtureSynonymProvider::FixtureSynonymProvider(OntologyFixture fixture)
    : fixture_(std::move(fixture)) {}

std::vector<std::string> FixtureSynonymProvider::synonyms(const std::string& ontology_id,
                                                          EntityType /*type*/) const {
  const OntologyEntry* entry = fixture_.find(ontology_id);
  if (entry == nullptr) return {};
  const std::string canonical = to_lower(entry->canonical);
  std::vector<std::string> out;
  for (const std::string& s : entry->synonyms) {
    if (to_lower(s) == canonical) continue;
    out.push_back(s);
  }
  return out;
}

PosTag SuffixPosTagger::tag_word(const std::string& surface) {
  if (surface.empty() || is_punct_token(surface)) return PosTag::other;
  const std::string lower = to_lower(surface);
  if (is_function_word(lower)) return PosTag::other;

  // pure numerals, with or without an ordinal suffix
  std::size_t digits = 0;
  while (digits < lower.size() && std::isdigit(static_cast<unsigned char>(lower[digits]))) ++digits;
  if (digits > 0) {
    const std::string rest = lower.substr(digits);
    if (rest.empty() || rest == "st" || rest == "nd" || rest == "rd" || rest == "th") {
      return PosTag::numeral;
    }
  }

  if (ends_with(lower, "ly")) return PosTag::adverb;
  for (const char* s : {"ed", "ize", "ise", "ify"}) {
    if (ends_with(lower, s)) return PosTag::verb;
  }
  for (const char* s : {"ous", "ful", "ive", "ble", "ish", "al", "ic", "ary"}) {
    if (ends_with(lower, s)) return PosTag::adjective;
  }
  return PosTag::noun;
}

std::vector<PosTag> SuffixPosTagger::tag(const Document& doc) {
  std::vector<PosTag> tags;
  tags.reserve(doc.tokens.size());
  for (const Token& t : doc.tokens) tags.push_back(tag_word(t.surface));
  return tags;
}

StaticMaskedProposer::StaticMaskedProposer(MlmVocab vocab,
                                           std::map<std::string, std::vector<ScoredToken>> overrides)
    : vocab_(std::move(vocab)), overrides_(std::move(overrides)) {
  auto by_score = [](const ScoredToken& a, const ScoredToken& b) { return a.score > b.score; };
  std::stable_sort(vocab_.entries.begin(), vocab_.entries.end(), by_score);
  for (auto& [text, proposals] : overrides_) {
    std::stable_sort(proposals.begin(), proposals.end(), by_score);
  }
}

std::vector<ScoredToken> StaticMaskedProposer::propose(const std::string& masked_text, int k) {
  const std::size_t first = masked_text.find(kMaskSentinel);
  if (first == std::string::npos ||
      masked_text.find(kMaskSentinel, first + 1) != std::string::npos) {
    throw ProtocolError("proposer request must contain exactly one mask sentinel");
  }
  const std::vector<ScoredToken>* source = &vocab_.entries;
  auto it = overrides_.find(masked_text);
  if (it != overrides_.end()) source = &it->second;

  std::vector<ScoredToken> out;
  for (const ScoredToken& entry : *source) {
    if (static_cast<int>(out.size()) >= k) break;
    if (entry.token.find(kMaskSentinel) != std::string::npos) continue;
    out.push_back(entry);
  }
  return out;
}

}  // namespace bbaeg
