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

#include <map>
#include <string>
#include <vector>

#include "bbaeg/backends.hpp"
#include "bbaeg/fixtures.hpp"
#include "bbaeg/text.hpp"

namespace bbaeg {

// Deterministic reference implementations of the backend interfaces. Each is
// a pure function of its inputs and fixtures, so runs are bit-identical and
// instances are safe to share across threads.

/// Bag-of-words logistic victim: P(class 1) = logistic(bias + sum of the
/// weights of matched lowercased tokens).
class KeywordClassifier : public VictimClassifier {
 public:
  explicit KeywordClassifier(Lexicon lexicon);

  std::vector<ProbabilityDistribution> predict(const std::vector<std::string>& texts) override;
  int num_classes() const override { return 2; }

  /// Raw decision value before the logistic squash.
  double decision_value(const std::string& text) const;

 private:
  Lexicon lexicon_;
};

/// Position-wise token overlap: fraction of aligned positions with equal
/// surface over the longer token count.
class TokenOverlapScorer : public SimilarityScorer {
 public:
  double similarity(const std::string& a, const std::string& b) override;
};

/// Gazetteer-driven recognizer: longest-match, left-to-right,
/// case-insensitive phrase detection over 1..5-token windows. Spans never
/// overlap and never cross punctuation-only tokens.
class StaticRecognizer : public EntityRecognizer {
 public:
  struct GazetteerEntry {
    EntityType type = EntityType::disease;
    std::string ontology_id;
    std::string canonical_name;
  };

  explicit StaticRecognizer(std::map<std::string, GazetteerEntry> gazetteer);

  /// Registers every canonical name in the fixture as a recognizable phrase.
  static StaticRecognizer from_fixture(const OntologyFixture& fixture);

  std::vector<EntitySpan> recognize(const Document& doc) override;

  static constexpr int kMaxPhraseTokens = 5;

 private:
  std::map<std::string, GazetteerEntry> gazetteer_;  // keyed by lowercase phrase
};

/// Serves synonyms straight from an ontology fixture, excluding the
/// canonical surface case-insensitively. Unknown ids yield an empty list.
class FixtureSynonymProvider : public SynonymProvider {
 public:
  explicit FixtureSynonymProvider(OntologyFixture fixture);

  std::vector<std::string> synonyms(const std::string& ontology_id,
                                    EntityType type) const override;

 private:
  OntologyFixture fixture_;
};

/// Coarse suffix-rule tagger. Closed-class function words tag as `other`,
/// pure numerals (with optional ordinal suffix) as `numeral`, then suffix
/// rules; everything else defaults to `noun`.
class SuffixPosTagger : public PosTagger {
 public:
  std::vector<PosTag> tag(const Document& doc) override;

  static PosTag tag_word(const std::string& surface);
};

/// Returns a fixed scored list for any masked query, with optional overrides
/// keyed by the exact masked text. Validates that the request contains
/// exactly one mask sentinel.
class StaticMaskedProposer : public MaskedTokenProposer {
 public:
  explicit StaticMaskedProposer(MlmVocab vocab,
                                std::map<std::string, std::vector<ScoredToken>> overrides = {});

  std::vector<ScoredToken> propose(const std::string& masked_text, int k) override;

 private:
  MlmVocab vocab_;
  std::map<std::string, std::vector<ScoredToken>> overrides_;
};

}  // namespace bbaeg
