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

#include <cmath>
#include <string>
#include <vector>

#include "bbaeg/text.hpp"

namespace bbaeg {

/// Mask placeholder used in proposer requests; fixed so that every proposer
/// implementation sees bit-identical wire text.
inline constexpr const char* kMaskSentinel = "[MASK]";

/// Soft-label output of a victim classifier.
struct ProbabilityDistribution {
  std::vector<double> probs;

  int argmax() const {
    int best = 0;
    for (int i = 1; i < static_cast<int>(probs.size()); ++i) {
      if (probs[static_cast<std::size_t>(i)] > probs[static_cast<std::size_t>(best)]) best = i;
    }
    return best;
  }

  double prob(int cls) const { return probs.at(static_cast<std::size_t>(cls)); }

  bool valid(double tol = 1e-6) const {
    double sum = 0.0;
    for (double p : probs) {
      if (p < 0.0) return false;
      sum += p;
    }
    return !probs.empty() && std::abs(sum - 1.0) <= tol;
  }
};

/// The model under attack. Only soft-label queries are exposed: no
/// gradients, no parameters. Implementations take batches so callers can
/// amortize remote round trips; query accounting happens at this choke point.
class VictimClassifier {
 public:
  virtual ~VictimClassifier() = default;
  virtual std::vector<ProbabilityDistribution> predict(const std::vector<std::string>& texts) = 0;
  virtual int num_classes() const = 0;
};

struct ScoredToken {
  std::string token;
  double score = 0.0;
};

/// Proposes replacements for a single masked position. The input text
/// contains exactly one kMaskSentinel occurrence.
class MaskedTokenProposer {
 public:
  virtual ~MaskedTokenProposer() = default;
  /// Returns at most k proposals sorted by score descending; none of them
  /// contains the mask sentinel.
  virtual std::vector<ScoredToken> propose(const std::string& masked_text, int k) = 0;
};

/// Detects drug/disease mentions and links them to ontology identifiers.
class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  virtual std::vector<EntitySpan> recognize(const Document& doc) = 0;
};

/// Ontology-backed synonym lookup, keyed by identifier rather than surface
/// string. Returned synonyms never equal the canonical surface
/// (case-insensitive). Unknown identifiers yield an empty list.
class SynonymProvider {
 public:
  virtual ~SynonymProvider() = default;
  virtual std::vector<std::string> synonyms(const std::string& ontology_id,
                                            EntityType type) const = 0;
};

/// Symmetric text similarity in [-1, 1].
class SimilarityScorer {
 public:
  virtual ~SimilarityScorer() = default;
  virtual double similarity(const std::string& a, const std::string& b) = 0;
};

enum class PosTag { noun, verb, adjective, adverb, numeral, other };

const char* to_string(PosTag tag);

/// Coarse part-of-speech tagging, one tag per token.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<PosTag> tag(const Document& doc) = 0;
};

/// Non-owning bundle of every capability the attack needs.
struct BackendSet {
  VictimClassifier* victim = nullptr;
  MaskedTokenProposer* proposer = nullptr;
  EntityRecognizer* recognizer = nullptr;
  SynonymProvider* synonyms = nullptr;
  SimilarityScorer* scorer = nullptr;
  PosTagger* tagger = nullptr;

  bool complete() const {
    return victim && proposer && recognizer && synonyms && scorer && tagger;
  }
};

}  // namespace bbaeg
