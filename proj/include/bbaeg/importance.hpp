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

#include <vector>

#include "bbaeg/backends.hpp"
#include "bbaeg/text.hpp"

namespace bbaeg {

/// Deletion-based token importance: score[i] is the drop in the probability
/// of the correct label when token i is removed. `order` lists the rankable
/// token indices by score descending, ties broken by lower index.
struct ImportanceRanking {
  std::vector<double> scores;  // aligned to token indices; 0 for unranked tokens
  std::vector<int> order;      // rankable indices only
};

/// Computes importance with one batched victim call containing the base text
/// plus one deletion text per rankable token (exactly rankable + 1 queries).
/// Punctuation-only tokens are never ranked; stopwords are skipped when
/// requested. Negative scores are kept: those tokens are simply visited last.
ImportanceRanking token_importance(const Document& doc, VictimClassifier& victim, int label,
                                   bool skip_stopwords = false);

/// One perturbation target: either a recognized entity span or a single
/// token. Units partition the rankable tokens.
struct VisitUnit {
  int start = 0;
  int end = 0;
  bool is_entity = false;
  int entity_index = -1;  // index into the span list when is_entity
  double score = 0.0;
};

/// Merges tokens inside an entity span into one unit scored by the maximum
/// member score, keeps the rest as singleton units, and orders everything by
/// score descending (ties: lower start index first).
std::vector<VisitUnit> visit_order(const Document& doc, const ImportanceRanking& ranking,
                                   const std::vector<EntitySpan>& spans);

}  // namespace bbaeg
