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

#include "bbaeg/importance.hpp"

#include <algorithm>
#include <numeric>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

bool rankable(const Token& t, bool skip_stopwords) {
  if (t.is_punct) return false;
  if (skip_stopwords && is_function_word(to_lower(t.surface))) return false;
  return true;
}

}  // namespace

ImportanceRanking token_importance(const Document& doc, VictimClassifier& victim, int label,
                                   bool skip_stopwords) {
  std::vector<int> rankable_indices;
  for (const Token& t : doc.tokens) {
    if (rankable(t, skip_stopwords)) rankable_indices.push_back(t.index);
  }
  if (rankable_indices.empty()) {
    throw NoRankableTokensError("document has no rankable tokens");
  }

  // One batch: the intact text first, then one deletion per rankable token.
  std::vector<std::string> texts;
  texts.reserve(rankable_indices.size() + 1);
  texts.push_back(detokenize(doc));
  const std::vector<std::string> surfaces = doc.surfaces();
  for (int idx : rankable_indices) {
    std::vector<std::string> rest;
    rest.reserve(surfaces.size() - 1);
    for (int i = 0; i < static_cast<int>(surfaces.size()); ++i) {
      if (i != idx) rest.push_back(surfaces[static_cast<std::size_t>(i)]);
    }
    texts.push_back(detokenize_surfaces(rest));
  }

  const std::vector<ProbabilityDistribution> dists = victim.predict(texts);
  if (dists.size() != texts.size()) {
    throw ProtocolError("victim returned a wrong-sized batch");
  }
  const double base = dists[0].prob(label);

  ImportanceRanking ranking;
  ranking.scores.assign(doc.tokens.size(), 0.0);
  for (std::size_t k = 0; k < rankable_indices.size(); ++k) {
    const int idx = rankable_indices[k];
    ranking.scores[static_cast<std::size_t>(idx)] = base - dists[k + 1].prob(label);
  }

  ranking.order = rankable_indices;  // already ascending, so ties keep lower index
  std::stable_sort(ranking.order.begin(), ranking.order.end(), [&ranking](int a, int b) {
    return ranking.scores[static_cast<std::size_t>(a)] > ranking.scores[static_cast<std::size_t>(b)];
  });
  return ranking;
}

std::vector<VisitUnit> visit_order(const Document& doc, const ImportanceRanking& ranking,
                                   const std::vector<EntitySpan>& spans) {
  // span membership per token; also validate non-overlap
  std::vector<int> span_of(doc.tokens.size(), -1);
  for (int s = 0; s < static_cast<int>(spans.size()); ++s) {
    const EntitySpan& span = spans[static_cast<std::size_t>(s)];
    if (span.start_token < 0 || span.end_token < span.start_token ||
        span.end_token >= doc.size()) {
      throw SpanError("entity span out of range");
    }
    for (int i = span.start_token; i <= span.end_token; ++i) {
      if (span_of[static_cast<std::size_t>(i)] != -1) {
        throw SpanError("entity spans overlap");
      }
      span_of[static_cast<std::size_t>(i)] = s;
    }
  }

  std::vector<bool> is_ranked(doc.tokens.size(), false);
  for (int idx : ranking.order) is_ranked[static_cast<std::size_t>(idx)] = true;

  std::vector<VisitUnit> units;
  std::vector<bool> span_done(spans.size(), false);
  for (int idx : ranking.order) {
    const int s = span_of[static_cast<std::size_t>(idx)];
    if (s < 0) {
      units.push_back({idx, idx, false, -1, ranking.scores[static_cast<std::size_t>(idx)]});
      continue;
    }
    if (span_done[static_cast<std::size_t>(s)]) continue;
    span_done[static_cast<std::size_t>(s)] = true;
    const EntitySpan& span = spans[static_cast<std::size_t>(s)];
    // max over the span's ranked members only
    double best = ranking.scores[static_cast<std::size_t>(idx)];
    for (int i = span.start_token; i <= span.end_token; ++i) {
      if (is_ranked[static_cast<std::size_t>(i)]) {
        best = std::max(best, ranking.scores[static_cast<std::size_t>(i)]);
      }
    }
    units.push_back({span.start_token, span.end_token, true, s, best});
  }

  std::stable_sort(units.begin(), units.end(), [](const VisitUnit& a, const VisitUnit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.start < b.start;
  });
  return units;
}

}  // namespace bbaeg
