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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bbaeg/backends.hpp"
#include "bbaeg/text.hpp"

namespace bbaeg {

using Rng = std::mt19937_64;

/// Spelling-noise parameters. Rotation rewrites one random contiguous window
/// of `rotation_window` characters; insertion prepends or appends one entry
/// from `symbol_alphabet`.
struct NoiseConfig {
  int rotation_window = 2;
  std::vector<std::string> symbol_alphabet = {"#", "@", "ino", "cd"};
  int max_variants_per_token = 4;
  std::uint64_t seed = 0;

  void validate() const;
};

/// A proposed replacement for a token span of the evolving document, plus
/// the scores the engine attaches once the candidate is evaluated.
struct Candidate {
  int span_start = 0;
  int span_end = 0;
  std::string replacement;
  Sieve sieve = Sieve::sieve1_ne;
  double similarity = 0.0;
  double prob_label = 0.0;
};

/// Deterministic rotation primitive: rotates token[start, start+length) left
/// by one character. For length 2 this is an adjacent transposition.
std::string rotate_window(const std::string& token, int start, int length);

/// Up to max_variants_per_token distinct rotated variants; the window start
/// is drawn uniformly, draws that reproduce the original are resampled (at
/// most token-length retries) and then dropped. Tokens shorter than the
/// window or punctuation-only yield nothing.
std::vector<std::string> rotate_noise(const std::string& token, const NoiseConfig& config,
                                      Rng& rng);

/// Variants built by prepending or appending one alphabet entry; both
/// positions are attempted per draw.
std::vector<std::string> insert_noise(const std::string& token, const NoiseConfig& config,
                                      Rng& rng);

/// Cardinal or ordinal English words for n < 10^6, lowercase, hyphenated
/// tens-units, no "and". Throws UnsupportedNumeralError beyond the range.
std::string number_to_words(std::uint64_t n, bool ordinal = false);

/// Rewrites every maximal digit run of the token as number words. A run
/// immediately followed by an ordinal suffix (st/nd/rd/th, case-insensitive,
/// not followed by further letters) becomes an ordinal and consumes the
/// suffix. A space separates letters from number words; hyphens stay. Yields
/// nothing when the token has no digits; throws UnsupportedNumeralError when
/// a run is out of range.
std::optional<std::string> expand_numerals(const std::string& token);

/// One candidate per synonym of the linked entity, excluding the current
/// surface and the canonical name (case-insensitive, duplicates dropped).
/// Unknown ontology ids yield an empty list.
std::vector<Candidate> ne_synonym_candidates(const Document& doc, const EntitySpan& span,
                                             const SynonymProvider& provider);

/// Masks the token in `doc`, fetches top-k proposals, and filters them:
/// proposals equal to the original surface, tagged with a different part of
/// speech, or pushing full-document similarity against `reference` below
/// `alpha` are dropped. Survivors carry their similarity.
std::vector<Candidate> mlm_candidates(const Document& doc, const Document& reference,
                                      int token_index, MaskedTokenProposer& proposer,
                                      PosTagger& tagger, SimilarityScorer& scorer, int k,
                                      double alpha);

/// The document's text with the given token replaced by the mask sentinel
/// (string splice only; the sentinel never enters a Document).
std::string masked_text(const Document& doc, int token_index);

}  // namespace bbaeg
