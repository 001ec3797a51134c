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

#include "bbaeg/perturbers.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

constexpr std::uint64_t kNumeralLimit = 1000000;  // exclusive

const char* const kOnes[] = {"zero",    "one",     "two",       "three",    "four",
                             "five",    "six",     "seven",     "eight",    "nine",
                             "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
                             "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
const char* const kTens[] = {"",      "",      "twenty", "thirty", "forty",
                             "fifty", "sixty", "seventy", "eighty", "ninety"};

std::string cardinal_words(std::uint64_t n) {
  if (n < 20) return kOnes[n];
  if (n < 100) {
    std::string out = kTens[n / 10];
    if (n % 10 != 0) out += std::string("-") + kOnes[n % 10];
    return out;
  }
  if (n < 1000) {
    std::string out = std::string(kOnes[n / 100]) + " hundred";
    if (n % 100 != 0) out += " " + cardinal_words(n % 100);
    return out;
  }
  std::string out = cardinal_words(n / 1000) + " thousand";
  if (n % 1000 != 0) out += " " + cardinal_words(n % 1000);
  return out;
}

// Converts the final word of a cardinal to its ordinal form.
std::string ordinalize(std::string words) {
  const std::size_t cut = words.find_last_of(" -");
  const std::size_t begin = cut == std::string::npos ? 0 : cut + 1;
  std::string last = words.substr(begin);

  static const std::unordered_set<std::string> kIrregular = {"one",  "two",  "three", "five",
                                                             "eight", "nine", "twelve"};
  if (kIrregular.count(last) > 0) {
    if (last == "one") last = "first";
    else if (last == "two") last = "second";
    else if (last == "three") last = "third";
    else if (last == "five") last = "fifth";
    else if (last == "eight") last = "eighth";
    else if (last == "nine") last = "ninth";
    else last = "twelfth";
  } else if (!last.empty() && last.back() == 'y') {
    last.replace(last.size() - 1, 1, "ieth");
  } else {
    last += "th";
  }
  return words.substr(0, begin) + last;
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Detects an ordinal suffix at token[pos]; the suffix must not be followed
// by another letter ("19thermal" is not an ordinal).
bool ordinal_suffix_at(const std::string& token, std::size_t pos) {
  if (pos + 2 > token.size()) return false;
  const char a = lower(token[pos]);
  const char b = lower(token[pos + 1]);
  const bool suffix = (a == 's' && b == 't') || (a == 'n' && b == 'd') ||
                      (a == 'r' && b == 'd') || (a == 't' && b == 'h');
  if (!suffix) return false;
  return pos + 2 == token.size() || !is_alpha(token[pos + 2]);
}

}  // namespace

void NoiseConfig::validate() const {
  if (rotation_window < 2) throw UsageError("noise rotation window must be at least 2");
  if (symbol_alphabet.empty()) throw UsageError("noise symbol alphabet must not be empty");
  for (const std::string& entry : symbol_alphabet) {
    if (entry.empty()) throw UsageError("noise alphabet entries must not be empty");
  }
  if (max_variants_per_token < 0) throw UsageError("noise variant cap must be non-negative");
}

std::string rotate_window(const std::string& token, int start, int length) {
  if (start < 0 || length < 1 ||
      static_cast<std::size_t>(start) + static_cast<std::size_t>(length) > token.size()) {
    throw SpanError("rotation window out of range");
  }
  std::string out = token;
  std::rotate(out.begin() + start, out.begin() + start + 1, out.begin() + start + length);
  return out;
}

std::vector<std::string> rotate_noise(const std::string& token, const NoiseConfig& config,
                                      Rng& rng) {
  if (is_punct_token(token)) return {};
  if (static_cast<int>(token.size()) < config.rotation_window) return {};

  const std::uint64_t window_starts =
      static_cast<std::uint64_t>(token.size()) - static_cast<std::uint64_t>(config.rotation_window) + 1;
  std::vector<std::string> variants;
  for (int slot = 0; slot < config.max_variants_per_token; ++slot) {
    std::string picked;
    for (std::size_t retry = 0; retry <= token.size(); ++retry) {
      const int start = static_cast<int>(rng() % window_starts);
      std::string candidate = rotate_window(token, start, config.rotation_window);
      if (candidate != token) {
        picked = std::move(candidate);
        break;
      }
    }
    if (picked.empty()) continue;  // every draw reproduced the original
    if (std::find(variants.begin(), variants.end(), picked) == variants.end()) {
      variants.push_back(std::move(picked));
    }
  }
  return variants;
}

std::vector<std::string> insert_noise(const std::string& token, const NoiseConfig& config,
                                      Rng& rng) {
  if (token.empty() || is_punct_token(token) || config.symbol_alphabet.empty()) return {};

  std::vector<std::string> variants;
  int draws = 0;
  while (static_cast<int>(variants.size()) < config.max_variants_per_token &&
         draws < config.max_variants_per_token) {
    const std::string& entry =
        config.symbol_alphabet[static_cast<std::size_t>(rng() % config.symbol_alphabet.size())];
    ++draws;
    for (std::string v : {entry + token, token + entry}) {
      if (static_cast<int>(variants.size()) >= config.max_variants_per_token) break;
      if (std::find(variants.begin(), variants.end(), v) == variants.end()) {
        variants.push_back(std::move(v));
      }
    }
  }
  return variants;
}

std::string number_to_words(std::uint64_t n, bool ordinal) {
  if (n >= kNumeralLimit) {
    throw UnsupportedNumeralError("numeral out of supported range: " + std::to_string(n));
  }
  std::string words = cardinal_words(n);
  return ordinal ? ordinalize(std::move(words)) : words;
}

std::optional<std::string> expand_numerals(const std::string& token) {
  if (!has_digit(token)) return std::nullopt;

  std::string out;
  bool last_was_words = false;  // last emitted characters came from number words
  std::size_t i = 0;
  while (i < token.size()) {
    if (is_digit(token[i])) {
      std::size_t j = i;
      std::uint64_t value = 0;
      while (j < token.size() && is_digit(token[j])) {
        if (j - i >= 7) throw UnsupportedNumeralError("digit run too long in: " + token);
        value = value * 10 + static_cast<std::uint64_t>(token[j] - '0');
        ++j;
      }
      const bool ordinal = ordinal_suffix_at(token, j);
      const std::string words = number_to_words(value, ordinal);
      if (!out.empty() && is_alpha(out.back())) out += ' ';
      out += words;
      i = j + (ordinal ? 2 : 0);
      last_was_words = true;
    } else {
      const char c = token[i];
      if (is_alpha(c) && last_was_words) out += ' ';
      out += c;
      last_was_words = false;
      ++i;
    }
  }
  return out;
}

std::vector<Candidate> ne_synonym_candidates(const Document& doc, const EntitySpan& span,
                                             const SynonymProvider& provider) {
  if (span.start_token < 0 || span.end_token < span.start_token || span.end_token >= doc.size()) {
    throw SpanError("entity span out of range");
  }
  std::vector<std::string> span_surfaces;
  for (int i = span.start_token; i <= span.end_token; ++i) span_surfaces.push_back(doc.surface(i));
  const std::string current_surface = detokenize_surfaces(span_surfaces);

  std::unordered_set<std::string> seen;
  seen.insert(to_lower(current_surface));
  seen.insert(to_lower(span.canonical_name));

  std::vector<Candidate> candidates;
  for (const std::string& synonym : provider.synonyms(span.ontology_id, span.entity_type)) {
    const std::string key = to_lower(synonym);
    if (key.empty() || seen.count(key) > 0) continue;
    seen.insert(key);
    Candidate c;
    c.span_start = span.start_token;
    c.span_end = span.end_token;
    c.replacement = synonym;
    c.sieve = Sieve::sieve1_ne;
    candidates.push_back(std::move(c));
  }
  return candidates;
}

std::string masked_text(const Document& doc, int token_index) {
  if (token_index < 0 || token_index >= doc.size()) {
    throw SpanError("mask index out of range");
  }
  std::vector<std::string> surfaces = doc.surfaces();
  surfaces[static_cast<std::size_t>(token_index)] = kMaskSentinel;
  return detokenize_surfaces(surfaces);
}

std::vector<Candidate> mlm_candidates(const Document& doc, const Document& reference,
                                      int token_index, MaskedTokenProposer& proposer,
                                      PosTagger& tagger, SimilarityScorer& scorer, int k,
                                      double alpha) {
  const std::string& original_surface = doc.surface(token_index);
  const PosTag original_tag = tagger.tag(doc).at(static_cast<std::size_t>(token_index));
  const std::string reference_text = detokenize(reference);

  std::vector<Candidate> candidates;
  for (const ScoredToken& proposal : proposer.propose(masked_text(doc, token_index), k)) {
    if (proposal.token.empty() || proposal.token == original_surface) continue;

    Document proposal_doc;
    try {
      proposal_doc = tokenize(proposal.token);
    } catch (const EmptyInputError&) {
      continue;
    }
    if (tagger.tag(proposal_doc).front() != original_tag) continue;

    const Document substituted = replace_span(doc, token_index, token_index, proposal.token);
    const double sim = scorer.similarity(reference_text, detokenize(substituted));
    if (sim < alpha) continue;

    Candidate c;
    c.span_start = token_index;
    c.span_end = token_index;
    c.replacement = proposal.token;
    c.sieve = Sieve::sieve1_mlm;
    c.similarity = sim;
    candidates.push_back(std::move(c));
  }
  return candidates;
}

}  // namespace bbaeg
