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
#include <string>
#include <vector>

#include "bbaeg/backends.hpp"
#include "bbaeg/importance.hpp"
#include "bbaeg/perturbers.hpp"
#include "bbaeg/text.hpp"

namespace bbaeg {

/// Which perturbation channels the cascade may use.
struct SieveSet {
  bool synonyms_and_mlm = true;  // sieve 1 (entity synonyms + masked-LM)
  bool rotation = true;          // sieve 2, noise N1
  bool insertion = true;         // sieve 2, noise N2
  bool numerals = true;          // sieve 3

  bool any() const { return synonyms_and_mlm || rotation || insertion || numerals; }
  bool spelling() const { return rotation || insertion; }
};

struct AttackConfig {
  int top_k = 10;
  double alpha = 0.75;
  NoiseConfig noise;
  SieveSet sieves;
  int query_budget = 2000;
  std::uint64_t seed = 0;
  bool skip_stopwords = false;

  void validate() const;
};

enum class AttackStatus { success, failed, skipped_misclassified, budget_exhausted, error };

const char* to_string(AttackStatus status);
std::optional<AttackStatus> attack_status_from_string(std::string_view name);

/// Cascade stage recorded in the trace.
enum class SieveStage { sieve1, sieve2, sieve3, fallback };

const char* to_string(SieveStage stage);

/// One audited step: a stage attempted on a visitation unit, the candidates
/// it evaluated, and how it ended.
struct TraceStep {
  enum class Action { flip_returned, no_flip, no_candidates, committed_best_reduction };

  VisitUnit unit;
  SieveStage stage = SieveStage::sieve1;
  std::vector<Candidate> candidates;
  Action action = Action::no_candidates;
  std::string note;
};

const char* to_string(TraceStep::Action action);

struct AttackResult {
  AttackStatus status = AttackStatus::failed;
  Document original;
  int label = 0;
  std::optional<PerturbedDocument> adversarial;  // present on success
  std::optional<Sieve> sieve_used;
  int queries_spent = 0;
  double perturbed_fraction = 0.0;
  double similarity = 1.0;  // final text vs. original
  std::string final_text;
  std::vector<TraceStep> trace;
  std::string error_message;
};

/// Runs the sieve cascade against one document:
///   1. skip inputs the victim already misclassifies;
///   2. rank visitation units by deletion importance;
///   3. per unit try sieve 1 (entity synonyms or masked-LM replacements),
///      then spelling noise, then numeral expansion — returning the
///      flipping candidate most similar to the input as soon as one exists;
///   4. otherwise greedily commit the unit's best probability reduction and
///      move on; when all units are exhausted the attack has failed.
/// Every success is re-verified with one final victim query.
AttackResult attack(const Document& doc, int label, const BackendSet& backends,
                    const AttackConfig& config);

/// The flipping candidate with maximum recorded similarity; ties go to the
/// earlier-generated candidate. Throws NoCandidatesError when empty.
const Candidate& select_winner(const std::vector<Candidate>& flipping);

/// The candidate with minimal queried label probability, if strictly below
/// the current probability; otherwise nothing is committed.
std::optional<Candidate> commit_best_reduction(const std::vector<Candidate>& candidates,
                                               double current_prob_label);

}  // namespace bbaeg
