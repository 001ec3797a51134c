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

#include "bbaeg/attack.hpp"

#include <algorithm>
#include <utility>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

/// Budget-enforcing victim wrapper: the single choke point through which
/// every text reaches the model. Counts texts, not calls, and refuses a
/// batch that would overrun the budget.
class CountingVictim : public VictimClassifier {
 public:
  CountingVictim(VictimClassifier& inner, int budget) : inner_(inner), budget_(budget) {}

  std::vector<ProbabilityDistribution> predict(const std::vector<std::string>& texts) override {
    if (count_ + static_cast<int>(texts.size()) > budget_) {
      throw BudgetExhaustedError("query budget of " + std::to_string(budget_) + " exhausted");
    }
    count_ += static_cast<int>(texts.size());
    std::vector<ProbabilityDistribution> out = inner_.predict(texts);
    if (out.size() != texts.size()) {
      throw ProtocolError("victim returned a wrong-sized batch");
    }
    return out;
  }

  int num_classes() const override { return inner_.num_classes(); }
  int count() const { return count_; }

  ProbabilityDistribution one(const std::string& text) {
    return predict(std::vector<std::string>{text}).front();
  }

 private:
  VictimClassifier& inner_;
  int budget_;
  int count_ = 0;
};

}  // namespace

void AttackConfig::validate() const {
  if (top_k < 1) throw UsageError("top_k must be at least 1");
  if (alpha < 0.0 || alpha > 1.0) throw UsageError("alpha must lie in [0, 1]");
  if (query_budget < 1) throw UsageError("query budget must be at least 1");
  noise.validate();
}

const char* to_string(AttackStatus status) {
  switch (status) {
    case AttackStatus::success: return "success";
    case AttackStatus::failed: return "failed";
    case AttackStatus::skipped_misclassified: return "skipped_misclassified";
    case AttackStatus::budget_exhausted: return "budget_exhausted";
    case AttackStatus::error: return "error";
  }
  return "error";
}

std::optional<AttackStatus> attack_status_from_string(std::string_view name) {
  if (name == "success") return AttackStatus::success;
  if (name == "failed") return AttackStatus::failed;
  if (name == "skipped_misclassified") return AttackStatus::skipped_misclassified;
  if (name == "budget_exhausted") return AttackStatus::budget_exhausted;
  if (name == "error") return AttackStatus::error;
  return std::nullopt;
}

const char* to_string(SieveStage stage) {
  switch (stage) {
    case SieveStage::sieve1: return "sieve1";
    case SieveStage::sieve2: return "sieve2";
    case SieveStage::sieve3: return "sieve3";
    case SieveStage::fallback: return "fallback";
  }
  return "sieve1";
}

const char* to_string(TraceStep::Action action) {
  switch (action) {
    case TraceStep::Action::flip_returned: return "flip_returned";
    case TraceStep::Action::no_flip: return "no_flip";
    case TraceStep::Action::no_candidates: return "no_candidates";
    case TraceStep::Action::committed_best_reduction: return "committed_best_reduction";
  }
  return "no_candidates";
}

const Candidate& select_winner(const std::vector<Candidate>& flipping) {
  if (flipping.empty()) throw NoCandidatesError("select_winner called without candidates");
  const Candidate* best = &flipping.front();
  for (const Candidate& c : flipping) {
    if (c.similarity > best->similarity) best = &c;  // ties keep the earlier candidate
  }
  return *best;
}

std::optional<Candidate> commit_best_reduction(const std::vector<Candidate>& candidates,
                                               double current_prob_label) {
  const Candidate* best = nullptr;
  for (const Candidate& c : candidates) {
    if (best == nullptr || c.prob_label < best->prob_label) best = &c;
  }
  if (best == nullptr || best->prob_label >= current_prob_label) return std::nullopt;
  return *best;
}

AttackResult attack(const Document& doc, int label, const BackendSet& backends,
                    const AttackConfig& config) {
  config.validate();
  if (!backends.complete()) throw UsageError("attack requires a complete backend set");
  if (label < 0 || label >= backends.victim->num_classes()) {
    throw UsageError("label out of range for the victim");
  }

  AttackResult result;
  result.original = doc;
  result.label = label;

  CountingVictim victim(*backends.victim, config.query_budget);
  PerturbationLog log(doc);
  // The generator rng is consumed only by the sieve-2 noise samplers, in
  // visitation order; anything else would break replayability.
  Rng rng(config.seed);
  const std::string original_text = detokenize(doc);

  auto candidate_text = [&log](const Candidate& c) {
    return detokenize(replace_span(log.current(), c.span_start, c.span_end, c.replacement));
  };

  // Finalizes a winning candidate: apply it, re-verify with one more query,
  // and fill the success fields.
  auto finish_success = [&](const Candidate& winner) {
    log.apply(winner.span_start, winner.span_end, winner.replacement, winner.sieve);
    const std::string final_text = detokenize(log.current());
    const ProbabilityDistribution verdict = victim.one(final_text);
    if (verdict.argmax() == label) {
      // deterministic victims cannot reach this; a flaky remote one can
      result.status = AttackStatus::error;
      result.error_message = "winning candidate failed final re-verification";
    } else {
      result.status = AttackStatus::success;
      result.adversarial = log.to_perturbed();
      result.sieve_used = winner.sieve;
      result.similarity = winner.similarity;
    }
    result.final_text = final_text;
  };

  try {
    // Inputs the victim already gets wrong are not attacked.
    const ProbabilityDistribution initial = victim.one(original_text);
    if (initial.argmax() != label) {
      result.status = AttackStatus::skipped_misclassified;
      result.queries_spent = victim.count();
      result.final_text = original_text;
      result.similarity = 1.0;
      return result;
    }
    double prob_label = initial.prob(label);

    const ImportanceRanking ranking = token_importance(doc, victim, label, config.skip_stopwords);
    const std::vector<EntitySpan> spans = backends.recognizer->recognize(doc);
    const std::vector<VisitUnit> units = visit_order(doc, ranking, spans);

    for (const VisitUnit& unit : units) {
      const auto [cur_start, cur_end] = log.current_span(unit.start, unit.end);
      std::vector<Candidate> pool;  // every candidate this unit produced
      std::optional<Candidate> winner;

      // Evaluates one stage: scores and queries the candidates, records the
      // trace step, and returns the winner if any candidate flips the model.
      auto run_stage = [&](SieveStage stage, std::vector<Candidate> candidates,
                           std::string note) -> std::optional<Candidate> {
        std::vector<bool> flipped(candidates.size(), false);
        if (!candidates.empty()) {
          std::vector<std::string> texts;
          texts.reserve(candidates.size());
          for (Candidate& c : candidates) {
            std::string text = candidate_text(c);
            if (c.sieve != Sieve::sieve1_mlm) {
              c.similarity = backends.scorer->similarity(original_text, text);
            }
            texts.push_back(std::move(text));
          }
          const std::vector<ProbabilityDistribution> dists = victim.predict(texts);
          for (std::size_t i = 0; i < candidates.size(); ++i) {
            candidates[i].prob_label = dists[i].prob(label);
            flipped[i] = dists[i].argmax() != label;
          }
        }

        std::vector<Candidate> flips;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
          if (flipped[i]) flips.push_back(candidates[i]);
        }

        TraceStep step;
        step.unit = unit;
        step.stage = stage;
        step.candidates = candidates;
        step.note = std::move(note);
        step.action = candidates.empty()   ? TraceStep::Action::no_candidates
                      : flips.empty()      ? TraceStep::Action::no_flip
                                           : TraceStep::Action::flip_returned;
        result.trace.push_back(std::move(step));
        pool.insert(pool.end(), candidates.begin(), candidates.end());

        if (flips.empty()) return std::nullopt;
        return select_winner(flips);
      };

      // Sieve 1: ontology synonyms for entity units, masked-LM proposals for
      // single tokens.
      if (config.sieves.synonyms_and_mlm) {
        std::vector<Candidate> candidates;
        std::string note;
        if (unit.is_entity) {
          EntitySpan span = spans[static_cast<std::size_t>(unit.entity_index)];
          span.start_token = cur_start;
          span.end_token = cur_end;
          candidates = ne_synonym_candidates(log.current(), span, *backends.synonyms);
          if (candidates.empty()) note = "no synonyms for " + span.ontology_id;
        } else {
          candidates = mlm_candidates(log.current(), doc, cur_start, *backends.proposer,
                                      *backends.tagger, *backends.scorer, config.top_k,
                                      config.alpha);
        }
        winner = run_stage(SieveStage::sieve1, std::move(candidates), std::move(note));
        if (winner) {
          finish_success(*winner);
          break;
        }
      }

      // Sieve 2: spelling noise on every non-punctuation token of the unit.
      if (config.sieves.spelling()) {
        std::vector<Candidate> candidates;
        for (int ti = cur_start; ti <= cur_end; ++ti) {
          const std::string& tok = log.current().surface(ti);
          if (is_punct_token(tok)) continue;
          if (config.sieves.rotation) {
            for (std::string& v : rotate_noise(tok, config.noise, rng)) {
              candidates.push_back({ti, ti, std::move(v), Sieve::sieve2_n1, 0.0, 0.0});
            }
          }
          if (config.sieves.insertion) {
            for (std::string& v : insert_noise(tok, config.noise, rng)) {
              candidates.push_back({ti, ti, std::move(v), Sieve::sieve2_n2, 0.0, 0.0});
            }
          }
        }
        winner = run_stage(SieveStage::sieve2, std::move(candidates), "");
        if (winner) {
          finish_success(*winner);
          break;
        }
      }

      // Sieve 3: numeral expansion on the unit's digit-bearing tokens.
      if (config.sieves.numerals) {
        std::vector<Candidate> candidates;
        std::string note;
        for (int ti = cur_start; ti <= cur_end; ++ti) {
          const std::string& tok = log.current().surface(ti);
          if (!has_digit(tok)) continue;
          try {
            std::optional<std::string> expanded = expand_numerals(tok);
            if (expanded && *expanded != tok) {
              candidates.push_back({ti, ti, std::move(*expanded), Sieve::sieve3_num, 0.0, 0.0});
            }
          } catch (const UnsupportedNumeralError& e) {
            if (!note.empty()) note += "; ";
            note += e.what();
          }
        }
        winner = run_stage(SieveStage::sieve3, std::move(candidates), std::move(note));
        if (winner) {
          finish_success(*winner);
          break;
        }
      }

      // No flip anywhere: greedily keep the unit edit that hurts the gold
      // label most, then move on.
      std::optional<Candidate> committed = commit_best_reduction(pool, prob_label);
      if (committed) {
        log.apply(committed->span_start, committed->span_end, committed->replacement,
                  committed->sieve);
        prob_label = committed->prob_label;
        TraceStep step;
        step.unit = unit;
        step.stage = SieveStage::fallback;
        step.candidates = {*committed};
        step.action = TraceStep::Action::committed_best_reduction;
        result.trace.push_back(std::move(step));
      }
    }

    if (result.status != AttackStatus::success && result.status != AttackStatus::error) {
      result.status = AttackStatus::failed;
    }
  } catch (const BudgetExhaustedError& e) {
    result.status = AttackStatus::budget_exhausted;
    result.error_message = e.what();
  } catch (const Error& e) {
    result.status = AttackStatus::error;
    result.error_message = e.what();
  }

  result.queries_spent = victim.count();
  if (result.final_text.empty()) result.final_text = detokenize(log.current());
  result.perturbed_fraction = perturbed_fraction(doc, log.to_perturbed());
  if (result.status != AttackStatus::success) {
    result.similarity = backends.scorer->similarity(original_text, result.final_text);
  }
  return result;
}

}  // namespace bbaeg
