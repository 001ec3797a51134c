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

#include <string>

#include "bbaeg/backends.hpp"

namespace bbaeg {

// Adapters that satisfy the backend interfaces over a JSON request/response
// wire protocol, so real MLM / NER / embedding / victim services can be
// plugged in:
//   predict:    {"texts": [string]}        -> {"probs": [[float]]}
//   propose:    {"text": string, "k": int} -> {"tokens": [{"token", "score"}]}
//   similarity: {"a": string, "b": string} -> {"score": float}
//   recognize:  {"text": string}           -> {"spans": [{"start_char",
//                "end_char", "type", "id"}]}
// Transport failures surface as BackendUnavailableError, contract
// violations as ProtocolError; nothing is ever silently defaulted.

/// POSTs the request body to the endpoint URL and returns the response body.
std::string remote_model_call(const std::string& endpoint, const std::string& request_json);

class RemoteVictim : public VictimClassifier {
 public:
  explicit RemoteVictim(std::string endpoint, int num_classes = 2);

  std::vector<ProbabilityDistribution> predict(const std::vector<std::string>& texts) override;
  int num_classes() const override { return num_classes_; }

 private:
  std::string endpoint_;
  int num_classes_;
};

class RemoteProposer : public MaskedTokenProposer {
 public:
  explicit RemoteProposer(std::string endpoint);

  std::vector<ScoredToken> propose(const std::string& masked_text, int k) override;

 private:
  std::string endpoint_;
};

class RemoteScorer : public SimilarityScorer {
 public:
  explicit RemoteScorer(std::string endpoint);

  double similarity(const std::string& a, const std::string& b) override;

 private:
  std::string endpoint_;
};

/// Maps the server's character spans onto token spans of the document.
class RemoteRecognizer : public EntityRecognizer {
 public:
  explicit RemoteRecognizer(std::string endpoint);

  std::vector<EntitySpan> recognize(const Document& doc) override;

 private:
  std::string endpoint_;
};

}  // namespace bbaeg
