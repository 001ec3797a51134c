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

#include "bbaeg/remote_backends.hpp"

#include <algorithm>

#include <httplib.h>
#include <json.hpp>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

using njson = nlohmann::ordered_json;

struct SplitUrl {
  std::string host_port;  // scheme://host:port
  std::string path;
};

SplitUrl split_url(const std::string& endpoint) {
  const std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    throw UsageError("endpoint must be an http(s) URL: " + endpoint);
  }
  const std::size_t path_start = endpoint.find('/', scheme + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

njson parse_response(const std::string& endpoint, const std::string& body) {
  try {
    return njson::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError("malformed response from " + endpoint + ": " + e.what());
  }
}

}  // namespace

std::string remote_model_call(const std::string& endpoint, const std::string& request_json) {
  const SplitUrl url = split_url(endpoint);
  httplib::Client client(url.host_port);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(60, 0);

  httplib::Result res = client.Post(url.path, request_json, "application/json");
  if (!res) {
    throw BackendUnavailableError("cannot reach " + endpoint + ": " +
                                  httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw BackendUnavailableError("endpoint " + endpoint + " answered HTTP " +
                                  std::to_string(res->status));
  }
  return res->body;
}

RemoteVictim::RemoteVictim(std::string endpoint, int num_classes)
    : endpoint_(std::move(endpoint)), num_classes_(num_classes) {}

std::vector<ProbabilityDistribution> RemoteVictim::predict(const std::vector<std::string>& texts) {
  const njson request{{"texts", texts}};
  const njson response = parse_response(endpoint_, remote_model_call(endpoint_, request.dump()));
  if (!response.is_object() || !response.contains("probs") || !response.at("probs").is_array()) {
    throw ProtocolError("predict response must carry a probs array");
  }
  const njson& probs = response.at("probs");
  if (probs.size() != texts.size()) {
    throw ProtocolError("predict returned " + std::to_string(probs.size()) + " rows for " +
                        std::to_string(texts.size()) + " texts");
  }
  std::vector<ProbabilityDistribution> out;
  out.reserve(texts.size());
  for (const njson& row : probs) {
    if (!row.is_array() || row.empty()) throw ProtocolError("predict row is not an array");
    ProbabilityDistribution dist;
    for (const njson& p : row) dist.probs.push_back(p.get<double>());
    if (!dist.valid()) throw ProtocolError("predict row is not a probability distribution");
    out.push_back(std::move(dist));
  }
  return out;
}

RemoteProposer::RemoteProposer(std::string endpoint) : endpoint_(std::move(endpoint)) {}

std::vector<ScoredToken> RemoteProposer::propose(const std::string& masked_text, int k) {
  const std::size_t first = masked_text.find(kMaskSentinel);
  if (first == std::string::npos ||
      masked_text.find(kMaskSentinel, first + 1) != std::string::npos) {
    throw ProtocolError("propose request must contain exactly one mask sentinel");
  }
  const njson request{{"text", masked_text}, {"k", k}};
  const njson response = parse_response(endpoint_, remote_model_call(endpoint_, request.dump()));
  if (!response.is_object() || !response.contains("tokens") || !response.at("tokens").is_array()) {
    throw ProtocolError("propose response must carry a tokens array");
  }
  std::vector<ScoredToken> out;
  for (const njson& item : response.at("tokens")) {
    if (!item.contains("token") || !item.contains("score")) {
      throw ProtocolError("propose entries need token and score fields");
    }
    ScoredToken entry{item.at("token").get<std::string>(), item.at("score").get<double>()};
    if (entry.token.find(kMaskSentinel) != std::string::npos) {
      throw ProtocolError("proposed token contains the mask sentinel");
    }
    out.push_back(std::move(entry));
  }
  if (static_cast<int>(out.size()) > k) out.resize(static_cast<std::size_t>(k));
  std::stable_sort(out.begin(), out.end(),
                   [](const ScoredToken& a, const ScoredToken& b) { return a.score > b.score; });
  return out;
}

RemoteScorer::RemoteScorer(std::string endpoint) : endpoint_(std::move(endpoint)) {}

double RemoteScorer::similarity(const std::string& a, const std::string& b) {
  const njson request{{"a", a}, {"b", b}};
  const njson response = parse_response(endpoint_, remote_model_call(endpoint_, request.dump()));
  if (!response.is_object() || !response.contains("score")) {
    throw ProtocolError("similarity response must carry a score");
  }
  const double score = response.at("score").get<double>();
  if (score < -1.0 || score > 1.0) throw ProtocolError("similarity score outside [-1, 1]");
  return score;
}

RemoteRecognizer::RemoteRecognizer(std::string endpoint) : endpoint_(std::move(endpoint)) {}

std::vector<EntitySpan> RemoteRecognizer::recognize(const Document& doc) {
  const njson request{{"text", doc.text}};
  const njson response = parse_response(endpoint_, remote_model_call(endpoint_, request.dump()));
  if (!response.is_object() || !response.contains("spans") || !response.at("spans").is_array()) {
    throw ProtocolError("recognize response must carry a spans array");
  }

  std::vector<EntitySpan> spans;
  std::vector<bool> taken(doc.tokens.size(), false);
  for (const njson& item : response.at("spans")) {
    if (!item.contains("start_char") || !item.contains("end_char") || !item.contains("type") ||
        !item.contains("id")) {
      throw ProtocolError("recognize spans need start_char/end_char/type/id");
    }
    const int start_char = item.at("start_char").get<int>();
    const int end_char = item.at("end_char").get<int>();
    if (start_char < 0 || end_char <= start_char ||
        end_char > static_cast<int>(doc.text.size())) {
      throw ProtocolError("recognize span character offsets out of range");
    }
    const auto type = entity_type_from_string(item.at("type").get<std::string>());
    if (!type) throw ProtocolError("recognize span has unknown entity type");

    // tokens whose character range intersects the span
    int first = -1;
    int last = -1;
    for (const Token& t : doc.tokens) {
      if (t.char_end > start_char && t.char_start < end_char) {
        if (first < 0) first = t.index;
        last = t.index;
      }
    }
    if (first < 0) continue;  // span covers only whitespace; nothing to attack
    for (int i = first; i <= last; ++i) {
      if (taken[static_cast<std::size_t>(i)]) {
        throw ProtocolError("recognize spans overlap at token " + std::to_string(i));
      }
      taken[static_cast<std::size_t>(i)] = true;
    }

    EntitySpan span;
    span.start_token = first;
    span.end_token = last;
    span.entity_type = *type;
    span.ontology_id = item.at("id").get<std::string>();
    span.canonical_name = doc.text.substr(static_cast<std::size_t>(start_char),
                                          static_cast<std::size_t>(end_char - start_char));
    spans.push_back(std::move(span));
  }
  return spans;
}

}  // namespace bbaeg
