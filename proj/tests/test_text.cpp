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

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "bbaeg/errors.hpp"
#include "bbaeg/text.hpp"

using namespace bbaeg;

namespace {

// Random token soup for round-trip fuzzing: words, digits, punctuation.
std::string fuzz_text(std::mt19937_64& rng) {
  static const std::vector<std::string> kPieces = {
      "fever",  "chills", "Covid19", "21-year-old", "don't", "(",     ")",
      "fever.", "a",      "B12",     "...",         ",",     "19th",  "x",
      "HbA1c",  "50%",    "q.d.",    "patient",     "-",     "word,", "end!"};
  const int len = 1 + static_cast<int>(rng() % 12);
  std::string text;
  for (int i = 0; i < len; ++i) {
    if (!text.empty()) text += ' ';
    text += kPieces[rng() % kPieces.size()];
  }
  return text;
}

}  // namespace

TEST_SUITE("text") {
  TEST_CASE("tokenize splits on whitespace") {
    const Document doc = tokenize("clozapine induced nausea");
    REQUIRE(doc.size() == 3);
    CHECK(doc.surface(0) == "clozapine");
    CHECK(doc.surface(1) == "induced");
    CHECK(doc.surface(2) == "nausea");
  }

  TEST_CASE("internal hyphens stay inside one token") {
    const Document doc = tokenize("A 21-year-old patient developed rhabdomyolysis today");
    REQUIRE(doc.size() == 6);
    CHECK(doc.surface(1) == "21-year-old");
    CHECK(doc.tokens[1].has_digits);
    CHECK_FALSE(doc.tokens[1].is_punct);
  }

  TEST_CASE("trailing punctuation becomes its own token") {
    const Document doc = tokenize("fever.");
    REQUIRE(doc.size() == 2);
    CHECK(doc.surface(0) == "fever");
    CHECK(doc.surface(1) == ".");
    CHECK(doc.tokens[1].is_punct);
  }

  TEST_CASE("offsets are monotone and non-overlapping") {
    const Document doc = tokenize("  (fever),  and chills!  ");
    int last_end = 0;
    for (const Token& t : doc.tokens) {
      CHECK(t.char_start >= last_end);
      CHECK(t.char_end > t.char_start);
      CHECK(doc.text.substr(static_cast<std::size_t>(t.char_start),
                            static_cast<std::size_t>(t.char_end - t.char_start)) == t.surface);
      last_end = t.char_end;
    }
  }

  TEST_CASE("empty input is rejected") {
    CHECK_THROWS_AS(tokenize(""), EmptyInputError);
    CHECK_THROWS_AS(tokenize("   \t\n"), EmptyInputError);
  }

  TEST_CASE("detokenize reattaches punctuation") {
    CHECK(detokenize_surfaces({"fever", "."}) == "fever.");
    CHECK(detokenize_surfaces({"clozapine", "induced", "nausea"}) == "clozapine induced nausea");
    CHECK(detokenize_surfaces({"(", "fever", ")", ",", "chills"}) == "(fever), chills");
  }

  TEST_CASE("tokenize-detokenize round trip is a fixed point") {
    std::mt19937_64 rng(20260810);
    for (int i = 0; i < 100; ++i) {
      const std::string text = fuzz_text(rng);
      const std::string once = detokenize(tokenize(text));
      const std::string twice = detokenize(tokenize(once));
      CHECK(once == twice);
    }
  }

  TEST_CASE("replace_span swaps a multi-token span") {
    const Document doc = tokenize("challenge with clozapine in pulmonary eosinophilia ailment");
    const Document out = replace_span(doc, 4, 5, "Loeffler Syndrome");
    CHECK(out.size() == doc.size());
    CHECK(out.surface(4) == "Loeffler");
    CHECK(out.surface(5) == "Syndrome");
    CHECK(out.surface(6) == "ailment");
    // the input document is untouched
    CHECK(doc.surface(4) == "pulmonary");
  }

  TEST_CASE("replace_span with the same surface is the identity") {
    const Document doc = tokenize("fever and chills");
    const Document out = replace_span(doc, 1, 1, "and");
    CHECK(out == doc);
  }

  TEST_CASE("replace_span can grow the document") {
    const Document doc = tokenize("rash on arm");
    const Document out = replace_span(doc, 0, 0, "red itchy skin");
    CHECK(out.size() == doc.size() + 2);
    CHECK(out.surface(0) == "red");
    CHECK(out.surface(3) == "on");
  }

  TEST_CASE("replace_span validates indices") {
    const Document doc = tokenize("a b c");
    CHECK_THROWS_AS(replace_span(doc, -1, 0, "x"), SpanError);
    CHECK_THROWS_AS(replace_span(doc, 0, 3, "x"), SpanError);
    CHECK_THROWS_AS(replace_span(doc, 2, 1, "x"), SpanError);
  }

  TEST_CASE("untouched tokens are position-checkable after replace_span") {
    const Document doc = tokenize("one two three four");
    const Document out = replace_span(doc, 1, 1, "TWO");
    CHECK(out.surface(0) == doc.surface(0));
    CHECK(out.surface(2) == doc.surface(2));
    CHECK(out.surface(3) == doc.surface(3));
  }

  TEST_CASE("perturbed_fraction counts original positions via the edit log") {
    const Document doc = tokenize("clozapine induced nausea");
    PerturbationLog log(doc);

    SUBCASE("identical documents") {
      CHECK(perturbed_fraction(doc, log.to_perturbed()) == doctest::Approx(0.0));
    }

    SUBCASE("one of three tokens replaced") {
      log.apply(2, 2, "emesis", Sieve::sieve1_ne);
      CHECK(perturbed_fraction(doc, log.to_perturbed()) == doctest::Approx(1.0 / 3.0));
    }
  }

  TEST_CASE("a replaced k-token span counts k positions") {
    const Document doc = tokenize("one two three four five pulmonary eosinophilia eight nine ten");
    PerturbationLog log(doc);
    log.apply(5, 6, "Loeffler Syndrome", Sieve::sieve1_ne);
    CHECK(perturbed_fraction(doc, log.to_perturbed()) == doctest::Approx(0.2));
  }

  TEST_CASE("perturbation log tracks span drift through edits") {
    const Document doc = tokenize("alpha beta gamma delta");
    PerturbationLog log(doc);
    log.apply(0, 0, "first second third", Sieve::sieve1_mlm);  // grows by 2
    const auto [s, e] = log.current_span(2, 2);                // original "gamma"
    CHECK(s == 4);
    CHECK(e == 4);
    CHECK(log.current().surface(s) == "gamma");
    log.apply(s, e, "GAMMA", Sieve::sieve2_n1);
    CHECK(log.current().surface(4) == "GAMMA");
    CHECK(perturbed_fraction(doc, log.to_perturbed()) == doctest::Approx(0.5));
  }

  TEST_CASE("provenance marks replaced tokens and only those") {
    const Document doc = tokenize("alpha beta gamma");
    PerturbationLog log(doc);
    log.apply(1, 1, "BETA NEW", Sieve::sieve2_n2);
    const PerturbedDocument p = log.to_perturbed();
    REQUIRE(p.provenance.size() == 4);
    CHECK_FALSE(p.provenance[0].has_value());
    CHECK(p.provenance[1] == Sieve::sieve2_n2);
    CHECK(p.provenance[2] == Sieve::sieve2_n2);
    CHECK_FALSE(p.provenance[3].has_value());

    // non-original provenance exists iff the document changed
    bool any = false;
    for (const auto& prov : p.provenance) any = any || prov.has_value();
    CHECK(any == log.dirty());
  }

  TEST_CASE("no-op edits are rejected") {
    const Document doc = tokenize("alpha beta");
    PerturbationLog log(doc);
    CHECK_THROWS_AS(log.apply(0, 0, "alpha", Sieve::sieve2_n1), SpanError);
  }
}
