/*
 * Copyright 2026 The Prosody Tagger Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "prosody/labels.h"

namespace prosody {

std::string_view ToString(Boundary b) { return b == Boundary::kBegin ? "B" : "I"; }

std::string_view ToString(Prototype p) {
  switch (p) {
    case Prototype::kContinuation:
      return "continuation";
    case Prototype::kConclusion:
      return "conclusion";
    case Prototype::kRequestForResponse:
      return "request_for_response";
  }
  return "?";
}

std::string_view ToString(Emphasis e) {
  return e == Emphasis::kEmphasized ? "emphasized" : "none";
}

std::string_view ToString(EmphasisLevel e) {
  switch (e) {
    case EmphasisLevel::kPrimary:
      return "primary";
    case EmphasisLevel::kSecondary:
      return "secondary";
    case EmphasisLevel::kNone:
      return "none";
  }
  return "?";
}

std::string ToString(const LabelCombination& c) {
  std::string out = "(";
  out += ToString(c.boundary);
  out += ", ";
  out += ToString(c.prototype);
  out += ", ";
  out += ToString(c.emphasis);
  out += ")";
  return out;
}

std::optional<Boundary> ParseBoundary(std::string_view s) {
  if (s == "B") return Boundary::kBegin;
  if (s == "I") return Boundary::kInside;
  return std::nullopt;
}

std::optional<Prototype> ParsePrototype(std::string_view s) {
  if (s == "continuation") return Prototype::kContinuation;
  if (s == "conclusion") return Prototype::kConclusion;
  if (s == "request_for_response") return Prototype::kRequestForResponse;
  return std::nullopt;
}

std::optional<Emphasis> ParseEmphasis(std::string_view s) {
  if (s == "emphasized") return Emphasis::kEmphasized;
  if (s == "none") return Emphasis::kNone;
  return std::nullopt;
}

std::optional<EmphasisLevel> ParseEmphasisLevel(std::string_view s) {
  if (s == "primary") return EmphasisLevel::kPrimary;
  if (s == "secondary") return EmphasisLevel::kSecondary;
  if (s == "none") return EmphasisLevel::kNone;
  return std::nullopt;
}

}  // namespace prosody
