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

#include "prosody/normalize.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "prosody/error.h"

namespace prosody {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsWordChar(unsigned char c) {
  // Bytes >= 0x80 belong to UTF-8 sequences and are kept as letters.
  return std::isalnum(c) != 0 || c >= 0x80;
}

bool IsDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c) != 0; });
}

// "1,234,567" -> "1234567"; empty when the grouping is malformed.
std::string StripThousands(std::string_view s) {
  if (s.find(',') == std::string_view::npos) return std::string(s);
  std::string out;
  std::size_t group = 0;
  bool first = true;
  std::size_t first_len = 0;
  for (char c : s) {
    if (c == ',') {
      if ((first && (first_len == 0 || first_len > 3)) || (!first && group != 3)) return {};
      first = false;
      group = 0;
      continue;
    }
    out += c;
    if (first) ++first_len; else ++group;
  }
  if (!first && group != 3) return {};
  return out;
}

std::vector<std::string> SplitSpaces(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

constexpr std::array<const char*, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",    "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",  "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
constexpr std::array<const char*, 10> kTens = {"",      "",      "twenty",  "thirty", "forty",
                                               "fifty", "sixty", "seventy", "eighty", "ninety"};

void BelowThousand(int n, std::vector<std::string>& out) {
  if (n >= 100) {
    out.emplace_back(kOnes[n / 100]);
    out.emplace_back("hundred");
    n %= 100;
    if (n == 0) return;
  }
  if (n >= 20) {
    out.emplace_back(kTens[n / 10]);
    if (n % 10) out.emplace_back(kOnes[n % 10]);
  } else {
    out.emplace_back(kOnes[n]);
  }
}

class Normalizer {
 public:
  Normalizer(const ExpansionTable& table, NormalizeResult& result)
      : table_(table), result_(result) {}

  void Chunk(std::string_view chunk, const std::string& speaker) {
    speaker_ = &speaker;
    // "--" anywhere in a chunk is a juncture.
    std::size_t pos = 0;
    bool first = true;
    while (true) {
      std::size_t dash = chunk.find("--", pos);
      std::string_view piece = chunk.substr(pos, dash == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : dash - pos);
      if (!first) Punct(",");
      first = false;
      Piece(piece);
      if (dash == std::string_view::npos) break;
      pos = dash + 2;
      while (pos < chunk.size() && chunk[pos] == '-') ++pos;
    }
  }

 private:
  void Word(std::string text) {
    result_.tokens.push_back(TextToken{TextToken::Kind::kWord, std::move(text), *speaker_});
  }

  void Punct(const char* mark) {
    result_.tokens.push_back(TextToken{TextToken::Kind::kPunct, mark, *speaker_});
  }

  void Warn(std::string message) { result_.warnings.push_back(std::move(message)); }

  void Expansion(const std::string& replacement) {
    for (auto& w : SplitSpaces(Lower(replacement))) Word(std::move(w));
  }

  void Piece(std::string_view piece) {
    if (piece.empty()) return;
    if (auto hit = table_.Lookup(piece)) {
      Expansion(*hit);
      return;
    }
    std::size_t b = 0;
    while (b < piece.size() && !IsWordChar(static_cast<unsigned char>(piece[b]))) ++b;
    std::size_t e = piece.size();
    while (e > b && !IsWordChar(static_cast<unsigned char>(piece[e - 1]))) --e;

    for (std::size_t i = 0; i < b; ++i) {
      if (b == piece.size()) break;  // all-punctuation piece: handled as trailing
      Warn("dropped leading '" + std::string(1, piece[i]) + "' in '" + std::string(piece) + "'");
    }
    std::string_view core = piece.substr(b, e - b);
    std::string_view trailing = b == piece.size() ? piece : piece.substr(e);

    if (!core.empty()) {
      // Abbreviations keep their period: "Dr." in "Dr.,".
      if (!trailing.empty() && trailing.front() == '.') {
        if (auto hit = table_.Lookup(std::string(core) + ".")) {
          Expansion(*hit);
          trailing.remove_prefix(1);
          Trailing(trailing, piece);
          return;
        }
      }
      if (auto hit = table_.Lookup(core)) {
        Expansion(*hit);
      } else {
        Core(core);
      }
    }
    Trailing(trailing, piece);
  }

  void Core(std::string_view core) {
    std::string digits = StripThousands(core);
    if (IsDigits(digits) && table_.expand_numbers) {
      std::optional<std::string> words;
      if (digits.size() <= 7) words = NumberToWords(std::stoll(digits));
      if (words) {
        Expansion(*words);
        return;
      }
      Warn("no expansion rule for '" + std::string(core) + "'");
      Word(Lower(core));
      return;
    }
    if (std::any_of(core.begin(), core.end(),
                    [](unsigned char c) { return std::isdigit(c) != 0; })) {
      Warn("no expansion rule for '" + std::string(core) + "'");
    }
    Word(Lower(core));
  }

  void Trailing(std::string_view trailing, std::string_view piece) {
    char last = 0;
    for (char c : trailing) {
      const char* mark = nullptr;
      switch (c) {
        case ',':
        case ';':
        case ':':
          mark = ",";
          break;
        case '.':
        case '!':
          mark = ".";
          break;
        case '?':
          mark = "?";
          break;
        default:
          Warn("dropped '" + std::string(1, c) + "' in '" + std::string(piece) + "'");
          continue;
      }
      // Runs of one mark ("...", "!!") collapse to a single event.
      if (mark[0] == last) continue;
      last = mark[0];
      Punct(mark);
    }
  }

  const ExpansionTable& table_;
  NormalizeResult& result_;
  const std::string* speaker_ = nullptr;
};

}  // namespace

ExpansionTable::ExpansionTable(std::vector<std::pair<std::string, std::string>> entries) {
  for (auto& [pattern, replacement] : entries) {
    entries_.emplace_back(Lower(pattern), std::move(replacement));
  }
}

ExpansionTable ExpansionTable::Default() {
  // Sentence-final ambiguities ("No.", "in.") are deliberately absent.
  return ExpansionTable({
      {"dr.", "doctor"},        {"mr.", "mister"},         {"mrs.", "missus"},
      {"ms.", "miss"},          {"prof.", "professor"},    {"sr.", "senior"},
      {"jr.", "junior"},        {"st.", "saint"},          {"mt.", "mount"},
      {"ft.", "fort"},          {"gen.", "general"},       {"gov.", "governor"},
      {"sen.", "senator"},      {"rep.", "representative"}, {"rev.", "reverend"},
      {"capt.", "captain"},     {"col.", "colonel"},       {"lt.", "lieutenant"},
      {"sgt.", "sergeant"},     {"cpl.", "corporal"},      {"pres.", "president"},
      {"supt.", "superintendent"}, {"ave.", "avenue"},     {"blvd.", "boulevard"},
      {"rd.", "road"},          {"hwy.", "highway"},       {"apt.", "apartment"},
      {"dept.", "department"},  {"univ.", "university"},   {"assn.", "association"},
      {"corp.", "corporation"}, {"inc.", "incorporated"},  {"ltd.", "limited"},
      {"co.", "company"},       {"bros.", "brothers"},     {"vs.", "versus"},
      {"etc.", "et cetera"},    {"e.g.", "for example"},   {"i.e.", "that is"},
      {"approx.", "approximately"}, {"jan.", "january"},   {"feb.", "february"},
      {"aug.", "august"},       {"sept.", "september"},    {"oct.", "october"},
      {"nov.", "november"},     {"dec.", "december"},      {"mon.", "monday"},
      {"tues.", "tuesday"},     {"wed.", "wednesday"},     {"thurs.", "thursday"},
      {"fri.", "friday"},       {"a.m.", "a m"},           {"p.m.", "p m"},
      {"tv", "t v"},            {"&", "and"},              {"%", "percent"},
  });
}

ExpansionTable ExpansionTable::ParseTsv(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw InputError("corpus_ingest",
                       "expansion table line " + std::to_string(line_no) + " is not 'pattern<TAB>replacement'");
    }
    entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return ExpansionTable(std::move(entries));
}

std::optional<std::string> ExpansionTable::Lookup(std::string_view token) const {
  std::string key = Lower(token);
  for (const auto& [pattern, replacement] : entries_) {
    if (pattern == key) return replacement;
  }
  return std::nullopt;
}

std::string ExpansionTable::Checksum() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [p, r] : entries_) {
    mix(p);
    mix("\t");
    mix(r);
    mix("\n");
  }
  mix(expand_numbers ? "numbers:on" : "numbers:off");
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::string> NumberToWords(long long value) {
  if (value < 0 || value > 1'000'000) return std::nullopt;
  std::vector<std::string> words;
  if (value == 1'000'000) {
    words = {"one", "million"};
  } else {
    int thousands = static_cast<int>(value / 1000);
    int rest = static_cast<int>(value % 1000);
    if (thousands > 0) {
      BelowThousand(thousands, words);
      words.emplace_back("thousand");
    }
    if (rest > 0 || thousands == 0) BelowThousand(rest, words);
  }
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

RawTranscript ParseTranscript(std::string_view text) {
  RawTranscript raw;
  raw.text = std::string(text);
  std::string speaker = "unknown";
  std::size_t span_begin = 0;
  std::size_t pos = 0;
  auto close = [&](std::size_t end) {
    if (end > span_begin) raw.speakers.push_back(SpeakerSpan{speaker, span_begin, end});
  };
  while ((pos = text.find(">>", pos)) != std::string_view::npos) {
    std::size_t colon = text.find(':', pos + 2);
    std::size_t newline = text.find('\n', pos + 2);
    if (colon == std::string_view::npos || (newline != std::string_view::npos && newline < colon)) {
      pos += 2;
      continue;
    }
    std::string id(text.substr(pos + 2, colon - pos - 2));
    while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.pop_back();
    while (!id.empty() && std::isspace(static_cast<unsigned char>(id.front()))) id.erase(0, 1);
    if (id.empty() || id.find_first_of(" \t") != std::string::npos) {
      pos += 2;
      continue;
    }
    close(pos);
    speaker = id;
    span_begin = colon + 1;
    pos = colon + 1;
  }
  close(text.size());
  // Drop whitespace-only spans so spans cover exactly the non-whitespace text.
  std::erase_if(raw.speakers, [&](const SpeakerSpan& s) {
    return std::all_of(raw.text.begin() + static_cast<std::ptrdiff_t>(s.begin),
                       raw.text.begin() + static_cast<std::ptrdiff_t>(s.end),
                       [](unsigned char c) { return std::isspace(c) != 0; });
  });
  return raw;
}

NormalizeResult NormalizeText(const RawTranscript& raw, const ExpansionTable& table) {
  NormalizeResult result;
  Normalizer normalizer(table, result);
  std::vector<SpeakerSpan> spans = raw.speakers;
  if (spans.empty()) spans.push_back(SpeakerSpan{"unknown", 0, raw.text.size()});
  for (const SpeakerSpan& span : spans) {
    std::string_view body = std::string_view(raw.text).substr(span.begin, span.end - span.begin);
    std::size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
      std::size_t j = i;
      while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
      if (j > i) normalizer.Chunk(body.substr(i, j - i), span.speaker_id);
      i = j;
    }
  }
  return result;
}

std::string RenderTokens(const std::vector<TextToken>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

SegmentResult ProxySegment(const std::vector<TextToken>& tokens) {
  SegmentResult result;
  ProtoIU current;
  auto flush = [&](std::optional<Prototype> prototype) {
    current.suggested_prototype = prototype;
    current.short_flag = current.words.size() <= kShortProtoIuWords;
    result.proto_ius.push_back(std::move(current));
    current = ProtoIU{};
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const TextToken& t = tokens[i];
    if (t.is_word()) {
      if (!current.words.empty() && t.speaker_id != current.speaker_id) {
        result.warnings.push_back("speaker change without punctuation before token " +
                                  std::to_string(i) + "; run left unlabeled");
        flush(std::nullopt);
      }
      if (current.words.empty()) current.speaker_id = t.speaker_id;
      current.words.push_back(t.text);
      continue;
    }
    if (current.words.empty()) {
      result.warnings.push_back("empty run before '" + t.text + "' at token " +
                                std::to_string(i) + " skipped");
      continue;
    }
    std::optional<Prototype> prototype;
    if (t.text == ",") prototype = Prototype::kContinuation;
    else if (t.text == ".") prototype = Prototype::kConclusion;
    else if (t.text == "?") prototype = Prototype::kRequestForResponse;
    else throw InputError("corpus_ingest", "unexpected punctuation event '" + t.text + "'");
    flush(prototype);
  }
  if (!current.words.empty()) flush(std::nullopt);
  return result;
}

}  // namespace prosody
