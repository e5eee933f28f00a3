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

#include "prosody/ingest.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "prosody/error.h"

namespace prosody {

Source IngestAlignment(const std::vector<AlignmentRecord>& records,
                       const std::vector<ProtoIU>& proto, const std::string& source_name,
                       const std::string& audio) {
  std::size_t proto_words = 0;
  for (const auto& p : proto) proto_words += p.words.size();

  Source src{source_name, audio, {}};
  std::size_t index = 0;
  for (const ProtoIU& p : proto) {
    IntonationUnit iu;
    iu.prototype = p.suggested_prototype;
    for (std::size_t k = 0; k < p.words.size(); ++k, ++index) {
      if (index >= records.size()) {
        throw InputError("corpus_ingest", "word mismatch at index " + std::to_string(index) +
                                              ": alignment has " + std::to_string(records.size()) +
                                              " records, transcript has " +
                                              std::to_string(proto_words) + " words");
      }
      const AlignmentRecord& r = records[index];
      if (r.word != p.words[k]) {
        throw InputError("corpus_ingest", "word mismatch at index " + std::to_string(index) +
                                              ": alignment '" + r.word + "' vs transcript '" +
                                              p.words[k] + "'");
      }
      if (r.end_s <= r.start_s + kTimeEpsilon) {
        throw InputError("corpus_ingest",
                         "non-positive duration at index " + std::to_string(index));
      }
      if (index > 0 && r.start_s < records[index - 1].start_s - kTimeEpsilon) {
        throw InputError("corpus_ingest",
                         "start times not monotone at index " + std::to_string(index));
      }
      if (k == 0) {
        iu.speaker_id = r.speaker_id;
      } else if (r.speaker_id != iu.speaker_id) {
        throw InputError("corpus_ingest",
                         "speaker change inside proto-IU at index " + std::to_string(index));
      }
      Word w;
      w.text = r.word;
      w.start_s = r.start_s;
      w.end_s = r.end_s;
      w.speaker_id = r.speaker_id;
      w.labels.boundary = k == 0 ? Boundary::kBegin : Boundary::kInside;
      w.labels.prototype = p.suggested_prototype;
      w.needs_review = !p.suggested_prototype.has_value();
      iu.words.push_back(std::move(w));
    }
    if (!iu.words.empty()) src.ius.push_back(std::move(iu));
  }
  if (index != records.size()) {
    throw InputError("corpus_ingest", "word mismatch at index " + std::to_string(index) +
                                          ": alignment has " + std::to_string(records.size()) +
                                          " records, transcript has " +
                                          std::to_string(proto_words) + " words");
  }
  return src;
}

Corpus MakeCorpus(std::vector<Source> sources, Provenance provenance) {
  Corpus corpus;
  corpus.provenance = std::move(provenance);
  for (const auto& src : sources) {
    for (const auto& iu : src.ius) {
      corpus.speakers.insert(iu.speaker_id);
      for (const auto& w : iu.words) corpus.speakers.insert(w.speaker_id);
    }
  }
  corpus.sources = std::move(sources);
  return corpus;
}

double StatsReport::PrototypeFraction(Prototype p) const {
  return total_ius == 0 ? 0.0
                        : static_cast<double>(prototype_counts[static_cast<int>(p)]) /
                              static_cast<double>(total_ius);
}

double StatsReport::EmphasisFraction(EmphasisLevel e) const {
  return total_words == 0 ? 0.0
                          : static_cast<double>(emphasis_counts[static_cast<int>(e)]) /
                                static_cast<double>(total_words);
}

namespace {

std::string Thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  int count = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (count > 0 && count % 3 == 0) out.insert(out.begin(), ',');
    out.insert(out.begin(), *it);
    ++count;
  }
  return out;
}

std::string Cell(std::size_t n, std::size_t total) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), " (%.2f%%)",
                total == 0 ? 0.0 : 100.0 * static_cast<double>(n) / static_cast<double>(total));
  return Thousands(n) + buf;
}

void Row(std::ostringstream& out, const std::string& name, const std::string& value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-40s %s\n", name.c_str(), value.c_str());
  out << buf;
}

}  // namespace

std::string StatsReport::Render() const {
  std::ostringstream out;
  out << "(a) IUs per speaker\n";
  Row(out, "Speaker", "Number (Fraction)");
  for (const auto& [speaker, n] : ius_per_speaker) Row(out, speaker, Cell(n, total_ius));
  Row(out, "Total", Thousands(total_ius));
  out << "(b) Prosodic prototypes\n";
  Row(out, "Prototype", "Number (Fraction)");
  Row(out, "Continuation (comma)", Cell(prototype_counts[0], total_ius));
  Row(out, "Conclusion (period)", Cell(prototype_counts[1], total_ius));
  Row(out, "Request for response (question mark)", Cell(prototype_counts[2], total_ius));
  Row(out, "Total", Thousands(total_ius));
  out << "(c) Emphasis tags\n";
  Row(out, "Emphasis", "Number (Fraction)");
  Row(out, "Primary", Cell(emphasis_counts[0], total_words));
  Row(out, "Secondary", Cell(emphasis_counts[1], total_words));
  Row(out, "Non-emphasized words", Cell(emphasis_counts[2], total_words));
  Row(out, "Total", Thousands(total_words));
  return out.str();
}

StatsReport AnnotationStats(const Corpus& corpus) {
  std::vector<std::string> unlabeled;
  StatsReport report;
  for (const Source& src : corpus.sources) {
    std::size_t word_index = 0;
    for (const IntonationUnit& iu : src.ius) {
      for (const Word& w : iu.words) {
        if (!w.Combo()) unlabeled.push_back(src.name + ":" + std::to_string(word_index));
        ++word_index;
      }
    }
  }
  if (!unlabeled.empty()) {
    std::string list;
    for (std::size_t i = 0; i < unlabeled.size() && i < 20; ++i) {
      if (i) list += ", ";
      list += unlabeled[i];
    }
    if (unlabeled.size() > 20) list += ", ...";
    throw InputError("corpus_ingest", std::to_string(unlabeled.size()) +
                                          " unlabeled words: " + list);
  }
  for (const Source& src : corpus.sources) {
    for (const IntonationUnit& iu : src.ius) {
      ++report.total_ius;
      ++report.ius_per_speaker[iu.speaker_id];
      Prototype p = iu.prototype.value_or(*iu.words.front().labels.prototype);
      ++report.prototype_counts[static_cast<int>(p)];
      for (const Word& w : iu.words) {
        ++report.total_words;
        ++report.emphasis_counts[static_cast<int>(*w.labels.emphasis)];
      }
    }
  }
  return report;
}

}  // namespace prosody
