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

#ifndef PROSODY_INGEST_H_
#define PROSODY_INGEST_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "prosody/corpus.h"
#include "prosody/normalize.h"

namespace prosody {

// One line of forced-aligner output.
struct AlignmentRecord {
  std::string word;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string speaker_id;
};

// Joins aligner timestamps with the punctuation-proxy segmentation of the
// same transcript. Words take their boundary flag from ProtoIU starts and
// their prototype from the ProtoIU suggestion; words of unlabeled ProtoIUs
// are marked for review.
//
// Throws InputError on word-count or word-text mismatch (naming the first
// divergent index), decreasing start times, or a speaker change inside a
// ProtoIU.
Source IngestAlignment(const std::vector<AlignmentRecord>& records,
                       const std::vector<ProtoIU>& proto, const std::string& source_name,
                       const std::string& audio);

// Wraps ingested sources into a corpus whose registry lists every speaker.
Corpus MakeCorpus(std::vector<Source> sources, Provenance provenance);

// Table-1 style statistics of a fully labeled corpus.
struct StatsReport {
  std::map<std::string, std::size_t> ius_per_speaker;
  std::size_t prototype_counts[kNumPrototypes] = {};  // per IU
  std::size_t emphasis_counts[3] = {};                // per word, by EmphasisLevel
  std::size_t total_ius = 0;
  std::size_t total_words = 0;

  double PrototypeFraction(Prototype p) const;
  double EmphasisFraction(EmphasisLevel e) const;
  // Aligned text in the layout of the annotated-data table.
  std::string Render() const;
};

// Throws InputError listing the (source, word) indices of unlabeled words.
StatsReport AnnotationStats(const Corpus& corpus);

}  // namespace prosody

#endif  // PROSODY_INGEST_H_
