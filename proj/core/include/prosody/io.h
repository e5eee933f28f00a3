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

#ifndef PROSODY_IO_H_
#define PROSODY_IO_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prosody/codec.h"
#include "prosody/corpus.h"
#include "prosody/ingest.h"
#include "prosody/metrics.h"
#include "prosody/normalize.h"
#include "prosody/turns.h"

namespace prosody {

// Schema versions of every file format, printed by `--version`.
struct SchemaVersion {
  const char* format;
  int version;
};
inline constexpr SchemaVersion kSchemas[] = {
    {"tokens", 1},    {"proto_ius", 1},   {"alignment", 1},       {"corpus", 1},      {"corpus_manifest", 1}, {"turns", 1},
    {"vocabulary", 1}, {"sequences", 1},  {"predictions", 1},     {"metrics", 1},
    {"features", 1},  {"pitch_curves", 1}, {"checkpoint", 1},     {"run_manifest", 1},
};

// Reads every non-empty line of a JSON-lines stream. Throws InputError
// naming the line on a parse failure.
std::vector<nlohmann::json> ReadJsonLines(std::istream& in, const std::string& what);

// {"kind": "word"|"punct", "text", "speaker_id"} per line.
void WriteTextTokens(std::ostream& out, std::span<const TextToken> tokens);
std::vector<TextToken> ReadTextTokens(std::istream& in);

// {"words": [...], "speaker_id", "suggested_prototype": name|null, "short"}
// per line.
void WriteProtoIus(std::ostream& out, std::span<const ProtoIU> proto);
std::vector<ProtoIU> ReadProtoIus(std::istream& in);

// {"word", "start_s", "end_s", "speaker_id"} per line.
std::vector<AlignmentRecord> ReadAlignment(std::istream& in);
void WriteAlignment(std::ostream& out, std::span<const AlignmentRecord> records);

// One line per word:
//   {"source","audio","iu","text","start_s","end_s","speaker_id",
//    "boundary","prototype","emphasis","needs_review"}
// Label fields are null when absent. Emphasis is the annotation level.
void WriteCorpusJsonl(std::ostream& out, const Corpus& corpus);
// Sources keep first-appearance order; IUs follow the "iu" index. The
// speaker registry is the set of speakers seen.
Corpus ReadCorpusJsonl(std::istream& in);

nlohmann::json CorpusManifest(const Corpus& corpus, const std::string& normalization_checksum);
// Applies a manifest's registry and provenance to a corpus read from JSONL.
void ApplyCorpusManifest(const nlohmann::json& manifest, Corpus& corpus);

// One line per turn:
//   {"turn","source","audio_ref","iu_begin","iu_end","duration_s",
//    "token_count","speakers","oversize","below_min_ius","checks":{...}}
// iu_end is exclusive.
void WriteTurnManifest(std::ostream& out, const Corpus& corpus, std::span<const Turn> turns,
                       const TurnParams& params);
// Rebuilds turns from a manifest against the corpus it was compiled from.
std::vector<Turn> ReadTurnManifest(std::istream& in, const Corpus& corpus);

// {"scheme","task","arity","tokens":[...],"label_tokens":[...]}.
nlohmann::json VocabularyManifest(const Codec& codec);
// Rebuilds a codec from a manifest; throws InputError when the rebuilt
// vocabulary is not bit-identical to the stored one.
Codec CodecFromManifest(const nlohmann::json& manifest);

// {"turn", "tokens": [ids]} per line.
void WriteSequences(std::ostream& out, std::span<const InterleavedSequence> sequences);
std::vector<std::vector<TokenId>> ReadSequences(std::istream& in);

// One line per turn:
//   {"turn","source","words":[{"index","text","speaker_id","gold":{...},"pred":{...}}]}
// Label objects carry "boundary", "prototype", "emphasis" when present.
struct TurnPrediction {
  std::size_t turn = 0;
  std::string source;
  std::vector<std::string> words;
  std::vector<std::string> speakers;
  std::vector<ProsodicLabel> gold;
  std::vector<ProsodicLabel> pred;
};
void WritePredictions(std::ostream& out, std::span<const TurnPrediction> predictions);
std::vector<TurnPrediction> ReadPredictions(std::istream& in);
std::vector<LabeledPair> ToPairs(std::span<const TurnPrediction> predictions);

nlohmann::json LabelJson(const ProsodicLabel& label);
ProsodicLabel LabelFromJson(const nlohmann::json& j);

// Every score of a report plus free-form provenance (model id, scheme,
// dataset checksum).
nlohmann::json MetricsJson(const MetricsReport& report,
                           const std::map<std::string, std::string>& provenance);

// FNV-1a 64-bit of a byte string, as 16 hex digits.
std::string Fnv1aHex(std::string_view bytes);
// Checksum of a file's contents; throws InputError when unreadable.
std::string FileChecksum(const std::string& path);

}  // namespace prosody

#endif  // PROSODY_IO_H_
