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

#include "prosody/io.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "prosody/error.h"

namespace prosody {

using nlohmann::json;

namespace {

template <typename T>
T Field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    throw InputError("corpus_ingest", where + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError("corpus_ingest", where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T, typename Parse>
std::optional<T> OptionalEnum(const json& j, const char* key, Parse parse, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw InputError("corpus_ingest", where + ": '" + key + "' is not a string");
  auto v = parse(it->get<std::string>());
  if (!v) {
    throw InputError("corpus_ingest",
                     where + ": unknown " + key + " '" + it->get<std::string>() + "'");
  }
  return v;
}

template <typename T>
json EnumOrNull(const std::optional<T>& v) {
  return v ? json(std::string(ToString(*v))) : json(nullptr);
}

}  // namespace

std::vector<json> ReadJsonLines(std::istream& in, const std::string& what) {
  std::vector<json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw InputError("corpus_ingest",
                       what + " line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void WriteTextTokens(std::ostream& out, std::span<const TextToken> tokens) {
  for (const auto& t : tokens) {
    out << json{{"kind", t.is_word() ? "word" : "punct"}, {"text", t.text},
                {"speaker_id", t.speaker_id}}
               .dump()
        << '\n';
  }
}

std::vector<TextToken> ReadTextTokens(std::istream& in) {
  std::vector<TextToken> out;
  std::size_t i = 0;
  for (const json& j : ReadJsonLines(in, "tokens")) {
    const std::string where = "token " + std::to_string(i++);
    const auto kind = Field<std::string>(j, "kind", where);
    if (kind != "word" && kind != "punct") {
      throw InputError("corpus_ingest", where + ": unknown kind '" + kind + "'");
    }
    out.push_back({kind == "word" ? TextToken::Kind::kWord : TextToken::Kind::kPunct,
                   Field<std::string>(j, "text", where), j.value("speaker_id", std::string())});
  }
  return out;
}

void WriteProtoIus(std::ostream& out, std::span<const ProtoIU> proto) {
  for (const auto& p : proto) {
    out << json{{"words", p.words},
                {"speaker_id", p.speaker_id},
                {"suggested_prototype", EnumOrNull(p.suggested_prototype)},
                {"short", p.short_flag}}
               .dump()
        << '\n';
  }
}

std::vector<ProtoIU> ReadProtoIus(std::istream& in) {
  std::vector<ProtoIU> out;
  std::size_t i = 0;
  for (const json& j : ReadJsonLines(in, "proto-IUs")) {
    const std::string where = "proto-IU " + std::to_string(i++);
    ProtoIU p;
    p.words = Field<std::vector<std::string>>(j, "words", where);
    p.speaker_id = j.value("speaker_id", std::string());
    p.suggested_prototype =
        OptionalEnum<Prototype>(j, "suggested_prototype", ParsePrototype, where);
    p.short_flag = p.words.size() <= kShortProtoIuWords;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<AlignmentRecord> ReadAlignment(std::istream& in) {
  std::vector<AlignmentRecord> out;
  std::size_t i = 0;
  for (const json& j : ReadJsonLines(in, "alignment")) {
    const std::string where = "alignment record " + std::to_string(i++);
    out.push_back({Field<std::string>(j, "word", where), Field<double>(j, "start_s", where),
                   Field<double>(j, "end_s", where), Field<std::string>(j, "speaker_id", where)});
  }
  return out;
}

void WriteAlignment(std::ostream& out, std::span<const AlignmentRecord> records) {
  for (const auto& r : records) {
    out << json{{"word", r.word}, {"start_s", r.start_s}, {"end_s", r.end_s},
                {"speaker_id", r.speaker_id}}
               .dump()
        << '\n';
  }
}

void WriteCorpusJsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& source : corpus.sources) {
    for (std::size_t u = 0; u < source.ius.size(); ++u) {
      for (const Word& w : source.ius[u].words) {
        json j = {{"source", source.name},
                  {"audio", source.audio},
                  {"iu", u},
                  {"text", w.text},
                  {"start_s", w.start_s},
                  {"end_s", w.end_s},
                  {"speaker_id", w.speaker_id},
                  {"boundary", EnumOrNull(w.labels.boundary)},
                  {"prototype", EnumOrNull(w.labels.prototype)},
                  {"emphasis", EnumOrNull(w.labels.emphasis)},
                  {"needs_review", w.needs_review}};
        out << j.dump() << '\n';
      }
    }
  }
}

Corpus ReadCorpusJsonl(std::istream& in) {
  Corpus corpus;
  std::map<std::string, std::size_t> index;
  std::size_t i = 0;
  for (const json& j : ReadJsonLines(in, "corpus")) {
    const std::string where = "corpus word " + std::to_string(i++);
    const auto name = Field<std::string>(j, "source", where);
    auto [it, inserted] = index.emplace(name, corpus.sources.size());
    if (inserted) {
      corpus.sources.push_back({name, j.value("audio", std::string()), {}});
    }
    Source& source = corpus.sources[it->second];
    const auto iu = Field<std::size_t>(j, "iu", where);
    if (iu + 1 < source.ius.size() || iu > source.ius.size()) {
      throw InputError("corpus_ingest", where + ": IU index " + std::to_string(iu) +
                                            " out of sequence in source '" + name + "'");
    }
    Word w;
    w.text = Field<std::string>(j, "text", where);
    w.start_s = Field<double>(j, "start_s", where);
    w.end_s = Field<double>(j, "end_s", where);
    w.speaker_id = Field<std::string>(j, "speaker_id", where);
    w.labels.boundary = OptionalEnum<Boundary>(j, "boundary", ParseBoundary, where);
    w.labels.prototype = OptionalEnum<Prototype>(j, "prototype", ParsePrototype, where);
    w.labels.emphasis = OptionalEnum<EmphasisLevel>(j, "emphasis", ParseEmphasisLevel, where);
    w.needs_review = j.value("needs_review", false);
    if (iu == source.ius.size()) {
      IntonationUnit unit;
      unit.speaker_id = w.speaker_id;
      unit.prototype = w.labels.prototype;
      source.ius.push_back(std::move(unit));
    }
    corpus.speakers.insert(w.speaker_id);
    source.ius[iu].words.push_back(std::move(w));
  }
  return corpus;
}

json CorpusManifest(const Corpus& corpus, const std::string& normalization_checksum) {
  json sources = json::array();
  for (const auto& s : corpus.sources) {
    sources.push_back({{"name", s.name}, {"audio", s.audio}, {"ius", s.ius.size()},
                       {"words", s.WordCount()}});
  }
  return {{"schema", "corpus_manifest"},
          {"version", 1},
          {"source_name", corpus.provenance.source_name},
          {"annotator_id", corpus.provenance.annotator_id},
          {"normalization_checksum", normalization_checksum},
          {"speakers", corpus.speakers},
          {"sources", sources}};
}

void ApplyCorpusManifest(const json& manifest, Corpus& corpus) {
  const std::string where = "corpus manifest";
  corpus.provenance.source_name = manifest.value("source_name", std::string());
  corpus.provenance.annotator_id = manifest.value("annotator_id", std::string());
  if (manifest.contains("speakers")) {
    corpus.speakers = Field<std::set<std::string>>(manifest, "speakers", where);
  }
}

void WriteTurnManifest(std::ostream& out, const Corpus& corpus, std::span<const Turn> turns,
                       const TurnParams& params) {
  std::map<std::string, std::string> audio;
  for (const auto& s : corpus.sources) audio[s.name] = s.audio;
  for (std::size_t t = 0; t < turns.size(); ++t) {
    const Turn& turn = turns[t];
    const TurnChecks c = CheckTurn(turn, params);
    char duration[32];
    std::snprintf(duration, sizeof(duration), "%.4f", turn.Duration());
    json j = {{"turn", t},
              {"source", turn.source},
              {"audio_ref", turn.AudioRef(audio[turn.source])},
              {"iu_begin", turn.first_iu},
              {"iu_end", turn.first_iu + turn.ius.size()},
              {"duration_s", std::stod(duration)},
              {"token_count", turn.token_count},
              {"speakers", turn.Speakers()},
              {"oversize", turn.oversize},
              {"below_min_ius", turn.below_min_ius},
              {"checks",
               {{"duration", c.duration},
                {"tokens", c.tokens},
                {"pause", c.pause},
                {"min_ius", c.min_ius},
                {"single_speaker", c.single_speaker}}}};
    out << j.dump() << '\n';
  }
}

std::vector<Turn> ReadTurnManifest(std::istream& in, const Corpus& corpus) {
  std::map<std::string, const Source*> sources;
  for (const auto& s : corpus.sources) sources[s.name] = &s;
  std::vector<Turn> out;
  std::size_t i = 0;
  for (const json& j : ReadJsonLines(in, "turn manifest")) {
    const std::string where = "turn " + std::to_string(i++);
    Turn turn;
    turn.source = Field<std::string>(j, "source", where);
    auto it = sources.find(turn.source);
    if (it == sources.end()) {
      throw InputError("turn_compiler", where + ": unknown source '" + turn.source + "'");
    }
    const auto begin = Field<std::size_t>(j, "iu_begin", where);
    const auto end = Field<std::size_t>(j, "iu_end", where);
    if (begin >= end || end > it->second->ius.size()) {
      throw InputError("turn_compiler", where + ": IU range [" + std::to_string(begin) + ", " +
                                            std::to_string(end) + ") outside source");
    }
    turn.first_iu = begin;
    turn.ius.assign(it->second->ius.begin() + static_cast<std::ptrdiff_t>(begin),
                    it->second->ius.begin() + static_cast<std::ptrdiff_t>(end));
    turn.token_count = j.value("token_count", std::size_t{0});
    turn.oversize = j.value("oversize", false);
    turn.below_min_ius = j.value("below_min_ius", false);
    out.push_back(std::move(turn));
  }
  return out;
}

json VocabularyManifest(const Codec& codec) {
  // Label tokens appended by the codec sit after the base pieces.
  std::size_t base_size = codec.vocab().size();
  if (codec.scheme() != Scheme::kRaw) {
    base_size -= codec.LabelTokenIds().size();
  }
  return {{"schema", "vocabulary"},
          {"version", 1},
          {"scheme", ToString(codec.scheme())},
          {"task", ToString(codec.task())},
          {"arity", codec.BlockArity()},
          {"base_size", base_size},
          {"tokens", codec.vocab().tokens()},
          {"label_tokens", codec.LabelVocabulary()}};
}

Codec CodecFromManifest(const json& manifest) {
  const std::string where = "vocabulary manifest";
  const auto scheme = ParseScheme(Field<std::string>(manifest, "scheme", where));
  const auto task = ParseTask(Field<std::string>(manifest, "task", where));
  if (!scheme || !task) throw InputError("label_codec", where + ": unknown scheme or task");
  const auto tokens = Field<std::vector<std::string>>(manifest, "tokens", where);
  const auto base_size = Field<std::size_t>(manifest, "base_size", where);
  if (base_size > tokens.size()) throw InputError("label_codec", where + ": base_size too large");
  Vocabulary base;
  for (std::size_t i = 0; i < base_size; ++i) base.Add(tokens[i]);
  if (base.size() != base_size) throw InputError("label_codec", where + ": duplicate tokens");
  Codec codec(*scheme, *task, std::move(base));
  if (codec.vocab().tokens() != tokens) {
    throw InputError("label_codec", where + ": stored vocabulary does not match the " +
                                        std::string(ToString(*scheme)) + " scheme");
  }
  return codec;
}

void WriteSequences(std::ostream& out, std::span<const InterleavedSequence> sequences) {
  for (std::size_t t = 0; t < sequences.size(); ++t) {
    out << json{{"turn", t}, {"tokens", sequences[t].tokens}}.dump() << '\n';
  }
}

std::vector<std::vector<TokenId>> ReadSequences(std::istream& in) {
  std::vector<std::vector<TokenId>> out;
  std::size_t i = 0;
  for (const json& j : ReadJsonLines(in, "sequences")) {
    out.push_back(Field<std::vector<TokenId>>(j, "tokens", "sequence " + std::to_string(i++)));
  }
  return out;
}

json LabelJson(const ProsodicLabel& label) {
  json j = json::object();
  if (label.boundary) j["boundary"] = ToString(*label.boundary);
  if (label.prototype) j["prototype"] = ToString(*label.prototype);
  if (label.emphasis) j["emphasis"] = ToString(*label.emphasis);
  return j;
}

ProsodicLabel LabelFromJson(const json& j) {
  const std::string where = "label";
  return {OptionalEnum<Boundary>(j, "boundary", ParseBoundary, where),
          OptionalEnum<Prototype>(j, "prototype", ParsePrototype, where),
          OptionalEnum<Emphasis>(j, "emphasis", ParseEmphasis, where)};
}

void WritePredictions(std::ostream& out, std::span<const TurnPrediction> predictions) {
  for (const auto& p : predictions) {
    json words = json::array();
    for (std::size_t i = 0; i < p.words.size(); ++i) {
      words.push_back({{"index", i},
                       {"text", p.words[i]},
                       {"speaker_id", p.speakers.at(i)},
                       {"gold", LabelJson(p.gold.at(i))},
                       {"pred", LabelJson(p.pred.at(i))}});
    }
    out << json{{"turn", p.turn}, {"source", p.source}, {"words", words}}.dump() << '\n';
  }
}

std::vector<TurnPrediction> ReadPredictions(std::istream& in) {
  std::vector<TurnPrediction> out;
  std::size_t i = 0;
  for (const json& j : ReadJsonLines(in, "predictions")) {
    const std::string where = "prediction " + std::to_string(i++);
    TurnPrediction p;
    p.turn = Field<std::size_t>(j, "turn", where);
    p.source = j.value("source", std::string());
    for (const json& w : Field<json>(j, "words", where)) {
      p.words.push_back(Field<std::string>(w, "text", where));
      p.speakers.push_back(w.value("speaker_id", std::string()));
      p.gold.push_back(LabelFromJson(Field<json>(w, "gold", where)));
      p.pred.push_back(LabelFromJson(Field<json>(w, "pred", where)));
    }
    if (p.words.empty()) throw InputError("metrics", where + ": turn without words");
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LabeledPair> ToPairs(std::span<const TurnPrediction> predictions) {
  std::vector<LabeledPair> pairs;
  std::set<std::size_t> seen;
  for (const auto& p : predictions) {
    if (!seen.insert(p.turn).second) {
      throw InputError("metrics", "turn " + std::to_string(p.turn) + " appears twice");
    }
    for (std::size_t i = 0; i < p.words.size(); ++i) {
      pairs.push_back({p.gold[i], p.pred[i], p.turn, i, i == 0, p.speakers[i]});
    }
  }
  return pairs;
}

namespace {

json ScoresJson(const Scores& s) {
  return {{"kappa", s.kappa}, {"recall", s.recall},     {"precision", s.precision},
          {"f1", s.f1},       {"accuracy", s.accuracy}, {"n", s.n}};
}

}  // namespace

json MetricsJson(const MetricsReport& report,
                 const std::map<std::string, std::string>& provenance) {
  json j = {{"schema", "metrics"},
            {"version", 1},
            {"provenance", provenance},
            {"turns", report.turns},
            {"speakers", report.speakers},
            {"words", report.words}};
  auto put = [&j](const char* key, const std::optional<Scores>& s) {
    j[key] = s ? ScoresJson(*s) : json(nullptr);
  };
  put("segmentation", report.segmentation);
  put("segmentation_wos", report.segmentation_wos);
  put("emphasis", report.emphasis);
  if (report.prototype) {
    const auto& p = *report.prototype;
    json per_class = json::object();
    for (Prototype c : kAllPrototypes) {
      per_class[std::string(ToString(c))] = ScoresJson(p.per_class[static_cast<int>(c)]);
    }
    j["prototype"] = {{"kappa", p.kappa},
                      {"accuracy", p.accuracy},
                      {"per_class", per_class},
                      {"total_ius", p.total_ius},
                      {"well_identified", p.well_identified},
                      {"coverage", p.coverage},
                      {"first_last_agreement", p.first_last_agreement}};
  } else {
    j["prototype"] = nullptr;
  }
  return j;
}

std::string Fnv1aHex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string FileChecksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cli", "cannot read " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return Fnv1aHex(bytes);
}

}  // namespace prosody
