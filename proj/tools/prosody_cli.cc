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

// prosody: command-line front end of the prosody tagging pipeline.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_util.h"
#include "prosody/codec.h"
#include "prosody/corpus.h"
#include "prosody/decode.h"
#include "prosody/error.h"
#include "prosody/features.h"
#include "prosody/ingest.h"
#include "prosody/io.h"
#include "prosody/metrics.h"
#include "prosody/normalize.h"
#include "prosody/pitch.h"
#include "prosody/report.h"
#include "prosody/synth.h"
#include "prosody/toy_model.h"
#include "prosody/turns.h"

namespace prosody::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  int jobs = 1;
  std::uint64_t seed = 7;
};

ExpansionTable LoadTable(const std::string& path, bool numbers) {
  ExpansionTable table = ExpansionTable::Default();
  if (!path.empty()) {
    std::ifstream in = OpenIn(path);
    table = ExpansionTable::ParseTsv(in);
  }
  table.expand_numbers = numbers;
  return table;
}

// --- normalize / segment ---------------------------------------------------

struct NormalizeOpts {
  std::string transcript, table, out;
  bool no_numbers = false;
};

void RunNormalize(const NormalizeOpts& o) {
  std::ifstream in = OpenIn(o.transcript);
  std::stringstream text;
  text << in.rdbuf();
  const ExpansionTable table = LoadTable(o.table, !o.no_numbers);
  NormalizeResult r = NormalizeText(ParseTranscript(text.str()), table);
  for (const auto& w : r.warnings) Warn("corpus_ingest", w);
  std::ofstream out = OpenOut(o.out);
  WriteTextTokens(out, r.tokens);
}

struct SegmentOpts {
  std::string tokens, out;
};

void RunSegment(const SegmentOpts& o) {
  std::ifstream in = OpenIn(o.tokens);
  SegmentResult r = ProxySegment(ReadTextTokens(in));
  for (const auto& w : r.warnings) Warn("corpus_ingest", w);
  std::ofstream out = OpenOut(o.out);
  WriteProtoIus(out, r.proto_ius);
}

// --- ingest ----------------------------------------------------------------

struct IngestOpts {
  std::vector<std::string> alignment, proto, audio, names;
  std::string annotator, corpus_name, table, out;
  bool no_numbers = false;
};

void RunIngest(const IngestOpts& o, const Globals& g) {
  if (o.alignment.size() != o.proto.size()) {
    throw InputError("cli", "--alignment and --proto need the same number of files");
  }
  if (!o.audio.empty() && o.audio.size() != o.alignment.size()) {
    throw InputError("cli", "--audio needs one entry per alignment file");
  }
  if (!o.names.empty() && o.names.size() != o.alignment.size()) {
    throw InputError("cli", "--source-name needs one entry per alignment file");
  }
  std::vector<Source> sources(o.alignment.size());
  ParallelFor(sources.size(), g.jobs, [&](std::size_t i) {
    std::ifstream a = OpenIn(o.alignment[i]);
    std::ifstream p = OpenIn(o.proto[i]);
    const std::string name =
        o.names.empty() ? fs::path(o.alignment[i]).stem().string() : o.names[i];
    const std::string audio = o.audio.empty() ? name + ".wav" : o.audio[i];
    try {
      sources[i] = IngestAlignment(ReadAlignment(a), ReadProtoIus(p), name, audio);
    } catch (const InputError& e) {
      throw InputError(e.module(), o.alignment[i] + ": " + e.what());
    }
  });
  Corpus corpus = MakeCorpus(std::move(sources), {o.corpus_name, o.annotator});
  for (const auto& v : ValidateCorpus(corpus).violations) Warn("core_model", v.Describe());
  std::ofstream out = OpenOut(o.out);
  WriteCorpusJsonl(out, corpus);
  OpenOut(ManifestPathFor(o.out))
      << CorpusManifest(corpus, LoadTable(o.table, !o.no_numbers).Checksum()).dump(2) << '\n';
}

// --- turns -----------------------------------------------------------------

struct TurnOpts {
  std::string corpus, out, scheme = "compact", task = "full";
  TurnParams params;
  bool single_speaker = false;
};

TokenCounter CounterFor(const Codec& codec) {
  return [&codec](std::span<const Word> words) { return codec.CountTokens(words); };
}

void RunCompileTurns(TurnOpts o) {
  if (o.single_speaker) o.params.allow_multi_speaker = false;
  o.params.Validate();
  const Corpus corpus = LoadCorpus(o.corpus);
  const Codec codec = MakeCodec(o.scheme, o.task, corpus);
  CompileResult r = CompileTurns(corpus, o.params, CounterFor(codec));
  for (const auto& w : r.warnings) Warn("turn_compiler", w);
  std::ofstream out = OpenOut(o.out);
  WriteTurnManifest(out, corpus, r.turns, o.params);
}

struct SweepOpts {
  TurnOpts base;
  std::vector<double> max_pause = {1.0};
  std::vector<std::size_t> min_ius = {2};
};

void RunSweepTurns(SweepOpts o) {
  if (o.base.single_speaker) o.base.params.allow_multi_speaker = false;
  const Corpus corpus = LoadCorpus(o.base.corpus);
  const Codec codec = MakeCodec(o.base.scheme, o.base.task, corpus);
  Table table;
  table.title = "Turn compilation sweep";
  table.header = {"max_pause_s", "min_ius", "turns", "flagged", "1 speaker", "2 speakers",
                  "mean_duration_s"};
  for (double pause : o.max_pause) {
    for (std::size_t min_ius : o.min_ius) {
      TurnParams p = o.base.params;
      p.max_pause_s = pause;
      p.min_ius = min_ius;
      p.Validate();
      CompileResult r = CompileTurns(corpus, p, CounterFor(codec));
      TurnStatsReport s = TurnStats(r.turns);
      char buf[4][32];
      std::snprintf(buf[0], sizeof(buf[0]), "%.3f", pause);
      std::snprintf(buf[1], sizeof(buf[1]), "%.3f", s.SpeakerFraction(1));
      std::snprintf(buf[2], sizeof(buf[2]), "%.3f", s.SpeakerFraction(2));
      std::snprintf(buf[3], sizeof(buf[3]), "%.3f", s.mean_duration_s);
      table.rows.push_back({buf[0], std::to_string(min_ius), std::to_string(s.turns),
                            std::to_string(s.flagged), buf[1], buf[2], buf[3]});
    }
  }
  std::cout << table.ToText();
  OpenOut(o.base.out) << table.ToCsv();
}

// --- encode ----------------------------------------------------------------

struct EncodeOpts {
  std::string corpus, turns, scheme = "compact", task = "full", out, vocab_out;
};

void RunEncode(const EncodeOpts& o) {
  const Corpus corpus = LoadCorpus(o.corpus);
  const Codec codec = MakeCodec(o.scheme, o.task, corpus);
  std::ifstream tin = OpenIn(o.turns);
  const std::vector<Turn> turns = ReadTurnManifest(tin, corpus);
  std::vector<InterleavedSequence> seqs;
  seqs.reserve(turns.size());
  for (const auto& t : turns) seqs.push_back(codec.EncodeTurn(t));
  std::ofstream out = OpenOut(o.out);
  WriteSequences(out, seqs);
  const std::string vocab =
      o.vocab_out.empty() ? JoinPath(fs::path(o.out).parent_path().string(), "vocabulary.json")
                          : o.vocab_out;
  OpenOut(vocab) << VocabularyManifest(codec).dump(2) << '\n';
}

// --- synth -----------------------------------------------------------------

struct SynthOpts {
  SynthSpec spec;
  std::vector<double> prototype_mix, emphasis_mix;
  std::string out;
};

void RunSynth(SynthOpts o, const Globals& g) {
  o.spec.seed = g.seed;
  if (!o.prototype_mix.empty()) {
    if (o.prototype_mix.size() != 3) throw InputError("cli", "--prototype-mix needs 3 weights");
    std::copy(o.prototype_mix.begin(), o.prototype_mix.end(), o.spec.prototype_mix.begin());
  }
  if (!o.emphasis_mix.empty()) {
    if (o.emphasis_mix.size() != 2) throw InputError("cli", "--emphasis-mix needs 2 weights");
    std::copy(o.emphasis_mix.begin(), o.emphasis_mix.end(), o.spec.emphasis_mix.begin());
  }
  o.spec.Validate();
  SynthData data = SynthCorpus(o.spec);
  fs::create_directories(o.out);
  const std::string corpus_path = JoinPath(o.out, "corpus.jsonl");
  {
    std::ofstream out = OpenOut(corpus_path);
    WriteCorpusJsonl(out, data.corpus);
  }
  OpenOut(ManifestPathFor(corpus_path))
      << CorpusManifest(data.corpus, ExpansionTable::Default().Checksum()).dump(2) << '\n';
  {
    TurnParams params;
    params.max_pause_s = std::max(params.max_pause_s, o.spec.max_pause_s);
    std::ofstream out = OpenOut(JoinPath(o.out, "turns.jsonl"));
    WriteTurnManifest(out, data.corpus, data.turns, params);
  }
  const std::string features = JoinPath(o.out, "features");
  const std::string pitch = JoinPath(o.out, "pitch");
  fs::create_directories(features);
  fs::create_directories(pitch);
  for (std::size_t i = 0; i < data.turns.size(); ++i) {
    SaveFeatures(FeaturePath(features, i), data.features[i]);
    std::ofstream p = OpenOut(PitchPath(pitch, data.turns[i].source));
    WritePitchTrack(p, data.pitch[i]);
  }
}

// --- train-toy / decode ----------------------------------------------------

struct TrainOpts {
  std::string corpus, turns, features, scheme = "compact", task = "full", out;
  ToyConfig config;
};

std::vector<AudioFeatures> LoadFeatures(const std::string& dir, std::size_t n) {
  std::vector<AudioFeatures> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prosody::LoadFeatures(FeaturePath(dir, i)));
  return out;
}

void RunTrainToy(TrainOpts o, const Globals& g) {
  o.config.seed = g.seed;
  o.config.Validate();
  const Corpus corpus = LoadCorpus(o.corpus);
  const Codec codec = MakeCodec(o.scheme, o.task, corpus);
  std::ifstream tin = OpenIn(o.turns);
  const std::vector<Turn> turns = ReadTurnManifest(tin, corpus);
  const std::vector<AudioFeatures> features = LoadFeatures(o.features, turns.size());
  std::vector<TrainExample> examples;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    examples.push_back({&features[i], codec.EncodeTurn(turns[i])});
  }
  const std::size_t channels = features.empty() ? 0 : features.front().channels;
  std::ofstream log = OpenOut(JoinPath(o.out, "history.jsonl"));
  TrainResult r = TrainToy(o.config, examples, codec, channels, [&](const EpochLog& e) {
    json j = {{"epoch", e.epoch}, {"steps", e.steps}, {"train_loss", e.train_loss},
              {"eval_loss", e.eval_loss}};
    log << j.dump() << '\n';
    std::cerr << "epoch " << e.epoch << " steps " << e.steps << " train " << e.train_loss
              << " eval " << e.eval_loss << '\n';
  });
  SaveCheckpoint(o.out, *r.model, codec);
  std::cerr << "best epoch " << r.best_epoch << " eval loss " << r.best_eval_loss << '\n';
}

struct DecodeOpts {
  std::string corpus, turns, features, model = "oracle", scheme, task, out;
};

void RunDecode(const DecodeOpts& o, const Globals& g) {
  const Corpus corpus = LoadCorpus(o.corpus);
  std::ifstream tin = OpenIn(o.turns);
  const std::vector<Turn> turns = ReadTurnManifest(tin, corpus);

  std::unique_ptr<Codec> codec;
  std::unique_ptr<SequenceModel> model;
  const bool oracle = o.model == "oracle";
  if (oracle) {
    codec = std::make_unique<Codec>(
        MakeCodec(o.scheme.empty() ? "compact" : o.scheme, o.task.empty() ? "full" : o.task, corpus));
  } else {
    Checkpoint ck = LoadCheckpoint(o.model);
    if ((!o.scheme.empty() && SchemeOrThrow(o.scheme) != ck.codec->scheme()) ||
        (!o.task.empty() && TaskOrThrow(o.task) != ck.codec->task())) {
      throw InputError("decode_harness", "checkpoint was trained for scheme " +
                                             std::string(ToString(ck.codec->scheme())) +
                                             ", task " + std::string(ToString(ck.codec->task())));
    }
    codec = std::move(ck.codec);
    model = std::move(ck.model);
    if (o.features.empty()) throw InputError("cli", "--features is required for trained models");
  }

  std::vector<TurnPrediction> predictions(turns.size());
  ParallelFor(turns.size(), g.jobs, [&](std::size_t i) {
    const Turn& turn = turns[i];
    const std::vector<Word> words = turn.Words();
    std::vector<std::string> text;
    for (const auto& w : words) text.push_back(w.text);
    AudioFeatures features;
    std::unique_ptr<SequenceModel> oracle_model;
    const SequenceModel* m = model.get();
    if (oracle) {
      oracle_model = MakeOracleModel(turn, *codec);
      m = oracle_model.get();
    }
    if (!o.features.empty()) features = prosody::LoadFeatures(FeaturePath(o.features, i));
    DecodeResult r = ConstrainedDecode(*m, features, text, *codec);
    TurnPrediction& p = predictions[i];
    p.turn = i;
    p.source = turn.source;
    p.words = std::move(text);
    for (const auto& w : words) {
      p.speakers.push_back(w.speaker_id);
      p.gold.push_back(GoldLabel(w, Task::kFull));
    }
    p.pred = std::move(r.labels);
  });
  std::ofstream out = OpenOut(o.out);
  WritePredictions(out, predictions);
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateOpts {
  std::string predictions, out, rule = "last", model_id = "unknown", dataset = "dataset";
  bool wos = false;
};

void RunEvaluate(const EvaluateOpts& o) {
  std::ifstream in = OpenIn(o.predictions);
  const std::vector<TurnPrediction> preds = ReadPredictions(in);
  if (o.rule != "last" && o.rule != "first") {
    throw InputError("cli", "--prototype-rule must be 'last' or 'first'");
  }
  const PrototypeRule rule = o.rule == "last" ? PrototypeRule::kLastWord : PrototypeRule::kFirstWord;
  const std::vector<LabeledPair> pairs = ToPairs(preds);
  MetricsReport report = Evaluate(pairs, rule);
  if (o.wos) {
    if (!report.segmentation_wos && report.segmentation) {
      throw InputError("metrics", "nothing left to score once turn-initial words are dropped");
    }
    report.segmentation = report.segmentation_wos;
  }

  std::map<std::string, std::string> provenance = {
      {"model", o.model_id},
      {"dataset", o.dataset},
      {"dataset_checksum", FileChecksum(o.predictions)},
      {"prototype_rule", o.rule},
      {"segmentation", o.wos ? "without_start" : "all_words"}};
  fs::create_directories(o.out);
  OpenOut(JoinPath(o.out, "metrics.json")) << MetricsJson(report, provenance).dump(2) << '\n';

  const Table metric = MetricTable(GridOf(report), "Metrics (" + o.dataset + ")");
  OpenOut(JoinPath(o.out, "metrics.csv")) << metric.ToCsv();
  OpenOut(JoinPath(o.out, "metrics.txt")) << metric.ToText();

  // Speaker-count subsets.
  std::map<std::size_t, std::vector<LabeledPair>> by_speakers;
  std::map<std::size_t, std::size_t> turn_speakers;
  for (const auto& p : preds) {
    turn_speakers[p.turn] = std::set<std::string>(p.speakers.begin(), p.speakers.end()).size();
  }
  for (const auto& pair : pairs) by_speakers[turn_speakers[pair.turn]].push_back(pair);
  std::vector<KappaRow> rows = {KappaRow::Of(report, "All")};
  for (const auto& [n, subset] : by_speakers) {
    MetricsReport r = Evaluate(subset, rule);
    if (o.wos) r.segmentation = r.segmentation_wos;
    rows.push_back(KappaRow::Of(r, std::to_string(n) + (n == 1 ? " speaker" : " speakers")));
  }
  const Table subsets = SubsetTable(rows, "Cohen's Kappa by speaker count");
  OpenOut(JoinPath(o.out, "subsets.csv")) << subsets.ToCsv();
  OpenOut(JoinPath(o.out, "subsets.txt")) << subsets.ToText();
  std::cout << metric.ToText() << '\n' << subsets.ToText();
  if (report.prototype) {
    std::printf("\nwell-identified IUs: %zu of %zu (%.3f), first/last agreement %.3f\n",
                report.prototype->well_identified, report.prototype->total_ius,
                report.prototype->coverage, report.prototype->first_last_agreement);
  }
}

// --- pitch-curves / stats ----------------------------------------------------

struct PitchOpts {
  std::string corpus, pitch, group_by = "prototype", out;
  CurveOptions curve;
};

void RunPitchCurves(const PitchOpts& o) {
  const Corpus corpus = LoadCorpus(o.corpus);
  CurveGrouping grouping;
  if (o.group_by == "prototype") grouping = CurveGrouping::kPrototype;
  else if (o.group_by == "emphasis-half") grouping = CurveGrouping::kEmphasisHalf;
  else if (o.group_by == "prototype,emphasis-half" || o.group_by == "emphasis-half,prototype")
    grouping = CurveGrouping::kPrototypeAndEmphasisHalf;
  else throw InputError("cli", "--group-by takes prototype, emphasis-half or both");

  std::map<std::string, PitchTrack> tracks;
  for (const auto& s : corpus.sources) {
    const std::string path = PitchPath(o.pitch, s.name);
    if (!fs::exists(path)) {
      Warn("pitch_analysis", "no pitch track for source '" + s.name + "'");
      continue;
    }
    std::ifstream in = OpenIn(path);
    PitchTrack t = ReadPitchTrack(in);
    t.audio = s.audio;
    tracks.emplace(s.name, std::move(t));
  }
  AggregateResult r = PitchCurves(corpus, tracks, grouping, o.curve);
  for (const auto& w : r.warnings) Warn("pitch_analysis", w);
  std::ofstream out = OpenOut(o.out);
  WriteCurveCsv(out, r);
  for (const auto& [key, group] : r.groups) std::cout << key << " (n=" << group.count << ")\n";
}

struct StatsOpts {
  std::string corpus, turns, out;
};

void RunStats(const StatsOpts& o) {
  const Corpus corpus = LoadCorpus(o.corpus);
  std::string text = AnnotationStats(corpus).Render();
  if (!o.turns.empty()) {
    std::ifstream in = OpenIn(o.turns);
    const std::vector<Turn> turns = ReadTurnManifest(in, corpus);
    text += "\n" + TurnStats(turns).Render();
  }
  std::cout << text;
  if (!o.out.empty()) OpenOut(o.out) << text;
}

void PrintVersion() {
  std::cout << "prosody " << PROSODY_VERSION << "\nschemas:\n";
  for (const auto& s : kSchemas) std::cout << "  " << s.format << " v" << s.version << '\n';
}

// Turn-parameter flags shared by compile-turns and sweep-turns.
void AddTurnOptions(CLI::App* sub, TurnOpts& o, bool with_pause_and_min) {
  sub->add_option("--corpus", o.corpus, "Corpus JSONL")->required();
  sub->add_option("--out", o.out, "Output file")->required();
  if (with_pause_and_min) {
    sub->add_option("--max-pause", o.params.max_pause_s, "Longest pause inside a turn (s)")
        ->capture_default_str();
    sub->add_option("--min-ius", o.params.min_ius, "Fewest IUs per turn")->capture_default_str();
  }
  sub->add_option("--max-dur", o.params.max_dur_s, "Longest turn (s)")->capture_default_str();
  sub->add_option("--max-tokens", o.params.max_tokens, "Most encoded tokens per turn")
      ->capture_default_str();
  sub->add_flag("--allow-multi-speaker", o.params.allow_multi_speaker,
                "Let speaker changes stay inside a turn (default true)")
      ->capture_default_str();
  sub->add_flag("--single-speaker", o.single_speaker, "Split turns at speaker changes");
  sub->add_flag("--strict-same-speaker", o.params.strict_same_speaker,
                "Count min-ius per speaker");
  sub->add_option("--scheme", o.scheme, "Label scheme used for token counts")
      ->capture_default_str();
  sub->add_option("--task", o.task, "Label task used for token counts")->capture_default_str();
}

int Main(int argc, char** argv) {
  CLI::App app{"Prosodic label tagging pipeline"};
  app.set_config("--config", "", "TOML config file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Globals g;
  bool version = false;
  app.add_flag("--version", version, "Print the version and file-format schemas");
  app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();

  std::map<std::string, std::function<void()>> handlers;
  std::vector<std::string> inputs;
  std::string out_path;

  NormalizeOpts norm;
  auto* s = app.add_subcommand("normalize", "Normalize a transcript into words and punctuation");
  s->add_option("--transcript", norm.transcript, "Transcript with >>SPEAKER: headers")->required();
  s->add_option("--table", norm.table, "Expansion table (TSV)");
  s->add_flag("--no-numbers", norm.no_numbers, "Leave digits unexpanded");
  s->add_option("--out", norm.out, "Token JSONL")->required();
  handlers["normalize"] = [&] {
    inputs = {norm.transcript, norm.table};
    out_path = norm.out;
    RunNormalize(norm);
  };

  SegmentOpts seg;
  s = app.add_subcommand("segment", "Punctuation-proxy IU segmentation");
  s->add_option("--tokens", seg.tokens, "Token JSONL from normalize")->required();
  s->add_option("--out", seg.out, "Proto-IU JSONL")->required();
  handlers["segment"] = [&] {
    inputs = {seg.tokens};
    out_path = seg.out;
    RunSegment(seg);
  };

  IngestOpts ing;
  s = app.add_subcommand("ingest", "Join aligner output with proto-IUs into a corpus");
  s->add_option("--alignment", ing.alignment, "Alignment JSONL, one per source")->required();
  s->add_option("--proto", ing.proto, "Proto-IU JSONL, one per source")->required();
  s->add_option("--audio", ing.audio, "Audio locator per source");
  s->add_option("--source-name", ing.names, "Source name per source (default: file stem)");
  s->add_option("--annotator", ing.annotator, "Annotator id");
  s->add_option("--corpus-name", ing.corpus_name, "Corpus name");
  s->add_option("--table", ing.table, "Expansion table used for normalization");
  s->add_flag("--no-numbers", ing.no_numbers, "Normalization ran without number expansion");
  s->add_option("--out", ing.out, "Corpus JSONL")->required();
  handlers["ingest"] = [&] {
    inputs = ing.alignment;
    inputs.insert(inputs.end(), ing.proto.begin(), ing.proto.end());
    out_path = ing.out;
    RunIngest(ing, g);
  };

  TurnOpts turns;
  s = app.add_subcommand("compile-turns", "Pack IUs into model-ready turns");
  AddTurnOptions(s, turns, true);
  handlers["compile-turns"] = [&] {
    inputs = {turns.corpus};
    out_path = turns.out;
    RunCompileTurns(turns);
  };

  SweepOpts sweep;
  s = app.add_subcommand("sweep-turns", "Turn statistics over a grid of pause and IU limits");
  AddTurnOptions(s, sweep.base, false);
  s->add_option("--max-pause", sweep.max_pause, "Pause limits (s)")->delimiter(',')
      ->capture_default_str();
  s->add_option("--min-ius", sweep.min_ius, "IU minimums")->delimiter(',')->capture_default_str();
  handlers["sweep-turns"] = [&] {
    inputs = {sweep.base.corpus};
    out_path = sweep.base.out;
    RunSweepTurns(sweep);
  };

  EncodeOpts enc;
  s = app.add_subcommand("encode", "Encode turns as interleaved label-word token sequences");
  s->add_option("--corpus", enc.corpus, "Corpus JSONL")->required();
  s->add_option("--turns", enc.turns, "Turn manifest")->required();
  s->add_option("--scheme", enc.scheme, "raw, compact or bits")->capture_default_str();
  s->add_option("--task", enc.task, "full, boundary, prototype or emphasis")->capture_default_str();
  s->add_option("--out", enc.out, "Sequence JSONL")->required();
  s->add_option("--vocab-out", enc.vocab_out, "Vocabulary manifest (default: next to --out)");
  handlers["encode"] = [&] {
    inputs = {enc.corpus, enc.turns};
    out_path = enc.out;
    RunEncode(enc);
  };

  SynthOpts syn;
  s = app.add_subcommand("synth", "Generate a synthetic labeled corpus with features");
  s->add_option("--n-turns", syn.spec.n_turns, "Turns")->capture_default_str();
  s->add_option("--prototype-mix", syn.prototype_mix, "continuation,conclusion,request weights")
      ->delimiter(',');
  s->add_option("--emphasis-mix", syn.emphasis_mix, "emphasized,none weights")->delimiter(',');
  s->add_option("--speakers", syn.spec.n_speakers, "Speakers")->capture_default_str();
  s->add_option("--speaker-change", syn.spec.speaker_change_prob,
                "Speaker-change probability per IU")
      ->capture_default_str();
  s->add_flag("--alternate-speakers", syn.spec.alternate_speakers, "Change speaker at every IU");
  s->add_option("--vocabulary-words", syn.spec.vocabulary_words, "Pseudo-word vocabulary size")
      ->capture_default_str();
  s->add_option("--out", syn.out, "Output directory")->required();
  handlers["synth"] = [&] {
    out_path = syn.out;
    RunSynth(syn, g);
  };

  TrainOpts tr;
  s = app.add_subcommand("train-toy", "Train the toy encoder-decoder");
  s->add_option("--corpus", tr.corpus, "Corpus JSONL")->required();
  s->add_option("--turns", tr.turns, "Turn manifest")->required();
  s->add_option("--features", tr.features, "Feature directory")->required();
  s->add_option("--scheme", tr.scheme, "raw, compact or bits")->capture_default_str();
  s->add_option("--task", tr.task, "full, boundary, prototype or emphasis")->capture_default_str();
  s->add_option("--width", tr.config.arch.width, "Model width")->capture_default_str();
  s->add_option("--heads", tr.config.arch.heads, "Attention heads")->capture_default_str();
  s->add_option("--encoder-layers", tr.config.arch.encoder_layers, "Encoder blocks")
      ->capture_default_str();
  s->add_option("--decoder-layers", tr.config.arch.decoder_layers, "Decoder blocks")
      ->capture_default_str();
  s->add_option("--lr", tr.config.learning_rate, "Learning rate")->capture_default_str();
  s->add_option("--epochs", tr.config.max_epochs, "Maximum epochs")->capture_default_str();
  s->add_option("--patience", tr.config.patience, "Early-stop patience (epochs)")
      ->capture_default_str();
  s->add_option("--batch-tokens", tr.config.batch_tokens, "Target tokens per batch")
      ->capture_default_str();
  s->add_option("--eval-fraction", tr.config.eval_fraction, "Held-out fraction")
      ->capture_default_str();
  s->add_option("--max-steps", tr.config.max_steps, "Stop after this many steps");
  s->add_flag("--label-loss-only", tr.config.label_loss_only, "Score label tokens only");
  s->add_option("--out", tr.out, "Checkpoint directory")->required();
  handlers["train-toy"] = [&] {
    inputs = {tr.corpus, tr.turns};
    out_path = tr.out;
    RunTrainToy(tr, g);
  };

  DecodeOpts dec;
  s = app.add_subcommand("decode", "Constrained label-only decoding");
  s->add_option("--corpus", dec.corpus, "Corpus JSONL")->required();
  s->add_option("--turns", dec.turns, "Turn manifest")->required();
  s->add_option("--features", dec.features, "Feature directory");
  s->add_option("--model", dec.model, "'oracle' or a checkpoint directory")->capture_default_str();
  s->add_option("--scheme", dec.scheme, "raw, compact or bits");
  s->add_option("--task", dec.task, "full, boundary, prototype or emphasis");
  s->add_option("--out", dec.out, "Prediction JSONL")->required();
  handlers["decode"] = [&] {
    inputs = {dec.corpus, dec.turns};
    out_path = dec.out;
    RunDecode(dec, g);
  };

  EvaluateOpts ev;
  s = app.add_subcommand("evaluate", "Agreement and classification scores");
  s->add_option("--predictions", ev.predictions, "Prediction JSONL")->required();
  s->add_flag("--wos", ev.wos, "Drop each turn's first word from segmentation");
  s->add_option("--prototype-rule", ev.rule, "IU prototype from the 'last' or 'first' word")
      ->capture_default_str();
  s->add_option("--model-id", ev.model_id, "Model name recorded in the report")
      ->capture_default_str();
  s->add_option("--dataset", ev.dataset, "Dataset name recorded in the report")
      ->capture_default_str();
  s->add_option("--out", ev.out, "Report directory")->required();
  handlers["evaluate"] = [&] {
    inputs = {ev.predictions};
    out_path = ev.out;
    RunEvaluate(ev);
  };

  PitchOpts pc;
  s = app.add_subcommand("pitch-curves", "Median- and time-normalized pitch curves per group");
  s->add_option("--corpus", pc.corpus, "Corpus JSONL")->required();
  s->add_option("--pitch", pc.pitch, "Directory of <source>.f0 tracks")->required();
  s->add_option("--group-by", pc.group_by, "prototype, emphasis-half or prototype,emphasis-half")
      ->capture_default_str();
  s->add_option("--points", pc.curve.points, "Resample points")->capture_default_str();
  s->add_option("--max-gap", pc.curve.max_gap_s, "Longest interpolated gap (s)")
      ->capture_default_str();
  s->add_option("--min-coverage", pc.curve.min_coverage, "Voiced-coverage floor")
      ->capture_default_str();
  s->add_option("--out", pc.out, "Curve CSV")->required();
  handlers["pitch-curves"] = [&] {
    inputs = {pc.corpus};
    out_path = pc.out;
    RunPitchCurves(pc);
  };

  StatsOpts st;
  s = app.add_subcommand("stats", "Annotation and turn statistics");
  s->add_option("--corpus", st.corpus, "Corpus JSONL")->required();
  s->add_option("--turns", st.turns, "Turn manifest");
  s->add_option("--out", st.out, "Text report");
  handlers["stats"] = [&] {
    inputs = {st.corpus, st.turns};
    out_path = st.out;
    RunStats(st);
  };

  // --version works without a subcommand.
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--version") {
      PrintVersion();
      return 0;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    handlers.at(name)();
    if (!out_path.empty()) {
      const std::string config = "jobs=" + std::to_string(g.jobs) + "\nseed=" +
                                 std::to_string(g.seed) + "\n" + sub->config_to_str(true, false);
      WriteRunManifest(out_path, name, config, inputs);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace
}  // namespace prosody::cli

int main(int argc, char** argv) { return prosody::cli::Main(argc, argv); }
