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

#include "prosody/metrics.h"

#include <algorithm>
#include <map>
#include <set>

#include "prosody/error.h"

namespace prosody {
namespace {

double Ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// Pairs grouped by turn, each group ordered by word index.
std::map<std::size_t, std::vector<const LabeledPair*>> ByTurn(std::span<const LabeledPair> pairs) {
  std::map<std::size_t, std::vector<const LabeledPair*>> turns;
  for (const auto& p : pairs) turns[p.turn].push_back(&p);
  for (auto& [t, v] : turns) {
    std::sort(v.begin(), v.end(),
              [](const LabeledPair* a, const LabeledPair* b) { return a->word < b->word; });
  }
  return turns;
}

}  // namespace

double CohensKappa(std::span<const int> gold, std::span<const int> pred) {
  if (gold.size() != pred.size()) {
    throw InputError("metrics", "kappa inputs differ in length (" + std::to_string(gold.size()) +
                                    " vs " + std::to_string(pred.size()) + ")");
  }
  if (gold.empty()) throw InputError("metrics", "kappa of an empty list");
  std::map<int, double> gold_marginal;
  std::map<int, double> pred_marginal;
  double agree = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    gold_marginal[gold[i]] += 1.0;
    pred_marginal[pred[i]] += 1.0;
    if (gold[i] == pred[i]) agree += 1.0;
  }
  const double n = static_cast<double>(gold.size());
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [category, count] : gold_marginal) {
    auto it = pred_marginal.find(category);
    if (it != pred_marginal.end()) p_e += (count / n) * (it->second / n);
  }
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

Scores BinaryScores(std::span<const int> gold, std::span<const int> pred, int positive) {
  if (gold.size() != pred.size()) throw InputError("metrics", "score inputs differ in length");
  if (gold.empty()) throw InputError("metrics", "no pairs to score");
  std::vector<int> g(gold.size());
  std::vector<int> p(pred.size());
  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    g[i] = gold[i] == positive ? 1 : 0;
    p[i] = pred[i] == positive ? 1 : 0;
    if (g[i] && p[i]) ++tp;
    else if (!g[i] && p[i]) ++fp;
    else if (g[i] && !p[i]) ++fn;
    else ++tn;
  }
  Scores s;
  s.n = gold.size();
  s.kappa = CohensKappa(g, p);
  s.recall = Ratio(tp, tp + fn);
  s.precision = Ratio(tp, tp + fp);
  s.f1 = Ratio(2 * s.precision * s.recall, s.precision + s.recall);
  s.accuracy = (tp + tn) / static_cast<double>(s.n);
  return s;
}

Scores SegmentationMetrics(std::span<const LabeledPair> pairs, bool include_first) {
  std::vector<int> gold;
  std::vector<int> pred;
  for (const auto& p : pairs) {
    if (!p.gold.boundary || !p.pred.boundary) {
      throw InputError("metrics", "segmentation needs boundary labels (turn " +
                                      std::to_string(p.turn) + ", word " + std::to_string(p.word) +
                                      ")");
    }
    if (!include_first && p.turn_initial) continue;
    gold.push_back(static_cast<int>(*p.gold.boundary));
    pred.push_back(static_cast<int>(*p.pred.boundary));
  }
  if (gold.empty()) throw InputError("metrics", "no words left to score for segmentation");
  return BinaryScores(gold, pred, static_cast<int>(Boundary::kBegin));
}

Scores EmphasisMetrics(std::span<const LabeledPair> pairs) {
  std::vector<int> gold;
  std::vector<int> pred;
  for (const auto& p : pairs) {
    if (!p.gold.emphasis || !p.pred.emphasis) {
      throw InputError("metrics", "emphasis scoring needs emphasis labels (turn " +
                                      std::to_string(p.turn) + ", word " + std::to_string(p.word) +
                                      ")");
    }
    gold.push_back(static_cast<int>(*p.gold.emphasis));
    pred.push_back(static_cast<int>(*p.pred.emphasis));
  }
  if (gold.empty()) throw InputError("metrics", "no words to score for emphasis");
  return BinaryScores(gold, pred, static_cast<int>(Emphasis::kEmphasized));
}

PrototypeScores PrototypeEval(std::span<const LabeledPair> pairs, PrototypeRule rule) {
  PrototypeScores out;
  std::vector<int> gold;
  std::vector<int> pred;
  std::size_t agree_first_last = 0;
  for (const auto& [turn, words] : ByTurn(pairs)) {
    for (const LabeledPair* p : words) {
      if (!p->gold.boundary || !p->gold.prototype || !p->pred.prototype) {
        throw InputError("metrics", "prototype evaluation needs gold boundaries and prototypes");
      }
    }
    const bool has_pred_boundary = std::all_of(
        words.begin(), words.end(), [](const LabeledPair* p) { return p->pred.boundary.has_value(); });
    std::size_t a = 0;
    while (a < words.size()) {
      std::size_t b = a + 1;
      while (b < words.size() && *words[b]->gold.boundary != Boundary::kBegin) ++b;
      ++out.total_ius;
      bool exact = true;
      if (has_pred_boundary) {
        exact = *words[a]->pred.boundary == Boundary::kBegin &&
                (b == words.size() || *words[b]->pred.boundary == Boundary::kBegin);
        for (std::size_t k = a + 1; k < b && exact; ++k) {
          exact = *words[k]->pred.boundary == Boundary::kInside;
        }
      }
      if (exact) {
        ++out.well_identified;
        Prototype first = *words[a]->pred.prototype;
        Prototype last = *words[b - 1]->pred.prototype;
        if (first == last) ++agree_first_last;
        gold.push_back(static_cast<int>(*words[a]->gold.prototype));
        pred.push_back(static_cast<int>(rule == PrototypeRule::kLastWord ? last : first));
      }
      a = b;
    }
  }
  if (out.well_identified == 0) throw InputError("metrics", "no well-identified IU");
  out.coverage = static_cast<double>(out.well_identified) / static_cast<double>(out.total_ius);
  out.first_last_agreement =
      static_cast<double>(agree_first_last) / static_cast<double>(out.well_identified);
  out.kappa = CohensKappa(gold, pred);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += gold[i] == pred[i];
  out.accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());
  for (int c = 0; c < kNumPrototypes; ++c) out.per_class[c] = BinaryScores(gold, pred, c);
  return out;
}

MetricsReport Evaluate(std::span<const LabeledPair> pairs, PrototypeRule rule) {
  if (pairs.empty()) throw InputError("metrics", "no predictions to evaluate");
  MetricsReport report;
  std::set<std::size_t> turns;
  std::set<std::string> speakers;
  for (const auto& p : pairs) {
    turns.insert(p.turn);
    speakers.insert(p.speaker_id);
  }
  report.turns = turns.size();
  report.speakers = speakers.size();
  report.words = pairs.size();

  auto all = [&](auto field) {
    return std::all_of(pairs.begin(), pairs.end(), [&](const LabeledPair& p) {
      return (p.gold.*field).has_value() && (p.pred.*field).has_value();
    });
  };
  if (all(&ProsodicLabel::boundary)) {
    report.segmentation = SegmentationMetrics(pairs, true);
    bool any_left = std::any_of(pairs.begin(), pairs.end(),
                                [](const LabeledPair& p) { return !p.turn_initial; });
    if (any_left) report.segmentation_wos = SegmentationMetrics(pairs, false);
  }
  if (all(&ProsodicLabel::emphasis)) report.emphasis = EmphasisMetrics(pairs);
  const bool gold_spans = std::all_of(pairs.begin(), pairs.end(), [](const LabeledPair& p) {
    return p.gold.boundary.has_value() && p.gold.prototype.has_value();
  });
  if (gold_spans && all(&ProsodicLabel::prototype)) {
    try {
      report.prototype = PrototypeEval(pairs, rule);
    } catch (const InputError&) {
      // No well-identified IU: the prototype column stays empty.
    }
  }
  return report;
}

}  // namespace prosody
