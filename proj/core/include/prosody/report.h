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

#ifndef PROSODY_REPORT_H_
#define PROSODY_REPORT_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prosody/metrics.h"

namespace prosody {

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string ToCsv() const;
  // Space-padded columns, first column left-aligned, the rest right-aligned.
  std::string ToText() const;
};

// Metric x task grid: rows Kappa/Recall/Precision/F1/Accuracy, columns
// Segmentation/Emphasis/Question/Period/Comma.
using MetricGrid = std::array<std::array<std::optional<double>, 5>, 5>;
MetricGrid GridOf(const MetricsReport& report);
Table MetricTable(const MetricGrid& grid, std::string title = "");

// One line of a kappa comparison table.
struct KappaRow {
  std::string name;      // dataset, test set or model
  std::string model;     // dataset tables only
  std::optional<std::size_t> turns;
  std::optional<std::size_t> speakers;
  std::optional<double> segmentation;
  std::optional<double> segmentation_wos;
  std::optional<double> emphasis;
  std::optional<double> prototype;

  static KappaRow Of(const MetricsReport& report, std::string name, std::string model = "");
};

// Dataset | Model | Segmentation | Segmentation (wos) | Emphasis
Table DatasetTable(std::span<const KappaRow> rows, std::string title = "");
// Test Set | #Turns | #Speakers | Segmentation | Segmentation (wos) | Emphasis | Prototype
Table SubsetTable(std::span<const KappaRow> rows, std::string title = "");
// Model | <task columns> | ... with configurable task headers, used for
// model-size and single-vs-triple task comparisons.
Table ModelTable(std::span<const KappaRow> rows, std::string title = "",
                 std::array<std::string, 4> task_headers = {"Segmentation", "Segmentation (wos)",
                                                            "Emphasis", "Prototype"});

std::string FormatScore(std::optional<double> v);

}  // namespace prosody

#endif  // PROSODY_REPORT_H_
