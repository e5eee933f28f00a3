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

#include "prosody/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace prosody {

std::string FormatScore(std::optional<double> v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

namespace {

std::string FormatCount(std::optional<std::size_t> v) { return v ? std::to_string(*v) : "-"; }

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Table::ToCsv() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << CsvField(cells[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string Table::ToText() const {
  std::vector<std::size_t> width(header.size(), 0);
  auto measure = [&width](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], cells[i].size());
    }
  };
  measure(header);
  for (const auto& r : rows) measure(r);
  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string pad(width[i] - std::min(width[i], cells[i].size()), ' ');
      if (i) text += "  ";
      text += i == 0 ? cells[i] + pad : pad + cells[i];
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& r : rows) line(r);
  return out.str();
}

MetricGrid GridOf(const MetricsReport& report) {
  MetricGrid grid{};
  auto column = [&grid](std::size_t c, const Scores& s) {
    grid[0][c] = s.kappa;
    grid[1][c] = s.recall;
    grid[2][c] = s.precision;
    grid[3][c] = s.f1;
    grid[4][c] = s.accuracy;
  };
  if (report.segmentation) column(0, *report.segmentation);
  if (report.emphasis) column(1, *report.emphasis);
  if (report.prototype) {
    column(2, report.prototype->per_class[static_cast<int>(Prototype::kRequestForResponse)]);
    column(3, report.prototype->per_class[static_cast<int>(Prototype::kConclusion)]);
    column(4, report.prototype->per_class[static_cast<int>(Prototype::kContinuation)]);
  }
  return grid;
}

Table MetricTable(const MetricGrid& grid, std::string title) {
  Table t;
  t.title = std::move(title);
  t.header = {"Metric", "Segmentation", "Emphasis", "Question", "Period", "Comma"};
  const char* names[] = {"Cohen's Kappa", "Recall", "Precision", "F1-score", "Accuracy"};
  for (std::size_t r = 0; r < 5; ++r) {
    std::vector<std::string> row = {names[r]};
    for (std::size_t c = 0; c < 5; ++c) row.push_back(FormatScore(grid[r][c]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

KappaRow KappaRow::Of(const MetricsReport& report, std::string name, std::string model) {
  KappaRow row;
  row.name = std::move(name);
  row.model = std::move(model);
  row.turns = report.turns;
  row.speakers = report.speakers;
  if (report.segmentation) row.segmentation = report.segmentation->kappa;
  if (report.segmentation_wos) row.segmentation_wos = report.segmentation_wos->kappa;
  if (report.emphasis) row.emphasis = report.emphasis->kappa;
  if (report.prototype) row.prototype = report.prototype->kappa;
  return row;
}

Table DatasetTable(std::span<const KappaRow> rows, std::string title) {
  Table t;
  t.title = std::move(title);
  t.header = {"Dataset", "Model", "Segmentation", "Segmentation (wos)", "Emphasis"};
  for (const auto& r : rows) {
    t.rows.push_back({r.name, r.model, FormatScore(r.segmentation),
                      FormatScore(r.segmentation_wos), FormatScore(r.emphasis)});
  }
  return t;
}

Table SubsetTable(std::span<const KappaRow> rows, std::string title) {
  Table t;
  t.title = std::move(title);
  t.header = {"Test Set",     "#Turns",   "#Speakers", "Segmentation", "Segmentation (wos)",
              "Emphasis",     "Prototype"};
  for (const auto& r : rows) {
    t.rows.push_back({r.name, FormatCount(r.turns), FormatCount(r.speakers),
                      FormatScore(r.segmentation), FormatScore(r.segmentation_wos),
                      FormatScore(r.emphasis), FormatScore(r.prototype)});
  }
  return t;
}

Table ModelTable(std::span<const KappaRow> rows, std::string title,
                 std::array<std::string, 4> task_headers) {
  Table t;
  t.title = std::move(title);
  t.header = {"Model", task_headers[0], task_headers[1], task_headers[2], task_headers[3]};
  for (const auto& r : rows) {
    t.rows.push_back({r.name, FormatScore(r.segmentation), FormatScore(r.segmentation_wos),
                      FormatScore(r.emphasis), FormatScore(r.prototype)});
  }
  return t;
}

}  // namespace prosody
