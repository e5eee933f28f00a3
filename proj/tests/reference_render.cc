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

#include "reference_render.h"

#include <array>
#include <fstream>
#include <optional>

#include "prosody/error.h"
#include "prosody/ingest.h"
#include "prosody/report.h"

namespace prosody::testing {

using nlohmann::json;

namespace {

std::optional<double> Opt(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<double>();
}

std::vector<KappaRow> Rows(const json& list) {
  std::vector<KappaRow> out;
  for (const auto& j : list) {
    KappaRow r;
    r.name = j.at("name").get<std::string>();
    if (j.contains("model")) r.model = j.at("model").get<std::string>();
    if (j.contains("turns")) r.turns = j.at("turns").get<std::size_t>();
    if (j.contains("speakers")) r.speakers = j.at("speakers").get<std::size_t>();
    r.segmentation = Opt(j, "segmentation");
    r.segmentation_wos = Opt(j, "segmentation_wos");
    r.emphasis = Opt(j, "emphasis");
    r.prototype = Opt(j, "prototype");
    out.push_back(r);
  }
  return out;
}

std::string AnnotationTable(const json& a) {
  StatsReport s;
  s.prototype_counts[0] = a["prototypes"]["continuation"];
  s.prototype_counts[1] = a["prototypes"]["conclusion"];
  s.prototype_counts[2] = a["prototypes"]["request_for_response"];
  s.total_ius = a["prototypes"]["total"];
  s.emphasis_counts[0] = a["emphasis"]["primary"];
  s.emphasis_counts[1] = a["emphasis"]["secondary"];
  s.emphasis_counts[2] = a["emphasis"]["none"];
  s.total_words = a["emphasis"]["total"];
  s.ius_per_speaker = {{"Interviewee", a["speakers"]["Interviewee"]},
                       {"Narrator", a["speakers"]["Narrator"]}};
  return s.Render();
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RenderReferenceTables(const json& f) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("annotation_table.txt", AnnotationTable(f.at("annotation")));
  for (const auto& g : f.at("metric_grids")) {
    MetricGrid grid{};
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) grid[r][c] = g.at("rows").at(r).at(c).get<double>();
    }
    const Table t = MetricTable(grid, g.at("title").get<std::string>());
    const std::string stem = "metric_grid_" + g.at("name").get<std::string>();
    out.emplace_back(stem + ".txt", t.ToText());
    out.emplace_back(stem + ".csv", t.ToCsv());
  }
  out.emplace_back("dataset_table.txt",
                   DatasetTable(Rows(f.at("datasets")), "Kappa by dataset").ToText());
  out.emplace_back("subset_table.txt",
                   SubsetTable(Rows(f.at("subsets")), "Kappa by speaker subset").ToText());
  out.emplace_back("model_size_table.txt",
                   ModelTable(Rows(f.at("model_sizes")), "Kappa by model size").ToText());
  const std::array<std::string, 4> headers = {"IU Detect", "IU (wos)", "Emphasis", "Prototype"};
  out.emplace_back("single_task_full.txt",
                   ModelTable(Rows(f.at("single_task").at("full")), "(a) Full train set", headers)
                       .ToText());
  out.emplace_back("single_task_eight_percent.txt",
                   ModelTable(Rows(f.at("single_task").at("eight_percent")), "(b) 8% train set",
                              headers)
                       .ToText());
  return out;
}

json LoadReferenceFixture(const std::string& data_dir) {
  const std::string path = data_dir + "/fixtures/reference_tables.json";
  std::ifstream in(path);
  if (!in) throw InputError("tests", "cannot open " + path);
  return json::parse(in);
}

}  // namespace prosody::testing
