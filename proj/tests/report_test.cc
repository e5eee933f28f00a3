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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prosody/report.h"
#include "reference_render.h"

namespace prosody {
namespace {

using nlohmann::json;

json Fixture() { return testing::LoadReferenceFixture(PROSODY_TEST_DATA_DIR); }

std::string GoldenPath(const std::string& name) {
  return std::string(PROSODY_TEST_DATA_DIR) + "/golden/" + name;
}

// Every rendered reference table equals tests/golden/<name>.
// PROSODY_UPDATE_GOLDEN=1 rewrites the files instead.
TEST(ReportSnapshot, ReferenceTablesMatchGoldenFiles) {
  const auto tables = testing::RenderReferenceTables(Fixture());
  EXPECT_EQ(tables.size(), 10u);
  for (const auto& [name, actual] : tables) {
    if (std::getenv("PROSODY_UPDATE_GOLDEN") != nullptr) {
      std::ofstream(GoldenPath(name)) << actual;
      continue;
    }
    std::ifstream in(GoldenPath(name));
    ASSERT_TRUE(in) << "missing golden file " << name;
    std::stringstream expected;
    expected << in.rdbuf();
    EXPECT_EQ(actual, expected.str()) << name;
  }
}

TEST(Report, MetricTableLayout) {
  MetricGrid grid{};
  grid[0][0] = 0.5;
  const Table t = MetricTable(grid);
  EXPECT_EQ(t.header, (std::vector<std::string>{"Metric", "Segmentation", "Emphasis", "Question",
                                                 "Period", "Comma"}));
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.rows[0][0], "Cohen's Kappa");
  EXPECT_EQ(t.rows[4][0], "Accuracy");
  EXPECT_EQ(t.rows[0][1], "0.500");
  EXPECT_EQ(t.rows[0][2], "-");
}

TEST(Report, CsvQuotesCommas) {
  Table t;
  t.header = {"a", "b"};
  t.rows = {{"x,y", "1"}};
  EXPECT_EQ(t.ToCsv(), "a,b\n\"x,y\",1\n");
}

TEST(Report, GridOfPlacesPrototypeClassesAsQuestionPeriodComma) {
  MetricsReport r;
  PrototypeScores p;
  p.per_class[0].kappa = 0.1;  // continuation
  p.per_class[1].kappa = 0.2;  // conclusion
  p.per_class[2].kappa = 0.3;  // request for response
  r.prototype = p;
  const MetricGrid g = GridOf(r);
  EXPECT_EQ(g[0][2], 0.3);
  EXPECT_EQ(g[0][3], 0.2);
  EXPECT_EQ(g[0][4], 0.1);
  EXPECT_FALSE(g[0][0].has_value());
}

// The annotation table's percentages are recomputed from the counts.
TEST(Report, AnnotationCountsRenderWithComputedFractions) {
  const auto tables = testing::RenderReferenceTables(Fixture());
  const std::string& text = tables.front().second;
  EXPECT_NE(text.find("1,385 (23.33%)"), std::string::npos) << text;
  EXPECT_NE(text.find("4,551 (76.67%)"), std::string::npos);
  EXPECT_NE(text.find("3,246 (54.68%)"), std::string::npos);
  EXPECT_NE(text.find("5,320 (25.34%)"), std::string::npos);
  EXPECT_NE(text.find("12,946 (61.67%)"), std::string::npos);
}

}  // namespace
}  // namespace prosody
