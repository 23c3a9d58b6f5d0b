/*
 * Copyright 2026 The satdscan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <set>

#include "satd/error.hpp"
#include "satd/label.hpp"

using satd::Label;

TEST(Label, WireNamesInCanonicalOrder) {
  const std::vector<std::string> expected = {"non-satd",    "code-design", "documentation",
                                             "test",        "requirement", "scientific"};
  for (std::size_t i = 0; i < satd::kLabelCount; ++i) {
    EXPECT_EQ(satd::wire_name(satd::kAllLabels[i]), expected[i]);
    EXPECT_EQ(satd::index_of(satd::kAllLabels[i]), i);
    EXPECT_EQ(satd::label_at(i), satd::kAllLabels[i]);
  }
}

TEST(Label, RoundTrip) {
  for (Label l : satd::kAllLabels) {
    EXPECT_EQ(satd::parse_wire_name(satd::wire_name(l)), l);
    EXPECT_EQ(satd::decode_label(satd::wire_name(l)), l);
  }
}

TEST(Label, ShortNamesDistinct) {
  std::set<std::string_view> seen;
  for (Label l : satd::kAllLabels) seen.insert(satd::short_name(l));
  EXPECT_EQ(seen.size(), satd::kLabelCount);
  EXPECT_EQ(satd::short_name(Label::CodeDesign), "C/D");
  EXPECT_EQ(satd::short_name(Label::NonSatd), "Non-SATD");
}

TEST(Label, UnknownNames) {
  EXPECT_EQ(satd::parse_wire_name("design"), std::nullopt);
  EXPECT_EQ(satd::parse_wire_name("Scientific"), std::nullopt);
  try {
    satd::decode_label("design");
    FAIL() << "expected UnknownLabel";
  } catch (const satd::Error& e) {
    EXPECT_EQ(e.code(), satd::ErrorCode::UnknownLabel);
  }
}
