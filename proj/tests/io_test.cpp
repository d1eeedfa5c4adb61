// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skim/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"

namespace skim {
namespace {

std::size_t ParseErrorLine(const std::string& text, bool graph) {
  std::istringstream in(text);
  try {
    if (graph) {
      parse_graph(in);
    } else {
      parse_matrix(in);
    }
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(ParseGraphTest, SmallGraph) {
  std::istringstream in("2 2\n0 1 1.5\n1 0 2\n");
  const auto g = parse_graph(in);
  EXPECT_EQ(g.n, 2u);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[0], (Edge{0, 1, 1.5}));
  EXPECT_EQ(g.edges[1], (Edge{1, 0, 2.0}));
}

TEST(ParseGraphTest, CommentsAndBlankLinesSkipped) {
  std::istringstream in("# header follows\n\n3 1\n  # edge\n2 0 1\n\n");
  EXPECT_EQ(parse_graph(in).edges.size(), 1u);
}

TEST(ParseGraphTest, Errors) {
  EXPECT_EQ(ParseErrorLine("2 2\n0 1 1\n", true), 2u);              // too few edges
  EXPECT_EQ(ParseErrorLine("2 1\n0 1 1\n1 0 1\n", true), 3u);      // too many
  EXPECT_EQ(ParseErrorLine("2 1\n0 x 1\n", true), 2u);              // not a number
  EXPECT_EQ(ParseErrorLine("2 1\n0 5 1\n", true), 2u);              // out of range
  EXPECT_EQ(ParseErrorLine("2 1 7\n0 1 1\n", true), 1u);            // bad header
  EXPECT_EQ(ParseErrorLine("2 1\n0 1\n", true), 2u);                // missing field
  EXPECT_EQ(ParseErrorLine("", true), 1u);
  std::istringstream neg("2 1\n0 1 -1\n");
  try {
    parse_graph(neg);
    FAIL() << "expected an input error";
  } catch (const ParseError&) {
    FAIL() << "non-positive weight is an input error, not a parse error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseMatrixTest, SmallMatrix) {
  std::istringstream in("2 3\n0 2 0.5\n1 0 1\n");
  const auto m = parse_matrix(in);
  EXPECT_EQ(m.n_items(), 2u);
  EXPECT_EQ(m.n_elements(), 3u);
  EXPECT_EQ(m.utility(0, 2), 0.5);
}

TEST(ParseMatrixTest, Errors) {
  EXPECT_EQ(ParseErrorLine("2 2\n0 0 1\n0 0 2\n", false), 3u);  // duplicate
  EXPECT_EQ(ParseErrorLine("2 2\n2 0 1\n", false), 2u);
  EXPECT_EQ(ParseErrorLine("2 2\n0 0 1 4\n", false), 2u);
  std::istringstream zero("2 2\n0 0 0\n");
  EXPECT_THROW(parse_matrix(zero), InputError);
}

TEST(RoundTripTest, RandomGraph) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = testing::random_graph(rng, 40, 3.0, trial % 2 == 0);
    std::stringstream buf;
    write_graph(buf, g);
    const auto back = parse_graph(buf);
    EXPECT_EQ(back.n, g.n);
    EXPECT_EQ(back.edges, g.edges);
  }
}

TEST(RoundTripTest, RandomMatrix) {
  std::mt19937_64 rng(62);
  const auto m = testing::random_matrix(rng, 20, 30, 0.3);
  std::stringstream buf;
  write_matrix(buf, m);
  const auto back = parse_matrix(buf);
  ASSERT_EQ(back.num_entries(), m.num_entries());
  for (const auto& e : m.entries()) EXPECT_EQ(back.utility(e.item, e.element), e.utility);
}

TEST(ParseAlphaTest, Forms) {
  EXPECT_EQ(parse_alpha("inverse")(4.0), 0.25);
  EXPECT_EQ(parse_alpha("threshold:2")(2.0), 1.0);
  EXPECT_EQ(parse_alpha("threshold:2")(3.0), 0.0);
  EXPECT_DOUBLE_EQ(parse_alpha("exp:2")(2.0), std::exp(-1.0));
  EXPECT_THROW(parse_alpha("exp:"), InputError);
  EXPECT_THROW(parse_alpha("exp:-1"), InputError);
  EXPECT_THROW(parse_alpha("cubic"), InputError);
  EXPECT_THROW(parse_alpha("table:/nonexistent/file"), InputError);
}

TEST(ParseAlphaTest, Table) {
  std::istringstream ok("0 1\n2 0.5\n4 0\n");
  const Alpha a(parse_alpha_table(ok));
  EXPECT_EQ(a(3.0), 0.5);
  std::istringstream rising("0 0.5\n1 1\n");
  EXPECT_THROW(parse_alpha_table(rising), ParseError);
  std::istringstream unsorted("2 1\n1 0.5\n");
  EXPECT_THROW(parse_alpha_table(unsorted), ParseError);
}

TEST(EmitResultsTest, HeaderOnlyForEmptySequence) {
  std::ostringstream out;
  emit_results({}, out);
  EXPECT_EQ(out.str(), "rank,item,estimated_gain,exact_gain,cumulative_influence\n");
}

TEST(EmitResultsTest, Rows) {
  std::ostringstream out;
  emit_results({{3, std::nullopt, 5.0, 5.0, false}, {1, 0.1 + 0.2, 1.0 / 3.0, 5.0 + 1.0 / 3.0, false}},
               out);
  EXPECT_EQ(out.str(),
            "rank,item,estimated_gain,exact_gain,cumulative_influence\n"
            "1,3,,5,5\n"
            "2,1,0.3,0.333333333333,5.33333333333\n");
}

}  // namespace
}  // namespace skim
