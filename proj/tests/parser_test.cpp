// Copyright 2026 The DVP Authors.
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

#include "dvp/gog/parser.hpp"

#include <gtest/gtest.h>

#include "dvp/error.hpp"
#include "fixtures.hpp"

namespace dvp::gog {
namespace {

std::string error_of(std::string_view source, ErrorKind expected = ErrorKind::kParse) {
  try {
    parse(source);
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.kind(), expected) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "parsed: " << source;
  return {};
}

TEST(Parse, BirthDeathListing) {
  const auto statements = parse(testing::kBirthDeathListing);
  ASSERT_EQ(statements.size(), 5u);
  int elements = 0;
  int guides = 0;
  for (const auto& s : statements) (s.kind == StatementKind::kElement ? elements : guides)++;
  EXPECT_EQ(elements, 2);
  EXPECT_EQ(guides, 3);

  const CallExpr& point = statements[0].call;
  EXPECT_EQ(point.dotted(), "point");
  ASSERT_EQ(point.args.size(), 3u);

  const auto* position = point.args[0].as<CallExpr>();
  ASSERT_NE(position, nullptr);
  EXPECT_EQ(position->dotted(), "position");
  ASSERT_EQ(position->args.size(), 1u);
  const auto* cross = position->args[0].as<CrossExpr>();
  ASSERT_NE(cross, nullptr);
  EXPECT_EQ(cross->left->as<Identifier>()->name, "birth");
  EXPECT_EQ(cross->right->as<Identifier>()->name, "death");

  EXPECT_EQ(point.args[1].as<CallExpr>()->dotted(), "size");
  EXPECT_EQ(point.args[1].as<CallExpr>()->args[0].as<Identifier>()->name, "zero");
  EXPECT_EQ(point.args[2].as<CallExpr>()->args[0].as<Identifier>()->name, "country");

  const CallExpr& contour = statements[1].call;
  const auto* density = contour.args[0].as<CallExpr>()->args[0].as<CallExpr>();
  ASSERT_NE(density, nullptr);
  EXPECT_EQ(density->dotted(), "smooth.density.kernel.epanechnikov.joint");
  EXPECT_EQ(contour.args[1].as<CallExpr>()->dotted(), "color.hue");
  EXPECT_TRUE(contour.args[1].as<CallExpr>()->args.empty());

  const CallExpr& line = statements[2].call;
  EXPECT_EQ(line.dotted(), "form.line");
  const auto& ends = line.args[0].as<CallExpr>()->args;
  ASSERT_EQ(ends.size(), 2u);
  EXPECT_EQ(*ends[0].as<TupleLit>(), (TupleLit{0, 0}));
  EXPECT_EQ(*ends[1].as<TupleLit>(), (TupleLit{30, 30}));
  EXPECT_EQ(line.args[1].as<CallExpr>()->args[0].as<StringLit>()->value,
            "Zero Population Growth");

  EXPECT_EQ(statements[3].call.args[0].as<CallExpr>()->args[0].as<NumberLit>()->value, 1.0);
  EXPECT_EQ(statements[4].line, 5u);
}

TEST(Parse, EmptySourceHasNoStatements) {
  EXPECT_TRUE(parse("").empty());
  EXPECT_TRUE(parse("  # only a comment\n").empty());
}

TEST(Parse, UnbalancedParenFailsAtEndOfInput) {
  const std::string message = error_of("ELEMENT: point(");
  EXPECT_NE(message.find("end of input"), std::string::npos) << message;
  try {
    parse("ELEMENT: point(");
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 16u);
  }
}

TEST(Parse, ErrorsListExpectedTokens) {
  const std::string message = error_of("ELEMENT point(a)");
  EXPECT_NE(message.find("expected"), std::string::npos) << message;
  EXPECT_NE(message.find("':'"), std::string::npos) << message;
}

TEST(Parse, ReservedAndUnknownKeywords) {
  EXPECT_NE(error_of("DATA: x(y)").find("reserved"), std::string::npos);
  EXPECT_NE(error_of("SCALE: linear(dim(1))").find("reserved"), std::string::npos);
  EXPECT_NE(error_of("COORD: rect(dim(1))").find("reserved"), std::string::npos);
  EXPECT_NE(error_of("point(a)").find("statement keyword"), std::string::npos);
}

TEST(Parse, CrossOperandsMustBeNamesOrCalls) {
  error_of("ELEMENT: point(position(\"a\"*b))");
  error_of("ELEMENT: point(position(1*b))");
  EXPECT_NO_THROW(parse("ELEMENT: point(position(f(a)*b))"));
}

TEST(Parse, LexErrorsPassThrough) {
  error_of("ELEMENT: point(\"x)", ErrorKind::kLex);
}

TEST(Parse, PrettyPrintIsIdempotent) {
  const char* scripts[] = {
      testing::kBirthDeathListing.data(),
      "GUIDE : axis(dim(1), label(\"X \\\"quoted\\\"\"))",
      "ELEMENT: line(position(a*b), size(2.5), color(c))\nGUIDE: form.line(position((-1,0.5),(1e3,2)))",
      "ELEMENT: point(position(f.g(a, -2)*h()))",
  };
  for (const char* script : scripts) {
    const auto first = parse(script);
    const std::string printed = to_source(first);
    const auto second = parse(printed);
    EXPECT_EQ(first, second) << printed;
    EXPECT_EQ(to_source(second), printed);
  }
}

TEST(Parse, CanonicalForm) {
  const auto statements = parse(testing::kBirthDeathListing);
  EXPECT_EQ(to_source(statements[0]),
            "ELEMENT: point(position(birth*death), size(zero), label(country))");
  EXPECT_EQ(to_source(statements[2]),
            "GUIDE: form.line(position((0,0), (30,30)), label(\"Zero Population Growth\"))");
}

}  // namespace
}  // namespace dvp::gog
