// Copyright 2026 The PriSPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "oracles/test_util.h"
#include "prisps/fixtures.h"
#include "prisps/query.h"
#include "prisps/random.h"

namespace prisps {
namespace {

using ::prisps::testing::KindOf;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(ParseQueryTest, ParsesMedicineQuery) {
  ASSERT_OK_AND_ASSIGN(QueryAst ast, ParseQuery(BobPrivateQueryText()));
  ASSERT_EQ(ast.stream_defs.size(), 1u);
  EXPECT_EQ(ast.stream_defs[0].name, "TakeMedicineStr");
  EXPECT_EQ(ast.stream_defs[0].fields.size(), 4u);
  ASSERT_EQ(ast.pattern.bindings.size(), 3u);
  EXPECT_EQ(ast.pattern.bindings[2].name, "e3");
  EXPECT_EQ(ast.pattern.bindings[2].filter.terms[0].value, Literal(std::string("lay down")));
  EXPECT_EQ(ast.pattern.within, (Duration{2, TimeUnit::kMin}));
  ASSERT_EQ(ast.select.size(), 4u);
  EXPECT_EQ(ast.select[0].kind, SelectItem::Kind::kField);
  EXPECT_EQ(ast.select[1].kind, SelectItem::Kind::kCount);
  EXPECT_EQ(ast.select[1].OutputName(), "cnt_swallow");
  EXPECT_EQ(ast.insert_into, "TakeMedicinePattern");
}

TEST(ParseQueryTest, AnnotationsAndLiterals) {
  const std::string text =
      "@sink(publisher='Bob', note='it\\'s')\n"
      "define stream S (ts long, v float, n int, s string);\n"
      "from every a=S[ v >= -1.5 and n != 3 and s == 'x' ]\n"
      "  -> b=S[ user_activity == 'y' ] within 30 sec\n"
      "select count(a.n) as c, b.ts insert into Out;";
  ASSERT_OK_AND_ASSIGN(QueryAst ast, ParseQuery(text));
  ASSERT_EQ(ast.annotations.size(), 1u);
  EXPECT_EQ(*ast.annotations[0].Param("publisher"), "Bob");
  EXPECT_EQ(*ast.annotations[0].Param("note"), "it's");
  EXPECT_EQ(ast.pattern.bindings[0].filter.terms[0].value, Literal(-1.5));
  EXPECT_EQ(ast.pattern.bindings[0].filter.terms[1].value, Literal(int64_t{3}));
  EXPECT_EQ(ast.pattern.within.Seconds(), 30);
}

TEST(ParseQueryTest, ReportsPositionAndExpectedTokens) {
  QueryDiagnostic diag;
  const absl::Status st =
      ParseQuery("define stream S (ts long);\nselect", &diag).status();
  EXPECT_EQ(KindOf(st), "ParseError");
  EXPECT_EQ(diag.kind, QueryDiagnostic::Kind::kParse);
  EXPECT_EQ(diag.line, 2);
  EXPECT_EQ(diag.column, 1);
  EXPECT_THAT(diag.expected, ::testing::Contains("from"));
}

TEST(ParseQueryTest, SemanticErrors) {
  const std::string head = "define stream S (ts long, s string);\n";
  const std::vector<std::string> bad = {
      "from every a=T[ ts > 1 ] within 1 min select a.ts insert into O;",
      "from every a=S[ nope > 1 ] within 1 min select a.ts insert into O;",
      "from every a=S[ ts > 1 ] -> a=S[ ts > 2 ] within 1 min select a.ts insert into O;",
      "from every a=S[ s > 1 ] within 1 min select a.ts insert into O;",
      "from every a=S[ ts > 1 ] within 0 min select a.ts insert into O;",
      "from every a=S[ ts > 1 ] within 1 min select b.ts insert into O;",
  };
  for (const std::string& body : bad) {
    QueryDiagnostic diag;
    const absl::Status st = ParseQuery(head + body, &diag).status();
    EXPECT_EQ(KindOf(st), "SemanticError") << body;
    EXPECT_EQ(diag.kind, QueryDiagnostic::Kind::kSemantic);
  }
}

TEST(PrintQueryTest, CanonicalFormIsAFixedPoint) {
  ASSERT_OK_AND_ASSIGN(QueryAst ast, ParseQuery(BobPrivateQueryText()));
  const std::string printed = PrintQuery(ast);
  ASSERT_OK_AND_ASSIGN(QueryAst again, ParseQuery(printed));
  EXPECT_EQ(again, ast);
  EXPECT_EQ(PrintQuery(again), printed);
  EXPECT_THAT(printed, HasSubstr("from every e1=TakeMedicineStr[ user_activity == 'swallow' ]\n"));
  EXPECT_THAT(printed, HasSubstr("    within 2 min\n"));
}

TEST(PrintQueryTest, FloatsStayFloats) {
  ASSERT_OK_AND_ASSIGN(
      QueryAst ast,
      ParseQuery("define stream S (v float);\n"
                 "from every a=S[ v == 2.0 ] within 1 min select a.v insert into O;"));
  EXPECT_THAT(PrintQuery(ast), HasSubstr("v == 2.0"));
  ASSERT_OK_AND_ASSIGN(QueryAst again, ParseQuery(PrintQuery(ast)));
  EXPECT_EQ(again, ast);
}

// ---- Random ASTs ----------------------------------------------------------

std::string Ident(Rng& rng, const std::string& prefix) {
  return prefix + std::to_string(rng.UniformInt(0, 999));
}

std::string RandomText(Rng& rng) {
  static const std::string kChars = "ab z'\\_-.9";
  std::string s;
  const int64_t len = rng.UniformInt(0, 8);
  for (int64_t i = 0; i < len; ++i) s.push_back(kChars[rng.UniformInt(0, kChars.size() - 1)]);
  return s;
}

Literal RandomLiteralFor(Rng& rng, FieldType type) {
  switch (type) {
    case FieldType::kString:
      return RandomText(rng);
    case FieldType::kFloat:
      if (rng.Bernoulli(0.3)) return rng.UniformInt(-50, 50);
      return (rng.UniformOpen01() - 0.5) * std::pow(10.0, rng.UniformInt(-8, 8));
    default:
      return rng.UniformInt(-1'000'000'000'000LL, 1'000'000'000'000LL);
  }
}

QueryAst RandomAst(Rng& rng) {
  QueryAst ast;
  const int64_t n_ann = rng.UniformInt(0, 2);
  for (int64_t i = 0; i < n_ann; ++i) {
    Annotation a{"ann" + std::to_string(i), {}};
    const int64_t n_params = rng.UniformInt(0, 2);
    for (int64_t p = 0; p < n_params; ++p) {
      a.params.emplace_back("p" + std::to_string(p), RandomText(rng));
    }
    ast.annotations.push_back(a);
  }
  const int64_t n_streams = rng.UniformInt(1, 2);
  const FieldType kTypes[] = {FieldType::kLong, FieldType::kInt, FieldType::kFloat,
                              FieldType::kString};
  for (int64_t i = 0; i < n_streams; ++i) {
    StreamSchema s{"Str" + std::to_string(i), {}};
    const int64_t n_fields = rng.UniformInt(1, 4);
    for (int64_t f = 0; f < n_fields; ++f) {
      s.fields.push_back({"f" + std::to_string(f), kTypes[rng.UniformInt(0, 3)]});
    }
    ast.stream_defs.push_back(s);
  }
  const int64_t n_bind = rng.UniformInt(1, 4);
  for (int64_t b = 0; b < n_bind; ++b) {
    PatternBinding pb;
    pb.name = "e" + std::to_string(b + 1);
    const StreamSchema& s = ast.stream_defs[rng.UniformInt(0, n_streams - 1)];
    pb.stream = s.name;
    if (rng.Bernoulli(0.7)) {
      pb.filter.terms.push_back({"user_activity", CompareOp::kEq, RandomText(rng)});
    }
    const int64_t extra = rng.UniformInt(pb.filter.terms.empty() ? 1 : 0, 2);
    for (int64_t t = 0; t < extra; ++t) {
      const FieldDecl& f = s.fields[rng.UniformInt(0, s.fields.size() - 1)];
      pb.filter.terms.push_back({f.name, static_cast<CompareOp>(rng.UniformInt(0, 5)),
                                 RandomLiteralFor(rng, f.type)});
    }
    ast.pattern.bindings.push_back(pb);
  }
  ast.pattern.within = {rng.UniformInt(1, 600), rng.Bernoulli(0.5) ? TimeUnit::kMin
                                                                    : TimeUnit::kSec};
  const int64_t n_sel = rng.UniformInt(1, 3);
  for (int64_t i = 0; i < n_sel; ++i) {
    const PatternBinding& pb = ast.pattern.bindings[rng.UniformInt(0, n_bind - 1)];
    const StreamSchema* s = ast.FindStream(pb.stream);
    SelectItem item;
    item.kind = rng.Bernoulli(0.4) ? SelectItem::Kind::kCount : SelectItem::Kind::kField;
    item.binding = pb.name;
    item.field = rng.Bernoulli(0.3) ? "user_activity"
                                    : s->fields[rng.UniformInt(0, s->fields.size() - 1)].name;
    if (rng.Bernoulli(0.5)) item.alias = Ident(rng, "out_");
    ast.select.push_back(item);
  }
  ast.insert_into = Ident(rng, "Target");
  return ast;
}

TEST(QueryRoundTripProperty, FiveHundredRandomAsts) {
  Rng rng(20260419);
  for (int i = 0; i < 500; ++i) {
    const QueryAst ast = RandomAst(rng);
    ASSERT_OK(ValidateQuery(ast));
    const std::string text = PrintQuery(ast);
    ASSERT_OK_AND_ASSIGN(QueryAst parsed, ParseQuery(text));
    ASSERT_EQ(parsed, ast) << text;
    ASSERT_EQ(PrintQuery(parsed), text);
  }
}

TEST(ResolveFieldTypeTest, ReservedFields) {
  const StreamSchema s{"S", {{"ts", FieldType::kLong}}};
  EXPECT_EQ(ResolveFieldType(s, "user_activity"), FieldType::kString);
  EXPECT_EQ(ResolveFieldType(s, "ts"), FieldType::kLong);
  EXPECT_FALSE(ResolveFieldType(s, "nope").has_value());
}

TEST(ValidateQueryTest, RejectsReservedIdentifiers) {
  ASSERT_OK_AND_ASSIGN(QueryAst ast, ParseQuery(BobPublicQueryText()));
  ast.insert_into = "select";
  EXPECT_EQ(KindOf(ValidateQuery(ast)), "SemanticError");
}

}  // namespace
}  // namespace prisps
