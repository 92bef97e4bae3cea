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

#include <charconv>

#include "str_util.h"
#include "prisps/query.h"

namespace prisps {
namespace {

std::string QuoteString(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string PrintLiteral(const Literal& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return QuoteString(*s);
  if (const auto* i = std::get_if<int64_t>(&value)) return StrCat(*i);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(value));
  std::string out(buf, res.ptr);
  // Keep the float/integer distinction visible to the lexer.
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string PrintStreamDef(const StreamSchema& schema) {
  std::string out = StrCat("define stream ", schema.name, " (");
  for (size_t i = 0; i < schema.fields.size(); ++i) {
    if (i > 0) out += ", ";
    StrAppend(&out, schema.fields[i].name, " ",
                    FieldTypeName(schema.fields[i].type));
  }
  out += ");";
  return out;
}

std::string PrintSelectItem(const SelectItem& item) {
  std::string out =
      item.kind == SelectItem::Kind::kCount
          ? StrCat("count(", item.binding, ".", item.field, ")")
          : StrCat(item.binding, ".", item.field);
  if (item.alias.has_value()) StrAppend(&out, " as ", *item.alias);
  return out;
}

}  // namespace

std::string PrintPredicate(const Predicate& predicate) {
  std::string out;
  for (size_t i = 0; i < predicate.terms.size(); ++i) {
    if (i > 0) out += " and ";
    const Comparison& c = predicate.terms[i];
    StrAppend(&out, c.field, " ", CompareOpSymbol(c.op), " ",
                    PrintLiteral(c.value));
  }
  return out;
}

std::string PrintAnnotation(const Annotation& annotation) {
  std::string out = StrCat("@", annotation.key, "(");
  for (size_t i = 0; i < annotation.params.size(); ++i) {
    if (i > 0) out += ", ";
    StrAppend(&out, annotation.params[i].first, "=",
                    QuoteString(annotation.params[i].second));
  }
  out += ")";
  return out;
}

std::string PrintQuery(const QueryAst& ast) {
  std::string out;
  for (const Annotation& a : ast.annotations) {
    StrAppend(&out, PrintAnnotation(a), "\n");
  }
  for (const StreamSchema& def : ast.stream_defs) {
    StrAppend(&out, PrintStreamDef(def), "\n");
  }
  const auto& bindings = ast.pattern.bindings;
  for (size_t i = 0; i < bindings.size(); ++i) {
    StrAppend(&out, i == 0 ? "from every " : "     -> ", bindings[i].name,
                    "=", bindings[i].stream, "[ ",
                    PrintPredicate(bindings[i].filter), " ]\n");
  }
  StrAppend(&out, "    within ", ast.pattern.within.amount,
                  ast.pattern.within.unit == TimeUnit::kMin ? " min" : " sec",
                  "\n");
  out += "select ";
  for (size_t i = 0; i < ast.select.size(); ++i) {
    if (i > 0) out += ", ";
    out += PrintSelectItem(ast.select[i]);
  }
  StrAppend(&out, "\ninsert into ", ast.insert_into, ";\n");
  return out;
}

}  // namespace prisps
