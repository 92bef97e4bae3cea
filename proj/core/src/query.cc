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

#include "prisps/query.h"

#include <set>

#include "absl/strings/ascii.h"
#include "str_util.h"
#include "prisps/errors.h"

namespace prisps {
namespace {

absl::Status Semantic(std::string_view detail) {
  return MakeError(absl::StatusCode::kInvalidArgument, "SemanticError", detail);
}

// Words the parser treats as keywords and therefore cannot appear as names.
const std::set<std::string_view>& ReservedWords() {
  static const auto* words = new std::set<std::string_view>{
      "define", "stream", "from", "every", "within", "select",
      "as",     "count",  "insert", "into", "and",   "AND"};
  return *words;
}

bool IsIdentifier(std::string_view name) {
  if (name.empty()) return false;
  if (!absl::ascii_isalpha(name[0]) && name[0] != '_') return false;
  for (char c : name) {
    if (!absl::ascii_isalnum(c) && c != '_') return false;
  }
  return ReservedWords().count(name) == 0;
}

absl::Status CheckIdentifier(std::string_view name, std::string_view what) {
  if (!IsIdentifier(name)) {
    return Semantic(StrCat("invalid ", what, " name '", name, "'"));
  }
  return absl::OkStatus();
}

}  // namespace

std::string_view CompareOpSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq:
      return "==";
    case CompareOp::kNe:
      return "!=";
    case CompareOp::kLt:
      return "<";
    case CompareOp::kLe:
      return "<=";
    case CompareOp::kGt:
      return ">";
    case CompareOp::kGe:
      return ">=";
  }
  return "==";
}

std::string SelectItem::OutputName() const {
  return alias.has_value() ? *alias : field;
}

const std::string* Annotation::Param(std::string_view name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return &value;
  }
  return nullptr;
}

const StreamSchema* QueryAst::FindStream(std::string_view name) const {
  for (const StreamSchema& def : stream_defs) {
    if (def.name == name) return &def;
  }
  return nullptr;
}

const PatternBinding* QueryAst::FindBinding(std::string_view name) const {
  for (const PatternBinding& b : pattern.bindings) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

const Annotation* QueryAst::FindAnnotation(std::string_view key) const {
  for (const Annotation& a : annotations) {
    if (a.key == key) return &a;
  }
  return nullptr;
}

std::optional<FieldType> ResolveFieldType(const StreamSchema& schema,
                                          std::string_view field) {
  if (const FieldDecl* decl = schema.Find(field)) return decl->type;
  if (field == kActivityField) return FieldType::kString;
  if (field == kDayField || field == kSlotField) return FieldType::kLong;
  return std::nullopt;
}

bool LiteralCompatible(const Literal& value, FieldType type) {
  const bool is_string = std::holds_alternative<std::string>(value);
  return is_string == (type == FieldType::kString);
}

absl::Status ValidateQuery(const QueryAst& ast) {
  std::set<std::string_view> stream_names;
  for (const StreamSchema& def : ast.stream_defs) {
    PRISPS_RETURN_IF_ERROR(CheckIdentifier(def.name, "stream"));
    if (!stream_names.insert(def.name).second) {
      return Semantic(StrCat("stream '", def.name, "' defined twice"));
    }
    if (def.fields.empty()) {
      return Semantic(StrCat("stream '", def.name, "' has no fields"));
    }
    std::set<std::string_view> field_names;
    for (const FieldDecl& f : def.fields) {
      PRISPS_RETURN_IF_ERROR(CheckIdentifier(f.name, "field"));
      if (!field_names.insert(f.name).second) {
        return Semantic(StrCat("field '", f.name, "' declared twice in '",
                                     def.name, "'"));
      }
    }
  }
  for (const Annotation& a : ast.annotations) {
    PRISPS_RETURN_IF_ERROR(CheckIdentifier(a.key, "annotation"));
    for (const auto& param : a.params) {
      PRISPS_RETURN_IF_ERROR(CheckIdentifier(param.first, "annotation parameter"));
    }
  }
  if (ast.pattern.bindings.empty()) {
    return Semantic("pattern has no bindings");
  }
  std::set<std::string_view> binding_names;
  for (const PatternBinding& b : ast.pattern.bindings) {
    PRISPS_RETURN_IF_ERROR(CheckIdentifier(b.name, "binding"));
    if (!binding_names.insert(b.name).second) {
      return Semantic(StrCat("duplicate binding '", b.name, "'"));
    }
    const StreamSchema* schema = ast.FindStream(b.stream);
    if (schema == nullptr) {
      return Semantic(StrCat("unknown stream '", b.stream, "' in binding '",
                                   b.name, "'"));
    }
    if (b.filter.terms.empty()) {
      return Semantic(StrCat("binding '", b.name, "' has an empty filter"));
    }
    for (const Comparison& c : b.filter.terms) {
      const std::optional<FieldType> type = ResolveFieldType(*schema, c.field);
      if (!type.has_value()) {
        return Semantic(StrCat("unknown field '", c.field, "' on stream '",
                                     b.stream, "'"));
      }
      if (!LiteralCompatible(c.value, *type)) {
        return Semantic(StrCat("literal for '", c.field,
                                     "' is not compatible with type ",
                                     FieldTypeName(*type)));
      }
    }
  }
  if (ast.pattern.within.amount <= 0) {
    return Semantic("within duration must be positive");
  }
  if (ast.select.empty()) return Semantic("empty select list");
  for (const SelectItem& item : ast.select) {
    const PatternBinding* b = ast.FindBinding(item.binding);
    if (b == nullptr) {
      return Semantic(StrCat("select references unknown binding '",
                                   item.binding, "'"));
    }
    if (!ResolveFieldType(*ast.FindStream(b->stream), item.field).has_value()) {
      return Semantic(StrCat("unknown field '", item.field,
                                   "' in select item on '", item.binding, "'"));
    }
    if (item.alias.has_value()) {
      PRISPS_RETURN_IF_ERROR(CheckIdentifier(*item.alias, "alias"));
    }
  }
  PRISPS_RETURN_IF_ERROR(CheckIdentifier(ast.insert_into, "target stream"));
  return absl::OkStatus();
}

}  // namespace prisps
