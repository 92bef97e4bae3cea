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
#include <set>

#include "absl/strings/ascii.h"
#include "str_util.h"
#include "prisps/errors.h"
#include "prisps/query.h"

namespace prisps {
namespace {

enum class TokenKind { kIdent, kNumber, kString, kSymbol, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // identifier, symbol, number spelling, unescaped string
  int line = 1;
  int column = 1;
};

std::string Describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kEnd:
      return "end of input";
    case TokenKind::kString:
      return StrCat("string '", t.text, "'");
    default:
      return StrCat("'", t.text, "'");
  }
}

// Thrown internally and converted to a status at the API boundary; never
// escapes ParseQuery.
struct SyntaxError {
  int line;
  int column;
  std::vector<std::string> expected;
  std::string message;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    for (;;) {
      SkipSpaceAndComments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        tokens.push_back(t);
        return tokens;
      }
      const char c = text_[pos_];
      if (absl::ascii_isalpha(c) || c == '_') {
        t.kind = TokenKind::kIdent;
        while (pos_ < text_.size() &&
               (absl::ascii_isalnum(text_[pos_]) || text_[pos_] == '_')) {
          t.text.push_back(Advance());
        }
      } else if (absl::ascii_isdigit(c)) {
        t.kind = TokenKind::kNumber;
        LexNumber(t);
      } else if (c == '\'') {
        t.kind = TokenKind::kString;
        LexString(t);
      } else {
        t.kind = TokenKind::kSymbol;
        LexSymbol(t);
      }
      tokens.push_back(std::move(t));
    }
  }

 private:
  char Peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char Advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (absl::ascii_isspace(c)) {
        Advance();
      } else if (c == '-' && Peek(1) == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else {
        return;
      }
    }
  }

  void LexNumber(Token& t) {
    while (absl::ascii_isdigit(Peek())) t.text.push_back(Advance());
    if (Peek() == '.' && absl::ascii_isdigit(Peek(1))) {
      t.text.push_back(Advance());
      while (absl::ascii_isdigit(Peek())) t.text.push_back(Advance());
    }
    if ((Peek() == 'e' || Peek() == 'E') &&
        (absl::ascii_isdigit(Peek(1)) ||
         ((Peek(1) == '+' || Peek(1) == '-') && absl::ascii_isdigit(Peek(2))))) {
      t.text.push_back(Advance());
      if (Peek() == '+' || Peek() == '-') t.text.push_back(Advance());
      while (absl::ascii_isdigit(Peek())) t.text.push_back(Advance());
    }
  }

  void LexString(Token& t) {
    const int line = line_;
    const int column = column_;
    Advance();  // opening quote
    for (;;) {
      if (pos_ >= text_.size()) {
        throw SyntaxError{line, column, {"'"}, "unterminated string literal"};
      }
      const char c = Advance();
      if (c == '\'') return;
      if (c == '\\') {
        if (pos_ >= text_.size()) {
          throw SyntaxError{line, column, {"'"}, "unterminated string literal"};
        }
        t.text.push_back(Advance());
      } else {
        t.text.push_back(c);
      }
    }
  }

  void LexSymbol(Token& t) {
    static constexpr std::string_view kTwoChar[] = {"->", "==", "!=", "<=", ">="};
    for (std::string_view sym : kTwoChar) {
      if (Peek() == sym[0] && Peek(1) == sym[1]) {
        t.text.push_back(Advance());
        t.text.push_back(Advance());
        return;
      }
    }
    static constexpr std::string_view kOneChar = "()[],;.=<>@-";
    const char c = Peek();
    if (kOneChar.find(c) == std::string_view::npos) {
      throw SyntaxError{line_, column_, {}, StrCat("unexpected character '",
                                                        std::string(1, c), "'")};
    }
    t.text.push_back(Advance());
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  QueryAst Run() {
    QueryAst ast;
    for (;;) {
      if (IsSymbol("@")) {
        ast.annotations.push_back(ParseAnnotation());
      } else if (IsWord("define")) {
        ast.stream_defs.push_back(ParseStreamDef());
      } else {
        break;
      }
    }
    if (!IsWord("from")) Fail({"@", "define", "from"});
    ParsePattern(ast.pattern);
    ParseSelect(ast.select);
    ExpectWord("insert");
    ExpectWord("into");
    ast.insert_into = ExpectIdent("target stream name");
    ExpectSymbol(";");
    if (Peek().kind != TokenKind::kEnd) Fail({"end of input"});
    return ast;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  bool IsSymbol(std::string_view s) const {
    return Peek().kind == TokenKind::kSymbol && Peek().text == s;
  }
  bool IsWord(std::string_view s) const {
    return Peek().kind == TokenKind::kIdent && Peek().text == s;
  }

  [[noreturn]] void Fail(std::vector<std::string> expected) const {
    const Token& t = Peek();
    throw SyntaxError{
        t.line, t.column, expected,
        StrCat("expected one of {", StrJoin(expected, ", "),
                     "} but found ", Describe(t))};
  }

  void ExpectSymbol(std::string_view s) {
    if (!IsSymbol(s)) Fail({std::string(s)});
    Next();
  }
  void ExpectWord(std::string_view s) {
    if (!IsWord(s)) Fail({std::string(s)});
    Next();
  }
  std::string ExpectIdent(std::string_view what) {
    if (Peek().kind != TokenKind::kIdent) Fail({std::string(what)});
    return Next().text;
  }

  Annotation ParseAnnotation() {
    ExpectSymbol("@");
    Annotation a;
    a.key = ExpectIdent("annotation name");
    ExpectSymbol("(");
    if (!IsSymbol(")")) {
      for (;;) {
        std::string key = ExpectIdent("parameter name");
        ExpectSymbol("=");
        if (Peek().kind != TokenKind::kString) Fail({"string literal"});
        a.params.emplace_back(std::move(key), Next().text);
        if (IsSymbol(",")) {
          Next();
          continue;
        }
        break;
      }
    }
    ExpectSymbol(")");
    return a;
  }

  StreamSchema ParseStreamDef() {
    ExpectWord("define");
    ExpectWord("stream");
    StreamSchema schema;
    schema.name = ExpectIdent("stream name");
    ExpectSymbol("(");
    for (;;) {
      FieldDecl decl;
      decl.name = ExpectIdent("field name");
      const Token& type_tok = Peek();
      std::optional<FieldType> type;
      if (type_tok.kind == TokenKind::kIdent) type = ParseFieldType(type_tok.text);
      if (!type.has_value()) Fail({"long", "int", "float", "double", "string"});
      Next();
      decl.type = *type;
      schema.fields.push_back(std::move(decl));
      if (IsSymbol(",")) {
        Next();
        continue;
      }
      break;
    }
    ExpectSymbol(")");
    ExpectSymbol(";");
    return schema;
  }

  void ParsePattern(SequencePatternClause& clause) {
    ExpectWord("from");
    ExpectWord("every");
    clause.bindings.push_back(ParseBinding());
    while (IsSymbol("->")) {
      Next();
      clause.bindings.push_back(ParseBinding());
    }
    if (!IsWord("within")) Fail({"->", "within"});
    Next();
    if (Peek().kind != TokenKind::kNumber ||
        Peek().text.find_first_not_of("0123456789") != std::string::npos) {
      Fail({"integer duration"});
    }
    const Token& amount_tok = Peek();
    int64_t amount = 0;
    const auto res = std::from_chars(amount_tok.text.data(),
                                     amount_tok.text.data() + amount_tok.text.size(),
                                     amount);
    if (res.ec != std::errc()) Fail({"integer duration"});
    Next();
    clause.within.amount = amount;
    static const std::set<std::string_view> kMinutes = {"min", "mins", "minute",
                                                       "minutes"};
    static const std::set<std::string_view> kSeconds = {"sec", "secs", "second",
                                                       "seconds"};
    if (Peek().kind == TokenKind::kIdent && kMinutes.count(Peek().text)) {
      clause.within.unit = TimeUnit::kMin;
    } else if (Peek().kind == TokenKind::kIdent && kSeconds.count(Peek().text)) {
      clause.within.unit = TimeUnit::kSec;
    } else {
      Fail({"min", "sec"});
    }
    Next();
  }

  PatternBinding ParseBinding() {
    PatternBinding b;
    b.name = ExpectIdent("binding name");
    ExpectSymbol("=");
    b.stream = ExpectIdent("stream name");
    ExpectSymbol("[");
    b.filter.terms.push_back(ParseComparison());
    while (IsWord("and") || IsWord("AND")) {
      Next();
      b.filter.terms.push_back(ParseComparison());
    }
    if (!IsSymbol("]")) Fail({"and", "]"});
    Next();
    return b;
  }

  Comparison ParseComparison() {
    Comparison c;
    c.field = ExpectIdent("field name");
    static const std::pair<std::string_view, CompareOp> kOps[] = {
        {"==", CompareOp::kEq}, {"!=", CompareOp::kNe}, {"<", CompareOp::kLt},
        {"<=", CompareOp::kLe}, {">", CompareOp::kGt},  {">=", CompareOp::kGe}};
    bool found = false;
    for (const auto& [sym, op] : kOps) {
      if (IsSymbol(sym)) {
        c.op = op;
        found = true;
        break;
      }
    }
    if (!found) Fail({"==", "!=", "<", "<=", ">", ">="});
    Next();
    c.value = ParseLiteral();
    return c;
  }

  Literal ParseLiteral() {
    if (Peek().kind == TokenKind::kString) return Literal(Next().text);
    std::string spelling;
    if (IsSymbol("-")) {
      Next();
      spelling = "-";
    }
    if (Peek().kind != TokenKind::kNumber) Fail({"number", "string literal"});
    const Token& tok = Peek();
    spelling += tok.text;
    const char* first = spelling.data();
    const char* last = spelling.data() + spelling.size();
    if (spelling.find_first_of(".eE") == std::string::npos) {
      int64_t value = 0;
      const auto res = std::from_chars(first, last, value);
      if (res.ec != std::errc() || res.ptr != last) {
        throw SyntaxError{tok.line, tok.column, {"number"},
                          StrCat("integer literal out of range: ", spelling)};
      }
      Next();
      return Literal(value);
    }
    double value = 0;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
      throw SyntaxError{tok.line, tok.column, {"number"},
                        StrCat("malformed number: ", spelling)};
    }
    Next();
    return Literal(value);
  }

  void ParseSelect(std::vector<SelectItem>& items) {
    if (!IsWord("select")) Fail({"within", "select"});
    Next();
    for (;;) {
      SelectItem item;
      if (IsWord("count") && tokens_[pos_ + 1].kind == TokenKind::kSymbol &&
          tokens_[pos_ + 1].text == "(") {
        Next();
        Next();
        item.kind = SelectItem::Kind::kCount;
        item.binding = ExpectIdent("binding name");
        ExpectSymbol(".");
        item.field = ExpectIdent("field name");
        ExpectSymbol(")");
      } else {
        item.kind = SelectItem::Kind::kField;
        item.binding = ExpectIdent("binding name");
        ExpectSymbol(".");
        item.field = ExpectIdent("field name");
      }
      if (IsWord("as")) {
        Next();
        item.alias = ExpectIdent("alias");
      }
      items.push_back(std::move(item));
      if (IsSymbol(",")) {
        Next();
        continue;
      }
      break;
    }
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

absl::StatusOr<QueryAst> ParseQuery(std::string_view text,
                                    QueryDiagnostic* diagnostic) {
  QueryAst ast;
  try {
    ast = Parser(Lexer(text).Run()).Run();
  } catch (const SyntaxError& e) {
    if (diagnostic != nullptr) {
      diagnostic->kind = QueryDiagnostic::Kind::kParse;
      diagnostic->line = e.line;
      diagnostic->column = e.column;
      diagnostic->expected = e.expected;
      diagnostic->message = e.message;
    }
    return MakeError(absl::StatusCode::kInvalidArgument, "ParseError",
                     StrCat(e.line, ":", e.column, ": ", e.message));
  }
  if (absl::Status st = ValidateQuery(ast); !st.ok()) {
    if (diagnostic != nullptr) {
      diagnostic->kind = QueryDiagnostic::Kind::kSemantic;
      diagnostic->message = std::string(st.message());
    }
    return st;
  }
  if (diagnostic != nullptr) *diagnostic = QueryDiagnostic{};
  return ast;
}

}  // namespace prisps
