// Copyright 2026 The qctl Authors
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

#include "qctl/parser.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace qctl {

SyntaxError::SyntaxError(const std::string& msg, int line, int column,
                         std::vector<std::string> expected)
    : std::runtime_error(msg), line(line), column(column),
      expected(std::move(expected)) {}

namespace {

enum class Tok { Ident, Number, Semi, LParen, RParen, Comma, Arrow, StarEq, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

const std::set<std::string> kKeywords = {"skip", "new",   "qbit", "discard",
                                         "meas", "while", "do",   "qcase"};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          id += d;
          take();
        } else {
          break;
        }
      }
      tok_ = {Tok::Ident, id, tok_.line, tok_.column};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
        ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
         (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          text_[pos_ + 1] == '.'))) {
      std::string num;
      auto digits = [&] {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          num += text_[pos_];
          take();
        }
      };
      if (c == '-' || c == '+') {
        num += c;
        take();
      }
      digits();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        num += '.';
        take();
        digits();
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        num += text_[pos_];
        take();
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
          num += text_[pos_];
          take();
        }
        digits();
      }
      tok_ = {Tok::Number, num, tok_.line, tok_.column};
      return;
    }
    switch (c) {
      case ';':
        take();
        tok_ = {Tok::Semi, ";", tok_.line, tok_.column};
        return;
      case '(':
        take();
        tok_ = {Tok::LParen, "(", tok_.line, tok_.column};
        return;
      case ')':
        take();
        tok_ = {Tok::RParen, ")", tok_.line, tok_.column};
        return;
      case ',':
        take();
        tok_ = {Tok::Comma, ",", tok_.line, tok_.column};
        return;
      case '-':
        take();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          take();
          tok_ = {Tok::Arrow, "->", tok_.line, tok_.column};
          return;
        }
        throw SyntaxError("stray '-'", tok_.line, tok_.column, {"->"});
      case '*':
        take();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          take();
          tok_ = {Tok::StarEq, "*=", tok_.line, tok_.column};
          return;
        }
        throw SyntaxError("stray '*'", tok_.line, tok_.column, {"*="});
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'",
                          line_, col_, {});
    }
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else {
        break;
      }
    }
  }

  void take() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_{Tok::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  StmtPtr parse_all() {
    StmtPtr s = parse_stmt();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End)
      throw SyntaxError("trailing input after statement", t.line, t.column,
                        {"end of input"});
    return s;
  }

 private:
  [[noreturn]] void fail(const Token& t, std::vector<std::string> expected) {
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError("unexpected " + got, t.line, t.column,
                      std::move(expected));
  }

  Token expect(Tok kind, const std::string& what) {
    Token t = lex_.next();
    if (t.kind != kind) fail(t, {what});
    return t;
  }

  VarName expect_var() {
    Token t = lex_.next();
    if (t.kind != Tok::Ident || kKeywords.count(t.text))
      fail(t, {"variable name"});
    return t.text;
  }

  void expect_branch_label(const char* label) {
    Token t = lex_.next();
    if (t.kind != Tok::Number || t.text != label) fail(t, {label});
    expect(Tok::Arrow, "->");
  }

  StmtPtr parse_stmt() {
    int line = lex_.peek().line, column = lex_.peek().column;
    StmtPtr a = parse_atom();
    if (lex_.peek().kind == Tok::Semi) {
      lex_.next();
      return with_position(seq(a, parse_stmt()), line, column);
    }
    return a;
  }

  StmtPtr parse_atom() {
    int line = lex_.peek().line, column = lex_.peek().column;
    StmtPtr a = parse_atom_inner();
    return with_position(a, line, column);
  }

  StmtPtr parse_atom_inner() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.next();
      StmtPtr s = parse_stmt();
      expect(Tok::RParen, ")");
      return s;
    }
    if (t.kind != Tok::Ident)
      fail(lex_.next(), {"skip", "new", "discard", "meas", "while", "qcase",
                         "variable name", "("});
    if (t.text == "skip") {
      lex_.next();
      return skip_stmt();
    }
    if (t.text == "new") {
      lex_.next();
      Token kw = lex_.next();
      if (kw.kind != Tok::Ident || kw.text != "qbit") fail(kw, {"qbit"});
      return new_qbit(expect_var());
    }
    if (t.text == "discard") {
      lex_.next();
      return discard(expect_var());
    }
    if (t.text == "meas" || t.text == "qcase") {
      bool is_meas = t.text == "meas";
      lex_.next();
      VarName q = expect_var();
      expect(Tok::LParen, "(");
      expect_branch_label("0");
      StmtPtr s0 = parse_stmt();
      expect(Tok::Comma, ",");
      expect_branch_label("1");
      StmtPtr s1 = parse_stmt();
      expect(Tok::RParen, ")");
      return is_meas ? meas(q, s0, s1) : qcase(q, s0, s1);
    }
    if (t.text == "while") {
      lex_.next();
      VarName q = expect_var();
      Token kw = lex_.next();
      if (kw.kind != Tok::Ident || kw.text != "do") fail(kw, {"do"});
      return while_loop(q, parse_atom());
    }
    // var *= gate
    VarName q = expect_var();
    expect(Tok::StarEq, "*=");
    return unitary(q, parse_gate());
  }

  Gate1 parse_gate() {
    Token t = lex_.next();
    if (t.kind != Tok::Ident) fail(t, {"gate name", "U"});
    if (t.text == "U" && lex_.peek().kind == Tok::LParen) {
      lex_.next();
      double v[8];
      for (int i = 0; i < 8; ++i) {
        if (i > 0) expect(Tok::Comma, ",");
        Token n = lex_.next();
        if (n.kind != Tok::Number) fail(n, {"real literal"});
        v[i] = std::strtod(n.text.c_str(), nullptr);
      }
      expect(Tok::RParen, ")");
      Gate1 g;
      g.mat << std::complex<double>(v[0], v[1]), std::complex<double>(v[2], v[3]),
          std::complex<double>(v[4], v[5]), std::complex<double>(v[6], v[7]);
      if (!is_unitary_gate(g.mat))
        throw SyntaxError("gate literal is not unitary", t.line, t.column, {});
      g.name = gate_name_of(g.mat);
      return g;
    }
    try {
      return named_gate(t.text);
    } catch (const std::out_of_range&) {
      fail(t, {"I", "X", "Y", "Z", "H", "T", "S", "U(...)"});
    }
  }

  Lexer lex_;
};

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string gate_text(const Gate1& g) {
  std::string n = g.name.empty() ? gate_name_of(g.mat) : g.name;
  if (!n.empty()) return n;
  std::string out = "U(";
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      if (r || c) out += ", ";
      out += fmt_real(g.mat(r, c).real()) + ", " + fmt_real(g.mat(r, c).imag());
    }
  return out + ")";
}

void print(const Statement& s, std::string& out, bool atom_position) {
  switch (s.kind) {
    case StmtKind::Skip:
      out += "skip";
      return;
    case StmtKind::NewQbit:
      out += "new qbit " + s.var;
      return;
    case StmtKind::Discard:
      out += "discard " + s.var;
      return;
    case StmtKind::Unitary:
      out += s.var + " *= " + gate_text(s.gate);
      return;
    case StmtKind::Seq:
      if (atom_position) {
        out += "(";
        print(s, out, false);
        out += ")";
        return;
      }
      print(*s.s0, out, true);
      out += "; ";
      print(*s.s1, out, false);
      return;
    case StmtKind::Meas:
    case StmtKind::QCase:
      out += (s.kind == StmtKind::Meas ? "meas " : "qcase ") + s.var + " (0 -> ";
      print(*s.s0, out, false);
      out += ", 1 -> ";
      print(*s.s1, out, false);
      out += ")";
      return;
    case StmtKind::While:
      out += "while " + s.var + " do ";
      print(*s.s0, out, true);
      return;
    case StmtKind::Hole:
      out += "[ " + to_string(s.hole_in) + " -> " + to_string(s.hole_out) + " ]";
      return;
  }
}

}  // namespace

StmtPtr parse(const std::string& text) { return Parser(text).parse_all(); }

std::string pretty(const Statement& s) {
  std::string out;
  print(s, out, false);
  return out;
}

}  // namespace qctl
