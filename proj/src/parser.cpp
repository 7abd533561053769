#include "indsem/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "indsem/error.hpp"

namespace indsem {

namespace {

enum class Tok { Name, Quoted, Var, LParen, RParen, Comma, Neck, End, Directive, Eof };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  Token next() {
    skip_layout();
    Token t{Tok::Eof, "", line_, col_};
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    auto is_ident = [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    };
    if (c == '#' && at_line_start_) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      std::string_view word = src_.substr(start, pos_ - start);
      while (!word.empty() && std::isspace(static_cast<unsigned char>(word.back())))
        word.remove_suffix(1);
      if (word != "#object") fail(t, "unknown directive '" + std::string(word) + "'");
      t.kind = Tok::Directive;
      t.text = std::string(word);
      return t;
    }
    at_line_start_ = false;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Name;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        t.text += advance();
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::Name;
      while (pos_ < src_.size() && is_ident(src_[pos_])) t.text += advance();
      return t;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Var;
      while (pos_ < src_.size() && is_ident(src_[pos_])) t.text += advance();
      return t;
    }
    if (c == '\'') {
      advance();
      t.kind = Tok::Quoted;
      while (true) {
        if (pos_ >= src_.size()) fail(t, "unterminated quoted atom");
        char q = advance();
        if (q == '\\') {
          if (pos_ >= src_.size()) fail(t, "unterminated quoted atom");
          t.text += advance();
        } else if (q == '\'') {
          if (pos_ < src_.size() && src_[pos_] == '\'') {
            t.text += advance();
          } else {
            break;
          }
        } else {
          t.text += q;
        }
      }
      if (t.text.empty()) fail(t, "empty quoted atom");
      return t;
    }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case ',': t.kind = Tok::Comma; return t;
      case ':':
        if (pos_ < src_.size() && src_[pos_] == '-') {
          advance();
          t.kind = Tok::Neck;
          return t;
        }
        break;
      case '.':
        if (pos_ >= src_.size() || std::isspace(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '%') {
          t.kind = Tok::End;
          return t;
        }
        break;
      default:
        break;
    }
    fail(t, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw Error(ErrorKind::Syntax, file_ + ":" + std::to_string(at.line) + ":" +
                                       std::to_string(at.col) + ": " + message);
  }

  const std::string& file() const { return file_; }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
      at_line_start_ = true;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_layout() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  bool at_line_start_ = true;
};

class Parser {
 public:
  Parser(std::string_view src, std::string file) : lex_(src, std::move(file)) { shift(); }

  Program program() {
    Program out;
    bool object = false;
    while (tok_.kind != Tok::Eof) {
      if (tok_.kind == Tok::Directive) {
        object = true;
        shift();
        continue;
      }
      RuleTemplate rule = clause();
      (object ? out.object_templates : out.templates).push_back(std::move(rule));
    }
    return out;
  }

  RuleTemplate clause() {
    anon_ = 0;
    SourceLoc loc{lex_.file(), tok_.line};
    RuleTemplate rule{term(), {}, {}, std::move(loc)};
    if (tok_.kind == Tok::Neck) {
      shift();
      body(rule);
      while (tok_.kind == Tok::Comma) {
        shift();
        body(rule);
      }
    }
    expect(Tok::End, "expected '.' at end of clause");
    return rule;
  }

  Term query() {
    Term t = term();
    if (tok_.kind == Tok::End) shift();
    if (tok_.kind != Tok::Eof) lex_.fail(tok_, "unexpected input after query");
    return t;
  }

  const Token& current() const { return tok_; }

 private:
  void shift() { tok_ = lex_.next(); }

  void expect(Tok kind, const char* message) {
    if (tok_.kind != kind) lex_.fail(tok_, message);
    shift();
  }

  void body(RuleTemplate& rule) {
    if (tok_.kind == Tok::LParen) {
      shift();
      body(rule);
      while (tok_.kind == Tok::Comma) {
        shift();
        body(rule);
      }
      expect(Tok::RParen, "expected ')'");
      return;
    }
    Token at = tok_;
    Term lit = term();
    if (lit.is_compound() && lit.name() == "not") {
      if (lit.arity() != 1) lex_.fail(at, "not/1 expects exactly one argument");
      rule.neg_body.push_back(lit.arg(0));
    } else {
      rule.pos_body.push_back(std::move(lit));
    }
  }

  Term term() {
    switch (tok_.kind) {
      case Tok::Var: {
        std::string name = tok_.text;
        shift();
        if (name == "_") name = "_G" + std::to_string(anon_++);
        return Term::variable(std::move(name));
      }
      case Tok::Name:
      case Tok::Quoted: {
        std::string name = tok_.text;
        shift();
        if (tok_.kind != Tok::LParen) return Term::constant(std::move(name));
        shift();
        std::vector<Term> args;
        args.push_back(term());
        while (tok_.kind == Tok::Comma) {
          shift();
          args.push_back(term());
        }
        expect(Tok::RParen, "expected ',' or ')' in argument list");
        return Term::compound(std::move(name), std::move(args));
      }
      case Tok::LParen: {
        shift();
        std::vector<Term> items;
        items.push_back(term());
        while (tok_.kind == Tok::Comma) {
          shift();
          items.push_back(term());
        }
        expect(Tok::RParen, "expected ')'");
        Term out = items.back();
        for (std::size_t i = items.size() - 1; i-- > 0;)
          out = Term::compound(",", {items[i], out});
        return out;
      }
      default:
        lex_.fail(tok_, "expected a term");
    }
  }

  Lexer lex_;
  Token tok_{Tok::Eof, "", 1, 1};
  std::size_t anon_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Program parse_program(std::string_view text, const std::string& file) {
  return Parser(text, file).program();
}

AtomSet parse_paramset(std::string_view text, const std::string& file) {
  Program p = parse_program(text, file);
  AtomSet out;
  for (const auto& r : p.templates) {
    if (!r.is_fact() || r.head.is_variable())
      throw Error(ErrorKind::Syntax, to_string(r.loc) + ": parameter files hold facts only");
    if (!r.head.is_ground())
      throw Error(ErrorKind::NonGroundParameter,
                  to_string(r.loc) + ": parameter " + to_string(r.head) + " is not ground");
    out.insert(r.head);
  }
  if (!p.object_templates.empty())
    throw Error(ErrorKind::Syntax, file + ": #object is not allowed in parameter files");
  return out;
}

Term parse_query(std::string_view text) {
  Parser p(text, "<query>");
  return p.query();
}

Term parse_term(std::string_view text) { return parse_query(text); }

Program load_program(const std::string& path) { return parse_program(read_file(path), path); }

AtomSet load_paramset(const std::string& path) { return parse_paramset(read_file(path), path); }

}  // namespace indsem
