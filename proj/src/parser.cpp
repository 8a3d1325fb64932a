#include "tsld/parser.hpp"

#include <cctype>

namespace tsld {
namespace {

enum class Tok { Ident, Var, Int, Float, Str, LParen, RParen, Comma, Dot, Neck, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, "", line, col};
      return;
    }
    char c = src_[pos_];
    if (c == '(') { take(1); tok_ = {Tok::LParen, "(", line, col}; return; }
    if (c == ')') { take(1); tok_ = {Tok::RParen, ")", line, col}; return; }
    if (c == ',') { take(1); tok_ = {Tok::Comma, ",", line, col}; return; }
    if (c == '.') {
      // A dot followed by a digit would be a malformed float, not a clause end;
      // numbers always start with a digit or '-', so '.' here ends a clause.
      take(1);
      tok_ = {Tok::Dot, ".", line, col};
      return;
    }
    if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
      take(2);
      tok_ = {Tok::Neck, ":-", line, col};
      return;
    }
    if (c == '"') {
      take(1);
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        char d = src_[pos_];
        if (d == '\\' && pos_ + 1 < src_.size()) {
          take(1);
          d = src_[pos_];
        }
        if (d == '\n') throw ParseError("unterminated string", line, col);
        s.push_back(d);
        take(1);
      }
      if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
      take(1);
      tok_ = {Tok::Str, s, line, col};
      return;
    }
    bool neg = c == '-' && pos_ + 1 < src_.size() && std::isdigit((unsigned char)src_[pos_ + 1]);
    if (neg || std::isdigit((unsigned char)c)) {
      std::string num;
      if (neg) {
        num.push_back('-');
        take(1);
      }
      while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
        num.push_back(src_[pos_]);
        take(1);
      }
      if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
          std::isdigit((unsigned char)src_[pos_ + 1])) {
        num.push_back('.');
        take(1);
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
          num.push_back(src_[pos_]);
          take(1);
        }
        tok_ = {Tok::Float, num, line, col};
      } else {
        tok_ = {Tok::Int, num, line, col};
      }
      return;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_')) {
        id.push_back(src_[pos_]);
        take(1);
      }
      bool is_var = std::isupper((unsigned char)id[0]) || id[0] == '_';
      tok_ = {is_var ? Tok::Var : Tok::Ident, id, line, col};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take(1);
      } else if (std::isspace((unsigned char)c)) {
        take(1);
      } else {
        break;
      }
    }
  }

  void take(int n) {
    for (int i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Program program() {
    Program p;
    int id = 1;
    while (lex_.peek().kind != Tok::End) {
      Clause c = clause();
      c.id = id++;
      p.clauses.push_back(std::move(c));
    }
    return p;
  }

  Query query() {
    Query q;
    q.atoms.push_back(atom());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.next();
      q.atoms.push_back(atom());
    }
    expect(Tok::Dot, "'.'");
    expect(Tok::End, "end of input");
    return q;
  }

  Term single_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  Clause clause() {
    Clause c;
    c.head = atom();
    if (lex_.peek().kind == Tok::Neck) {
      lex_.next();
      c.body.push_back(atom());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        c.body.push_back(atom());
      }
    }
    expect(Tok::Dot, "'.'");
    return c;
  }

  PredAtom atom() {
    Token name = expect(Tok::Ident, "predicate name");
    PredAtom a{name.text, {}};
    if (lex_.peek().kind == Tok::LParen) {
      lex_.next();
      if (lex_.peek().kind != Tok::RParen) {  // p() is a valid 0-ary atom
        a.args.push_back(term());
        while (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          a.args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  Term term() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::Var:
        return Term::make_var(t.text);
      case Tok::Int:
        return Term::make_const(t.text, BaseType::Int);
      case Tok::Float:
        return Term::make_const(t.text, BaseType::Float);
      case Tok::Str:
        return Term::make_const(t.text, BaseType::String);
      case Tok::Ident: {
        if (lex_.peek().kind != Tok::LParen) return Term::make_const(t.text, BaseType::Atom);
        lex_.next();
        std::vector<Term> args;
        args.push_back(term());
        while (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          args.push_back(term());
        }
        expect(Tok::RParen, "')'");
        return Term::make_compound(t.text, std::move(args));
      }
      default:
        throw ParseError("expected term, found '" + t.text + "'", t.line, t.column);
    }
  }

  Token expect(Tok kind, const std::string& what) {
    Token t = lex_.next();
    if (t.kind != kind)
      throw ParseError("expected " + what + ", found '" + (t.kind == Tok::End ? "<end>" : t.text) + "'",
                       t.line, t.column);
    return t;
  }

  Lexer lex_;
};

}  // namespace

Program parse_program(const std::string& src) { return Parser(src).program(); }

Query parse_query(const std::string& src) { return Parser(src).query(); }

Term parse_term(const std::string& src) { return Parser(src).single_term(); }

}  // namespace tsld
