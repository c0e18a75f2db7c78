#include <cctype>
#include <optional>
#include <tuple>

#include "prisyn/model.hpp"

namespace prisyn {

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) t.text += advance();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) t.text += advance();
      return t;
    }
    t.kind = Tok::Symbol;
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      t.text = ":=";
      advance();
      advance();
      return t;
    }
    static const std::string singles = "{};[]=<&|!()@,~";
    if (singles.find(c) == std::string::npos)
      throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    t.text = std::string(1, advance());
    return t;
  }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

  System parse() {
    expect_word("system");
    expect("{");
    std::vector<Component> components;
    std::vector<std::string> alphabet;
    PrioritySet priorities;
    struct RawRisk {
      Token at;
      std::vector<std::tuple<Token, std::string, std::vector<std::pair<std::string, bool>>>> parts;
    };
    std::vector<RawRisk> raw_risks;

    while (!is_symbol("}")) {
      if (is_word("interactions")) {
        next();
        while (cur_.kind == Tok::Ident) alphabet.push_back(take_ident("interaction"));
        expect(";");
      } else if (is_word("component")) {
        components.push_back(parse_component());
      } else if (is_word("priority")) {
        next();
        auto low = take_ident("interaction");
        expect("<");
        auto high = take_ident("interaction");
        expect(";");
        priorities.emplace(low, high);
      } else if (is_word("risk")) {
        RawRisk r;
        r.at = cur_;
        next();
        expect("{");
        while (true) {
          Token comp_tok = cur_;
          take_ident("component");
          expect("@");
          auto loc = take_ident("location");
          auto vals = is_symbol("[") ? parse_valuation() : std::vector<std::pair<std::string, bool>>{};
          r.parts.emplace_back(comp_tok, loc, vals);
          if (is_symbol("&")) {
            next();
            continue;
          }
          break;
        }
        expect("}");
        if (is_symbol(";")) next();
        raw_risks.push_back(std::move(r));
      } else {
        fail("expected 'interactions', 'component', 'priority', 'risk' or '}'");
      }
    }
    expect("}");
    if (cur_.kind != Tok::End) fail("trailing input after system block");
    if (components.empty()) throw ModelError("no components");

    std::vector<PartialConfiguration> risks;
    for (const auto& r : raw_risks) {
      PartialConfiguration pc;
      for (const auto& [tok, loc, vals] : r.parts) {
        std::size_t ci = components.size();
        for (std::size_t i = 0; i < components.size(); ++i)
          if (components[i].name == tok.text) ci = i;
        if (ci == components.size()) throw ParseError("unknown component " + tok.text, tok.line, tok.column);
        const auto& c = components[ci];
        LocalConstraint lc;
        lc.component = ci;
        auto li = c.location_index(loc);
        if (!li) throw ParseError("unknown location " + loc + " of " + c.name, tok.line, tok.column);
        lc.location = *li;
        for (const auto& [var, val] : vals) {
          auto vi = c.variable_index(var);
          if (!vi) throw ParseError("undeclared variable " + var + " of " + c.name, tok.line, tok.column);
          lc.values.emplace_back(*vi, val);
        }
        pc.constraints.push_back(std::move(lc));
      }
      risks.push_back(std::move(pc));
    }
    return System(std::move(components), std::move(alphabet), std::move(priorities), std::move(risks));
  }

 private:
  Component parse_component() {
    expect_word("component");
    Component c;
    c.name = take_ident("component name");
    expect("{");
    bool have_init = false;
    Token init_tok;
    std::string init_loc;
    std::vector<std::pair<std::string, bool>> init_vals;
    struct RawTransition {
      Token at;
      std::string label, from, to;
      std::optional<Expr> guard;
      std::vector<std::pair<std::string, Expr>> sets;
    };
    std::vector<RawTransition> raw;

    // Variables must be declared before they are used in expressions, so the
    // `vars` clause is resolved eagerly; locations are resolved at the end.
    while (!is_symbol("}")) {
      if (is_word("locations")) {
        next();
        while (cur_.kind == Tok::Ident) c.locations.push_back(take_ident("location"));
        expect(";");
      } else if (is_word("vars")) {
        next();
        while (cur_.kind == Tok::Ident) c.variables.push_back(take_ident("variable"));
        expect(";");
      } else if (is_word("init")) {
        init_tok = cur_;
        next();
        init_loc = take_ident("location");
        if (is_symbol("[")) init_vals = parse_valuation();
        expect(";");
        have_init = true;
      } else if (is_word("on")) {
        RawTransition t;
        t.at = cur_;
        next();
        t.label = take_ident("interaction");
        if (t.label.rfind("__", 0) == 0) fail("interaction names starting with '__' are reserved");
        expect_word("from");
        t.from = take_ident("location");
        expect_word("to");
        t.to = take_ident("location");
        if (is_word("when")) {
          next();
          t.guard = parse_expr(c);
        }
        while (is_word("set")) {
          next();
          while (true) {
            Token vt = cur_;
            auto var = take_ident("variable");
            expect(":=");
            t.sets.emplace_back(var, parse_expr(c));
            if (!c.variable_index(var)) throw ParseError("undeclared variable " + var, vt.line, vt.column);
            if (is_symbol(",")) {
              next();
              continue;
            }
            break;
          }
        }
        expect(";");
        raw.push_back(std::move(t));
      } else {
        fail("expected 'locations', 'vars', 'init', 'on' or '}'");
      }
    }
    expect("}");

    if (c.locations.empty()) throw ModelError("component " + c.name + " declares no locations");
    if (!have_init) throw ModelError("component " + c.name + " has no init clause");
    auto li = c.location_index(init_loc);
    if (!li) throw ParseError("unknown location " + init_loc, init_tok.line, init_tok.column);
    c.initial_location = *li;
    c.initial_valuation.assign(c.variables.size(), false);
    for (const auto& [var, val] : init_vals) {
      auto vi = c.variable_index(var);
      if (!vi) throw ParseError("undeclared variable " + var, init_tok.line, init_tok.column);
      c.initial_valuation[*vi] = val;
    }
    for (auto& rt : raw) {
      Transition t;
      t.label = rt.label;
      auto src = c.location_index(rt.from);
      auto dst = c.location_index(rt.to);
      if (!src) throw ParseError("unknown location " + rt.from, rt.at.line, rt.at.column);
      if (!dst) throw ParseError("unknown location " + rt.to, rt.at.line, rt.at.column);
      t.source = *src;
      t.destination = *dst;
      t.guard = rt.guard ? *rt.guard : Expr::constant(true);
      for (std::size_t v = 0; v < c.variables.size(); ++v) t.update.push_back(Expr::var(v));
      for (auto& [var, e] : rt.sets) t.update[*c.variable_index(var)] = e;
      c.transitions.push_back(std::move(t));
    }
    return c;
  }

  std::vector<std::pair<std::string, bool>> parse_valuation() {
    expect("[");
    std::vector<std::pair<std::string, bool>> vals;
    while (!is_symbol("]")) {
      auto var = take_ident("variable");
      expect("=");
      vals.emplace_back(var, take_bit());
      if (is_symbol(",")) next();
    }
    expect("]");
    return vals;
  }

  bool take_bit() {
    if (cur_.kind == Tok::Number && (cur_.text == "0" || cur_.text == "1")) {
      bool b = cur_.text == "1";
      next();
      return b;
    }
    if (is_word("true") || is_word("false")) {
      bool b = cur_.text == "true";
      next();
      return b;
    }
    fail("expected 0 or 1");
  }

  // expr := term ('|' term)* ; term := factor ('&' factor)* ;
  // factor := ('!'|'~'|'not') factor | '(' expr ')' | const | var
  Expr parse_expr(const Component& c) {
    Expr e = parse_term(c);
    while (is_symbol("|") || is_word("or")) {
      next();
      e = Expr::disj(e, parse_term(c));
    }
    return e;
  }

  Expr parse_term(const Component& c) {
    Expr e = parse_factor(c);
    while (is_symbol("&") || is_word("and")) {
      next();
      e = Expr::conj(e, parse_factor(c));
    }
    return e;
  }

  Expr parse_factor(const Component& c) {
    if (is_symbol("!") || is_symbol("~") || is_word("not")) {
      next();
      return Expr::negate(parse_factor(c));
    }
    if (is_symbol("(")) {
      next();
      Expr e = parse_expr(c);
      expect(")");
      return e;
    }
    if (cur_.kind == Tok::Number || is_word("true") || is_word("false")) return Expr::constant(take_bit());
    if (cur_.kind == Tok::Ident) {
      if (cur_.text.find('.') != std::string::npos)
        fail("data transfer on interactions is not supported (reference to " + cur_.text + ")");
      auto vi = c.variable_index(cur_.text);
      if (!vi) fail("undeclared variable " + cur_.text + " in component " + c.name);
      next();
      return Expr::var(*vi);
    }
    fail("expected expression");
  }

  bool is_symbol(const char* s) const { return cur_.kind == Tok::Symbol && cur_.text == s; }
  bool is_word(const char* s) const { return cur_.kind == Tok::Ident && cur_.text == s; }

  void next() { cur_ = lex_.next(); }

  void expect(const char* s) {
    if (!is_symbol(s)) fail(std::string("expected '") + s + "'");
    next();
  }

  void expect_word(const char* s) {
    if (!is_word(s)) fail(std::string("expected '") + s + "'");
    next();
  }

  std::string take_ident(const char* what) {
    if (cur_.kind != Tok::Ident) fail(std::string("expected ") + what);
    if (cur_.text.find_first_of(".'") != std::string::npos) fail("'.' and primes are not allowed in names");
    auto s = cur_.text;
    next();
    return s;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string found = cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
    throw ParseError(msg + ", found " + found, cur_.line, cur_.column);
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

System parse_system(const std::string& text) { return Parser(text).parse(); }

}  // namespace prisyn
