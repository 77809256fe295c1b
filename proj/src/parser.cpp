#include "pbrack/parser.hpp"

#include <cctype>
#include <climits>
#include <optional>
#include <sstream>

namespace pbrack {

namespace {

struct Token {
  enum class Kind { Ident, Integer, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::Kind::End, "", start};
      return;
    }
    char c = text_[pos_];
    auto single = [&](Token::Kind k) {
      ++pos_;
      current_ = {k, std::string(1, c), start};
    };
    switch (c) {
      case '+': return single(Token::Kind::Plus);
      case '-': return single(Token::Kind::Minus);
      case '*': return single(Token::Kind::Star);
      case '/': return single(Token::Kind::Slash);
      case '^': return single(Token::Kind::Caret);
      case '(': return single(Token::Kind::LParen);
      case ')': return single(Token::Kind::RParen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      current_ = {Token::Kind::Integer, text_.substr(start, pos_ - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      current_ = {Token::Kind::Ident, text_.substr(start, pos_ - start), start};
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", start);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_{Token::Kind::End, "", 0};
};

class ExprParser {
public:
  ExprParser(const std::string& text, const PhaseSpace& space,
             const std::set<std::string>& known_names, bool validate_names)
      : lexer_(text), space_(space), known_(known_names), validate_(validate_names) {}

  ExprPtr parse() {
    ExprPtr e = expression();
    const Token& t = lexer_.peek();
    if (t.kind != Token::Kind::End)
      throw SyntaxError("unexpected token '" + t.text + "'", t.pos);
    return e;
  }

private:
  ExprPtr expression() {
    std::vector<ExprPtr> terms{term()};
    while (true) {
      Token::Kind k = lexer_.peek().kind;
      if (k == Token::Kind::Plus) {
        lexer_.take();
        terms.push_back(term());
      } else if (k == Token::Kind::Minus) {
        lexer_.take();
        terms.push_back(make_neg(term()));
      } else {
        break;
      }
    }
    return make_sum(std::move(terms));
  }

  ExprPtr term() {
    std::vector<ExprPtr> factors{factor()};
    while (true) {
      Token::Kind k = lexer_.peek().kind;
      if (k == Token::Kind::Star) {
        lexer_.take();
        factors.push_back(factor());
      } else if (k == Token::Kind::Slash) {
        lexer_.take();
        factors.push_back(make_power(factor(), -1));
      } else {
        break;
      }
    }
    return make_product(std::move(factors));
  }

  ExprPtr factor() {
    if (lexer_.peek().kind == Token::Kind::Minus) {
      lexer_.take();
      return make_neg(factor());  // ^ binds tighter: -q1^2 is -(q1^2)
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (lexer_.peek().kind != Token::Kind::Caret) return base;
    lexer_.take();
    return make_power(std::move(base), exponent());
  }

  int exponent() {
    bool neg = false;
    bool parens = false;
    std::size_t at = lexer_.peek().pos;
    if (lexer_.peek().kind == Token::Kind::LParen) {
      parens = true;
      lexer_.take();
    }
    if (lexer_.peek().kind == Token::Kind::Minus) {
      neg = true;
      lexer_.take();
    }
    if (lexer_.peek().kind != Token::Kind::Integer) throw NonIntegerExponent(lexer_.peek().pos);
    mpz_class n(lexer_.take().text);
    if (parens) {
      if (lexer_.peek().kind == Token::Kind::Slash) {
        lexer_.take();
        if (lexer_.peek().kind != Token::Kind::Integer)
          throw SyntaxError("expected integer denominator in exponent", lexer_.peek().pos);
        mpz_class d(lexer_.take().text);
        if (d == 0) throw DivisionByZero("zero denominator in exponent");
        Rational r(n, d);
        r.canonicalize();
        if (r.get_den() != 1) throw NonIntegerExponent(at);
        n = r.get_num();
      }
      expect(Token::Kind::RParen, "')'");
    }
    if (!n.fits_sint_p() || n > INT_MAX)
      throw SyntaxError("exponent out of range", at);
    int e = static_cast<int>(n.get_si());
    return neg ? -e : e;
  }

  ExprPtr primary() {
    Token t = lexer_.take();
    switch (t.kind) {
      case Token::Kind::Integer:
        return make_constant(GaussianRational(Rational(mpz_class(t.text))));
      case Token::Kind::LParen: {
        ExprPtr e = expression();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Ident: {
        if (t.text == "sqrt" || t.text == "exp") {
          expect(Token::Kind::LParen, "'(' after " + t.text);
          ExprPtr arg = expression();
          expect(Token::Kind::RParen, "')'");
          return t.text == "sqrt" ? make_sqrt(std::move(arg)) : make_exp(std::move(arg));
        }
        if (t.text == "I") return make_constant(GaussianRational::i());
        if (lexer_.peek().kind == Token::Kind::LParen)
          throw SyntaxError("'" + t.text + "' is not a function", t.pos);
        if (validate_ && t.text != "hbar" && !known(t.text))
          throw UnknownName(t.text, t.pos);
        return make_name(t.text);
      }
      default:
        throw SyntaxError("expected a value, found '" +
                              (t.kind == Token::Kind::End ? std::string("end of input") : t.text) +
                              "'",
                          t.pos);
    }
  }

  bool known(const std::string& name) const {
    if (known_.count(name)) return true;
    for (const auto& n : space_.coord_names())
      if (n == name) return true;
    for (const auto& n : space_.momentum_names())
      if (n == name) return true;
    for (const auto& n : space_.parameters())
      if (n == name) return true;
    return false;
  }

  void expect(Token::Kind kind, const std::string& what) {
    const Token& t = lexer_.peek();
    if (t.kind != kind) throw SyntaxError("expected " + what, t.pos);
    lexer_.take();
  }

  Lexer lexer_;
  const PhaseSpace& space_;
  const std::set<std::string>& known_;
  bool validate_;
};

ExprPtr parse_expr_impl(const std::string& text, const PhaseSpace& space,
                        const std::set<std::string>& known_names, bool validate) {
  return ExprParser(text, space, known_names, validate).parse();
}

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_int_word(const std::string& w, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError(std::string("bad ") + what + " '" + w + "'", line, true);
  }
}

double parse_double_word(const std::string& w, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError(std::string("bad ") + what + " '" + w + "'", line, true);
  }
}

}  // namespace

ExprPtr parse_expression(const std::string& text, const PhaseSpace& space,
                         const std::set<std::string>& known_names) {
  return parse_expr_impl(text, space, known_names, /*validate=*/true);
}

SessionScript parse_session(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream in(text);
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::string s = strip(raw);
      if (!s.empty()) lines.emplace_back(n, s);
    }
  }

  if (lines.empty()) throw MissingDimension();

  // Header: `dimension N` first, then any `param NAME...` lines.
  std::size_t dim = 0;
  std::vector<std::string> params;
  std::size_t idx = 0;
  {
    auto [line_no, line] = lines[0];
    auto words = split_words(line);
    if (words[0] != "dimension") throw MissingDimension();
    if (words.size() != 2) throw SyntaxError("dimension takes one integer", line_no, true);
    int n = parse_int_word(words[1], line_no, "dimension");
    if (n < 1) throw SyntaxError("dimension must be at least 1", line_no, true);
    dim = static_cast<std::size_t>(n);
    ++idx;
  }
  while (idx < lines.size()) {
    auto words = split_words(lines[idx].second);
    if (words[0] == "dimension")
      throw SyntaxError("duplicate dimension declaration", lines[idx].first, true);
    if (words[0] != "param") break;
    if (words.size() < 2) throw SyntaxError("param needs a name", lines[idx].first, true);
    for (std::size_t i = 1; i < words.size(); ++i) params.push_back(words[i]);
    ++idx;
  }

  PhaseSpace space(dim, params);
  SessionScript script{std::move(space), {}, {}};
  std::set<std::string> defined;

  for (; idx < lines.size(); ++idx) {
    auto [line_no, line] = lines[idx];
    auto words = split_words(line);
    const std::string& head = words[0];

    if (head == "dimension" || head == "param")
      throw SyntaxError("'" + head + "' must appear before definitions and commands", line_no,
                        true);

    if (head == "define") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw SyntaxError("define needs '='", line_no, true);
      auto name_part = split_words(strip(line.substr(6, eq - 6)));
      if (name_part.size() != 1) throw SyntaxError("define takes one name", line_no, true);
      const std::string& name = name_part[0];
      if (!is_identifier(name) || is_reserved_name(name))
        throw SyntaxError("bad definition name '" + name + "'", line_no, true);
      if (script.space.coord_names().end() !=
              std::find(script.space.coord_names().begin(), script.space.coord_names().end(),
                        name) ||
          script.space.momentum_names().end() !=
              std::find(script.space.momentum_names().begin(),
                        script.space.momentum_names().end(), name) ||
          script.space.parameters().end() !=
              std::find(script.space.parameters().begin(), script.space.parameters().end(), name))
        throw SyntaxError("'" + name + "' is already a phase-space symbol", line_no, true);
      if (!defined.insert(name).second) throw DuplicateDefinition(name, line_no);
      std::string rhs = strip(line.substr(eq + 1));
      if (rhs.empty()) throw SyntaxError("empty definition body", line_no, true);
      try {
        script.definitions.emplace_back(name,
                                        parse_expr_impl(rhs, script.space, defined, true));
      } catch (const SyntaxError& e) {
        throw SyntaxError(e.what(), line_no, true);
      } catch (const UnknownName& e) {
        throw SyntaxError(e.what(), line_no, true);
      }
      continue;
    }

    Command cmd;
    cmd.line = line_no;
    cmd.text = line;
    auto lenient = [&](const std::string& s) {
      try {
        return parse_expr_impl(s, script.space, defined, /*validate=*/false);
      } catch (const SyntaxError& e) {
        throw SyntaxError(e.what(), line_no, true);
      }
    };

    if (head == "bracket" || head == "commutator") {
      if (words.size() != 3)
        throw SyntaxError(head + " takes two expressions (no spaces inside each)", line_no, true);
      cmd.kind = head == "bracket" ? Command::Kind::Bracket : Command::Kind::Commutator;
      cmd.lhs_text = words[1];
      cmd.rhs_text = words[2];
      cmd.lhs = lenient(words[1]);
      cmd.rhs = lenient(words[2]);
    } else if (head == "diff") {
      if (words.size() != 3) throw SyntaxError("diff takes an expression and a variable", line_no, true);
      cmd.kind = Command::Kind::Diff;
      cmd.lhs_text = words[1];
      cmd.lhs = lenient(words[1]);
      cmd.var = words[2];
    } else if (head == "simplify") {
      if (words.size() != 2) throw SyntaxError("simplify takes one expression", line_no, true);
      cmd.kind = Command::Kind::Simplify;
      cmd.lhs_text = words[1];
      cmd.lhs = lenient(words[1]);
    } else if (head == "closure") {
      cmd.kind = Command::Kind::Closure;
      std::vector<std::vector<std::string>> segments(1);
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i] == "|")
          segments.emplace_back();
        else
          segments.back().push_back(words[i]);
      }
      if (segments.size() < 2 || segments.size() > 3)
        throw SyntaxError("closure syntax: closure [scalars] | generators [| options]", line_no,
                          true);
      cmd.scalars = segments[0];
      cmd.generators = segments[1];
      if (cmd.generators.empty()) throw SyntaxError("closure needs generators", line_no, true);
      if (segments.size() == 3) {
        const auto& opts = segments[2];
        for (std::size_t i = 0; i + 1 < opts.size(); i += 2) {
          if (opts[i] == "degree")
            cmd.degree = parse_int_word(opts[i + 1], line_no, "degree");
          else if (opts[i] == "hbar_max")
            cmd.hbar_max = parse_int_word(opts[i + 1], line_no, "hbar_max");
          else
            throw SyntaxError("unknown closure option '" + opts[i] + "'", line_no, true);
        }
        if (opts.size() % 2 != 0)
          throw SyntaxError("closure options come in pairs", line_no, true);
      }
      if (cmd.degree < 1) throw SyntaxError("closure degree must be >= 1", line_no, true);
      if (cmd.hbar_max < 0) throw SyntaxError("hbar_max must be >= 0", line_no, true);
    } else if (head == "check") {
      if (words.size() < 3) throw SyntaxError("check takes two expressions", line_no, true);
      cmd.kind = Command::Kind::Check;
      cmd.lhs_text = words[1];
      cmd.rhs_text = words[2];
      cmd.lhs = lenient(words[1]);
      cmd.rhs = lenient(words[2]);
      std::size_t i = 3;
      while (i < words.size()) {
        if (i + 1 >= words.size())
          throw SyntaxError("check options come in pairs", line_no, true);
        if (words[i] == "trials")
          cmd.trials = parse_int_word(words[i + 1], line_no, "trials");
        else if (words[i] == "tol")
          cmd.tolerance = parse_double_word(words[i + 1], line_no, "tol");
        else if (words[i] == "expect") {
          cmd.expected_text = words[i + 1];
          cmd.expected = lenient(words[i + 1]);
        } else {
          throw SyntaxError("unknown check option '" + words[i] + "'", line_no, true);
        }
        i += 2;
      }
      if (cmd.trials < 1) throw SyntaxError("check trials must be >= 1", line_no, true);
    } else {
      throw SyntaxError("unknown command '" + head + "'", line_no, true);
    }
    script.commands.push_back(std::move(cmd));
  }

  return script;
}

}  // namespace pbrack
