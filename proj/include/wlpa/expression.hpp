#pragma once

// Element expressions for the evaluator:
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (['*'] factor)*
//   factor  := scalar | letter | '(' expr ')'
//   letter  := vertex | edge ['.' strand] ['*']
//   scalar  := digits ['/' digits]
//
// Juxtaposition multiplies. A scalar factor c stands for c times the sum of
// all vertices. Generator names may contain '(' and ')', so letters are
// recognized by longest match against the graph's identifiers; identifiers
// made only of digits are read as scalars.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "wlpa/algebra.hpp"
#include "wlpa/error.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/word.hpp"

namespace wlpa {

namespace detail {

enum class TokKind { Letter, Scalar, Plus, Minus, Times, LParen, RParen, End };

struct ExprToken {
  TokKind kind;
  std::size_t column;
  Letter letter{};
  std::string text;
};

[[noreturn]] inline void expression_error(const std::string& msg, std::size_t column) {
  throw ParseError(ParseErrorKind::Syntax, msg, 1, column);
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

inline bool is_boundary(std::string_view text, std::size_t i) {
  if (i >= text.size()) return true;
  const char c = text[i];
  return std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '(' || c == ')';
}

class ExprLexer {
 public:
  ExprLexer(const WeightedGraph& g, std::string_view text) : g_(g), text_(text) {
    for (const auto& v : g.vertex_names())
      if (!all_digits(v)) names_.push_back({v, true});
    for (const auto& e : g.edges())
      if (!all_digits(e.id)) names_.push_back({e.id, false});
    std::stable_sort(names_.begin(), names_.end(),
                     [](const Name& a, const Name& b) { return a.text.size() > b.text.size(); });
  }

  std::vector<ExprToken> run() {
    std::vector<ExprToken> out;
    std::size_t i = 0;
    while (true) {
      while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
      const std::size_t col = i + 1;
      if (i >= text_.size()) {
        out.push_back({TokKind::End, col});
        return out;
      }
      if (auto t = match_letter(i)) {
        out.push_back(std::move(*t));
        continue;
      }
      const char c = text_[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        if (j < text_.size() && text_[j] == '/') {
          ++j;
          const std::size_t den = j;
          while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
          if (j == den) expression_error("missing denominator", j + 1);
        }
        out.push_back({TokKind::Scalar, col, {}, std::string(text_.substr(i, j - i))});
        i = j;
        continue;
      }
      TokKind k;
      switch (c) {
        case '+': k = TokKind::Plus; break;
        case '-': k = TokKind::Minus; break;
        case '*': k = TokKind::Times; break;
        case '(': k = TokKind::LParen; break;
        case ')': k = TokKind::RParen; break;
        default: expression_error(std::string("unexpected character '") + c + "'", col);
      }
      out.push_back({k, col});
      ++i;
    }
  }

 private:
  struct Name {
    std::string_view text;
    bool vertex;
  };

  std::optional<ExprToken> match_letter(std::size_t& i) const {
    const std::string_view rest = text_.substr(i);
    for (const Name& n : names_) {
      if (rest.substr(0, n.text.size()) != n.text) continue;
      std::size_t j = i + n.text.size();
      if (n.vertex) {
        if (!is_boundary(text_, j)) continue;
        const Letter x = Letter::vertex(*g_.find_vertex(n.text));
        ExprToken t{TokKind::Letter, i + 1, x, std::string(n.text)};
        i = j;
        return t;
      }
      unsigned strand = 1;
      if (j < text_.size() && text_[j] == '.') {
        std::size_t k = j + 1;
        while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
        if (k == j + 1 || k - j - 1 > 6) continue;
        strand = static_cast<unsigned>(std::stoul(std::string(text_.substr(j + 1, k - j - 1))));
        j = k;
      }
      bool star = false;
      if (j < text_.size() && text_[j] == '*') {
        star = true;
        ++j;
      }
      if (!is_boundary(text_, j) && !(j < text_.size() && text_[j] == '*')) continue;
      const EdgeIndex e = *g_.find_edge(n.text);
      const Letter x = star ? Letter::star(e, strand) : Letter::edge(e, strand);
      if (!is_valid_letter(g_, x))
        expression_error("strand " + std::to_string(strand) + " exceeds the weight of edge " + std::string(n.text),
                         i + 1);
      ExprToken t{TokKind::Letter, i + 1, x, std::string(text_.substr(i, j - i))};
      i = j;
      return t;
    }
    return std::nullopt;
  }

  const WeightedGraph& g_;
  std::string_view text_;
  std::vector<Name> names_;
};

template <class Field>
class ExprParser {
 public:
  using Elem = typename Algebra<Field>::Elem;

  ExprParser(const Algebra<Field>& alg, std::vector<ExprToken> toks) : alg_(alg), toks_(std::move(toks)) {}

  Elem parse() {
    Elem e = expr();
    if (peek().kind != TokKind::End) expression_error("unexpected token", peek().column);
    return e;
  }

 private:
  const ExprToken& peek() const { return toks_[pos_]; }
  const ExprToken& next() { return toks_[pos_++]; }

  static bool starts_factor(TokKind k) {
    return k == TokKind::Letter || k == TokKind::Scalar || k == TokKind::LParen;
  }

  Elem expr() {
    bool negate = false;
    if (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) negate = next().kind == TokKind::Minus;
    Elem acc = term();
    if (negate) acc = alg_.neg(acc);
    while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
      const bool minus = next().kind == TokKind::Minus;
      Elem t = term();
      acc = minus ? alg_.sub(acc, t) : alg_.add(acc, t);
    }
    return acc;
  }

  Elem term() {
    if (!starts_factor(peek().kind)) expression_error("expected a generator, scalar or '('", peek().column);
    Elem acc = factor();
    while (true) {
      if (peek().kind == TokKind::Times) {
        next();
        if (!starts_factor(peek().kind)) expression_error("expected a factor after '*'", peek().column);
      } else if (!starts_factor(peek().kind)) {
        return acc;
      }
      acc = alg_.multiply(acc, factor());
    }
  }

  Elem factor() {
    const ExprToken& t = next();
    switch (t.kind) {
      case TokKind::Letter:
        return alg_.generator(t.letter);
      case TokKind::Scalar:
        try {
          return alg_.scalar(alg_.field().parse(t.text));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& err) {
          expression_error(err.what(), t.column);
        }
      case TokKind::LParen: {
        Elem inner = expr();
        if (peek().kind != TokKind::RParen) expression_error("expected ')'", peek().column);
        next();
        return inner;
      }
      default:
        expression_error("expected a generator, scalar or '('", t.column);
    }
  }

  const Algebra<Field>& alg_;
  std::vector<ExprToken> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Evaluates an expression to its normal form. Throws ParseError with column on bad input.
template <class Field>
typename Algebra<Field>::Elem evaluate(const Algebra<Field>& alg, std::string_view text) {
  detail::ExprLexer lexer(alg.graph(), text);
  detail::ExprParser<Field> parser(alg, lexer.run());
  return parser.parse();
}

}  // namespace wlpa
