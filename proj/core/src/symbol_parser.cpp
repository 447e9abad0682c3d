#include "tshift/symbol_parser.hpp"

#include <cctype>
#include <map>
#include <string>

namespace tshift {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string text) : text_(std::move(text)) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool accept(std::string_view token) {
    if (text_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  std::string digits() {
    const std::size_t b = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(b, pos_ - b);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("symbol syntax error at column " + std::to_string(pos_ + 1) + ": " + what +
                      " in '" + text_ + "'");
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
};

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

unsigned exponent(Cursor& c) {
  if (!c.accept("^")) return 1;
  const std::string d = c.digits();
  if (d.empty()) c.fail("expected an exponent");
  if (d.size() > 6) c.fail("exponent too large");
  return static_cast<unsigned>(std::stoul(d));
}

Monomial term(Cursor& c) {
  Monomial m;
  m.coef = ComplexCoef(Rational(1));
  if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
    std::string num = c.digits();
    if (c.accept("/")) {
      const std::string den = c.digits();
      if (den.empty()) c.fail("expected a denominator");
      num += "/" + den;
    }
    try {
      m.coef = ComplexCoef(parse_rational(num));
    } catch (const std::invalid_argument& e) {
      c.fail(e.what());
    }
    c.accept("*");
  }
  bool any = false;
  bool seen_z = false;
  bool seen_zbar = false;
  while (c.peek() == 'z') {
    if (c.accept("zbar")) {
      if (seen_zbar) c.fail("repeated zbar factor");
      seen_zbar = true;
      m.s = exponent(c);
    } else {
      c.accept("z");
      if (seen_z) c.fail("repeated z factor");
      seen_z = true;
      m.t = exponent(c);
    }
    any = true;
    c.accept("*");
  }
  if (!any) c.fail("expected z or zbar");
  return m;
}

}  // namespace

std::vector<Monomial> parse_symbol(std::string_view text) {
  Cursor c(strip_spaces(text));
  if (c.done()) c.fail("empty symbol");
  std::vector<Monomial> terms{term(c)};
  while (c.accept("+")) terms.push_back(term(c));
  if (!c.done()) c.fail(std::string("unexpected '") + c.peek() + "'");
  return terms;
}

Space parse_space(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s == "bergman-h") return Space::bergman_h();
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  std::map<std::string, Rational> params;
  if (colon != std::string::npos) {
    std::size_t pos = colon + 1;
    while (pos <= s.size()) {
      const std::size_t comma = std::min(s.find(',', pos), s.size());
      const std::string item = s.substr(pos, comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw SyntaxError("space parameter without '=': '" + item + "'");
      try {
        params[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
      } catch (const std::invalid_argument& e) {
        throw SyntaxError("bad space parameter '" + item + "': " + e.what());
      }
      pos = comma + 1;
    }
  }
  auto take = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw SyntaxError("space '" + s + "' needs " + key + "=");
    Rational v = it->second;
    params.erase(it);
    return v;
  };
  Space out;
  if (head == "wbergman") {
    out = Space::weighted_bergman(take("alpha"));
  } else if (head == "gdhardy") {
    const Rational a = take("alpha");
    out = Space::gen_deriv_hardy(a, take("beta"));
  } else {
    throw SyntaxError("unknown space '" + s + "'");
  }
  if (!params.empty()) throw SyntaxError("unknown parameter '" + params.begin()->first + "'");
  return out;
}

SymbolSpec parse_symbol_spec(std::string_view symbol, std::string_view space) {
  return {parse_space(space), parse_symbol(symbol)};
}

}  // namespace tshift
