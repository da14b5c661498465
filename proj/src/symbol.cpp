#include "tetralab/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <tuple>

#include "tetralab/error.hpp"

namespace tetralab {

SymbolExpr::SymbolExpr(std::vector<SymbolTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

SymbolExpr SymbolExpr::term(cd coeff, int a, int b, int k) { return SymbolExpr({{coeff, a, b, k}}); }

void SymbolExpr::canonicalize() {
  std::map<std::tuple<int, int, int>, cd> merged;
  for (const auto& t : terms_) merged[{t.a, t.b, t.k}] += t.coeff;
  terms_.clear();
  for (const auto& [key, c] : merged)
    if (c != cd{}) terms_.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
}

SymbolExpr SymbolExpr::conj() const {
  std::vector<SymbolTerm> out;
  for (const auto& t : terms_) out.push_back({std::conj(t.coeff), t.b, t.a, -t.k});
  return SymbolExpr(std::move(out));
}

SymbolExpr SymbolExpr::operator+(const SymbolExpr& o) const {
  std::vector<SymbolTerm> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return SymbolExpr(std::move(out));
}

SymbolExpr SymbolExpr::operator*(const SymbolExpr& o) const {
  std::vector<SymbolTerm> out;
  for (const auto& s : terms_)
    for (const auto& t : o.terms_) out.push_back({s.coeff * t.coeff, s.a + t.a, s.b + t.b, s.k + t.k});
  return SymbolExpr(std::move(out));
}

SymbolExpr SymbolExpr::operator*(cd c) const {
  std::vector<SymbolTerm> out = terms_;
  for (auto& t : out) t.coeff *= c;
  return SymbolExpr(std::move(out));
}

cd SymbolExpr::coefficient(int a, int b, int k) const {
  for (const auto& t : terms_)
    if (t.a == a && t.b == b && t.k == k) return t.coeff;
  return {};
}

cd SymbolExpr::evaluate(cd z2, cd z3) const {
  cd s = 0.0;
  for (const auto& t : terms_) {
    cd v = t.coeff;
    for (int i = 0; i < t.a; ++i) v *= z2;
    for (int i = 0; i < t.b; ++i) v *= std::conj(z2);
    for (int i = 0; i < t.k; ++i) v *= z3;
    for (int i = 0; i < -t.k; ++i) v *= std::conj(z3);
    s += v;
  }
  return s;
}

std::string SymbolExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i > 0) out += " + ";
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", t.coeff.real(), t.coeff.imag());
    out += buf;
    auto factor = [&](const char* name, int e) {
      if (e == 0) return;
      out += "*";
      out += name;
      if (e != 1) out += "^" + std::to_string(e);
    };
    factor("z2", t.a);
    factor("~z2", t.b);
    factor("z3", t.k);
  }
  return out;
}

std::vector<SymbolTerm> symbol_dictionary(int max_ab, int max_k) {
  std::vector<SymbolTerm> out;
  for (int a = 0; a <= max_ab; ++a)
    for (int b = 0; a + b <= max_ab; ++b)
      for (int k = -max_k; k <= max_k; ++k) out.push_back({1.0, a, b, k});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

constexpr int kMaxExponent = 64;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  SymbolExpr parse() {
    skip_ws();
    if (pos_ >= s_.size()) fail("empty symbol");
    std::vector<SymbolTerm> terms;
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = (peek() == '-') ? -1.0 : 1.0;
      ++pos_;
    }
    terms.push_back(term(sign));
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      terms.push_back(term(c == '-' ? -1.0 : 1.0));
    }
    return SymbolExpr(std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "symbol parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_factor() {
    skip_ws();
    return peek() == 'z' || peek() == '~';
  }

  double number() {
    skip_ws();
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  cd coefficient() {
    skip_ws();
    if (peek() != '(') return number();
    ++pos_;
    const double re = number();
    skip_ws();
    const char sign = peek();
    if (sign != '+' && sign != '-') fail("expected '+' or '-' inside complex coefficient");
    ++pos_;
    skip_ws();
    const double im = number();
    skip_ws();
    if (peek() != 'i') fail("expected 'i' after imaginary part");
    ++pos_;
    skip_ws();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    return {re, sign == '-' ? -im : im};
  }

  SymbolTerm term(double sign) {
    SymbolTerm t{sign, 0, 0, 0};
    if (!at_factor()) {
      t.coeff *= coefficient();
      skip_ws();
      if (peek() != '*') return t;  // constant term
      ++pos_;
    }
    factor(t);
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      factor(t);
    }
    return t;
  }

  void factor(SymbolTerm& t) {
    skip_ws();
    const std::size_t start = pos_;
    bool bar = false;
    if (peek() == '~') {
      bar = true;
      ++pos_;
    }
    if (peek() != 'z') fail("expected variable z1, z2, z3 (optionally prefixed by '~')");
    ++pos_;
    const char idx = peek();
    if (idx != '1' && idx != '2' && idx != '3') fail("variable index must be 1, 2 or 3");
    ++pos_;
    int e = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      const char* first = s_.data() + pos_;
      long v = 0;
      auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
      if (ec == std::errc::result_out_of_range || (ec == std::errc() && v > kMaxExponent)) {
        fail("exponent exceeds " + std::to_string(kMaxExponent));
      }
      if (ec != std::errc() || ptr == first) fail("expected integer exponent");
      pos_ += static_cast<std::size_t>(ptr - first);
      e = neg ? -static_cast<int>(v) : static_cast<int>(v);
    }
    if (e < 0 && idx != '3') {
      pos_ = start;
      fail("negative exponent only allowed on the unimodular z3");
    }
    switch (idx) {
      case '1':  // z1 = ~z2 z3, ~z1 = z2 ~z3
        if (bar) {
          t.a += e;
          t.k -= e;
        } else {
          t.b += e;
          t.k += e;
        }
        break;
      case '2':
        (bar ? t.b : t.a) += e;
        break;
      default:
        t.k += bar ? -e : e;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolExpr parse_symbol(std::string_view text) { return Parser(text).parse(); }

}  // namespace tetralab
