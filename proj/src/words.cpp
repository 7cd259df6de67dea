#include "engel/words.hpp"

#include <cctype>

namespace engel {

void Word::append(char gen, std::int64_t exp) {
  if (exp == 0) return;
  if (!syl_.empty() && syl_.back().gen == gen) {
    syl_.back().exp += exp;
    if (syl_.back().exp == 0) syl_.pop_back();
    return;
  }
  syl_.push_back({gen, exp});
}

std::uint64_t Word::length() const {
  std::uint64_t n = 0;
  for (const auto& s : syl_) n += std::uint64_t(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

Word Word::inverse() const {
  Word r;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
    r.append(it->gen, -it->exp);
  return r;
}

Word Word::operator*(const Word& rhs) const {
  Word r = *this;
  for (const auto& s : rhs.syl_) r.append(s.gen, s.exp);
  return r;
}

std::string Word::str() const {
  if (syl_.empty()) return "1";
  std::string out;
  for (const auto& s : syl_) {
    if (!out.empty()) out += " ";
    out += s.gen;
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : t_(text) {}

  Word parse() {
    Word w = word();
    skip_ws();
    if (pos_ != t_.size()) throw ParseError("unexpected character", pos_);
    return w;
  }

 private:
  void skip_ws() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < t_.size() ? t_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  Word word() {
    Word w;
    bool any = false;
    while (true) {
      char c = peek();
      if (c != 'x' && c != 'y' && c != '(' && c != '[') break;
      w = w * term();
      any = true;
    }
    if (!any) throw ParseError("expected word", pos_);
    return w;
  }

  Word term() {
    Word a = atom();
    if (peek() == '^') {
      ++pos_;
      std::int64_t k = integer();
      if (k == 0) return Word{};
      Word base = k < 0 ? a.inverse() : a;
      std::int64_t n = k < 0 ? -k : k;
      Word r;
      for (std::int64_t i = 0; i < n; ++i) r = r * base;
      return r;
    }
    return a;
  }

  Word atom() {
    char c = peek();
    if (c == 'x' || c == 'y') {
      ++pos_;
      return Word::generator(c);
    }
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return u * v * u.inverse() * v.inverse();
    }
    throw ParseError("expected atom", pos_);
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < t_.size() && (t_[pos_] == '-' || t_[pos_] == '+')) {
      negative = t_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_])))
      throw ParseError("expected integer", start);
    std::int64_t v = 0;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
      v = v * 10 + (t_[pos_] - '0');
      if (v > (std::int64_t(1) << 20)) throw ParseError("exponent too large", start);
      ++pos_;
    }
    return negative ? -v : v;
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

}  // namespace

Word Word::parse(std::string_view text) {
  Parser p(text);
  return p.parse();
}

Word Word::generator(char gen, std::int64_t exp) {
  if (gen != 'x' && gen != 'y')
    throw std::invalid_argument("Word::generator: gen must be 'x' or 'y'");
  Word w;
  w.append(gen, exp);
  return w;
}

Word Word::engel(unsigned n) {
  if (n < 1) throw std::invalid_argument("engel: n >= 1 required");
  Word x = Word::generator('x');
  Word y = Word::generator('y');
  Word e = x * y * x.inverse() * y.inverse();
  for (unsigned i = 2; i <= n; ++i) e = e * y * e.inverse() * y.inverse();
  return e;
}

Mat evaluate(const Word& w, const Sl2& G, const Mat& x, const Mat& y) {
  Mat r = G.identity();
  for (const auto& s : w.syllables())
    r = G.mul(r, G.pow(s.gen == 'x' ? x : y, s.exp));
  return r;
}

Mat evaluate_engel(unsigned n, const Sl2& G, const Mat& x, const Mat& y) {
  if (n < 1) throw std::invalid_argument("evaluate_engel: n >= 1 required");
  Mat z = G.commutator(x, y);
  for (unsigned i = 2; i <= n; ++i) z = G.commutator(z, y);
  return z;
}

}  // namespace engel
