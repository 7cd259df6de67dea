#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "engel/sl2.hpp"

namespace engel {

struct Syllable {
  char gen;           // 'x' or 'y'
  std::int64_t exp;   // nonzero
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        pos(position) {}
};

/// Freely reduced word in the free group on x, y.
///
/// Grammar: word := term+ ; term := atom ('^' int)? ;
///          atom := 'x' | 'y' | '(' word ')' | '[' word ',' word ']'
/// where [u,v] expands to u v u^-1 v^-1 and whitespace is ignored.
class Word {
 public:
  Word() = default;

  static Word parse(std::string_view text);
  static Word generator(char gen, std::int64_t exp = 1);
  /// e_1 = [x,y], e_n = [e_{n-1}, y], freely reduced.
  static Word engel(unsigned n);

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool is_identity() const { return syl_.empty(); }
  /// Reduced length counted in letters.
  std::uint64_t length() const;

  Word inverse() const;
  Word operator*(const Word& rhs) const;  // concatenate and reduce

  std::string str() const;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  void append(char gen, std::int64_t exp);  // maintains free reduction
  std::vector<Syllable> syl_;
};

/// Substitution homomorphism value w(x, y).
Mat evaluate(const Word& w, const Sl2& G, const Mat& x, const Mat& y);

/// e_n(x,y) by n matrix commutators instead of the length-2^{n+1} word.
Mat evaluate_engel(unsigned n, const Sl2& G, const Mat& x, const Mat& y);

}  // namespace engel
