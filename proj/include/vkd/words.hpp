#pragma once

// Free-group words over generators a..z (inverses A..Z).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace vkd {

inline constexpr int kMaxGenerators = 26;

// A signed generator. Generators are numbered from 1; the inverse of
// generator k is stored as -k.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign)
      : value_(static_cast<std::int8_t>(sign < 0 ? -generator : generator)) {}

  static constexpr Letter from_signed(int v) {
    Letter l;
    l.value_ = static_cast<std::int8_t>(v);
    return l;
  }

  constexpr int generator() const { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const { return value_ < 0 ? -1 : 1; }
  constexpr int signed_value() const { return value_; }
  constexpr Letter inverse() const { return from_signed(-value_); }
  constexpr bool cancels(Letter other) const {
    return value_ == -other.value_;
  }

  // Dense index in [0, 2m): a=0, A=1, b=2, B=3, ...
  constexpr int index() const {
    return 2 * (generator() - 1) + (value_ < 0 ? 1 : 0);
  }
  static constexpr Letter from_index(int i) {
    return Letter(i / 2 + 1, (i % 2) ? -1 : 1);
  }

  constexpr char to_char() const {
    return static_cast<char>(value_ < 0 ? 'A' + (-value_ - 1)
                                        : 'a' + (value_ - 1));
  }

  constexpr bool operator==(Letter const&) const = default;
  // Orders letters a < A < b < B < ...
  constexpr std::strong_ordering operator<=>(Letter const& other) const {
    return index() <=> other.index();
  }

 private:
  std::int8_t value_ = 0;
};

// A finite sequence of letters. Not necessarily reduced; the operations
// below say when they reduce.
class Word {
 public:
  using value_type = Letter;
  using const_iterator = std::vector<Letter>::const_iterator;

  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  Word(std::span<Letter const> letters)
      : letters_(letters.begin(), letters.end()) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const_iterator begin() const { return letters_.begin(); }
  const_iterator end() const { return letters_.end(); }
  std::vector<Letter> const& letters() const { return letters_; }
  std::span<Letter const> span() const { return letters_; }

  void push_back(Letter l) { letters_.push_back(l); }
  void pop_back() { letters_.pop_back(); }
  void reserve(std::size_t n) { letters_.reserve(n); }
  void append(Word const& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }

  Word subword(std::size_t pos, std::size_t len) const {
    return Word(std::span<Letter const>(letters_).subspan(pos, len));
  }

  bool operator==(Word const&) const = default;
  // Shortlex would be more common in group theory; plain lexicographic order
  // is what the enumerators and canonical forms use.
  std::strong_ordering operator<=>(Word const& other) const {
    return std::lexicographical_compare_three_way(
        letters_.begin(), letters_.end(), other.letters_.begin(),
        other.letters_.end());
  }

 private:
  std::vector<Letter> letters_;
};

inline Word operator*(Word a, Word const& b) {
  a.append(b);
  return a;
}

// Single left-to-right stack pass.
inline Word free_reduce(Word const& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w) {
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

inline Word invert(Word const& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out));
}

// Freely reduced product.
inline Word multiply(Word const& a, Word const& b) {
  return free_reduce(a * b);
}

inline bool is_reduced(Word const& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1].cancels(w[i])) {
      return false;
    }
  }
  return true;
}

inline bool is_cyclically_reduced(Word const& w) {
  return is_reduced(w) && (w.size() < 2 || !w.back().cancels(w.front()));
}

struct CyclicReduction {
  Word core;
  Word conjugator;
};

// free_reduce(conjugator * core * invert(conjugator)) == free_reduce(w).
inline CyclicReduction cyclic_reduce(Word const& w) {
  Word r = free_reduce(w);
  std::size_t k = 0;
  while (2 * k + 1 < r.size() && r[k].cancels(r[r.size() - 1 - k])) {
    ++k;
  }
  return {r.subword(k, r.size() - 2 * k), r.subword(0, k)};
}

// Rotation starting at offset k: w[k..] * w[..k].
inline Word rotate(Word const& w, std::size_t k) {
  if (w.empty()) {
    return w;
  }
  k %= w.size();
  std::vector<Letter> out(w.begin() + static_cast<std::ptrdiff_t>(k),
                          w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return Word(std::move(out));
}

// Offset of the lexicographically least rotation (two-pointer minimum
// expression, linear time). Ties (periodic words) give the smallest offset.
inline std::size_t least_rotation_offset(Word const& w) {
  std::size_t const n = w.size();
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t k = 0;
  while (i < n && j < n && k < n) {
    Letter const a = w[(i + k) % n];
    Letter const b = w[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) {
      ++j;
    }
    k = 0;
  }
  return n == 0 ? 0 : std::min(i, j);
}

inline Word least_rotation(Word const& w) {
  return rotate(w, least_rotation_offset(w));
}

// Canonical representative of the cyclic class of w together with w^{-1}.
inline Word cyclic_class_key(Word const& w) {
  return std::min(least_rotation(w), least_rotation(invert(w)));
}

inline bool is_rotation_of(Word const& u, Word const& v) {
  return u.size() == v.size() && least_rotation(u) == least_rotation(v);
}

// Exponent sum of each generator 1..m, indexed from 0.
inline std::vector<long> exponent_vector(Word const& w, int m) {
  std::vector<long> out(static_cast<std::size_t>(m), 0);
  for (Letter l : w) {
    out[static_cast<std::size_t>(l.generator() - 1)] += l.sign();
  }
  return out;
}

// Lowercase a..z for generators 1..m, uppercase for inverses.
inline Word parse_word(std::string_view text, int m) {
  if (m < 1 || m > kMaxGenerators) {
    throw DomainError("generator count must be in 1..26");
  }
  std::vector<Letter> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char const c = text[i];
    int gen;
    int sign;
    if (c >= 'a' && c <= 'z') {
      gen = c - 'a' + 1;
      sign = 1;
    } else if (c >= 'A' && c <= 'Z') {
      gen = c - 'A' + 1;
      sign = -1;
    } else {
      throw ParseError("non-alphabetic character '" + std::string(1, c)
                       + "' at position " + std::to_string(i));
    }
    if (gen > m) {
      throw ParseError("unknown generator '" + std::string(1, c)
                       + "' at position " + std::to_string(i) + " (m="
                       + std::to_string(m) + ")");
    }
    out.emplace_back(gen, sign);
  }
  return Word(std::move(out));
}

inline std::string format_word(Word const& w) {
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) {
    out.push_back(l.to_char());
  }
  return out;
}

// Largest generator index occurring in w (0 for the empty word).
inline int max_generator(Word const& w) {
  int g = 0;
  for (Letter l : w) {
    g = std::max(g, l.generator());
  }
  return g;
}

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Letter l : w) {
      h ^= static_cast<std::uint8_t>(l.signed_value());
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace vkd
