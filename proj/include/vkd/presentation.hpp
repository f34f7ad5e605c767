#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "words.hpp"

namespace vkd {

// <a_1..a_m | relators>. Every relator is nonempty and cyclically reduced.
// Relator lengths may differ; the density sampler always produces uniform
// length L.
class Presentation {
 public:
  Presentation() = default;

  Presentation(int m, std::vector<Word> relators)
      : m_(m), relators_(std::move(relators)) {
    if (m_ < 1 || m_ > kMaxGenerators) {
      throw DomainError("generator count must be in 1..26, got "
                        + std::to_string(m_));
    }
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      Word const& r = relators_[i];
      if (r.empty()) {
        throw DomainError("relator " + std::to_string(i) + " is empty");
      }
      if (max_generator(r) > m_) {
        throw DomainError("relator " + format_word(r)
                          + " uses a generator beyond m="
                          + std::to_string(m_));
      }
      if (!is_cyclically_reduced(r)) {
        throw DomainError("relator " + format_word(r)
                          + " is not cyclically reduced");
      }
    }
  }

  int generators() const { return m_; }
  std::vector<Word> const& relators() const { return relators_; }
  std::size_t size() const { return relators_.size(); }
  Word const& operator[](std::size_t i) const { return relators_[i]; }

  std::size_t min_length() const {
    std::size_t l = 0;
    for (auto const& r : relators_) {
      l = (l == 0) ? r.size() : std::min(l, r.size());
    }
    return l;
  }

  std::size_t max_length() const {
    std::size_t l = 0;
    for (auto const& r : relators_) {
      l = std::max(l, r.size());
    }
    return l;
  }

  // Common relator length when all relators have the same length.
  std::optional<std::size_t> uniform_length() const {
    if (relators_.empty() || min_length() != max_length()) {
      return std::nullopt;
    }
    return min_length();
  }

  bool operator==(Presentation const&) const = default;

 private:
  int m_ = 1;
  std::vector<Word> relators_;
};

struct DensityParams {
  int m = 2;
  Rational d{1, 4};
  std::size_t L = 8;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultRelatorCap = 10'000'000;
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// floor((2m-1)^(d*L)), computed exactly: with d*L = p/q in lowest terms the
// result is the integer q-th root of (2m-1)^p.
inline std::uint64_t relator_count(int m, Rational const& d, std::size_t L,
                                   std::uint64_t cap = kDefaultRelatorCap) {
  if (m < 2 || m > kMaxGenerators) {
    throw DomainError("relator_count: m must be in 2..26");
  }
  if (d <= 0 || d >= 1) {
    throw DomainError("relator_count: density must lie in (0,1), got "
                      + to_string(d));
  }
  if (L < 1) {
    throw DomainError("relator_count: L must be >= 1");
  }
  Rational const exponent = d * static_cast<unsigned long long>(L);
  BigInt const p = numerator(exponent);
  BigInt const q = denominator(exponent);
  int const base = 2 * m - 1;

  // Rough magnitude screen before any big-integer work. The exact root below
  // decides every case that passes.
  double const log_estimate =
      static_cast<double>(exponent) * std::log(static_cast<double>(base));
  if (log_estimate > std::log(static_cast<double>(cap)) + 1.0) {
    throw GuardCapExceeded("relator count (2m-1)^(dL) ~ e^"
                           + std::to_string(log_estimate)
                           + " exceeds the cap " + std::to_string(cap));
  }
  auto const p_exp = static_cast<unsigned>(p);
  auto const q_root = static_cast<unsigned>(q);
  BigInt const power = boost::multiprecision::pow(BigInt(base), p_exp);
  if (q_root == 1) {
    if (power > cap) {
      throw GuardCapExceeded("relator count exceeds the cap "
                             + std::to_string(cap));
    }
    return static_cast<std::uint64_t>(power);
  }
  // Largest x with x^q <= power; x <= cap + 1 by the screen above.
  std::uint64_t lo = 1;  // 1^q <= power always
  std::uint64_t hi = cap + 2;
  while (hi - lo > 1) {
    std::uint64_t const mid = lo + (hi - lo) / 2;
    if (boost::multiprecision::pow(BigInt(mid), q_root) <= power) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo > cap) {
    throw GuardCapExceeded("relator count exceeds the cap "
                           + std::to_string(cap));
  }
  return lo;
}

// Number of reduced words of length n: 2m(2m-1)^(n-1).
inline BigInt reduced_count(int m, std::size_t n) {
  if (n == 0) {
    return 1;
  }
  return BigInt(2 * m)
         * boost::multiprecision::pow(BigInt(2 * m - 1),
                                      static_cast<unsigned>(n - 1));
}

// Number of cyclically reduced words of length n:
// (2m-1)^n + (m-1)(-1)^n + m for n >= 1.
inline BigInt cyclically_reduced_count(int m, std::size_t n) {
  if (n == 0) {
    return 1;
  }
  BigInt total = boost::multiprecision::pow(BigInt(2 * m - 1),
                                            static_cast<unsigned>(n));
  total += (n % 2 == 0) ? BigInt(m - 1) : BigInt(-(m - 1));
  total += m;
  return total;
}

namespace detail {
  template <typename Visit>
  void each_reduced(int m, std::size_t n, Word& prefix, Visit&& visit) {
    if (prefix.size() == n) {
      visit(prefix);
      return;
    }
    for (int i = 0; i < 2 * m; ++i) {
      Letter const l = Letter::from_index(i);
      if (!prefix.empty() && prefix.back().cancels(l)) {
        continue;
      }
      prefix.push_back(l);
      each_reduced(m, n, prefix, visit);
      prefix.pop_back();
    }
  }

  inline void check_enumeration_size(BigInt const& count, std::uint64_t cap,
                                     char const* what) {
    if (count > cap) {
      throw GuardCapExceeded(std::string(what) + ": " + count.str()
                             + " words exceed the cap "
                             + std::to_string(cap));
    }
  }
}  // namespace detail

// Calls visit(word) for every reduced word of length n, in lexicographic
// order. No size guard; callers own the cost.
template <typename Visit>
void for_each_reduced_word(int m, std::size_t n, Visit&& visit) {
  Word prefix;
  prefix.reserve(n);
  detail::each_reduced(m, n, prefix, visit);
}

inline std::vector<Word> enumerate_reduced(
    int m, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  detail::check_enumeration_size(reduced_count(m, n), cap,
                                 "enumerate_reduced");
  std::vector<Word> out;
  for_each_reduced_word(m, n, [&](Word const& w) { out.push_back(w); });
  return out;
}

// All cyclically reduced words of length n, lexicographically sorted.
inline std::vector<Word> enumerate_cyclically_reduced(
    int m, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  if (m < 1 || m > kMaxGenerators) {
    throw DomainError("enumerate_cyclically_reduced: m must be in 1..26");
  }
  detail::check_enumeration_size(cyclically_reduced_count(m, n), cap,
                                 "enumerate_cyclically_reduced");
  std::vector<Word> out;
  for_each_reduced_word(m, n, [&](Word const& w) {
    if (is_cyclically_reduced(w)) {
      out.push_back(w);
    }
  });
  return out;
}

// Uniform reduced word of length n: first letter uniform over 2m, each later
// letter uniform over the 2m-1 letters that do not cancel.
inline Word random_reduced_word(SplitMix64& rng, int m, std::size_t n) {
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (out.empty()) {
      out.push_back(Letter::from_index(
          static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * m)))));
    } else {
      int idx = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * m - 1)));
      if (idx >= out.back().inverse().index()) {
        ++idx;
      }
      out.push_back(Letter::from_index(idx));
    }
  }
  return Word(std::move(out));
}

// Gromov density model G(m,d,L): relator_count(m,d,L) distinct cyclically
// reduced words of length exactly L. A draw is a uniform reduced word,
// accepted iff cyclically reduced; duplicates are redrawn.
inline Presentation sample_presentation(DensityParams const& params,
                                        std::uint64_t cap = kDefaultRelatorCap) {
  std::uint64_t const count = relator_count(params.m, params.d, params.L, cap);
  BigInt const available = cyclically_reduced_count(params.m, params.L);
  if (BigInt(count) > available) {
    throw PreconditionError(
        "infeasible: " + std::to_string(count)
        + " distinct relators requested but only " + available.str()
        + " cyclically reduced words of length " + std::to_string(params.L)
        + " exist");
  }
  SplitMix64 rng(params.seed);
  std::set<Word> seen;
  std::vector<Word> relators;
  relators.reserve(count);
  while (relators.size() < count) {
    Word w = random_reduced_word(rng, params.m, params.L);
    if (!is_cyclically_reduced(w)) {
      continue;
    }
    if (seen.insert(w).second) {
      relators.push_back(std::move(w));
    }
  }
  return Presentation(params.m, std::move(relators));
}

// A member of the symmetrized relator set: rotate(base, offset), where base
// is relator `relator` (sign +1) or its inverse (sign -1).
struct SymmetrizedRelator {
  Word word;
  std::size_t relator = 0;
  int sign = 1;
  std::size_t offset = 0;
};

// Closure of the relators under inversion and cyclic permutation, sorted by
// word and deduplicated. Each word keeps its least provenance
// (relator, +1 before -1, offset).
inline std::vector<SymmetrizedRelator> symmetrized_relators(
    Presentation const& p) {
  std::map<Word, SymmetrizedRelator> by_word;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int sign : {1, -1}) {
      Word const base = sign > 0 ? p[i] : invert(p[i]);
      for (std::size_t k = 0; k < base.size(); ++k) {
        Word w = rotate(base, k);
        by_word.try_emplace(w, SymmetrizedRelator{w, i, sign, k});
      }
    }
  }
  std::vector<SymmetrizedRelator> out;
  out.reserve(by_word.size());
  for (auto& [w, s] : by_word) {
    out.push_back(std::move(s));
  }
  return out;
}

inline Presentation symmetrize(Presentation const& p) {
  std::vector<Word> words;
  for (auto const& s : symmetrized_relators(p)) {
    words.push_back(s.word);
  }
  return Presentation(p.generators(), std::move(words));
}

// Text format: first non-comment line "m=<int>", then one relator per line.
// Lines starting with '#' and blank lines are ignored.
inline Presentation read_presentation(std::istream& in) {
  std::string line;
  std::optional<int> m;
  std::vector<Word> relators;
  std::size_t lineno = 0;
  auto trim = [](std::string const& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string const t = trim(line);
    if (t.empty() || t[0] == '#') {
      continue;
    }
    if (!m) {
      if (t.rfind("m=", 0) != 0) {
        throw ParseError("line " + std::to_string(lineno)
                         + ": expected 'm=<int>' header");
      }
      std::string const digits = t.substr(2);
      if (digits.empty() || digits.size() > 3
          || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("line " + std::to_string(lineno)
                         + ": malformed generator count '" + digits + "'");
      }
      m = std::stoi(digits);
      if (*m < 1 || *m > kMaxGenerators) {
        throw ParseError("line " + std::to_string(lineno)
                         + ": generator count must be in 1..26");
      }
      continue;
    }
    try {
      relators.push_back(parse_word(t, *m));
    } catch (ParseError const& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!m) {
    throw ParseError("missing 'm=<int>' header");
  }
  try {
    return Presentation(*m, std::move(relators));
  } catch (DomainError const& e) {
    throw ParseError(e.what());
  }
}

inline Presentation parse_presentation(std::string const& text) {
  std::istringstream in(text);
  return read_presentation(in);
}

inline void write_presentation(std::ostream& out, Presentation const& p,
                               std::vector<std::string> const& comments = {}) {
  out << "m=" << p.generators() << '\n';
  for (auto const& c : comments) {
    out << "# " << c << '\n';
  }
  for (auto const& r : p.relators()) {
    out << format_word(r) << '\n';
  }
}

}  // namespace vkd
