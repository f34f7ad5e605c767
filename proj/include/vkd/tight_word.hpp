#pragma once

// Products of conjugates W = prod_i h_i^{-1} g h_i in tight conjugate normal
// form: g nonempty, every part freely reduced, and no cancellation at any
// junction between blocks, read cyclically.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "words.hpp"

namespace vkd {

// Which block of the assembled boundary word a letter belongs to. `factor`
// is 1-based.
struct BlockTag {
  enum class Kind { g, h };
  Kind kind = Kind::g;
  std::size_t factor = 1;
  bool inverse = false;  // h-blocks only: h_i^{-1} (before g) vs h_i

  bool operator==(BlockTag const&) const = default;
};

inline std::string to_string(BlockTag const& t) {
  if (t.kind == BlockTag::Kind::g) {
    return "g(" + std::to_string(t.factor) + ")";
  }
  return "h(" + std::to_string(t.factor) + (t.inverse ? ",inv)" : ")");
}

struct TightWord {
  Word g;
  std::vector<Word> hs;

  std::size_t width() const { return hs.size(); }
  std::size_t g_length() const { return g.size(); }
  std::size_t h_sum() const {
    std::size_t s = 0;
    for (auto const& h : hs) {
      s += h.size();
    }
    return s;
  }

  // The boundary word, concatenated without reduction.
  Word assemble() const {
    Word w;
    w.reserve(hs.size() * g.size() + 2 * h_sum());
    for (auto const& h : hs) {
      w.append(invert(h));
      w.append(g);
      w.append(h);
    }
    return w;
  }

  bool operator==(TightWord const&) const = default;
  auto operator<=>(TightWord const& other) const {
    if (auto c = hs.size() <=> other.hs.size(); c != 0) {
      return c;
    }
    if (auto c = g.size() <=> other.g.size(); c != 0) {
      return c;
    }
    if (auto c = g <=> other.g; c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(
        hs.begin(), hs.end(), other.hs.begin(), other.hs.end());
  }
};

// Tag of every position of assemble(g, hs).
inline std::vector<BlockTag> block_tags(Word const& g,
                                        std::vector<Word> const& hs) {
  std::vector<BlockTag> tags;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t k = 0; k < hs[i].size(); ++k) {
      tags.push_back({BlockTag::Kind::h, i + 1, true});
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      tags.push_back({BlockTag::Kind::g, i + 1, false});
    }
    for (std::size_t k = 0; k < hs[i].size(); ++k) {
      tags.push_back({BlockTag::Kind::h, i + 1, false});
    }
  }
  return tags;
}

struct TightnessViolation {
  enum class Kind { empty_g, no_factors, g_not_reduced, h_not_reduced, junction };
  Kind kind;
  // h index (1-based) for h_not_reduced; position p of the cancelling pair
  // (p, p+1 mod |W|) for junction.
  std::size_t index = 0;
  std::string message;
};

struct TightnessCheck {
  bool tight = true;
  std::optional<TightnessViolation> violation;

  explicit operator bool() const { return tight; }
};

namespace detail {
  // Positions p such that W[p] and W[p+1 mod |W|] cancel.
  inline std::vector<std::size_t> cancelling_junctions(Word const& w) {
    std::vector<std::size_t> out;
    std::size_t const n = w.size();
    if (n < 2) {
      return out;
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (w[p].cancels(w[(p + 1) % n])) {
        out.push_back(p);
      }
    }
    return out;
  }
}  // namespace detail

inline TightnessCheck is_tight(Word const& g, std::vector<Word> const& hs) {
  using K = TightnessViolation::Kind;
  auto fail = [](K kind, std::size_t index, std::string msg) {
    return TightnessCheck{false, TightnessViolation{kind, index, std::move(msg)}};
  };
  if (g.empty()) {
    return fail(K::empty_g, 0, "g is the empty word");
  }
  if (hs.empty()) {
    return fail(K::no_factors, 0, "width must be at least 1");
  }
  if (!is_reduced(g)) {
    return fail(K::g_not_reduced, 0, "g is not freely reduced");
  }
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!is_reduced(hs[i])) {
      return fail(K::h_not_reduced, i + 1,
                  "h_" + std::to_string(i + 1) + " is not freely reduced");
    }
  }
  Word const w = TightWord{g, hs}.assemble();
  auto const junctions = detail::cancelling_junctions(w);
  if (!junctions.empty()) {
    auto const tags = block_tags(g, hs);
    std::size_t const p = junctions.front();
    std::size_t const q = (p + 1) % w.size();
    return fail(K::junction, p,
                "cancellation between positions " + std::to_string(p) + " "
                    + to_string(tags[p]) + " and " + std::to_string(q) + " "
                    + to_string(tags[q]) + " ("
                    + std::string(1, w[p].to_char()) + "."
                    + std::string(1, w[q].to_char()) + ")");
  }
  return {};
}

inline TightnessCheck is_tight(TightWord const& tw) {
  return is_tight(tw.g, tw.hs);
}

// make_tight cannot produce a tight word without changing g or the
// conjugating structure.
class TightenError : public std::runtime_error {
 public:
  enum class Kind {
    g_trivial,
    // a junction cancellation would consume letters of a g-block
    reaches_g_block,
    // adjacent h-blocks cancel but not uniformly across all factors, so no
    // global conjugation removes the cancellation
    uneven_junction,
    no_factors
  };

  TightenError(Kind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Rotates the factor list to its lexicographically least rotation.
inline std::vector<Word> least_factor_rotation(std::vector<Word> const& hs) {
  std::vector<Word> best = hs;
  std::vector<Word> cur = hs;
  for (std::size_t k = 1; k < hs.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) {
      best = cur;
    }
  }
  return best;
}

// Free reduction of every part, then removal of a suffix shared by all h_i
// (global conjugation, which preserves W = 1), then the least rotation of
// the factor list. Never increases |g| or sum |h_i|.
inline TightWord make_tight(Word const& g_in, std::vector<Word> const& hs_in) {
  if (hs_in.empty()) {
    throw TightenError(TightenError::Kind::no_factors,
                       "width must be at least 1");
  }
  TightWord tw;
  tw.g = free_reduce(g_in);
  if (tw.g.empty()) {
    throw TightenError(TightenError::Kind::g_trivial,
                       "g is trivial after free reduction");
  }
  for (auto const& h : hs_in) {
    tw.hs.push_back(free_reduce(h));
  }
  while (true) {
    Word const w = tw.assemble();
    auto const junctions = detail::cancelling_junctions(w);
    if (junctions.empty()) {
      break;
    }
    auto const tags = block_tags(tw.g, tw.hs);
    for (std::size_t p : junctions) {
      std::size_t const q = (p + 1) % w.size();
      if (tags[p].kind == BlockTag::Kind::g
          || tags[q].kind == BlockTag::Kind::g) {
        throw TightenError(TightenError::Kind::reaches_g_block,
                           "cancellation at positions " + std::to_string(p)
                               + "/" + std::to_string(q)
                               + " reaches a g-block");
      }
    }
    bool const uniform =
        std::all_of(tw.hs.begin(), tw.hs.end(),
                    [&](Word const& h) {
                      return !h.empty() && h.back() == tw.hs.front().back();
                    });
    if (!uniform) {
      throw TightenError(TightenError::Kind::uneven_junction,
                         "h-blocks cancel at position "
                             + std::to_string(junctions.front())
                             + " but do not share a common last letter");
    }
    for (auto& h : tw.hs) {
      h.pop_back();
    }
  }
  tw.hs = least_factor_rotation(tw.hs);
  return tw;
}

inline TightWord make_tight(TightWord const& tw) {
  return make_tight(tw.g, tw.hs);
}

}  // namespace vkd
