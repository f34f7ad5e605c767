#pragma once

// Word problem for C'(1/6) presentations (Dehn's algorithm) and a bounded
// brute-force search for fillings, valid for any presentation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "presentation.hpp"
#include "small_cancellation.hpp"
#include "words.hpp"

namespace vkd {

// One factor u * r^{sign} * u^{-1} of a filling.
struct FillingFactor {
  Word conjugator;
  std::size_t relator = 0;
  int sign = 1;

  bool operator==(FillingFactor const&) const = default;
};

// An expression of a word as a product of conjugated relators in the free
// group. area() bounds the area of a van Kampen diagram for the word.
struct Filling {
  std::vector<FillingFactor> factors;

  std::size_t area() const { return factors.size(); }
  bool operator==(Filling const&) const = default;
};

inline Word factor_word(Presentation const& p, FillingFactor const& f) {
  Word const r = f.sign > 0 ? p[f.relator] : invert(p[f.relator]);
  return free_reduce(f.conjugator * r * invert(f.conjugator));
}

// Freely reduced product of all factors.
inline Word filling_product(Presentation const& p, Filling const& filling) {
  Word acc;
  for (auto const& f : filling.factors) {
    if (f.relator >= p.size() || (f.sign != 1 && f.sign != -1)) {
      throw DomainError("filling factor refers to an unknown relator");
    }
    acc = multiply(acc, factor_word(p, f));
  }
  return acc;
}

inline bool is_filling_of(Presentation const& p, Filling const& filling,
                          Word const& w) {
  return filling_product(p, filling) == free_reduce(w);
}

// A Dehn replacement: at `position` the subword `removed` (a prefix of the
// symmetrized relator `relator_word`, longer than half of it) was replaced by
// `inserted`, where relator_word = removed * inserted^{-1}.
struct DehnStep {
  std::size_t position = 0;
  Word removed;
  Word inserted;
  std::size_t symmetrized_index = 0;
  Word relator_word;
  std::size_t relator = 0;
  int sign = 1;
  std::size_t offset = 0;
  // Word before the replacement (freely reduced).
  Word before;
};

struct DehnResult {
  Word input;
  Word reduced;
  std::vector<DehnStep> trace;
  // False when the presentation is not C'(1/6): a nonempty result then does
  // not prove nontriviality.
  bool complete = true;

  bool trivial() const { return reduced.empty(); }
};

class DehnSolver {
 public:
  explicit DehnSolver(Presentation p)
      : presentation_(std::move(p)),
        symmetrized_(symmetrized_relators(presentation_)),
        verified_(is_c_prime_one_sixth(presentation_)) {
    build_trie();
  }

  Presentation const& presentation() const { return presentation_; }
  std::vector<SymmetrizedRelator> const& symmetrized() const {
    return symmetrized_;
  }
  // Whether the presentation passed C'(1/6); otherwise reductions are a
  // heuristic only.
  bool verified() const { return verified_; }

  // Repeatedly replaces the leftmost (then longest, then lowest symmetrized
  // index) subword s with s * t^{-1} a symmetrized relator and
  // 2|s| > |relator| by t, freely reducing after each replacement.
  DehnResult reduce(Word const& w) const {
    DehnResult result;
    result.input = w;
    result.complete = verified_;
    Word cur = free_reduce(w);
    while (auto m = leftmost_match(cur)) {
      auto const& sr = symmetrized_[m->index];
      DehnStep step;
      step.position = m->position;
      step.removed = cur.subword(m->position, m->length);
      step.inserted = invert(sr.word.subword(m->length,
                                             sr.word.size() - m->length));
      step.symmetrized_index = m->index;
      step.relator_word = sr.word;
      step.relator = sr.relator;
      step.sign = sr.sign;
      step.offset = sr.offset;
      step.before = cur;
      Word next = cur.subword(0, m->position) * step.inserted
                  * cur.subword(m->position + m->length,
                                cur.size() - m->position - m->length);
      cur = free_reduce(next);
      result.trace.push_back(std::move(step));
    }
    result.reduced = std::move(cur);
    return result;
  }

  bool is_trivial(Word const& w) const { return reduce(w).trivial(); }

  // Each replacement x s y -> x t y contributes the factor
  // x r x^{-1} (r = s t^{-1}); when the result is empty these factors form a
  // filling of the input with area equal to the trace length.
  Filling trace_filling(DehnResult const& result) const {
    if (!result.trivial()) {
      throw PreconditionError(
          "trace_filling: the reduction did not reach the empty word");
    }
    Filling filling;
    for (auto const& step : result.trace) {
      Word const base = step.sign > 0 ? presentation_[step.relator]
                                      : invert(presentation_[step.relator]);
      Word const prefix = step.before.subword(0, step.position);
      Word const rotation_prefix = base.subword(0, step.offset);
      filling.factors.push_back(
          {free_reduce(prefix * invert(rotation_prefix)), step.relator,
           step.sign});
    }
    return filling;
  }

 private:
  struct Match {
    std::size_t position;
    std::size_t length;
    std::size_t index;
  };

  struct TrieNode {
    std::map<int, std::size_t> children;
    // Symmetrized relators ending exactly here.
    std::vector<std::size_t> terminal;
    // Length of the shortest symmetrized relator through this node.
    std::size_t shortest_len = SIZE_MAX;
  };

  void build_trie() {
    trie_.emplace_back();
    for (std::size_t i = 0; i < symmetrized_.size(); ++i) {
      Word const& w = symmetrized_[i].word;
      std::size_t node = 0;
      trie_[node].shortest_len = std::min(trie_[node].shortest_len, w.size());
      for (Letter l : w) {
        auto it = trie_[node].children.find(l.index());
        if (it == trie_[node].children.end()) {
          trie_.emplace_back();
          it = trie_[node].children.emplace(l.index(), trie_.size() - 1).first;
        }
        node = it->second;
        trie_[node].shortest_len = std::min(trie_[node].shortest_len, w.size());
      }
      trie_[node].terminal.push_back(i);
    }
  }

  // Lowest symmetrized index among relators r with prefix w[pos..pos+k) and
  // |r| < 2k.
  std::optional<std::size_t> lowest_index_below(std::size_t node,
                                                std::size_t depth) const {
    std::optional<std::size_t> best;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
      std::size_t const v = stack.back();
      stack.pop_back();
      if (trie_[v].shortest_len >= 2 * depth) {
        continue;
      }
      for (std::size_t idx : trie_[v].terminal) {
        if (symmetrized_[idx].word.size() < 2 * depth
            && (!best || idx < *best)) {
          best = idx;
        }
      }
      for (auto const& [c, child] : trie_[v].children) {
        stack.push_back(child);
      }
    }
    return best;
  }

  std::optional<Match> leftmost_match(Word const& w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      std::size_t node = 0;
      std::optional<Match> best;
      for (std::size_t k = 1; pos + k <= w.size(); ++k) {
        auto it = trie_[node].children.find(w[pos + k - 1].index());
        if (it == trie_[node].children.end()) {
          break;
        }
        node = it->second;
        if (trie_[node].shortest_len < 2 * k) {
          if (auto idx = lowest_index_below(node, k)) {
            best = Match{pos, k, *idx};
          }
        }
      }
      if (best) {
        return best;
      }
    }
    return std::nullopt;
  }

  Presentation presentation_;
  std::vector<SymmetrizedRelator> symmetrized_;
  bool verified_;
  std::vector<TrieNode> trie_;
};

inline DehnResult dehn_reduce(Presentation const& p, Word const& w) {
  return DehnSolver(p).reduce(w);
}

inline bool is_trivial(Presentation const& p, Word const& w) {
  return DehnSolver(p).is_trivial(w);
}

struct FillingBounds {
  std::size_t max_area = 2;
  std::size_t max_conj = 2;
};

inline constexpr std::uint64_t kDefaultFillingCap = 200'000'000;

// Iterative deepening on area for a product of at most max_area factors
// u r^{+-1} u^{-1} (u reduced, |u| <= max_conj) that freely equals w.
//
// Cost model: with F distinct single factors, an area-k probe enumerates
// F^(k-2) factor prefixes and solves the last two factors by splitting the
// remainder at each position and looking up prefix/suffix tables, so the
// total work is about F^(max(max_area-2, 0)) * |w|. Construction throws
// GuardCapExceeded when that estimate (or F itself) exceeds `cap`.
class FillingSearch {
 public:
  FillingSearch(Presentation p, FillingBounds bounds,
                std::uint64_t cap = kDefaultFillingCap)
      : presentation_(std::move(p)), bounds_(bounds) {
    check_cost(cap);
    build_factors();
    build_exponent_sets();
  }

  std::size_t factor_count() const { return factors_.size(); }
  FillingBounds const& bounds() const { return bounds_; }

  // The first filling in enumeration order at the least area, or nullopt
  // when none exists within the bounds. nullopt does not prove w != 1.
  std::optional<Filling> find(Word const& target) const {
    Word const w = free_reduce(target);
    for (std::size_t area = 0; area <= bounds_.max_area; ++area) {
      std::set<std::pair<Word, std::size_t>> failed;
      std::vector<std::size_t> chosen;
      if (search(w, area, chosen, failed)) {
        Filling filling;
        for (std::size_t idx : chosen) {
          filling.factors.push_back(factors_[idx].factor);
        }
        return filling;
      }
    }
    return std::nullopt;
  }

 private:
  struct Factor {
    Word word;
    FillingFactor factor;
    std::vector<long> exponents;
  };

  static constexpr std::uint64_t kBase = 0x100000001b3ULL;

  static std::uint64_t key(std::uint64_t h, std::size_t len) {
    return h * 0x9E3779B97F4A7C15ULL + len;
  }

  // h[k] = hash of w[0..k).
  static std::vector<std::uint64_t> prefix_hashes(Word const& w) {
    std::vector<std::uint64_t> h(w.size() + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      h[i + 1] = h[i] * kBase + static_cast<std::uint64_t>(w[i].index() + 1);
    }
    return h;
  }

  // h[k] = hash of w[k..n), same polynomial as prefix_hashes.
  static std::vector<std::uint64_t> suffix_hashes(Word const& w) {
    std::size_t const n = w.size();
    std::vector<std::uint64_t> h(n + 1, 0);
    std::uint64_t pw = 1;
    for (std::size_t k = n; k-- > 0;) {
      h[k] = h[k + 1] + static_cast<std::uint64_t>(w[k].index() + 1) * pw;
      pw *= kBase;
    }
    return h;
  }

  void check_cost(std::uint64_t cap) const {
    long double conj = 0;
    long double layer = 1;
    int const two_m = 2 * presentation_.generators();
    for (std::size_t l = 0; l <= bounds_.max_conj; ++l) {
      conj += layer;
      layer *= (l == 0) ? two_m : (two_m - 1);
    }
    long double const factors = conj * 2.0L
                                * static_cast<long double>(presentation_.size());
    long double estimate = factors;
    for (std::size_t k = 2; k < bounds_.max_area; ++k) {
      estimate *= factors;
    }
    if (factors > static_cast<long double>(cap)
        || estimate > static_cast<long double>(cap)) {
      throw GuardCapExceeded(
          "filling search with max_area=" + std::to_string(bounds_.max_area)
          + ", max_conj=" + std::to_string(bounds_.max_conj)
          + " exceeds the cost cap " + std::to_string(cap));
    }
  }

  void build_factors() {
    int const m = presentation_.generators();
    std::vector<Word> conjugators;
    for (std::size_t len = 0; len <= bounds_.max_conj; ++len) {
      for_each_reduced_word(m, len,
                            [&](Word const& u) { conjugators.push_back(u); });
    }
    std::unordered_map<Word, std::size_t, WordHash> seen;
    for (auto const& u : conjugators) {
      for (std::size_t j = 0; j < presentation_.size(); ++j) {
        for (int sign : {1, -1}) {
          FillingFactor f{u, j, sign};
          Word w = factor_word(presentation_, f);
          if (seen.try_emplace(w, factors_.size()).second) {
            factors_.push_back({w, std::move(f), exponent_vector(w, m)});
          }
        }
      }
    }
    by_word_ = std::move(seen);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Word const& w = factors_[i].word;
      max_factor_len_ = std::max(max_factor_len_, w.size());
      auto const h = prefix_hashes(w);
      auto const sh = suffix_hashes(w);
      std::size_t const n = w.size();
      for (std::size_t k = 0; k <= n; ++k) {
        prefix_index_[key(h[k], k)].push_back(static_cast<std::uint32_t>(i));
        suffix_index_[key(sh[k], n - k)].push_back(
            static_cast<std::uint32_t>(i));
      }
    }
  }

  // exponent_sets_[k]: exponent vectors reachable by exactly k factors, or
  // nullopt once the set grows too large to be a useful filter.
  void build_exponent_sets() {
    int const m = presentation_.generators();
    std::set<std::vector<long>> relator_exps;
    for (auto const& r : presentation_.relators()) {
      auto e = exponent_vector(r, m);
      relator_exps.insert(e);
      for (auto& x : e) {
        x = -x;
      }
      relator_exps.insert(e);
    }
    std::set<std::vector<long>> cur{std::vector<long>(
        static_cast<std::size_t>(m), 0)};
    exponent_sets_.emplace_back(cur);
    for (std::size_t k = 1; k <= bounds_.max_area; ++k) {
      if (!exponent_sets_.back()) {
        exponent_sets_.emplace_back(std::nullopt);
        continue;
      }
      std::set<std::vector<long>> nxt;
      for (auto const& v : *exponent_sets_.back()) {
        for (auto const& e : relator_exps) {
          auto s = v;
          for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] += e[i];
          }
          nxt.insert(std::move(s));
        }
      }
      if (nxt.size() > 100'000) {
        exponent_sets_.emplace_back(std::nullopt);
      } else {
        exponent_sets_.emplace_back(std::move(nxt));
      }
    }
  }

  bool exponents_reachable(Word const& w, std::size_t k) const {
    auto const& set = exponent_sets_[k];
    return !set || set->count(exponent_vector(w, presentation_.generators()))
                       > 0;
  }

  std::optional<std::size_t> lookup(Word const& w) const {
    auto it = by_word_.find(w);
    if (it == by_word_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  // w = f2 * f3 with f2, f3 single factors.
  std::optional<std::pair<std::size_t, std::size_t>> split_two(
      Word const& w) const {
    std::size_t const n = w.size();
    auto const h = prefix_hashes(w);
    auto const sh = suffix_hashes(w);
    for (std::size_t k = 0; k <= n; ++k) {
      auto pit = prefix_index_.find(key(h[k], k));
      if (pit == prefix_index_.end()) {
        continue;
      }
      auto sit = suffix_index_.find(key(sh[k], n - k));
      if (sit == suffix_index_.end()) {
        continue;
      }
      Word const head = w.subword(0, k);
      Word const tail = w.subword(k, n - k);
      bool const by_prefix = pit->second.size() <= sit->second.size();
      auto const& cands = by_prefix ? pit->second : sit->second;
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::uint32_t c : cands) {
        Word const& f = factors_[c].word;
        std::optional<std::size_t> other;
        if (by_prefix) {
          if (f.size() < k || f.subword(0, k) != head) {
            continue;
          }
          Word const x = f.subword(k, f.size() - k);
          other = lookup(free_reduce(invert(x) * tail));
          if (other && multiply(f, factors_[*other].word) == w) {
            std::pair<std::size_t, std::size_t> cand{c, *other};
            if (!best || cand < *best) {
              best = cand;
            }
          }
        } else {
          std::size_t const tl = n - k;
          if (f.size() < tl || f.subword(f.size() - tl, tl) != tail) {
            continue;
          }
          Word const xinv = f.subword(0, f.size() - tl);
          other = lookup(free_reduce(head * invert(xinv)));
          if (other && multiply(factors_[*other].word, f) == w) {
            std::pair<std::size_t, std::size_t> cand{*other, c};
            if (!best || cand < *best) {
              best = cand;
            }
          }
        }
      }
      if (best) {
        return best;
      }
    }
    return std::nullopt;
  }

  bool search(Word const& w, std::size_t k, std::vector<std::size_t>& chosen,
              std::set<std::pair<Word, std::size_t>>& failed) const {
    if (k == 0) {
      return w.empty();
    }
    if (w.size() > k * max_factor_len_ || !exponents_reachable(w, k)) {
      return false;
    }
    if (k == 1) {
      if (auto idx = lookup(w)) {
        chosen.push_back(*idx);
        return true;
      }
      return false;
    }
    if (k == 2) {
      if (auto pair = split_two(w)) {
        chosen.push_back(pair->first);
        chosen.push_back(pair->second);
        return true;
      }
      return false;
    }
    if (failed.count({w, k}) > 0) {
      return false;
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Word const rest = free_reduce(invert(factors_[i].word) * w);
      chosen.push_back(i);
      if (search(rest, k - 1, chosen, failed)) {
        return true;
      }
      chosen.pop_back();
    }
    failed.insert({w, k});
    return false;
  }

  Presentation presentation_;
  FillingBounds bounds_;
  std::vector<Factor> factors_;
  std::unordered_map<Word, std::size_t, WordHash> by_word_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> prefix_index_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> suffix_index_;
  std::size_t max_factor_len_ = 0;
  std::vector<std::optional<std::set<std::vector<long>>>> exponent_sets_;
};

inline std::optional<Filling> filling_search(Presentation const& p,
                                             Word const& w,
                                             std::size_t max_area,
                                             std::size_t max_conj) {
  return FillingSearch(p, {max_area, max_conj}).find(w);
}

}  // namespace vkd
