#pragma once

// Pieces of a presentation and the metric condition C'(lambda).
//
// A piece is a word with two essentially distinct occurrences in the cyclic
// words r^{+1}, r^{-1} (r a relator). An occurrence is a (cyclic word, start
// position) pair; cyclic words that are rotations of one another are the
// same cyclic word. An occurrence of length |c| covers all of c, so within
// one cyclic word only occurrences shorter than |c| at different starts
// count as distinct.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "presentation.hpp"
#include "rational.hpp"
#include "words.hpp"

namespace vkd {

// Position of a subword inside relator `relator` read with `sign`
// (r or r^{-1}), starting at `offset` and wrapping cyclically.
struct PieceOccurrence {
  std::size_t relator = 0;
  int sign = 1;
  std::size_t offset = 0;

  bool operator==(PieceOccurrence const&) const = default;
};

struct Piece {
  Word word;
  PieceOccurrence first;
  PieceOccurrence second;
};

struct PieceTable {
  // Indexed by relator.
  std::vector<std::size_t> max_piece;
  // Witness for each relator with max_piece > 0; `first` lies in that
  // relator's cyclic class.
  std::vector<std::optional<Piece>> witness;

  std::size_t overall_max() const {
    std::size_t m = 0;
    for (auto v : max_piece) {
      m = std::max(m, v);
    }
    return m;
  }
};

namespace detail {

  // Distinct cyclic words among {r_i, r_i^{-1}}.
  struct CyclicClass {
    Word base;
    std::size_t relator;
    int sign;
  };

  struct CyclicClasses {
    std::vector<CyclicClass> classes;
    // Class of relator i read positively.
    std::vector<std::size_t> of_relator;
  };

  inline CyclicClasses cyclic_classes(Presentation const& p) {
    CyclicClasses out;
    std::map<Word, std::size_t> index;
    out.of_relator.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (int sign : {1, -1}) {
        Word base = sign > 0 ? p[i] : invert(p[i]);
        auto [it, inserted] =
            index.try_emplace(least_rotation(base), out.classes.size());
        if (inserted) {
          out.classes.push_back({std::move(base), i, sign});
        }
        if (sign > 0) {
          out.of_relator[i] = it->second;
        }
      }
    }
    return out;
  }

  // Generalized suffix automaton over several strings.
  class SuffixAutomaton {
   public:
    struct State {
      std::size_t len = 0;
      int link = -1;
      std::vector<std::pair<int, int>> next;  // (symbol, target)

      int go(int c) const {
        for (auto const& [s, t] : next) {
          if (s == c) {
            return t;
          }
        }
        return -1;
      }
      void set(int c, int t) {
        for (auto& [s, tt] : next) {
          if (s == c) {
            tt = t;
            return;
          }
        }
        next.emplace_back(c, t);
      }
    };

    SuffixAutomaton() { states_.emplace_back(); }

    int root() const { return 0; }
    std::vector<State> const& states() const { return states_; }

    // Appends symbol c after state `last`; returns the state of the new
    // prefix.
    int extend(int last, int c) {
      int q = states_[last].go(c);
      if (q != -1) {
        if (states_[last].len + 1 == states_[q].len) {
          return q;
        }
        return split(last, c, q);
      }
      int const cur = new_state(states_[last].len + 1);
      int p = last;
      while (p != -1 && states_[p].go(c) == -1) {
        states_[p].set(c, cur);
        p = states_[p].link;
      }
      if (p == -1) {
        states_[cur].link = 0;
        return cur;
      }
      q = states_[p].go(c);
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        states_[cur].link = split(p, c, q);
      }
      return cur;
    }

   private:
    int new_state(std::size_t len) {
      states_.emplace_back();
      states_.back().len = len;
      return static_cast<int>(states_.size() - 1);
    }

    int split(int p, int c, int q) {
      int const clone = new_state(states_[p].len + 1);
      states_[clone].next = states_[q].next;
      states_[clone].link = states_[q].link;
      while (p != -1 && states_[p].go(c) == q) {
        states_[p].set(c, clone);
        p = states_[p].link;
      }
      states_[q].link = clone;
      return clone;
    }

    std::vector<State> states_;
  };

  // Up to two cyclic classes seen below a state, the pair with the longest
  // cyclic words, each with up to two distinct start residues.
  struct ClassSummary {
    struct Entry {
      std::size_t cls;
      std::size_t period;
      std::array<std::size_t, 2> ends{};  // raw end positions
      std::size_t n_ends = 0;

      void add_end(std::size_t e) {
        for (std::size_t i = 0; i < n_ends; ++i) {
          if (ends[i] % period == e % period) {
            return;
          }
        }
        if (n_ends < 2) {
          ends[n_ends++] = e;
        }
      }
    };
    std::array<Entry, 3> entries{};
    std::size_t n = 0;

    void add(std::size_t cls, std::size_t period, std::size_t end) {
      for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].cls == cls) {
          entries[i].add_end(end);
          return;
        }
      }
      Entry e{cls, period, {}, 0};
      e.add_end(end);
      entries[n++] = e;
      std::sort(entries.begin(), entries.begin() + static_cast<long>(n),
                [](Entry const& a, Entry const& b) {
                  return a.period != b.period ? a.period > b.period
                                              : a.cls < b.cls;
                });
      n = std::min<std::size_t>(n, 2);
    }

    void merge(ClassSummary const& other) {
      for (std::size_t i = 0; i < other.n; ++i) {
        for (std::size_t k = 0; k < other.entries[i].n_ends; ++k) {
          add(other.entries[i].cls, other.entries[i].period,
              other.entries[i].ends[k]);
        }
      }
    }
  };

  struct Partner {
    std::size_t bound = 0;  // longest admissible common length
    std::size_t cls = 0;
    std::size_t end = 0;
  };

  // Best partner occurrence for an occurrence of class `cls` ending at `end`.
  inline std::optional<Partner> best_partner(ClassSummary const& s,
                                             std::size_t cls,
                                             std::size_t period,
                                             std::size_t end) {
    std::optional<Partner> best;
    for (std::size_t i = 0; i < s.n; ++i) {
      auto const& e = s.entries[i];
      if (e.cls != cls) {
        Partner cand{std::min(period, e.period), e.cls, e.ends[0]};
        if (!best || cand.bound > best->bound) {
          best = cand;
        }
      } else {
        for (std::size_t k = 0; k < e.n_ends; ++k) {
          if (e.ends[k] % period != end % period) {
            Partner cand{period - 1, cls, e.ends[k]};
            if (!best || cand.bound > best->bound) {
              best = cand;
            }
            break;
          }
        }
      }
    }
    return best;
  }

}  // namespace detail

// Longest piece inside each relator, via a generalized suffix automaton over
// the words c.c[0..|c|-1) for every cyclic class c. An occurrence ending at
// position e of class c starts at cyclic position (e - len + 1) mod |c|, so
// two occurrences of the same subword are the same cyclic occurrence iff
// their classes and their ends mod |c| agree.
inline PieceTable compute_pieces(Presentation const& p) {
  auto const cc = detail::cyclic_classes(p);
  auto const& classes = cc.classes;

  detail::SuffixAutomaton sam;
  std::vector<std::vector<int>> prefix_state(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    Word const& base = classes[c].base;
    std::size_t const n = base.size();
    int last = sam.root();
    for (std::size_t e = 0; e + 1 < 2 * n; ++e) {
      last = sam.extend(last, base[e % n].index());
      prefix_state[c].push_back(last);
    }
  }
  auto const& states = sam.states();

  std::vector<detail::ClassSummary> summary(states.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::size_t const n = classes[c].base.size();
    for (std::size_t e = 0; e < prefix_state[c].size(); ++e) {
      summary[static_cast<std::size_t>(prefix_state[c][e])].add(c, n, e);
    }
  }
  std::vector<std::size_t> order(states.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return states[a].len > states[b].len;
  });
  for (std::size_t v : order) {
    int const link = states[v].link;
    if (link >= 0) {
      summary[static_cast<std::size_t>(link)].merge(summary[v]);
    }
  }

  struct Best {
    std::size_t len = 0;
    std::size_t end = 0;
    detail::Partner partner;
  };
  std::vector<Best> best(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::size_t const n = classes[c].base.size();
    for (std::size_t e = 0; e < prefix_state[c].size(); ++e) {
      int st = prefix_state[c][e];
      while (st > 0 && states[static_cast<std::size_t>(st)].len > best[c].len) {
        auto const& s = states[static_cast<std::size_t>(st)];
        auto partner = detail::best_partner(
            summary[static_cast<std::size_t>(st)], c, n, e);
        if (partner) {
          std::size_t const l = std::min(s.len, partner->bound);
          if (l > best[c].len) {
            best[c] = {l, e, *partner};
          }
        }
        st = s.link;
      }
    }
  }

  auto occurrence = [&](std::size_t cls, std::size_t end, std::size_t len) {
    auto const& k = classes[cls];
    std::size_t const n = k.base.size();
    return PieceOccurrence{k.relator, k.sign, (end + 1 + 2 * n - len) % n};
  };

  PieceTable table;
  table.max_piece.resize(p.size(), 0);
  table.witness.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t const c = cc.of_relator[i];
    Best const& b = best[c];
    table.max_piece[i] = b.len;
    if (b.len == 0) {
      continue;
    }
    std::size_t const n = classes[c].base.size();
    Piece piece;
    piece.first = occurrence(c, b.end, b.len);
    piece.second = occurrence(b.partner.cls, b.partner.end, b.len);
    std::size_t const start = (b.end + 1 + 2 * n - b.len) % n;
    for (std::size_t k = 0; k < b.len; ++k) {
      piece.word.push_back(classes[c].base[(start + k) % n]);
    }
    table.witness[i] = std::move(piece);
  }
  return table;
}

struct MetricVerdict {
  Rational lambda;
  bool holds = true;
  // max over relators of max_piece / |r|
  Rational max_piece_ratio{0};
  // First relator (lowest index) violating the condition.
  std::optional<std::size_t> failing_relator;
  std::optional<Piece> witness;
};

// C'(lambda): every piece p inside a relator r has |p| < lambda |r|.
inline MetricVerdict check_metric_condition(Presentation const& p,
                                            PieceTable const& table,
                                            Rational const& lambda) {
  if (lambda <= 0 || lambda > 1) {
    throw DomainError("lambda must lie in (0,1], got " + to_string(lambda));
  }
  MetricVerdict v;
  v.lambda = lambda;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto const len = static_cast<unsigned long long>(p[i].size());
    Rational const ratio(
        BigInt(static_cast<unsigned long long>(table.max_piece[i])),
        BigInt(len));
    v.max_piece_ratio = std::max(v.max_piece_ratio, ratio);
    if (v.holds && !(ratio < lambda)) {
      v.holds = false;
      v.failing_relator = i;
      v.witness = table.witness[i];
    }
  }
  return v;
}

inline MetricVerdict check_metric_condition(Presentation const& p,
                                            Rational const& lambda) {
  return check_metric_condition(p, compute_pieces(p), lambda);
}

inline bool is_c_prime_one_sixth(Presentation const& p) {
  return check_metric_condition(p, Rational(1, 6)).holds;
}

}  // namespace vkd
