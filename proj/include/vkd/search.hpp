#pragma once

// Bounded enumeration of tight relations prod h_i^{-1} g h_i = 1 and the
// per-relation comparison against the C'(1/6) and isoperimetric bounds.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "dehn.hpp"
#include "errors.hpp"
#include "presentation.hpp"
#include "rational.hpp"
#include "small_cancellation.hpp"
#include "tight_word.hpp"
#include "words.hpp"

namespace vkd {

struct SearchBounds {
  std::size_t max_width = 1;
  std::size_t max_g = 1;
  std::size_t max_h_sum = 0;
};

struct SearchMethod {
  enum class Kind { dehn, filling };
  Kind kind = Kind::dehn;
  FillingBounds filling;

  std::string name() const {
    if (kind == Kind::dehn) {
      return "dehn";
    }
    return "filling:" + std::to_string(filling.max_area) + ","
           + std::to_string(filling.max_conj);
  }
};

// "dehn" or "filling:A,C".
inline SearchMethod parse_search_method(std::string const& text) {
  if (text == "dehn") {
    return {};
  }
  std::string const prefix = "filling:";
  if (text.rfind(prefix, 0) == 0) {
    auto const rest = text.substr(prefix.size());
    auto const comma = rest.find(',');
    auto digits = [&](std::string const& s) {
      if (s.empty() || s.size() > 6
          || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("malformed method '" + text
                         + "', expected filling:A,C");
      }
      return static_cast<std::size_t>(std::stoul(s));
    };
    if (comma != std::string::npos) {
      SearchMethod m;
      m.kind = SearchMethod::Kind::filling;
      m.filling.max_area = digits(rest.substr(0, comma));
      m.filling.max_conj = digits(rest.substr(comma + 1));
      return m;
    }
  }
  throw ParseError("unknown method '" + text + "', expected dehn or filling:A,C");
}

struct SearchOptions {
  SearchBounds bounds;
  SearchMethod method;
  // Optional isoperimetric constant for the liniso_bound comparison.
  std::optional<Rational> beta;
  unsigned threads = 1;
  std::uint64_t guard_cap = 10'000'000;
};

struct Relation {
  TightWord word;
  Word boundary;
  // Certificate: a filling of `boundary`, re-verified in the free group.
  Filling filling;
  // Dehn replacements or filling area, depending on the method.
  std::size_t cost = 0;
  Rational cprime;
  bool cprime_ok = true;
  std::optional<Rational> liniso;
  std::optional<bool> liniso_ok;
  // sum |h_i| <= cprime_bound on a verified C'(1/6) presentation.
  bool violation = false;
};

struct SearchReport {
  int generators = 0;
  std::size_t relator_count = 0;
  std::size_t min_length = 0;
  std::optional<std::size_t> uniform_length;
  bool c_prime_one_sixth = false;
  SearchBounds bounds;
  std::string method;
  std::optional<Rational> beta;
  std::uint64_t candidates = 0;
  std::uint64_t classes_tested = 0;
  std::vector<Relation> relations;
  std::size_t violations = 0;
  std::size_t liniso_failures = 0;
  double elapsed_seconds = 0;
};

// Estimated number of candidates before tightness filtering.
inline long double estimate_candidates(int m, SearchBounds const& b) {
  auto words = [&](std::size_t len) {
    return len == 0 ? 1.0L
                    : 2.0L * m * std::pow(2.0L * m - 1.0L,
                                          static_cast<long double>(len - 1));
  };
  long double g_total = 0;
  for (std::size_t l = 1; l <= b.max_g; ++l) {
    g_total += words(l);
  }
  long double total = 0;
  // ways[s]: number of h tuples of the current width with sum exactly s.
  std::vector<long double> ways(b.max_h_sum + 1, 0);
  ways[0] = 1;
  for (std::size_t n = 1; n <= b.max_width; ++n) {
    std::vector<long double> next(b.max_h_sum + 1, 0);
    for (std::size_t s = 0; s <= b.max_h_sum; ++s) {
      for (std::size_t l = 0; s + l <= b.max_h_sum; ++l) {
        next[s + l] += ways[s] * words(l);
      }
    }
    ways = std::move(next);
    long double tuples = 0;
    for (auto w : ways) {
      tuples += w;
    }
    total += g_total * tuples;
  }
  return total;
}

namespace detail {

  // Calls visit(hs) for every tuple of n reduced words with total length
  // <= budget, in lexicographic order of (lengths..., words...).
  template <typename Visit>
  void each_h_tuple(int m, std::size_t n, std::size_t budget,
                    std::vector<Word>& hs, Visit&& visit) {
    if (hs.size() == n) {
      visit(hs);
      return;
    }
    for (std::size_t len = 0; len <= budget; ++len) {
      for_each_reduced_word(m, len, [&](Word const& h) {
        hs.push_back(h);
        each_h_tuple(m, n, budget - len, hs, visit);
        hs.pop_back();
      });
    }
  }

  struct Partition {
    std::size_t width;
    std::size_t g_len;
    Letter first;
  };

  struct PartitionResult {
    std::vector<Relation> relations;
    std::uint64_t candidates = 0;
    std::uint64_t classes_tested = 0;
  };

  // Rewrites a filling of `key` into a filling of w, where key is a rotation
  // of w or of w^{-1}.
  inline Filling transport_filling(Filling const& of_key, Word const& key,
                                   Word const& w) {
    for (int s : {1, -1}) {
      Word const base = s > 0 ? w : invert(w);
      for (std::size_t t = 0; t < base.size(); ++t) {
        if (rotate(base, t) != key) {
          continue;
        }
        // base = p key p^{-1} with p = base[0..t).
        Word const p = base.subword(0, t);
        Filling out;
        for (auto const& f : of_key.factors) {
          out.factors.push_back(
              {free_reduce(p * f.conjugator), f.relator, f.sign});
        }
        if (s < 0) {
          std::reverse(out.factors.begin(), out.factors.end());
          for (auto& f : out.factors) {
            f.sign = -f.sign;
          }
        }
        return out;
      }
    }
    throw std::logic_error("transport_filling: key is not a rotation of w^{+-1}");
  }

}  // namespace detail

class TightRelationSearch {
 public:
  TightRelationSearch(Presentation p, SearchOptions options)
      : presentation_(std::move(p)),
        options_(std::move(options)),
        dehn_(presentation_) {
    if (presentation_.size() == 0) {
      throw PreconditionError("search: presentation has no relators");
    }
    if (options_.bounds.max_width < 1 || options_.bounds.max_g < 1) {
      throw DomainError("search: width and |g| bounds must be at least 1");
    }
    if (options_.method.kind == SearchMethod::Kind::dehn && !dehn_.verified()) {
      throw PreconditionError(
          "method=dehn requires a C'(1/6) presentation; this one is not");
    }
    if (options_.beta && !presentation_.uniform_length()) {
      throw DomainError("beta comparison needs relators of uniform length");
    }
    long double const estimate =
        estimate_candidates(presentation_.generators(), options_.bounds);
    if (estimate > static_cast<long double>(options_.guard_cap)) {
      throw GuardCapExceeded("search: about "
                             + std::to_string(static_cast<double>(estimate))
                             + " candidates exceed the guard cap "
                             + std::to_string(options_.guard_cap));
    }
    if (options_.method.kind == SearchMethod::Kind::filling) {
      filling_.emplace(presentation_, options_.method.filling);
    }
  }

  SearchReport run() const {
    auto const start = std::chrono::steady_clock::now();
    std::vector<detail::Partition> parts;
    int const m = presentation_.generators();
    for (std::size_t n = 1; n <= options_.bounds.max_width; ++n) {
      for (std::size_t gl = 1; gl <= options_.bounds.max_g; ++gl) {
        for (int i = 0; i < 2 * m; ++i) {
          parts.push_back({n, gl, Letter::from_index(i)});
        }
      }
    }
    std::vector<detail::PartitionResult> results(parts.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t i = cursor++; i < parts.size(); i = cursor++) {
        results[i] = run_partition(parts[i]);
      }
    };
    unsigned const k = std::max(1u, options_.threads);
    if (k == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < k; ++t) {
        pool.emplace_back(worker);
      }
      for (auto& t : pool) {
        t.join();
      }
    }

    SearchReport report;
    report.generators = m;
    report.relator_count = presentation_.size();
    report.min_length = presentation_.min_length();
    report.uniform_length = presentation_.uniform_length();
    report.c_prime_one_sixth = dehn_.verified();
    report.bounds = options_.bounds;
    report.method = options_.method.name();
    report.beta = options_.beta;
    for (auto& r : results) {
      report.candidates += r.candidates;
      report.classes_tested += r.classes_tested;
      for (auto& rel : r.relations) {
        report.violations += rel.violation ? 1 : 0;
        report.liniso_failures += (rel.liniso_ok && !*rel.liniso_ok) ? 1 : 0;
        report.relations.push_back(std::move(rel));
      }
    }
    report.elapsed_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
    return report;
  }

 private:
  // Filling of `key` if it is trivial under the chosen method.
  std::optional<std::pair<Filling, std::size_t>> decide(Word const& key) const {
    if (options_.method.kind == SearchMethod::Kind::dehn) {
      auto const res = dehn_.reduce(key);
      if (!res.trivial()) {
        return std::nullopt;
      }
      return std::make_pair(dehn_.trace_filling(res), res.trace.size());
    }
    auto f = filling_->find(key);
    if (!f) {
      return std::nullopt;
    }
    std::size_t const a = f->area();
    return std::make_pair(std::move(*f), a);
  }

  detail::PartitionResult run_partition(detail::Partition const& part) const {
    detail::PartitionResult out;
    int const m = presentation_.generators();
    std::map<Word, std::optional<std::pair<Filling, std::size_t>>> verdicts;
    std::vector<Word> g_words;
    for_each_reduced_word(m, part.g_len, [&](Word const& g) {
      if (g[0] == part.first) {
        g_words.push_back(g);
      }
    });
    for (auto const& g : g_words) {
      std::vector<Word> hs;
      detail::each_h_tuple(
          m, part.width, options_.bounds.max_h_sum, hs,
          [&](std::vector<Word> const& tuple) {
            if (least_factor_rotation(tuple) != tuple || !is_tight(g, tuple)) {
              return;
            }
            ++out.candidates;
            TightWord tw{g, tuple};
            Word const w = tw.assemble();
            Word const key = cyclic_class_key(w);
            auto it = verdicts.find(key);
            if (it == verdicts.end()) {
              ++out.classes_tested;
              it = verdicts.emplace(key, decide(key)).first;
            }
            if (!it->second) {
              return;
            }
            out.relations.push_back(make_relation(
                std::move(tw), w,
                detail::transport_filling(it->second->first, key, w),
                it->second->second));
          });
    }
    return out;
  }

  Relation make_relation(TightWord tw, Word const& w, Filling filling,
                         std::size_t cost) const {
    if (!is_filling_of(presentation_, filling, w)) {
      throw std::logic_error("search: certificate for " + format_word(w)
                             + " failed re-verification");
    }
    Relation rel;
    rel.cprime = cprime_bound(presentation_.min_length(), tw.width(),
                              tw.g_length());
    Rational const h_sum(static_cast<unsigned long long>(tw.h_sum()));
    rel.cprime_ok = h_sum > rel.cprime;
    rel.violation = dehn_.verified() && !rel.cprime_ok;
    if (options_.beta) {
      rel.liniso = liniso_bound(*options_.beta,
                                *presentation_.uniform_length(), tw.width(),
                                tw.g_length());
      rel.liniso_ok = h_sum > *rel.liniso;
    }
    rel.boundary = w;
    rel.filling = std::move(filling);
    rel.cost = cost;
    rel.word = std::move(tw);
    return rel;
  }

  Presentation presentation_;
  SearchOptions options_;
  DehnSolver dehn_;
  std::optional<FillingSearch> filling_;
};

inline SearchReport search_tight_relations(Presentation const& p,
                                           SearchOptions const& options) {
  return TightRelationSearch(p, options).run();
}

}  // namespace vkd
