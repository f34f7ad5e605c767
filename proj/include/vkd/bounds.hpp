#pragma once

// Lower bounds on sum |h_i| for a tight relation prod h_i^{-1} g h_i = 1, and
// the thresholds derived from them. Everything is exact rational arithmetic;
// every inequality these feed is strict.

#include <cstddef>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace vkd {

namespace detail {
  inline Rational q(std::size_t v) {
    return Rational(static_cast<unsigned long long>(v));
  }

  inline void check_density(Rational const& d, Rational const& eps) {
    if (d <= 0 || d >= Rational(1, 2)) {
      throw DomainError("density d must lie in (0, 1/2), got " + to_string(d));
    }
    if (eps <= 0) {
      throw DomainError("epsilon must be positive, got " + to_string(eps));
    }
  }

  inline void check_width(std::size_t n) {
    if (n < 1) {
      throw DomainError("width n must be at least 1");
    }
  }
}  // namespace detail

// beta*L/2 - n*|g|/2, from a strict (beta, L)-linear isoperimetric inequality.
inline Rational liniso_bound(Rational const& beta, std::size_t L,
                             std::size_t n, std::size_t g_len) {
  if (beta <= 0 || beta > 1) {
    throw DomainError("beta must lie in (0, 1], got " + to_string(beta));
  }
  detail::check_width(n);
  return beta * detail::q(L) / 2 - detail::q(n) * detail::q(g_len) / 2;
}

// (1-2d-eps)*L/2 - n*|g|/2 at density d < 1/2.
inline Rational main_bound(Rational const& d, Rational const& eps,
                           std::size_t L, std::size_t n, std::size_t g_len) {
  detail::check_density(d, eps);
  detail::check_width(n);
  return (1 - 2 * d - eps) * detail::q(L) / 2
         - detail::q(n) * detail::q(g_len) / 2;
}

// L_min/4 - n*|g|/2 under C'(1/6) (one Greendlinger face).
inline Rational cprime_bound(std::size_t L_min, std::size_t n,
                             std::size_t g_len) {
  if (L_min < 1) {
    throw DomainError("L_min must be at least 1");
  }
  detail::check_width(n);
  return detail::q(L_min) / 4 - detail::q(n) * detail::q(g_len) / 2;
}

// L_min/2 - n*|g|/2. Only valid when the caller knows the diagram has a
// cyclically reduced boundary and area >= 2, so that two distinct faces each
// contribute an outer arc longer than L_min/2.
inline Rational cprime_bound_two_face(std::size_t L_min, std::size_t n,
                                      std::size_t g_len) {
  if (L_min < 1) {
    throw DomainError("L_min must be at least 1");
  }
  detail::check_width(n);
  return detail::q(L_min) / 2 - detail::q(n) * detail::q(g_len) / 2;
}

// The stated consequence of cprime_bound: sum |h_i| < L_min/4 implies
// |g| >= L_min/(4n). cprime_bound alone only yields cprime_g_lower_bound, which
// implies this when sum |h_i| <= L_min/8 but not on (L_min/8, L_min/4).
inline bool cprime_short_h_implies_long_g(std::size_t L_min, std::size_t n,
                                          std::size_t g_len,
                                          std::size_t h_sum) {
  detail::check_width(n);
  if (!(detail::q(h_sum) < detail::q(L_min) / 4)) {
    return true;
  }
  return detail::q(g_len) >= detail::q(L_min) / (4 * detail::q(n));
}

// Strict lower bound on |g| equivalent to sum |h_i| > cprime_bound:
// |g| > (L_min/2 - 2 sum |h_i|) / n.
inline Rational cprime_g_lower_bound(std::size_t L_min, std::size_t n,
                                     std::size_t h_sum) {
  if (L_min < 1) {
    throw DomainError("L_min must be at least 1");
  }
  detail::check_width(n);
  return (detail::q(L_min) / 2 - 2 * detail::q(h_sum)) / detail::q(n);
}

struct ShortWitnessThresholds {
  Rational g_max;
  Rational h_sum_max;
};

// No tight relation has both |g| <= g_max and sum |h_i| <= h_sum_max:
// g_max = (1-2d-eps)L/(2n), h_sum_max = (1-2d-eps)L/4.
inline ShortWitnessThresholds short_witness_thresholds(Rational const& d,
                                                       Rational const& eps,
                                                       std::size_t n,
                                                       std::size_t L) {
  detail::check_density(d, eps);
  detail::check_width(n);
  Rational const beta_l = (1 - 2 * d - eps) * detail::q(L);
  return {beta_l / (2 * detail::q(n)), beta_l / 4};
}

// Lower bound on the width: ((1-2d-eps)L - 2 sum|h_i|) / |g|. A value <= 0
// means the constraint is vacuous.
inline Rational width_tradeoff(Rational const& d, Rational const& eps,
                               std::size_t L, std::size_t g_len,
                               std::size_t h_sum) {
  detail::check_density(d, eps);
  if (g_len == 0) {
    throw DomainError("width_tradeoff: |g| must be at least 1");
  }
  return ((1 - 2 * d - eps) * detail::q(L) - 2 * detail::q(h_sum))
         / detail::q(g_len);
}

}  // namespace vkd
