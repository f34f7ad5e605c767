#include <catch_amalgamated.hpp>

#include <vkd/dehn.hpp>
#include <vkd/random.hpp>

using namespace vkd;

namespace {

Presentation genus2() { return Presentation(4, {parse_word("abABcdCD", 4)}); }

Word g4(std::string const& s) { return parse_word(s, 4); }

}  // namespace

TEST_CASE("dehn reduces relator conjugates to the empty word") {
  DehnSolver const solver(genus2());
  REQUIRE(solver.verified());
  for (auto const* s : {"abABcdCD", "cdCDabAB", "dcDCbaBA"}) {
    auto const r = solver.reduce(g4(s));
    CHECK(r.trivial());
    CHECK(r.complete);
  }
  auto const conj = free_reduce(g4("ab") * g4("abABcdCD") * g4("BA"));
  CHECK(solver.is_trivial(conj));
}

TEST_CASE("dehn leaves short nontrivial words") {
  DehnSolver const solver(genus2());
  for (auto const* s : {"a", "ab", "abAB", "abABcd"}) {
    auto const r = solver.reduce(g4(s));
    CHECK_FALSE(r.trivial());
  }
}

TEST_CASE("replacement shortens: 5 of 8 letters become 3") {
  DehnSolver const solver(genus2());
  auto const r = solver.reduce(g4("abABc"));
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].removed.size() == 5);
  CHECK(r.trace[0].inserted.size() == 3);
  CHECK(format_word(r.reduced) == "dcD");
}

TEST_CASE("trace replays to a filling") {
  auto const p = genus2();
  DehnSolver const solver(p);
  SplitMix64 rng(5);
  int trivial = 0;
  for (int i = 0; i < 300; ++i) {
    // Random product of conjugated relators, so the word is trivial.
    Word w;
    std::size_t const k = 1 + rng.below(3);
    for (std::size_t j = 0; j < k; ++j) {
      Word const u = random_reduced_word(rng, 4, rng.below(4));
      Word const r = rng.below(2) ? p[0] : invert(p[0]);
      w = multiply(w, u * r * invert(u));
    }
    auto const res = solver.reduce(w);
    if (!res.trivial()) {
      continue;
    }
    ++trivial;
    auto const f = solver.trace_filling(res);
    REQUIRE(f.area() == res.trace.size());
    REQUIRE(is_filling_of(p, f, w));
  }
  // Under C'(1/6) Dehn's algorithm decides the word problem.
  CHECK(trivial == 300);
}

TEST_CASE("heuristic mode off C'(1/6)") {
  Presentation const p(2, {parse_word("abAB", 2)});
  DehnSolver const solver(p);
  CHECK_FALSE(solver.verified());
  auto const r = solver.reduce(parse_word("abAB", 2));
  CHECK_FALSE(r.complete);
  CHECK(r.trivial());
  CHECK_THROWS_AS(solver.trace_filling(solver.reduce(parse_word("a", 2))),
                  PreconditionError);
}

TEST_CASE("filling search") {
  auto const p = genus2();
  auto const f = filling_search(p, g4("abABcdCD"), 1, 0);
  REQUIRE(f);
  CHECK(f->area() == 1);
  CHECK(is_filling_of(p, *f, g4("abABcdCD")));

  CHECK(filling_search(p, Word(), 0, 0)->area() == 0);
  CHECK_FALSE(filling_search(p, g4("ab"), 2, 2));

  // Two conjugates.
  Word const w = multiply(g4("abABcdCD"), free_reduce(g4("a") * g4("dcDCbaBA")
                                                        * g4("A")));
  auto const f2 = filling_search(p, w, 2, 1);
  REQUIRE(f2);
  CHECK(is_filling_of(p, *f2, w));
  CHECK(f2->area() <= 2);

  auto const w3 = multiply(multiply(g4("abABcdCD"), g4("abABcdCD")),
                           g4("cdCDabAB"));
  auto const f3 = filling_search(p, w3, 3, 4);
  REQUIRE(f3);
  CHECK(is_filling_of(p, *f3, w3));
}

TEST_CASE("filling search guard") {
  Presentation const p(3, {parse_word("abcABC", 3), parse_word("aabbcc", 3)});
  CHECK_THROWS_AS(FillingSearch(p, {6, 8}, 1000), GuardCapExceeded);
}
