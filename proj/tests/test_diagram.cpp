#include <catch_amalgamated.hpp>

#include <vkd/diagram.hpp>
#include <vkd/diagram_io.hpp>

#include "fixtures.hpp"

using namespace vkd;

TEST_CASE("single-face fixture validates") {
  auto const d = fixtures::aBab_diagram();
  auto const p = fixtures::aBab_presentation();
  auto const report = validate(d, p, parse_word("aBab", 2));
  for (auto const& i : report.issues) {
    INFO(i.code << ": " << i.message);
  }
  CHECK(report.ok());
  CHECK(area(d) == 1);
  CHECK(boundary_length(d) == 4);
  CHECK(format_word(boundary_word(d)) == "aBab");
  CHECK(outer_contribution(d, 0) == 4);
  CHECK_THROWS_AS(outer_contribution(d, 1), DomainError);
  CHECK_THROWS_AS(outer_contribution(d, 7), DomainError);
}

TEST_CASE("boundary mismatch is reported") {
  auto const d = fixtures::aBab_diagram();
  auto const report =
      validate(d, fixtures::aBab_presentation(), parse_word("abAB", 2));
  CHECK(report.has("boundary_word"));
}

TEST_CASE("empty diagram") {
  Diagram d;
  d.faces.push_back({0, {}, "outer"});
  d.outer = 0;
  auto const report = validate(d, fixtures::aBab_presentation(), Word());
  CHECK(report.ok());
  CHECK(area(d) == 0);
  CHECK(boundary_word(d).empty());
}

TEST_CASE("json round trip is byte-identical") {
  auto const d = fixtures::aBab_diagram();
  auto const text = store_diagram(d);
  CHECK(load_diagram(text) == d);
  CHECK(store_diagram(load_diagram(text)) == text);
  CHECK_THROWS_AS(load_diagram(std::string("{")), ParseError);
  CHECK_THROWS_AS(load_diagram(std::string("{\"faces\": []}")), ParseError);
}

TEST_CASE("large face and isoperimetry") {
  auto const d = fixtures::aBab_diagram();
  CHECK(find_large_face(d, Rational(7, 2)) == 0);
  CHECK_FALSE(find_large_face(d, Rational(4)));
  CHECK(check_isoperimetric(d, Rational(1, 2), 4));
  CHECK_FALSE(check_isoperimetric(d, Rational(1), 4));
}

TEST_CASE("block counts on the fixture") {
  auto const d = fixtures::aBab_diagram();
  TightWord const tw{parse_word("a", 2), {Word(), parse_word("b", 2)}};
  auto const blocks = block_decomposition(tw);
  CHECK(blocks.g_count() == 2);
  CHECK(blocks.h_count() == 2);
  CHECK(count_sg_sh(d, 0, blocks) == BlockCount{2, 2});

  TightWord const longer{parse_word("ab", 2), {Word()}};
  CHECK_THROWS_AS(count_sg_sh(d, 0, block_decomposition(longer)),
                  DomainError);
  TightWord const loose{parse_word("a", 2),
                        {parse_word("b", 2), parse_word("b", 2)}};
  CHECK_THROWS_AS(block_decomposition(loose), PreconditionError);
}

TEST_CASE("targeted corruptions") {
  auto const p = fixtures::aBab_presentation();
  auto const w = parse_word("aBab", 2);
  auto check = [&](Diagram const& d, std::string const& code) {
    auto const r = validate(d, p, w);
    INFO("expected " << code);
    CHECK(r.has(code));
  };
  auto const base = fixtures::aBab_diagram();
  {
    auto d = base;
    d.halfedges[0].twin = 0;
    check(d, "twin_fixed_point");
  }
  {
    auto d = base;
    d.halfedges[0].label = parse_word("b", 2)[0];
    check(d, "twin_label");
  }
  {
    auto d = base;
    d.halfedges[1].origin = 0;
    check(d, "next_origin");
  }
  {
    auto d = base;
    d.faces[0].relator = "abAB";
    check(d, "relator_annotation");
  }
  {
    auto d = base;
    d.base = 4;
    check(d, "base_side");
  }
  {
    auto d = base;
    d.outer = 0;
    check(d, "outer_annotation");
  }
  {
    auto d = base;
    d.halfedges[3].next = 1;
    check(d, "next_permutation");
  }
}

TEST_CASE("mutation fuzz") {
  auto const base = fixtures::aBab_diagram();
  auto const p = fixtures::aBab_presentation();
  auto const w = parse_word("aBab", 2);
  SplitMix64 rng(99);
  for (int i = 0; i < 500; ++i) {
    auto const d = fixtures::mutate(base, rng);
    REQUIRE_FALSE(d == base);
    REQUIRE_FALSE(validate(d, p, w).ok());
  }
}
