#include <doctest.h>

#include "pgst/bitgroup.hpp"
#include "pgst/error.hpp"

using pgst::GroupElement;

TEST_CASE("hamming weight") {
  CHECK(pgst::hamming_weight(GroupElement::zero(7)) == 0);
  CHECK(pgst::hamming_weight(GroupElement::all_ones(5)) == 5);
  CHECK(pgst::hamming_weight(GroupElement(0b1011, 4)) == 3);
}

TEST_CASE("characters") {
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(pgst::character(GroupElement::zero(3), GroupElement(x, 3)) == 1);
  CHECK(pgst::character(GroupElement(0b101, 3), GroupElement(0b111, 3)) == 1);
  CHECK(pgst::character(GroupElement(0b001, 3), GroupElement(0b011, 3)) == -1);
  CHECK_THROWS_AS(pgst::character(GroupElement(1, 3), GroupElement(1, 4)), pgst::Error);
}

TEST_CASE("complement") {
  CHECK(pgst::complement(GroupElement::zero(4)) == GroupElement(0b1111, 4));
  CHECK(pgst::complement(GroupElement(0b1111, 4)) == GroupElement::zero(4));
  CHECK(pgst::complement(GroupElement(0b0101, 4)) == GroupElement(0b1010, 4));
  for (int d = 1; d <= 6; ++d) {
    for (std::uint32_t g = 0; g < (1u << d); ++g) {
      const GroupElement e(g, d);
      const GroupElement h = pgst::complement(e);
      CHECK(pgst::complement(h) == e);
      CHECK(pgst::hamming_weight(h) == d - pgst::hamming_weight(e));
      const bool flipped = (pgst::hamming_weight(h) % 2) != (pgst::hamming_weight(e) % 2);
      CHECK(flipped == (d % 2 == 1));
    }
  }
}

TEST_CASE("group law and validation") {
  const GroupElement a(0b0110, 4);
  CHECK(a + a == GroupElement::zero(4));
  CHECK(GroupElement::basis(2, 4).bits() == 0b0100u);
  CHECK_THROWS_AS(GroupElement(16, 4), pgst::Error);
  CHECK_THROWS_AS(GroupElement(0, 0), pgst::Error);
  CHECK_THROWS_AS(GroupElement(0, pgst::kMaxDimension + 1), pgst::Error);
  CHECK_THROWS_AS(a + GroupElement(1, 3), pgst::Error);
}

TEST_CASE("characters are multiplicative, exhaustively for d <= 6") {
  for (int d = 1; d <= 6; ++d) {
    const std::uint32_t n = 1u << d;
    for (std::uint32_t g = 0; g < n; ++g) {
      for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
          const GroupElement G(g, d), X(x, d), Y(y, d);
          REQUIRE(pgst::character(G, X + Y) == pgst::character(G, X) * pgst::character(G, Y));
        }
      }
    }
  }
}

TEST_CASE("characters are orthogonal, exhaustively for d <= 6") {
  for (int d = 1; d <= 6; ++d) {
    const std::uint32_t n = 1u << d;
    for (std::uint32_t g = 0; g < n; ++g) {
      for (std::uint32_t h = 0; h < n; ++h) {
        int sum = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
          sum += pgst::character(GroupElement(g, d), GroupElement(x, d)) *
                 pgst::character(GroupElement(h, d), GroupElement(x, d));
        }
        REQUIRE(sum == (g == h ? static_cast<int>(n) : 0));
      }
    }
  }
}
