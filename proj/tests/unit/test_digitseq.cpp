#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "rauzy/digitseq.hpp"
#include "rauzy/error.hpp"
#include "rauzy/rng.hpp"

using namespace rauzy;

namespace {

std::vector<Digit> as_vec(const DigitSeq& s) { return {s.digits().begin(), s.digits().end()}; }

}  // namespace

TEST_CASE("base and digit validation") {
  CHECK_THROWS_AS(check_base(1), DomainError);
  CHECK_THROWS_AS(check_base(257), DomainError);
  CHECK_NOTHROW(check_base(2));
  CHECK_NOTHROW(check_base(256));
  CHECK_THROWS_AS(DigitSeq(2, {0, 1, 2}), DomainError);
  CHECK_NOTHROW(DigitSeq(3, {0, 1, 2}));
}

TEST_CASE("prefix slice reversed") {
  const DigitSeq s(10, {1, 2, 3, 4, 5});
  CHECK(as_vec(s.prefix(3)) == std::vector<Digit>{1, 2, 3});
  CHECK(s.prefix(99).size() == 5);
  CHECK(as_vec(s.slice(1, 4)) == std::vector<Digit>{2, 3, 4});
  CHECK(as_vec(s.reversed()) == std::vector<Digit>{5, 4, 3, 2, 1});
}

TEST_CASE("expand_rational small cases") {
  CHECK(as_vec(expand_rational(1, 3, 10, 10)) == std::vector<Digit>(10, 3));
  CHECK(as_vec(expand_rational(1, 7, 10, 12)) == std::vector<Digit>{1, 4, 2, 8, 5, 7, 1, 4, 2, 8, 5, 7});
  CHECK(as_vec(expand_rational(1, 2, 2, 4)) == std::vector<Digit>{1, 0, 0, 0});
  CHECK(as_vec(expand_rational(0, 5, 3, 3)) == std::vector<Digit>{0, 0, 0});
  CHECK_THROWS_AS(expand_rational(3, 3, 10, 4), DomainError);
  CHECK_THROWS_AS(expand_rational(1, 0, 10, 4), DomainError);
}

TEST_CASE("expand_rational agrees with big-integer floor division") {
  oracle::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned base = 2 + static_cast<unsigned>(g.below(15));
    const std::uint64_t q = 1 + g.below(1'000'000'007ULL);
    const std::uint64_t p = g.below(q);
    const auto got = expand_rational(p, q, base, 60);
    CHECK(as_vec(got) == oracle::rational_digits(p, q, base, 60));
  }
  // denominators near 2^63 exercise the 128-bit remainder
  const std::uint64_t q = (1ULL << 63) + 12345;
  CHECK(as_vec(expand_rational(q - 1, q, 7, 40)) == oracle::rational_digits(q - 1, q, 7, 40));
}

TEST_CASE("champernowne matches string concatenation") {
  CHECK(as_vec(champernowne(10, 15)) == std::vector<Digit>{1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 1, 1, 1, 2});
  CHECK(as_vec(champernowne(2, 8)) == std::vector<Digit>{1, 1, 0, 1, 1, 1, 0, 0});
  for (unsigned b : {2u, 3u, 7u, 10u, 16u, 200u}) {
    CHECK(as_vec(champernowne(b, 5000)) == oracle::champernowne(b, 5000));
  }
}

TEST_CASE("uniform_random is seeded and roughly uniform") {
  const auto a = uniform_random(4, 40000, 9);
  CHECK(a == uniform_random(4, 40000, 9));
  CHECK_FALSE(a == uniform_random(4, 40000, 10));
  std::vector<int> c(4);
  for (Digit d : a.digits()) ++c[d];
  for (int v : c) CHECK(std::abs(v - 10000) < 400);
}

TEST_CASE("DigitRng bounded draws stay in range") {
  DigitRng r(1);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 255ULL, 1000003ULL}) {
    for (int i = 0; i < 1000; ++i) CHECK(r.below(bound) < bound);
  }
  for (int i = 0; i < 1000; ++i) {
    const double u = r.unit();
    CHECK((u >= 0.0 && u < 1.0));
  }
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
}

TEST_CASE("digit file round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "rauzy_digitseq_test";
  std::filesystem::create_directories(dir);
  oracle::Gen g(3);
  for (unsigned base : {2u, 10u, 11u, 256u}) {
    const DigitSeq s(base, g.digits(base, 777));
    CHECK(parse_digits(format_digits(s)) == s);
    write_digits(s, dir / "x.txt");
    CHECK(read_digits(dir / "x.txt") == s);
    CHECK(read_digits(dir / "x.txt", base) == s);
    CHECK_THROWS_AS(read_digits(dir / "x.txt", base == 2 ? 3 : 2), ParseError);
  }
  CHECK_THROWS_AS(read_digits(dir / "missing.txt"), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("digit file format details") {
  CHECK(format_digits(DigitSeq(10, {3, 1, 4})) == "base=10\n314\n");
  CHECK(format_digits(DigitSeq(16, {15, 0, 10})) == "base=16\n15 0 10\n");
  CHECK(parse_digits("base=2\n0101\n1100\n") == DigitSeq(2, {0, 1, 0, 1, 1, 1, 0, 0}));
  CHECK(parse_digits("base=12\n11 0\n3\n") == DigitSeq(12, {11, 0, 3}));
  CHECK_THROWS_AS(parse_digits("0101\n"), ParseError);
  CHECK_THROWS_AS(parse_digits("base=2\n012\n"), ParseError);
  CHECK_THROWS_AS(parse_digits("base=1\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_digits("base=12\n12\n"), ParseError);
  try {
    parse_digits("base=2\n0101\n01x1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
  }
}
