#include <doctest.h>

#include "oracles.hpp"
#include "rauzy/codec.hpp"

using namespace rauzy;

namespace {

std::string as_string(std::span<const Digit> d) {
  std::string s;
  for (Digit x : d) s.push_back(static_cast<char>('0' + x));
  return s;
}

/// All b^2k payload pairs, as a de Bruijn-like walk: every ordered pair of
/// values occurs as consecutive blocks.
std::vector<std::uint64_t> pair_walk(std::uint64_t values) {
  std::vector<std::uint64_t> walk;
  for (std::uint64_t a = 0; a < values; ++a) {
    for (std::uint64_t b = 0; b < values; ++b) {
      walk.push_back(a);
      walk.push_back(b);
    }
  }
  return walk;
}

DigitSeq payload_digits(const std::vector<std::uint64_t>& values, const CodecParams& cp) {
  std::vector<Digit> d;
  for (auto v : values) {
    for (unsigned t = 0; t < cp.k; ++t) {
      d.push_back(static_cast<Digit>(v % cp.base));
      v /= cp.base;
    }
  }
  return DigitSeq(cp.base, d);
}

}  // namespace

TEST_CASE("parameters") {
  const auto cp = CodecParams::make(2, 5, 1601);
  CHECK(cp.p == 6);
  CHECK(cp.w == 86);
  CHECK(cp.cycle_len() == 42);
  CHECK(cp.block_len() == 1606);
  CHECK(cp.payload_values() == 32);
  CHECK(CodecParams::min_ell(2, 5) == 1601);
  CHECK(CodecParams::make(2, 5).ell == 1601);
  CHECK_THROWS_AS(CodecParams::make(2, 5, 1600), DomainError);
  CHECK_THROWS_AS(CodecParams::make(2, 4), DomainError);  // k(b-1) = 2b
  CHECK_THROWS_AS(CodecParams::make(1, 5), DomainError);
  const auto c3 = CodecParams::make(3, 4);
  CHECK(c3.p == 8);  // ceil(4 log2 3) + 1
  CHECK(c3.ell > 10ULL * 4 * 81);
  CHECK(c3.ell >= 80 * c3.cycle_len() + 5 * c3.p + 1 + c3.w);
}

TEST_CASE("payload_value and bin_rep") {
  const std::vector<Digit> s{1, 0, 1, 1};
  CHECK(payload_value(s, 2) == 13);
  CHECK(payload_value(s, 3) == 1 + 9 + 27);
  CHECK(bin_rep(s, 2, 6) == std::vector<Digit>{1, 0, 1, 1, 0, 0});
  CHECK_THROWS_AS(bin_rep(s, 2, 3), DomainError);
}

TEST_CASE("property: expand_c never produces five ones, across seams too") {
  CHECK(expand_c(std::vector<Digit>{0}) == std::vector<Digit>{1, 1, 0, 0, 1});
  CHECK(expand_c(std::vector<Digit>{1}) == std::vector<Digit>{1, 1, 0, 1, 1});
  // every bit string up to length 10 covers every seam context
  for (unsigned len = 1; len <= 10; ++len) {
    for (unsigned v = 0; v < (1u << len); ++v) {
      std::vector<Digit> bits(len);
      for (unsigned i = 0; i < len; ++i) bits[i] = (v >> i) & 1;
      const auto out = expand_c(bits);
      unsigned run = 0, worst = 0;
      for (Digit d : out) {
        run = d ? run + 1 : 0;
        worst = std::max(worst, run);
      }
      CHECK(worst <= 4);
    }
  }
}

TEST_CASE("canonical sequence matches the string construction") {
  for (auto [b, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 5}, {2, 6}, {3, 4}, {4, 3}}) {
    const auto cp = CodecParams::make(b, k);
    const CanonicalSequence canon(cp);
    std::string want;
    for (std::uint64_t i = 0; i < cp.payload_values(); ++i) {
      const auto t = oracle::canonical_cycle(i, b, k, cp.p);
      CHECK(t.size() == cp.cycle_len());
      CHECK(as_string(canon.cycle(i)) == t);
      want += t;
    }
    std::string got;
    for (std::uint64_t j = 0; j < canon.size(); ++j) got.push_back(static_cast<char>('0' + canon.at(j)));
    CHECK(got == want);
  }
}

TEST_CASE("property: every payload round trips") {
  for (auto [b, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 5}, {2, 7}, {3, 4}}) {
    const auto cp = CodecParams::make(b, k);
    const CanonicalSequence canon(cp);
    for (std::uint64_t v = 0; v < cp.payload_values(); ++v) {
      std::vector<Digit> payload(k);
      std::uint64_t r = v;
      for (auto& d : payload) {
        d = static_cast<Digit>(r % b);
        r /= b;
      }
      const auto gap = encode_block(payload, cp);
      REQUIRE(gap.size() == cp.ell);
      // gap = zeros then t_0 ... t_{v-1} and the first 5p+1 digits of t_v
      std::string run;
      for (std::uint64_t i = 0; i < v; ++i) run += oracle::canonical_cycle(i, b, k, cp.p);
      run += oracle::canonical_cycle(v, b, k, cp.p).substr(0, 5 * cp.p + 1);
      const std::string want = std::string(cp.ell - run.size(), '0') + run;
      CHECK(as_string(gap) == want);
      // the payload continues the run with the b_v field
      CHECK(as_string(payload) == oracle::canonical_cycle(v, b, k, cp.p).substr(5 * cp.p + 1, k));
      std::vector<Digit> block = gap;
      block.insert(block.end(), payload.begin(), payload.end());
      const auto back = decode_block(block, cp);
      REQUIRE(back.has_value());
      CHECK(*back == payload);
      block[cp.ell - 1] ^= 1;  // the separator before b_v
      CHECK_FALSE(decode_block(block, cp).has_value());
    }
  }
}

TEST_CASE("property: at most two errors per block for every pair of neighbouring payloads") {
  const auto cp = CodecParams::make(2, 5);
  const auto walk = pair_walk(cp.payload_values());
  const auto payload = payload_digits(walk, cp);
  const auto u = payload_track(payload, cp, walk.size());
  const auto v = build_v(u, cp, walk.size());
  const auto errors = verify_block_errors(v, cp, walk.size());
  CHECK(*std::max_element(errors.begin(), errors.end()) <= 2);
}

TEST_CASE("property: base 3 blocks stay within two errors") {
  const auto cp = CodecParams::make(3, 4);
  oracle::Gen g(31);
  std::vector<std::uint64_t> values{0, 0, 80, 80, 0, 1, 79};
  for (int i = 0; i < 40; ++i) values.push_back(g.below(cp.payload_values()));
  const auto payload = payload_digits(values, cp);
  const auto v = build_v(payload_track(payload, cp, values.size()), cp, values.size());
  const auto errors = verify_block_errors(v, cp, values.size());
  CHECK(*std::max_element(errors.begin(), errors.end()) <= 2);
}

TEST_CASE("all-zero payload") {
  const auto cp = CodecParams::make(2, 5);
  const DigitSeq u(2, std::vector<Digit>(20 * cp.block_len(), 0));
  const auto v = build_v(u, cp, 20);
  const auto errors = verify_block_errors(v, cp, 20);
  CHECK(*std::max_element(errors.begin(), errors.end()) <= 2);
}

TEST_CASE("predictor on hand-made windows") {
  const auto cp = CodecParams::make(2, 5);
  const CodecPredictor e(cp);
  std::vector<Digit> zeros(cp.w, 0);
  CHECK(e(zeros) == 0);
  // window ending just after the first digit of t_0: continue t_0
  const auto t0 = oracle::canonical_cycle(0, 2, 5, cp.p);
  std::vector<Digit> w(zeros);
  w[cp.w - 1] = 1;
  CHECK(e(w) == static_cast<Digit>(t0[1] - '0'));
  // a window fully inside the run predicts the next canonical digit
  const CanonicalSequence canon(cp);
  for (std::uint64_t start : {0ULL, 7ULL, 100ULL, 500ULL, 1000ULL}) {
    std::vector<Digit> win(cp.w);
    for (unsigned t = 0; t < cp.w; ++t) win[t] = canon.at(start + t);
    CHECK(e(win) == canon.at(start + cp.w));
  }
}

TEST_CASE("codec noise sits below the payload density bound") {
  const auto cp = CodecParams::make(2, 5, 1601);
  const auto payload = uniform_random(2, 100 * cp.k, 2024);
  const auto v = build_v(payload_track(payload, cp, 100), cp, 100);
  const auto beta = codec_beta(v, cp);
  CHECK(beta.value() <= 2.0 / 1606 + 0.005);
  CHECK(beta.value() < 5.0 / 1606 / 2);
  CHECK_THROWS_AS(build_v(payload_track(payload, cp, 10), cp, 11), LengthError);
}
