#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rauzy/digitseq.hpp"
#include "rauzy/predictor.hpp"

namespace rauzy {

/// Parameters of the periodic marker codec.
///
/// A block has length l + k; its last k positions carry payload, the first l
/// carry a zero gap followed by the canonical counting run t_0 t_1 ... that
/// ends exactly where the payload's own b_i field sits.
struct CodecParams {
  unsigned base = 2;
  unsigned k = 5;       // payload digits per block
  std::uint64_t ell = 0;  // gap length
  unsigned p = 0;       // ceil(k log2 b) + 1 bits per payload value
  unsigned w = 0;       // predictor window 2(5p + k + 8)

  /// Validates k(b-1)/b > 2, l > 10 k b^k and that the longest run leaves at
  /// least w leading zeros. Without `ell`, picks the smallest admissible gap.
  static CodecParams make(unsigned base, unsigned k, std::optional<std::uint64_t> ell = {});

  /// Smallest l that satisfies every constraint above.
  static std::uint64_t min_ell(unsigned base, unsigned k);

  std::uint64_t cycle_len() const noexcept { return 5ULL * p + k + 7; }
  std::uint64_t block_len() const noexcept { return ell + k; }
  std::uint64_t payload_values() const noexcept;  // b^k
  double density() const noexcept { return static_cast<double>(k) / static_cast<double>(block_len()); }
};

/// Integer value of a base-b word read least significant digit first.
std::uint64_t payload_value(std::span<const Digit> word, unsigned base);

/// LSB-first binary digits of the value of s, zero-padded to p bits.
std::vector<Digit> bin_rep(std::span<const Digit> s, unsigned base, unsigned p);

/// 0 -> 11001, 1 -> 11011. The result never holds five consecutive 1's.
std::vector<Digit> expand_c(std::span<const Digit> bits);

/// The counting sequence T = t_0 t_1 ... t_{b^k - 1}, with
/// t_i = c(b(b_i)) 0 b_i 0 11111 and b_i the k-digit LSB-first expansion of i.
/// Digits are computed on demand.
class CanonicalSequence {
 public:
  explicit CanonicalSequence(const CodecParams& params);

  std::uint64_t size() const noexcept { return size_; }
  Digit at(std::uint64_t j) const;
  std::vector<Digit> cycle(std::uint64_t i) const;

 private:
  CodecParams params_;
  std::uint64_t cycle_;
  std::uint64_t size_;
};

/// The l digits preceding a payload: zeros, then T up to the b_i field of
/// cycle i = payload_value(payload).
std::vector<Digit> encode_block(std::span<const Digit> payload, const CodecParams& params);

/// Reads the payload back from a full block (l + k digits), checking that the
/// final cycle's c(b_i) field agrees with it. Returns nullopt on any mismatch.
std::optional<std::vector<Digit>> decode_block(std::span<const Digit> block, const CodecParams& params);

/// The width-w block function E, applied to the w digits preceding a position.
class CodecPredictor {
 public:
  explicit CodecPredictor(const CodecParams& params);

  Digit operator()(std::span<const Digit> window) const;
  const CodecParams& params() const noexcept { return params_; }

 private:
  std::optional<std::int64_t> align_right(std::span<const Digit> s, std::size_t q) const;
  std::optional<std::int64_t> align_left(std::span<const Digit> s, std::size_t q) const;
  std::optional<std::int64_t> cycle_index(std::span<const Digit> s, std::size_t start) const;
  bool matches(std::span<const Digit> s, std::int64_t align) const;
  Digit digit_at(std::int64_t j) const;

  CodecParams params_;
  CanonicalSequence canon_;
};

Digit predict_E(std::span<const Digit> window, const CodecParams& params);

/// v on every B'_n copies u; the rest of each block comes from encode_block.
DigitSeq build_v(const DigitSeq& u, const CodecParams& params, std::size_t n_blocks);

/// Places payload digits (k per block, in order) on the B'_n positions with
/// zeros elsewhere: the sequence u of the construction.
DigitSeq payload_track(const DigitSeq& payload, const CodecParams& params, std::size_t n_blocks);

/// Per-block count of positions q with E(v[q-w, q)) != v[q]. Positions before
/// w see a window padded with leading zeros.
std::vector<unsigned> verify_block_errors(const DigitSeq& v, const CodecParams& params,
                                          std::size_t n_blocks);

/// beta_E(v) for the codec's E, scoring positions with a full window.
BetaRatio codec_beta(const DigitSeq& v, const CodecParams& params);

}  // namespace rauzy
