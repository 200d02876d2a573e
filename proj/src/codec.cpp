#include "rauzy/codec.hpp"

#include <algorithm>
#include <bit>

#include "rauzy/error.hpp"

namespace rauzy {

namespace {

constexpr std::uint64_t kMaxPayloadValues = std::uint64_t{1} << 20;
constexpr Digit kCode[2][5] = {{1, 1, 0, 0, 1}, {1, 1, 0, 1, 1}};

}  // namespace

std::uint64_t CodecParams::payload_values() const noexcept {
  return *checked_pow(base, k);
}

namespace {

CodecParams shape(unsigned base, unsigned k) {
  check_base(base);
  if (k < 1) throw DomainError("codec: k must be >= 1");
  const auto values = checked_pow(base, k);
  if (!values || *values > kMaxPayloadValues) throw DomainError("codec: b^k exceeds 2^20");
  if (k * (base - 1) <= 2 * base) throw DomainError("codec: need k (b-1)/b > 2");
  CodecParams cp;
  cp.base = base;
  cp.k = k;
  cp.p = static_cast<unsigned>(std::bit_width(*values - 1)) + 1;
  cp.w = 2 * (5 * cp.p + k + 8);
  return cp;
}

}  // namespace

std::uint64_t CodecParams::min_ell(unsigned base, unsigned k) {
  const auto cp = shape(base, k);
  const std::uint64_t values = cp.payload_values();
  const std::uint64_t bound = 10ULL * k * values + 1;
  // Longest run: t_0 .. t_{values-2} plus a_{values-1} 0, with w zeros ahead of it.
  const std::uint64_t run = (values - 1) * cp.cycle_len() + 5ULL * cp.p + 1;
  return std::max(bound, run + cp.w);
}

CodecParams CodecParams::make(unsigned base, unsigned k, std::optional<std::uint64_t> ell) {
  auto cp = shape(base, k);
  const auto need = min_ell(base, k);
  cp.ell = ell.value_or(need);
  if (cp.ell <= 10ULL * k * cp.payload_values()) throw DomainError("codec: need l > 10 k b^k");
  if (cp.ell < need) {
    throw DomainError("codec: l = " + std::to_string(cp.ell) +
                      " leaves fewer than w leading zeros before the longest run; need l >= " +
                      std::to_string(need));
  }
  return cp;
}

std::uint64_t payload_value(std::span<const Digit> word, unsigned base) {
  std::uint64_t v = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = v * base + *it;
  return v;
}

std::vector<Digit> bin_rep(std::span<const Digit> s, unsigned base, unsigned p) {
  const std::uint64_t v = payload_value(s, base);
  if (p < 64 && (v >> p) != 0) throw DomainError("bin_rep: value does not fit in p bits");
  std::vector<Digit> bits(p);
  for (unsigned i = 0; i < p && i < 64; ++i) bits[i] = static_cast<Digit>((v >> i) & 1);
  return bits;
}

std::vector<Digit> expand_c(std::span<const Digit> bits) {
  std::vector<Digit> out;
  out.reserve(bits.size() * 5);
  for (Digit b : bits) {
    if (b > 1) throw DomainError("expand_c: input must be binary");
    out.insert(out.end(), std::begin(kCode[b]), std::end(kCode[b]));
  }
  return out;
}

// ---- canonical sequence ----------------------------------------------------

CanonicalSequence::CanonicalSequence(const CodecParams& params)
    : params_(params), cycle_(params.cycle_len()), size_(params.payload_values() * cycle_) {}

Digit CanonicalSequence::at(std::uint64_t j) const {
  const std::uint64_t i = j / cycle_;
  std::uint64_t off = j % cycle_;
  const std::uint64_t a_len = 5ULL * params_.p;
  if (off < a_len) return kCode[(i >> (off / 5)) & 1][off % 5];
  off -= a_len;
  if (off == 0) return 0;
  if (off <= params_.k) {
    std::uint64_t v = i;
    for (std::uint64_t t = 1; t < off; ++t) v /= params_.base;
    return static_cast<Digit>(v % params_.base);
  }
  if (off == params_.k + 1) return 0;
  return 1;
}

std::vector<Digit> CanonicalSequence::cycle(std::uint64_t i) const {
  std::vector<Digit> out(cycle_);
  for (std::uint64_t t = 0; t < cycle_; ++t) out[t] = at(i * cycle_ + t);
  return out;
}

// ---- encoder / decoder -------------------------------------------------------

std::vector<Digit> encode_block(std::span<const Digit> payload, const CodecParams& params) {
  if (payload.size() != params.k) throw DomainError("encode_block: payload must have k digits");
  for (Digit d : payload) {
    if (d >= params.base) throw DomainError("encode_block: payload digit out of range");
  }
  const CanonicalSequence canon(params);
  const std::uint64_t i = payload_value(payload, params.base);
  const std::uint64_t run = i * params.cycle_len() + 5ULL * params.p + 1;
  if (run + params.w > params.ell) throw std::logic_error("encode_block: run does not fit the gap");
  std::vector<Digit> out(params.ell, 0);
  const std::uint64_t q = params.ell - run;
  for (std::uint64_t t = 0; t < run; ++t) out[q + t] = canon.at(t);
  return out;
}

std::optional<std::vector<Digit>> decode_block(std::span<const Digit> block, const CodecParams& params) {
  if (block.size() != params.block_len()) return std::nullopt;
  const auto payload = block.subspan(params.ell, params.k);
  const auto expected = encode_block(payload, params);
  if (!std::equal(expected.begin(), expected.end(), block.begin())) return std::nullopt;
  return std::vector<Digit>(payload.begin(), payload.end());
}

// ---- the block function E --------------------------------------------------------

CodecPredictor::CodecPredictor(const CodecParams& params) : params_(params), canon_(params) {}

Digit CodecPredictor::digit_at(std::int64_t j) const {
  if (j < 0) return 0;
  return canon_.at(static_cast<std::uint64_t>(j));
}

bool CodecPredictor::matches(std::span<const Digit> s, std::int64_t align) const {
  const auto size = static_cast<std::int64_t>(canon_.size());
  for (std::size_t t = 0; t < s.size(); ++t) {
    const std::int64_t j = align + static_cast<std::int64_t>(t);
    if (j >= size || s[t] != digit_at(j)) return false;
  }
  return true;
}

// Parses a_i 0 b_i 0 starting at `start`; returns i when a_i = c(b(b_i)).
std::optional<std::int64_t> CodecPredictor::cycle_index(std::span<const Digit> s, std::size_t start) const {
  const std::size_t a_len = 5ULL * params_.p;
  if (start + a_len + params_.k + 2 > s.size()) return std::nullopt;
  if (s[start + a_len] != 0 || s[start + a_len + 1 + params_.k] != 0) return std::nullopt;
  const auto b = s.subspan(start + a_len + 1, params_.k);
  const std::uint64_t i = payload_value(b, params_.base);
  for (std::size_t off = 0; off < a_len; ++off) {
    if (s[start + off] != kCode[(i >> (off / 5)) & 1][off % 5]) return std::nullopt;
  }
  return static_cast<std::int64_t>(i);
}

// Marker at q closes cycle i-1; the cycle t_i follows it.
std::optional<std::int64_t> CodecPredictor::align_right(std::span<const Digit> s, std::size_t q) const {
  const auto i = cycle_index(s, q + 5);
  if (!i || *i == 0) return std::nullopt;
  return *i * static_cast<std::int64_t>(params_.cycle_len()) - static_cast<std::int64_t>(q + 5);
}

// Marker at q closes cycle i, whose a_i 0 b_i 0 sits just left of q.
std::optional<std::int64_t> CodecPredictor::align_left(std::span<const Digit> s, std::size_t q) const {
  const std::size_t body = params_.cycle_len() - 5;
  if (q < body) return std::nullopt;
  const auto i = cycle_index(s, q - body);
  if (!i) return std::nullopt;
  return *i * static_cast<std::int64_t>(params_.cycle_len()) - static_cast<std::int64_t>(q - body);
}

Digit CodecPredictor::operator()(std::span<const Digit> s) const {
  if (s.size() != params_.w) throw DomainError("codec predictor: window must have w digits");
  const std::size_t w = s.size();
  const std::size_t half = w / 2;
  const auto first = std::find_if(s.begin(), s.end(), [](Digit d) { return d != 0; });
  if (first == s.end()) return 0;
  const auto p = static_cast<std::size_t>(first - s.begin());

  if (p >= half) {
    // A run that began at p: continue t_0 t_1 ... if the visible part agrees.
    const auto align = -static_cast<std::int64_t>(p);
    return matches(s, align) ? digit_at(align + static_cast<std::int64_t>(w)) : Digit{0};
  }
  for (std::size_t q = 0; q + 5 <= w; ++q) {
    if (!std::all_of(s.begin() + static_cast<std::ptrdiff_t>(q), s.begin() + static_cast<std::ptrdiff_t>(q + 5),
                     [](Digit d) { return d == 1; })) {
      continue;
    }
    const auto align = q < half ? align_right(s, q) : align_left(s, q);
    if (align && matches(s, *align)) {
      const std::int64_t next = *align + static_cast<std::int64_t>(w);
      return next < static_cast<std::int64_t>(canon_.size()) ? digit_at(next) : Digit{0};
    }
  }
  return 0;
}

Digit predict_E(std::span<const Digit> window, const CodecParams& params) {
  return CodecPredictor(params)(window);
}

// ---- sequences ------------------------------------------------------------------

DigitSeq build_v(const DigitSeq& u, const CodecParams& params, std::size_t n_blocks) {
  if (u.base() != params.base) throw DomainError("build_v: base mismatch");
  const std::uint64_t len = params.block_len();
  if (u.size() < n_blocks * len) {
    throw LengthError("build_v: u has " + std::to_string(u.size()) + " digits, need " +
                      std::to_string(n_blocks * len));
  }
  std::vector<Digit> v(n_blocks * len);
  for (std::size_t n = 0; n < n_blocks; ++n) {
    const auto payload = u.digits().subspan(n * len + params.ell, params.k);
    const auto gap = encode_block(payload, params);
    std::copy(gap.begin(), gap.end(), v.begin() + static_cast<std::ptrdiff_t>(n * len));
    std::copy(payload.begin(), payload.end(), v.begin() + static_cast<std::ptrdiff_t>(n * len + params.ell));
  }
  return DigitSeq(params.base, std::move(v));
}

DigitSeq payload_track(const DigitSeq& payload, const CodecParams& params, std::size_t n_blocks) {
  if (payload.base() != params.base) throw DomainError("payload_track: base mismatch");
  if (payload.size() < n_blocks * params.k) throw LengthError("payload_track: not enough payload digits");
  const std::uint64_t len = params.block_len();
  std::vector<Digit> u(n_blocks * len, 0);
  for (std::size_t n = 0; n < n_blocks; ++n) {
    for (unsigned t = 0; t < params.k; ++t) u[n * len + params.ell + t] = payload[n * params.k + t];
  }
  return DigitSeq(params.base, std::move(u));
}

std::vector<unsigned> verify_block_errors(const DigitSeq& v, const CodecParams& params,
                                          std::size_t n_blocks) {
  const std::uint64_t len = params.block_len();
  if (v.size() < n_blocks * len) throw LengthError("verify_block_errors: sequence too short");
  const CodecPredictor e(params);
  const std::size_t w = params.w;
  std::vector<Digit> padded(w, 0);
  padded.insert(padded.end(), v.digits().begin(), v.digits().begin() + static_cast<std::ptrdiff_t>(n_blocks * len));
  const std::span<const Digit> all(padded);
  std::vector<unsigned> errors(n_blocks, 0);
  for (std::size_t n = 0; n < n_blocks; ++n) {
    for (std::uint64_t q = n * len; q < (n + 1) * len; ++q) {
      if (e(all.subspan(q, w)) != all[q + w]) ++errors[n];
    }
  }
  return errors;
}

BetaRatio codec_beta(const DigitSeq& v, const CodecParams& params) {
  if (v.base() != params.base) throw DomainError("codec_beta: base mismatch");
  const CodecPredictor e(params);
  return beta_with(v.digits(), params.w, scored_window(v.size(), params.w, Orientation::PredictNext),
                   Orientation::PredictNext, e);
}

}  // namespace rauzy
