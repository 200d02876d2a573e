#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rauzy {

using Digit = std::uint8_t;

/// Largest supported base; digits are stored as single bytes.
inline constexpr unsigned kMaxBase = 256;

/// A finite prefix c_0 c_1 ... c_{n-1} of a base-b digit expansion.
///
/// Immutable after construction. Every digit is checked against the base.
class DigitSeq {
 public:
  DigitSeq(unsigned base, std::vector<Digit> digits);
  explicit DigitSeq(unsigned base) : DigitSeq(base, {}) {}

  unsigned base() const noexcept { return base_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  std::span<const Digit> digits() const noexcept { return digits_; }
  Digit operator[](std::size_t i) const { return digits_[i]; }

  /// Copy of the first n digits (n clamped to size()).
  DigitSeq prefix(std::size_t n) const;
  /// Copy of digits [first, last).
  DigitSeq slice(std::size_t first, std::size_t last) const;
  DigitSeq reversed() const;

  friend bool operator==(const DigitSeq&, const DigitSeq&) = default;

 private:
  unsigned base_;
  std::vector<Digit> digits_;
};

void check_base(unsigned base);

/// First n digits of p/q in base b, never ending in a tail of (b-1)'s.
/// Exact long division; requires 0 <= p < q.
DigitSeq expand_rational(std::uint64_t p, std::uint64_t q, unsigned base, std::size_t n);

/// Concatenation of the base-b representations of 1, 2, 3, ...
DigitSeq champernowne(unsigned base, std::size_t n);

/// n i.i.d. uniform digits drawn from the seeded generator in rng.hpp.
DigitSeq uniform_random(unsigned base, std::size_t n, std::uint64_t seed);

// Digit files: a `base=<b>` header line, then digits. For b <= 10 the body is
// contiguous ASCII digits (line breaks ignored); for b > 10 it is
// whitespace-separated decimal integers. LF endings, no BOM.

DigitSeq parse_digits(std::string_view text);
std::string format_digits(const DigitSeq& seq);

DigitSeq read_digits(const std::filesystem::path& path);
/// Reads a file and checks its header against an expected base.
DigitSeq read_digits(const std::filesystem::path& path, unsigned expected_base);
void write_digits(const DigitSeq& seq, const std::filesystem::path& path);

}  // namespace rauzy
