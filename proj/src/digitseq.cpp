#include "rauzy/digitseq.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rauzy/error.hpp"
#include "rauzy/rng.hpp"

namespace rauzy {

void check_base(unsigned base) {
  if (base < 2 || base > kMaxBase) {
    throw DomainError("base must be in [2, " + std::to_string(kMaxBase) + "], got " +
                      std::to_string(base));
  }
}

DigitSeq::DigitSeq(unsigned base, std::vector<Digit> digits)
    : base_(base), digits_(std::move(digits)) {
  check_base(base_);
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] >= base_) {
      throw DomainError("digit " + std::to_string(digits_[i]) + " at offset " +
                        std::to_string(i) + " is out of range for base " + std::to_string(base_));
    }
  }
}

DigitSeq DigitSeq::prefix(std::size_t n) const {
  return slice(0, std::min(n, digits_.size()));
}

DigitSeq DigitSeq::slice(std::size_t first, std::size_t last) const {
  last = std::min(last, digits_.size());
  first = std::min(first, last);
  return DigitSeq(base_, std::vector<Digit>(digits_.begin() + static_cast<std::ptrdiff_t>(first),
                                            digits_.begin() + static_cast<std::ptrdiff_t>(last)));
}

DigitSeq DigitSeq::reversed() const {
  return DigitSeq(base_, std::vector<Digit>(digits_.rbegin(), digits_.rend()));
}

DigitSeq expand_rational(std::uint64_t p, std::uint64_t q, unsigned base, std::size_t n) {
  check_base(base);
  if (q == 0) throw DomainError("expand_rational: denominator is zero");
  if (p >= q) throw DomainError("expand_rational: need 0 <= p < q");
  // Long division never produces a tail of (b-1)'s: that would need the
  // remainder to stay at its maximum forever, i.e. p/q = 1.
  std::vector<Digit> out(n);
  unsigned __int128 r = p;
  for (std::size_t i = 0; i < n; ++i) {
    r *= base;
    out[i] = static_cast<Digit>(r / q);
    r %= q;
  }
  return DigitSeq(base, std::move(out));
}

DigitSeq champernowne(unsigned base, std::size_t n) {
  check_base(base);
  std::vector<Digit> out;
  out.reserve(n);
  std::vector<Digit> scratch;
  for (std::uint64_t v = 1; out.size() < n; ++v) {
    scratch.clear();
    for (std::uint64_t t = v; t > 0; t /= base) scratch.push_back(static_cast<Digit>(t % base));
    for (auto it = scratch.rbegin(); it != scratch.rend() && out.size() < n; ++it) {
      out.push_back(*it);
    }
  }
  return DigitSeq(base, std::move(out));
}

DigitSeq uniform_random(unsigned base, std::size_t n, std::uint64_t seed) {
  check_base(base);
  DigitRng rng(seed);
  std::vector<Digit> out(n);
  for (auto& d : out) d = static_cast<Digit>(rng.below(base));
  return DigitSeq(base, std::move(out));
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t offset, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ", offset " + std::to_string(offset) + ": " +
                   what);
}

}  // namespace

DigitSeq parse_digits(std::string_view text) {
  const auto eol = text.find('\n');
  const std::string_view header = text.substr(0, eol);
  constexpr std::string_view kKey = "base=";
  if (header.substr(0, kKey.size()) != kKey) parse_fail(1, 0, "expected header `base=<b>`");
  unsigned base = 0;
  const auto* hb = header.data() + kKey.size();
  const auto* he = header.data() + header.size();
  auto [hp, hec] = std::from_chars(hb, he, base);
  if (hec != std::errc{} || hp != he) {
    parse_fail(1, static_cast<std::size_t>(hp - header.data()), "malformed base in header");
  }
  if (base < 2 || base > kMaxBase) {
    parse_fail(1, kKey.size(), "base " + std::to_string(base) + " outside [2, 256]");
  }
  if (eol == std::string_view::npos) return DigitSeq(base);

  const std::string_view body = text.substr(eol + 1);
  std::vector<Digit> digits;
  std::size_t line = 2;
  std::size_t col = 0;
  if (base <= 10) {
    digits.reserve(body.size());
    for (char c : body) {
      if (c == '\n') {
        ++line;
        col = 0;
        continue;
      }
      if (c < '0' || c > '9') parse_fail(line, col, std::string("unexpected character '") + c + "'");
      const auto d = static_cast<unsigned>(c - '0');
      if (d >= base) {
        parse_fail(line, col, "digit " + std::to_string(d) + " out of range for base " +
                                  std::to_string(base));
      }
      digits.push_back(static_cast<Digit>(d));
      ++col;
    }
  } else {
    std::size_t i = 0;
    while (i < body.size()) {
      const char c = body[i];
      if (c == '\n') {
        ++line;
        col = 0;
        ++i;
        continue;
      }
      if (c == ' ' || c == '\t') {
        ++i;
        ++col;
        continue;
      }
      unsigned d = 0;
      auto [p, ec] = std::from_chars(body.data() + i, body.data() + body.size(), d);
      const auto len = static_cast<std::size_t>(p - (body.data() + i));
      if (ec != std::errc{} || len == 0) parse_fail(line, col, "expected a decimal digit value");
      if (p != body.data() + body.size() && *p != ' ' && *p != '\t' && *p != '\n') {
        parse_fail(line, col + len, std::string("unexpected character '") + *p + "'");
      }
      if (d >= base) {
        parse_fail(line, col, "digit " + std::to_string(d) + " out of range for base " +
                                  std::to_string(base));
      }
      digits.push_back(static_cast<Digit>(d));
      i += len;
      col += len;
    }
  }
  return DigitSeq(base, std::move(digits));
}

std::string format_digits(const DigitSeq& seq) {
  std::string out = "base=" + std::to_string(seq.base()) + "\n";
  if (seq.empty()) return out;
  if (seq.base() <= 10) {
    out.reserve(out.size() + seq.size() + 1);
    for (Digit d : seq.digits()) out.push_back(static_cast<char>('0' + d));
  } else {
    bool first = true;
    for (Digit d : seq.digits()) {
      if (!first) out.push_back(' ');
      out += std::to_string(d);
      first = false;
    }
  }
  out.push_back('\n');
  return out;
}

DigitSeq read_digits(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_digits(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

DigitSeq read_digits(const std::filesystem::path& path, unsigned expected_base) {
  DigitSeq seq = read_digits(path);
  if (seq.base() != expected_base) {
    throw ParseError(path.string() + ": header declares base " + std::to_string(seq.base()) +
                     ", expected " + std::to_string(expected_base));
  }
  return seq;
}

void write_digits(const DigitSeq& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::string text = format_digits(seq);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace rauzy
