#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rauzy/digitseq.hpp"
#include "rauzy/error.hpp"

namespace rauzy {

/// Which neighbour a block function sees. PredictPrevious scores c_n from
/// (c_{n+1}, ..., c_{n+l}); PredictNext scores c_n from (c_{n-l}, ..., c_{n-1}).
enum class Orientation { PredictPrevious, PredictNext };

std::string to_string(Orientation o);
Orientation parse_orientation(std::string_view name);

/// Positions n in [first, last) that get scored.
struct ScoreWindow {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const noexcept { return last > first ? last - first : 0; }
};

/// Scored positions of the length-N prefix: only those whose whole
/// width-l context lies inside the prefix.
ScoreWindow scored_window(std::size_t prefix_len, unsigned width, Orientation o);

/// Index of the first context digit for scored position n.
inline std::size_t context_start(std::size_t n, unsigned width, Orientation o) noexcept {
  return o == Orientation::PredictPrevious ? n + 1 : n - width;
}

/// Misprediction count over scored positions, kept as an exact integer pair.
struct BetaRatio {
  std::uint64_t mismatches = 0;
  std::uint64_t scored = 0;

  double value() const noexcept {
    return scored == 0 ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(scored);
  }
  friend bool operator==(const BetaRatio&, const BetaRatio&) = default;
};

/// b^e, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t b, std::uint64_t e);

/// Big-endian index of a digit word: sum w_i b^(len-1-i).
std::uint64_t word_index(std::span<const Digit> word, unsigned base);

/// An element of E_l: a total map from width-l words to a digit.
///
/// Small domains are stored as a dense table indexed by word_index(); larger
/// ones as explicit entries plus a fallback digit for every other word.
class BlockFunction {
 public:
  static BlockFunction constant(unsigned base, unsigned width, Digit value);
  static BlockFunction from_table(unsigned base, unsigned width, std::vector<Digit> table);
  static BlockFunction from_entries(unsigned base, unsigned width,
                                    std::unordered_map<std::string, Digit> entries, Digit fallback);

  unsigned base() const noexcept { return base_; }
  unsigned width() const noexcept { return width_; }
  bool is_dense() const noexcept { return dense_; }
  /// Dense table; empty for the sparse representation.
  const std::vector<Digit>& table() const noexcept { return table_; }

  Digit operator()(std::span<const Digit> word) const;

 private:
  BlockFunction(unsigned base, unsigned width) : base_(base), width_(width) {}

  unsigned base_;
  unsigned width_;
  bool dense_ = true;
  std::vector<Digit> table_;
  std::unordered_map<std::string, Digit> entries_;
  Digit fallback_ = 0;
};

/// Per-context digit counts over a set of scored positions.
///
/// beta_l decomposes over contexts: the best block function picks, for each
/// context, a digit of maximal count, so the minimal mismatch count is
/// total() - hits(). Tables over disjoint position sets merge by addition.
class ContextTable {
 public:
  ContextTable(unsigned base, unsigned width);

  unsigned base() const noexcept { return base_; }
  unsigned width() const noexcept { return width_; }
  bool is_dense() const noexcept { return dense_; }
  std::uint64_t total() const noexcept { return total_; }

  /// Counts every n in `window`; contexts must lie inside `digits`.
  void count(std::span<const Digit> digits, Orientation o, ScoreWindow window);
  void add(std::span<const Digit> context, Digit next);
  void merge(const ContextTable& other);

  /// Occurrences of each digit after `context`.
  std::vector<std::uint64_t> counts_for(std::span<const Digit> context) const;
  std::size_t distinct_contexts() const;

  /// Sum over contexts of the largest per-digit count.
  std::uint64_t hits() const;
  BetaRatio beta() const { return {total_ - hits(), total_}; }
  /// Majority digit per context, smallest digit on ties, 0 for unseen contexts.
  BlockFunction witness() const;

 private:
  unsigned base_;
  unsigned width_;
  bool dense_;
  std::uint64_t modulus_ = 0;  // base^width when dense
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> dense_counts_;  // [context * base + digit]
  std::unordered_map<std::string, std::vector<std::uint64_t>> sparse_counts_;
};

/// Mismatch ratio of an arbitrary predictor over a window. The predictor is
/// called with the width-l context span of each scored position.
template <class Predictor>
BetaRatio beta_with(std::span<const Digit> digits, unsigned width, ScoreWindow window,
                    Orientation o, Predictor&& predict) {
  BetaRatio r;
  for (std::size_t n = window.first; n < window.last; ++n) {
    const auto ctx = digits.subspan(context_start(n, width, o), width);
    if (predict(ctx) != digits[n]) ++r.mismatches;
    ++r.scored;
  }
  return r;
}

/// beta_E(x, N): mismatch ratio of one block function on the length-N prefix.
BetaRatio beta_E(const DigitSeq& x, const BlockFunction& e, std::size_t prefix_len, Orientation o);

struct BetaResult {
  BetaRatio ratio;
  BlockFunction witness;
};

/// beta_l(x, N): exact infimum over all width-l block functions, with a minimiser.
BetaResult beta_ell(const DigitSeq& x, unsigned width, std::size_t prefix_len, Orientation o);
/// Same infimum over an explicit window of scored positions.
BetaResult beta_ell_window(const DigitSeq& x, unsigned width, ScoreWindow window, Orientation o);

inline constexpr std::uint64_t kDefaultEnumerationCap = 100000;

/// Literal minimum of beta_E over every block function. Test oracle only;
/// refuses when base^(base^width) exceeds `cap`.
BetaRatio beta_ell_bruteforce(const DigitSeq& x, unsigned width, std::size_t prefix_len,
                              Orientation o, std::uint64_t cap = kDefaultEnumerationCap);

// ---- noise profiles -------------------------------------------------------

struct ProfileEntry {
  unsigned ell = 0;
  std::size_t prefix_len = 0;
  BetaRatio ratio;
};

struct WidthEstimate {
  unsigned ell = 0;
  double loe = 0;  // min of beta over the tail window
  double upe = 0;  // max of beta over the tail window
};

struct NoiseProfile {
  unsigned base = 2;
  Orientation orientation = Orientation::PredictPrevious;
  unsigned ell_max = 1;
  double tail_fraction = 0.5;
  std::vector<std::size_t> grid;
  std::vector<ProfileEntry> entries;  // sorted by (ell, N)
  std::vector<WidthEstimate> estimates;  // one per ell
  double loe = 0;  // estimates at ell_max
  double upe = 0;

  /// Grid points that form the tail window.
  std::size_t tail_begin() const;
};

struct ProfileOptions {
  unsigned ell_max = 8;
  std::vector<std::size_t> grid;  // empty: default_grid()
  Orientation orientation = Orientation::PredictPrevious;
  double tail_fraction = 0.5;
  unsigned threads = 1;
};

/// Powers of two from `start` up to `usable`, plus `usable` itself.
std::vector<std::size_t> default_grid(std::size_t usable, std::size_t start = 1024);

NoiseProfile noise_profile(const DigitSeq& x, const ProfileOptions& opts);

enum class NoiseClass { NormalLike, PreservingLike, Intermediate };

struct Classification {
  NoiseClass kind = NoiseClass::Intermediate;
  double s_low = 0;
  double s_high = 0;
};

/// NormalLike if loe >= (b-1)/b - tol, PreservingLike if upe <= tol.
Classification classify(const NoiseProfile& profile, double tol);
std::string to_string(const Classification& c);

}  // namespace rauzy
