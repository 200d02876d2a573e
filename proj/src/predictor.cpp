#include "rauzy/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace rauzy {

namespace {

constexpr std::uint64_t kDenseCells = std::uint64_t{1} << 20;

std::string word_key(std::span<const Digit> word) {
  return std::string(reinterpret_cast<const char*>(word.data()), word.size());
}

void check_window(std::size_t len, unsigned width, Orientation o, ScoreWindow w) {
  if (w.size() == 0) return;
  const bool ok = o == Orientation::PredictPrevious ? w.last + width <= len
                                                    : (w.first >= width && w.last <= len);
  if (!ok) {
    throw DomainError("score window [" + std::to_string(w.first) + ", " + std::to_string(w.last) +
                      ") needs contexts outside the " + std::to_string(len) + "-digit sequence");
  }
}

}  // namespace

std::string to_string(Orientation o) {
  return o == Orientation::PredictPrevious ? "predict-previous" : "predict-next";
}

Orientation parse_orientation(std::string_view name) {
  if (name == "predict-previous" || name == "previous") return Orientation::PredictPrevious;
  if (name == "predict-next" || name == "next") return Orientation::PredictNext;
  throw DomainError("unknown orientation '" + std::string(name) + "'");
}

ScoreWindow scored_window(std::size_t prefix_len, unsigned width, Orientation o) {
  if (prefix_len <= width) return {};
  return o == Orientation::PredictPrevious ? ScoreWindow{0, prefix_len - width}
                                           : ScoreWindow{width, prefix_len};
}

std::optional<std::uint64_t> checked_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > UINT64_MAX / b) return std::nullopt;
    r *= b;
  }
  return r;
}

std::uint64_t word_index(std::span<const Digit> word, unsigned base) {
  std::uint64_t idx = 0;
  for (Digit d : word) idx = idx * base + d;
  return idx;
}

// ---- BlockFunction ----------------------------------------------------------

BlockFunction BlockFunction::constant(unsigned base, unsigned width, Digit value) {
  check_base(base);
  if (value >= base) throw DomainError("block function value out of range");
  const auto size = checked_pow(base, width);
  if (size && *size <= kDenseCells) {
    return from_table(base, width, std::vector<Digit>(*size, value));
  }
  return from_entries(base, width, {}, value);
}

BlockFunction BlockFunction::from_table(unsigned base, unsigned width, std::vector<Digit> table) {
  check_base(base);
  if (width == 0) throw DomainError("block function width must be >= 1");
  const auto size = checked_pow(base, width);
  if (!size || table.size() != *size) {
    throw DomainError("block function table must have base^width entries");
  }
  for (Digit d : table) {
    if (d >= base) throw DomainError("block function value out of range");
  }
  BlockFunction f(base, width);
  f.table_ = std::move(table);
  return f;
}

BlockFunction BlockFunction::from_entries(unsigned base, unsigned width,
                                          std::unordered_map<std::string, Digit> entries,
                                          Digit fallback) {
  check_base(base);
  if (width == 0) throw DomainError("block function width must be >= 1");
  if (fallback >= base) throw DomainError("block function value out of range");
  for (const auto& [key, d] : entries) {
    if (key.size() != width || d >= base) throw DomainError("malformed block function entry");
  }
  BlockFunction f(base, width);
  f.dense_ = false;
  f.entries_ = std::move(entries);
  f.fallback_ = fallback;
  return f;
}

Digit BlockFunction::operator()(std::span<const Digit> word) const {
  if (dense_) return table_[word_index(word, base_)];
  const auto it = entries_.find(word_key(word));
  return it == entries_.end() ? fallback_ : it->second;
}

// ---- ContextTable -----------------------------------------------------------

ContextTable::ContextTable(unsigned base, unsigned width) : base_(base), width_(width) {
  check_base(base);
  if (width == 0) throw DomainError("context width must be >= 1");
  const auto cells = checked_pow(base, width + 1);
  dense_ = cells && *cells <= kDenseCells;
  if (dense_) {
    modulus_ = *cells / base;
    dense_counts_.assign(*cells, 0);
  }
}

void ContextTable::count(std::span<const Digit> digits, Orientation o, ScoreWindow window) {
  if (window.size() == 0) return;
  check_window(digits.size(), width_, o, window);
  if (!dense_) {
    for (std::size_t n = window.first; n < window.last; ++n) {
      add(digits.subspan(context_start(n, width_, o), width_), digits[n]);
    }
    return;
  }
  const std::uint64_t top = modulus_ / base_;
  std::size_t s = context_start(window.first, width_, o);
  std::uint64_t idx = word_index(digits.subspan(s, width_), base_);
  for (std::size_t n = window.first;;) {
    ++dense_counts_[idx * base_ + digits[n]];
    if (++n == window.last) break;
    idx = (idx - digits[s] * top) * base_ + digits[s + width_];
    ++s;
  }
  total_ += window.size();
}

void ContextTable::add(std::span<const Digit> context, Digit next) {
  if (context.size() != width_ || next >= base_) throw DomainError("context/digit mismatch");
  if (dense_) {
    ++dense_counts_[word_index(context, base_) * base_ + next];
  } else {
    auto& slot = sparse_counts_[word_key(context)];
    if (slot.empty()) slot.assign(base_, 0);
    ++slot[next];
  }
  ++total_;
}

void ContextTable::merge(const ContextTable& other) {
  if (other.base_ != base_ || other.width_ != width_) {
    throw DomainError("cannot merge context tables of different shape");
  }
  if (dense_) {
    for (std::size_t i = 0; i < dense_counts_.size(); ++i) dense_counts_[i] += other.dense_counts_[i];
  } else {
    for (const auto& [key, counts] : other.sparse_counts_) {
      auto& slot = sparse_counts_[key];
      if (slot.empty()) slot.assign(base_, 0);
      for (unsigned d = 0; d < base_; ++d) slot[d] += counts[d];
    }
  }
  total_ += other.total_;
}

std::vector<std::uint64_t> ContextTable::counts_for(std::span<const Digit> context) const {
  if (context.size() != width_) throw DomainError("context has wrong width");
  if (dense_) {
    const auto at = dense_counts_.begin() +
                    static_cast<std::ptrdiff_t>(word_index(context, base_) * base_);
    return {at, at + base_};
  }
  const auto it = sparse_counts_.find(word_key(context));
  return it == sparse_counts_.end() ? std::vector<std::uint64_t>(base_, 0) : it->second;
}

std::size_t ContextTable::distinct_contexts() const {
  if (!dense_) return sparse_counts_.size();
  std::size_t n = 0;
  for (std::uint64_t c = 0; c < modulus_; ++c) {
    const auto at = dense_counts_.begin() + static_cast<std::ptrdiff_t>(c * base_);
    if (std::any_of(at, at + base_, [](std::uint64_t v) { return v != 0; })) ++n;
  }
  return n;
}

std::uint64_t ContextTable::hits() const {
  std::uint64_t h = 0;
  if (dense_) {
    for (auto at = dense_counts_.begin(); at != dense_counts_.end(); at += base_) {
      h += *std::max_element(at, at + base_);
    }
  } else {
    for (const auto& [key, counts] : sparse_counts_) h += *std::max_element(counts.begin(), counts.end());
  }
  return h;
}

BlockFunction ContextTable::witness() const {
  // max_element returns the first maximum, i.e. the smallest digit on ties.
  if (dense_) {
    std::vector<Digit> table(modulus_);
    for (std::uint64_t c = 0; c < modulus_; ++c) {
      const auto at = dense_counts_.begin() + static_cast<std::ptrdiff_t>(c * base_);
      table[c] = static_cast<Digit>(std::max_element(at, at + base_) - at);
    }
    return BlockFunction::from_table(base_, width_, std::move(table));
  }
  std::unordered_map<std::string, Digit> entries;
  for (const auto& [key, counts] : sparse_counts_) {
    const auto best = static_cast<Digit>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    if (best != 0) entries.emplace(key, best);
  }
  return BlockFunction::from_entries(base_, width_, std::move(entries), 0);
}

// ---- beta -------------------------------------------------------------------

namespace {

ScoreWindow checked_prefix_window(const DigitSeq& x, unsigned width, std::size_t prefix_len,
                                  Orientation o) {
  if (width == 0) throw DomainError("block width must be >= 1");
  if (prefix_len > x.size()) {
    throw DomainError("prefix length " + std::to_string(prefix_len) + " exceeds the " +
                      std::to_string(x.size()) + " available digits");
  }
  if (prefix_len <= width) {
    throw DomainError("prefix length " + std::to_string(prefix_len) +
                      " leaves no position with a full width-" + std::to_string(width) + " context");
  }
  return scored_window(prefix_len, width, o);
}

}  // namespace

BetaRatio beta_E(const DigitSeq& x, const BlockFunction& e, std::size_t prefix_len, Orientation o) {
  if (e.base() != x.base()) throw DomainError("block function base differs from sequence base");
  const auto window = checked_prefix_window(x, e.width(), prefix_len, o);
  return beta_with(x.digits(), e.width(), window, o,
                   [&](std::span<const Digit> ctx) { return e(ctx); });
}

BetaResult beta_ell(const DigitSeq& x, unsigned width, std::size_t prefix_len, Orientation o) {
  return beta_ell_window(x, width, checked_prefix_window(x, width, prefix_len, o), o);
}

BetaResult beta_ell_window(const DigitSeq& x, unsigned width, ScoreWindow window, Orientation o) {
  if (width == 0) throw DomainError("block width must be >= 1");
  ContextTable table(x.base(), width);
  table.count(x.digits(), o, window);
  return {table.beta(), table.witness()};
}

BetaRatio beta_ell_bruteforce(const DigitSeq& x, unsigned width, std::size_t prefix_len,
                              Orientation o, std::uint64_t cap) {
  const unsigned b = x.base();
  const auto domain = checked_pow(b, width);
  const auto functions = domain ? checked_pow(b, *domain) : std::nullopt;
  if (!functions || *functions > cap) {
    const std::string count = functions ? std::to_string(*functions) : std::string("> 2^64");
    throw RefusalError("brute force over " + std::to_string(b) + "^(" + std::to_string(b) + "^" +
                       std::to_string(width) + ") = " + count +
                       " block functions exceeds the cap of " + std::to_string(cap));
  }
  const auto window = checked_prefix_window(x, width, prefix_len, o);

  std::vector<std::uint64_t> ctx;
  std::vector<Digit> target;
  for (std::size_t n = window.first; n < window.last; ++n) {
    ctx.push_back(word_index(x.digits().subspan(context_start(n, width, o), width), b));
    target.push_back(x[n]);
  }

  std::vector<Digit> table(*domain, 0);
  BetaRatio best{UINT64_MAX, window.size()};
  for (std::uint64_t f = 0; f < *functions; ++f) {
    std::uint64_t miss = 0;
    for (std::size_t i = 0; i < ctx.size(); ++i) miss += table[ctx[i]] != target[i];
    best.mismatches = std::min(best.mismatches, miss);
    for (auto& d : table) {  // odometer step to the next table
      if (++d < b) break;
      d = 0;
    }
  }
  return best;
}

// ---- noise profile ----------------------------------------------------------

std::size_t NoiseProfile::tail_begin() const {
  const auto m = grid.size();
  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(m) - 1e-9)));
  return m - std::min(tail, m);
}

std::vector<std::size_t> default_grid(std::size_t usable, std::size_t start) {
  std::vector<std::size_t> grid;
  for (std::size_t n = start; n < usable; n *= 2) grid.push_back(n);
  if (usable > 0) grid.push_back(usable);
  return grid;
}

namespace {

ContextTable count_parallel(std::span<const Digit> digits, unsigned base, unsigned width,
                            Orientation o, ScoreWindow window, unsigned threads) {
  ContextTable out(base, width);
  const std::size_t n = window.size();
  if (threads <= 1 || n < 4096) {
    out.count(digits, o, window);
    return out;
  }
  std::vector<ContextTable> parts(threads, ContextTable(base, width));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const ScoreWindow chunk{window.first + n * t / threads, window.first + n * (t + 1) / threads};
      pool.emplace_back([&, t, chunk] { parts[t].count(digits, o, chunk); });
    }
  }
  for (const auto& part : parts) out.merge(part);
  return out;
}

}  // namespace

NoiseProfile noise_profile(const DigitSeq& x, const ProfileOptions& opts) {
  if (opts.ell_max == 0) throw DomainError("ell_max must be >= 1");
  if (!(opts.tail_fraction > 0.0 && opts.tail_fraction <= 1.0)) {
    throw DomainError("tail fraction must be in (0, 1]");
  }
  NoiseProfile prof;
  prof.base = x.base();
  prof.orientation = opts.orientation;
  prof.ell_max = opts.ell_max;
  prof.tail_fraction = opts.tail_fraction;
  prof.grid = opts.grid.empty() ? default_grid(x.size()) : opts.grid;
  if (prof.grid.empty()) throw DomainError("noise profile needs a non-empty N grid");
  if (!std::is_sorted(prof.grid.begin(), prof.grid.end()) ||
      std::adjacent_find(prof.grid.begin(), prof.grid.end()) != prof.grid.end()) {
    throw DomainError("N grid must be strictly ascending");
  }
  if (prof.grid.back() > x.size()) throw DomainError("N grid exceeds the sequence length");
  if (prof.grid.front() <= opts.ell_max) {
    throw DomainError("smallest grid point must exceed ell_max so every width has scored positions");
  }

  const auto tail = prof.tail_begin();
  for (unsigned ell = 1; ell <= opts.ell_max; ++ell) {
    ContextTable cumulative(x.base(), ell);
    std::size_t done = scored_window(prof.grid.front(), ell, opts.orientation).first;
    WidthEstimate est{ell, 1.0, 0.0};
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
      const auto target = scored_window(prof.grid[i], ell, opts.orientation);
      cumulative.merge(count_parallel(x.digits(), x.base(), ell, opts.orientation,
                                      {done, target.last}, std::max(1u, opts.threads)));
      done = target.last;
      const auto r = cumulative.beta();
      prof.entries.push_back({ell, prof.grid[i], r});
      if (i >= tail) {
        est.loe = std::min(est.loe, r.value());
        est.upe = std::max(est.upe, r.value());
      }
    }
    prof.estimates.push_back(est);
  }
  prof.loe = prof.estimates.back().loe;
  prof.upe = prof.estimates.back().upe;
  return prof;
}

Classification classify(const NoiseProfile& profile, double tol) {
  if (profile.entries.empty()) throw DomainError("cannot classify an empty profile");
  const double top = static_cast<double>(profile.base - 1) / profile.base;
  Classification c{NoiseClass::Intermediate, profile.loe, profile.upe};
  if (profile.loe >= top - tol) {
    c.kind = NoiseClass::NormalLike;
  } else if (profile.upe <= tol) {
    c.kind = NoiseClass::PreservingLike;
  }
  return c;
}

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case NoiseClass::NormalLike:
      return "NormalLike";
    case NoiseClass::PreservingLike:
      return "PreservingLike";
    case NoiseClass::Intermediate:
      break;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "Intermediate [%.6f, %.6f]", c.s_low, c.s_high);
  return buf;
}

}  // namespace rauzy
