#include "rauzy/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rauzy/error.hpp"
#include "rauzy/rng.hpp"

namespace rauzy {

ProbVector make_prob_vector(std::vector<double> p) {
  check_base(static_cast<unsigned>(p.size()));
  double sum = 0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("probabilities must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("probabilities must sum to 1");
  return ProbVector{static_cast<unsigned>(p.size()), std::move(p)};
}

std::size_t ProgressionPartition::part_of(std::uint64_t n) const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].contains(n)) return i;
  }
  return parts.size();
}

ProgressionPartition progression_partition(unsigned i_max) {
  if (i_max < 1 || i_max > 62) throw DomainError("progression partition needs 1 <= i_max <= 62");
  ProgressionPartition out;
  for (unsigned i = 0; i < i_max; ++i) {
    const std::uint64_t m = std::uint64_t{1} << (i + 1);
    out.parts.push_back({(m >> 1) - 1, m});
  }
  const std::uint64_t m = std::uint64_t{1} << i_max;
  out.residual = {m - 1, m};
  return out;
}

PositionSet::PositionSet(ProgressionUnion u) : desc_(std::move(u)) {
  const auto& pu = std::get<ProgressionUnion>(desc_);
  for (auto s : pu.selected) {
    if (s > pu.partition.parts.size()) throw DomainError("progression index out of range");
  }
}

PositionSet::PositionSet(PeriodicMask m) : desc_(std::move(m)) {
  if (std::get<PeriodicMask>(desc_).mask.empty()) throw DomainError("periodic mask must be non-empty");
}

bool PositionSet::contains(std::uint64_t n) const {
  if (const auto* m = std::get_if<PeriodicMask>(&desc_)) return m->mask[n % m->mask.size()];
  const auto& u = std::get<ProgressionUnion>(desc_);
  const auto part = u.partition.part_of(n);
  return std::find(u.selected.begin(), u.selected.end(), part) != u.selected.end();
}

double PositionSet::density() const {
  if (const auto* m = std::get_if<PeriodicMask>(&desc_)) {
    return static_cast<double>(std::count(m->mask.begin(), m->mask.end(), true)) /
           static_cast<double>(m->mask.size());
  }
  const auto& u = std::get<ProgressionUnion>(desc_);
  double d = 0;
  for (auto s : u.selected) {
    d += s == u.partition.parts.size() ? u.partition.residual.density()
                                       : u.partition.parts[s].density();
  }
  return d;
}

DigitSeq bernoulli_seq(const ProbVector& pv, std::size_t n, std::uint64_t seed) {
  check_base(pv.base);
  if (pv.p.size() != pv.base) throw DomainError("probability vector length differs from base");
  std::vector<double> cum(pv.base);
  std::partial_sum(pv.p.begin(), pv.p.end(), cum.begin());
  unsigned last_positive = 0;
  for (unsigned d = 0; d < pv.base; ++d) {
    if (pv.p[d] > 0) last_positive = d;
  }
  DigitRng rng(seed);
  std::vector<Digit> out(n);
  for (auto& digit : out) {
    const double u = rng.unit();
    unsigned d = 0;
    while (d < pv.base && !(u < cum[d] && pv.p[d] > 0)) ++d;
    digit = static_cast<Digit>(d < pv.base ? d : last_positive);
  }
  return DigitSeq(pv.base, std::move(out));
}

DigitSeq interleave(const PositionSet& a, const DigitSeq& x, const DigitSeq& y, std::size_t n) {
  if (x.base() != y.base()) throw DomainError("interleave: x and y have different bases");
  std::vector<Digit> out(n);
  std::size_t kx = 0;
  std::size_t ky = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.contains(i)) {
      if (kx >= x.size()) throw LengthError("interleave: x exhausted at output position " + std::to_string(i));
      out[i] = x[kx++];
    } else {
      if (ky >= y.size()) throw LengthError("interleave: y exhausted at output position " + std::to_string(i));
      out[i] = y[ky++];
    }
  }
  return DigitSeq(x.base(), std::move(out));
}

ProbVector rauzy_law(unsigned i, double s, unsigned base) {
  check_base(base);
  const double top = static_cast<double>(base - 1) / base;
  if (i < 1) throw DomainError("rauzy_u: index i must be >= 1");
  if (!(s >= 0.0 && s < top)) throw DomainError("rauzy_u: need 0 <= s < (b-1)/b");
  const double noise = s + (1.0 - s - 1.0 / base) / i;
  if (noise > top + 1e-15) throw DomainError("rauzy_u: target noise exceeds (b-1)/b");
  ProbVector pv{base, std::vector<double>(base, noise / (base - 1))};
  pv.p[0] = 1.0 - noise;
  return pv;
}

DigitSeq rauzy_u(unsigned i, double s, unsigned base, std::size_t n, std::uint64_t seed) {
  return bernoulli_seq(rauzy_law(i, s, base), n, seed);
}

BlockSchedule block_schedule(unsigned j_max) {
  if (j_max < 1) throw DomainError("block schedule needs j_max >= 1");
  BlockSchedule s;
  s.a = {0, 1};
  for (std::uint64_t j = 1; j <= j_max; ++j) {
    const std::uint64_t next = s.a.back() * (j * j + 1);
    if (next > (std::uint64_t{1} << 32)) {
      throw DomainError("block schedule for j_max = " + std::to_string(j_max) +
                        " exceeds 2^32 positions");
    }
    s.a.push_back(next);
  }
  return s;
}

void IndicatorTable::set(std::size_t i, std::size_t j, bool v) {
  if (i >= rows_ || j >= cols_) throw DomainError("indicator index out of range");
  bits_[i * cols_ + j] = v;
}

unsigned block_index(const IndicatorTable& x, unsigned j) {
  for (unsigned i = 0; i < j; ++i) {
    if (x.get(i, j)) return i;
  }
  return j;
}

BlockConcatResult block_concat(const IndicatorTable& x, double s, unsigned base, unsigned j_max,
                               std::uint64_t seed) {
  check_base(base);
  const double top = static_cast<double>(base - 1) / base;
  if (!(s >= 0.0 && s < top)) throw DomainError("block_concat: need 0 <= s < (b-1)/b");
  auto schedule = block_schedule(j_max);
  std::vector<Digit> out(schedule.a.back(), 0);
  std::vector<unsigned> m(j_max + 1, 0);
  std::vector<std::uint64_t> seeds(j_max + 1, 0);
  for (unsigned j = 1; j <= j_max; ++j) {
    m[j] = block_index(x, j);
    seeds[j] = mix_seed(seed, j);
    const auto first = schedule.begin(j);
    const auto len = schedule.end(j) - first;
    const auto block = rauzy_u(std::max(m[j], 1u), s, base, len, seeds[j]);
    std::copy(block.digits().begin(), block.digits().end(),
              out.begin() + static_cast<std::ptrdiff_t>(first));
  }
  return {DigitSeq(base, std::move(out)), std::move(schedule), std::move(m), std::move(seeds)};
}

}  // namespace rauzy
