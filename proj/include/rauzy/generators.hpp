#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "rauzy/digitseq.hpp"

namespace rauzy {

/// Probability law on the digits 0..b-1.
template <class Scalar>
struct BasicProbVector {
  unsigned base = 2;
  std::vector<Scalar> p;
};

using ProbVector = BasicProbVector<double>;

/// Validates base, non-negativity and a unit sum within 1e-12.
ProbVector make_prob_vector(std::vector<double> p);

/// The arithmetic progression {n : n = residue (mod modulus)}.
struct Progression {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;

  bool contains(std::uint64_t n) const noexcept { return n % modulus == residue; }
  double density() const noexcept { return 1.0 / static_cast<double>(modulus); }
};

/// I_i = {n : n = 2^i - 1 (mod 2^(i+1))} for i < i_max, and the residual
/// progression {n : n = 2^i_max - 1 (mod 2^i_max)} covering everything else.
struct ProgressionPartition {
  std::vector<Progression> parts;
  Progression residual;

  /// Index of the part containing n, or parts.size() for the residual.
  std::size_t part_of(std::uint64_t n) const;
};

ProgressionPartition progression_partition(unsigned i_max);

/// Union of selected partition parts (index parts.size() selects the residual).
struct ProgressionUnion {
  ProgressionPartition partition;
  std::vector<std::size_t> selected;
};

/// Periodic set: n is a member iff mask[n % mask.size()].
struct PeriodicMask {
  std::vector<bool> mask;
};

/// Decidable description of a set A of positions.
class PositionSet {
 public:
  PositionSet(ProgressionUnion u);
  PositionSet(PeriodicMask m);

  static PositionSet all() { return PositionSet(PeriodicMask{{true}}); }
  static PositionSet none() { return PositionSet(PeriodicMask{{false}}); }
  static PositionSet evens() { return PositionSet(PeriodicMask{{true, false}}); }

  bool contains(std::uint64_t n) const;
  double density() const;

 private:
  std::variant<ProgressionUnion, PeriodicMask> desc_;
};

/// i.i.d. digits with law pv.
DigitSeq bernoulli_seq(const ProbVector& pv, std::size_t n, std::uint64_t seed);

/// out(n) = x(k) when n is the k-th element of A, else y(k) when n is the
/// k-th element of the complement. Throws LengthError if x or y runs out.
DigitSeq interleave(const PositionSet& a, const DigitSeq& x, const DigitSeq& y, std::size_t n);

/// Law used for u_i: p_0 = 1 - s - (1 - s - 1/b)/i, the rest split evenly
/// over the digits 1..b-1. Requires i >= 1 and 0 <= s < (b-1)/b.
ProbVector rauzy_law(unsigned i, double s, unsigned base);
DigitSeq rauzy_u(unsigned i, double s, unsigned base, std::size_t n, std::uint64_t seed);

/// a_1 = 1, a_{j+1} = a_j (j^2 + 1); blocks B_j = [a_j, a_{j+1}).
struct BlockSchedule {
  std::vector<std::uint64_t> a;  // a[0] unused (= 0), a[j] for j = 1..j_max+1

  std::size_t blocks() const noexcept { return a.size() < 2 ? 0 : a.size() - 2; }
  std::uint64_t begin(std::size_t j) const { return a.at(j); }
  std::uint64_t end(std::size_t j) const { return a.at(j + 1); }
};

BlockSchedule block_schedule(unsigned j_max);

/// Finite indicator family x_i(j); rows i, columns j (column 0 unused).
class IndicatorTable {
 public:
  IndicatorTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t i, std::size_t j) const { return i < rows_ && j < cols_ && bits_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, bool v = true);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<bool> bits_;
};

/// m(j) = min{j, min{i : x_i(j) = 1}}.
unsigned block_index(const IndicatorTable& x, unsigned j);

struct BlockConcatResult {
  DigitSeq digits;
  BlockSchedule schedule;
  std::vector<unsigned> m;           // m[j] for j = 1..j_max (m[0] unused)
  std::vector<std::uint64_t> seeds;  // per-block seeds, same indexing
};

/// Position 0 is 0; block B_j carries a fresh rauzy_u(max(m(j), 1), s) sample
/// drawn from mix_seed(seed, j).
BlockConcatResult block_concat(const IndicatorTable& x, double s, unsigned base, unsigned j_max,
                               std::uint64_t seed);

}  // namespace rauzy
