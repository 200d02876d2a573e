#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rauzy/digitseq.hpp"
#include "rauzy/error.hpp"
#include "rauzy/generators.hpp"
#include "rauzy/predictor.hpp"

namespace rauzy {

using Rational = boost::multiprecision::cpp_rational;

/// k-step Markov measure: stationary law rho on b^k words and an
/// overlap-respecting transition matrix P (row-major, b^k x b^k).
/// Words are indexed big-endian, see word_index().
template <class Scalar>
struct BasicMarkovSpec {
  unsigned base = 2;
  unsigned order = 1;
  std::vector<Scalar> rho;
  std::vector<Scalar> P;

  std::size_t states() const noexcept { return rho.size(); }
  const Scalar& transition(std::size_t from, std::size_t to) const { return P[from * states() + to]; }
};

using MarkovSpec = BasicMarkovSpec<double>;
using ExactMarkovSpec = BasicMarkovSpec<Rational>;
using ExactProbVector = BasicProbVector<Rational>;

namespace detail {

template <class Scalar>
bool near(const Scalar& a, const Scalar& b, double tol) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::abs(a - b) <= tol;
  } else {
    return a == b;
  }
}

}  // namespace detail

/// Checks shape, non-negativity, unit row sums, rho P = rho and the overlap
/// rule P(B, B') > 0 => B' = (B_2 .. B_k, d). Tolerance applies to doubles;
/// rational specs are checked exactly.
template <class Scalar>
void validate(const BasicMarkovSpec<Scalar>& spec, double tol = 1e-10) {
  check_base(spec.base);
  if (spec.order < 1) throw DomainError("Markov order must be >= 1");
  const auto n_opt = checked_pow(spec.base, spec.order);
  if (!n_opt || *n_opt > (1u << 16)) throw DomainError("Markov state space too large");
  const std::size_t n = *n_opt;
  if (spec.rho.size() != n || spec.P.size() != n * n) throw DomainError("Markov spec has the wrong shape");
  const std::size_t shift = n / spec.base;  // b^(k-1)
  Scalar rho_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.rho[i] < 0) throw DomainError("rho has a negative entry");
    rho_sum += spec.rho[i];
    Scalar row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& v = spec.transition(i, j);
      if (v < 0) throw DomainError("P has a negative entry");
      if (v > 0 && j / spec.base != i % shift) {
        throw DomainError("P(" + std::to_string(i) + ", " + std::to_string(j) +
                          ") > 0 between non-overlapping words");
      }
      row += v;
    }
    if (!detail::near(row, Scalar(1), tol)) throw DomainError("row " + std::to_string(i) + " of P does not sum to 1");
  }
  if (!detail::near(rho_sum, Scalar(1), tol)) throw DomainError("rho does not sum to 1");
  for (std::size_t j = 0; j < n; ++j) {
    Scalar col = 0;
    for (std::size_t i = 0; i < n; ++i) col += spec.rho[i] * spec.transition(i, j);
    if (!detail::near(col, spec.rho[j], tol)) throw DomainError("rho is not stationary for P");
  }
}

MarkovSpec make_markov_spec(unsigned base, unsigned order, std::vector<double> rho, std::vector<double> P);
ExactMarkovSpec make_markov_spec(unsigned base, unsigned order, std::vector<Rational> rho,
                                 std::vector<Rational> P);

/// mu[w_1 .. w_l] = rho(w_1..w_k) prod P(w_i..w_{i+k-1}, w_{i+1}..w_{i+k}).
template <class Scalar>
Scalar block_prob(const BasicMarkovSpec<Scalar>& spec, std::span<const Digit> word) {
  const unsigned k = spec.order;
  if (word.size() < k) throw DomainError("block_prob: word shorter than the Markov order");
  for (Digit d : word) {
    if (d >= spec.base) throw DomainError("block_prob: digit out of range");
  }
  Scalar prob = spec.rho[word_index(word.first(k), spec.base)];
  for (std::size_t i = 0; i + k < word.size(); ++i) {
    prob *= spec.transition(word_index(word.subspan(i, k), spec.base),
                            word_index(word.subspan(i + 1, k), spec.base));
  }
  return prob;
}

/// 1 - sum over B in b^l of max_d mu[d B]. For a k-step Markov measure the
/// conditional law of a digit given the next l >= k digits depends only on
/// the next k (the reversed chain is k-step Markov too), so the sum is the
/// same for every l >= k.
template <class Scalar>
Scalar measure_noise_at(const BasicMarkovSpec<Scalar>& spec, unsigned ell) {
  if (ell < spec.order) throw DomainError("measure_noise_at: need l >= k");
  const auto words = checked_pow(spec.base, ell);
  if (!words || *words > (1u << 22)) throw DomainError("measure_noise_at: too many words");
  std::vector<Digit> w(ell + 1, 0);
  Scalar kept = 0;
  for (std::uint64_t idx = 0; idx < *words; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned t = ell; t >= 1; --t) {
      w[t] = static_cast<Digit>(rest % spec.base);
      rest /= spec.base;
    }
    Scalar best = 0;
    for (unsigned d = 0; d < spec.base; ++d) {
      w[0] = static_cast<Digit>(d);
      Scalar pr = block_prob(spec, std::span<const Digit>(w));
      if (pr > best) best = pr;
    }
    kept += best;
  }
  return Scalar(1) - kept;
}

template <class Scalar>
Scalar measure_noise(const BasicMarkovSpec<Scalar>& spec) {
  validate(spec);
  return measure_noise_at(spec, spec.order);
}

/// Entropy rate in nats: sum_B rho(B) sum_B' -P log P, with 0 log 0 = 0.
double entropy(const MarkovSpec& spec);

/// Stationary law of a row-stochastic n x n matrix with a single closed
/// class. Throws AmbiguityError naming the classes when there are several.
std::vector<double> stationary(const std::vector<double>& P, std::size_t n);

/// Builds the k-step spec whose next digit after word B has law q[B * b + d].
MarkovSpec markov_from_conditionals(unsigned base, unsigned order, const std::vector<double>& q);

/// k = 1 spec with identical rows: the Bernoulli measure of pv.
template <class Scalar>
BasicMarkovSpec<Scalar> bernoulli_spec(const BasicProbVector<Scalar>& pv) {
  BasicMarkovSpec<Scalar> spec;
  spec.base = pv.base;
  spec.order = 1;
  spec.rho = pv.p;
  spec.P.reserve(pv.base * pv.base);
  for (unsigned i = 0; i < pv.base; ++i) spec.P.insert(spec.P.end(), pv.p.begin(), pv.p.end());
  return spec;
}

MarkovSpec uniform_spec(unsigned base, unsigned order);

/// H(s) = -s log s - (1-s) log(1-s) in nats.
double binary_entropy(double s);

struct BernoulliOpt {
  ProbVector pv;
  double entropy = 0;  // H(s) + s log(b-1)
};

/// Entropy-maximising Bernoulli law with noise exactly s:
/// p = (1-s, s/(b-1), ..., s/(b-1)). Requires 0 <= s <= (b-1)/b.
BernoulliOpt bernoulli_opt(unsigned base, double s);
ExactProbVector bernoulli_opt_exact(unsigned base, const Rational& s);

struct DimBounds {
  double s = 0;
  double lower = 0;      // H(s)/log b + s log(b-1)/log b
  double upper = 0;      // min(1, upper_raw)
  double upper_raw = 0;  // H(s)/log b + s
  // Sets whose dimension is exactly 1 for every admissible s.
  double a1 = 1, a2 = 1, a4 = 1, l = 1;
};

DimBounds dim_bounds(unsigned base, double s);
/// g + 1 evenly spaced points on [0, (b-1)/b].
std::vector<DimBounds> dim_bounds_grid(unsigned base, std::size_t g);

struct SearchResult {
  MarkovSpec spec;
  double entropy = 0;
  double noise = 0;
  std::size_t evaluations = 0;
};

/// Best-effort maximisation of the entropy rate over k-step Markov specs with
/// noise <= s. Starts from the bernoulli_opt point and only accepts feasible
/// improvements, so the result never falls below it. Deterministic.
SearchResult markov_search(unsigned base, unsigned order, double s, std::size_t budget);

/// n digits of a stationary sample path: the first k from rho, then P.
DigitSeq markov_seq(const MarkovSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace rauzy
