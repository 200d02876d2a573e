#include "rauzy/measures.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "rauzy/rng.hpp"

namespace rauzy {

MarkovSpec make_markov_spec(unsigned base, unsigned order, std::vector<double> rho, std::vector<double> P) {
  MarkovSpec spec{base, order, std::move(rho), std::move(P)};
  validate(spec);
  return spec;
}

ExactMarkovSpec make_markov_spec(unsigned base, unsigned order, std::vector<Rational> rho,
                                 std::vector<Rational> P) {
  ExactMarkovSpec spec{base, order, std::move(rho), std::move(P)};
  validate(spec);
  return spec;
}

double entropy(const MarkovSpec& spec) {
  validate(spec);
  const std::size_t n = spec.states();
  double h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = spec.transition(i, j);
      if (v > 0) row -= v * std::log(v);
    }
    h += spec.rho[i] * row;
  }
  return h;
}

namespace {

// Closed communicating classes of the support graph of P.
std::vector<std::vector<std::size_t>> closed_classes(const std::vector<double>& P, std::size_t n) {
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (P[u * n + v] > 0 && !reach[s][v]) {
          reach[s][v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t v = 0; v < n; ++v) {
      if (reach[s][v] && reach[v][s]) {
        cls.push_back(v);
        seen[v] = 1;
      }
    }
    // Closed iff everything reachable from s is in the class.
    const bool closed =
        std::count(reach[s].begin(), reach[s].end(), 1) == static_cast<std::ptrdiff_t>(cls.size());
    if (closed) out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

std::vector<double> stationary(const std::vector<double>& P, std::size_t n) {
  if (n == 0 || P.size() != n * n) throw DomainError("stationary: P must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (P[i * n + j] < 0) throw DomainError("stationary: negative transition probability");
      row += P[i * n + j];
    }
    if (std::abs(row - 1.0) > 1e-10) throw DomainError("stationary: P is not row-stochastic");
  }
  const auto classes = closed_classes(P, n);
  if (classes.size() != 1) {
    std::string msg = "stationary: " + std::to_string(classes.size()) + " closed classes:";
    for (const auto& cls : classes) {
      msg += " {";
      for (std::size_t i = 0; i < cls.size(); ++i) msg += (i ? "," : "") + std::to_string(cls[i]);
      msg += "}";
    }
    throw AmbiguityError(msg);
  }

  // Solve rho (P - I) = 0 together with sum(rho) = 1.
  Eigen::MatrixXd a(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = P[i * n + j];
  }
  a.topRows(static_cast<Eigen::Index>(n)) -= Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  a.row(static_cast<Eigen::Index>(n)).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + 1));
  rhs(static_cast<Eigen::Index>(n)) = 1.0;
  Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);

  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = std::max(0.0, x(static_cast<Eigen::Index>(i)));
  // A few power steps polish the residual below 1e-12.
  for (int it = 0; it < 64; ++it) {
    const double sum = std::accumulate(rho.begin(), rho.end(), 0.0);
    for (auto& v : rho) v /= sum;
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[j] += rho[i] * P[i * n + j];
    }
    double resid = 0;
    for (std::size_t j = 0; j < n; ++j) resid = std::max(resid, std::abs(next[j] - rho[j]));
    if (resid <= 1e-13) break;
    rho = std::move(next);
  }
  return rho;
}

MarkovSpec markov_from_conditionals(unsigned base, unsigned order, const std::vector<double>& q) {
  check_base(base);
  const auto n_opt = checked_pow(base, order);
  if (order < 1 || !n_opt || *n_opt > (1u << 16)) throw DomainError("markov_from_conditionals: bad order");
  const std::size_t n = *n_opt;
  if (q.size() != n * base) throw DomainError("markov_from_conditionals: need b^k * b conditionals");
  const std::size_t shift = n / base;
  std::vector<double> P(n * n, 0.0);
  for (std::size_t from = 0; from < n; ++from) {
    for (unsigned d = 0; d < base; ++d) P[from * n + (from % shift) * base + d] = q[from * base + d];
  }
  auto rho = stationary(P, n);
  return MarkovSpec{base, order, std::move(rho), std::move(P)};
}

MarkovSpec uniform_spec(unsigned base, unsigned order) {
  check_base(base);
  const auto n = checked_pow(base, order);
  if (!n) throw DomainError("uniform_spec: order too large");
  return markov_from_conditionals(base, order, std::vector<double>(*n * base, 1.0 / base));
}

double binary_entropy(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("binary_entropy: need 0 <= s <= 1");
  double h = 0;
  if (s > 0) h -= s * std::log(s);
  if (s < 1) h -= (1 - s) * std::log1p(-s);
  return h;
}

namespace {

void check_noise_level(unsigned base, double s) {
  check_base(base);
  const double top = static_cast<double>(base - 1) / base;
  if (!(s >= 0.0 && s <= top)) throw DomainError("noise level must lie in [0, (b-1)/b]");
}

}  // namespace

BernoulliOpt bernoulli_opt(unsigned base, double s) {
  check_noise_level(base, s);
  ProbVector pv{base, std::vector<double>(base, s / (base - 1))};
  pv.p[0] = 1.0 - s;
  return {std::move(pv), binary_entropy(s) + s * std::log(static_cast<double>(base - 1))};
}

ExactProbVector bernoulli_opt_exact(unsigned base, const Rational& s) {
  check_base(base);
  if (s < 0 || s > Rational(base - 1, base)) throw DomainError("noise level must lie in [0, (b-1)/b]");
  ExactProbVector pv{base, std::vector<Rational>(base, s / (base - 1))};
  pv.p[0] = 1 - s;
  return pv;
}

DimBounds dim_bounds(unsigned base, double s) {
  check_noise_level(base, s);
  const double lb = std::log(static_cast<double>(base));
  DimBounds d;
  d.s = s;
  d.lower = binary_entropy(s) / lb + s * std::log(static_cast<double>(base - 1)) / lb;
  d.upper_raw = binary_entropy(s) / lb + s;
  // Subsets of the line have dimension at most 1.
  d.upper = std::min(1.0, d.upper_raw);
  d.lower = std::min(1.0, d.lower);
  return d;
}

std::vector<DimBounds> dim_bounds_grid(unsigned base, std::size_t g) {
  check_base(base);
  if (g == 0) throw DomainError("dim_bounds_grid: need at least one interval");
  const double top = static_cast<double>(base - 1) / base;
  std::vector<DimBounds> out;
  out.reserve(g + 1);
  for (std::size_t i = 0; i <= g; ++i) {
    const double s = i == g ? top : top * static_cast<double>(i) / static_cast<double>(g);
    out.push_back(dim_bounds(base, s));
  }
  return out;
}

SearchResult markov_search(unsigned base, unsigned order, double s, std::size_t budget) {
  check_noise_level(base, s);
  if (order < 1 || order > 3) throw DomainError("markov_search: order must be in [1, 3]");
  const std::size_t n = *checked_pow(base, order);
  const auto seed = bernoulli_opt(base, s);
  std::vector<double> q;
  for (std::size_t i = 0; i < n; ++i) q.insert(q.end(), seed.pv.p.begin(), seed.pv.p.end());

  SearchResult best;
  best.spec = markov_from_conditionals(base, order, q);
  best.entropy = entropy(best.spec);
  best.noise = measure_noise(best.spec);
  best.evaluations = 1;
  const double cap = s + 1e-10;

  auto try_candidate = [&](const std::vector<double>& cand) {
    ++best.evaluations;
    try {
      auto spec = markov_from_conditionals(base, order, cand);
      const double noise = measure_noise(spec);
      if (noise > cap) return false;
      const double h = entropy(spec);
      if (h <= best.entropy + 1e-14) return false;
      best.spec = std::move(spec);
      best.entropy = h;
      best.noise = noise;
      return true;
    } catch (const AmbiguityError&) {
      return false;
    } catch (const DomainError&) {
      return false;
    }
  };

  // Pattern search: move mass between two digits of one row, halve the step
  // whenever a full sweep finds nothing.
  double step = 0.05;
  while (step > 1e-9 && best.evaluations < budget) {
    bool improved = false;
    for (std::size_t row = 0; row < n && best.evaluations < budget; ++row) {
      for (unsigned up = 0; up < base && best.evaluations < budget; ++up) {
        for (unsigned down = 0; down < base && best.evaluations < budget; ++down) {
          if (up == down) continue;
          const double delta = std::min(step, q[row * base + down]);
          if (delta <= 0) continue;
          auto cand = q;
          cand[row * base + up] += delta;
          cand[row * base + down] -= delta;
          if (try_candidate(cand)) {
            q = std::move(cand);
            improved = true;
          }
        }
      }
    }
    if (!improved) step /= 2;
  }
  return best;
}

DigitSeq markov_seq(const MarkovSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec);
  const unsigned b = spec.base;
  const unsigned k = spec.order;
  const std::size_t shift = spec.states() / b;
  DigitRng rng(seed);
  // inverse CDF, skipping zero-probability outcomes
  auto draw = [&](auto&& prob, std::size_t count) {
    const double u = rng.unit();
    double acc = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const double p = prob(i);
      if (p <= 0) continue;
      last = i;
      acc += p;
      if (u < acc) return i;
    }
    return last;
  };
  std::vector<Digit> out(n);
  std::size_t state = draw([&](std::size_t i) { return spec.rho[i]; }, spec.states());
  for (unsigned t = 0; t < k && t < n; ++t) {
    out[t] = static_cast<Digit>(state / checked_pow(b, k - 1 - t).value() % b);
  }
  for (std::size_t i = k; i < n; ++i) {
    const std::size_t base_next = (state % shift) * b;
    const std::size_t d = draw([&](std::size_t dd) { return spec.transition(state, base_next + dd); }, b);
    out[i] = static_cast<Digit>(d);
    state = base_next + d;
  }
  return DigitSeq(b, std::move(out));
}

}  // namespace rauzy
