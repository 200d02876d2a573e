#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rauzy {

/// Identifier recorded in run metadata for every seeded draw.
inline constexpr std::string_view kGeneratorId = "mt19937_64+lemire-bounded+u53";

/// Seeded digit source. std::mt19937_64 is fully specified by the standard;
/// the standard distributions are not, so the mappings below are our own to
/// keep draws identical across library implementations.
class DigitRng {
 public:
  explicit DigitRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound), bound >= 1 (Lemire's nearly-divisionless method).
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finaliser; derives independent per-block seeds from one run seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace rauzy
