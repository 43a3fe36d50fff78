#ifndef UNPROJ_RNG_HPP
#define UNPROJ_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace unproj {

/// Deterministic random source. Every stage draws from its own named stream
/// derived from the one user seed, so adding a stage never shifts the draws of
/// another.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : Rng(seed, "") {}

  /// Independent stream for a named stage.
  Rng stream(const std::string& name) const { return Rng(seed_, name); }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [1, p-1].
  std::uint32_t nonzero_mod(std::uint32_t p) {
    return std::uniform_int_distribution<std::uint32_t>(1, p - 1)(engine_);
  }
  std::uint64_t seed() const { return seed_; }

private:
  Rng(std::uint64_t seed, const std::string& name) : seed_(seed) {
    std::seed_seq seq = make_seq(seed, name);
    engine_.seed(seq);
  }

  static std::seed_seq make_seq(std::uint64_t seed, const std::string& name) {
    // FNV-1a of the stream name
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : name) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace unproj

#endif  // UNPROJ_RNG_HPP
