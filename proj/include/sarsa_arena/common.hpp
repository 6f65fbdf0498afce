#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string_view>

namespace sarsa_arena {

inline constexpr int kStateCount = 1296;
inline constexpr int kActionCount = 5;
inline constexpr int kCategoryCount = 6;
inline constexpr int kPairsPerCategory = kStateCount * kActionCount;

enum class WeaponCategory : std::uint8_t {
  InstantHit,
  MachineGun,
  Projectile,
  SlowMoving,
  CloseRange,
  Other,
};

inline constexpr std::array<WeaponCategory, kCategoryCount> kAllCategories{
    WeaponCategory::InstantHit, WeaponCategory::MachineGun,
    WeaponCategory::Projectile, WeaponCategory::SlowMoving,
    WeaponCategory::CloseRange, WeaponCategory::Other,
};

constexpr int category_index(WeaponCategory c) { return static_cast<int>(c); }
std::string_view category_name(WeaponCategory c);
std::optional<WeaponCategory> parse_category(std::string_view name);

/// Discrete combat state, an index into [0, 1296).
class StateId {
 public:
  constexpr StateId() = default;
  /// Throws std::out_of_range outside [0, kStateCount).
  explicit StateId(int index);

  constexpr int index() const { return index_; }
  auto operator<=>(const StateId&) const = default;

 private:
  std::uint16_t index_ = 0;
};

/// Seeded random stream. Thin wrapper over mt19937_64 so every consumer draws
/// through the same small set of primitives.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Stream derived from a root seed and a list of stream labels.
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> labels);

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  /// Uniform integer in [0, n).
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }
  bool chance(double p) { return uniform01() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sarsa_arena
