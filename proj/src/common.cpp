#include "sarsa_arena/common.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sarsa_arena {

namespace {
constexpr std::array<std::string_view, kCategoryCount> kCategoryNames{
    "InstantHit", "MachineGun", "Projectile", "SlowMoving", "CloseRange", "Other",
};
}  // namespace

std::string_view category_name(WeaponCategory c) { return kCategoryNames[category_index(c)]; }

std::optional<WeaponCategory> parse_category(std::string_view name) {
  for (auto c : kAllCategories) {
    if (kCategoryNames[category_index(c)] == name) return c;
  }
  return std::nullopt;
}

StateId::StateId(int index) {
  if (index < 0 || index >= kStateCount) {
    throw std::out_of_range("state index " + std::to_string(index) + " outside [0, 1296)");
  }
  index_ = static_cast<std::uint16_t>(index);
}

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
  std::vector<std::uint32_t> words;
  words.push_back(static_cast<std::uint32_t>(seed));
  words.push_back(static_cast<std::uint32_t>(seed >> 32));
  for (auto l : labels) {
    words.push_back(static_cast<std::uint32_t>(l));
    words.push_back(static_cast<std::uint32_t>(l >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> raw{};
  seq.generate(raw.begin(), raw.end());
  return Rng((static_cast<std::uint64_t>(raw[0]) << 32) | raw[1]);
}

}  // namespace sarsa_arena
