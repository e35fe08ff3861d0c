#include "din/core/types.hpp"

#include <algorithm>

#include "din/rng.hpp"

namespace din {

std::string DigitTriplet::to_string() const {
  return std::to_string(digits_[0]) + "," + std::to_string(digits_[1]) + "," +
         std::to_string(digits_[2]);
}

std::string to_string(MatchPolicy p) {
  return p == MatchPolicy::kExact ? "exact" : "contiguous";
}

MatchPolicy match_policy_from_string(const std::string& s) {
  if (s == "exact") return MatchPolicy::kExact;
  if (s == "contiguous") return MatchPolicy::kContiguous;
  throw ConfigError("unknown match policy '" + s + "' (expected exact|contiguous)");
}

namespace {

constexpr std::uint64_t kListSeed = 0x44494E2D4C495354ULL; // fixed forever

std::vector<TripletList> make_builtin_lists() {
  // 120-triplet pool sampled from the 720 ordered distinct-digit triplets.
  Rng pool_rng(derive_seed(kListSeed, streams::kLists, 0));
  std::vector<std::array<int, 3>> universe;
  for (int a = 0; a <= 9; ++a)
    for (int b = 0; b <= 9; ++b)
      for (int c = 0; c <= 9; ++c)
        if (a != b && a != c && b != c) universe.push_back({a, b, c});
  for (std::size_t i = 0; i < 120; ++i) {
    const auto j = i + static_cast<std::size_t>(pool_rng.uniform_below(universe.size() - i));
    std::swap(universe[i], universe[j]);
  }

  std::vector<TripletList> lists;
  for (int list_no = 1; list_no <= 10; ++list_no) {
    Rng rng(derive_seed(kListSeed, streams::kLists, static_cast<std::uint64_t>(list_no)));
    std::vector<int> order = rng.sample_without_replacement(0, 119, 24);
    std::vector<DigitTriplet> ts;
    ts.reserve(24);
    for (int idx : order) {
      const auto& d = universe[static_cast<std::size_t>(idx)];
      ts.emplace_back(d[0], d[1], d[2]);
    }
    lists.push_back(TripletList::checked(std::to_string(list_no), std::move(ts)));
  }
  return lists;
}

} // namespace

const std::vector<TripletList>& builtin_lists() {
  static const std::vector<TripletList> lists = make_builtin_lists();
  return lists;
}

const TripletList& builtin_list(const std::string& id) {
  for (const auto& l : builtin_lists())
    if (l.list_id == id) return l;
  throw ConfigError("no built-in list '" + id + "' (available: 1..10)");
}

} // namespace din
