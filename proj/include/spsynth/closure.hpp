#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "spsynth/bits.hpp"

namespace spsynth {

/// Members of L(D) up to a size bound, sorted by the total term order.
struct GeneratedSet {
  std::size_t bound = 0;
  std::vector<Term> terms;

  bool contains(const Term& t) const;
};

inline constexpr std::size_t kDefaultClosureCap = 5'000'000;

/// Least set containing the empty order and the point (within the bound)
/// and closed under every bit of entry `key`, keeping only sums of size
/// <= n. R cells range over the set being built; ideal cells over the
/// registered ideal's members of size <= n. Empty parts are allowed.
GeneratedSet generate_upto(const StructuralDescription& d, const std::string& key, std::size_t n,
                           std::size_t cap = kDefaultClosureCap);

/// Top-down decision procedure for membership in L(D) at entry `key`,
/// memoized per (entry, term). Ideal labels are decided by their
/// obstructions, R labels by recursion.
class TopDownMembership {
 public:
  explicit TopDownMembership(const StructuralDescription& d) : d_(d) {}

  bool operator()(const std::string& key, const Term& t);

 private:
  bool accepts(const std::string& key, const Label& label, const Term& part);
  bool compute(const std::string& key, const Term& t);

  const StructuralDescription& d_;
  std::mutex mutex_;
  std::unordered_map<std::string, std::unordered_map<std::uint32_t, bool>> memo_;
  std::unordered_map<std::string, Ideal> ideals_;
};

bool member_topdown(const StructuralDescription& d, const std::string& key, const Term& t);

}  // namespace spsynth
