#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "spsynth/term.hpp"

namespace spsynth {

namespace {

class SuborderMemo {
 public:
  static SuborderMemo& instance() {
    static SuborderMemo memo;
    return memo;
  }

  std::optional<bool> find(std::uint64_t key) const {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    return std::nullopt;
  }

  void store(std::uint64_t key, bool value) {
    std::unique_lock lock(mutex_);
    table_.emplace(key, value);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, bool> table_;
};

bool embeds(const Term& p, const Term& q);

// p is a chain sum; q is a chain sum. Each part of p (point or antichain
// sum) lands inside one part of q, parts land monotonically, and a
// consecutive block of p-parts sharing a q-part must embed into it as a
// chain sum.
bool chain_into_chain(const Term& p, const Term& q) {
  const auto ps = p.children();
  const auto qs = q.children();
  const std::size_t n = ps.size();
  const std::size_t m = qs.size();
  // fits[i][j]: parts ps[i..n) embed into qs[j..m).
  std::vector<std::vector<char>> fits(n + 1, std::vector<char>(m + 1, 0));
  for (std::size_t j = 0; j <= m; ++j) fits[n][j] = 1;
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t jj = m; jj-- > 0;) {
      if (fits[ii][jj + 1]) {
        fits[ii][jj] = 1;
        continue;
      }
      std::size_t block_size = 0;
      for (std::size_t t = ii; t < n; ++t) {
        block_size += ps[t].size();
        if (block_size > qs[jj].size()) break;
        if (!fits[t + 1][jj + 1]) continue;
        Term block = t == ii ? ps[ii] : Term::chain({ps.begin() + ii, ps.begin() + t + 1});
        if (embeds(block, qs[jj])) {
          fits[ii][jj] = 1;
          break;
        }
      }
    }
  }
  return fits[0][0];
}

// p and q are antichain sums. Every component of p lands inside one
// component of q; the components sharing a target must embed there as an
// antichain sum.
bool antichain_into_antichain(const Term& p, const Term& q) {
  const auto ps = p.children();
  const auto qs = q.children();
  const std::size_t n = ps.size();
  const std::size_t m = qs.size();
  if (n > 20) throw ResourceLimitError("antichain sum with more than 20 components");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  std::vector<std::size_t> mask_size(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int low = __builtin_ctz(mask);
    mask_size[mask] = mask_size[mask & (mask - 1)] + ps[low].size();
  }

  // placeable[j][mask]: 1 yes, 0 no, -1 unknown.
  std::vector<std::vector<signed char>> memo(m + 1, std::vector<signed char>(full + 1, -1));
  auto solve = [&](auto&& self, std::uint32_t mask, std::size_t j) -> bool {
    if (mask == 0) return true;
    if (j == m) return false;
    auto& slot = memo[j][mask];
    if (slot >= 0) return slot;
    bool ok = self(self, mask, j + 1);
    for (std::uint32_t sub = mask; !ok && sub != 0; sub = (sub - 1) & mask) {
      if (mask_size[sub] > qs[j].size()) continue;
      std::vector<Term> group;
      for (std::uint32_t bits = sub; bits; bits &= bits - 1) group.push_back(ps[__builtin_ctz(bits)]);
      if (embeds(Term::antichain(std::move(group)), qs[j]) && self(self, mask & ~sub, j + 1)) ok = true;
    }
    slot = ok ? 1 : 0;
    return ok;
  };
  return solve(solve, full, 0);
}

bool compute(const Term& p, const Term& q) {
  if (p.is_empty()) return true;
  if (p.size() > q.size()) return false;
  if (p == q) return true;
  if (p.is_point()) return true;  // q is nonempty here
  if (q.is_point()) return false;

  if (q.is_chain()) {
    if (p.is_antichain()) {
      // An antichain sum is connected under incomparability.
      for (const auto& part : q.children())
        if (embeds(p, part)) return true;
      return false;
    }
    return chain_into_chain(p, q);
  }

  // q is an antichain sum.
  if (p.is_chain()) {
    // A chain sum is connected under comparability.
    for (const auto& part : q.children())
      if (embeds(p, part)) return true;
    return false;
  }
  return antichain_into_antichain(p, q);
}

bool embeds(const Term& p, const Term& q) {
  if (p.is_empty() || p == q) return true;
  if (p.size() > q.size()) return false;
  if (p.is_point()) return true;
  const std::uint64_t key = (std::uint64_t{p.id()} << 32) | q.id();
  auto& memo = SuborderMemo::instance();
  if (auto hit = memo.find(key)) return *hit;
  const bool result = compute(p, q);
  memo.store(key, result);
  return result;
}

}  // namespace

bool is_suborder(const Term& p, const Term& q) { return embeds(p, q); }

}  // namespace spsynth
