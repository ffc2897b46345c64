#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_set>

#include "spsynth/term.hpp"

namespace spsynth {

namespace {

void check_cap(std::size_t count, std::size_t cap) {
  if (count > cap) {
    throw ResourceLimitError("enumeration exceeded the cap of " + std::to_string(cap) + " terms");
  }
}

// Builds canonical terms size by size. A chain sum of size s is a sequence
// of at least two non-chain parts; an antichain sum is a nondecreasing
// multiset of at least two non-antichain parts.
class GrammarEnumerator {
 public:
  explicit GrammarEnumerator(std::size_t cap) : cap_(cap) {}

  std::vector<Term> run(std::size_t n) {
    non_chain_.assign(n + 1, {});
    non_antichain_.assign(n + 1, {});
    std::vector<Term> all{Term::empty()};
    for (std::size_t s = 1; s <= n; ++s) {
      std::vector<Term> level;
      if (s == 1) {
        level.push_back(Term::point());
      } else {
        std::vector<Term> prefix;
        chain_sequences(s, prefix, level);
        antichain_multisets(s, 0, 0, prefix, level);
      }
      std::sort(level.begin(), level.end(), TermLess{});
      for (const auto& t : level) {
        if (!t.is_chain()) non_chain_[s].push_back(t);
        if (!t.is_antichain()) non_antichain_[s].push_back(t);
      }
      all.insert(all.end(), level.begin(), level.end());
      check_cap(all.size(), cap_);
      // Flat, size-major list of non-antichain terms for multiset indexing.
      flat_non_antichain_.insert(flat_non_antichain_.end(), non_antichain_[s].begin(), non_antichain_[s].end());
    }
    return all;
  }

 private:
  void chain_sequences(std::size_t remaining, std::vector<Term>& prefix, std::vector<Term>& out) {
    if (remaining == 0) {
      if (prefix.size() >= 2) out.push_back(Term::chain(prefix));
      return;
    }
    for (std::size_t a = 1; a <= remaining; ++a) {
      if (prefix.empty() && a == remaining) continue;  // would be a single part
      for (const auto& part : non_chain_[a]) {
        prefix.push_back(part);
        chain_sequences(remaining - a, prefix, out);
        prefix.pop_back();
        check_cap(out.size(), cap_);
      }
    }
  }

  // Parts are drawn from flat_non_antichain_ at indices >= `from`, which
  // orders them by the total term order.
  void antichain_multisets(std::size_t remaining, std::size_t from, std::size_t depth, std::vector<Term>& prefix,
                           std::vector<Term>& out) {
    if (remaining == 0) {
      if (prefix.size() >= 2) out.push_back(Term::antichain(prefix));
      return;
    }
    for (std::size_t i = from; i < flat_non_antichain_.size(); ++i) {
      const Term& part = flat_non_antichain_[i];
      if (part.size() > remaining) break;
      if (depth == 0 && part.size() == remaining) break;  // would be a single part
      prefix.push_back(part);
      antichain_multisets(remaining - part.size(), i, depth + 1, prefix, out);
      prefix.pop_back();
      check_cap(out.size(), cap_);
    }
  }

  std::size_t cap_;
  std::vector<std::vector<Term>> non_chain_;
  std::vector<std::vector<Term>> non_antichain_;
  std::vector<Term> flat_non_antichain_;
};

}  // namespace

std::vector<Term> enumerate_sp(std::size_t n, std::size_t cap) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<Term>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) {
      check_cap(it->second.size(), cap);
      return it->second;
    }
  }
  auto terms = GrammarEnumerator(cap).run(n);
  std::lock_guard lock(mutex);
  cache.emplace(n, terms);
  return terms;
}

std::vector<Term> enumerate_sp_by_closure(std::size_t n, std::size_t cap) {
  std::unordered_set<Term, TermHash> seen{Term::empty()};
  std::vector<std::vector<Term>> by_size(n + 1);
  by_size[0].push_back(Term::empty());
  if (n >= 1) {
    seen.insert(Term::point());
    by_size[1].push_back(Term::point());
  }
  // Every term of size s is a binary sum of two nonempty smaller terms, so
  // one pass in increasing size reaches the fixed point.
  for (std::size_t s = 2; s <= n; ++s) {
    for (std::size_t a = 1; a < s; ++a) {
      for (const auto& x : by_size[a]) {
        for (const auto& y : by_size[s - a]) {
          for (Term t : {Term::chain({x, y}), Term::antichain({x, y})}) {
            if (seen.insert(t).second) by_size[s].push_back(t);
          }
        }
      }
      check_cap(seen.size(), cap);
    }
  }
  std::vector<Term> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end(), TermLess{});
  return all;
}

}  // namespace spsynth
