#include "spsynth/closure.hpp"

#include <algorithm>
#include <unordered_set>

namespace spsynth {

bool GeneratedSet::contains(const Term& t) const {
  return std::binary_search(terms.begin(), terms.end(), t, TermLess{});
}

namespace {

using Buckets = std::vector<std::vector<Term>>;  // indexed by size

Buckets bucket(const std::vector<Term>& terms, std::size_t n) {
  Buckets b(n + 1);
  for (const auto& t : terms)
    if (t.size() <= n) b[t.size()].push_back(t);
  return b;
}

}  // namespace

GeneratedSet generate_upto(const StructuralDescription& d, const std::string& key, std::size_t n, std::size_t cap) {
  const DescriptionEntry& entry = d.at(key);

  // Ideal cells are materialized once from the enumeration.
  std::unordered_map<std::string, Buckets> ideal_cells;
  const auto universe = enumerate_sp(n);
  for (const auto& bit : entry.bits) {
    for (const Label* l : {&bit.first(), &bit.second()}) {
      if (l->is_self() || ideal_cells.count(l->key())) continue;
      auto ideal = d.resolve(l->key());
      if (!ideal) throw DescriptionError("no entry for ideal '" + l->key() + "'");
      std::vector<Term> members;
      for (const auto& t : universe)
        if (ideal->contains(t)) members.push_back(t);
      ideal_cells.emplace(l->key(), bucket(members, n));
    }
  }

  std::unordered_set<Term, TermHash> seen;
  Buckets all(n + 1);
  Buckets delta(n + 1);
  auto add = [&](const Term& t, Buckets& into) {
    if (seen.insert(t).second) {
      into[t.size()].push_back(t);
      if (seen.size() > cap) throw ResourceLimitError("closure exceeded the cap of " + std::to_string(cap) + " terms");
    }
  };
  add(Term::empty(), delta);
  if (n >= 1) add(Term::point(), delta);
  for (std::size_t s = 0; s <= n; ++s) all[s] = delta[s];

  auto cell = [&](const Label& l, const Buckets& self_cell) -> const Buckets& {
    return l.is_self() ? self_cell : ideal_cells.at(l.key());
  };

  for (bool first_round = true;; first_round = false) {
    Buckets fresh(n + 1);
    auto combine = [&](const Bit& bit, const Buckets& left, const Buckets& right) {
      for (std::size_t s1 = 0; s1 <= n; ++s1) {
        if (left[s1].empty()) continue;
        for (std::size_t s2 = 0; s1 + s2 <= n; ++s2) {
          for (const auto& x : left[s1])
            for (const auto& y : right[s2]) {
              add(bit.shape() == BitShape::Chain ? Term::chain({x, y}) : Term::antichain({x, y}), fresh);
            }
        }
      }
    };
    for (const auto& bit : entry.bits) {
      const bool self_first = bit.first().is_self();
      const bool self_second = bit.second().is_self();
      if (!self_first && !self_second) {
        if (first_round) combine(bit, cell(bit.first(), all), cell(bit.second(), all));
        continue;
      }
      // Every new sum needs at least one R cell filled from the last round.
      if (self_first) combine(bit, delta, cell(bit.second(), all));
      if (self_second) combine(bit, cell(bit.first(), all), delta);
    }

    bool grew = false;
    for (std::size_t s = 0; s <= n; ++s) {
      grew = grew || !fresh[s].empty();
      all[s].insert(all[s].end(), fresh[s].begin(), fresh[s].end());
    }
    if (!grew) break;
    delta = std::move(fresh);
  }

  GeneratedSet out;
  out.bound = n;
  for (const auto& level : all) out.terms.insert(out.terms.end(), level.begin(), level.end());
  std::sort(out.terms.begin(), out.terms.end(), TermLess{});
  return out;
}

bool TopDownMembership::operator()(const std::string& key, const Term& t) {
  d_.at(key);
  return compute(key, t);
}

bool TopDownMembership::accepts(const std::string& key, const Label& label, const Term& part) {
  if (label.is_self()) return compute(key, part);
  std::unique_lock lock(mutex_);
  auto it = ideals_.find(label.key());
  if (it == ideals_.end()) {
    auto ideal = d_.resolve(label.key());
    if (!ideal) throw DescriptionError("no entry for ideal '" + label.key() + "'");
    it = ideals_.emplace(label.key(), *ideal).first;
  }
  const Ideal ideal = it->second;
  lock.unlock();
  return ideal.contains(part);
}

bool TopDownMembership::compute(const std::string& key, const Term& t) {
  if (t.size() <= 1) return true;
  {
    std::lock_guard lock(mutex_);
    auto& table = memo_[key];
    if (auto it = table.find(t.id()); it != table.end()) return it->second;
  }

  const DescriptionEntry& entry = d_.at(key);
  // A split putting all of t in an R cell next to an empty part only
  // rederives t from itself, so it is skipped.
  auto try_split = [&](const Bit& bit, const Term& a, const Term& b) {
    if ((a == t && bit.first().is_self()) || (b == t && bit.second().is_self())) return false;
    return accepts(key, bit.first(), a) && accepts(key, bit.second(), b);
  };

  bool result = false;
  for (const auto& bit : entry.bits) {
    if (bit.shape() == BitShape::Chain) {
      const auto parts = finest_chain_rep(t);
      for (std::size_t cut = 0; cut <= parts.size() && !result; ++cut) {
        Term lower = Term::chain({parts.begin(), parts.begin() + cut});
        Term upper = Term::chain({parts.begin() + cut, parts.end()});
        result = try_split(bit, lower, upper);
      }
    } else {
      const auto parts = finest_antichain_rep(t);
      if (parts.size() > 20) throw ResourceLimitError("antichain sum with more than 20 components");
      const std::uint32_t full = (std::uint32_t{1} << parts.size()) - 1;
      for (std::uint32_t mask = 0; mask <= full && !result; ++mask) {
        std::vector<Term> left, right;
        for (std::size_t i = 0; i < parts.size(); ++i) (mask >> i & 1u ? left : right).push_back(parts[i]);
        result = try_split(bit, Term::antichain(std::move(left)), Term::antichain(std::move(right)));
      }
    }
    if (result) break;
  }

  std::lock_guard lock(mutex_);
  memo_[key].emplace(t.id(), result);
  return result;
}

bool member_topdown(const StructuralDescription& d, const std::string& key, const Term& t) {
  return TopDownMembership(d)(key, t);
}

}  // namespace spsynth
