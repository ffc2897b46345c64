#include "spsynth/synth.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace spsynth {

namespace {

std::string label_str(const CellLabel& l) { return l ? "[" + l->key() + "]" : "R"; }

using IdealPair = std::pair<Ideal, Ideal>;

struct PairLess {
  bool operator()(const IdealPair& a, const IdealPair& b) const {
    if (a.first.key() != b.first.key()) return a.first.key() < b.first.key();
    return a.second.key() < b.second.key();
  }
};

using PairSet = std::set<IdealPair, PairLess>;

CellLabel relabel(const Ideal& ideal, const Ideal& target) {
  if (ideal == target) return std::nullopt;
  return ideal;
}

// Relabels against `target`, normalizes and deduplicates.
std::vector<CellBit> finalize(BitShape shape, const PairSet& pairs, const Ideal& target) {
  std::set<CellBit> out;
  for (const auto& [a, b] : pairs) {
    CellLabel first = relabel(a, target);
    CellLabel second = relabel(b, target);
    CellBit bit = shape == BitShape::Chain ? CellBit::chain(std::move(first), std::move(second))
                                           : CellBit::antichain(std::move(first), std::move(second));
    if (auto n = normalize_bit(bit)) out.insert(*std::move(n));
  }
  return {out.begin(), out.end()};
}

// Raw single-chain bits of p with R written out as `r`.
std::vector<IdealPair> raw_chain_bits(const Term& p, const Ideal& r) {
  if (!p.is_chain()) throw SynthError("chain bit set needs a chain sum, got " + p.str());
  const auto parts = p.children();
  const std::size_t n = parts.size();
  std::vector<IdealPair> bits;
  bits.emplace_back(r, make_ideal({parts[n - 1]}));
  bits.emplace_back(make_ideal({parts[0]}), r);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    Term lower = Term::chain({parts.begin(), parts.begin() + i + 1});
    Term upper = Term::chain({parts.begin() + i, parts.end()});
    bits.emplace_back(make_ideal({lower}), make_ideal({upper}));
  }
  return bits;
}

// One bit per chain bit choice function, labels intersected across the
// tuple; R is Forb(ps).
PairSet raw_chain_multi(std::span<const Term> ps, const Ideal& r) {
  if (ps.empty()) throw SynthError("chain bit set needs at least one chain sum");
  std::vector<std::vector<IdealPair>> options;
  for (const auto& p : ps) options.push_back(raw_chain_bits(p, r));

  PairSet out;
  std::vector<std::size_t> choice(options.size(), 0);
  while (true) {
    Ideal bottom = options[0][choice[0]].first;
    Ideal top = options[0][choice[0]].second;
    for (std::size_t i = 1; i < options.size(); ++i) {
      bottom = intersect(bottom, options[i][choice[i]].first);
      top = intersect(top, options[i][choice[i]].second);
    }
    out.emplace(std::move(bottom), std::move(top));

    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == options[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

Term block_sum(const GammaAbcf& g, std::size_t f, std::uint32_t mask) {
  std::vector<Term> parts;
  const auto& block = g.gamma[f];
  for (std::size_t i = 0; i < block.size(); ++i)
    if (mask >> i & 1u) parts.push_back(g.components[block[i]]);
  return Term::antichain(std::move(parts));
}

void check_gamma(const GammaAbcf& g, const SynthOptions& options) {
  for (const auto& c : g.components)
    if (c.is_antichain() || c.is_empty()) throw SynthError("gamma component must not be an antichain sum: " + c.str());
  for (const auto& block : g.gamma) {
    if (block.empty()) throw SynthError("gamma block must be nonempty");
    if (block.size() > options.max_gamma_block) {
      throw SynthError("antichain sum with " + std::to_string(block.size()) + " components exceeds the cap of " +
                       std::to_string(options.max_gamma_block));
    }
    for (auto i : block)
      if (i >= g.components.size()) throw SynthError("gamma block index out of range");
  }
}

// Cell label pairs over every choice function with R written out as
// gamma_ideal(g). Choice functions steering (empty, F) left or (F, empty)
// right give a void cell and are skipped; the other two trivial splittings
// only repeat Forb of the block itself. What remains factors per block.
PairSet raw_antichain_pairs(const GammaAbcf& g, const SynthOptions& options) {
  check_gamma(g, options);
  const Ideal target = gamma_ideal(g);

  std::vector<std::vector<IdealPair>> per_block;
  for (std::size_t f = 0; f < g.gamma.size(); ++f) {
    const std::size_t k = g.gamma[f].size();
    const std::uint32_t full = (std::uint32_t{1} << k) - 1;
    std::vector<std::uint32_t> proper;
    for (std::uint32_t a = 1; a < full; ++a) proper.push_back(a);

    std::vector<Term> left_forbid(full + 1), right_forbid(full + 1);
    for (auto a : proper) {
      left_forbid[a] = block_sum(g, f, a);
      right_forbid[a] = block_sum(g, f, full & ~a);
    }

    PairSet seen;
    const std::uint64_t choices = std::uint64_t{1} << proper.size();
    for (std::uint64_t steer = 0; steer < choices; ++steer) {
      std::vector<Term> left, right;
      for (std::size_t s = 0; s < proper.size(); ++s) {
        if (steer >> s & 1u) {
          left.push_back(left_forbid[proper[s]]);
        } else {
          right.push_back(right_forbid[proper[s]]);
        }
      }
      seen.emplace(make_ideal(std::move(left)), make_ideal(std::move(right)));
    }
    per_block.emplace_back(seen.begin(), seen.end());
  }

  PairSet out;
  std::vector<std::size_t> choice(per_block.size(), 0);
  while (true) {
    Ideal left = target;
    Ideal right = target;
    for (std::size_t f = 0; f < per_block.size(); ++f) {
      left = intersect(left, per_block[f][choice[f]].first);
      right = intersect(right, per_block[f][choice[f]].second);
    }
    out.emplace(std::move(left), std::move(right));

    std::size_t f = 0;
    while (f < choice.size() && ++choice[f] == per_block[f].size()) choice[f++] = 0;
    if (f == choice.size()) break;
  }
  return out;
}

PairSet intersect_all(const PairSet& pairs, const Ideal& with) {
  PairSet out;
  for (const auto& [a, b] : pairs) out.emplace(intersect(a, with), intersect(b, with));
  return out;
}

const Ideal& resolve_label(const CellLabel& l, const Ideal& target) { return l ? *l : target; }

bool dominated_by(const CellBit& small, const CellBit& big, const Ideal& target) {
  if (small.shape != big.shape) return false;
  auto within = [&](const CellLabel& a, const CellLabel& b) {
    return contains_ideal(resolve_label(b, target), resolve_label(a, target));
  };
  if (within(small.first, big.first) && within(small.second, big.second)) return true;
  return small.shape == BitShape::Antichain && within(small.first, big.second) && within(small.second, big.first);
}

std::vector<CellBit> prune(std::vector<CellBit> bits, const Ideal& target) {
  std::vector<CellBit> kept;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < bits.size() && !drop; ++j) {
      if (i != j && !(bits[i] == bits[j]) && dominated_by(bits[i], bits[j], target)) drop = true;
    }
    if (!drop) kept.push_back(bits[i]);
  }
  return kept;
}

}  // namespace

CellBit CellBit::chain(CellLabel bottom, CellLabel top) { return {BitShape::Chain, std::move(bottom), std::move(top)}; }

CellBit CellBit::antichain(CellLabel a, CellLabel b) {
  if (label_str(b) < label_str(a)) std::swap(a, b);
  return {BitShape::Antichain, std::move(a), std::move(b)};
}

std::string CellBit::str() const {
  return label_str(first) + (shape == BitShape::Chain ? " < " : " | ") + label_str(second);
}

Bit CellBit::to_bit() const {
  auto conv = [](const CellLabel& l) { return l ? Label::ideal(l->key()) : Label::self(); };
  return shape == BitShape::Chain ? Bit::chain(conv(first), conv(second)) : Bit::antichain(conv(first), conv(second));
}

std::optional<CellBit> normalize_bit(const CellBit& bit) {
  for (const CellLabel* l : {&bit.first, &bit.second}) {
    if (*l && ((*l)->is_void() || (*l)->is_empty_only())) return std::nullopt;
  }
  return bit;
}

std::vector<CellBit> chain_bit_set_single(const Term& p) {
  const Ideal target = make_ideal({p});
  const auto raw = raw_chain_bits(p, target);
  return finalize(BitShape::Chain, PairSet(raw.begin(), raw.end()), target);
}

std::vector<CellBit> chain_bit_set_multi(std::span<const Term> ps) {
  const Ideal target = make_ideal({ps.begin(), ps.end()});
  return finalize(BitShape::Chain, raw_chain_multi(ps, target), target);
}

GammaAbcf build_gamma(std::span<const Term> antichain_sums) {
  GammaAbcf g;
  for (const auto& a : antichain_sums) {
    if (!a.is_antichain()) throw SynthError("gamma needs antichain sums, got " + a.str());
    std::vector<std::size_t> block;
    for (const auto& c : a.children()) {
      block.push_back(g.components.size());
      g.components.push_back(c);
    }
    g.gamma.push_back(std::move(block));
  }
  return g;
}

Ideal gamma_ideal(const GammaAbcf& g) {
  std::vector<Term> sums;
  for (std::size_t f = 0; f < g.gamma.size(); ++f) {
    sums.push_back(block_sum(g, f, (std::uint32_t{1} << g.gamma[f].size()) - 1));
  }
  return make_ideal(std::move(sums));
}

std::pair<Ideal, Ideal> cell_labels(const GammaAbcf& g) {
  if (g.abcf.size() != g.gamma.size()) throw SynthError("choice function does not cover every gamma block");
  const Ideal target = gamma_ideal(g);
  std::vector<Term> left(target.obstructions().begin(), target.obstructions().end());
  std::vector<Term> right = left;
  for (std::size_t f = 0; f < g.gamma.size(); ++f) {
    const std::uint32_t full = (std::uint32_t{1} << g.gamma[f].size()) - 1;
    if (g.abcf[f].size() != full + 1) throw SynthError("splitting function is not total");
    for (std::uint32_t a = 0; a <= full; ++a) {
      switch (g.abcf[f][a]) {
        case 1: left.push_back(block_sum(g, f, a)); break;
        case 2: right.push_back(block_sum(g, f, full & ~a)); break;
        default: throw SynthError("splitting function values must be 1 or 2");
      }
    }
  }
  return {make_ideal(std::move(left)), make_ideal(std::move(right))};
}

std::vector<CellBit> antichain_bit_set(const GammaAbcf& g, const SynthOptions& options) {
  return finalize(BitShape::Antichain, raw_antichain_pairs(g, options), gamma_ideal(g));
}

std::vector<CellBit> mixed_bit_set(std::span<const Term> chains, std::span<const Term> antichains,
                                   const SynthOptions& options) {
  if (chains.empty() || antichains.empty()) throw SynthError("mixed case needs chain sums and antichain sums");
  for (const auto& a : antichains)
    if (!a.is_antichain()) throw SynthError("expected an antichain sum, got " + a.str());

  const Ideal chain_ideal = make_ideal({chains.begin(), chains.end()});
  const GammaAbcf g = build_gamma(antichains);
  const Ideal antichain_ideal = gamma_ideal(g);
  const PairSet chain_pairs = raw_chain_multi(chains, chain_ideal);
  const PairSet antichain_pairs = raw_antichain_pairs(g, options);

  std::vector<CellBit> out;
  if (options.intersect_mixed_labels) {
    const Ideal target = intersect(chain_ideal, antichain_ideal);
    out = finalize(BitShape::Chain, intersect_all(chain_pairs, target), target);
    auto more = finalize(BitShape::Antichain, intersect_all(antichain_pairs, target), target);
    out.insert(out.end(), more.begin(), more.end());
  } else {
    out = finalize(BitShape::Chain, chain_pairs, chain_ideal);
    auto more = finalize(BitShape::Antichain, antichain_pairs, antichain_ideal);
    out.insert(out.end(), more.begin(), more.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CellBit> bits_for(const Ideal& target, const SynthOptions& options) {
  if (!target.is_nontrivial_proper()) throw SynthError("ideal '" + target.key() + "' is not nontrivial proper");
  std::vector<Term> chains, antichains;
  for (const auto& t : target.obstructions()) (t.is_chain() ? chains : antichains).push_back(t);

  std::vector<CellBit> bits;
  if (antichains.empty()) {
    bits = chain_bit_set_multi(chains);
    bits.push_back(CellBit::antichain(std::nullopt, std::nullopt));
  } else if (chains.empty()) {
    bits = antichain_bit_set(build_gamma(antichains), options);
    bits.push_back(CellBit::chain(std::nullopt, std::nullopt));
  } else {
    bits = mixed_bit_set(chains, antichains, options);
  }
  std::sort(bits.begin(), bits.end());
  bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
  if (options.prune_dominated) bits = prune(std::move(bits), target);
  return bits;
}

StructuralDescription synthesize(std::span<const Term> forbidden, const SynthOptions& options) {
  const Ideal root = make_ideal({forbidden.begin(), forbidden.end()});
  if (root.is_void()) throw SynthError("void ideal: the empty order is forbidden");
  if (root.is_empty_only()) throw SynthError("trivial ideal: only the empty order survives");
  if (root.is_improper()) throw SynthError("improper ideal: nothing is forbidden");

  StructuralDescription d;
  d.root = root.key();
  std::deque<Ideal> pending{root};
  std::set<std::string> queued{root.key()};
  while (!pending.empty()) {
    const Ideal target = std::move(pending.front());
    pending.pop_front();
    if (d.entries.size() >= options.max_entries) throw SynthError("description exceeded the entry cap");

    std::vector<Bit> bits;
    for (const auto& cb : bits_for(target, options)) {
      for (const CellLabel* l : {&cb.first, &cb.second}) {
        if (!*l) continue;
        const Ideal& label = **l;
        if (options.intersect_mixed_labels && !strictly_contains_ideal(target, label)) {
          throw SynthError("label '" + label.key() + "' is not strictly inside '" + target.key() + "'");
        }
        if (label.is_nontrivial_proper() && queued.insert(label.key()).second) pending.push_back(label);
      }
      bits.push_back(cb.to_bit());
    }
    d.set_entry(target, std::move(bits));
  }
  return d;
}

}  // namespace spsynth
