#pragma once

#include <span>
#include <string>
#include <vector>

#include "spsynth/bits.hpp"
#include "spsynth/term.hpp"

// Independent checks. Nothing here relies on the SP case analysis used by
// is_suborder; orders are compared as concrete relations.
namespace spsynth::oracle {

inline constexpr std::size_t kMaxOracleSize = 9;

/// Exhaustive search for an order embedding of to_relation(p) into
/// to_relation(q). Both sizes must be at most kMaxOracleSize.
bool brute_embed(const Term& p, const Term& q);
bool brute_embed(const PosetRelation& p, const PosetRelation& q);

/// Canonical terms of size <= n that contain no member of `forbidden`.
std::vector<Term> forb_upto(std::span<const Term> forbidden, std::size_t n);

struct EquivalenceReport {
  std::size_t bound = 0;
  std::size_t generated = 0;
  std::size_t expected = 0;
  std::vector<Term> missing;  // in Forb but not generated
  std::vector<Term> extra;    // generated but not in Forb

  bool equal() const { return missing.empty() && extra.empty(); }
  std::string summary() const;
  /// {"equal", "bound", "generated", "expected", "missing": [...], "extra": [...]}
  std::string to_json() const;
};

/// Compares the closure of `d` at its root with forb_upto(forbidden, n).
EquivalenceReport verify_equivalence(std::span<const Term> forbidden, const StructuralDescription& d, std::size_t n);

/// Every principal down-set is a chain.
bool is_forest(const PosetRelation& r);
/// Every principal up-set is a chain.
bool is_upside_down_forest(const PosetRelation& r);

/// True iff every component of `t` is a chain sum of an upside-down forest
/// (bottom) and a forest (top), either possibly empty.
bool diamond_free_shape(const Term& t);

Term diamond();

}  // namespace spsynth::oracle
