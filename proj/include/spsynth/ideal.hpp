#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spsynth/term.hpp"

namespace spsynth {

/// Lower ideal of SP orders, held as its minimal obstruction antichain.
///
/// The obstruction list is sorted by the total term order and no element
/// is a suborder of another. `{Empty}` is the void ideal, `{Point}` holds
/// only the empty order, and the empty list is the ideal of all SP orders.
class Ideal {
 public:
  Ideal() = default;

  static Ideal forbidding(std::vector<Term> forbidden);
  static Ideal all_orders() { return {}; }
  static Ideal void_ideal();
  static Ideal empty_only();

  std::span<const Term> obstructions() const { return obstructions_; }

  bool contains(const Term& t) const;

  bool is_improper() const { return obstructions_.empty(); }
  bool is_void() const;
  bool is_empty_only() const;
  /// Nonempty obstruction list containing neither the empty order nor the point.
  bool is_nontrivial_proper() const { return !is_improper() && !is_void() && !is_empty_only(); }

  const std::string& key() const { return key_; }

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.key_ == b.key_; }

 private:
  std::vector<Term> obstructions_;
  std::string key_;
};

Ideal make_ideal(std::vector<Term> forbidden);
bool member(const Ideal& ideal, const Term& t);
Ideal intersect(const Ideal& a, const Ideal& b);
/// True iff `inner` is a subset of `outer`.
bool contains_ideal(const Ideal& outer, const Ideal& inner);
bool strictly_contains_ideal(const Ideal& outer, const Ideal& inner);

/// Obstruction renderings joined by '|', in obstruction order.
std::string ideal_key(const Ideal& ideal);
Ideal parse_ideal_key(std::string_view key);

/// One term per line; '#' starts a comment; blank lines are skipped.
std::vector<Term> read_obstructions(std::istream& in);
std::vector<Term> read_obstruction_file(const std::string& path);

}  // namespace spsynth
