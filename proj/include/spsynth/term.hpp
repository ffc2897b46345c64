#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spsynth {

enum class Kind : std::uint8_t { Empty = 0, Point = 1, Chain = 2, Antichain = 3 };

namespace detail {
struct Node;
}

/// Canonical decomposition term of a finite series-parallel order.
///
/// Terms are hash-consed: two terms are equal iff they denote isomorphic
/// orders, and equality is a pointer comparison. A chain sum keeps its
/// parts bottom to top, has at least two parts, and no part is empty or a
/// chain sum. An antichain sum has at least two parts, none empty or an
/// antichain sum, sorted by the total term order.
class Term {
 public:
  Term();  // the empty order

  static Term empty();
  static Term point();
  /// Chain sum of `parts`, bottom first. Flattens nested chains and drops
  /// empty parts; zero or one remaining part yields that part directly.
  static Term chain(std::vector<Term> parts);
  /// Antichain sum of `parts`, flattened and sorted.
  static Term antichain(std::vector<Term> parts);

  Kind kind() const;
  std::size_t size() const;
  std::span<const Term> children() const;
  /// Stable process-wide identifier, unique per canonical term.
  std::uint32_t id() const;
  /// Canonical rendering in the term grammar.
  const std::string& str() const;

  bool is_empty() const { return kind() == Kind::Empty; }
  bool is_point() const { return kind() == Kind::Point; }
  bool is_chain() const { return kind() == Kind::Chain; }
  bool is_antichain() const { return kind() == Kind::Antichain; }

  friend bool operator==(const Term& a, const Term& b) { return a.node_ == b.node_; }

 private:
  explicit Term(const detail::Node* node) : node_(node) {}
  friend struct detail::Node;
  friend class TermPool;

  const detail::Node* node_;
};

/// Total term order: size, then kind (Empty < Point < Chain < Antichain),
/// then lexicographic on the child lists.
std::strong_ordering compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return std::hash<std::uint32_t>{}(t.id()); }
};

/// Uncanonicalized tree in the shape of a term, as produced by a parser or
/// built by hand.
struct RawTerm {
  Kind kind = Kind::Empty;
  std::vector<RawTerm> children;

  static RawTerm empty() { return {Kind::Empty, {}}; }
  static RawTerm point() { return {Kind::Point, {}}; }
  static RawTerm chain(std::vector<RawTerm> c) { return {Kind::Chain, std::move(c)}; }
  static RawTerm antichain(std::vector<RawTerm> c) { return {Kind::Antichain, std::move(c)}; }
};

Term canonicalize(const RawTerm& raw);

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }
  /// The message without the position suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// Parses `term := "0" | "*" | "C(" term ("," term)+ ")" | "A(" term ("," term)+ ")"`.
/// Whitespace is ignored. Sums with fewer than two children are rejected.
RawTerm parse_raw_term(std::string_view text);
Term parse_term(std::string_view text);
std::string print_term(const Term& t);

std::size_t size(const Term& t);

/// Anticomponents of `t`: the children of a chain sum, `[t]` for a point or
/// antichain sum, and nothing for the empty order.
std::vector<Term> finest_chain_rep(const Term& t);
/// Components of `t`, dual to finest_chain_rep.
std::vector<Term> finest_antichain_rep(const Term& t);

/// True iff `p` is isomorphic to the restriction of `q` to some subset of
/// its points. Results are memoized per (p, q) pair and the memo is safe
/// to share across threads.
bool is_suborder(const Term& p, const Term& q);

/// Concrete partial order on points 0..n-1. `up[i]` has bit j set iff i <= j.
struct PosetRelation {
  std::size_t point_count = 0;
  std::vector<std::uint64_t> up;

  bool leq(std::size_t i, std::size_t j) const { return (up[i] >> j) & 1u; }
  bool is_partial_order() const;
};

inline constexpr std::size_t kMaxRelationPoints = 64;

/// Materializes the lexicographic-sum semantics of `t`. Points are numbered
/// in left-to-right order of the term.
PosetRelation to_relation(const Term& t);

/// True iff the relation has no induced N (a<b, c<d, c<b, other pairs incomparable).
bool is_n_free(const PosetRelation& r);

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

/// Every canonical term of size <= n, once each, sorted by the total term
/// order. Built directly from the grammar of canonical forms; results are
/// cached per n.
std::vector<Term> enumerate_sp(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

/// Same set as enumerate_sp, built instead by closing {Empty, Point} under
/// binary chain and antichain sums with canonical dedup.
std::vector<Term> enumerate_sp_by_closure(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

}  // namespace spsynth
