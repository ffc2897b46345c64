#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spsynth/ideal.hpp"

namespace spsynth {

/// Cell label of a bit: the self reference R, or the key of a lower ideal.
class Label {
 public:
  static Label self() { return Label(true, {}); }
  static Label ideal(std::string key) { return Label(false, std::move(key)); }

  bool is_self() const { return self_; }
  /// Ideal key; empty for the self label.
  const std::string& key() const { return key_; }
  /// "R" or the ideal key.
  std::string str() const { return self_ ? "R" : key_; }

  // R sorts first, ideal references by key.
  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (a.self_ != b.self_) return a.self_ ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.key_.compare(b.key_) <=> 0;
  }
  friend bool operator==(const Label&, const Label&) = default;

 private:
  Label(bool self, std::string key) : self_(self), key_(std::move(key)) {}

  bool self_;
  std::string key_;
};

enum class BitShape : std::uint8_t { Chain, Antichain };

/// Labeled two-point SP order. For a chain, `first` is the bottom point and
/// `second` the top; an antichain stores its unordered pair sorted.
class Bit {
 public:
  static Bit chain(Label bottom, Label top) { return Bit(BitShape::Chain, std::move(bottom), std::move(top)); }
  static Bit antichain(Label a, Label b) {
    if (b < a) std::swap(a, b);
    return Bit(BitShape::Antichain, std::move(a), std::move(b));
  }
  static Bit self_chain() { return chain(Label::self(), Label::self()); }          // R_C
  static Bit self_antichain() { return antichain(Label::self(), Label::self()); }  // R_A

  BitShape shape() const { return shape_; }
  const Label& first() const { return first_; }
  const Label& second() const { return second_; }

  std::string str() const;

  friend auto operator<=>(const Bit&, const Bit&) = default;
  friend bool operator==(const Bit&, const Bit&) = default;

 private:
  Bit(BitShape shape, Label first, Label second)
      : shape_(shape), first_(std::move(first)), second_(std::move(second)) {}

  BitShape shape_;
  Label first_;
  Label second_;
};

struct DescriptionEntry {
  Ideal ideal;
  std::vector<Bit> bits;  // sorted, unique
};

/// Flat table of ideals and the bits generating each of them. Ideal
/// labels name other entries by key; the void ideal ("0") and the
/// empty-only ideal ("*") may be referenced without an entry.
class StructuralDescription {
 public:
  std::string root;
  std::map<std::string, DescriptionEntry> entries;

  const DescriptionEntry* find(const std::string& key) const;
  const DescriptionEntry& at(const std::string& key) const;

  /// Registers an entry for `ideal`, sorting and deduplicating `bits`.
  void set_entry(const Ideal& ideal, std::vector<Bit> bits);

  /// Ideal named by `key`, resolving the two leaf ideals without an entry.
  std::optional<Ideal> resolve(const std::string& key) const;

  std::size_t bit_count() const;
};

bool is_leaf_key(const std::string& key);

class DescriptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 0 for an entry without bits, otherwise one more than the largest rank
/// among referenced entries (leaf ideals count as rank 0).
std::size_t rank(const StructuralDescription& d, const std::string& key);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks that the root and every label resolve, that labels form no
/// cycle, that each label ideal is strictly inside its entry's ideal, and
/// that each entry is keyed by its own ideal.
ValidationReport validate(const StructuralDescription& d);

/// Deterministic JSON document; see README for the schema.
std::string serialize(const StructuralDescription& d);
StructuralDescription deserialize(const std::string& document);

/// Graphviz digraph: one node per entry, one edge per ideal label.
std::string to_dot(const StructuralDescription& d);

}  // namespace spsynth
