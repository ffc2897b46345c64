#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spsynth/bits.hpp"
#include "spsynth/ideal.hpp"

namespace spsynth {

/// Label carried while synthesizing: `std::nullopt` is R, otherwise the
/// ideal itself (not yet registered in a table).
using CellLabel = std::optional<Ideal>;

struct CellBit {
  BitShape shape;
  CellLabel first;   // bottom for chains
  CellLabel second;  // top for chains

  static CellBit chain(CellLabel bottom, CellLabel top);
  /// Stores the pair in canonical order.
  static CellBit antichain(CellLabel a, CellLabel b);

  std::string str() const;
  Bit to_bit() const;

  friend bool operator==(const CellBit& a, const CellBit& b) { return a.str() == b.str(); }
  friend bool operator<(const CellBit& a, const CellBit& b) { return a.str() < b.str(); }
};

struct SynthOptions {
  /// Largest antichain sum (number of components) the splitting enumeration accepts.
  std::size_t max_gamma_block = 4;
  /// Intersect labels of the mixed chain/antichain case with the target
  /// ideal. Turning this off is only meant for tests.
  bool intersect_mixed_labels = true;
  /// Drop a bit when another bit of the same shape has pointwise larger labels.
  bool prune_dominated = false;
  /// Upper bound on the number of table entries.
  std::size_t max_entries = 100'000;
};

class SynthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index system over the components of a list of antichain sums: positions
/// of every component, the index block of each antichain sum, and
/// optionally one splitting function per block.
struct GammaAbcf {
  std::vector<Term> components;
  /// Blocks of 0-based positions into `components`.
  std::vector<std::vector<std::size_t>> gamma;
  /// `abcf[f][mask]` is 1 or 2: where the splitting (A, F - A) is steered,
  /// with A the members of `gamma[f]` selected by the bits of `mask`.
  /// Empty when no choice function has been fixed.
  std::vector<std::vector<std::uint8_t>> abcf;
};

/// Drops bits that can never contribute: a void label makes the bit
/// unfillable; an empty-only label reduces it to a single point.
std::optional<CellBit> normalize_bit(const CellBit& bit);

/// Bits for forbidding one chain sum, normalized. R stands for Forb(p).
std::vector<CellBit> chain_bit_set_single(const Term& p);

/// Bits for forbidding every chain sum in `ps` at once, one per choice of
/// a single-chain bit for each member; normalized, R = Forb(ps).
std::vector<CellBit> chain_bit_set_multi(std::span<const Term> ps);

GammaAbcf build_gamma(std::span<const Term> antichain_sums);

/// Forb of the antichain sum over each block of `g`.
Ideal gamma_ideal(const GammaAbcf& g);

/// Left and right cell labels for the choice function fixed in `g.abcf`,
/// before normalization or relabeling.
std::pair<Ideal, Ideal> cell_labels(const GammaAbcf& g);

/// Antichain bits over every choice function for `g`, normalized, with
/// R = gamma_ideal(g). Components must not be antichain sums.
std::vector<CellBit> antichain_bit_set(const GammaAbcf& g, const SynthOptions& options = {});

/// Bits for forbidding the chain sums `chains` together with the antichain
/// sums `antichains`. No R-bits are added.
std::vector<CellBit> mixed_bit_set(std::span<const Term> chains, std::span<const Term> antichains,
                                   const SynthOptions& options = {});

/// The bit set generating `target` with R standing for `target` itself.
std::vector<CellBit> bits_for(const Ideal& target, const SynthOptions& options = {});

/// Builds the full table for Forb(forbidden), recursing on every label ideal.
StructuralDescription synthesize(std::span<const Term> forbidden, const SynthOptions& options = {});

}  // namespace spsynth
