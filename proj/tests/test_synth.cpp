#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "spsynth/oracle.hpp"
#include "spsynth/synth.hpp"

using namespace spsynth;

namespace {

Term T(const char* text) { return parse_term(text); }

std::vector<Term> terms(std::initializer_list<const char*> texts) {
  std::vector<Term> out;
  for (const char* t : texts) out.push_back(T(t));
  return out;
}

std::set<std::string> rendered(const std::vector<CellBit>& bits) {
  std::set<std::string> out;
  for (const auto& b : bits) out.insert(b.str());
  return out;
}

// Every choice function over every splitting (including the two trivial
// ones), evaluated through cell_labels and normalized.
std::set<std::string> antichain_bits_by_brute_force(GammaAbcf g) {
  const Ideal target = gamma_ideal(g);
  auto relabel = [&](const Ideal& i) -> CellLabel {
    if (i == target) return std::nullopt;
    return i;
  };
  std::vector<std::size_t> table_sizes;
  std::size_t total_bits = 0;
  for (const auto& block : g.gamma) {
    table_sizes.push_back(std::size_t{1} << block.size());
    total_bits += table_sizes.back();
  }
  REQUIRE(total_bits < 20);
  std::set<std::string> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << total_bits); ++code) {
    g.abcf.clear();
    std::size_t shift = 0;
    for (std::size_t size : table_sizes) {
      std::vector<std::uint8_t> f(size);
      for (std::size_t m = 0; m < size; ++m) f[m] = ((code >> (shift + m)) & 1) ? 2 : 1;
      g.abcf.push_back(std::move(f));
      shift += size;
    }
    const auto [left, right] = cell_labels(g);
    if (auto b = normalize_bit(CellBit::antichain(relabel(left), relabel(right)))) out.insert(b->str());
  }
  return out;
}

}  // namespace

TEST_CASE("single chain bit sets") {
  CHECK(chain_bit_set_single(T("C(*,*)")).empty());
  CHECK(rendered(chain_bit_set_single(T("C(*,*,*)"))) == std::set<std::string>{"[C(*,*)] < [C(*,*)]"});
  CHECK(rendered(chain_bit_set_single(T("C(*,A(*,*),*)"))).count("[C(*,A(*,*))] < [C(A(*,*),*)]") == 1);
}

TEST_CASE("multi chain bit sets") {
  for (const char* p : {"C(*,*,*)", "C(*,A(*,*),*)", "C(A(*,*),A(*,*))"}) {
    const Term one[] = {T(p)};
    CHECK(rendered(chain_bit_set_multi(one)) == rendered(chain_bit_set_single(one[0])));
  }
  const auto ps = terms({"C(*,*,*)", "C(A(*,*),A(*,*))"});
  const auto bits = rendered(chain_bit_set_multi(ps));
  CHECK(bits.count("[C(*,*)|A(*,*)] < [C(*,*)]") == 1);
  CHECK(bits == std::set<std::string>{"[C(*,*)] < [C(*,*)|A(*,*)]", "[C(*,*)|A(*,*)] < [C(*,*)]"});
}

TEST_CASE("normalize drops void and empty-only labels") {
  const Ideal c2 = make_ideal({T("C(*,*)")});
  CHECK_FALSE(normalize_bit(CellBit::chain(Ideal::void_ideal(), std::nullopt)).has_value());
  CHECK_FALSE(normalize_bit(CellBit::antichain(Ideal::empty_only(), c2)).has_value());
  CHECK(normalize_bit(CellBit::chain(c2, std::nullopt)).has_value());
}

TEST_CASE("build_gamma indexes components block by block") {
  const auto g = build_gamma(terms({"A(*,*)", "A(*,C(*,*))"}));
  CHECK(g.components == terms({"*", "*", "*", "C(*,*)"}));
  CHECK(g.gamma == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});
  CHECK(g.abcf.empty());
  CHECK(gamma_ideal(g).key() == "A(*,*)");

  const auto h = build_gamma(terms({"A(*,*,*)"}));
  CHECK(h.gamma == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
}

TEST_CASE("cell labels for a fixed choice function") {
  auto g = build_gamma(terms({"A(*,*)"}));
  // Masks 0..3 over the block; entries 1/2 steer the splitting left/right.
  g.abcf = {{2, 1, 2, 1}};
  auto [left, right] = cell_labels(g);
  CHECK(left.is_empty_only());
  CHECK(right.is_empty_only());

  g.abcf = {{1, 2, 2, 2}};
  std::tie(left, right) = cell_labels(g);
  CHECK(left.is_void());

  g.abcf = {{1, 1, 1, 1}};
  std::tie(left, right) = cell_labels(g);
  CHECK(left.is_void());
  CHECK(right.key() == "A(*,*)");
}

TEST_CASE("antichain bit sets agree with brute force over all choice functions") {
  for (auto f : {terms({"A(*,*)"}), terms({"A(*,*,*)"}), terms({"A(*,C(*,*))"}), terms({"A(*,*)", "A(*,C(*,*))"}),
                 terms({"A(*,C(*,*))", "A(C(*,*),C(*,*))"}), terms({"A(*,C(*,A(*,*)))"}), terms({"A(*,*,C(*,*))"})}) {
    const auto g = build_gamma(f);
    INFO(gamma_ideal(g).key());
    CHECK(rendered(antichain_bit_set(g)) == antichain_bits_by_brute_force(g));
  }
  CHECK(rendered(antichain_bit_set(build_gamma(terms({"A(*,*,*)"})))) ==
        std::set<std::string>{"[A(*,*)] | [A(*,*)]"});
  CHECK(antichain_bit_set(build_gamma(terms({"A(*,*)"}))).empty());
}

TEST_CASE("mixed bit set intersects labels with the target") {
  const auto c = terms({"C(*,*,*)"});
  const auto a = terms({"A(*,*)"});
  CHECK(rendered(mixed_bit_set(c, a)) == std::set<std::string>{"[C(*,*)|A(*,*)] < [C(*,*)|A(*,*)]"});
  SynthOptions literal;
  literal.intersect_mixed_labels = false;
  CHECK(rendered(mixed_bit_set(c, a, literal)) != rendered(mixed_bit_set(c, a)));
}

TEST_CASE("bits_for adds the self bits") {
  CHECK(rendered(bits_for(make_ideal(terms({"C(*,*)"})))) == std::set<std::string>{"R | R"});
  CHECK(rendered(bits_for(make_ideal(terms({"A(*,*)"})))) == std::set<std::string>{"R < R"});
}

TEST_CASE("synthesize a single chain") {
  const auto d = synthesize(terms({"C(*,*)"}));
  CHECK(d.root == "C(*,*)");
  REQUIRE(d.entries.size() == 1);
  CHECK(d.at("C(*,*)").bits == std::vector<Bit>{Bit::self_antichain()});
}

TEST_CASE("synthesize a single antichain") {
  const auto d = synthesize(terms({"A(*,*)"}));
  REQUIRE(d.entries.size() == 1);
  CHECK(d.at("A(*,*)").bits == std::vector<Bit>{Bit::self_chain()});
}

TEST_CASE("synthesize rejects trivial inputs") {
  CHECK_THROWS_AS(synthesize(terms({"0"})), SynthError);
  CHECK_THROWS_AS(synthesize(terms({"*"})), SynthError);
  CHECK_THROWS_AS(synthesize(std::vector<Term>{}), SynthError);
  try {
    synthesize(terms({"*", "C(*,*)"}));
    FAIL("expected an error");
  } catch (const SynthError& e) {
    CHECK(std::string(e.what()).find("trivial") != std::string::npos);
  }
}

TEST_CASE("synthesize is deterministic and validates") {
  const auto f = terms({"C(*,A(*,*),*)", "A(*,*,*,*)"});
  const auto a = synthesize(f);
  const auto b = synthesize(f);
  CHECK(serialize(a) == serialize(b));
  CHECK(validate(a).ok());
  for (const auto& [key, entry] : a.entries) CHECK(key == entry.ideal.key());
}

TEST_CASE("gamma block cap") {
  SynthOptions tight;
  tight.max_gamma_block = 2;
  CHECK_THROWS_AS(synthesize(terms({"A(*,*,*)"}), tight), SynthError);
  CHECK_NOTHROW(synthesize(terms({"A(*,*,*)"})));
}

TEST_CASE("entry cap") {
  SynthOptions tight;
  tight.max_entries = 1;
  CHECK_THROWS_AS(synthesize(terms({"C(*,A(*,*),*)"}), tight), SynthError);
}

TEST_CASE("dominance pruning keeps the generated language") {
  SynthOptions prune;
  prune.prune_dominated = true;
  for (auto f : {terms({"C(*,A(*,*),*)", "A(*,*,*,*)"}), terms({"A(*,*,*)", "A(*,C(*,*))"}), terms({"C(*,*,*)", "A(*,*,*)"})}) {
    const auto full = synthesize(f);
    const auto pruned = synthesize(f, prune);
    CHECK(pruned.bit_count() <= full.bit_count());
    CHECK(oracle::verify_equivalence(f, pruned, 7).equal());
  }
}
