#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <thread>

#include "spsynth/oracle.hpp"
#include "spsynth/term.hpp"

using namespace spsynth;

namespace {

Term T(const char* text) { return parse_term(text); }

// Relation of a raw, possibly non-canonical tree, built without going
// through canonicalization.
PosetRelation raw_relation(const RawTerm& raw) {
  struct Builder {
    std::vector<std::vector<bool>> leq;
    std::size_t build(const RawTerm& r) {
      const std::size_t begin = leq.size();
      if (r.kind == Kind::Point) {
        for (auto& row : leq) row.push_back(false);
        leq.emplace_back(leq.size() + 1, false);
        leq.back().back() = true;
        return begin;
      }
      std::vector<std::pair<std::size_t, std::size_t>> spans;
      for (const auto& c : r.children) {
        const std::size_t b = build(c);
        spans.emplace_back(b, leq.size());
      }
      if (r.kind == Kind::Chain) {
        for (std::size_t i = 0; i < spans.size(); ++i)
          for (std::size_t j = i + 1; j < spans.size(); ++j)
            for (auto x = spans[i].first; x < spans[i].second; ++x)
              for (auto y = spans[j].first; y < spans[j].second; ++y) leq[x][y] = true;
      }
      return begin;
    }
  } b;
  b.build(raw);
  PosetRelation r;
  r.point_count = b.leq.size();
  r.up.assign(r.point_count, 0);
  for (std::size_t i = 0; i < r.point_count; ++i)
    for (std::size_t j = 0; j < r.point_count; ++j)
      if (b.leq[i][j]) r.up[i] |= std::uint64_t{1} << j;
  return r;
}

RawTerm random_raw(std::mt19937& rng, int budget) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int roll = pick(rng);
  if (budget <= 1 || roll < 3) return roll == 0 ? RawTerm::empty() : RawTerm::point();
  std::uniform_int_distribution<int> arity(0, 3);
  std::vector<RawTerm> children;
  const int k = arity(rng);
  for (int i = 0; i < k; ++i) children.push_back(random_raw(rng, budget / 2));
  return roll < 6 ? RawTerm::chain(std::move(children)) : RawTerm::antichain(std::move(children));
}

std::size_t raw_size(const RawTerm& r) {
  if (r.kind == Kind::Point) return 1;
  std::size_t n = 0;
  for (const auto& c : r.children) n += raw_size(c);
  return n;
}

bool canonical_shape(const Term& t) {
  if (t.size() <= 1) return t.children().empty();
  if (t.children().size() < 2) return false;
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    const Term& c = t.children()[i];
    if (c.is_empty() || c.kind() == t.kind() || !canonical_shape(c)) return false;
    if (t.is_antichain() && i > 0 && compare(t.children()[i - 1], c) > 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonicalize flattens and sorts") {
  const auto p = RawTerm::point();
  CHECK(canonicalize(RawTerm::chain({RawTerm::chain({p, p}), p})).str() == "C(*,*,*)");
  CHECK(canonicalize(RawTerm::antichain({p, RawTerm::antichain({p, p})})).str() == "A(*,*,*)");
  CHECK(canonicalize(RawTerm::antichain({RawTerm::chain({p, p}), p})).str() == "A(*,C(*,*))");
  CHECK(canonicalize(RawTerm::chain({RawTerm::empty(), p})) == Term::point());
  CHECK(canonicalize(RawTerm::chain({})) == Term::empty());
}

TEST_CASE("canonicalize is idempotent and preserves the order") {
  std::mt19937 rng(20261019);
  for (int trial = 0; trial < 400; ++trial) {
    const RawTerm raw = random_raw(rng, 12);
    if (raw_size(raw) > oracle::kMaxOracleSize) continue;
    const Term t = canonicalize(raw);
    CHECK(canonical_shape(t));
    CHECK(parse_term(t.str()) == t);
    CHECK(canonicalize(parse_raw_term(t.str())) == t);
    const auto before = raw_relation(raw);
    const auto after = to_relation(t);
    REQUIRE(before.point_count == after.point_count);
    CHECK(oracle::brute_embed(before, after));
    CHECK(oracle::brute_embed(after, before));
  }
}

TEST_CASE("parse_term reads the grammar") {
  const Term diamond = T("C(*,A(*,*),*)");
  CHECK(diamond.is_chain());
  CHECK(diamond.size() == 4);
  CHECK(diamond.children()[1].str() == "A(*,*)");
  CHECK(T("0") == Term::empty());
  CHECK(T("*") == Term::point());
  CHECK(T("C(C(*,*),*)").str() == "C(*,*,*)");
  CHECK(T(" A( C(*,*) , * ) ").str() == "A(*,C(*,*))");
}

TEST_CASE("parse_term rejects malformed input with a position") {
  CHECK_THROWS_AS(T("C(*)"), ParseError);
  CHECK_THROWS_AS(T("A()"), ParseError);
  CHECK_THROWS_AS(T("C(*,*"), ParseError);
  CHECK_THROWS_AS(T(""), ParseError);
  CHECK_THROWS_AS(T("**"), ParseError);
  CHECK_THROWS_AS(T("B(*,*)"), ParseError);
  try {
    T("C(*,x)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  try {
    T("A(*)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 0);
    CHECK(e.message().find("two children") != std::string::npos);
  }
}

TEST_CASE("print and parse round-trip on every term up to size 8") {
  for (const auto& t : enumerate_sp(8)) {
    REQUIRE(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("size") {
  CHECK(size(Term::empty()) == 0);
  CHECK(size(Term::point()) == 1);
  CHECK(size(T("C(*,A(*,*),*)")) == 4);
}

TEST_CASE("finest representations") {
  const auto chain_parts = finest_chain_rep(T("C(*,A(*,*),*)"));
  REQUIRE(chain_parts.size() == 3);
  CHECK(chain_parts[0] == Term::point());
  CHECK(chain_parts[1] == T("A(*,*)"));
  CHECK(chain_parts[2] == Term::point());
  CHECK(finest_chain_rep(T("A(*,*)")) == std::vector<Term>{T("A(*,*)")});
  CHECK(finest_chain_rep(Term::point()) == std::vector<Term>{Term::point()});
  CHECK(finest_chain_rep(Term::empty()).empty());

  CHECK(finest_antichain_rep(T("A(*,C(*,*))")) == std::vector<Term>{Term::point(), T("C(*,*)")});
  CHECK(finest_antichain_rep(T("C(*,*)")) == std::vector<Term>{T("C(*,*)")});
  CHECK(finest_antichain_rep(Term::empty()).empty());
}

TEST_CASE("chain parts are anticomponents, antichain parts are components") {
  for (const auto& t : enumerate_sp(8)) {
    for (const auto& c : t.children()) {
      if (t.is_chain()) CHECK((c.is_point() || c.is_antichain()));
      if (t.is_antichain()) CHECK((c.is_point() || c.is_chain()));
    }
  }
}

TEST_CASE("compare is the total term order") {
  CHECK(compare(Term::point(), Term::point()) == std::strong_ordering::equal);
  CHECK(compare(Term::point(), T("C(*,*)")) == std::strong_ordering::less);
  CHECK(compare(T("C(*,*)"), T("A(*,*)")) == std::strong_ordering::less);
  CHECK(compare(Term::empty(), Term::point()) == std::strong_ordering::less);
  CHECK(compare(T("C(*,A(*,*))"), T("C(A(*,*),*)")) == std::strong_ordering::less);
}

TEST_CASE("to_relation realizes lexicographic sums") {
  const auto chain = to_relation(T("C(*,*)"));
  CHECK(chain.point_count == 2);
  CHECK(chain.leq(0, 1));
  CHECK_FALSE(chain.leq(1, 0));

  const auto anti = to_relation(T("A(*,*)"));
  CHECK_FALSE(anti.leq(0, 1));
  CHECK_FALSE(anti.leq(1, 0));

  const auto d = to_relation(T("C(*,A(*,*),*)"));
  CHECK(d.point_count == 4);
  CHECK(d.leq(0, 1));
  CHECK(d.leq(0, 2));
  CHECK(d.leq(1, 3));
  CHECK(d.leq(2, 3));
  CHECK(d.leq(0, 3));
  CHECK_FALSE(d.leq(1, 2));
  CHECK_FALSE(d.leq(2, 1));
}

TEST_CASE("every materialized term is an N-free partial order") {
  for (const auto& t : enumerate_sp(7)) {
    const auto r = to_relation(t);
    REQUIRE(r.is_partial_order());
    REQUIRE(is_n_free(r));
  }
  // The N itself is not SP, so build it by hand.
  PosetRelation n;
  n.point_count = 4;  // a=0 < b=1, c=2 < b, c < d=3
  n.up = {0b0011, 0b0010, 0b1110, 0b1000};
  CHECK(n.is_partial_order());
  CHECK_FALSE(is_n_free(n));
}

TEST_CASE("is_suborder examples") {
  CHECK_FALSE(is_suborder(T("A(*,*)"), T("C(*,*,*)")));
  CHECK(is_suborder(T("C(*,*)"), T("A(C(*,*,*),*)")));
  // Frozen from brute-force embedding of the materialized relations.
  CHECK(oracle::brute_embed(T("C(*,A(*,*),*)"), T("C(*,A(*,*,*),*)")));
  CHECK(is_suborder(T("C(*,A(*,*),*)"), T("C(*,A(*,*,*),*)")));
  CHECK(is_suborder(Term::empty(), Term::empty()));
  CHECK(is_suborder(Term::empty(), T("C(*,*)")));
  CHECK_FALSE(is_suborder(Term::point(), Term::empty()));
  CHECK(is_suborder(T("A(*,*,*)"), T("A(C(*,*),C(*,*),*)")));
  CHECK_FALSE(is_suborder(T("A(C(*,*),C(*,*))"), T("A(C(*,*,*,*),*)")));
  CHECK(is_suborder(T("A(C(*,*),C(*,*))"), T("C(*,A(C(*,*),C(*,*)))")));
}

TEST_CASE("is_suborder agrees with brute force up to size 5") {
  const auto all = enumerate_sp(5);
  for (const auto& p : all)
    for (const auto& q : all) REQUIRE(is_suborder(p, q) == oracle::brute_embed(p, q));
}

TEST_CASE("is_suborder is a partial order on terms up to size 6") {
  const auto all = enumerate_sp(6);
  for (const auto& p : all) REQUIRE(is_suborder(p, p));
  for (const auto& p : all) {
    for (const auto& q : all) {
      if (!is_suborder(p, q)) continue;
      if (is_suborder(q, p)) REQUIRE(p == q);
      for (const auto& r : all) {
        if (is_suborder(q, r)) REQUIRE(is_suborder(p, r));
      }
    }
  }
}

TEST_CASE("concurrent suborder queries agree") {
  const auto all = enumerate_sp(6);
  std::vector<std::vector<char>> results(4);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < results.size(); ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < all.size(); i += 3)
        for (const auto& q : all) results[w].push_back(is_suborder(all[i], Term::chain({q, Term::point()})));
    });
  }
  for (auto& t : workers) t.join();
  std::vector<char> serial;
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (const auto& q : all) serial.push_back(is_suborder(all[i], Term::chain({q, Term::point()})));
  CHECK(results[0] == serial);
}

TEST_CASE("enumerate_sp counts") {
  CHECK(enumerate_sp(0).size() == 1);
  CHECK(enumerate_sp(1) == std::vector<Term>{Term::empty(), Term::point()});
  CHECK(enumerate_sp(3).size() == 9);
  CHECK(enumerate_sp(4).size() == 24);
  std::vector<std::size_t> profile(5, 0);
  for (const auto& t : enumerate_sp(4)) ++profile[t.size()];
  CHECK(profile == std::vector<std::size_t>{1, 1, 2, 5, 15});
}

TEST_CASE("grammar and closure enumerations agree") {
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto grammar = enumerate_sp(n);
    CHECK(grammar == enumerate_sp_by_closure(n));
    std::set<std::uint32_t> ids;
    for (const auto& t : grammar) ids.insert(t.id());
    CHECK(ids.size() == grammar.size());
    CHECK(std::is_sorted(grammar.begin(), grammar.end(), TermLess{}));
  }
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_sp(6, 100), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_sp_by_closure(6, 100), ResourceLimitError);
}
