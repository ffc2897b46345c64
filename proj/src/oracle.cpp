#include "spsynth/oracle.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "spsynth/closure.hpp"

namespace spsynth::oracle {

namespace {

void guard(std::size_t size) {
  if (size > kMaxOracleSize) {
    throw ResourceLimitError("oracle is limited to orders of size " + std::to_string(kMaxOracleSize));
  }
}

struct Search {
  const PosetRelation& p;
  const PosetRelation& q;
  std::vector<std::size_t> image;
  std::uint64_t used = 0;

  bool extend(std::size_t i) {
    if (i == p.point_count) return true;
    for (std::size_t x = 0; x < q.point_count; ++x) {
      if (used >> x & 1u) continue;
      bool consistent = true;
      for (std::size_t j = 0; j < i && consistent; ++j) {
        consistent = p.leq(j, i) == q.leq(image[j], x) && p.leq(i, j) == q.leq(x, image[j]);
      }
      if (!consistent) continue;
      image[i] = x;
      used |= std::uint64_t{1} << x;
      if (extend(i + 1)) return true;
      used &= ~(std::uint64_t{1} << x);
    }
    return false;
  }
};

}  // namespace

bool brute_embed(const PosetRelation& p, const PosetRelation& q) {
  guard(p.point_count);
  guard(q.point_count);
  if (p.point_count > q.point_count) return false;
  Search s{p, q, std::vector<std::size_t>(p.point_count), 0};
  return s.extend(0);
}

bool brute_embed(const Term& p, const Term& q) {
  guard(p.size());
  guard(q.size());
  return brute_embed(to_relation(p), to_relation(q));
}

std::vector<Term> forb_upto(std::span<const Term> forbidden, std::size_t n) {
  guard(n);
  std::vector<PosetRelation> obstructions;
  for (const auto& f : forbidden) {
    guard(f.size());
    obstructions.push_back(to_relation(f));
  }
  std::vector<Term> out;
  for (const auto& t : enumerate_sp(n)) {
    const auto r = to_relation(t);
    const bool free = std::none_of(obstructions.begin(), obstructions.end(),
                                   [&](const PosetRelation& o) { return brute_embed(o, r); });
    if (free) out.push_back(t);
  }
  return out;
}

std::string EquivalenceReport::summary() const {
  std::ostringstream out;
  out << (equal() ? "EQUAL" : "MISMATCH") << " up to size " << bound << ": generated " << generated << ", expected "
      << expected << ", missing " << missing.size() << ", extra " << extra.size();
  return out.str();
}

std::string EquivalenceReport::to_json() const {
  nlohmann::json j;
  j["equal"] = equal();
  j["bound"] = bound;
  j["generated"] = generated;
  j["expected"] = expected;
  j["missing"] = nlohmann::json::array();
  j["extra"] = nlohmann::json::array();
  for (const auto& t : missing) j["missing"].push_back(t.str());
  for (const auto& t : extra) j["extra"].push_back(t.str());
  return j.dump();
}

EquivalenceReport verify_equivalence(std::span<const Term> forbidden, const StructuralDescription& d, std::size_t n) {
  guard(n);
  const auto expected = forb_upto(forbidden, n);
  const auto generated = generate_upto(d, d.root, n);

  EquivalenceReport report;
  report.bound = n;
  report.generated = generated.terms.size();
  report.expected = expected.size();
  std::set_difference(expected.begin(), expected.end(), generated.terms.begin(), generated.terms.end(),
                      std::back_inserter(report.missing), TermLess{});
  std::set_difference(generated.terms.begin(), generated.terms.end(), expected.begin(), expected.end(),
                      std::back_inserter(report.extra), TermLess{});
  return report;
}

namespace {

bool all_chains(const PosetRelation& r, bool downward) {
  for (std::size_t x = 0; x < r.point_count; ++x) {
    for (std::size_t a = 0; a < r.point_count; ++a) {
      const bool a_in = downward ? r.leq(a, x) : r.leq(x, a);
      if (!a_in) continue;
      for (std::size_t b = a + 1; b < r.point_count; ++b) {
        const bool b_in = downward ? r.leq(b, x) : r.leq(x, b);
        if (b_in && !r.leq(a, b) && !r.leq(b, a)) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_forest(const PosetRelation& r) { return all_chains(r, true); }
bool is_upside_down_forest(const PosetRelation& r) { return all_chains(r, false); }

bool diamond_free_shape(const Term& t) {
  for (const auto& component : finest_antichain_rep(t)) {
    const auto parts = finest_chain_rep(component);
    bool fits = false;
    for (std::size_t cut = 0; cut <= parts.size() && !fits; ++cut) {
      const Term bottom = Term::chain({parts.begin(), parts.begin() + cut});
      const Term top = Term::chain({parts.begin() + cut, parts.end()});
      fits = is_upside_down_forest(to_relation(bottom)) && is_forest(to_relation(top));
    }
    if (!fits) return false;
  }
  return true;
}

Term diamond() { return parse_term("C(*,A(*,*),*)"); }

}  // namespace spsynth::oracle
