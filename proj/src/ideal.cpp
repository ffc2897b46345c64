#include "spsynth/ideal.hpp"

#include <algorithm>
#include <fstream>

namespace spsynth {

Ideal Ideal::forbidding(std::vector<Term> forbidden) {
  std::sort(forbidden.begin(), forbidden.end(), TermLess{});
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());

  Ideal ideal;
  // Sorted by size, so anything that could embed in t has been seen already.
  for (const auto& t : forbidden) {
    const bool redundant = std::any_of(ideal.obstructions_.begin(), ideal.obstructions_.end(),
                                       [&](const Term& kept) { return is_suborder(kept, t); });
    if (!redundant) ideal.obstructions_.push_back(t);
  }
  for (std::size_t i = 0; i < ideal.obstructions_.size(); ++i) {
    if (i) ideal.key_ += '|';
    ideal.key_ += ideal.obstructions_[i].str();
  }
  return ideal;
}

Ideal Ideal::void_ideal() { return forbidding({Term::empty()}); }
Ideal Ideal::empty_only() { return forbidding({Term::point()}); }

bool Ideal::is_void() const { return obstructions_.size() == 1 && obstructions_.front().is_empty(); }
bool Ideal::is_empty_only() const { return obstructions_.size() == 1 && obstructions_.front().is_point(); }

bool Ideal::contains(const Term& t) const {
  return std::none_of(obstructions_.begin(), obstructions_.end(),
                      [&](const Term& obstruction) { return is_suborder(obstruction, t); });
}

Ideal make_ideal(std::vector<Term> forbidden) { return Ideal::forbidding(std::move(forbidden)); }

bool member(const Ideal& ideal, const Term& t) { return ideal.contains(t); }

Ideal intersect(const Ideal& a, const Ideal& b) {
  std::vector<Term> all(a.obstructions().begin(), a.obstructions().end());
  all.insert(all.end(), b.obstructions().begin(), b.obstructions().end());
  return make_ideal(std::move(all));
}

bool contains_ideal(const Ideal& outer, const Ideal& inner) {
  const auto inner_obs = inner.obstructions();
  return std::all_of(outer.obstructions().begin(), outer.obstructions().end(), [&](const Term& o) {
    return std::any_of(inner_obs.begin(), inner_obs.end(), [&](const Term& i) { return is_suborder(i, o); });
  });
}

bool strictly_contains_ideal(const Ideal& outer, const Ideal& inner) {
  return outer != inner && contains_ideal(outer, inner);
}

std::string ideal_key(const Ideal& ideal) { return ideal.key(); }

Ideal parse_ideal_key(std::string_view key) {
  std::vector<Term> terms;
  std::size_t start = 0;
  while (start < key.size()) {
    std::size_t bar = key.find('|', start);
    if (bar == std::string_view::npos) bar = key.size();
    try {
      terms.push_back(parse_term(key.substr(start, bar - start)));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad ideal key '") + std::string(key) + "': " + e.message(), start + e.position());
    }
    start = bar + 1;
  }
  return make_ideal(std::move(terms));
}

std::vector<Term> read_obstructions(std::istream& in) {
  std::vector<Term> terms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      terms.push_back(parse_term(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.message(), e.position());
    }
  }
  return terms;
}

std::vector<Term> read_obstruction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open obstruction file '" + path + "'");
  return read_obstructions(in);
}

}  // namespace spsynth
