#include "spsynth/bits.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace spsynth {

std::string Bit::str() const {
  const char* op = shape_ == BitShape::Chain ? " < " : " | ";
  return first_.str() + op + second_.str();
}

bool is_leaf_key(const std::string& key) { return key == "0" || key == "*"; }

const DescriptionEntry* StructuralDescription::find(const std::string& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

const DescriptionEntry& StructuralDescription::at(const std::string& key) const {
  if (const auto* e = find(key)) return *e;
  throw DescriptionError("no entry for ideal '" + key + "'");
}

void StructuralDescription::set_entry(const Ideal& ideal, std::vector<Bit> bits) {
  std::sort(bits.begin(), bits.end());
  bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
  entries[ideal.key()] = DescriptionEntry{ideal, std::move(bits)};
}

std::optional<Ideal> StructuralDescription::resolve(const std::string& key) const {
  if (const auto* e = find(key)) return e->ideal;
  if (key == "0") return Ideal::void_ideal();
  if (key == "*") return Ideal::empty_only();
  return std::nullopt;
}

std::size_t StructuralDescription::bit_count() const {
  std::size_t n = 0;
  for (const auto& [_, e] : entries) n += e.bits.size();
  return n;
}

namespace {

std::vector<std::string> referenced_keys(const DescriptionEntry& e) {
  std::vector<std::string> keys;
  for (const auto& b : e.bits)
    for (const Label* l : {&b.first(), &b.second()})
      if (!l->is_self()) keys.push_back(l->key());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace

std::size_t rank(const StructuralDescription& d, const std::string& key) {
  std::map<std::string, std::size_t> done;
  std::set<std::string> active;
  std::function<std::size_t(const std::string&)> visit = [&](const std::string& k) -> std::size_t {
    if (auto it = done.find(k); it != done.end()) return it->second;
    const auto* entry = d.find(k);
    if (!entry) {
      if (is_leaf_key(k)) return 0;
      throw DescriptionError("no entry for ideal '" + k + "'");
    }
    if (!active.insert(k).second) throw DescriptionError("label cycle through '" + k + "'");
    std::size_t r = 0;
    if (!entry->bits.empty()) {
      r = 1;
      for (const auto& ref : referenced_keys(*entry)) r = std::max(r, visit(ref) + 1);
    }
    active.erase(k);
    done.emplace(k, r);
    return r;
  };
  return visit(key);
}

ValidationReport validate(const StructuralDescription& d) {
  ValidationReport report;
  auto& v = report.violations;

  if (!d.resolve(d.root)) v.push_back("root '" + d.root + "' does not resolve");

  for (const auto& [key, entry] : d.entries) {
    if (entry.ideal.key() != key) v.push_back("entry '" + key + "' holds ideal '" + entry.ideal.key() + "'");
    for (const auto& ref : referenced_keys(entry)) {
      auto target = d.resolve(ref);
      if (!target) {
        v.push_back("entry '" + key + "' references missing ideal '" + ref + "'");
        continue;
      }
      if (!strictly_contains_ideal(entry.ideal, *target)) {
        v.push_back("entry '" + key + "' label '" + ref + "' is not strictly contained in the entry ideal");
      }
    }
  }

  // Cycle detection over resolvable entry references.
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> marks;
  std::function<void(const std::string&)> dfs = [&](const std::string& k) {
    marks[k] = Mark::Active;
    for (const auto& ref : referenced_keys(d.entries.at(k))) {
      if (!d.find(ref)) continue;
      const Mark m = marks[ref];
      if (m == Mark::Active) {
        v.push_back("label cycle through '" + ref + "'");
      } else if (m == Mark::None) {
        dfs(ref);
      }
    }
    marks[k] = Mark::Done;
  };
  for (const auto& [key, _] : d.entries)
    if (marks[key] == Mark::None) dfs(key);

  return report;
}

}  // namespace spsynth
