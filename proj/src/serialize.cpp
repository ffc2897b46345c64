#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "spsynth/bits.hpp"

namespace spsynth {

using nlohmann::json;

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw DescriptionError(where + " must be an object");
  for (const auto& [k, _] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end()) {
      throw DescriptionError(where + " has unknown field '" + k + "'");
    }
  }
  for (const char* a : allowed) {
    if (!obj.contains(a)) throw DescriptionError(where + " is missing field '" + a + "'");
  }
}

Label read_label(const json& j) {
  if (!j.is_string()) throw DescriptionError("bit label must be a string");
  const auto s = j.get<std::string>();
  if (s == "R") return Label::self();
  // Normalize through the key parser so hand-written keys still match.
  try {
    return Label::ideal(parse_ideal_key(s).key());
  } catch (const ParseError& e) {
    throw DescriptionError(e.what());
  }
}

}  // namespace

std::string serialize(const StructuralDescription& d) {
  json entries = json::array();
  for (const auto& [key, entry] : d.entries) {
    json ideal = json::array();
    for (const auto& t : entry.ideal.obstructions()) ideal.push_back(t.str());
    json bits = json::array();
    for (const auto& b : entry.bits) {
      bits.push_back({{"shape", b.shape() == BitShape::Chain ? "chain" : "antichain"},
                      {"labels", {b.first().str(), b.second().str()}}});
    }
    entries.push_back({{"ideal", std::move(ideal)}, {"bits", std::move(bits)}});
  }
  json doc{{"root", d.root}, {"entries", std::move(entries)}};
  return doc.dump(2) + "\n";
}

StructuralDescription deserialize(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw DescriptionError(std::string("malformed JSON: ") + e.what());
  }
  require_keys(doc, {"root", "entries"}, "document");
  if (!doc["root"].is_string()) throw DescriptionError("root must be a string");
  if (!doc["entries"].is_array()) throw DescriptionError("entries must be an array");

  StructuralDescription d;
  try {
    d.root = parse_ideal_key(doc["root"].get<std::string>()).key();
  } catch (const ParseError& e) {
    throw DescriptionError(e.what());
  }

  for (const auto& e : doc["entries"]) {
    require_keys(e, {"ideal", "bits"}, "entry");
    if (!e["ideal"].is_array() || !e["bits"].is_array()) throw DescriptionError("entry fields must be arrays");
    std::vector<Term> obstructions;
    for (const auto& t : e["ideal"]) {
      if (!t.is_string()) throw DescriptionError("obstruction must be a string");
      try {
        obstructions.push_back(parse_term(t.get<std::string>()));
      } catch (const ParseError& err) {
        throw DescriptionError(err.what());
      }
    }
    Ideal ideal = make_ideal(std::move(obstructions));
    if (d.find(ideal.key())) throw DescriptionError("duplicate entry for ideal '" + ideal.key() + "'");

    std::vector<Bit> bits;
    for (const auto& b : e["bits"]) {
      require_keys(b, {"shape", "labels"}, "bit");
      if (!b["labels"].is_array() || b["labels"].size() != 2) {
        throw DescriptionError("bit must have exactly two labels");
      }
      const Label first = read_label(b["labels"][0]);
      const Label second = read_label(b["labels"][1]);
      const auto shape = b["shape"].is_string() ? b["shape"].get<std::string>() : std::string{};
      if (shape == "chain") {
        bits.push_back(Bit::chain(first, second));
      } else if (shape == "antichain") {
        bits.push_back(Bit::antichain(first, second));
      } else {
        throw DescriptionError("bit shape must be \"chain\" or \"antichain\"");
      }
    }
    d.set_entry(ideal, std::move(bits));
  }
  return d;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const StructuralDescription& d) {
  std::ostringstream out;
  out << "digraph description {\n";
  for (const auto& [key, entry] : d.entries) {
    out << "  " << dot_quote(key) << " [label=" << dot_quote("Forb(" + key + ")\\nrank " + std::to_string(rank(d, key)))
        << (key == d.root ? ", shape=doublecircle" : "") << "];\n";
  }
  for (const auto& [key, entry] : d.entries) {
    for (const auto& b : entry.bits) {
      for (const Label* l : {&b.first(), &b.second()}) {
        if (l->is_self()) continue;
        out << "  " << dot_quote(key) << " -> " << dot_quote(l->key()) << " [label=" << dot_quote(b.str()) << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace spsynth
