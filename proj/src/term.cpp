#include "spsynth/term.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace spsynth {

namespace detail {

struct Node {
  Kind kind;
  std::uint32_t size;
  std::uint32_t id;
  std::vector<Term> children;
  std::string text;
};

}  // namespace detail

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : key) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

}  // namespace

/// Process-wide hash-consing table. Nodes are never freed.
class TermPool {
 public:
  static TermPool& instance() {
    static TermPool pool;
    return pool;
  }

  Term intern(Kind kind, std::vector<Term> children) {
    std::vector<std::uint32_t> key;
    key.reserve(children.size() + 1);
    key.push_back(static_cast<std::uint32_t>(kind));
    for (const auto& c : children) key.push_back(c.id());

    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return Term(it->second);

    detail::Node& node = nodes_.emplace_back();
    node.kind = kind;
    node.id = static_cast<std::uint32_t>(nodes_.size() - 1);
    node.size = kind == Kind::Point ? 1 : 0;
    for (const auto& c : children) node.size += static_cast<std::uint32_t>(c.size());
    switch (kind) {
      case Kind::Empty: node.text = "0"; break;
      case Kind::Point: node.text = "*"; break;
      case Kind::Chain:
      case Kind::Antichain: {
        node.text = kind == Kind::Chain ? "C(" : "A(";
        for (std::size_t i = 0; i < children.size(); ++i) {
          if (i) node.text += ',';
          node.text += children[i].str();
        }
        node.text += ')';
        break;
      }
    }
    node.children = std::move(children);
    index_.emplace(std::move(key), &node);
    return Term(&node);
  }

 private:
  std::mutex mutex_;
  std::deque<detail::Node> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, const detail::Node*, KeyHash> index_;
};

Term::Term() : Term(empty()) {}

Term Term::empty() {
  static const Term t = TermPool::instance().intern(Kind::Empty, {});
  return t;
}

Term Term::point() {
  static const Term t = TermPool::instance().intern(Kind::Point, {});
  return t;
}

namespace {

std::vector<Term> flatten(std::vector<Term> parts, Kind kind) {
  std::vector<Term> out;
  out.reserve(parts.size());
  for (auto& p : parts) {
    if (p.is_empty()) continue;
    if (p.kind() == kind) {
      auto c = p.children();
      out.insert(out.end(), c.begin(), c.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

Term Term::chain(std::vector<Term> parts) {
  auto flat = flatten(std::move(parts), Kind::Chain);
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat.front();
  return TermPool::instance().intern(Kind::Chain, std::move(flat));
}

Term Term::antichain(std::vector<Term> parts) {
  auto flat = flatten(std::move(parts), Kind::Antichain);
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end(), TermLess{});
  return TermPool::instance().intern(Kind::Antichain, std::move(flat));
}

Kind Term::kind() const { return node_->kind; }
std::size_t Term::size() const { return node_->size; }
std::span<const Term> Term::children() const { return node_->children; }
std::uint32_t Term::id() const { return node_->id; }
const std::string& Term::str() const { return node_->text; }

std::strong_ordering compare(const Term& a, const Term& b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  auto ca = a.children();
  auto cb = b.children();
  for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
    if (auto c = compare(ca[i], cb[i]); c != 0) return c;
  }
  return ca.size() <=> cb.size();
}

Term canonicalize(const RawTerm& raw) {
  switch (raw.kind) {
    case Kind::Empty: return Term::empty();
    case Kind::Point: return Term::point();
    case Kind::Chain:
    case Kind::Antichain: {
      std::vector<Term> parts;
      parts.reserve(raw.children.size());
      for (const auto& c : raw.children) parts.push_back(canonicalize(c));
      return raw.kind == Kind::Chain ? Term::chain(std::move(parts)) : Term::antichain(std::move(parts));
    }
  }
  return Term::empty();
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)), message_(what), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RawTerm parse() {
    RawTerm t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  RawTerm term() {
    const char c = peek();
    const std::size_t start = pos_;
    switch (c) {
      case '0': ++pos_; return RawTerm::empty();
      case '*': ++pos_; return RawTerm::point();
      case 'C':
      case 'A': {
        ++pos_;
        expect('(');
        std::vector<RawTerm> children;
        children.push_back(term());
        while (peek() == ',') {
          ++pos_;
          children.push_back(term());
        }
        expect(')');
        if (children.size() < 2) {
          throw ParseError(std::string("sum '") + c + "' needs at least two children", start);
        }
        return c == 'C' ? RawTerm::chain(std::move(children)) : RawTerm::antichain(std::move(children));
      }
      case '\0': throw ParseError("unexpected end of input", pos_);
      default: throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RawTerm parse_raw_term(std::string_view text) { return Parser(text).parse(); }

Term parse_term(std::string_view text) { return canonicalize(parse_raw_term(text)); }

std::string print_term(const Term& t) { return t.str(); }

std::size_t size(const Term& t) { return t.size(); }

std::vector<Term> finest_chain_rep(const Term& t) {
  if (t.is_empty()) return {};
  if (t.is_chain()) {
    auto c = t.children();
    return {c.begin(), c.end()};
  }
  return {t};
}

std::vector<Term> finest_antichain_rep(const Term& t) {
  if (t.is_empty()) return {};
  if (t.is_antichain()) {
    auto c = t.children();
    return {c.begin(), c.end()};
  }
  return {t};
}

bool PosetRelation::is_partial_order() const {
  if (up.size() != point_count) return false;
  for (std::size_t i = 0; i < point_count; ++i) {
    if (!leq(i, i)) return false;
    for (std::size_t j = 0; j < point_count; ++j) {
      if (i != j && leq(i, j) && leq(j, i)) return false;
      if (!leq(i, j)) continue;
      for (std::size_t k = 0; k < point_count; ++k) {
        if (leq(j, k) && !leq(i, k)) return false;
      }
    }
  }
  return true;
}

namespace {

// Fills rows [offset, offset + size(t)) of `up` and returns the point count.
std::size_t materialize(const Term& t, std::size_t offset, std::vector<std::uint64_t>& up) {
  switch (t.kind()) {
    case Kind::Empty: return 0;
    case Kind::Point: up[offset] |= std::uint64_t{1} << offset; return 1;
    case Kind::Antichain: {
      std::size_t n = 0;
      for (const auto& c : t.children()) n += materialize(c, offset + n, up);
      return n;
    }
    case Kind::Chain: {
      std::size_t n = 0;
      for (const auto& c : t.children()) {
        const std::size_t begin = offset + n;
        const std::size_t len = materialize(c, begin, up);
        // Everything already placed lies below every point of this part.
        std::uint64_t block = 0;
        for (std::size_t j = begin; j < begin + len; ++j) block |= std::uint64_t{1} << j;
        for (std::size_t i = offset; i < begin; ++i) up[i] |= block;
        n += len;
      }
      return n;
    }
  }
  return 0;
}

}  // namespace

PosetRelation to_relation(const Term& t) {
  if (t.size() > kMaxRelationPoints) {
    throw ResourceLimitError("term has " + std::to_string(t.size()) + " points, relation cap is " +
                             std::to_string(kMaxRelationPoints));
  }
  PosetRelation r;
  r.point_count = t.size();
  r.up.assign(r.point_count, 0);
  materialize(t, 0, r.up);
  return r;
}

bool is_n_free(const PosetRelation& r) {
  const std::size_t n = r.point_count;
  auto lt = [&](std::size_t i, std::size_t j) { return i != j && r.leq(i, j); };
  auto inc = [&](std::size_t i, std::size_t j) { return !r.leq(i, j) && !r.leq(j, i); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b || !lt(c, b)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == a || d == b || d == c || !lt(c, d)) continue;
          if (inc(a, c) && inc(a, d) && inc(b, d)) return false;
        }
      }
    }
  return true;
}

}  // namespace spsynth
