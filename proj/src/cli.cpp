#include "spsynth/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "spsynth/bits.hpp"
#include "spsynth/ideal.hpp"
#include "spsynth/oracle.hpp"
#include "spsynth/synth.hpp"

namespace spsynth::cli {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural descriptions of forbidden-suborder classes of series-parallel orders", "spsynth"};
  app.require_subcommand(1);

  std::string obstruction_file, out_path, dot_path, term_text, doc_path;
  std::size_t max_size = 0;
  bool prune = false;

  auto* describe = app.add_subcommand("describe", "Synthesize a description and print it as JSON");
  describe->add_option("obstructions", obstruction_file, "Obstruction file, one term per line")->required();
  describe->add_option("--out", out_path, "Write the JSON document here instead of stdout");
  describe->add_option("--dot", dot_path, "Also write a Graphviz rendering");
  describe->add_flag("--prune", prune, "Drop dominated bits");

  auto* verify = app.add_subcommand("verify", "Check a synthesized description against brute-force enumeration");
  verify->add_option("obstructions", obstruction_file, "Obstruction file")->required();
  verify->add_option("--max-size", max_size, "Largest order size to compare")
      ->required()
      ->check(CLI::Range(std::size_t{0}, oracle::kMaxOracleSize));
  verify->add_flag("--prune", prune, "Drop dominated bits");

  auto* member_cmd = app.add_subcommand("member", "Test a term against the forbidden list");
  member_cmd->add_option("obstructions", obstruction_file, "Obstruction file")->required();
  member_cmd->add_option("term", term_text, "Term to test")->required();

  auto* enumerate = app.add_subcommand("enumerate", "List every SP order up to a size");
  enumerate->add_option("--max-size", max_size, "Largest size")->required();

  auto* show = app.add_subcommand("show", "Pretty-print a description document");
  show->add_option("document", doc_path, "JSON description")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (describe->parsed()) {
      const auto forbidden = read_obstruction_file(obstruction_file);
      SynthOptions options;
      options.prune_dominated = prune;
      const auto d = synthesize(forbidden, options);
      const auto doc = serialize(d);
      if (out_path.empty()) {
        out << doc;
      } else {
        write_file(out_path, doc);
      }
      if (!dot_path.empty()) write_file(dot_path, to_dot(d));
      return kExitOk;
    }
    if (verify->parsed()) {
      const auto forbidden = read_obstruction_file(obstruction_file);
      SynthOptions options;
      options.prune_dominated = prune;
      const auto d = synthesize(forbidden, options);
      const auto report = oracle::verify_equivalence(forbidden, d, max_size);
      out << report.to_json() << "\n" << report.summary() << "\n";
      return report.equal() ? kExitOk : kExitMismatch;
    }
    if (member_cmd->parsed()) {
      const auto ideal = make_ideal(read_obstruction_file(obstruction_file));
      out << (member(ideal, parse_term(term_text)) ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (enumerate->parsed()) {
      for (const auto& t : enumerate_sp(max_size)) out << t.str() << "\n";
      return kExitOk;
    }
    if (show->parsed()) {
      const auto d = deserialize(read_file(doc_path));
      const auto report = validate(d);
      out << "root: " << d.root << "\n";
      for (const auto& [key, entry] : d.entries) {
        out << "Forb(" << key << ")  rank " << rank(d, key) << (key == d.root ? "  [root]" : "") << "\n";
        for (const auto& b : entry.bits) out << "  " << (b.shape() == BitShape::Chain ? "chain     " : "antichain ") << b.str() << "\n";
      }
      for (const auto& v : report.violations) out << "invalid: " << v << "\n";
      return report.ok() ? kExitOk : kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace spsynth::cli
