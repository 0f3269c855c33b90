#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "mclex/classifier.hpp"
#include "mclex/degeneracy.hpp"
#include "mclex/errors.hpp"
#include "mclex/finite_models.hpp"
#include "mclex/implication.hpp"
#include "mclex/matrix.hpp"
#include "mclex/poset.hpp"

namespace mclex::cli {

namespace {

using nlohmann::json;

constexpr const char* kFooter = R"(EXIT STATUS
  0  the verdict holds (implication holds, relation closed, term exists) or success
  1  the verdict fails (implication fails, relation not closed, no term)
  2  resource limit reached, usage error or unreadable input

MATRIX ARGUMENTS
  A path to a text matrix (one row per line, "1 2 2 | 1"), a JSON matrix
  ({"left": [[...]], "right": [...]}), "-" for standard input, or one of the
  built-ins @mal, @maj, @ari, @mN (N >= 3).

ENVIRONMENT
  MCLEX_CSP_NODES, MCLEX_INTERP_CAP, MCLEX_ENUM_CEILING, MCLEX_WORKERS and
  MCLEX_CACHE provide defaults for the corresponding options.)";

struct RunConfig {
  std::vector<std::string> inputs;
  std::uint64_t csp_nodes = 100'000'000;
  std::uint64_t interp_scan_cap = 50'000'000;
  std::uint64_t enum_ceiling = 10'000'000;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "text";
  std::string cache_path;

  // Per-command.
  bool regular = false;
  std::string gen_name;
  int gen_n = 0;
  std::size_t shape_n = 0, shape_m = 0, shape_k = 0;
  bool nondegenerate_only = false;
  std::string dot_path;
  std::string json_path;
  bool oracle = false;
  bool timing = false;

  EngineOptions engine() const { return {csp_nodes, workers}; }
};

std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string read_input(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  return read_all(in);
}

Matrix load_matrix(const std::string& arg) {
  if (arg == "@mal") return gen_named(NamedMatrix::Mal);
  if (arg == "@maj") return gen_named(NamedMatrix::Maj);
  if (arg == "@ari") return gen_named(NamedMatrix::Ari);
  if (arg.size() > 2 && arg.rfind("@m", 0) == 0) {
    try {
      return gen_mn(std::stoi(arg.substr(2)));
    } catch (const std::logic_error&) {
      throw Error("unknown built-in matrix '" + arg + "'");
    }
  }
  const std::string text = read_input(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix(text);
}

json matrix_json(const Matrix& m) {
  return json::parse(render_matrix(m, RenderFormat::Json));
}

// 1-based row and variable indices in every emitted certificate.
json step_json(const DerivationStep& s) {
  std::vector<std::size_t> rho;
  for (auto r : s.rho) rho.push_back(r + 1);
  return {{"rho", rho}, {"interps", s.interps}, {"premises", s.premises},
          {"conclusion", s.conclusion}};
}

json constraint_json(const TermConstraint& c, std::size_t k) {
  std::string assignment;
  for (std::size_t v = 0; v < k; ++v) assignment += ((c.assignment >> v) & 1u) ? '1' : '0';
  return {{"row", c.row + 1}, {"assignment", assignment}, {"input", c.input},
          {"output", c.output}};
}

json counterexample_json(const Counterexample& c) {
  return {{"interps", c.interps}, {"left", c.left}, {"right", c.right}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(1) << '\n'; }

int cmd_implies(const RunConfig& cfg, std::ostream& out) {
  const Matrix source = load_matrix(cfg.inputs.at(0));
  const Matrix target = load_matrix(cfg.inputs.at(1));
  VerdictCache cache;
  if (!cfg.cache_path.empty()) {
    cache.load(cfg.cache_path);
    const auto cs = canonicalize(source).matrix();
    const auto ct = canonicalize(target).matrix();
    if (auto hit = cache.lookup(cs, ct)) {
      emit(out, {{"holds", *hit}, {"cached", true}});
      return *hit ? kPositive : kNegative;
    }
  }
  const auto v = implies_lex(source, target, cfg.engine());
  json j{{"holds", v.holds}, {"source", matrix_json(source)}, {"target", matrix_json(target)}};
  if (v.holds) {
    json steps = json::array();
    for (const auto& s : v.proof) steps.push_back(step_json(s));
    j["certificate"] = {{"kind", "derivation"}, {"steps", steps}};
  } else {
    j["certificate"] = {{"kind", "closure"}, {"columns", v.closure}};
  }
  j["stats"] = {{"rounds", v.stats.rounds}, {"csp_nodes", v.stats.csp_nodes},
                {"backtracks", v.stats.backtracks}};
  if (cfg.timing) j["stats"]["wall_ms"] = v.stats.wall_ms;
  emit(out, j);
  if (!cfg.cache_path.empty()) {
    cache.store(canonicalize(source).matrix(), canonicalize(target).matrix(), v.holds);
    cache.save(cfg.cache_path);
  }
  return v.holds ? kPositive : kNegative;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Matrix m = load_matrix(cfg.inputs.at(0));
  if (cfg.regular) {
    const auto c = classify_regular(m);
    json evidence = json::object();
    if (c.witness_rows) {
      evidence["two_row_selection"] = {c.witness_rows->first + 1, c.witness_rows->second + 1};
      evidence["selection"] = matrix_json(
          select_rows(m, {c.witness_rows->first, c.witness_rows->second}));
    }
    if (c.tag == RegularTag::ImpliedByMajReg) {
      evidence["anti_trivial_pairs"] = c.pairs_checked;
      evidence["all_pairs_anti_trivial"] = true;
    }
    emit(out, {{"tag", to_string(c.tag)}, {"evidence", evidence}});
    return kPositive;
  }
  const auto v = degeneracy_class(m);
  json j{{"tag", to_string(v.tag)}};
  if (v.witness) j["witness"] = v.witness->hex();
  if (v.conflict) {
    j["conflict"] = {constraint_json(v.conflict->first, m.variables()),
                     constraint_json(v.conflict->second, m.variables())};
  }
  emit(out, j);
  return kPositive;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  Matrix m;
  if (cfg.gen_name == "mal") {
    m = gen_named(NamedMatrix::Mal);
  } else if (cfg.gen_name == "maj") {
    m = gen_named(NamedMatrix::Maj);
  } else if (cfg.gen_name == "ari") {
    m = gen_named(NamedMatrix::Ari);
  } else if (cfg.gen_name == "mn") {
    m = gen_mn(cfg.gen_n);
  } else {
    throw Error("unknown generator '" + cfg.gen_name + "' (mal, maj, ari, mn)");
  }
  if (cfg.format == "json") {
    out << render_matrix(m, RenderFormat::Json) << '\n';
  } else {
    out << render_matrix(m);
  }
  return kPositive;
}

int cmd_poset(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto ms = enumerate_canonical(cfg.shape_n, cfg.shape_m, cfg.shape_k, cfg.enum_ceiling);
  if (cfg.nondegenerate_only) {
    std::erase_if(ms, [](const CanonicalMatrix& c) { return is_degenerate(c.matrix()); });
  }
  VerdictCache cache;
  if (!cfg.cache_path.empty()) cache.load(cfg.cache_path);
  Poset p = build_poset(ms, cfg.engine(), cfg.cache_path.empty() ? nullptr : &cache);
  if (!cfg.cache_path.empty()) cache.save(cfg.cache_path);

  const std::string json_text = emit_json(p);
  const std::string dot_text = emit_dot(p, {cfg.nondegenerate_only});
  auto write = [&out](const std::string& path, const std::string& text) {
    if (path == "-") {
      out << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
  };
  if (!cfg.dot_path.empty()) write(cfg.dot_path, dot_text);
  if (!cfg.json_path.empty()) write(cfg.json_path, json_text);
  if (cfg.dot_path.empty() && cfg.json_path.empty()) out << json_text;
  err << ms.size() << " canonical matrices, " << p.classes.size() << " classes, "
      << p.hasse.size() << " Hasse edges\n";
  return kPositive;
}

int cmd_check_relation(const RunConfig& cfg, std::ostream& out) {
  const FiniteRelation r = parse_relation(read_input(cfg.inputs.at(0)));
  const Matrix m = load_matrix(cfg.inputs.at(1));
  const auto report = interp_closed(r, m, cfg.interp_scan_cap);
  json j{{"closed", report.closed}};
  if (report.counterexample) j["counterexample"] = counterexample_json(*report.counterexample);
  emit(out, j);
  return report.closed ? kPositive : kNegative;
}

int cmd_bool_term(const RunConfig& cfg, std::ostream& out) {
  const Matrix m = load_matrix(cfg.inputs.at(0));
  const auto result = solve_boolean_term(m);
  json j{{"exists", result.witness.has_value()}};
  if (result.witness) j["witness"] = result.witness->hex();
  if (result.conflict) {
    j["conflict"] = {constraint_json(result.conflict->first, m.variables()),
                     constraint_json(result.conflict->second, m.variables())};
  }
  if (cfg.oracle) {
    if (m.rows() > 3) {
      j["bool_closed_relations"] = "unchecked";
    } else {
      auto failure = find_bool_failure(m, 3, 2, cfg.interp_scan_cap);
      j["bool_closed_relations"] = !failure.has_value();
      if (failure) {
        j["failing_relation"] = render_relation(failure->relation);
        j["counterexample"] = counterexample_json(failure->counterexample);
      }
    }
  }
  emit(out, j);
  return result.witness ? kPositive : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"mclex - decide and classify matrix properties of finitely complete categories",
               "mclex"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--csp-nodes", cfg.csp_nodes, "CSP node limit per implication query")
      ->envname("MCLEX_CSP_NODES")
      ->check(CLI::PositiveNumber);
  app.add_option("--interp-cap", cfg.interp_scan_cap, "Interpretation scan limit for relations")
      ->envname("MCLEX_INTERP_CAP")
      ->check(CLI::PositiveNumber);
  app.add_option("--enum-ceiling", cfg.enum_ceiling, "Candidate limit for shape enumeration")
      ->envname("MCLEX_ENUM_CEILING")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", cfg.workers, "Worker threads (results do not depend on it)")
      ->envname("MCLEX_WORKERS")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache", cfg.cache_path, "Verdict cache file (JSON)")->envname("MCLEX_CACHE");

  auto* implies = app.add_subcommand("implies", "Decide whether SOURCE implies TARGET");
  implies->add_option("source", cfg.inputs, "Source and target matrices")->required()->expected(2);
  implies->add_flag("--timing", cfg.timing, "Include wall time in the statistics");

  auto* classify = app.add_subcommand("classify", "Degeneracy class, or regular-context class");
  classify->add_option("matrix", cfg.inputs, "Matrix")->required()->expected(1);
  classify->add_flag("--regular", cfg.regular, "Classify relative to Mal and Maj (regular context)");

  auto* gen = app.add_subcommand("gen", "Print a named matrix: mal, maj, ari, or mn N");
  gen->add_option("name", cfg.gen_name, "mal | maj | ari | mn")->required();
  gen->add_option("n", cfg.gen_n, "Row count for mn");
  gen->add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* poset = app.add_subcommand("poset", "Implication poset of matr(N, M, K)");
  poset->add_option("n", cfg.shape_n, "Rows")->required()->check(CLI::PositiveNumber);
  poset->add_option("m", cfg.shape_m, "Left columns")->required()->check(CLI::NonNegativeNumber);
  poset->add_option("k", cfg.shape_k, "Variables")->required()->check(CLI::PositiveNumber);
  poset->add_flag("--nondegenerate-only", cfg.nondegenerate_only, "Drop degenerate matrices");
  poset->add_option("--dot", cfg.dot_path, "Write the Hasse diagram as DOT ('-' for stdout)");
  poset->add_option("--json", cfg.json_path, "Write the poset as JSON ('-' for stdout, the default)");

  auto* check = app.add_subcommand("check-relation", "Is RELATION strictly closed under MATRIX");
  check->add_option("files", cfg.inputs, "Relation file and matrix")->required()->expected(2);

  auto* bool_term = app.add_subcommand("bool-term", "Boolean term witness for a matrix");
  bool_term->add_option("matrix", cfg.inputs, "Matrix")->required()->expected(1);
  bool_term->add_flag("--oracle", cfg.oracle, "Cross-check against Boolean relations (n <= 3)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "mclex: " << e.what() << "\n\n" << app.help();
    return kUnknown;
  }

  try {
    if (*implies) return cmd_implies(cfg, out);
    if (*classify) return cmd_classify(cfg, out);
    if (*gen) return cmd_gen(cfg, out);
    if (*poset) return cmd_poset(cfg, out, err);
    if (*check) return cmd_check_relation(cfg, out);
    if (*bool_term) return cmd_bool_term(cfg, out);
  } catch (const ResourceLimit& e) {
    emit(out, {{"error", "resource-limit"}, {"message", e.what()}});
    err << "mclex: resource limit: " << e.what() << '\n';
    return kUnknown;
  } catch (const std::exception& e) {
    err << "mclex: " << e.what() << '\n';
    return kUnknown;
  }
  return kUnknown;
}

}  // namespace mclex::cli
