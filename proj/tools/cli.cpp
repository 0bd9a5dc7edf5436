#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "nnn/advise.hpp"
#include "nnn/coverage.hpp"
#include "nnn/diagnostic.hpp"
#include "nnn/export.hpp"
#include "nnn/inputschema.hpp"
#include "nnn/store.hpp"
#include "nnn/taskgraph.hpp"
#include "nnn/validate.hpp"
#include "nnn/xmlio.hpp"

namespace nnn::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Raised for invocation problems that map to exit code 2.
struct UsageError {
  std::string message;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool color = false;

  void diagnostics(const std::vector<Diagnostic>& ds) const {
    if (!ds.empty()) err << render_text(ds, color);
  }
};

bool want_color(const Terminal& term) {
  const char* env = std::getenv("NNN_COLOR");
  const std::string mode = env != nullptr ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return term.stderr_is_tty;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read '" + path + "'"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::vector<Diagnostic> errors_only(const std::vector<Diagnostic>& ds) {
  std::vector<Diagnostic> out;
  std::copy_if(ds.begin(), ds.end(), std::back_inserter(out),
               [](const Diagnostic& d) { return d.severity == Severity::error; });
  return out;
}

/// Lenient parse plus structural checks; prints errors and returns nullopt
/// when the document is not usable.
std::optional<GuidelineDocument> load(const Context& ctx, const std::string& file) {
  auto parsed = parse_document(read_file(file), ParseMode::lenient);
  std::vector<Diagnostic> ds = errors_only(parsed.diagnostics);
  if (parsed.document) {
    auto structure = validate_structure(*parsed.document);
    auto errs = errors_only(structure.diagnostics());
    ds.insert(ds.end(), errs.begin(), errs.end());
  }
  if (!parsed.document || !ds.empty()) {
    sort_diagnostics(ds);
    ctx.diagnostics(ds);
    return std::nullopt;
  }
  return std::move(parsed.document);
}

json blocks_json(const std::vector<BuildingBlock>& bs) {
  json arr = json::array();
  for (auto b : bs) arr.push_back(std::string(to_string(b)));
  return arr;
}

std::string pad(std::string s, std::size_t width) {
  const std::size_t len = utf8_length(s);
  if (len < width) s.append(width - len, ' ');
  return s;
}

// -- commands -----------------------------------------------------------------

int cmd_validate(const Context& ctx, const std::string& file, bool strict, bool as_json, bool refs_warn) {
  auto parsed = parse_document(read_file(file), strict ? ParseMode::strict : ParseMode::lenient);
  std::vector<Diagnostic> ds = parsed.diagnostics;
  if (parsed.document) {
    auto structure = validate_structure(*parsed.document);
    ds.insert(ds.end(), structure.diagnostics().begin(), structure.diagnostics().end());
    if (!structure.has_errors()) {
      auto sem = validate_semantics(*parsed.document, SemanticOptions{refs_warn});
      ds.insert(ds.end(), sem.diagnostics().begin(), sem.diagnostics().end());
    }
  }
  sort_diagnostics(ds);
  if (as_json) {
    ctx.out << render_json(ds) << '\n';
  } else {
    ctx.diagnostics(ds);
    const ValidationReport r(ds);
    ctx.err << file << ": " << r.error_count() << " error(s), " << r.warning_count() << " warning(s)\n";
  }
  return has_errors(ds) ? failed : ok;
}

int cmd_graph(const Context& ctx, const std::string& file, bool dot) {
  auto doc = load(ctx, file);
  if (!doc) return failed;
  TaskGraph g;
  try {
    g = compile_graph(doc->body.tasks);
  } catch (const DiagnosticError& e) {
    ctx.diagnostics({e.diagnostic()});
    return failed;
  }
  if (dot) {
    ctx.out << to_dot(g);
    return ok;
  }
  ctx.out << "order:\n";
  for (const auto& id : topological_order(g)) ctx.out << "  " << id << "  " << g.text(id) << '\n';
  ctx.out << "edges:\n";
  for (const auto& [a, b] : g.edges()) ctx.out << "  " << a << " -> " << b << '\n';
  return ok;
}

int cmd_advise(const Context& ctx, const std::string& file, bool as_json) {
  auto doc = load(ctx, file);
  if (!doc) return failed;
  const auto entries = advise_order(*doc);
  std::map<std::string, std::string> texts;
  for (const auto* t : all_atomic_tasks(*doc)) texts.emplace(t->id, t->text);
  if (as_json) {
    json arr = json::array();
    for (const auto& e : entries) {
      arr.push_back({{"rank", e.rank},
                     {"id", e.task_id},
                     {"mandatory", e.mandatory},
                     {"score", e.effective_score ? json(e.effective_score->value) : json(nullptr)},
                     {"text", texts[e.task_id]}});
    }
    ctx.out << arr.dump(2) << '\n';
    return ok;
  }
  ctx.out << "rank  id      mandatory  score  task\n";
  for (const auto& e : entries) {
    ctx.out << pad(std::to_string(e.rank), 6) << pad(e.task_id, 8) << pad(e.mandatory ? "yes" : "no", 11)
            << pad(e.effective_score ? std::to_string(e.effective_score->value) : "-", 7) << texts[e.task_id]
            << '\n';
  }
  return ok;
}

int cmd_coverage(const Context& ctx, const std::string& file, bool as_json) {
  auto doc = load(ctx, file);
  if (!doc) return failed;
  const auto blocks = detect_blocks(*doc);
  if (as_json) {
    json arr = json::array();
    for (const auto& [b, paths] : blocks) {
      arr.push_back({{"block", std::string(to_string(b))},
                     {"name", std::string(display_name(b))},
                     {"present", !paths.empty()},
                     {"paths", paths}});
    }
    ctx.out << arr.dump(2) << '\n';
    return ok;
  }
  for (const auto& [b, paths] : blocks) {
    ctx.out << pad(std::string(to_string(b)), 5) << pad(std::string(display_name(b)), 36)
            << (paths.empty() ? "✗" : "✓");
    if (!paths.empty()) {
      ctx.out << "  " << paths.front();
      if (paths.size() > 1) ctx.out << " (+" << paths.size() - 1 << " more)";
    }
    ctx.out << '\n';
  }
  return ok;
}

int cmd_compare(const Context& ctx, const std::string& file, bool as_json) {
  auto doc = load(ctx, file);
  if (!doc) return failed;
  const auto report = compare_report(*doc);
  if (as_json) {
    json j = json::object();
    for (const auto& [s, p] : report) {
      j[std::string(to_string(s))] = {{"expressible", blocks_json(p.expressible)},
                                      {"via_workaround", blocks_json(p.via_workaround)},
                                      {"lost", blocks_json(p.lost)}};
    }
    ctx.out << j.dump(2) << '\n';
    return ok;
  }
  auto list = [](const std::vector<BuildingBlock>& bs) {
    std::string s;
    for (auto b : bs) s += (s.empty() ? "" : " ") + std::string(to_string(b));
    return s.empty() ? std::string("-") : s;
  };
  for (const auto& [s, p] : report) {
    ctx.out << to_string(s) << ":\n";
    ctx.out << "  expressible:    " << list(p.expressible) << '\n';
    ctx.out << "  via workaround: " << list(p.via_workaround) << '\n';
    ctx.out << "  lost:           " << list(p.lost) << '\n';
  }
  return ok;
}

int cmd_export(const Context& ctx, const std::string& file, const std::string& format, const std::string& dir) {
  const auto standard = parse_standard(format);
  if (!standard) throw UsageError{"unknown format '" + format + "' (arden, asbru, glif)"};
  auto doc = load(ctx, file);
  if (!doc) return failed;
  ExportBundle bundle;
  try {
    bundle = export_document(*doc, *standard);
  } catch (const DiagnosticError& e) {
    ctx.diagnostics({e.diagnostic()});
    return failed;
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError{"cannot create '" + dir + "': " + ec.message()};
  auto write = [&](const std::string& name, const std::string& content) {
    const fs::path p = fs::path(dir) / name;
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    o << content;
    if (!o) throw UsageError{"cannot write '" + p.string() + "'"};
    ctx.out << p.string() << '\n';
  };
  for (const auto& a : bundle.artifacts) write(a.filename, a.content);
  write("ledger.json", ledger_json(bundle.ledger));
  ctx.diagnostics(bundle.diagnostics);
  return ok;
}

int cmd_check_record(const Context& ctx, const std::string& file, const std::optional<std::string>& task,
                     const std::optional<std::string>& outcome, const std::optional<std::string>& documentation,
                     const std::string& label, const std::string& record) {
  auto doc = load(ctx, file);
  if (!doc) return failed;
  const std::vector<InputSpec>* inputs = nullptr;
  std::string owner;
  if (task) {
    const auto* t = find_task(*doc, *task);
    if (t != nullptr) inputs = &t->inputs;
    owner = "task '" + *task + "'";
  } else if (outcome) {
    for (const auto& o : doc->body.outcomes.items) {
      if (o.id == *outcome) {
        inputs = &o.inputs;
        break;
      }
    }
    owner = "outcome '" + *outcome + "'";
  } else {
    for (const auto& d : doc->body.documentations.items) {
      if (d.id == *documentation) {
        inputs = &d.inputs;
        break;
      }
    }
    owner = "documentation '" + *documentation + "'";
  }
  if (inputs == nullptr) throw UsageError{"no " + owner + " in " + file};
  auto it = std::find_if(inputs->begin(), inputs->end(), [&](const InputSpec& in) { return in.label == label; });
  if (it == inputs->end()) throw UsageError{owner + " has no input labelled '" + label + "'"};
  const PatternNode* pattern = it->pattern();
  if (pattern == nullptr) throw UsageError{"input '" + label + "' uses an unsupported schema and cannot be checked"};

  const std::string text = !record.empty() && record.front() == '<' ? record : read_file(record);
  auto xml = parse_xml(text);
  if (!xml.root) {
    ctx.diagnostics({make_diagnostic(codes::xml_malformed, "/",
                                     "record, line " + std::to_string(xml.error->line) + ": " + xml.error->message)});
    return failed;
  }
  const auto report = validate_record(*pattern, *xml.root);
  if (report.empty()) {
    ctx.out << "record matches input '" << label << "'\n";
    return ok;
  }
  ctx.diagnostics(report.diagnostics());
  return failed;
}

void print_entries(const Context& ctx, const std::vector<RepoEntry>& entries, bool as_json) {
  if (as_json) {
    json arr = json::array();
    for (const auto& e : entries) {
      json blocks = json::array();
      for (auto b : e.blocks) blocks.push_back(std::string(to_string(b)));
      arr.push_back({{"path", e.path.string()},
                     {"title", e.title},
                     {"version", e.version},
                     {"status", std::string(to_string(e.status))},
                     {"nic_labels", e.nic_labels},
                     {"noc_labels", e.noc_labels},
                     {"blocks", blocks}});
    }
    ctx.out << arr.dump(2) << '\n';
    return;
  }
  for (const auto& e : entries) {
    ctx.out << pad(e.title, 24) << ' ' << pad(e.version, 8) << ' ' << pad(std::string(to_string(e.status)), 13)
            << ' ' << e.path.string() << '\n';
  }
}

IndexResult index_dir(const Context& ctx, const std::string& dir, bool no_cache) {
  try {
    auto r = build_index(dir, IndexOptions{!no_cache});
    ctx.diagnostics(r.diagnostics);
    return r;
  } catch (const DiagnosticError& e) {
    throw UsageError{e.diagnostic().message};
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Terminal term) {
  Context ctx{out, err, want_color(term)};

  CLI::App app{"Validate, analyse and export NNN nursing guideline documents", "nnn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nnn 0.1.0");

  std::string file;
  std::string dir;
  bool strict = false;
  bool as_json = false;
  bool refs_warn = false;
  bool dot = false;
  bool no_cache = false;
  std::string format;
  std::string out_dir;
  std::optional<std::string> task, outcome, documentation;
  std::string label;
  std::string record;
  std::optional<std::string> q_title, q_label, q_block;

  auto file_arg = [&](CLI::App* sub) { sub->add_option("FILE", file, "guideline document (.nnn.xml)")->required(); };
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "machine-readable output"); };

  auto* validate = app.add_subcommand("validate", "check a document and report diagnostics");
  file_arg(validate);
  validate->add_flag("--strict", strict, "treat known grammar deviations as errors");
  json_flag(validate);
  validate->add_flag("--refs-warn", refs_warn, "report dangling custom references as warnings");

  auto* graph = app.add_subcommand("graph", "task precedence graph");
  file_arg(graph);
  graph->add_flag("--dot", dot, "Graphviz output");

  auto* advise = app.add_subcommand("advise", "decision-support order of tasks");
  file_arg(advise);
  json_flag(advise);

  auto* coverage = app.add_subcommand("coverage", "building blocks realized by the document");
  file_arg(coverage);
  json_flag(coverage);

  auto* compare = app.add_subcommand("compare", "what Arden, Asbru and GLIF can express of the document");
  file_arg(compare);
  json_flag(compare);

  auto* exp = app.add_subcommand("export", "write an Arden, Asbru or GLIF skeleton plus ledger.json");
  file_arg(exp);
  exp->add_option("--format", format, "arden | asbru | glif")->required();
  exp->add_option("--out", out_dir, "output directory")->required();

  auto* check = app.add_subcommand("check-record", "validate a documentation record against an input schema");
  file_arg(check);
  auto* o_task = check->add_option("--task", task, "task id");
  auto* o_outcome = check->add_option("--outcome", outcome, "outcome id");
  auto* o_doc = check->add_option("--documentation", documentation, "documentation id");
  o_task->excludes(o_outcome)->excludes(o_doc);
  o_outcome->excludes(o_doc);
  check->add_option("--input", label, "input label")->required();
  check->add_option("RECORD", record, "record file, or inline XML starting with '<'")->required();

  auto* list = app.add_subcommand("list", "index the *.nnn.xml files of a directory");
  list->add_option("DIR", dir, "repository directory")->required();
  json_flag(list);
  list->add_flag("--no-cache", no_cache, "ignore and do not write " + std::string(kIndexCacheFile));

  auto* findc = app.add_subcommand("find", "search a directory of documents");
  findc->add_option("DIR", dir, "repository directory")->required();
  findc->add_option("--title", q_title, "title (case-insensitive)");
  findc->add_option("--label", q_label, "NIC or NOC label");
  findc->add_option("--block", q_block, "building block, e.g. B5");
  json_flag(findc);
  findc->add_flag("--no-cache", no_cache, "ignore and do not write " + std::string(kIndexCacheFile));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "nnn: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << "run 'nnn --help' for usage\n";
    return usage;
  }

  try {
    if (validate->parsed()) return cmd_validate(ctx, file, strict, as_json, refs_warn);
    if (graph->parsed()) return cmd_graph(ctx, file, dot);
    if (advise->parsed()) return cmd_advise(ctx, file, as_json);
    if (coverage->parsed()) return cmd_coverage(ctx, file, as_json);
    if (compare->parsed()) return cmd_compare(ctx, file, as_json);
    if (exp->parsed()) return cmd_export(ctx, file, format, out_dir);
    if (check->parsed()) {
      if (!task && !outcome && !documentation) {
        throw UsageError{"check-record needs one of --task, --outcome, --documentation"};
      }
      return cmd_check_record(ctx, file, task, outcome, documentation, label, record);
    }
    if (list->parsed()) {
      const auto r = index_dir(ctx, dir, no_cache);
      print_entries(ctx, r.index.entries, as_json);
      return has_errors(r.diagnostics) ? failed : ok;
    }
    if (findc->parsed()) {
      if (!q_title && !q_label && !q_block) throw UsageError{"find needs --title, --label or --block"};
      Query q{q_title, q_label, std::nullopt};
      if (q_block) {
        q.block = parse_block(*q_block);
        if (!q.block) throw UsageError{"unknown building block '" + *q_block + "' (B1..B11)"};
      }
      const auto r = index_dir(ctx, dir, no_cache);
      print_entries(ctx, nnn::find(r.index, q), as_json);
      return has_errors(r.diagnostics) ? failed : ok;
    }
  } catch (const UsageError& e) {
    err << "nnn: " << e.message << '\n';
    return usage;
  }
  return usage;
}

}  // namespace nnn::cli
