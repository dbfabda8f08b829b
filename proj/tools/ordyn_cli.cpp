#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ordyn/corpus.hpp"
#include "ordyn/io.hpp"
#include "ordyn/spectra.hpp"
#include "ordyn/sweep.hpp"

using namespace ordyn;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitTooLarge = 3;
constexpr std::size_t kMaxReproducers = 5;

// A path, or "@name" for a bundled example.
std::string load_input(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    const CorpusEntry* e = find_example(arg.substr(1));
    if (!e) throw Error("unknown example '" + arg.substr(1) + "' (try `example`)");
    return e->payload;
  }
  return read_file(arg);
}

void emit(const std::string& dir, const std::string& file, const std::string& content) {
  if (dir.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(dir);
  write_file_atomic((fs::path(dir) / file).string(), content);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_analyze(const std::string& input, const std::string& out, bool dot) {
  const SystemInput s = parse_system(load_input(input));
  const Analysis a = analyze(s.system);
  const Json report = analysis_to_json(s, a);
  emit(out, "report.json", report.dump(2) + "\n");
  if (dot) {
    const std::string dir = out.empty() ? "." : out;
    const auto& labels = s.system.labels();
    std::vector<std::string> att_ids, arp_ids;
    for (PointSet x : a.att.sets) att_ids.push_back(format_set(x, labels));
    for (Elem e = 0; e < a.arp.lattice.size(); ++e) arp_ids.push_back(a.arp.lattice.label(e).format(labels));
    const SpectrumPoset spec = prime_ideals(a.att.lattice);
    emit(dir, "att.dot", dot_lattice(a.att.lattice, att_ids, "Att"));
    emit(dir, "arpair.dot", dot_lattice(a.arp.lattice, arp_ids, "ARpair"));
    emit(dir, "rc.dot", dot_components(a.rc, labels, "RC"));
    emit(dir, "sc.dot", dot_components(a.sc, labels, "SC"));
    emit(dir, "spectrum_att.dot", dot_spectrum(spec, att_ids, "Sigma Att"));
  }
  return 0;
}

int cmd_spectrum(const std::string& input, const std::string& out, bool dot) {
  const LatticeInput l = parse_lattice(load_input(input));
  const SpectrumPoset spec = prime_ideals(l.lattice);
  Json j = spectrum_to_json(l, spec);
  if (l.x) j["compactification"] = compactification_to_json(l, compactify_lattice(l.lattice, l.nbhds, *l.x, l.orbit));
  emit(out, "spectrum.json", j.dump(2) + "\n");
  if (dot) {
    const std::string dir = out.empty() ? "." : out;
    emit(dir, "lattice.dot", dot_lattice(l.lattice, l.ids, l.name.empty() ? "L" : l.name));
    emit(dir, "spectrum.dot", dot_spectrum(spec, l.ids, "Sigma " + (l.name.empty() ? "L" : l.name)));
  }
  return 0;
}

int cmd_morse(const std::string& input, const std::string& which) {
  const SystemInput s = parse_system(load_input(input));
  const Analysis a = analyze(s.system);
  const auto& labels = s.system.labels();
  Sublattice sub;
  if (which == "all") {
    sub = full_sublattice(a.att.lattice);
  } else {
    std::vector<Elem> gens;
    for (const auto& tok : split(which, ',')) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size() || v >= a.att.sets.size())
        throw SchemaError("--sublattice", "expected attractor indices below " +
                                              std::to_string(a.att.sets.size()) + ", got '" + tok + "'");
      gens.push_back(static_cast<Elem>(v));
    }
    sub = generate_sublattice(a.att.lattice, gens);
  }
  const MorseRepresentation m = morse_representation(a, sub);
  Json j;
  Json elems = Json::array();
  for (Elem e : sub.elements) elems.push_back(format_set(a.att.sets[e], labels));
  j["sublattice"] = elems;
  Json sets = Json::array();
  for (std::size_t i = 0; i < m.morse_sets.size(); ++i)
    sets.push_back({{"attractor", format_set(a.att.sets[m.join_irreducibles[i]], labels)},
                    {"predecessor", format_set(a.att.sets[m.predecessors[i]], labels)},
                    {"morse_set", format_set(m.morse_sets[i], labels)}});
  j["morse_sets"] = sets;
  Json hasse = Json::array();
  for (auto [p, q] : m.order.hasse()) hasse.push_back({p, q});
  j["hasse"] = hasse;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& input, const std::string& suites, bool oracle, const std::string& out) {
  const SystemInput s = parse_system(load_input(input));
  const Analysis a = analyze(s.system);
  std::vector<std::string> names = split(suites, ',');
  if (oracle) names.push_back("oracle");
  Json j;
  j["system"] = system_to_json(s);
  j["reports"] = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    const Report r = run_suite(a, name);
    ok = ok && r.ok();
    j["reports"].push_back(report_to_json(r));
    std::cerr << name << ": " << (r.ok() ? "ok" : "FAILED") << " (passed/failed/skipped "
              << r.tally().str() << ")\n";
    for (const auto& c : r.checks)
      if (c.applicable && !c.passed) std::cerr << "  failed: " << c.name << ": " << c.witness << "\n";
    for (const auto& note : r.notes) std::cerr << "  note: " << note << "\n";
  }
  j["ok"] = ok;
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_file_atomic(out, j.dump(2) + "\n");
  return ok ? 0 : kExitFailed;
}

int cmd_sweep(const SweepOptions& o, const std::string& out, bool serial) {
  const auto rows = serial ? sweep_serial(o) : sweep(o);
  write_file_atomic(out, sweep_csv(rows));
  std::size_t failed = 0, reproducers = 0;
  for (const auto& r : rows) {
    if (r.failures.empty()) continue;
    ++failed;
    if (reproducers >= kMaxReproducers) continue;
    const std::string first = r.failures.front();
    const DynSystem small = shrink(r.system, [&](const DynSystem& d) {
      const SweepRow again = sweep_one(d, r.name, r.topology_id);
      return std::find(again.failures.begin(), again.failures.end(), first) != again.failures.end();
    });
    SystemInput repro{r.name + "-min", small, std::nullopt};
    Json j = system_to_json(repro);
    j["failure"] = first;
    write_file_atomic(out + ".repro-" + std::to_string(reproducers++) + ".json", j.dump(2) + "\n");
  }
  std::cerr << rows.size() << " systems, " << failed << " with failures\n";
  return failed == 0 ? 0 : kExitFailed;
}

int cmd_example(const std::string& name, bool run) {
  if (name.empty()) {
    for (const auto& e : corpus())
      std::cout << e.name << "\t" << (e.kind == CorpusEntry::Kind::System ? "system " : "lattice") << "\t"
                << e.summary << "\n";
    return 0;
  }
  const CorpusEntry* e = find_example(name);
  if (!e) throw SchemaError("<name>", "unknown example '" + name + "'");
  if (!run) {
    std::cout << e->payload << "\n";
    return 0;
  }
  const Json output = corpus_output(*e);
  std::cout << output.dump(2) << "\n";
  if (!e->expected.empty()) {
    const std::string m = json_mismatch(parse_json(e->expected), output);
    if (!m.empty()) {
      std::cerr << "expected value differs at " << m << "\n";
      return kExitFailed;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-theoretic analysis of finite dynamical systems"};
  app.require_subcommand(1);

  std::string input, out, which = "all", suites = "A,B,C,D,appendix", name;
  bool dot = false, oracle = false, run = false, serial = false;
  SweepOptions so;
  std::string topologies = "discrete";

  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis report of a system");
  analyze_cmd->add_option("system", input, "system JSON, or @name for a bundled example")->required();
  analyze_cmd->add_option("--out", out, "output directory (report to stdout when omitted)");
  analyze_cmd->add_flag("--dot", dot, "write Hasse diagrams of Att, ARpair, RC, SC and Sigma Att");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "prime ideals of a lattice");
  spectrum_cmd->add_option("lattice", input, "lattice JSON, or @name")->required();
  spectrum_cmd->add_option("--out", out, "output directory");
  spectrum_cmd->add_flag("--dot", dot, "write the lattice and spectrum diagrams");

  auto* morse_cmd = app.add_subcommand("morse", "Morse representation of an attractor sublattice");
  morse_cmd->add_option("system", input, "system JSON, or @name")->required();
  morse_cmd->add_option("--sublattice", which, "comma-separated attractor indices, or all");

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("system", input, "system JSON, or @name")->required();
  verify_cmd->add_option("--suite", suites, "comma-separated: conley,A,B,C,D,cospan,appendix");
  verify_cmd->add_flag("--oracle", oracle, "also compare closed forms with definitional evaluation");
  verify_cmd->add_option("--out", out, "report file (stdout when omitted)");

  auto* sweep_cmd = app.add_subcommand("sweep", "exhaustive or sampled sweep, CSV summary");
  sweep_cmd->add_option("--n", so.n, "points")->required();
  sweep_cmd->add_option("--topologies", topologies, "all or discrete")
      ->check(CLI::IsMember({"all", "discrete"}));
  sweep_cmd->add_flag("--invertible", so.invertible_only, "permutations only");
  sweep_cmd->add_option("--samples", so.samples, "random systems instead of exhaustion");
  sweep_cmd->add_option("--seed", so.seed, "seed for sampled mode");
  sweep_cmd->add_option("--budget", so.budget, "maximum number of systems");
  sweep_cmd->add_option("--out", out, "CSV file")->required();
  sweep_cmd->add_flag("--serial", serial, "use the serial reference loop");

  auto* example_cmd = app.add_subcommand("example", "list or load the bundled corpus");
  example_cmd->add_option("name", name, "example name");
  example_cmd->add_flag("--run", run, "analyze the example and compare with its expected values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze_cmd) return cmd_analyze(input, out, dot);
    if (*spectrum_cmd) return cmd_spectrum(input, out, dot);
    if (*morse_cmd) return cmd_morse(input, which);
    if (*verify_cmd) return cmd_verify(input, suites, oracle, out);
    if (*sweep_cmd) {
      so.all_topologies = topologies == "all";
      return cmd_sweep(so, out, serial);
    }
    if (*example_cmd) return cmd_example(name, run);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const SpaceTooLarge& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return 0;
}
