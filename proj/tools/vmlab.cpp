// vmlab: command-line front end for the vmlab library.
//
// Exit codes: 0 completed, 2 a search or enumeration budget was exceeded,
// 1 any other error. VMLAB_JOBS sets the default worker count.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmlab/vmlab.hpp"

using namespace vmlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

unsigned default_jobs() {
  if (const char* env = std::getenv("VMLAB_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring VMLAB_JOBS=" << env << '\n';
  }
  return 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    fail(Errc::parse, path + ": " + e.what());
  }
}

// A graph argument is a graph6 file, or a literal graph6 string if no such file exists.
Graph read_graph(const std::string& arg) {
  std::ifstream probe(arg);
  if (!probe) return from_graph6(arg);
  std::string line;
  while (std::getline(probe, line))
    if (!line.empty()) return from_graph6(line);
  fail(Errc::parse, arg + " holds no graph6 line");
}

// H on labels 0..m-1 placed onto the given labels of a capacity-n host.
Graph place(const Graph& h, std::size_t capacity, const LabelList& labels) {
  require(labels.size() == h.order(), Errc::labels, "--labels needs one label per vertex of H");
  Graph out = Graph::on_labels(capacity, labels);
  for (auto [u, v] : h.edges()) out.add_edge(labels[u], labels[v]);
  return out;
}

std::vector<WalkKind> parse_steps(const std::string& spec) {
  std::vector<WalkKind> steps;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto x = tok.find('x');
    std::size_t reps = 1;
    std::string name = tok;
    if (x != std::string::npos) {
      reps = std::stoul(tok.substr(x + 1));
      name = tok.substr(0, x);
    }
    steps.insert(steps.end(), reps, parse_walk_kind(name));
  }
  return steps;
}

void print_record(const ResultRecord& r) {
  Json summary = {{"experiment", r.config.experiment},
                  {"seed", r.config.seed},
                  {"aggregates", r.aggregates},
                  {"wall_seconds", r.wall_seconds}};
  std::cout << summary.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex-minor, pivot-minor and binary-matroid experiments"};
  app.require_subcommand(1);
  unsigned jobs = default_jobs();
  int exit_code = kExitOk;

  // experiment run
  auto* exp = app.add_subcommand("experiment", "Seeded Monte-Carlo campaigns");
  exp->require_subcommand(1);
  auto* exp_run = exp->add_subcommand("run", "Run one experiment config");
  std::string config_path, output;
  std::uint64_t seed_override = 0;
  exp_run->add_option("--config", config_path, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  auto* seed_opt = exp_run->add_option("--seed", seed_override, "Override the config seed");
  exp_run->add_option("--output", output, "Override the output path prefix");
  exp_run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  exp_run->callback([&] {
    ExperimentConfig cfg = config_from_json(read_json(config_path));
    if (*seed_opt) cfg.seed = seed_override;
    if (!output.empty()) cfg.output = output;
    const ResultRecord rec = run_experiment(cfg, jobs);
    write_outputs(rec);
    print_record(rec);
    if (rec.budget_exceeded) exit_code = kExitBudget;
  });

  // vm check / vm universal
  auto* vm = app.add_subcommand("vm", "Vertex-minor queries");
  vm->require_subcommand(1);
  auto* vm_check = vm->add_subcommand("check", "Is H a vertex-minor of G (labelled)?");
  std::string g_arg, h_arg;
  LabelList h_labels;
  std::uint64_t budget = kDefaultNodeBudget;
  bool pivot_only = false;
  vm_check->add_option("G", g_arg, "Host graph (graph6 file or string)")->required();
  vm_check->add_option("H", h_arg, "Target graph (graph6 file or string)")->required();
  vm_check->add_option("--labels", h_labels, "Host labels for H's vertices (default 0..|H|-1)")->delimiter(',');
  vm_check->add_option("--budget", budget, "Recursion node budget");
  vm_check->add_flag("--pivot", pivot_only, "Ask for a pivot-minor instead");
  vm_check->callback([&] {
    const Graph g = read_graph(g_arg);
    const Graph h0 = read_graph(h_arg);
    LabelList labels = h_labels;
    if (labels.empty())
      for (std::size_t i = 0; i < h0.order(); ++i) labels.push_back(i);
    const Graph h = place(h0, g.capacity(), labels);
    SearchOptions opt;
    opt.node_budget = budget;
    const auto w = pivot_only ? is_pivot_minor(g, h, opt) : is_vertex_minor(g, h, opt);
    Json out = {{"contained", w.has_value()}};
    if (w) out["witness"] = to_json(*w);
    std::cout << out.dump() << '\n';
  });

  auto* vm_univ = vm->add_subcommand("universal", "Is G k-vertex-minor universal?");
  std::size_t k = 0;
  vm_univ->add_option("G", g_arg, "Graph (graph6 file or string)")->required();
  vm_univ->add_option("--k", k, "Target size")->required();
  vm_univ->add_option("--budget", budget, "Recursion node budget per vertex set");
  vm_univ->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  vm_univ->callback([&] {
    SearchOptions opt;
    opt.node_budget = budget;
    const auto res = is_k_vm_universal(read_graph(g_arg), k, opt, jobs);
    Json out;
    if (std::holds_alternative<Universal>(res)) {
      out = {{"universal", true}};
    } else if (const auto* f = std::get_if<UniversalityFailure>(&res)) {
      out = {{"universal", false}, {"U", f->u}, {"missing", to_json(f->h)}};
    } else {
      out = {{"universal", nullptr}, {"budget_exceeded_at", std::get<BudgetExceeded>(res).u}};
      exit_code = kExitBudget;
    }
    std::cout << out.dump() << '\n';
  });

  // walk mix
  auto* walk = app.add_subcommand("walk", "Exact random-walk distributions");
  walk->require_subcommand(1);
  auto* walk_mix = walk->add_subcommand("mix", "L-infinity distance to uniform after a step recipe");
  std::string steps_spec;
  std::size_t ell = 0, r_side = 0;
  bool dump_distribution = false;
  walk_mix->add_option("--steps", steps_spec, "Comma list, e.g. com,pivx3 or bpivx5")->required();
  walk_mix->add_option("--k", k, "Vertices (Com/Piv walks)");
  walk_mix->add_option("--ell", ell, "Left side (bPiv walks)");
  walk_mix->add_option("--r", r_side, "Right side (bPiv walks)");
  walk_mix->add_flag("--dump", dump_distribution, "Print the final distribution as JSON");
  walk_mix->callback([&] {
    const auto steps = parse_steps(steps_spec);
    const bool bip = ell > 0 || r_side > 0;
    const WalkShape shape = bip ? WalkShape::bip(ell, r_side) : WalkShape::plain(k);
    const auto mu = apply_walk(GraphDistribution::point_mass(shape), steps);
    const Dyadic dist = linf_distance_to_uniform(mu);
    Json out = {{"steps", steps.size()}, {"distance", dist.to_string()}, {"distance_value", dist.to_double()}};
    if (bip) {
      out["bound"] = bpiv_mixing_bound(steps.size()).to_string();
    } else {
      std::size_t m = 0;
      for (WalkKind s : steps) m += s == WalkKind::piv ? 2 : 1;
      if (m > 2 * k) out["bound"] = com_piv_mixing_bound(k, steps).to_string();
    }
    if (dump_distribution) out["distribution"] = to_json(mu);
    std::cout << out.dump() << '\n';
  });

  // ramsey vm / pm
  auto* ramsey = app.add_subcommand("ramsey", "Exhaustive Ramsey-type numbers for small k");
  ramsey->require_subcommand(1);
  auto report = [&](const RamseyResult& res) {
    std::cout << "value " << res.value << '\n';
    std::cout << "certificates " << res.certificates.size() << " (graphs on " << (res.value ? res.value - 1 : 0)
              << " vertices)\n";
    for (std::uint64_t c : res.certificates)
      std::cout << to_graph6(Graph::from_edge_mask(res.value - 1, c)) << '\n';
  };
  auto* ramsey_vm = ramsey->add_subcommand("vm", "Least n with an independent k-set vertex-minor in every graph");
  ramsey_vm->add_option("--k", k, "k <= 3")->required();
  ramsey_vm->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ramsey_vm->callback([&] { report(vm_ramsey(k, jobs)); });
  auto* ramsey_pm = ramsey->add_subcommand("pm", "Least n with a k-clique or independent k-set pivot-minor");
  ramsey_pm->add_option("--k", k, "k <= 3")->required();
  ramsey_pm->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ramsey_pm->callback([&] { report(pm_ramsey(k, jobs)); });

  // matroid minor / sample / bases
  auto* mat = app.add_subcommand("matroid", "Binary matroid tools");
  mat->require_subcommand(1);
  std::string m_path, n_path;
  auto* mat_minor = mat->add_subcommand("minor", "Is N a minor of M?");
  mat_minor->add_option("M", m_path, "Matroid JSON")->required()->check(CLI::ExistingFile);
  mat_minor->add_option("N", n_path, "Matroid JSON")->required()->check(CLI::ExistingFile);
  mat_minor->callback([&] {
    const auto w = find_minor(matroid_from_json(read_json(m_path)), matroid_from_json(read_json(n_path)));
    Json out = {{"minor", w.has_value()}};
    if (w) out["witness"] = {{"deleted", w->deleted}, {"contracted", w->contracted}};
    std::cout << out.dump() << '\n';
  });
  auto* mat_sample = mat->add_subcommand("sample", "Uniform rank-r binary matroid on n elements");
  std::size_t rank = 0, ground = 0;
  std::uint64_t seed = 0;
  mat_sample->add_option("--r", rank, "Rank")->required();
  mat_sample->add_option("--n", ground, "Ground set size")->required();
  mat_sample->add_option("--seed", seed, "Seed");
  mat_sample->callback([&] { std::cout << to_json(sample_uniform_matroid(rank, ground, seed)).dump() << '\n'; });
  auto* mat_bases = mat->add_subcommand("bases", "Count bases");
  mat_bases->add_option("M", m_path, "Matroid JSON")->required()->check(CLI::ExistingFile);
  mat_bases->callback([&] { std::cout << count_bases(matroid_from_json(read_json(m_path))) << '\n'; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::budget || e.code() == Errc::cap ? kExitBudget : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
