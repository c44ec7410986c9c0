#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "detsing/catalog.hpp"
#include "detsing/gbasis.hpp"
#include "detsing/invariants.hpp"
#include "detsing/io.hpp"

#ifndef DETSING_GOLDEN_DIR
#define DETSING_GOLDEN_DIR "data/golden"
#endif

using namespace detsing;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kUsage = 1, kMath = 2;

struct Config {
  std::string catalog_id;
  std::string input;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::size_t retries = 8;
  std::string projection = "auto";
  std::string perturbation = "auto";
  std::string mode = "auto";
  std::string format = "text";
  bool verbose = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<long> param_k(const Config& c) {
  std::optional<long> k;
  for (const auto& p : c.params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--param expects NAME=VALUE, got '" + p + "'");
    std::string name = p.substr(0, eq);
    if (name != "k") throw std::invalid_argument("unknown parameter '" + name + "'");
    try {
      std::size_t used = 0;
      k = std::stol(p.substr(eq + 1), &used);
      if (used != p.size() - eq - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter k must be an integer");
    }
  }
  return k;
}

struct Input {
  PresentationMatrix matrix;
  std::optional<DeformationTemplate> deformation;
  std::string label;
};

Input load_input(const Config& c) {
  if (c.catalog_id.empty() == c.input.empty()) throw std::invalid_argument("give exactly one of --catalog or --input");
  MatrixFile f;
  std::string label;
  if (!c.catalog_id.empty()) {
    const auto& e = find_entry(c.catalog_id);
    auto k = param_k(c);
    f = export_entry(e, k);
    if (e.parametric) f.params["k"] = resolve_k(e, k);
    label = e.id + (e.parametric ? " k=" + std::to_string(f.params["k"]) : "");
  } else {
    f = parse_matrix_file(read_file(c.input));
    if (auto k = param_k(c)) f.params["k"] = *k;
    label = c.input;
  }
  if (c.perturbation == "none") {
    f.deformation.clear();
  } else if (c.perturbation == "catalog") {
    if (c.catalog_id.empty()) throw std::invalid_argument("--perturbation catalog needs --catalog");
    if (f.deformation.empty()) throw std::invalid_argument("entry '" + c.catalog_id + "' records no smoothing");
  } else if (c.perturbation != "auto") {
    attach_deformation(f, read_file(c.perturbation));
  } else if (!c.catalog_id.empty()) {
    f.deformation.clear();
  }
  LoadedMatrix m = load_matrix(f);
  return {m.matrix, m.deformation, label};
}

PipelineOptions pipeline_options(const Config& c, const Input& in) {
  PipelineOptions o;
  o.seed = c.seed;
  o.retries = c.retries;
  o.deformation = in.deformation;
  if (c.mode == "generic") o.mode = ProjectionMode::Generic;
  else if (c.mode == "weighted") o.mode = ProjectionMode::Weighted;
  else if (c.mode != "auto") throw std::invalid_argument("--mode must be auto, generic or weighted");
  if (c.projection != "auto") {
    Polynomial p = parse_polynomial(c.projection, in.matrix.ring());
    o.projection = ProjectionData::from_polynomial(p);
  }
  return o;
}

void emit(const Config& c, const ordered_json& j, const std::string& text) {
  if (c.format == "structured") std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

void add_input_options(CLI::App* app, Config& c) {
  app->add_option("--catalog", c.catalog_id, "Catalog entry id");
  app->add_option("--input", c.input, "Matrix file");
  app->add_option("--param", c.params, "Template parameter, k=N");
}

void add_run_options(CLI::App* app, Config& c) {
  app->add_option("--seed", c.seed, "Seed for every random choice");
  app->add_option("--retries", c.retries, "Retry budget per certification stage");
  app->add_option("--projection", c.projection, "auto or a linear form");
  app->add_option("--perturbation", c.perturbation, "auto, catalog, none or a deformation file");
  app->add_option("--mode", c.mode, "Projection mode: auto, generic or weighted");
}

void add_output_options(CLI::App* app, Config& c) {
  app->add_option("--format", c.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app->add_flag("--verbose", c.verbose, "Timings on stderr");
}

int cmd_check(const Config& c) {
  Input in = load_input(c);
  InputCheck chk = check_input(in.matrix);
  ordered_json j;
  j["input"] = in.label;
  j["shape"] = chk.shape_ok;
  j["germ_at_origin"] = chk.germ_at_origin;
  j["codimension_2"] = chk.codim2;
  j["isolated"] = chk.isolated;
  j["dimension_bound"] = chk.bound_ok;
  j["ideal_dimension"] = chk.ideal_dimension;
  j["singular_locus_dimension"] = chk.singular_dimension;
  j["pass"] = chk.ok();
  if (!chk.message.empty()) j["message"] = chk.message;
  std::ostringstream os;
  os << in.label << ": " << (chk.ok() ? "pass" : "FAIL") << "\n";
  os << "  shape " << (chk.shape_ok ? "ok" : "bad") << ", codimension 2 " << (chk.codim2 ? "yes" : "no")
     << ", isolated " << (chk.isolated ? "yes" : "no") << "\n";
  if (!chk.message.empty()) os << "  " << chk.message << "\n";
  emit(c, j, os.str());
  return chk.ok() ? kOk : kMath;
}

InvariantReport run_milnor(const Config& c, const Input& in) {
  auto t0 = std::chrono::steady_clock::now();
  InvariantReport r = milnor(in.matrix, pipeline_options(c, in));
  if (c.verbose)
    std::cerr << in.label << ": "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  return r;
}

int cmd_milnor(const Config& c) {
  Input in = load_input(c);
  InputCheck chk = check_input(in.matrix);
  if (!chk.ok()) {
    std::cerr << in.label << ": " << chk.message << "\n";
    return kMath;
  }
  InvariantReport r = run_milnor(c, in);
  ordered_json j;
  j["input"] = in.label;
  ordered_json rep = report_json(r);
  for (auto& [k, v] : rep.items()) j[k] = v;
  emit(c, j, in.label + "\n" + report_text(r, "  "));
  return r.consistency ? kOk : kMath;
}

int cmd_catalog_list(const Config& c) {
  ordered_json j = ordered_json::array();
  std::ostringstream os;
  for (const auto& e : catalog()) {
    ordered_json x;
    x["id"] = e.id;
    x["kind"] = e.kind;
    x["parametric"] = e.parametric;
    x["variables"] = e.variables;
    x["matrix"] = e.matrix;
    x["provenance"] = e.provenance;
    j.push_back(x);
    os << e.id << "  " << e.kind << (e.parametric ? "  (k >= " + std::to_string(e.k_min) + ")" : "") << "\n    "
       << e.provenance << "\n";
  }
  emit(c, j, os.str());
  return kOk;
}

int cmd_catalog_export(const Config& c, const std::string& id) {
  const auto& e = find_entry(id);
  auto k = param_k(c);
  MatrixFile f = export_entry(e, k);
  if (e.parametric) f.params["k"] = resolve_k(e, k);
  std::cout << matrix_file_json(f).dump(2) << "\n";
  return kOk;
}

// Golden file for values frozen at their first certified run.
struct Golden {
  std::filesystem::path path;
  ordered_json data = ordered_json::object();
  bool dirty = false;

  explicit Golden(std::filesystem::path p) : path(std::move(p)) {
    std::ifstream in(path);
    if (in) data = ordered_json::parse(in);
  }
  void save() {
    if (!dirty) return;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    out << data.dump(2) << "\n";
  }
};

int cmd_catalog_run_all(const Config& c, const std::string& golden_dir, long k_max, bool k_max_given) {
  bool all_ok = true;
  ordered_json results = ordered_json::array();
  std::ostringstream os;
  for (const auto& e : catalog()) {
    std::optional<Golden> golden;
    if (e.frozen_for_k_above_1) golden.emplace(std::filesystem::path(golden_dir) / (e.id + ".json"));
    long kmax = e.parametric ? k_max : e.k_min;
    if (e.parametric && !k_max_given && e.sweep_k_max > 0) kmax = std::min(kmax, e.sweep_k_max);
    for (long k = e.k_min; k <= kmax; ++k) {
      Config ck = c;
      ck.catalog_id = e.id;
      ck.input.clear();
      ck.params = e.parametric ? std::vector<std::string>{"k=" + std::to_string(k)} : std::vector<std::string>{};
      ck.projection = "auto";
      ck.perturbation = "auto";
      Input in = load_input(ck);
      std::string label = e.id + (e.parametric ? " k=" + std::to_string(k) : "");
      ordered_json row;
      row["entry"] = e.id;
      if (e.parametric) row["k"] = k;
      Expected want = e.expected(k);
      std::vector<std::string> problems;
      try {
        InvariantReport r = run_milnor(ck, in);
        row["mu"] = r.mu;
        if (r.mu_section) row["mu_section"] = *r.mu_section;
        row["ind_ph"] = r.ind_ph;
        row["projection"] = r.projection;
        row["projection_route"] = r.projection_route;
        auto check = [&](const char* name, std::optional<long> w, std::optional<long> got) {
          if (w && got && *w != *got)
            problems.push_back(std::string(name) + " expected " + std::to_string(*w) + ", got " +
                               std::to_string(*got));
        };
        check("mu", want.mu, r.mu);
        check("mu_section", want.mu_section, r.mu_section);
        check("ind_ph", want.ind_ph, static_cast<long>(r.ind_ph));
        if (!r.consistency) problems.push_back("consistency identity failed");
        if (golden && k > 1) {
          std::string key = std::to_string(k);
          if (golden->data.contains(key)) {
            const auto& g = golden->data[key];
            check("mu_section (frozen)", g.value("mu_section", 0L), r.mu_section);
            check("ind_ph (frozen)", g.value("ind_ph", 0L), static_cast<long>(r.ind_ph));
          } else {
            ordered_json g;
            g["mu"] = r.mu;
            g["mu_section"] = r.mu_section ? *r.mu_section : 0;
            g["ind_ph"] = r.ind_ph;
            g["projection"] = r.projection;
            g["projection_route"] = r.projection_route;
            g["seed"] = r.seed;
            golden->data[key] = g;
            golden->dirty = true;
            row["frozen"] = true;
          }
        }
      } catch (const CertificationError& ex) {
        problems.push_back(ex.what());
      }
      row["pass"] = problems.empty();
      if (!problems.empty()) row["problems"] = problems;
      all_ok = all_ok && problems.empty();
      os << (problems.empty() ? "pass  " : "FAIL  ") << label;
      if (row.contains("mu")) os << "  mu=" << row["mu"].get<long>() << " ind=" << row["ind_ph"].get<long>();
      if (row.contains("frozen")) os << "  (frozen)";
      os << "\n";
      for (const auto& p : problems) os << "      " << p << "\n";
      results.push_back(row);
    }
    if (golden) golden->save();
  }
  ordered_json j;
  j["seed"] = c.seed;
  j["results"] = results;
  j["pass"] = all_ok;
  emit(c, j, os.str());
  return all_ok ? kOk : kMath;
}

int cmd_gb(const Config& c, const std::string& path, const std::string& ordering, const std::string& vars) {
  std::vector<std::string> names;
  if (!vars.empty()) {
    std::stringstream ss(vars);
    std::string v;
    while (std::getline(ss, v, ',')) {
      v.erase(0, v.find_first_not_of(' '));
      v.erase(v.find_last_not_of(' ') + 1);
      if (!v.empty()) names.push_back(v);
    }
  }
  IdealGens I = parse_generators(read_file(path), names);
  Ordering ord = ordering == "local" ? Ordering::negdegrevlex() : Ordering::degrevlex();
  auto t0 = std::chrono::steady_clock::now();
  GroebnerBasis G = buchberger(I, ord);
  if (c.verbose)
    std::cerr << "basis: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  ordered_json j;
  j["variables"] = I.ring()->names();
  j["ordering"] = ordering;
  std::vector<std::string> basis;
  for (const auto& g : G.basis()) basis.push_back(g.to_string());
  j["basis"] = basis;
  std::ostringstream os;
  os << "ordering " << ordering << " over " << I.ring()->size() << " variables\n";
  for (const auto& b : basis) os << "  " << b << "\n";
  if (is_unit_ideal(G)) {
    j["unit_ideal"] = true;
    os << "unit ideal: the system has no solutions";
    os << (ordering == "local" ? " at the origin\n" : "\n");
  } else {
    j["unit_ideal"] = false;
    if (ord.is_global()) {
      int dim = ideal_dimension(G);
      j["dimension"] = dim;
      os << "dimension " << dim << "\n";
    }
    QuotientInfo qi = quotient_dimension(G);
    if (qi.zero_dimensional) {
      j["quotient_dimension"] = qi.dimension;
      os << "D = " << qi.dimension << "\n";
    } else {
      j["quotient_dimension"] = nullptr;
      os << "D infinite\n";
    }
  }
  emit(c, j, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor numbers of determinantal singularities"};
  app.require_subcommand(1);
  Config cfg;

  auto* check = app.add_subcommand("check", "Validate a presentation matrix");
  add_input_options(check, cfg);
  add_output_options(check, cfg);

  auto* milnor_cmd = app.add_subcommand("milnor", "Milnor number and polar multiplicity");
  add_input_options(milnor_cmd, cfg);
  add_run_options(milnor_cmd, cfg);
  add_output_options(milnor_cmd, cfg);

  auto* cat = app.add_subcommand("catalog", "Bundled normal forms");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "List entries");
  add_output_options(list, cfg);
  auto* run_all = cat->add_subcommand("run-all", "Run every entry and compare with expected values");
  std::string golden_dir = DETSING_GOLDEN_DIR;
  long k_max = 4;
  add_run_options(run_all, cfg);
  add_output_options(run_all, cfg);
  run_all->add_option("--golden-dir", golden_dir, "Directory of frozen values");
  auto* k_max_opt =
      run_all->add_option("--k-max", k_max, "Largest k for parametric entries (default 4, ex3 capped at 3)")
          ->check(CLI::Range(1, 64));
  auto* exp = cat->add_subcommand("export", "Print an entry as a matrix file");
  std::string export_id;
  exp->add_option("id", export_id, "Entry id")->required();
  exp->add_option("--param", cfg.params, "Template parameter, k=N");

  auto* gb = app.add_subcommand("gb", "Groebner basis of a generators file");
  std::string gb_path, ordering = "global", vars;
  gb->add_option("file", gb_path, "Generators, one per line")->required();
  gb->add_option("--ordering", ordering, "global (degrevlex) or local (negdegrevlex)")
      ->check(CLI::IsMember({"global", "local"}));
  gb->add_option("--vars", vars, "Comma-separated variable order");
  add_output_options(gb, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*milnor_cmd) return cmd_milnor(cfg);
    if (*list) return cmd_catalog_list(cfg);
    if (*run_all) return cmd_catalog_run_all(cfg, golden_dir, k_max, k_max_opt->count() > 0);
    if (*exp) return cmd_catalog_export(cfg, export_id);
    if (*gb) return cmd_gb(cfg, gb_path, ordering, vars);
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.message() << "\n";
    return kUsage;
  } catch (const CertificationError& e) {
    std::cerr << "certification failed in stage '" << e.stage() << "': " << e.what() << "\n";
    return kMath;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
