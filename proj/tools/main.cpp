// Copyright 2026 The lieprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lieprep command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lieprep/circuit.hpp"
#include "lieprep/fuzzy.hpp"
#include "lieprep/gates.hpp"
#include "lieprep/lie.hpp"
#include "lieprep/pauli.hpp"
#include "lieprep/subspace.hpp"
#include "lieprep/varopt.hpp"

namespace fs = std::filesystem;
using namespace lieprep;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int to_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an integer: " + s);
  }
  if (pos != s.size()) throw UsageError("not an integer: " + s);
  return v;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: " + s);
  }
  if (pos != s.size()) throw UsageError("not a number: " + s);
  return v;
}

// Sector specs: fuzzy:<orbitals>, weight:<qubits>,<k>, boson:<modes>,<bits>,<total>.
SectorSpec parse_sector_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("sector spec needs a kind: " + text);
  const std::string kind = text.substr(0, colon);
  std::vector<int> args;
  for (const auto& a : split(text.substr(colon + 1), ',')) args.push_back(to_int(a));
  SectorSpec spec;
  if (kind == "fuzzy" && args.size() == 1) {
    spec = fuzzy_sector_spec(args[0]);
  } else if (kind == "weight" && args.size() == 2) {
    spec.n_qubits = args[0];
    spec.hamming_weight = args[1];
  } else if (kind == "boson" && args.size() == 3) {
    spec = boson_sector_spec(args[0], args[1], args[2]);
  } else {
    throw UsageError("unknown sector spec: " + text);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Model couplings, either from individual flags or from "s=1.5,v0=4.75,...".
struct ModelFlags {
  double s = 1.5;
  double v0 = 4.75;
  double v1 = 1.0;
  double h = 6.32;
  std::string inline_text;

  void attach(CLI::App* app) {
    app->add_option("--s", s, "Orbital spin s (half-integer)")->capture_default_str();
    app->add_option("--v0", v0, "Pseudopotential V0")->capture_default_str();
    app->add_option("--v1", v1, "Pseudopotential V1")->capture_default_str();
    app->add_option("--h", h, "Transverse field")->capture_default_str();
    app->add_option("--model", inline_text, "Couplings as s=..,v0=..,v1=..,h=..");
  }

  bool any_given(const CLI::App* app) const {
    for (const char* f : {"--s", "--v0", "--v1", "--h", "--model"}) {
      if (app->count(f) > 0) return true;
    }
    return false;
  }

  ModelParams resolve() const {
    double ss = s, a = v0, b = v1, hh = h;
    for (const auto& kv : split(inline_text, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("bad model entry: " + kv);
      const std::string key = kv.substr(0, eq);
      const double val = to_double(kv.substr(eq + 1));
      if (key == "s") ss = val;
      else if (key == "v0") a = val;
      else if (key == "v1") b = val;
      else if (key == "h") hh = val;
      else throw UsageError("unknown model key: " + key);
    }
    const double twice = 2.0 * ss;
    if (ss <= 0 || std::abs(twice - std::round(twice)) > 1e-12) {
      throw UsageError("s must be a positive multiple of 1/2");
    }
    ModelParams p;
    p.twice_s = static_cast<int>(std::lround(twice));
    p.v0 = a;
    p.v1 = b;
    p.h = hh;
    return p;
  }
};

// Output directory plus a manifest written next to the outputs.
class Outputs {
 public:
  void attach(CLI::App* app) {
    app->add_option("--out", dir_, "Directory for CSV/DAT output and the run manifest");
  }

  bool enabled() const { return !resolved_dir().empty(); }

  std::string path(const std::string& name) {
    const fs::path p = fs::path(resolved_dir()) / name;
    written_.push_back(p.string());
    return p.string();
  }

  void write(const std::string& name, const std::string& content) {
    if (!enabled()) return;
    fs::create_directories(resolved_dir());
    std::ofstream out(path(name));
    if (!out) throw std::runtime_error("cannot write " + name);
    out << content;
  }

  void manifest(const CLI::App* sub, std::uint64_t seed, bool stochastic) {
    if (!enabled()) return;
    nlohmann::json j;
    j["subcommand"] = sub->get_name();
    j["version"] = kVersion;
    nlohmann::json flags = nlohmann::json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      const std::string name = opt->get_name(false, true);
      if (name.empty() || name == "--help" || name == "-h") continue;
      if (opt->count() > 0) {
        const auto& r = opt->results();
        flags[name] = r.size() == 1 ? nlohmann::json(r[0]) : nlohmann::json(r);
      } else {
        flags[name] = opt->get_default_str();
      }
    }
    j["flags"] = flags;
    j["seed"] = stochastic ? nlohmann::json(seed) : nlohmann::json(nullptr);
    j["outputs"] = written_;
    fs::create_directories(resolved_dir());
    std::ofstream out(fs::path(resolved_dir()) / (sub->get_name() + ".manifest.json"));
    out << j.dump(2) << "\n";
  }

 private:
  std::string resolved_dir() const {
    if (!dir_.empty()) return dir_;
    if (const char* env = std::getenv("LIEPREP_OUT_DIR")) return env;
    return {};
  }

  std::string dir_;
  std::vector<std::string> written_;
};

std::string data_path(const std::string& name) {
  if (const char* env = std::getenv("LIEPREP_DATA_DIR")) return (fs::path(env) / name).string();
  return (fs::path(LIEPREP_DATA_DIR) / name).string();
}

// ---------------------------------------------------------------------------

int cmd_verify_identities(Outputs& out) {
  const auto corpus = identity_corpus();
  int failed = 0;
  std::string csv = "identity,holds\n";
  for (const auto& id : corpus) {
    const IdentityCheck r = verify_identity(id.a, id.b, id.rhs);
    std::cout << (r.holds ? "PASS " : "FAIL ") << id.name << "\n";
    if (!r.holds) {
      ++failed;
      std::cout << r.diff;
    }
    csv += id.name + "," + (r.holds ? "1" : "0") + "\n";
  }
  std::cout << corpus.size() - failed << "/" << corpus.size() << " identities hold\n";
  out.write("identities.csv", csv);
  return failed == 0 ? kOk : kFailed;
}

int cmd_closure(const std::string& sector_text, const std::string& gens_file,
                bool complex_mode, int expect, Outputs& out) {
  const SectorSpec spec = parse_sector_spec(sector_text);
  const GeneratorSet gens = parse_generator_set(read_file(gens_file));
  if (gens.n_qubits != spec.n_qubits) {
    throw UsageError("generator register does not match the sector");
  }
  const SectorBasis basis = enumerate_sector(spec);
  const ClosureReport r = closure_dimension(gens, basis, complex_mode);
  std::cout << "sector_size " << basis.size() << "\n"
            << "dimension " << r.dimension << "\n"
            << "iterations " << r.iterations << "\n";
  if (r.target_dim) std::cout << "ceiling " << *r.target_dim << "\n";
  if (r.matched) std::cout << "full_algebra " << (*r.matched ? "yes" : "no") << "\n";
  out.write("closure.csv", "sector_size,dimension,iterations,ceiling\n" +
                               std::to_string(basis.size()) + "," +
                               std::to_string(r.dimension) + "," +
                               std::to_string(r.iterations) + "," +
                               std::to_string(r.target_dim.value_or(-1)) + "\n");
  if (expect >= 0 && r.dimension != expect) {
    std::cout << "FAIL expected dimension " << expect << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_dim(const CLI::App* sub, int fuzzy_n, int modes, int bits, int total,
            int qubits, int weight, bool list, Outputs& out) {
  SectorSpec spec;
  if (sub->count("--fuzzy-n")) {
    if (sub->count("--modes") || sub->count("--qubits")) {
      throw UsageError("choose one of --fuzzy-n, --modes, --qubits");
    }
    if (fuzzy_n < 1) throw UsageError("--fuzzy-n must be positive");
    spec = fuzzy_sector_spec(fuzzy_n);
  } else if (sub->count("--modes")) {
    if (sub->count("--qubits")) throw UsageError("choose one of --modes, --qubits");
    if (modes % 2 != 0 || modes < 2) throw UsageError("--modes must be a positive even count");
    spec = fuzzy_sector_spec(modes / 2);
  } else if (sub->count("--qubits")) {
    if (sub->count("--bits")) {
      spec = boson_sector_spec(qubits / bits, bits, total);
      if (qubits % bits != 0) throw UsageError("--qubits must be a multiple of --bits");
    } else {
      spec.n_qubits = qubits;
      spec.hamming_weight = weight;
    }
  } else {
    throw UsageError("dim needs --fuzzy-n, --modes or --qubits");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const BigInt count = count_sector(spec);
  std::cout << count << "\n";
  std::string csv = "dimension\n" + count.str() + "\n";
  if (list || out.enabled()) {
    if (count > BigInt(kMaxEnumeratedStates)) {
      if (list) throw UsageError("sector too large to list");
    } else {
      const SectorBasis basis = enumerate_sector(spec);
      std::string states = "index,state\n";
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string s = format_bitstring(spec.n_qubits, basis.state(i));
        if (list) std::cout << s << "\n";
        states += std::to_string(i) + "," + s + "\n";
      }
      out.write("sector_states.csv", states);
    }
  }
  out.write("dim.csv", csv);
  return kOk;
}

const ResourceCount kTableResources[] = {{2, 5}, {3, 7}, {14, 22}, {14, 22},
                                         {2, 5}, {8, 12}, {2, 5}, {14, 22}};

int cmd_gates(const std::string& mode, int samples, std::uint64_t seed,
              const std::string& emit, Outputs& out) {
  if (mode != "verify") throw UsageError("gates supports only 'verify'");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  bool ok = true;
  std::string csv = "gate,max_error,cnots,depth,table_cnots,table_depth\n";
  std::string emitted;
  std::printf("%-12s %-12s %6s %6s %8s\n", "gate", "max_error", "cnots", "depth", "table");
  for (std::size_t k = 0; k < std::size(kAllGateKinds); ++k) {
    const GateKind kind = kAllGateKinds[k];
    if (is_complex(kind)) continue;  // no elementary decomposition for phase kinds
    double worst = 0.0;
    ResourceCount rc{0, 0};
    for (int i = 0; i < samples; ++i) {
      const double theta = angle(rng);
      const Decomposition d = decompose(kind, theta);
      const Eigen::MatrixXcd diff =
          decomposition_matrix(d, arity(kind)) - gate_matrix(kind, theta);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      rc = resource_count(d);
    }
    const ResourceCount table = kTableResources[k];
    const bool pass = worst < 1e-12 && rc == table;
    ok = ok && pass;
    std::printf("%-12s %-12.3e %6d %6d %4d/%-3d %s\n", std::string(gate_name(kind)).c_str(),
                worst, rc.cnots, rc.depth, table.cnots, table.depth, pass ? "PASS" : "FAIL");
    csv += std::string(gate_name(kind)) + "," + fmt17(worst) + "," +
           std::to_string(rc.cnots) + "," + std::to_string(rc.depth) + "," +
           std::to_string(table.cnots) + "," + std::to_string(table.depth) + "\n";
    if (!emit.empty()) {
      emitted += "# " + std::string(gate_name(kind)) + " theta=0.5\n" +
                 emit_decomposition(decompose(kind, 0.5));
    }
  }
  if (!emit.empty()) {
    std::ofstream f(emit);
    if (!f) throw std::runtime_error("cannot write " + emit);
    f << emitted;
  }
  out.write("gates.csv", csv);
  return ok ? kOk : kFailed;
}

SectorBasis circuit_sector(const Circuit& c) {
  SectorSpec spec;
  spec.n_qubits = c.n_qubits;
  spec.hamming_weight = std::popcount(c.input_state);
  if (c.n_qubits % 2 == 0) {
    // Fuzzy registers also fix the angular momentum of the input state.
    const SectorSpec f = fuzzy_sector_spec(c.n_qubits / 2);
    if (satisfies(f, c.input_state)) spec = f;
  }
  return enumerate_sector(spec);
}

int cmd_jacobian(const std::string& file, std::uint64_t seed, int points, int expect,
                 Outputs& out) {
  const Circuit c = load_circuit(file);
  const SectorBasis basis = circuit_sector(c);
  const JacobianReport r = jacobian(c, random_parameters(c.n_params, seed), basis);
  std::cout << "sector_size " << basis.size() << "\n"
            << "params " << c.n_params << "\n"
            << "rank " << r.rank << "\n";
  std::string csv = "index,singular_value\n";
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) {
    csv += std::to_string(i) + "," + fmt17(r.singular_values[i]) + "\n";
  }
  bool ok = expect < 0 || r.rank == expect;
  std::string ranks = "point,rank\n";
  for (int p = 1; p <= points; ++p) {
    const int rank =
        jacobian(c, random_parameters(c.n_params, seed + p), basis).rank;
    ranks += std::to_string(p) + "," + std::to_string(rank) + "\n";
    ok = ok && (expect < 0 || rank == expect);
  }
  if (points > 0) std::cout << ranks;
  out.write("singular_values.csv", csv);
  if (points > 0) out.write("ranks.csv", ranks);
  return ok ? kOk : kFailed;
}

int cmd_reach(const std::string& file, int targets, std::uint64_t seed,
              const ReachOptions& opt, Outputs& out) {
  const Circuit c = load_circuit(file);
  const SectorBasis basis = circuit_sector(c);
  const ReachReport r = reachability_test(c, basis, targets, seed, opt);
  std::cout << "reached " << r.reached << "/" << r.n_targets << "\n"
            << "max_reached_residual " << r.max_reached_residual << "\n";
  std::string csv = "target,residual,reached\n";
  for (std::size_t t = 0; t < r.residuals.size(); ++t) {
    const bool hit = r.residuals[t] < opt.reached_tolerance;
    if (!hit) std::cout << "unreached " << t << " residual " << r.residuals[t] << "\n";
    csv += std::to_string(t) + "," + fmt17(r.residuals[t]) + "," + (hit ? "1" : "0") + "\n";
  }
  out.write("reach.csv", csv);
  return kOk;
}

int cmd_ed(const ModelParams& p, int levels, Outputs& out) {
  const SectorBasis basis = enumerate_sector(fuzzy_sector_spec(p.n_orbitals()));
  EigenSystem es = exact_diagonalize(build_hamiltonian(p), basis);
  const auto q = resolve_symmetries(es, basis, p.twice_s);
  const int n = levels > 0 ? std::min<int>(levels, es.energies.size())
                           : static_cast<int>(es.energies.size());
  std::string csv = "level,energy,ell,z2\n";
  for (int i = 0; i < n; ++i) {
    std::printf("%3d % .10f  ell=%d z2=%s\n", i, es.energies[i], q[i].ell,
                q[i].z2 > 0 ? "even" : "odd");
    csv += std::to_string(i) + "," + fmt17(es.energies[i]) + "," + std::to_string(q[i].ell) +
           "," + (q[i].z2 > 0 ? "even" : "odd") + "\n";
  }
  out.write("ed.csv", csv);
  return kOk;
}

struct BootstrapRow {
  std::string name;
  double bootstrap;
};

std::vector<BootstrapRow> load_bootstrap() {
  std::istringstream in(read_file(data_path("ising_bootstrap.csv")));
  std::string line;
  std::vector<BootstrapRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() < 2) throw std::runtime_error("malformed bootstrap row: " + line);
    rows.push_back({cols[0], to_double(cols[1])});
  }
  return rows;
}

int cmd_spectrum(const ModelParams& p, bool rescale, bool compare, Outputs& out) {
  const SectorBasis basis = enumerate_sector(fuzzy_sector_spec(p.n_orbitals()));
  EigenSystem es = exact_diagonalize(build_hamiltonian(p), basis);
  const auto q = resolve_symmetries(es, basis, p.twice_s);
  std::vector<SpectrumEntry> spec;
  if (rescale) {
    spec = rescale_spectrum(es.energies, q);
  } else {
    for (Eigen::Index i = 0; i < es.energies.size(); ++i) {
      spec.push_back({es.energies[i], std::nan(""), q[i].ell, q[i].z2});
    }
  }
  std::vector<BootstrapRow> boot;
  if (compare) {
    if (!rescale) throw UsageError("--bootstrap-compare needs --rescale");
    boot = load_bootstrap();
  }
  std::string csv = "energy,dimension,ell,z2";
  if (compare) csv += ",operator,bootstrap,deviation_pct";
  csv += "\n";
  std::cout << csv;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& e = spec[i];
    std::string row = fmt17(e.energy) + "," + fmt17(e.dimension) + "," +
                      std::to_string(e.ell) + "," + (e.z2 > 0 ? "even" : "odd");
    if (compare && i < boot.size()) {
      const double b = boot[i].bootstrap;
      const double dev = b != 0.0 ? 100.0 * std::abs(e.dimension - b) / b : std::nan("");
      row += "," + boot[i].name + "," + fmt17(b) + "," + fmt17(dev);
    }
    std::cout << row << "\n";
    csv += row + "\n";
  }
  out.write("spectrum.csv", csv);
  return kOk;
}

// Exact sector eigenvectors embedded in the full register.
std::vector<Eigen::VectorXcd> exact_states(const PauliSum& h, const SectorBasis& basis,
                                           int count) {
  EigenSystem es = exact_diagonalize(h, basis);
  std::vector<Eigen::VectorXcd> out;
  for (int i = 0; i < count && i < es.vectors.cols(); ++i) {
    out.push_back(embed_from_sector(es.vectors.col(i).cast<cplx>(), basis));
  }
  return out;
}

std::string trace_name(const std::string& base, int level) {
  const fs::path p(base);
  return (p.parent_path() / (p.stem().string() + "_level" + std::to_string(level) +
                             p.extension().string()))
      .string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int cmd_vqe(const std::string& file, const ModelParams& p, std::uint64_t seed,
            const std::string& trace, Outputs& out) {
  const Circuit c = load_circuit(file);
  const PauliSum h = build_hamiltonian(p);
  const SectorBasis basis = circuit_sector(c);
  const double e0 = exact_diagonalize(h, basis).energies[0];
  const RunTrace t = run_vqe(c, h, OptimizerConfig::vqe_defaults(seed));
  std::printf("energy % .10f\ned     % .10f\nerror  %.3e\niterations %d\nconverged %s\n",
              t.final_energy, e0, std::abs(t.final_energy - e0), t.costs.back().first,
              t.converged ? "yes" : "no");
  if (!trace.empty()) write_text(trace, format_trace(t));
  out.write("vqe.dat", format_trace(t));
  return kOk;
}

int cmd_vqd(const std::string& file, const ModelParams& p, std::uint64_t seed, int levels,
            const std::vector<std::string>& beta_text, const std::string& trace,
            Outputs& out) {
  std::vector<std::vector<double>> betas;
  for (const auto& group : beta_text) {
    std::vector<double> b;
    for (const auto& v : split(group, ',')) b.push_back(to_double(v));
    betas.push_back(b);
  }
  if (static_cast<int>(betas.size()) != levels) {
    throw UsageError("--betas needs one comma-separated group per level");
  }
  for (int l = 0; l < levels; ++l) {
    if (static_cast<int>(betas[l].size()) != l + 1) {
      throw UsageError("beta group " + std::to_string(l + 1) + " needs " +
                       std::to_string(l + 1) + " values");
    }
    for (double b : betas[l]) {
      if (!(b > 0)) throw UsageError("betas must be positive");
    }
  }
  const Circuit c = load_circuit(file);
  const PauliSum h = build_hamiltonian(p);
  const SectorBasis basis = circuit_sector(c);
  const EigenSystem es = exact_diagonalize(h, basis);
  const auto runs = run_vqd(c, h, levels, OptimizerConfig::vqe_defaults(seed),
                            OptimizerConfig::vqd_defaults(seed), betas);
  bool crossing = false;
  std::vector<Eigen::VectorXcd> prepared;
  std::string csv = "level,energy,ed,error,iterations,converged\n";
  for (std::size_t l = 0; l < runs.size(); ++l) {
    const RunTrace& t = runs[l];
    const double ref = es.energies[static_cast<Eigen::Index>(l)];
    std::printf("level %zu energy % .10f ed % .10f error %.3e iterations %d%s\n", l,
                t.final_energy, ref, std::abs(t.final_energy - ref), t.costs.back().first,
                t.level_crossing ? " LEVEL CROSSING (beta too small)" : "");
    crossing = crossing || t.level_crossing;
    prepared.push_back(apply_circuit(c, t.final_params));
    csv += std::to_string(l) + "," + fmt17(t.final_energy) + "," + fmt17(ref) + "," +
           fmt17(std::abs(t.final_energy - ref)) + "," + std::to_string(t.costs.back().first) +
           "," + (t.converged ? "1" : "0") + "\n";
    if (!trace.empty()) write_text(trace_name(trace, static_cast<int>(l)), format_trace(t));
    out.write("vqd_level" + std::to_string(l) + ".dat", format_trace(t));
  }
  const Eigen::MatrixXd ov =
      overlap_matrix(prepared, exact_states(h, basis, static_cast<int>(runs.size())));
  std::cout << "overlap\n" << ov << "\n";
  std::string ov_csv;
  for (Eigen::Index a = 0; a < ov.rows(); ++a) {
    for (Eigen::Index b = 0; b < ov.cols(); ++b) {
      ov_csv += fmt17(ov(a, b)) + (b + 1 < ov.cols() ? "," : "\n");
    }
  }
  out.write("vqd.csv", csv);
  out.write("overlap.csv", ov_csv);
  return crossing ? kFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lieprep: constrained-subspace circuit analysis and fuzzy-sphere spectra"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Outputs out;
  ModelFlags model;
  std::uint64_t seed = 0;
  std::string circuit_file = data_path("fuzzy4_ansatz.txt");

  auto* verify = app.add_subcommand("verify-identities", "Check the commutator identity corpus");
  out.attach(verify);

  auto* closure = app.add_subcommand("closure", "Dynamical Lie algebra dimension in a sector");
  std::string sector_text, gens_file;
  bool complex_mode = false;
  int expect_dim = -1;
  closure->add_option("--sector", sector_text,
                      "fuzzy:<orbitals> | weight:<qubits>,<k> | boson:<modes>,<bits>,<total>")
      ->required();
  closure->add_option("--gens", gens_file, "Generator file ('gen <label>' blocks)")
      ->required();
  closure->add_flag("--complex", complex_mode, "Close over complex (su) instead of real (so)");
  closure->add_option("--expect", expect_dim, "Exit 1 unless this dimension is found");
  out.attach(closure);

  auto* dim = app.add_subcommand("dim", "Sector dimension");
  int fuzzy_n = 0, modes = 0, bits = 0, total = 0, qubits = 0, weight = 0;
  bool list = false;
  dim->add_option("--fuzzy-n", fuzzy_n, "Electrons (= orbitals) at half filling, S_z = 0");
  dim->add_option("--modes", modes, "Fermionic modes (two per orbital), S_z = 0");
  dim->add_option("--qubits", qubits, "Plain register size");
  dim->add_option("--weight", weight, "Hamming weight with --qubits");
  dim->add_option("--bits", bits, "Binary-encoded bosons: bits per mode (with --qubits)");
  dim->add_option("--total", total, "Binary-encoded bosons: total particle number");
  dim->add_flag("--list", list, "Print the basis states");
  out.attach(dim);

  auto* gates = app.add_subcommand("gates", "Decomposition checks and resource table");
  std::string gates_mode = "verify", emit_file;
  int samples = 100;
  gates->add_option("mode", gates_mode, "verify")->capture_default_str();
  gates->add_option("--samples", samples, "Random angles per gate")->capture_default_str();
  gates->add_option("--seed", seed, "Angle RNG seed")->capture_default_str();
  gates->add_option("--emit", emit_file, "Write decompositions at theta = 0.5");
  out.attach(gates);

  auto* jac = app.add_subcommand("jacobian", "Sector Jacobian rank");
  int points = 0, expect_rank = -1;
  jac->add_option("--circuit", circuit_file, "Circuit file")->capture_default_str();
  jac->add_option("--seed", seed, "Reference point seed")->capture_default_str();
  jac->add_option("--points", points, "Additional random points to check")
      ->capture_default_str();
  jac->add_option("--expect", expect_rank, "Exit 1 unless every rank equals this");
  out.attach(jac);

  auto* reach = app.add_subcommand("reach", "Random-target reachability");
  int targets = 100;
  ReachOptions ropt;
  reach->add_option("--circuit", circuit_file, "Circuit file")->capture_default_str();
  reach->add_option("--targets", targets, "Number of random targets")->capture_default_str();
  reach->add_option("--seed", seed, "Target and restart seed")->capture_default_str();
  reach->add_option("--restarts", ropt.restarts, "Restarts per target")->capture_default_str();
  reach->add_option("--iterations", ropt.max_iterations, "Iterations per restart")
      ->capture_default_str();
  out.attach(reach);

  auto* ed = app.add_subcommand("ed", "Exact diagonalization of the fuzzy-sphere sector");
  int levels_ed = 0;
  model.attach(ed);
  ed->add_option("--levels", levels_ed, "Print only the lowest levels (0 = all)");
  out.attach(ed);

  auto* spectrum = app.add_subcommand("spectrum", "Scaling-dimension spectrum");
  bool rescale = false, compare = false;
  ModelFlags spec_model;
  spec_model.attach(spectrum);
  spectrum->add_flag("--rescale", rescale, "Shift to the ground state and fix T at 3");
  spectrum->add_flag("--bootstrap-compare", compare, "Append bootstrap references");
  out.attach(spectrum);

  auto* vqe = app.add_subcommand("vqe", "Ground state by VQE");
  std::string trace;
  ModelFlags vqe_model;
  vqe_model.attach(vqe);
  vqe->add_option("--circuit", circuit_file, "Circuit file")->capture_default_str();
  vqe->add_option("--seed", seed, "Initialization seed")->capture_default_str();
  vqe->add_option("--trace", trace, "Write 'iteration cost' trace");
  out.attach(vqe);

  auto* vqd = app.add_subcommand("vqd", "Excited states by VQD");
  int vqd_levels = 2;
  std::vector<std::string> beta_text{"10", "30,20"};
  ModelFlags vqd_model;
  vqd_model.attach(vqd);
  vqd->add_option("--circuit", circuit_file, "Circuit file")->capture_default_str();
  vqd->add_option("--seed", seed, "Initialization seed")->capture_default_str();
  vqd->add_option("--levels", vqd_levels, "Excited levels")->capture_default_str();
  vqd->add_option("--betas", beta_text, "One comma-separated group per level")
      ->capture_default_str();
  vqd->add_option("--trace", trace, "Trace base name; _level<k> is appended");
  out.attach(vqd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    int rc = kOk;
    bool stochastic = false;
    if (sub == verify) {
      rc = cmd_verify_identities(out);
    } else if (sub == closure) {
      rc = cmd_closure(sector_text, gens_file, complex_mode, expect_dim, out);
    } else if (sub == dim) {
      rc = cmd_dim(dim, fuzzy_n, modes, bits, total, qubits, weight, list, out);
    } else if (sub == gates) {
      rc = cmd_gates(gates_mode, samples, seed, emit_file, out);
      stochastic = true;
    } else if (sub == jac) {
      rc = cmd_jacobian(circuit_file, seed, points, expect_rank, out);
      stochastic = true;
    } else if (sub == reach) {
      rc = cmd_reach(circuit_file, targets, seed, ropt, out);
      stochastic = true;
    } else if (sub == ed) {
      if (!model.any_given(ed)) {
        std::cerr << "ed: give the couplings (--s, --v0, --v1, --h or --model)\n"
                  << ed->help();
        return kUsage;
      }
      rc = cmd_ed(model.resolve(), levels_ed, out);
    } else if (sub == spectrum) {
      rc = cmd_spectrum(spec_model.resolve(), rescale, compare, out);
    } else if (sub == vqe) {
      rc = cmd_vqe(circuit_file, vqe_model.resolve(), seed, trace, out);
      stochastic = true;
    } else if (sub == vqd) {
      rc = cmd_vqd(circuit_file, vqd_model.resolve(), seed, vqd_levels, beta_text, trace,
                   out);
      stochastic = true;
    }
    out.manifest(sub, seed, stochastic);
    return rc;
  } catch (const UsageError& e) {
    std::cerr << sub->get_name() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << sub->get_name() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << sub->get_name() << ": " << e.what() << "\n";
    return kFailed;
  }
}
