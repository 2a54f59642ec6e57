// Copyright 2026 The magiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// magiclab command-line driver. Every run writes its table, a JSON copy and
// a manifest under --out; `replay` reruns a manifest.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "magiclab/catalog.hpp"
#include "magiclab/experiments.hpp"
#include "magiclab/rng.hpp"
#include "magiclab/subset_phase.hpp"

namespace {

using magiclab::ResultTable;

constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

struct Common {
  std::uint64_t seed = 1;
  std::string out = "results";
  std::string format = "csv";
  std::optional<int> threads;
  std::optional<long> mem_cap_mb;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--format", c.format, "Table format printed to stdout")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (overrides MAGICLAB_THREADS)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mem-cap-mb", c.mem_cap_mb,
                  "Memory cap for Pauli spectra in MB (overrides MAGICLAB_MEM_CAP_MB)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("-v,--verbose", c.verbose, "Print the full table even when it is long");
}

void apply_environment(const Common& c) {
  if (c.mem_cap_mb) setenv("MAGICLAB_MEM_CAP_MB", std::to_string(*c.mem_cap_mb).c_str(), 1);
  magiclab::configure_threads(c.threads);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::abs(v) < 1e-12) return "0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s = buf;
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

void print_summary(const ResultTable& t) {
  for (const auto& s : t.summary()) {
    std::cout << s.column << ": mean " << format_number(s.mean) << " +- "
              << format_number(s.stderr_mean) << "  [" << format_number(s.min) << ", "
              << format_number(s.max) << "]  n=" << s.count << "\n";
  }
}

// Prints and saves the table; the exit code reflects its checks.
int finish(const ResultTable& t, const Common& c) {
  if (t.row_count() <= 40 || c.verbose) {
    std::cout << (c.format == "json" ? t.to_json() + "\n" : t.to_csv());
  } else {
    print_summary(t);
  }
  for (const auto& ch : t.checks()) {
    std::cout << (ch.passed ? "[PASS] " : "[FAIL] ") << ch.name << ": "
              << format_number(ch.value) << " vs " << format_number(ch.bound);
    if (!ch.detail.empty()) std::cout << " (" << ch.detail << ")";
    std::cout << "\n";
  }
  const auto stem = magiclab::write_result_files(t, c.out);
  std::cout << "wrote " << stem << ".{csv,json,manifest.json}\n";
  return t.all_passed() ? 0 : kExitCheckFailed;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli {
 public:
  Cli() : app_("magiclab: stabilizer entropy, subset phase states and scrambling experiments") {
    app_.require_subcommand(1);
  }

  CLI::App& app() { return app_; }

  // Registers a subcommand with its own parameter block P. `body` runs after
  // parsing and returns the exit code.
  template <class P>
  void command(const std::string& name, const std::string& about,
               std::function<void(CLI::App*, P&)> options,
               std::function<int(const P&, const Common&)> body) {
    auto params = std::make_shared<P>();
    auto common = std::make_shared<Common>();
    auto* cmd = app_.add_subcommand(name, about);
    options(cmd, *params);
    add_common(cmd, *common);
    cmd->callback([this, params, common, body] {
      run_ = [params, common, body] {
        apply_environment(*common);
        return body(*params, *common);
      };
    });
  }

  // Experiments that produce a checked table.
  template <class P>
  void experiment(const std::string& name, const std::string& about,
                  std::function<void(CLI::App*, P&)> options,
                  std::function<ResultTable(const P&, const Common&)> body) {
    command<P>(name, about, options,
               [body](const P& p, const Common& c) { return finish(body(p, c), c); });
  }

  int run() { return run_ ? run_() : kExitUsage; }

 private:
  CLI::App app_;
  std::function<int()> run_;
};

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
  return ss.str();
}

// Adds "--name" bound to `value`, showing its current value as the default.
template <class T>
CLI::Option* opt(CLI::App* cmd, const std::string& name, T& value, const std::string& help) {
  return cmd->add_option(name, value, help)->capture_default_str();
}

template <class T>
CLI::Option* list_opt(CLI::App* cmd, const std::string& name, std::vector<T>& value,
                      const std::string& help) {
  return cmd->add_option(name, value, help)->delimiter(',')->default_str(join(value));
}

// ---------------------------------------------------------------------------

struct MagicParams {
  std::string state;
  std::vector<double> alphas{2.0};
  std::vector<std::string> measures{"m2"};
};

struct BuildParams {
  std::string spec;
  std::string state_out = "state.qsv";
  int n = 4;
  int k = 2;
  std::string fn = "kwise";
  int t = 8;
  std::optional<std::uint64_t> fn_seed;
  std::string subset = "prefix";
  std::optional<std::uint64_t> subset_seed;
  std::vector<std::uint64_t> elements;
};

struct HaarParams {
  int n = 8;
  std::size_t samples = 200;
  std::vector<double> alphas{1.0, 2.0, 3.0};
};

struct SizeSamples {
  int n = 8;
  std::size_t samples = 500;
};

struct TightnessParams {
  int n = 10;
  std::vector<int> k_list{2, 4, 6};
  std::size_t samples = 100;
};

struct DistinguishParams {
  int n = 8;
  int k = 2;
  int alpha = 3;
  std::size_t samples = 200;
};

struct TuneParams {
  int n = 10;
  int k = 4;
  int level = 2;
  std::size_t samples = 50;
};

struct GridParams {
  int n = 8;
  int k = 3;
  std::vector<int> f_list{0, 1, 2};
  std::vector<int> g_list{0, 2, 4};
  std::size_t samples = 20;
};

struct OtocParams {
  std::string mode = "identity";
  int n = 3;
  std::size_t circuits = 20;
  int alpha = 2;
  std::vector<int> n_list{4, 6, 8};
  int k = 2;
  std::size_t samples = 20;
};

struct FannesParams {
  int n = 3;
  std::size_t pairs = 1000;
};

struct MomentParams {
  int n = 3;
  std::vector<int> k_list{1, 2, 3};
  int copies = 2;
  std::size_t samples = 2000;
};

struct DistillParams {
  std::vector<int> m{10};
  std::string target = "T";
  double dmax = 0.5;
  double p = 1.0;
  double eps = 0.0;
};

struct CatalogParams {
  int n = 2;
  std::string cache_dir;
};

struct ReplayParams {
  std::string manifest;
  std::string compare;
};

void register_commands(Cli& cli) {
  cli.command<MagicParams>(
      "magic",
      "Magic measures of a state file: stabilizer Renyi entropies (m<alpha>, or m for every "
      "--alpha), robustness (rob), stabilizer fidelity (fid), extent (ext), max-relative "
      "entropy (dmax) and stabilizer nullity (nullity), all in bits. Every measure vanishes on "
      "stabilizer states. Convex measures need n <= 3.",
      [](CLI::App* cmd, MagicParams& p) {
        cmd->add_option("--state", p.state, "State file")->required()->check(CLI::ExistingFile);
        list_opt(cmd, "--alpha", p.alphas, "Renyi orders used by the 'm' token");
        list_opt(cmd, "--measures", p.measures, "Measures: m<alpha>,m,rob,fid,ext,dmax,nullity");
      },
      [](const MagicParams& p, const Common& c) {
        const auto t = magiclab::state_measures(p.state, p.alphas, p.measures);
        for (const auto& row : t.rows()) {
          std::cout << std::get<std::string>(row[0]) << ": "
                    << format_number(std::get<double>(row[1])) << "\n";
        }
        const auto stem = magiclab::write_result_files(t, c.out);
        std::cout << "wrote " << stem << ".{csv,json,manifest.json}\n";
        return 0;
      });

  cli.command<BuildParams>(
      "build",
      "Build a subset phase state: the uniform superposition over a subset of 2^k basis "
      "states with signs (-1)^f(x). Writes a state file and prints the spec as JSON.",
      [](CLI::App* cmd, BuildParams& p) {
        cmd->add_option("--spec", p.spec, "JSON spec file (replaces the flags below)")
            ->check(CLI::ExistingFile);
        opt(cmd, "--n", p.n, "Qubits");
        opt(cmd, "--k", p.k, "log2 of the subset size");
        opt(cmd, "--fn", p.fn, "Sign function")
            ->check(CLI::IsMember({"truth_table", "kwise", "hypergraph"}));
        opt(cmd, "--t", p.t, "Independence of the kwise sign function");
        cmd->add_option("--fn-seed", p.fn_seed, "Sign function seed (default: from --seed)");
        opt(cmd, "--subset", p.subset, "Subset choice")
            ->check(CLI::IsMember({"prefix", "explicit"}));
        cmd->add_option("--subset-seed", p.subset_seed, "Permutation seed (default: from --seed)");
        cmd->add_option("--elements", p.elements, "Elements of an explicit subset")
            ->delimiter(',');
        opt(cmd, "--state-out", p.state_out, "Output state file");
      },
      [](const BuildParams& p, const Common& c) {
        magiclab::SubsetPhaseSpec spec;
        if (!p.spec.empty()) {
          spec = magiclab::spec_from_json(read_text(p.spec));
        } else {
          spec.n = p.n;
          spec.k = p.k;
          spec.fn_kind = magiclab::function_kind_from_string(p.fn);
          spec.kwise_t = p.t;
          spec.fn_seed = p.fn_seed.value_or(magiclab::stream_seed(c.seed, 0));
          spec.subset_seed = p.subset_seed.value_or(magiclab::stream_seed(c.seed, 1));
          if (p.subset == "explicit") {
            spec.subset_kind = magiclab::SubsetKind::Explicit;
            spec.explicit_subset = p.elements;
          }
        }
        spec.validate();
        magiclab::write_state_file(p.state_out, magiclab::build_subset_phase_state(spec));
        std::cout << magiclab::spec_to_json(spec) << "\n";
        std::cout << "wrote " << p.state_out << " (" << spec.n << " qubits)\n";
        return 0;
      });

  cli.experiment<HaarParams>(
      "haar-baseline",
      "Stabilizer Renyi entropy of Haar random states. Checks that the mean is near the Haar "
      "value (n - 2 at alpha = 2, n/(alpha - 1) above) and that every sample exceeds "
      "n/(4 alpha).",
      [](CLI::App* cmd, HaarParams& p) {
        opt(cmd, "--n", p.n, "Qubits");
        opt(cmd, "--samples", p.samples, "Haar samples");
        list_opt(cmd, "--alpha", p.alphas, "Renyi orders");
      },
      [](const HaarParams& p, const Common& c) {
        return magiclab::haar_baseline(p.n, p.samples, p.alphas, c.seed);
      });

  cli.experiment<SizeSamples>(
      "phase-average",
      "Phase states with random signs on every basis state. Checks that the average of "
      "2^(-M2) is O(2^-n), so these states are highly magic on average.",
      [](CLI::App* cmd, SizeSamples& p) {
        opt(cmd, "--n", p.n, "Qubits (4..10)");
        opt(cmd, "--samples", p.samples, "Samples");
      },
      [](const SizeSamples& p, const Common& c) {
        return magiclab::phase_state_average(p.n, p.samples, c.seed);
      });

  cli.experiment<TightnessParams>(
      "subset-tightness",
      "Subset phase states on 2^k basis states. Checks that their magic is controlled by k: "
      "M0 <= 2k always, M2 falls below k/4 with probability at most 2^(-k/4), and the median "
      "M2/k stays in [1/4, 2].",
      [](CLI::App* cmd, TightnessParams& p) {
        opt(cmd, "--n", p.n, "Qubits");
        list_opt(cmd, "--k", p.k_list, "Subset sizes (log2)");
        opt(cmd, "--samples", p.samples, "Samples per k");
      },
      [](const TightnessParams& p, const Common& c) {
        return magiclab::subset_tightness(p.n, p.k_list, p.samples, c.seed);
      });

  cli.experiment<DistinguishParams>(
      "distinguish",
      "Hadamard-test distinguisher on 2 alpha copies. Checks that subset phase states with "
      "small k are accepted noticeably more often than Haar states, and that the Haar "
      "acceptance is close to 1/2.",
      [](CLI::App* cmd, DistinguishParams& p) {
        opt(cmd, "--n", p.n, "Qubits");
        opt(cmd, "--k", p.k, "Subset size (log2)");
        opt(cmd, "--alpha", p.alpha, "Odd Renyi order (>= 3)");
        opt(cmd, "--samples", p.samples, "Samples per ensemble");
      },
      [](const DistinguishParams& p, const Common& c) {
        return magiclab::distinguisher_gap(p.n, p.k, p.alpha, p.samples, c.seed);
      });

  cli.experiment<TuneParams>(
      "tune-ent",
      "Raise entanglement without changing magic: a random Clifford on 2f qubits of a subset "
      "phase state. Checks that M2 is unchanged and the cut entropy grows.",
      [](CLI::App* cmd, TuneParams& p) {
        opt(cmd, "--n", p.n, "Qubits");
        opt(cmd, "--k", p.k, "Subset size (log2)");
        opt(cmd, "--f", p.level, "Clifford acts on the first 2f qubits");
        opt(cmd, "--samples", p.samples, "Samples");
      },
      [](const TuneParams& p, const Common& c) {
        return magiclab::tune_entanglement(p.n, p.k, p.level, p.samples, c.seed);
      });

  cli.experiment<TuneParams>(
      "tune-magic",
      "Raise magic without changing entanglement: random single-qubit unitaries on g qubits "
      "of a subset phase state. Checks that every cut entropy is unchanged, the average "
      "2^(-M2) decays exponentially in g and the median M2 grows with g.",
      [](CLI::App* cmd, TuneParams& p) {
        opt(cmd, "--n", p.n, "Qubits");
        opt(cmd, "--k", p.k, "Subset size (log2)");
        opt(cmd, "--g", p.level, "Number of rotated qubits");
        opt(cmd, "--samples", p.samples, "Samples");
      },
      [](const TuneParams& p, const Common& c) {
        return magiclab::tune_magic(p.n, p.k, p.level, p.samples, c.seed);
      });

  cli.experiment<GridParams>(
      "independence-grid",
      "Entanglement and magic over a grid of Clifford widths f and rotated-qubit counts g, "
      "showing that the two can be tuned independently.",
      [](CLI::App* cmd, GridParams& p) {
        opt(cmd, "--n", p.n, "Qubits");
        opt(cmd, "--k", p.k, "Subset size (log2)");
        list_opt(cmd, "--f", p.f_list, "Clifford widths");
        list_opt(cmd, "--g", p.g_list, "Rotated-qubit counts");
        opt(cmd, "--samples", p.samples, "Samples per grid point");
      },
      [](const GridParams& p, const Common& c) {
        return magiclab::independence_grid(p.n, p.k, p.f_list, p.g_list, p.samples, c.seed);
      });

  cli.experiment<OtocParams>(
      "otoc",
      "Out-of-time-order correlators. identity: checks that the Pauli-averaged correlator of a "
      "circuit equals its stabilizer entropy identity and equals 1/d^2 for Cliffords. "
      "scrambling: checks that the correlator ratio of subset phase state circuits over Haar "
      "states grows with n.",
      [](CLI::App* cmd, OtocParams& p) {
        opt(cmd, "--mode", p.mode, "identity or scrambling")
            ->check(CLI::IsMember({"identity", "scrambling"}));
        opt(cmd, "--n", p.n, "Qubits (identity mode)");
        opt(cmd, "--circuits", p.circuits, "Random circuits (identity mode)");
        opt(cmd, "--alpha", p.alpha, "Correlator order");
        list_opt(cmd, "--n-list", p.n_list, "Qubit counts (scrambling mode)");
        opt(cmd, "--k", p.k, "Subset size (scrambling mode)");
        opt(cmd, "--samples", p.samples, "Haar samples (scrambling mode)");
      },
      [](const OtocParams& p, const Common& c) {
        if (p.mode == "identity") return magiclab::otoc_identity_check(p.n, p.circuits, p.alpha, c.seed);
        return magiclab::scrambling_experiment(p.n_list, p.k, p.alpha, p.samples, c.seed);
      });

  cli.experiment<FannesParams>(
      "fannes-scan",
      "Continuity of stabilizer entropy: random state pairs spread over trace distance. "
      "Checks the continuity bounds for M1 and M2 on every pair.",
      [](CLI::App* cmd, FannesParams& p) {
        opt(cmd, "--n", p.n, "Qubits (1..4)");
        opt(cmd, "--pairs", p.pairs, "State pairs");
      },
      [](const FannesParams& p, const Common& c) {
        return magiclab::fannes_scan(p.n, p.pairs, c.seed);
      });

  cli.experiment<MomentParams>(
      "moments",
      "Trace distance between the K-copy moment of random subset phase states and the Haar "
      "moment. Checks that it does not increase with the subset size.",
      [](CLI::App* cmd, MomentParams& p) {
        opt(cmd, "--n", p.n, "Qubits");
        list_opt(cmd, "--k", p.k_list, "Subset sizes (log2)");
        opt(cmd, "--copies", p.copies, "Copies K (n * K <= 8)");
        opt(cmd, "--samples", p.samples, "Ensemble size");
      },
      [](const MomentParams& p, const Common& c) {
        return magiclab::moment_distance_table(p.n, p.k_list, p.copies, p.samples, c.seed);
      });

  cli.experiment<DistillParams>(
      "distill-bound",
      "Lower bound on the copies of an input state needed to distill m copies of a target: "
      "(m F(target) + log2 p + log2(1 - eps)) / Dmax(input), with F the stabilizer fidelity "
      "in bits. Rows with a non-positive bound are flagged as vacuous.",
      [](CLI::App* cmd, DistillParams& p) {
        list_opt(cmd, "--m", p.m, "Target copies");
        opt(cmd, "--target", p.target, "T, TT, TTT or a state file (<= 3 qubits)");
        opt(cmd, "--dmax", p.dmax, "Dmax of the input state in bits")->check(CLI::PositiveNumber);
        opt(cmd, "--p", p.p, "Success probability")->check(CLI::Range(0.0, 1.0));
        opt(cmd, "--eps", p.eps, "Allowed error")->check(CLI::Range(0.0, 1.0));
      },
      [](const DistillParams& p, const Common&) {
        return magiclab::distillation_table(p.m, p.target, p.dmax, p.p, p.eps);
      });

  cli.command<CatalogParams>(
      "catalog",
      "Enumerate every n-qubit stabilizer state (n <= 4) and cache the list.",
      [](CLI::App* cmd, CatalogParams& p) {
        opt(cmd, "--n", p.n, "Qubits (1..4)")->check(CLI::Range(1, 4));
        cmd->add_option("--cache-dir", p.cache_dir, "Cache directory (default: --out)");
      },
      [](const CatalogParams& p, const Common& c) {
        const auto dir = p.cache_dir.empty() ? c.out : p.cache_dir;
        const auto catalog = magiclab::load_or_build_catalog(p.n, dir);
        std::cout << catalog.count() << " states\n";
        std::cout << "cache " << dir << "/stabilizers_n" << p.n << ".bin\n";
        return 0;
      });

  cli.command<ReplayParams>(
      "replay",
      "Rerun the experiment described by a manifest file. With --compare, exits 2 unless the "
      "new table matches the given CSV byte for byte.",
      [](CLI::App* cmd, ReplayParams& p) {
        cmd->add_option("--manifest", p.manifest, "Manifest file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--compare", p.compare, "CSV table to compare against")
            ->check(CLI::ExistingFile);
      },
      [](const ReplayParams& p, const Common& c) {
        const auto manifest =
            magiclab::ExperimentManifest::from_json(nlohmann::json::parse(read_text(p.manifest)));
        const auto table = magiclab::replay(manifest);
        const int code = finish(table, c);
        if (!p.compare.empty()) {
          const bool same = table.to_csv() == read_text(p.compare);
          std::cout << (same ? "replay matches " : "replay differs from ") << p.compare << "\n";
          if (!same) return kExitCheckFailed;
        }
        return code;
      });
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  register_commands(cli);
  try {
    cli.app().parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.app().exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.app().exit(e);
  } catch (const CLI::ParseError& e) {
    cli.app().exit(e);
    return kExitUsage;
  }
  try {
    return cli.run();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed + 1;
  }
}
