// Copyright 2026 The routegame Authors
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

// Command-line front end. All engine work goes through the C interface in
// routegame.h; this file only parses arguments, moves strings between files
// and the engine, and maps statuses to exit codes (0 success, 1 failed
// verification, 2 usage or input error).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "routegame.h"

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct GameHandle {
  rg_game* g = nullptr;
  ~GameHandle() { rg_game_free(g); }
};

struct ProfileHandle {
  rg_profile* p = nullptr;
  ~ProfileHandle() { rg_profile_free(p); }
};

// Owns a string returned by the engine.
class EngineStr {
 public:
  EngineStr() = default;
  ~EngineStr() { rg_string_free(s_); }
  EngineStr(const EngineStr&) = delete;
  EngineStr& operator=(const EngineStr&) = delete;
  char** out() { return &s_; }
  std::string str() const { return s_ == nullptr ? std::string() : s_; }

 private:
  char* s_ = nullptr;
};

int ExitFor(rg_status status) {
  if (status == RG_OK) return 0;
  std::cerr << "error: " << rg_last_error() << "\n";
  return status == RG_ERROR_VERIFICATION ? kExitVerification : kExitUsage;
}

std::optional<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool WriteArtifact(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return out.good();
}

// JSON artifacts leave the engine without a final newline; emit files and
// stdout with one so the bytes agree everywhere.
std::string WithNewline(const std::string& s) {
  if (!s.empty() && s.back() == '\n') return s;
  return s + "\n";
}

struct Common {
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format = "json";
};

// Returns the path for a named artifact under --out-dir, creating the
// directory on first use; empty string when --out-dir is unset.
std::string OutPath(const Common& common, const std::string& name) {
  if (common.out_dir.empty()) return "";
  std::filesystem::create_directories(common.out_dir);
  return (std::filesystem::path(common.out_dir) / name).string();
}

bool SaveIfRequested(const Common& common, const std::string& name,
                     const std::string& content) {
  const std::string path = OutPath(common, name);
  if (path.empty()) return true;
  return WriteArtifact(path, content);
}

bool ParseInt64(const std::string& s, std::int64_t* out) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) return false;
    *out = v;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// ---- simulate ------------------------------------------------------------

bool IsBuiltinStrategy(const std::string& s) {
  return s == "line-spe" || s == "tree-spe" || s == "ring2" ||
         s == "ring-special";
}

int GameDepth(const rg_game* game, int* depth_out) {
  EngineStr desc;
  if (rg_status s = rg_game_describe(game, desc.out()); s != RG_OK)
    return ExitFor(s);
  *depth_out = nlohmann::json::parse(desc.str()).at("depth").get<int>();
  return 0;
}

// Builds the game + profile pair the simulate/verify commands operate on,
// either from a profile file or by constructing a named profile on a
// topology.
int LoadOrConstruct(const std::string& strategy,
                    const std::string& profile_path,
                    const std::string& topology_path,
                    std::optional<std::int64_t> rd, GameHandle* game,
                    ProfileHandle* profile) {
  if (!IsBuiltinStrategy(strategy)) {
    const std::string path = strategy == "file" ? profile_path : strategy;
    if (path.empty()) {
      std::cerr << "error: --strategy file needs --profile FILE\n";
      return kExitUsage;
    }
    std::optional<std::string> text = ReadFile(path);
    if (!text) return kExitUsage;
    return ExitFor(rg_profile_parse(text->c_str(), &game->g, &profile->p));
  }
  if (topology_path.empty()) {
    std::cerr << "error: --strategy " << strategy << " needs --topology\n";
    return kExitUsage;
  }
  std::optional<std::string> topo = ReadFile(topology_path);
  if (!topo) return kExitUsage;
  std::int64_t reward = 0;
  if (strategy == "ring-special") {
    // The applicable reward is fixed by the stage count; probe the depth
    // first, then check any user-supplied reward against it.
    GameHandle probe;
    if (rg_status s = rg_game_create_json(topo->c_str(), 0, nullptr, &probe.g);
        s != RG_OK)
      return ExitFor(s);
    int depth = 0;
    if (int rc = GameDepth(probe.g, &depth); rc != 0) return rc;
    EngineStr special;
    if (rg_status s = rg_ring_special_reward(depth, special.out()); s != RG_OK)
      return ExitFor(s);
    if (!ParseInt64(special.str(), &reward)) {
      std::cerr << "error: reward " << special.str()
                << " exceeds the 64-bit play range\n";
      return kExitUsage;
    }
    if (rd && *rd != reward) {
      std::cerr << "error: ring-special at " << depth << " stages plays at "
                << reward << ", not " << *rd << "\n";
      return kExitUsage;
    }
  } else {
    if (!rd) {
      std::cerr << "error: --strategy " << strategy << " needs --rd\n";
      return kExitUsage;
    }
    reward = *rd;
  }
  if (rg_status s =
          rg_game_create_json(topo->c_str(), reward, nullptr, &game->g);
      s != RG_OK)
    return ExitFor(s);
  return ExitFor(rg_profile_construct(game->g, strategy.c_str(), &profile->p));
}

int CmdSimulate(const Common& common, const std::string& strategy,
                const std::string& profile_path,
                const std::string& topology_path,
                std::optional<std::int64_t> rd, int trials) {
  if (common.format != "json" && common.format != "dot") {
    std::cerr << "error: simulate emits json or dot\n";
    return kExitUsage;
  }
  GameHandle game;
  ProfileHandle profile;
  if (int rc = LoadOrConstruct(strategy, profile_path, topology_path, rd,
                               &game, &profile);
      rc != 0)
    return rc;
  EngineStr report;
  if (rg_status s =
          rg_simulate(game.g, profile.p, trials, common.seed, report.out());
      s != RG_OK)
    return ExitFor(s);
  EngineStr dot;
  if (rg_status s = rg_outcome_dot(game.g, profile.p, dot.out()); s != RG_OK)
    return ExitFor(s);
  const std::string report_text = WithNewline(report.str());
  if (!SaveIfRequested(common, "simulate.json", report_text)) return kExitUsage;
  if (!SaveIfRequested(common, "tree.dot", dot.str())) return kExitUsage;
  std::cout << (common.format == "dot" ? dot.str() : report_text);
  return 0;
}

// ---- growth --------------------------------------------------------------

int CmdGrowth(const Common& common, int max_k) {
  if (common.format != "csv" && common.format != "json") {
    std::cerr << "error: growth emits csv\n";
    return kExitUsage;
  }
  EngineStr csv;
  if (rg_status s = rg_growth_table(max_k, csv.out()); s != RG_OK)
    return ExitFor(s);
  if (!SaveIfRequested(common, "growth.csv", csv.str())) return kExitUsage;
  std::cout << csv.str();
  return 0;
}

// ---- ring-matrix ---------------------------------------------------------

int CmdRingMatrix(const Common& common, std::int64_t rd,
                  const std::string& resolution) {
  if (common.format != "json" && common.format != "csv") {
    std::cerr << "error: ring-matrix emits json or csv\n";
    return kExitUsage;
  }
  EngineStr json;
  EngineStr csv;
  if (rg_status s =
          rg_ring_matrix(rd, resolution.c_str(), json.out(), csv.out());
      s != RG_OK)
    return ExitFor(s);
  const std::string json_text = WithNewline(json.str());
  if (!SaveIfRequested(common, "ring_matrix.json", json_text))
    return kExitUsage;
  if (!SaveIfRequested(common, "ring_matrix.csv", csv.str()))
    return kExitUsage;
  std::cout << (common.format == "csv" ? csv.str() : json_text);
  return 0;
}

// ---- min-incentive -------------------------------------------------------

int CmdMinIncentive(const Common& common, const std::string& topology_path,
                    std::int64_t bound) {
  std::optional<std::string> topo = ReadFile(topology_path);
  if (!topo) return kExitUsage;
  GameHandle game;
  if (rg_status s = rg_game_create_json(topo->c_str(), 0, nullptr, &game.g);
      s != RG_OK)
    return ExitFor(s);
  EngineStr json;
  if (rg_status s = rg_min_incentive(game.g, bound, json.out()); s != RG_OK)
    return ExitFor(s);
  const std::string text = WithNewline(json.str());
  if (!SaveIfRequested(common, "min_incentive.json", text)) return kExitUsage;
  std::cout << text;
  return 0;
}

// ---- construct -----------------------------------------------------------

int CmdConstruct(const Common& common, const std::string& shape,
                 std::optional<std::int64_t> rd, std::optional<int> depth,
                 const std::string& topology_path, const std::string& out) {
  GameHandle game;
  std::string kind;
  if (shape == "line") {
    if (!depth || !rd) {
      std::cerr << "error: line needs --depth and --rd\n";
      return kExitUsage;
    }
    if (rg_status s = rg_game_create_line(*depth, *rd, &game.g); s != RG_OK)
      return ExitFor(s);
    kind = "line-spe";
  } else if (shape == "tree") {
    if (topology_path.empty() || !rd) {
      std::cerr << "error: tree needs --topology and --rd\n";
      return kExitUsage;
    }
    std::optional<std::string> topo = ReadFile(topology_path);
    if (!topo) return kExitUsage;
    if (rg_status s = rg_game_create_json(topo->c_str(), *rd, nullptr, &game.g);
        s != RG_OK)
      return ExitFor(s);
    kind = "tree-spe";
  } else if (shape == "ring2") {
    if (!rd) {
      std::cerr << "error: ring2 needs --rd\n";
      return kExitUsage;
    }
    if (rg_status s = rg_game_create_ring(2, *rd, &game.g); s != RG_OK)
      return ExitFor(s);
    kind = "ring2";
  } else if (shape == "ring-special") {
    if (!depth) {
      std::cerr << "error: ring-special needs --depth\n";
      return kExitUsage;
    }
    EngineStr special;
    if (rg_status s = rg_ring_special_reward(*depth, special.out()); s != RG_OK)
      return ExitFor(s);
    std::int64_t reward = 0;
    if (!ParseInt64(special.str(), &reward)) {
      std::cerr << "error: reward " << special.str()
                << " exceeds the 64-bit play range\n";
      return kExitUsage;
    }
    if (rd && *rd != reward) {
      std::cerr << "error: ring-special at " << *depth << " stages plays at "
                << reward << ", not " << *rd << "\n";
      return kExitUsage;
    }
    if (rg_status s = rg_game_create_ring(*depth, reward, &game.g); s != RG_OK)
      return ExitFor(s);
    kind = "ring-special";
  } else {
    std::cerr << "error: unknown shape " << shape << "\n";
    return kExitUsage;
  }
  ProfileHandle profile;
  if (rg_status s = rg_profile_construct(game.g, kind.c_str(), &profile.p);
      s != RG_OK)
    return ExitFor(s);
  EngineStr json;
  if (rg_status s = rg_profile_to_json(game.g, profile.p, json.out());
      s != RG_OK)
    return ExitFor(s);
  std::filesystem::path target(out);
  if (!common.out_dir.empty() && target.is_relative()) {
    std::filesystem::create_directories(common.out_dir);
    target = std::filesystem::path(common.out_dir) / target;
  }
  if (!WriteArtifact(target.string(), WithNewline(json.str())))
    return kExitUsage;
  std::cout << target.string() << "\n";
  return 0;
}

// ---- verify --------------------------------------------------------------

int CmdVerify(const Common& common, const std::string& profile_path,
              const std::string& mode) {
  std::optional<std::string> text = ReadFile(profile_path);
  if (!text) return kExitUsage;
  GameHandle game;
  ProfileHandle profile;
  if (rg_status s = rg_profile_parse(text->c_str(), &game.g, &profile.p);
      s != RG_OK)
    return ExitFor(s);
  EngineStr verdict;
  const rg_status status =
      rg_verify(game.g, profile.p, mode.c_str(), verdict.out());
  if (status != RG_OK && status != RG_ERROR_VERIFICATION)
    return ExitFor(status);
  const std::string out = WithNewline(verdict.str());
  if (!SaveIfRequested(common, "verdict.json", out)) return kExitUsage;
  std::cout << out;
  return status == RG_OK ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Route-distribution game experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "RNG seed for generated schedules")
      ->capture_default_str();
  app.add_option("--out-dir", common.out_dir,
                 "Directory for artifact files (stdout only when unset)");
  app.add_option("--format", common.format, "Stdout format: json, csv or dot")
      ->capture_default_str();

  // simulate
  std::string sim_strategy;
  std::string sim_profile;
  std::string sim_topology;
  std::int64_t sim_rd = -1;
  int sim_trials = 50;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run the asynchronous protocol and compare schedules");
  sim->add_option("--strategy", sim_strategy,
                  "line-spe|tree-spe|ring2|ring-special, 'file', or a "
                  "profile path")
      ->required();
  sim->add_option("--profile", sim_profile, "Profile JSON (with 'file')");
  sim->add_option("--topology", sim_topology, "Topology JSON file");
  sim->add_option("--rd", sim_rd, "Destination reward");
  sim->add_option("--trials", sim_trials, "Random fair schedules to try")
      ->capture_default_str();

  // growth
  int growth_max_k = 7;
  CLI::App* growth =
      app.add_subcommand("growth", "Tabulate the minimum-reward recurrence");
  growth->add_option("--max-k", growth_max_k, "Last depth to tabulate")
      ->required();

  // ring-matrix
  std::int64_t matrix_rd = 6;
  std::string matrix_resolution = "searched";
  CLI::App* matrix = app.add_subcommand(
      "ring-matrix", "Two-player table of the 3-stage ring");
  matrix->add_option("--rd", matrix_rd, "Destination reward")->required();
  matrix
      ->add_option("--resolution", matrix_resolution,
                   "Final-stage duel handling: searched or literal")
      ->capture_default_str();

  // min-incentive
  std::string mi_topology;
  std::int64_t mi_bound = 64;
  CLI::App* mi = app.add_subcommand(
      "min-incentive", "Smallest reward with a spanning equilibrium");
  mi->add_option("--topology", mi_topology, "Topology JSON file")->required();
  mi->add_option("--bound", mi_bound, "Search cap")->capture_default_str();

  // construct
  std::string cons_shape;
  std::int64_t cons_rd = -1;
  int cons_depth = -1;
  std::string cons_topology;
  std::string cons_out;
  CLI::App* cons =
      app.add_subcommand("construct", "Build a named strategy profile");
  cons->add_option("--shape", cons_shape, "line|tree|ring2|ring-special")
      ->required();
  cons->add_option("--rd", cons_rd, "Destination reward");
  cons->add_option("--depth", cons_depth, "Number of stages");
  cons->add_option("--topology", cons_topology, "Topology JSON (tree shape)");
  cons->add_option("--out", cons_out, "Output profile path")->required();

  // verify
  std::string verify_profile;
  std::string verify_mode;
  CLI::App* verify =
      app.add_subcommand("verify", "Check a profile for equilibrium");
  verify->add_option("--profile", verify_profile, "Profile JSON file")
      ->required();
  verify->add_option("--mode", verify_mode, "nash or spe")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (sim->parsed()) {
    std::optional<std::int64_t> rd;
    if (sim->count("--rd") > 0) rd = sim_rd;
    return CmdSimulate(common, sim_strategy, sim_profile, sim_topology, rd,
                       sim_trials);
  }
  if (growth->parsed()) return CmdGrowth(common, growth_max_k);
  if (matrix->parsed()) return CmdRingMatrix(common, matrix_rd,
                                             matrix_resolution);
  if (mi->parsed()) return CmdMinIncentive(common, mi_topology, mi_bound);
  if (cons->parsed()) {
    std::optional<std::int64_t> rd;
    if (cons->count("--rd") > 0) rd = cons_rd;
    std::optional<int> depth;
    if (cons->count("--depth") > 0) depth = cons_depth;
    return CmdConstruct(common, cons_shape, rd, depth, cons_topology,
                        cons_out);
  }
  if (verify->parsed()) return CmdVerify(common, verify_profile, verify_mode);
  return kExitUsage;
}
