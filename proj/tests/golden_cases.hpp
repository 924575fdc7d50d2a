// CLI invocations whose outputs are pinned as golden files. Each case writes
// its report (and any mesh or polyline artifacts) under a per-run directory;
// file names match tests/golden/.
#pragma once

#include <string>
#include <vector>

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;       // without output flags
  std::vector<std::string> artifacts;  // extra flags: "--out-obj" / "--out-csv"
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {"zset_0_1", {"zset", "--m", "0", "--n", "1"}, {}},
      {"zset_0_3", {"zset", "--m", "0", "--n", "3"}, {}},
      {"sphere_0_1", {"sphere", "--m", "0", "--n", "1", "--grid", "128"}, {"--out-csv"}},
      {"sphere_2_0", {"sphere", "--m", "2", "--n", "0", "--grid", "128"}, {}},
      {"winding_0_6", {"winding", "--m", "0", "--n", "6"}, {}},
      {"winding_0_2", {"winding", "--m", "0", "--n", "2"}, {}},
      {"knots_1_4", {"knots", "--m", "1", "--n", "4", "--grid", "128"}, {"--out-csv"}},
      {"fresnel", {"fresnel", "--epsilon", "2.0,2.5,3.0", "--subdiv", "2"}, {"--out-obj"}},
      {"eigenline", {"eigenline", "--epsilon", "2.0,2.5,3.0", "--subdiv", "3"}, {"--out-obj"}},
      {"eigenline_flat",
       {"eigenline", "--epsilon", "2,3,4", "--section", "constant-trace", "--subdiv", "3",
        "--tube-radius", "0.2"},
       {}},
  };
  return cases;
}

inline std::string artifact_extension(const std::string& flag) {
  return flag == "--out-obj" ? ".obj" : ".csv";
}

// Full argument list writing into `dir`.
inline std::vector<std::string> golden_args(const GoldenCase& c, const std::string& dir) {
  std::vector<std::string> args = c.args;
  args.push_back("--out");
  args.push_back(dir + "/" + c.name + ".json");
  for (const std::string& flag : c.artifacts) {
    args.push_back(flag);
    args.push_back(dir + "/" + c.name + artifact_extension(flag));
  }
  return args;
}

inline std::vector<std::string> golden_files(const GoldenCase& c) {
  std::vector<std::string> files{c.name + ".json"};
  for (const std::string& flag : c.artifacts) files.push_back(c.name + artifact_extension(flag));
  return files;
}
