// Copyright 2026 The Authors.
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

// Greedy influence maximization from the command line.
//
//   skim --input graph.txt --input-kind graph --family distance --alpha exp:2
//        --model exp --instances 8 --ell 2 --algorithm skim --output seeds.csv
//
// The default --rng-seed is read from SKIM_RNG_SEED when set.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "skim/cli.hpp"

int main(int argc, char** argv) {
  skim::RunConfig c;
  if (const char* env = std::getenv("SKIM_RNG_SEED")) {
    try {
      c.rng_seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "SKIM_RNG_SEED must be a non-negative integer\n";
      return 2;
    }
  }

  CLI::App app{"Greedy influence maximization with sketch-based estimates"};
  app.option_defaults()->always_capture_default();

  const std::map<std::string, skim::InputKind> kinds{{"matrix", skim::InputKind::kMatrix},
                                                     {"graph", skim::InputKind::kGraph}};
  const std::map<std::string, skim::FamilyKind> families{
      {"distance", skim::FamilyKind::kDistance},
      {"reverse_rank", skim::FamilyKind::kReverseRank},
      {"reachability", skim::FamilyKind::kReachability},
      {"survival", skim::FamilyKind::kSurvivalThreshold}};
  const std::map<std::string, skim::ModelKind> models{
      {"fixed", skim::ModelKind::kFixed},
      {"ic", skim::ModelKind::kIndependentCascade},
      {"exp", skim::ModelKind::kExponential}};
  const std::map<std::string, skim::Algorithm> algorithms{{"skim", skim::Algorithm::kSkim},
                                                          {"lazy", skim::Algorithm::kLazy},
                                                          {"exact", skim::Algorithm::kExact}};

  std::string kind = "matrix", family = "distance", model = "fixed", algorithm = "skim";
  app.add_option("--input", c.input, "Input file")->required()->check(CLI::ExistingFile);
  app.add_option("--input-kind", kind, "matrix or graph")->check(CLI::IsMember(kinds));
  app.add_option("--family", family, "Graph utility")->check(CLI::IsMember(families));
  std::string alpha;
  auto* alpha_opt = app.add_option("--alpha", alpha, "threshold:T, inverse, exp:sigma or table:path")
                        ->default_str("inverse");
  app.add_option("--model", model, "Instance model")->check(CLI::IsMember(models));
  double model_param = 0.0;
  auto* model_param_opt =
      app.add_option("--model-param", model_param, "Uniform IC probability or exponential rate")
          ->default_str("");
  app.add_option("--instances", c.instances, "Number of simulated instances");
  app.add_option("--ell", c.ell, "Aggregation depth");
  app.add_option("--gamma", c.gamma, "Aggregation weights, comma separated")
      ->delimiter(',')
      ->default_str("all ones");
  app.add_option("--rng-seed", c.rng_seed, "Random seed");
  app.add_option("--algorithm", algorithm, "Selection algorithm")->check(CLI::IsMember(algorithms));
  app.add_option("--epsilon", c.epsilon, "Accuracy parameter");
  std::size_t k = 0;
  auto* k_opt = app.add_option("--k", k, "Sample size")->default_str("from epsilon");
  app.add_option("--lambda", c.lambda, "Threshold decrease factor");
  app.add_option("--output", c.output, "Output CSV")->default_str("stdout");
  app.add_flag("--verify", c.verify, "Compare against brute-force baselines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  c.input_kind = kinds.at(kind);
  c.family = families.at(family);
  c.model = models.at(model);
  c.algorithm = algorithms.at(algorithm);
  if (*alpha_opt) c.alpha = alpha;
  if (*model_param_opt) c.model_param = model_param;
  if (*k_opt) c.k = k;
  return skim::run(c, std::cout, std::cerr);
}
