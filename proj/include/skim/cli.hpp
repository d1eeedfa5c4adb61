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

// Run configuration and the end-to-end pipeline behind tools/skim.

#ifndef SKIM_CLI_HPP_
#define SKIM_CLI_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "skim/aggregation.hpp"
#include "skim/brute_force.hpp"
#include "skim/explicit_greedy.hpp"
#include "skim/graph.hpp"
#include "skim/graph_oracles.hpp"
#include "skim/io.hpp"
#include "skim/oracle.hpp"
#include "skim/reference.hpp"
#include "skim/skim.hpp"
#include "skim/types.hpp"
#include "skim/utility_family.hpp"

namespace skim {

enum class InputKind { kMatrix, kGraph };
enum class Algorithm { kSkim, kLazy, kExact };
enum class ModelKind { kFixed, kIndependentCascade, kExponential };

struct RunConfig {
  std::string input;
  InputKind input_kind = InputKind::kMatrix;

  // Graph inputs only.
  FamilyKind family = FamilyKind::kDistance;
  std::optional<std::string> alpha;  // default "inverse" for distance and reverse_rank
  ModelKind model = ModelKind::kFixed;
  std::optional<double> model_param;  // IC probability or exponential rate
  std::size_t instances = 1;

  std::size_t ell = 1;
  std::vector<double> gamma;  // empty: all ones

  std::uint64_t rng_seed = 0;
  Algorithm algorithm = Algorithm::kSkim;
  double epsilon = 0.1;
  std::optional<std::size_t> k;
  double lambda = 0.5;

  std::string output;  // empty: stdout
  bool verify = false;
};

inline constexpr std::size_t kVerifyMaxItems = 1000;
inline constexpr std::size_t kOptimumMaxItems = 20;
inline constexpr std::size_t kOptimumMaxSize = 6;

/// Throws InputError on an inconsistent configuration.
inline void validate(const RunConfig& c) {
  if (c.input.empty()) throw InputError("no input path");
  if (c.input_kind == InputKind::kMatrix) {
    if (c.alpha) throw InputError("--alpha applies to graph inputs only");
    if (c.model != ModelKind::kFixed || c.model_param || c.instances != 1)
      throw InputError("model options apply to graph inputs only");
  } else {
    const bool uses_alpha = c.family == FamilyKind::kDistance || c.family == FamilyKind::kReverseRank;
    if (c.alpha && !uses_alpha)
      throw InputError("--alpha applies to distance and reverse_rank families only");
    if (c.instances == 0) throw InputError("--instances must be at least 1");
    if (c.model == ModelKind::kFixed && c.model_param)
      throw InputError("--model-param needs --model ic or exp");
  }
  if (c.ell == 0) throw InputError("--ell must be at least 1");
  if (!c.gamma.empty() && c.gamma.size() != c.ell)
    throw InputError("--gamma must list exactly ell weights");
  if (c.algorithm == Algorithm::kSkim) {
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw InputError("--epsilon must lie in (0, 1)");
    if (!(c.lambda > 0.0 && c.lambda < 1.0)) throw InputError("--lambda must lie in (0, 1)");
    if (c.k && *c.k < 2) throw InputError("--k must be at least 2");
  } else if (c.algorithm == Algorithm::kLazy) {
    if (!(c.epsilon >= 0.0 && c.epsilon < 1.0)) throw InputError("--epsilon must lie in [0, 1)");
  }
}

inline AggregationSpec aggregation_of(const RunConfig& c) {
  if (c.gamma.empty()) return AggregationSpec::top_sum(c.ell);
  return AggregationSpec(c.gamma);
}

inline InstanceModel model_of(const RunConfig& c) {
  switch (c.model) {
    case ModelKind::kFixed: return FixedModel{};
    case ModelKind::kIndependentCascade: return IndependentCascadeModel{c.model_param};
    case ModelKind::kExponential: return ExponentialLengthModel{c.model_param};
  }
  return FixedModel{};
}

inline UtilityFamily family_of(const RunConfig& c) {
  const Alpha alpha = parse_alpha(c.alpha.value_or("inverse"));
  switch (c.family) {
    case FamilyKind::kDistance: return UtilityFamily::distance(alpha);
    case FamilyKind::kReverseRank: return UtilityFamily::reverse_rank(alpha);
    case FamilyKind::kReachability: return UtilityFamily::reachability();
    case FamilyKind::kSurvivalThreshold: return UtilityFamily::survival_threshold();
  }
  return UtilityFamily::reachability();
}

namespace detail {

inline void report_verification(const SparseUtilityMatrix& m, const AggregationSpec& spec,
                                const GreedySequence& seq, double epsilon, std::ostream& log) {
  char buf[160];
  log << "verify: rank,item,exact_gain,max_gain,ratio\n";
  std::vector<ItemId> prefix;
  double min_ratio = 1.0;
  std::size_t good = 0, counted = 0;
  for (std::size_t r = 0; r < seq.size(); ++r) {
    const auto gains = marginal_gains(m, spec, prefix);
    const double best = *std::max_element(gains.begin(), gains.end());
    const double ratio = best > 0.0 ? seq[r].exact_gain / best : 1.0;
    std::snprintf(buf, sizeof buf, "verify: %zu,%u,%.12g,%.12g,%.6f\n", r + 1, seq[r].item,
                  seq[r].exact_gain, best, ratio);
    log << buf;
    if (!seq[r].below_cutoff) {
      ++counted;
      min_ratio = std::min(min_ratio, ratio);
      if (ratio >= 1.0 - epsilon) ++good;
    }
    prefix.push_back(seq[r].item);
  }
  const double total = exact_influence(m, spec, prefix);
  const double reported = seq.empty() ? 0.0 : seq.back().cumulative_influence;
  std::snprintf(buf, sizeof buf,
                "verify: min ratio %.6f; %zu of %zu steps at least 1-epsilon; "
                "final cumulative %.12g, exact influence %.12g\n",
                min_ratio, good, counted, reported, total);
  log << buf;

  if (m.n_items() > kOptimumMaxItems) {
    log << "verify: optimum skipped (more than " << kOptimumMaxItems << " items)\n";
    return;
  }
  const std::size_t top = std::min({seq.size(), m.n_items(), kOptimumMaxSize});
  for (std::size_t s = 1; s <= top; ++s) {
    std::vector<ItemId> first(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(s));
    const double mine = exact_influence(m, spec, first);
    const double opt = optimal_subset(m, spec, s).second;
    std::snprintf(buf, sizeof buf, "verify: s=%zu prefix %.12g optimum %.12g ratio %.6f\n", s, mine,
                  opt, opt > 0.0 ? mine / opt : 1.0);
    log << buf;
  }
}

template <UtilityOracle P>
GreedySequence run_skim_on(const P& problem, const AggregationSpec& spec, const RunConfig& c) {
  SkimOptions opt;
  opt.k = c.k;
  opt.lambda = c.lambda;
  opt.epsilon = c.epsilon;
  opt.rng_seed = c.rng_seed;
  return run_skim(problem, spec, opt);
}

inline GreedySequence run_explicit(const SparseUtilityMatrix& m, const AggregationSpec& spec,
                                   const RunConfig& c) {
  if (c.algorithm == Algorithm::kLazy) return lazy_greedy(m, spec, c.epsilon);
  return exact_greedy(m, spec);
}

}  // namespace detail

/// Runs the configured pipeline, writing the CSV to `out` (or c.output) and
/// diagnostics to `log`. Returns the process exit status.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& log) {
  try {
    validate(c);
    const AggregationSpec spec = aggregation_of(c);
    GreedySequence seq;
    std::optional<SparseUtilityMatrix> explicit_matrix;

    if (c.input_kind == InputKind::kMatrix) {
      explicit_matrix.emplace(read_matrix(c.input));
      if (c.verify && explicit_matrix->n_items() > kVerifyMaxItems)
        throw InputError("--verify is limited to " + std::to_string(kVerifyMaxItems) + " items");
      if (c.algorithm == Algorithm::kSkim) {
        seq = detail::run_skim_on(MatrixOracle(*explicit_matrix), spec, c);
      } else {
        seq = detail::run_explicit(*explicit_matrix, spec, c);
      }
    } else {
      const DiGraph g = read_graph(c.input);
      if (c.verify && g.n > kVerifyMaxItems)
        throw InputError("--verify is limited to " + std::to_string(kVerifyMaxItems) + " items");
      const GraphInstanceSet set = simulate_instances(g, model_of(c), c.instances, c.rng_seed);
      const UtilityFamily family = family_of(c);
      if (c.algorithm != Algorithm::kSkim || c.verify) {
        explicit_matrix.emplace(reference::materialize(set, family));
      }
      if (c.algorithm == Algorithm::kSkim) {
        seq = detail::run_skim_on(GraphOracle(set, family), spec, c);
      } else {
        seq = detail::run_explicit(*explicit_matrix, spec, c);
      }
    }

    if (c.output.empty()) {
      emit_results(seq, out);
    } else {
      emit_results(seq, c.output);
    }
    if (c.verify) detail::report_verification(*explicit_matrix, spec, seq, c.epsilon, log);
    return 0;
  } catch (const ParseError& e) {
    log << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    log << "input error: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    log << "contract violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace skim

#endif  // SKIM_CLI_HPP_
