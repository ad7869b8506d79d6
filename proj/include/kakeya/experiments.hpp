#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kakeya/construct.hpp"
#include "kakeya/incidence.hpp"
#include "kakeya/reguli.hpp"
#include "kakeya/report.hpp"

namespace kakeya {

struct ExperimentConfig {
    std::string experiment = "all";
    int p = 3;
    int degree = 1;
    std::vector<int> form = {1, 1, 1, 1};
    std::string frame = "model"; // model | random
    int n_refine = 3;
    std::uint64_t seed = 42;
    int jobs = 1;
    std::string out;            // empty -> stdout
    std::string format = "json"; // json | csv
};

nlohmann::ordered_json config_json(const ExperimentConfig& cfg);
std::vector<std::string> experiment_names();

// Runs the named experiment (UsageError when unknown). Assertion results are
// embedded in the report; resource caps propagate as ResourceError.
Report run_experiment(const ExperimentConfig& cfg);

// Seeded instance builders shared by the runner, the tests, and the
// acceptance suite. All draws go through kakeya::bounded on std::mt19937_64.
std::vector<Line> random_direction_separated(const Space& s, int count,
                                             std::mt19937_64& gen);
std::array<Regulus, 3> random_parallel_reguli(const Space& s, std::mt19937_64& gen);
std::vector<Line> sample_lines(std::span<const Line> from, size_t count,
                               std::mt19937_64& gen);
std::vector<boost::dynamic_bitset<>> random_relation(int a_size, int b_size,
                                                     int density_permille,
                                                     std::mt19937_64& gen);

} // namespace kakeya
