#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kakeya/quadric.hpp"

namespace kakeya {

// A point set together with a line family living in one space.
struct Configuration {
    Space space;
    PointSet points;
    std::vector<Line> lines;
    std::string label;
};

// Sphere configuration P = {Q(x) = 1} with the family of null-direction
// lines {x + tv: Q(x)=1, <x,v>=0, Q(v)=0}, generated by iterating null
// directions v and solving inside v-perp, then canonicalized and
// deduplicated. pair_* record how many generating pairs (x,v) produced each
// line.
struct SphereBuild {
    Configuration config;
    long pair_total = 0;
    long pair_min = 0;
    long pair_max = 0;
};
SphereBuild build_sphere_example(const Space& s, const QuadraticForm& q);

// Heisenberg group configuration {(z1,z2,z3) in GF(p^2)^3:
// Im(z3) = Im(z1 * conj(z2))}, materialized by exhaustive scan. The line
// family is not part of the build; recover it with lines_contained.
Configuration build_heisenberg(const Field& f);

// Exactly the canonical lines all of whose q points lie in P.
std::vector<Line> lines_contained(const Space& s, const PointSet& p, int jobs = 1);

struct WolffAudit {
    long max_lines = 0;
    Flat argmax{};
    double ratio = 0.0; // max_lines / q^(k-1)
};
WolffAudit wolff_audit(const Space& s, std::span<const Line> lines, int k, int jobs = 1);

struct DirectionAudit {
    bool all_distinct = true;
    std::map<Vec, long> histogram; // canonical direction -> multiplicity
};
DirectionAudit direction_audit(std::span<const Line> lines);

nlohmann::ordered_json line_to_json(const Line& l);
nlohmann::ordered_json flat_to_json(const Flat& f);
nlohmann::ordered_json config_to_json(const Configuration& c);

} // namespace kakeya
