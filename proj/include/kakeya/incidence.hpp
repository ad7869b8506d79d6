#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "kakeya/geom.hpp"

namespace kakeya {

// Incidence tables for a point set and line family: |I|, the per-line
// restriction counts |l /\ P| and the per-point multiplicities mu(p).
// Double counting sum(mu) = sum(|l /\ P|) = |I| holds by construction and is
// re-verified.
struct IncidenceStructure {
    long long incidences = 0;
    std::vector<int> line_restriction; // indexed like the input family
    std::vector<long> mu;              // indexed by point key, zero off P
};
IncidenceStructure incidence_tables(const Space& s, const PointSet& p,
                                    std::span<const Line> lines);

// Indices b with weight(b) >= total/(2|B|), exact rational comparison.
// The kept weight is at least total/2.
std::vector<size_t> popularity_refine(std::span<const long> weights, long total);

// Relation between A and B given as per-b adjacency bitsets over A.
// X is the incidence count; pairs counts (a,a',b) with a != a', both ~ b;
// triples counts (a,a',a'',b) with a,a',a'' distinct, all ~ b.
// Precondition (the lemma's X >> |B| with factor 2): X >= 2|B|.
struct CzCounts {
    long long x = 0;
    long long pairs = 0;
    long long triples = 0;
};
CzCounts cz_counts(const std::vector<boost::dynamic_bitset<>>& rel);
long long cz_pairs(const std::vector<boost::dynamic_bitset<>>& rel);
long long cz_triples(const std::vector<boost::dynamic_bitset<>>& rel);

struct BoundCheck {
    long long incidences = 0;
    double bound = 0.0;
    double ratio = 0.0;
};
// |I| against |P|^(1/2)|L| + |P| (Cauchy-Schwarz; constant is 1, suite
// asserts ratio <= 8).
BoundCheck easy_bound_check(const Space& s, const PointSet& p, std::span<const Line> lines);
// |I| against |P|^(1/2)|L|^(3/4)|F|^(1/4) + |P| + |L|; requires a
// direction-separated family; measured only, never asserted.
BoundCheck wip_bound_check(const Space& s, const PointSet& p, std::span<const Line> lines);

struct PlateNumber {
    long max = 0;
    Flat argmax{};
};
PlateNumber plate_number(const Space& s, std::span<const Line> lines, int jobs = 1);

// One stage of the alternating popularity refinement.
struct StageLog {
    long points = 0;
    long lines = 0;
    long long incidences = 0;
    long plate = -1;      // -1 when diagnostics are off
    long max_in_3flat = -1;
};

struct RefinementReport {
    int dyadic_class = 0;      // chosen class [2^j, 2^(j+1)) of mu_0
    long long alpha_num = 1;   // alpha = q / 2^j, reduced
    long long alpha_den = 1;
    std::vector<StageLog> stages; // stage 0 (after the dyadic cut) .. stage N
    PointSet final_points;
    std::vector<Line> final_lines;
};

// Dyadic pigeonhole on mu_0, then N alternating line/point popularity
// stages with thresholds |I|/(2|L|) and |I|/(4|P|). Guarantees
// |I^(k+1)| >= |I^(k)|/4 and subset monotonicity at every stage.
RefinementReport refine_pipeline(const Space& s, const PointSet& p0,
                                 std::span<const Line> l0, int n_stages,
                                 bool diagnostics = false, int jobs = 1);

// H-shaped quintuple counts over (P2, L2): h0 counts
// (p1,p2,l,l1,l2) with p1 != p2 on l, p1 on l1, p2 on l2, l != l1,l2;
// h1 keeps the skew (l1,l2); s0 counts ordered skew pairs; sum_c is the
// connecting-set total computed by the independent per-pair route, so
// sum_c == h1 is a two-route identity; s1 and sum_c3 cover the popular
// pairs and their triple connections with all six contact points distinct.
struct HCount {
    long long h0 = 0;
    long long h1 = 0;
    long long s0 = 0;
    long long s1 = 0;
    long long sum_c = 0;
    long long sum_c3 = 0;
};
HCount h_harvest(const Space& s, const PointSet& p2, std::span<const Line> l2);

// C(l1, l2): lines of L2 distinct from l1, l2 meeting l1 and l2 in points
// of P2.
std::vector<Line> connecting_set(const Space& s, const Line& l1, const Line& l2,
                                 const PointSet& p2, std::span<const Line> l2_family);

// Seeded Monte Carlo probe; generator is std::mt19937_64, indices are drawn
// by rejection sampling, so reports reproduce exactly for a fixed seed.
struct ProbeStats {
    long long samples = 0;
    std::uint64_t seed = 0;
    double meet_freq = 0.0;
    double mean_lines_per_3flat = 0.0;
    double mean_lines_per_direction = 0.0;
};
ProbeStats mc_probe(const Space& s, std::span<const Line> lines, long samples,
                    std::uint64_t seed);

} // namespace kakeya
