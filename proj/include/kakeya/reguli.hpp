#pragma once

#include <array>
#include <span>
#include <vector>

#include "kakeya/geom.hpp"

namespace kakeya {

// Three distinct, mutually skew lines inside a common 3-space.
struct Frame {
    Line l1, l2, l3;
    Flat lambda;
};

// Validates skewness and coplanarity-in-a-3-space; lambda is span3(l1, l2).
Frame make_frame(const Space& s, const Line& l1, const Line& l2, const Line& l3);

// The model frame {(x, y_i, x*y_i, 0)} for y = 0, 1, 2 in F_q^4.
Frame model_frame(const Space& s);
// The same three lines in F_q^3 (for three-line experiments).
std::array<Line, 3> model_lines3(const Space& s);

// L(f): every line meeting l1, l2 and l3. A transversal has two distinct
// points in lambda, hence lies in lambda, so the scan runs over intrinsic
// F^3 lines only. transversals_fullscan is the brute-force oracle over all
// of Gr(F^4, 1).
std::vector<Line> transversals(const Space& s, const Frame& f);
std::vector<Line> transversals_fullscan(const Space& s, const Frame& f, int jobs = 1);

// r(f): the union of the transversal point sets, kept as a bitset over the
// ambient key space.
struct Regulus {
    Frame frame;
    std::vector<Line> lines; // L(f)
    PointSet points;         // r(f)
};
Regulus make_regulus(const Space& s, const Frame& f);

// Quadratic polynomial on the intrinsic coordinates (t1,t2,t3) of lambda
// vanishing on all of r(f). Monomial order:
//   1, t1, t2, t3, t1^2, t1*t2, t1*t3, t2^2, t2*t3, t3^2
struct QuadricFit {
    std::array<int, 10> coeffs{};
};
QuadricFit fit_quadric(const Space& s, const Regulus& r);
int eval_fit(const Field& f, const QuadricFit& fit, const Vec& intrinsic);

// max over 2-flats of lambda of |r(f) /\ flat|; the combinatorial
// irreducibility audit wants this <= 2q (no plane swallows the surface).
long plane_audit_max(const Space& s, const Regulus& r);

// Lines of a direction-separated family L meeting all of three mutually
// skew lines in F^3.
long three_line_count(const Space& s, const Line& l1, const Line& l2, const Line& l3,
                      std::span<const Line> family);

// Lines of L meeting all three reguli; frames must have pairwise parallel
// (disjoint, translate) 3-spaces.
long three_regulus_count(const Space& s, const Regulus& r1, const Regulus& r2,
                         const Regulus& r3, std::span<const Line> family);
// Same condition scanned over every line of Gr(F^4, 1); q <= 7.
long transversal_variety_count(const Space& s, const Regulus& r1, const Regulus& r2,
                               const Regulus& r3, int jobs = 1);

} // namespace kakeya
