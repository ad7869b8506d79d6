#include "kakeya/reguli.hpp"

#include <algorithm>

#include "kakeya/parallel.hpp"

namespace kakeya {

Frame make_frame(const Space& s, const Line& l1, const Line& l2, const Line& l3) {
    if (s.dim() != 4) throw UsageError("make_frame: frames live in F^4");
    if (!s.skew(l1, l2) || !s.skew(l1, l3) || !s.skew(l2, l3))
        throw DegenerateInput("make_frame: lines must be distinct and mutually skew");
    Flat lambda = s.span3(l1, l2);
    if (!s.contains_line(lambda, l3))
        throw DegenerateInput("make_frame: third line lies outside the 3-space of the first two");
    return Frame{l1, l2, l3, lambda};
}

Frame model_frame(const Space& s) {
    if (s.dim() != 4) throw UsageError("model_frame: needs F^4");
    std::array<Line, 3> ls;
    for (int y = 0; y < 3; ++y) {
        Vec base = s.vec({0, y, 0, 0});
        Vec dir = s.vec({1, 0, y, 0});
        ls[y] = s.line_from(base, dir);
    }
    return make_frame(s, ls[0], ls[1], ls[2]);
}

std::array<Line, 3> model_lines3(const Space& s) {
    if (s.dim() != 3) throw UsageError("model_lines3: needs F^3");
    std::array<Line, 3> ls;
    for (int y = 0; y < 3; ++y)
        ls[y] = s.line_from(s.vec({0, y, 0}), s.vec({1, 0, y}));
    return ls;
}

namespace {

bool meets_all(const Space& s, const Line& l, const Frame& f) {
    return s.meets(l, f.l1) && s.meets(l, f.l2) && s.meets(l, f.l3);
}

// image of an intrinsic direction under the affine chart of the flat
Vec embed_dir(const Space& s, const Flat& fl, const Vec& d) {
    Vec r{};
    r.n = s.dim();
    for (int i = 0; i < fl.k; ++i)
        if (d.c[i] != 0) r = s.add(r, s.scale(d.c[i], fl.rows[i]));
    return r;
}

} // namespace

std::vector<Line> transversals(const Space& s, const Frame& f) {
    if (s.q() > 13) throw ResourceError("transversal scan cap: q <= 13");
    Space intrinsic(s.field(), 3);
    std::vector<Line> out;
    for (const Vec& d : intrinsic.directions()) {
        for (const Line& il : intrinsic.lines_with_direction(d)) {
            Line l = s.line_from(s.embed(f.lambda, il.base), embed_dir(s, f.lambda, il.dir));
            if (meets_all(s, l, f)) out.push_back(l);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Line> transversals_fullscan(const Space& s, const Frame& f, int jobs) {
    s.check_line_cap();
    const auto dirs = s.directions();
    using Batch = std::vector<Line>;
    return chunked_reduce<Batch>(
        static_cast<long>(dirs.size()), jobs, Batch{},
        [&](long lo, long hi) {
            Batch kept;
            for (long di = lo; di < hi; ++di)
                for (const Line& l : s.lines_with_direction(dirs[di]))
                    if (meets_all(s, l, f)) kept.push_back(l);
            return kept;
        },
        [](Batch acc, Batch chunk) {
            acc.insert(acc.end(), chunk.begin(), chunk.end());
            return acc;
        });
}

Regulus make_regulus(const Space& s, const Frame& f) {
    Regulus r{f, transversals(s, f), PointSet(s.point_count())};
    for (const Line& l : r.lines)
        for (const Vec& p : s.points_of(l)) r.points.insert(s.key(p));
    return r;
}

QuadricFit fit_quadric(const Space& s, const Regulus& r) {
    const Field& F = s.field();
    // evaluation matrix: one row per point of r(f), columns = 10 monomials
    std::vector<std::array<int, 10>> rows;
    rows.reserve(r.points.size());
    for (long k : r.points.keys()) {
        Vec t = s.coords_in(r.frame.lambda, s.point_at(k));
        int t1 = t.c[0], t2 = t.c[1], t3 = t.c[2];
        rows.push_back({1, t1, t2, t3, F.mul(t1, t1), F.mul(t1, t2), F.mul(t1, t3),
                        F.mul(t2, t2), F.mul(t2, t3), F.mul(t3, t3)});
    }
    // null space by Gauss-Jordan over the 10 columns
    const int cols = 10;
    int rank = 0;
    std::array<int, 10> pivot_col{};
    for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = F.inv(rows[rank][col]);
        for (int j = 0; j < cols; ++j) rows[rank][j] = F.mul(inv, rows[rank][j]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            int f = rows[i][col];
            for (int j = 0; j < cols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank >= cols)
        throw InternalError("fit_quadric: no quadratic vanishes on the regulus");
    // canonical null-space basis from the free columns; echelon vectors are
    // already in a fixed order, take the lexicographically least
    QuadricFit best{};
    bool have = false;
    std::array<bool, 10> is_pivot{};
    for (int i = 0; i < rank; ++i) is_pivot[pivot_col[i]] = true;
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        QuadricFit cand{};
        cand.coeffs[free_col] = 1;
        for (int i = 0; i < rank; ++i)
            cand.coeffs[pivot_col[i]] = F.neg(rows[i][free_col]);
        if (!have || std::lexicographical_compare(cand.coeffs.begin(), cand.coeffs.end(),
                                                  best.coeffs.begin(), best.coeffs.end())) {
            best = cand;
            have = true;
        }
    }
    if (!have) throw InternalError("fit_quadric: empty null space");
    return best;
}

int eval_fit(const Field& f, const QuadricFit& fit, const Vec& t) {
    if (t.n != 3) throw UsageError("eval_fit: intrinsic coordinates have dimension 3");
    int t1 = t.c[0], t2 = t.c[1], t3 = t.c[2];
    const std::array<int, 10> mono{1,  t1,              t2,              t3,
                                   f.mul(t1, t1), f.mul(t1, t2), f.mul(t1, t3),
                                   f.mul(t2, t2), f.mul(t2, t3), f.mul(t3, t3)};
    int s = 0;
    for (int i = 0; i < 10; ++i) s = f.add(s, f.mul(fit.coeffs[i], mono[i]));
    return s;
}

long plane_audit_max(const Space& s, const Regulus& r) {
    Space intrinsic(s.field(), 3);
    // intrinsic point keys of r(f)
    PointSet pts(intrinsic.point_count());
    for (long k : r.points.keys())
        pts.insert(intrinsic.key(s.coords_in(r.frame.lambda, s.point_at(k))));
    long best = 0;
    for (const Flat& plane : intrinsic.all_flats(2)) {
        long c = 0;
        for (const Vec& p : intrinsic.points_of(plane))
            if (pts.contains(intrinsic.key(p))) ++c;
        best = std::max(best, c);
    }
    return best;
}

long three_line_count(const Space& s, const Line& l1, const Line& l2, const Line& l3,
                      std::span<const Line> family) {
    if (s.dim() != 3) throw UsageError("three_line_count: needs F^3");
    if (!s.skew(l1, l2) || !s.skew(l1, l3) || !s.skew(l2, l3))
        throw DegenerateInput("three_line_count: lines must be mutually skew");
    long c = 0;
    for (const Line& l : family)
        if (s.meets(l, l1) && s.meets(l, l2) && s.meets(l, l3)) ++c;
    return c;
}

namespace {

void check_parallel_frames(const Space& s, const Regulus& r1, const Regulus& r2,
                           const Regulus& r3) {
    if (!s.parallel_flats(r1.frame.lambda, r2.frame.lambda) ||
        !s.parallel_flats(r1.frame.lambda, r3.frame.lambda) ||
        !s.parallel_flats(r2.frame.lambda, r3.frame.lambda))
        throw PreconditionError(
            "three-regulus counts need pairwise parallel, disjoint 3-spaces");
}

bool hits(const Space& s, const Line& l, const PointSet& pts) {
    Vec p = l.base;
    for (int t = 0; t < s.q(); ++t) {
        if (pts.contains(s.key(p))) return true;
        p = s.add(p, l.dir);
    }
    return false;
}

} // namespace

long three_regulus_count(const Space& s, const Regulus& r1, const Regulus& r2,
                         const Regulus& r3, std::span<const Line> family) {
    check_parallel_frames(s, r1, r2, r3);
    long c = 0;
    for (const Line& l : family)
        if (hits(s, l, r1.points) && hits(s, l, r2.points) && hits(s, l, r3.points)) ++c;
    return c;
}

long transversal_variety_count(const Space& s, const Regulus& r1, const Regulus& r2,
                               const Regulus& r3, int jobs) {
    check_parallel_frames(s, r1, r2, r3);
    if (s.q() > 7) throw ResourceError("transversal variety cap: q <= 7");
    const auto dirs = s.directions();
    return chunked_reduce<long>(
        static_cast<long>(dirs.size()), jobs, 0L,
        [&](long lo, long hi) {
            long c = 0;
            for (long di = lo; di < hi; ++di)
                for (const Line& l : s.lines_with_direction(dirs[di]))
                    if (hits(s, l, r1.points) && hits(s, l, r2.points) &&
                        hits(s, l, r3.points))
                        ++c;
            return c;
        },
        [](long a, long b) { return a + b; });
}

} // namespace kakeya
