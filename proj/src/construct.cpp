#include "kakeya/construct.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "kakeya/parallel.hpp"

namespace kakeya {

SphereBuild build_sphere_example(const Space& s, const QuadraticForm& q) {
    if (s.dim() != 4 || q.n() != 4)
        throw UsageError("build_sphere_example: needs F^4");
    if (q.rank() != 4)
        throw UsageError("build_sphere_example: form must be non-degenerate");
    if (s.q() > 13) throw ResourceError("sphere cap: q <= 13");
    const Field& F = s.field();

    SphereBuild out{Configuration{s, PointSet(s.point_count()), {}, "sphere"}, 0, 0, 0};
    Vec x{};
    x.n = 4;
    for (long k = 0; k < s.point_count(); ++k) {
        if (q.evaluate(x) == 1) out.config.points.insert(k);
        for (int i = 0; i < 4; ++i) {
            if (++x.c[i] < F.q()) break;
            x.c[i] = 0;
        }
    }

    // family generator: null direction v, then x in v-perp with Q(x) = 1
    std::map<Line, long> pair_counts;
    for (const Vec& v : null_vectors(q)) {
        auto basis = perp_basis(q, v); // 3 vectors; Mv != 0 since Q is non-degenerate
        const int Q = F.q();
        for (int t0 = 0; t0 < Q; ++t0)
            for (int t1 = 0; t1 < Q; ++t1)
                for (int t2 = 0; t2 < Q; ++t2) {
                    Vec p = s.add(s.add(s.scale(t0, basis[0]), s.scale(t1, basis[1])),
                                  s.scale(t2, basis[2]));
                    if (q.evaluate(p) != 1) continue;
                    ++pair_counts[s.line_from(p, v)];
                }
    }
    out.config.lines.reserve(pair_counts.size());
    bool first = true;
    for (const auto& [line, cnt] : pair_counts) {
        out.config.lines.push_back(line);
        out.pair_total += cnt;
        out.pair_min = first ? cnt : std::min(out.pair_min, cnt);
        out.pair_max = std::max(out.pair_max, cnt);
        first = false;
    }
    return out;
}

Configuration build_heisenberg(const Field& f) {
    if (f.degree() != 2)
        throw UsageError("build_heisenberg: needs a degree-2 field");
    if (f.p() > 5) throw ResourceError("heisenberg cap: p <= 5");
    Space s(f, 3);
    Configuration cfg{s, PointSet(s.point_count()), {}, "heisenberg"};
    const int q = f.q();
    for (int z1 = 0; z1 < q; ++z1)
        for (int z2 = 0; z2 < q; ++z2) {
            int rhs = f.im(f.mul(z1, f.conj(z2)));
            for (int z3 = 0; z3 < q; ++z3) {
                if (f.im(z3) != rhs) continue;
                Vec p{};
                p.n = 3;
                p.c = {z1, z2, z3, 0};
                cfg.points.insert(s.key(p));
            }
        }
    return cfg;
}

std::vector<Line> lines_contained(const Space& s, const PointSet& p, int jobs) {
    if (p.universe() != s.point_count())
        throw UsageError("lines_contained: point set universe mismatch");
    s.check_line_cap();
    const auto dirs = s.directions();
    using Batch = std::vector<Line>;
    return chunked_reduce<Batch>(
        static_cast<long>(dirs.size()), jobs, Batch{},
        [&](long lo, long hi) {
            Batch kept;
            for (long di = lo; di < hi; ++di) {
                for (const Line& l : s.lines_with_direction(dirs[di])) {
                    bool inside = true;
                    Vec pt = l.base;
                    for (int t = 0; t < s.q() && inside; ++t) {
                        inside = p.contains(s.key(pt));
                        pt = s.add(pt, l.dir);
                    }
                    if (inside) kept.push_back(l);
                }
            }
            return kept;
        },
        [](Batch acc, Batch chunk) {
            acc.insert(acc.end(), chunk.begin(), chunk.end());
            return acc;
        });
}

WolffAudit wolff_audit(const Space& s, std::span<const Line> lines, int k, int jobs) {
    if (k != 2 && k != 3) throw UsageError("wolff_audit: k must be 2 or 3");
    FlatScanMax m = max_lines_in_flat(s, lines, k, jobs);
    WolffAudit a;
    a.max_lines = m.max_lines;
    a.argmax = m.argmax;
    long denom = 1;
    for (int i = 0; i < k - 1; ++i) denom *= s.q();
    a.ratio = static_cast<double>(m.max_lines) / static_cast<double>(denom);
    return a;
}

DirectionAudit direction_audit(std::span<const Line> lines) {
    DirectionAudit a;
    for (const Line& l : lines) ++a.histogram[l.dir];
    // all-distinct means no two lines parallel or identical; lines are
    // canonical values, so duplicates and shared directions both show up as
    // multiplicity > 1
    a.all_distinct = a.histogram.size() == lines.size();
    return a;
}

nlohmann::ordered_json line_to_json(const Line& l) {
    nlohmann::ordered_json j;
    j["base"] = std::vector<int>(l.base.c.begin(), l.base.c.begin() + l.base.n);
    j["dirs"] = {std::vector<int>(l.dir.c.begin(), l.dir.c.begin() + l.dir.n)};
    return j;
}

nlohmann::ordered_json flat_to_json(const Flat& f) {
    nlohmann::ordered_json j;
    j["base"] = std::vector<int>(f.base.c.begin(), f.base.c.begin() + f.base.n);
    auto dirs = nlohmann::ordered_json::array();
    for (int i = 0; i < f.k; ++i)
        dirs.push_back(std::vector<int>(f.rows[i].c.begin(), f.rows[i].c.begin() + f.rows[i].n));
    j["dirs"] = dirs;
    return j;
}

nlohmann::ordered_json config_to_json(const Configuration& c) {
    nlohmann::ordered_json j;
    j["label"] = c.label;
    j["points"] = c.points.keys();
    auto lines = nlohmann::ordered_json::array();
    for (const Line& l : c.lines) lines.push_back(line_to_json(l));
    j["lines"] = lines;
    return j;
}

} // namespace kakeya
