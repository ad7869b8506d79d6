#include "kakeya/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "kakeya/construct.hpp"
#include "kakeya/rng.hpp"

namespace kakeya {

IncidenceStructure incidence_tables(const Space& s, const PointSet& p,
                                    std::span<const Line> lines) {
    if (p.universe() != s.point_count())
        throw UsageError("incidence_tables: point set universe mismatch");
    IncidenceStructure t;
    t.line_restriction.resize(lines.size(), 0);
    t.mu.assign(s.point_count(), 0);
    for (size_t i = 0; i < lines.size(); ++i) {
        Vec pt = lines[i].base;
        for (int u = 0; u < s.q(); ++u) {
            long k = s.key(pt);
            if (p.contains(k)) {
                ++t.line_restriction[i];
                ++t.mu[k];
            }
            pt = s.add(pt, lines[i].dir);
        }
        t.incidences += t.line_restriction[i];
    }
    long long from_mu = std::accumulate(t.mu.begin(), t.mu.end(), 0LL);
    if (from_mu != t.incidences)
        throw InternalError("incidence_tables: double counting identity broke");
    return t;
}

std::vector<size_t> popularity_refine(std::span<const long> weights, long total) {
    long long sum = std::accumulate(weights.begin(), weights.end(), 0LL);
    if (sum < total)
        throw PreconditionError("popularity_refine: weights sum below the declared total");
    const long long b = static_cast<long long>(weights.size());
    std::vector<size_t> kept;
    long long kept_weight = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
        // w >= total / (2|B|), exactly
        if (2 * b * static_cast<long long>(weights[i]) >= total) {
            kept.push_back(i);
            kept_weight += weights[i];
        }
    }
    if (2 * kept_weight < total)
        throw InternalError("popularity_refine: kept weight below total/2");
    return kept;
}

CzCounts cz_counts(const std::vector<boost::dynamic_bitset<>>& rel) {
    CzCounts c;
    for (const auto& row : rel) c.x += static_cast<long long>(row.count());
    if (c.x < 2 * static_cast<long long>(rel.size()))
        throw PreconditionError("cz_counts: needs X >= 2|B|");
    for (const auto& row : rel) {
        long long m = static_cast<long long>(row.count());
        c.pairs += m * (m - 1);
        c.triples += m * (m - 1) * (m - 2);
    }
    return c;
}

namespace {

BoundCheck make_check(long long inc, double bound) {
    BoundCheck b;
    b.incidences = inc;
    b.bound = bound;
    b.ratio = bound > 0 ? static_cast<double>(inc) / bound : 0.0;
    return b;
}

} // namespace

BoundCheck easy_bound_check(const Space& s, const PointSet& p, std::span<const Line> lines) {
    auto t = incidence_tables(s, p, lines);
    double np = static_cast<double>(p.size());
    double nl = static_cast<double>(lines.size());
    return make_check(t.incidences, std::sqrt(np) * nl + np);
}

BoundCheck wip_bound_check(const Space& s, const PointSet& p, std::span<const Line> lines) {
    if (!direction_audit(lines).all_distinct)
        throw PreconditionError("wip_bound_check: family must be direction-separated");
    auto t = incidence_tables(s, p, lines);
    double np = static_cast<double>(p.size());
    double nl = static_cast<double>(lines.size());
    double fq = static_cast<double>(s.q());
    return make_check(t.incidences,
                      std::sqrt(np) * std::pow(nl, 0.75) * std::pow(fq, 0.25) + np + nl);
}

PlateNumber plate_number(const Space& s, std::span<const Line> lines, int jobs) {
    FlatScanMax m = max_lines_in_flat(s, lines, 2, jobs);
    return PlateNumber{m.max_lines, m.argmax};
}

RefinementReport refine_pipeline(const Space& s, const PointSet& p0,
                                 std::span<const Line> l0, int n_stages,
                                 bool diagnostics, int jobs) {
    if (l0.empty() || p0.empty()) throw UsageError("refine_pipeline: empty input");
    if (n_stages < 1) throw UsageError("refine_pipeline: need at least one stage");

    auto t0 = incidence_tables(s, p0, l0);

    // dyadic pigeonhole on mu_0: class j holds points with mu in [2^j, 2^(j+1))
    std::unordered_map<int, long long> class_weight;
    for (long k = 0; k < s.point_count(); ++k) {
        if (t0.mu[k] <= 0) continue;
        int j = 0;
        while ((2L << j) <= t0.mu[k]) ++j; // smallest j with mu < 2^(j+1)
        class_weight[j] += t0.mu[k];
    }
    if (class_weight.empty()) throw UsageError("refine_pipeline: no incidences at all");
    int best_class = -1;
    long long best_weight = -1;
    for (auto [j, w] : class_weight)
        if (w > best_weight || (w == best_weight && j > best_class)) {
            best_class = j;
            best_weight = w;
        }

    RefinementReport rep;
    rep.dyadic_class = best_class;
    rep.alpha_num = s.q();
    rep.alpha_den = 1LL << best_class;
    long long g = std::gcd(rep.alpha_num, rep.alpha_den);
    rep.alpha_num /= g;
    rep.alpha_den /= g;

    PointSet pts(s.point_count());
    for (long k = 0; k < s.point_count(); ++k) {
        long lo = 1L << best_class;
        if (t0.mu[k] >= lo && t0.mu[k] < 2 * lo) pts.insert(k);
    }
    std::vector<Line> fam(l0.begin(), l0.end());

    auto log_stage = [&](const PointSet& p, const std::vector<Line>& l, long long inc) {
        StageLog st;
        st.points = p.size();
        st.lines = static_cast<long>(l.size());
        st.incidences = inc;
        if (diagnostics && !l.empty()) {
            st.plate = plate_number(s, l, jobs).max;
            st.max_in_3flat = s.dim() == 4 ? max_lines_in_flat(s, l, 3, jobs).max_lines : -1;
        }
        rep.stages.push_back(st);
    };

    auto tables = incidence_tables(s, pts, fam);
    log_stage(pts, fam, tables.incidences);

    for (int stage = 0; stage < n_stages; ++stage) {
        const long long inc = tables.incidences;
        const long long nl = static_cast<long long>(fam.size());
        // line popularity: keep |l /\ P| >= |I| / (2|L|)
        std::vector<Line> kept_lines;
        for (size_t i = 0; i < fam.size(); ++i)
            if (2 * nl * static_cast<long long>(tables.line_restriction[i]) >= inc)
                kept_lines.push_back(fam[i]);
        // point popularity against the refined family: keep counts >= |I| / (4|P|)
        auto mid = incidence_tables(s, pts, kept_lines);
        const long long np = pts.size();
        PointSet kept_points(s.point_count());
        for (long k = 0; k < s.point_count(); ++k)
            if (pts.contains(k) && 4 * np * mid.mu[k] >= inc) kept_points.insert(k);
        pts = std::move(kept_points);
        fam = std::move(kept_lines);
        tables = incidence_tables(s, pts, fam);
        if (4 * tables.incidences < inc)
            throw InternalError("refine_pipeline: stage lost more than 3/4 of incidences");
        log_stage(pts, fam, tables.incidences);
    }

    rep.final_points = std::move(pts);
    rep.final_lines = std::move(fam);
    return rep;
}

namespace {

using Mask = boost::dynamic_bitset<>;

} // namespace

HCount h_harvest(const Space& s, const PointSet& p2, std::span<const Line> l2) {
    if (s.q() > 5) throw ResourceError("harvest cap: q <= 5");
    if (l2.size() > 4096) throw ResourceError("harvest cap: |L2| <= 4096");
    const size_t n = l2.size();

    // per-point incident-line masks (P2 points only) and per-line P2 points
    std::unordered_map<long, Mask> through;
    std::vector<std::vector<long>> pts_on(n);
    for (size_t i = 0; i < n; ++i) {
        Vec pt = l2[i].base;
        for (int t = 0; t < s.q(); ++t) {
            long k = s.key(pt);
            if (p2.contains(k)) {
                pts_on[i].push_back(k);
                auto [it, fresh] = through.try_emplace(k, Mask(n));
                it->second.set(i);
            }
            pt = s.add(pt, l2[i].dir);
        }
    }

    std::vector<Mask> skew_mask(n, Mask(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (s.skew(l2[i], l2[j])) {
                skew_mask[i].set(j);
                skew_mask[j].set(i);
            }

    HCount h;
    for (size_t i = 0; i < n; ++i) h.s0 += static_cast<long long>(skew_mask[i].count());

    // H0 by meet-in-the-middle: choices of l1 through p1 and l2 through p2
    // are independent once (l, p1, p2) is fixed
    for (size_t i = 0; i < n; ++i) {
        for (long k1 : pts_on[i])
            for (long k2 : pts_on[i]) {
                if (k1 == k2) continue;
                long long c1 = static_cast<long long>(through.at(k1).count()) - 1;
                long long c2 = static_cast<long long>(through.at(k2).count()) - 1;
                h.h0 += c1 * c2;
            }
    }

    // H1 independently: restrict the l2-leg to lines skew to the l1-leg
    for (size_t i = 0; i < n; ++i) {
        for (long k1 : pts_on[i])
            for (long k2 : pts_on[i]) {
                if (k1 == k2) continue;
                const Mask& m1 = through.at(k1);
                const Mask& m2 = through.at(k2);
                for (size_t a = m1.find_first(); a != Mask::npos; a = m1.find_next(a)) {
                    if (a == i) continue;
                    h.h1 += static_cast<long long>((m2 & skew_mask[a]).count());
                }
            }
    }

    // connecting sets via line masks: M[i] = lines sharing a P2 point with l_i
    std::vector<Mask> reach(n, Mask(n));
    for (size_t i = 0; i < n; ++i) {
        for (long k : pts_on[i]) reach[i] |= through.at(k);
        reach[i].reset(i);
    }
    std::vector<long> c_sizes; // |C| per ordered skew pair, scan order
    std::vector<std::pair<size_t, size_t>> skew_pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = skew_mask[i].find_first(); j != Mask::npos; j = skew_mask[i].find_next(j)) {
            Mask c = reach[i] & reach[j];
            c.reset(i);
            c.reset(j);
            c_sizes.push_back(static_cast<long>(c.count()));
            skew_pairs.emplace_back(i, j);
            h.sum_c += static_cast<long long>(c.count());
        }

    // popular pairs: |C| >= sum_c / (2|S0|)
    if (h.s0 > 0 && h.sum_c > 0) {
        auto popular = popularity_refine(c_sizes, static_cast<long>(h.sum_c));
        h.s1 = static_cast<long long>(popular.size());
        for (size_t idx : popular) {
            auto [i, j] = skew_pairs[idx];
            Mask c = reach[i] & reach[j];
            c.reset(i);
            c.reset(j);
            if (c.count() < 3) continue;
            // contact points of each connector with l_i and l_j
            std::vector<long> ca, cb;
            for (size_t u = c.find_first(); u != Mask::npos; u = c.find_next(u)) {
                auto hit = [&](size_t leg) {
                    for (long k : pts_on[u])
                        if (through.at(k).test(leg)) return k;
                    throw InternalError("h_harvest: connector lost its contact point");
                };
                ca.push_back(hit(i));
                cb.push_back(hit(j));
            }
            const size_t m = ca.size();
            for (size_t u = 0; u < m; ++u)
                for (size_t v = 0; v < m; ++v) {
                    if (v == u || ca[v] == ca[u] || cb[v] == cb[u]) continue;
                    for (size_t w = 0; w < m; ++w) {
                        if (w == u || w == v) continue;
                        if (ca[w] == ca[u] || ca[w] == ca[v]) continue;
                        if (cb[w] == cb[u] || cb[w] == cb[v]) continue;
                        ++h.sum_c3;
                    }
                }
        }
    }
    return h;
}

std::vector<Line> connecting_set(const Space& s, const Line& l1, const Line& l2,
                                 const PointSet& p2, std::span<const Line> l2_family) {
    if (!s.skew(l1, l2)) throw DegenerateInput("connecting_set: pair must be skew");
    std::vector<Line> out;
    for (const Line& l : l2_family) {
        if (l == l1 || l == l2) continue;
        auto a = s.intersection(l, l1);
        if (!a || !p2.contains(s.key(*a))) continue;
        auto b = s.intersection(l, l2);
        if (!b || !p2.contains(s.key(*b))) continue;
        out.push_back(l);
    }
    return out;
}

ProbeStats mc_probe(const Space& s, std::span<const Line> lines, long samples,
                    std::uint64_t seed) {
    ProbeStats st;
    st.samples = samples;
    st.seed = seed;
    std::mt19937_64 gen(seed);

    if (lines.size() >= 2 && samples > 0) {
        long hits = 0;
        for (long i = 0; i < samples; ++i) {
            std::uint64_t a = bounded(gen, lines.size());
            std::uint64_t b;
            do {
                b = bounded(gen, lines.size());
            } while (b == a);
            if (s.meets(lines[a], lines[b])) ++hits;
        }
        st.meet_freq = static_cast<double>(hits) / static_cast<double>(samples);
    }

    if (s.dim() == 4 && !lines.empty() && samples > 0) {
        // 3-spaces are hyperplanes {x: <a,x> = off}; tabulate the family once
        // per normal so each sample is a lookup
        const auto normals = s.directions();
        std::vector<std::vector<long>> per_offset(normals.size());
        for (size_t ni = 0; ni < normals.size(); ++ni) {
            per_offset[ni].assign(s.q(), 0);
            for (const Line& l : lines)
                if (s.dot(normals[ni], l.dir) == 0)
                    ++per_offset[ni][s.dot(normals[ni], l.base)];
        }
        long long total = 0;
        for (long i = 0; i < samples; ++i) {
            std::uint64_t ni = bounded(gen, normals.size());
            int off = static_cast<int>(bounded(gen, s.q()));
            total += per_offset[ni][off];
        }
        st.mean_lines_per_3flat = static_cast<double>(total) / static_cast<double>(samples);
    }

    if (!lines.empty()) {
        auto hist = direction_audit(lines).histogram;
        st.mean_lines_per_direction =
            static_cast<double>(lines.size()) / static_cast<double>(hist.size());
    }
    return st;
}

} // namespace kakeya
