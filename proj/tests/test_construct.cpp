#include <doctest.h>

#include <set>

#include <nlohmann/json.hpp>

#include "kakeya/construct.hpp"
#include "kakeya/quadric.hpp"

using namespace kakeya;

namespace {

Space fspace(int p, int n) { return Space(Field(FieldSpec::prime(p)), n); }

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

TEST_CASE("sphere example at q = 3") {
    Space s = fspace(3, 4);
    auto q = QuadraticForm::diagonal(s.field(), {1, 1, 1, 1});
    auto b = build_sphere_example(s, q);
    const Configuration& c = b.config;

    CHECK(c.points.size() == 24); // exhaustive level-set oracle
    CHECK(level_set_count(q, 1) == c.points.size());

    // containment: zero violations
    for (const Line& l : c.lines)
        for (const Vec& p : s.points_of(l)) CHECK(c.points.contains(s.key(p)));

    // every line arises from exactly q(q-1) generating pairs (x, v)
    CHECK(b.pair_min >= 1);
    CHECK(b.pair_max <= 2 * 3 * 3);
    CHECK(b.pair_total == static_cast<long>(c.lines.size()) * 3 * 2);
    CHECK(b.pair_total >= ipow(3, 5) / 8);
    CHECK(b.pair_total <= 8 * ipow(3, 5));

    // cardinality windows
    CHECK(c.points.size() >= ipow(3, 3) / 8);
    CHECK(c.points.size() <= 8 * ipow(3, 3));
    CHECK(static_cast<long>(c.lines.size()) >= ipow(3, 3) / 8);
    CHECK(static_cast<long>(c.lines.size()) <= 8 * ipow(3, 3));

    // cross-oracle: the generated family equals the full line scan
    auto scanned = lines_contained(s, c.points);
    CHECK(scanned == c.lines);

    // lines do not point in different directions
    CHECK(!direction_audit(c.lines).all_distinct);
}

TEST_CASE("sphere containment and windows across q and forms") {
    for (int q : {3, 5, 7, 11}) {
        Space s = fspace(q, 4);
        int nr = Field::least_nonresidue(q);
        for (std::vector<int> entries : {std::vector<int>{1, 1, 1, 1},
                                         std::vector<int>{1, 1, 1, nr}}) {
            auto form = QuadraticForm::diagonal(s.field(), entries);
            auto b = build_sphere_example(s, form);
            long np = b.config.points.size();
            long nl = static_cast<long>(b.config.lines.size());
            CHECK(np >= ipow(q, 3) / 8);
            CHECK(np <= 8 * ipow(q, 3));
            CHECK(nl >= ipow(q, 3) / 8);
            CHECK(nl <= 8 * ipow(q, 3));
            CHECK(b.pair_min >= 1);
            CHECK(b.pair_max <= 2L * q * q);
            long violations = 0;
            for (const Line& l : b.config.lines)
                for (const Vec& p : s.points_of(l))
                    if (!b.config.points.contains(s.key(p))) ++violations;
            CHECK(violations == 0);
        }
    }
}

TEST_CASE("sphere wolff audit windows at q in {3,5}") {
    for (int q : {3, 5}) {
        Space s = fspace(q, 4);
        auto form = QuadraticForm::diagonal(s.field(), {1, 1, 1, 1});
        auto b = build_sphere_example(s, form);
        for (int k : {2, 3}) {
            auto audit = wolff_audit(s, b.config.lines, k);
            CHECK(audit.max_lines <= 10L * q);
            CHECK(audit.max_lines >= 1);
        }
        // cross-oracle at q <= 5
        CHECK(lines_contained(s, b.config.points) == b.config.lines);
    }
}

TEST_CASE("sphere rejects degenerate forms") {
    Space s = fspace(3, 4);
    auto degenerate = QuadraticForm::diagonal(s.field(), {1, 1, 1, 0});
    CHECK_THROWS_AS((void)build_sphere_example(s, degenerate), UsageError);
}

TEST_CASE("heisenberg group") {
    for (int p : {3, 5}) {
        Field f{FieldSpec::quadratic(p)};
        auto c = build_heisenberg(f);
        CHECK(c.points.size() == ipow(p, 5));
        // membership spot check: the origin
        CHECK(c.points.contains(0));
    }
    // fiber oracle at p = 3: for each (z1, z2) exactly p choices of z3
    Field f{FieldSpec::quadratic(3)};
    Space s(f, 3);
    auto c = build_heisenberg(f);
    for (int z1 = 0; z1 < 9; ++z1)
        for (int z2 = 0; z2 < 9; ++z2) {
            int fiber = 0;
            for (int z3 = 0; z3 < 9; ++z3) {
                Vec p{3, {z1, z2, z3, 0}};
                if (c.points.contains(s.key(p))) ++fiber;
            }
            CHECK(fiber == 3);
        }
    Field f5{FieldSpec::prime(5)};
    CHECK_THROWS_AS((void)build_heisenberg(f5), UsageError);
    Field f49{FieldSpec::quadratic(7)};
    CHECK_THROWS_AS((void)build_heisenberg(f49), ResourceError);
}

TEST_CASE("lines_contained") {
    Space s = fspace(3, 4);
    PointSet all(s.point_count());
    for (long k = 0; k < s.point_count(); ++k) all.insert(k);
    CHECK(lines_contained(s, all).size() == 1080);

    PointSet one(s.point_count());
    one.insert(5);
    CHECK(lines_contained(s, one).empty());

    // jobs do not change the result
    Space h(Field(FieldSpec::quadratic(3)), 3);
    auto cfg = build_heisenberg(h.field());
    auto l1 = lines_contained(h, cfg.points, 1);
    auto l4 = lines_contained(h, cfg.points, 4);
    CHECK(l1 == l4);
    CHECK(!l1.empty()); // the Heisenberg set carries lines
}

TEST_CASE("wolff audit on trivial families") {
    Space s = fspace(3, 4);
    // all 12 lines of one fixed 2-plane
    std::array<Vec, 2> dirs{s.vec({1, 0, 0, 0}), s.vec({0, 1, 0, 0})};
    Flat pi = s.flat_from(s.vec({0, 0, 0, 1}), dirs);
    std::vector<Line> fam;
    for (const Line& l : s.all_lines())
        if (s.contains_line(pi, l)) fam.push_back(l);
    CHECK(fam.size() == 12); // q(q+1)
    auto audit = wolff_audit(s, fam, 2);
    CHECK(audit.max_lines == 12);
    CHECK(audit.argmax == pi);
    CHECK(audit.ratio == doctest::Approx(4.0));

    std::vector<Line> single{fam[0]};
    CHECK(wolff_audit(s, single, 2).max_lines == 1);
    CHECK(wolff_audit(s, single, 3).max_lines == 1);
    CHECK_THROWS_AS((void)wolff_audit(s, fam, 4), UsageError);
}

TEST_CASE("direction audit") {
    Space s = fspace(3, 4);
    // one canonical line per direction through the origin
    std::vector<Line> reps;
    for (const Vec& d : s.directions())
        reps.push_back(s.line_from(s.vec({0, 0, 0, 0}), d));
    auto a = direction_audit(reps);
    CHECK(a.all_distinct);
    CHECK(a.histogram.size() == 40);
    for (auto& [d, c] : a.histogram) CHECK(c == 1);

    std::vector<Line> empty;
    auto e = direction_audit(empty);
    CHECK(e.all_distinct);
    CHECK(e.histogram.empty());
}

TEST_CASE("configuration json shape") {
    Space s = fspace(3, 4);
    auto form = QuadraticForm::diagonal(s.field(), {1, 1, 1, 1});
    auto b = build_sphere_example(s, form);
    auto j = config_to_json(b.config);
    CHECK(j["label"] == "sphere");
    CHECK(j["points"].size() == 24);
    CHECK(j["lines"].size() == b.config.lines.size());
    CHECK(j["lines"][0].contains("base"));
    CHECK(j["lines"][0].contains("dirs"));
    CHECK(j["lines"][0]["dirs"].size() == 1);
}
