#include <cmath>
#include <doctest.h>

#include <random>
#include <set>

#include "kakeya/quadric.hpp"
#include "kakeya/rng.hpp"

using namespace kakeya;

namespace {

Field fp(int p) { return Field(FieldSpec::prime(p)); }

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// independent matrix rank over F_p by plain row reduction
int matrix_rank(const Field& f, int n, const std::vector<int>& m) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = m[i * n + j];
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (rows[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        int inv = f.inv(rows[r][c]);
        for (int j = 0; j < n; ++j) rows[r][j] = f.mul(inv, rows[r][j]);
        for (int i = 0; i < n; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            int fac = rows[i][c];
            for (int j = 0; j < n; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(fac, rows[r][j]));
        }
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("normal form of simple matrices") {
    Field f3 = fp(3);
    auto q1 = QuadraticForm::diagonal(f3, {1, 1, 1, 1});
    CHECK(q1.rank() == 4);
    CHECK(std::vector<int>(q1.diagonal_entries().begin(), q1.diagonal_entries().end()) ==
          std::vector<int>{1, 1, 1, 1});
    CHECK(q1.basis() == std::vector<int>{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});

    std::vector<int> off{0, 1, 1, 0};
    QuadraticForm q2(f3, 2, off);
    CHECK(q2.rank() == 2); // congruence identity is verified inside the ctor
    CHECK(q2.diagonal_entries().size() == 2);
    for (int a : q2.diagonal_entries()) CHECK(a != 0);

    std::vector<int> zero(16, 0);
    QuadraticForm q3(f3, 4, zero);
    CHECK(q3.rank() == 0);
    CHECK(q3.diagonal_entries().empty());
}

TEST_CASE("normal form of random symmetric matrices") {
    std::mt19937_64 gen(99);
    for (int p : {3, 5, 7}) {
        Field f = fp(p);
        for (int n = 2; n <= 4; ++n) {
            for (int trial = 0; trial < 60; ++trial) {
                std::vector<int> m(n * n, 0);
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j)
                        m[i * n + j] = m[j * n + i] = static_cast<int>(bounded(gen, p));
                QuadraticForm q(f, n, m);
                CHECK(q.rank() == matrix_rank(f, n, m));
                CHECK(static_cast<int>(q.diagonal_entries().size()) == q.rank());
            }
        }
    }
}

TEST_CASE("level set counts, frozen oracle values") {
    Field f5 = fp(5);
    auto q1 = QuadraticForm::diagonal(f5, {1});
    CHECK(level_set_count(q1, 0) == 1); // only x = 0

    Field f3 = fp(3);
    auto q3 = QuadraticForm::diagonal(f3, {1, 1, 1});
    CHECK(level_set_count(q3, 1) == 6); // exhaustive over 27 triples
    auto q4 = QuadraticForm::diagonal(f3, {1, 1, 1, 1});
    CHECK(level_set_count(q4, 1) == 24); // exhaustive over 81 vectors

    auto hist = level_set_histogram(q4);
    long total = 0;
    for (long c : hist) total += c;
    CHECK(total == 81);
    CHECK(hist[1] == 24);
}

TEST_CASE("gauss identity reproduces exhaustive counts") {
    for (int p : {3, 5, 7}) {
        Field f = fp(p);
        int s = Field::least_nonresidue(p);
        for (int n = 1; n <= 4; ++n) {
            std::vector<int> entries(n, 0);
            // all patterns over {0, 1, s}
            for (long mask = 0; mask < ipow(3, n); ++mask) {
                long rem = mask;
                int rank = 0;
                for (int i = 0; i < n; ++i) {
                    int pick = static_cast<int>(rem % 3);
                    rem /= 3;
                    entries[i] = pick == 0 ? 0 : (pick == 1 ? 1 : s);
                    rank += entries[i] != 0;
                }
                if (rank < 1) continue;
                auto q = QuadraticForm::diagonal(f, entries);
                auto hist = level_set_histogram(q);
                for (int v = 0; v < p; ++v) {
                    auto est = gauss_estimate(q, v);
                    CHECK(std::abs(est - UnitComplex(static_cast<double>(hist[v]), 0.0)) <
                          1e-4);
                    CHECK(hist[v] <= 2 * ipow(p, n - 1)); // rank >= 1 upper bound
                }
            }
        }
    }
}

TEST_CASE("level set deviation windows") {
    // full-rank diagonal forms obey the strict window |count - q^(n-1)| < q^(n/2)
    for (int p : {3, 5, 7, 11, 13}) {
        Field f = fp(p);
        int s = Field::least_nonresidue(p);
        for (int n = 3; n <= 4; ++n) {
            for (int mask = 0; mask < (1 << n); ++mask) {
                std::vector<int> entries(n);
                for (int i = 0; i < n; ++i) entries[i] = (mask & (1 << i)) ? s : 1;
                auto q = QuadraticForm::diagonal(f, entries);
                auto hist = level_set_histogram(q);
                for (int v = 0; v < p; ++v)
                    CHECK(std::abs(hist[v] - ipow(p, n - 1)) < std::pow(p, n / 2.0));
            }
        }
    }
    // rank 3 inside n = 4 sits exactly on the boundary for v != 0
    Field f3 = fp(3);
    auto q = QuadraticForm::diagonal(f3, {1, 1, 1, 0});
    auto hist = level_set_histogram(q);
    CHECK(hist[0] == 27); // exact q^3 at v = 0
    CHECK(hist[1] == 18); // 27 - 9, |dev| = q^2 exactly
    CHECK(hist[2] == 36);
    for (int v = 0; v < 3; ++v) CHECK(std::abs(hist[v] - 27) <= 9);
}

TEST_CASE("null vectors") {
    Field f3 = fp(3);
    auto q4 = QuadraticForm::diagonal(f3, {1, 1, 1, 1});
    auto nv = null_vectors(q4);
    CHECK(nv.size() == 32);
    CHECK(static_cast<long>(nv.size()) == level_set_count(q4, 0) - 1);

    // diag(1,1) is anisotropic at p = 3 (-1 is a non-residue)
    auto iso = QuadraticForm::diagonal(f3, {1, 1});
    CHECK(null_vectors(iso).empty());
    // diag(1,2) ~ x^2 - y^2 is hyperbolic: four nonzero null vectors
    auto hyp = QuadraticForm::diagonal(f3, {1, 2});
    CHECK(null_vectors(hyp).size() == 4);

    auto zero = QuadraticForm::diagonal(f3, {0, 0});
    CHECK(null_vectors(zero).size() == 8); // all nonzero vectors
}

TEST_CASE("restriction") {
    Field f3 = fp(3);
    auto q4 = QuadraticForm::diagonal(f3, {1, 1, 1, 1});
    Vec e1{4, {1, 0, 0, 0}}, e2{4, {0, 1, 0, 0}};
    std::array<Vec, 2> span12{e1, e2};
    auto r = restrict_form(q4, span12);
    CHECK(r.n() == 2);
    CHECK(r.entry(0, 0) == 1);
    CHECK(r.entry(1, 1) == 1);
    CHECK(r.entry(0, 1) == 0);

    Vec e3{4, {0, 0, 1, 0}}, e4{4, {0, 0, 0, 1}};
    std::array<Vec, 4> full{e1, e2, e3, e4};
    auto rf = restrict_form(q4, full);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(rf.entry(i, j) == q4.entry(i, j));

    // the restriction to v-perp of a null v always has rank exactly 2:
    // v lies in the radical of the restriction
    for (const Vec& v : null_vectors(q4)) {
        auto basis = perp_basis(q4, v);
        CHECK(basis.size() == 3);
        auto restricted = restrict_form(q4, basis);
        CHECK(restricted.rank() == 2);
    }

    std::array<Vec, 2> dep{e1, e1};
    CHECK_THROWS_AS((void)restrict_form(q4, dep), UsageError);
}

TEST_CASE("errors and caps") {
    Field f3 = fp(3);
    std::vector<int> nonsym{0, 1, 2, 0};
    CHECK_THROWS_AS(QuadraticForm(f3, 2, nonsym), UsageError);
    Field g9{FieldSpec::quadratic(3)};
    CHECK_THROWS_AS(QuadraticForm::diagonal(g9, {1, 1}), UnsupportedError);
    Field f37 = fp(37);
    auto big = QuadraticForm::diagonal(f37, {1, 1, 1, 1});
    CHECK_THROWS_AS((void)level_set_count(big, 0), ResourceError);
    CHECK_THROWS_AS((void)level_set_count(QuadraticForm::diagonal(f3, {1, 1}), 5),
                    UsageError);
}
