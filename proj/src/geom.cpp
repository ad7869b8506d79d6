#include "kakeya/geom.hpp"

#include <algorithm>

#include "kakeya/parallel.hpp"

namespace kakeya {

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

constexpr long kLineCap = 8'000'000;
constexpr long kFlatCap = 2'000'000;

} // namespace

Space::Space(Field field, int n) : field_(std::move(field)), n_(n) {
    if (n < 2 || n > 4) throw UsageError("Space: ambient dimension must be 2, 3, or 4");
    points_ = ipow(field_.q(), n_);
}

void Space::check_vec(const Vec& v, const char* who) const {
    if (v.n != n_) throw UsageError(std::string(who) + ": ambient dimension mismatch");
    for (int i = 0; i < n_; ++i)
        if (v.c[i] < 0 || v.c[i] >= field_.q())
            throw UsageError(std::string(who) + ": coordinate out of range");
}

long Space::key(const Vec& v) const {
    long k = 0;
    for (int i = n_ - 1; i >= 0; --i) k = k * field_.q() + v.c[i];
    return k;
}

Vec Space::point_at(long key) const {
    Vec v;
    v.n = n_;
    for (int i = 0; i < n_; ++i) {
        v.c[i] = static_cast<int>(key % field_.q());
        key /= field_.q();
    }
    return v;
}

Vec Space::vec(std::initializer_list<int> coords) const {
    if (static_cast<int>(coords.size()) != n_)
        throw UsageError("Space::vec: wrong coordinate count");
    Vec v;
    v.n = n_;
    int i = 0;
    for (int x : coords) v.c[i++] = x;
    check_vec(v, "Space::vec");
    return v;
}

Vec Space::add(const Vec& a, const Vec& b) const {
    Vec r = a;
    for (int i = 0; i < n_; ++i) r.c[i] = field_.add(a.c[i], b.c[i]);
    return r;
}

Vec Space::sub(const Vec& a, const Vec& b) const {
    Vec r = a;
    for (int i = 0; i < n_; ++i) r.c[i] = field_.sub(a.c[i], b.c[i]);
    return r;
}

Vec Space::scale(int t, const Vec& a) const {
    Vec r = a;
    for (int i = 0; i < n_; ++i) r.c[i] = field_.mul(t, a.c[i]);
    return r;
}

bool Space::is_zero(const Vec& a) const {
    for (int i = 0; i < n_; ++i)
        if (a.c[i] != 0) return false;
    return true;
}

int Space::dot(const Vec& a, const Vec& b) const {
    int s = 0;
    for (int i = 0; i < n_; ++i) s = field_.add(s, field_.mul(a.c[i], b.c[i]));
    return s;
}

namespace {

// in-place reduced row echelon form; returns rank
int rref(const Field& F, int n, std::vector<Vec>& rows) {
    int r = 0;
    for (int col = 0; col < n && r < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i].c[col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        int inv = F.inv(rows[r].c[col]);
        for (int j = 0; j < n; ++j) rows[r].c[j] = F.mul(inv, rows[r].c[j]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i].c[col] == 0) continue;
            int f = rows[i].c[col];
            for (int j = 0; j < n; ++j)
                rows[i].c[j] = F.sub(rows[i].c[j], F.mul(f, rows[r].c[j]));
        }
        ++r;
    }
    rows.resize(r);
    return r;
}

int pivot_of(const Vec& row) {
    for (int i = 0; i < row.n; ++i)
        if (row.c[i] != 0) return i;
    return -1;
}

} // namespace

int Space::rank(std::span<const Vec> vs) const {
    std::vector<Vec> rows(vs.begin(), vs.end());
    return rref(field_, n_, rows);
}

Line Space::line_from(const Vec& base, const Vec& dir) const {
    check_vec(base, "line_from");
    check_vec(dir, "line_from");
    if (is_zero(dir)) throw DegenerateInput("line_from: zero direction");
    Vec d = dir;
    int piv = pivot_of(d);
    int inv = field_.inv(d.c[piv]);
    for (int i = 0; i < n_; ++i) d.c[i] = field_.mul(inv, d.c[i]);
    Vec best = base;
    Vec p = base;
    for (int t = 1; t < field_.q(); ++t) {
        p = add(p, d);
        if (p < best) best = p;
    }
    return Line{best, d};
}

Line Space::line_through(const Vec& p, const Vec& r) const {
    check_vec(p, "line_through");
    check_vec(r, "line_through");
    if (p == r) throw DegenerateInput("line_through: coincident points");
    return line_from(p, sub(r, p));
}

std::vector<Vec> Space::points_of(const Line& l) const {
    std::vector<Vec> pts;
    pts.reserve(field_.q());
    Vec p = l.base;
    for (int t = 0; t < field_.q(); ++t) {
        pts.push_back(p);
        p = add(p, l.dir);
    }
    return pts;
}

bool Space::incident(const Vec& p, const Line& l) const {
    if (p.n != n_) throw UsageError("incident: ambient dimension mismatch");
    int piv = pivot_of(l.dir); // dir[piv] == 1 in canonical form
    int t = field_.sub(p.c[piv], l.base.c[piv]);
    return p == add(l.base, scale(t, l.dir));
}

bool Space::parallel(const Line& a, const Line& b) const {
    return a.dir == b.dir && a.base != b.base;
}

bool Space::coplanar(const Line& a, const Line& b) const {
    if (a.base.n != n_ || b.base.n != n_)
        throw UsageError("coplanar: ambient dimension mismatch");
    if (a == b) return true;
    std::array<Vec, 3> vs{a.dir, b.dir, sub(b.base, a.base)};
    return rank(vs) <= 2;
}

bool Space::skew(const Line& a, const Line& b) const { return !coplanar(a, b); }

bool Space::meets(const Line& a, const Line& b) const {
    if (a == b) return true;
    return coplanar(a, b) && a.dir != b.dir;
}

std::optional<Vec> Space::intersection(const Line& a, const Line& b) const {
    if (a == b || !meets(a, b)) return std::nullopt;
    Vec p = a.base;
    for (int t = 0; t < field_.q(); ++t) {
        if (incident(p, b)) return p;
        p = add(p, a.dir);
    }
    throw InternalError("intersection: coplanar non-parallel lines share no point");
}

Flat Space::flat_from(const Vec& base, std::span<const Vec> dirs) const {
    check_vec(base, "flat_from");
    for (const Vec& d : dirs) check_vec(d, "flat_from");
    std::vector<Vec> rows(dirs.begin(), dirs.end());
    int k = rref(field_, n_, rows);
    if (static_cast<int>(dirs.size()) != k)
        throw UsageError("flat_from: directions are linearly dependent");
    if (k < 2 || k > 3 || k >= n_) throw UsageError("flat_from: flat dimension must be 2 or 3 and proper");
    Flat f;
    f.k = k;
    for (int i = 0; i < k; ++i) f.rows[i] = rows[i];
    f.base = base;
    for (int i = 0; i < k; ++i) {
        int piv = pivot_of(f.rows[i]);
        int t = f.base.c[piv];
        if (t != 0) f.base = sub(f.base, scale(t, f.rows[i]));
    }
    return f;
}

Flat Space::span3(const Line& a, const Line& b) const {
    if (!skew(a, b)) throw DegenerateInput("span3: lines are not skew");
    std::array<Vec, 3> dirs{a.dir, b.dir, sub(b.base, a.base)};
    return flat_from(a.base, dirs);
}

bool Space::contains(const Flat& f, const Vec& p) const {
    Vec r = sub(p, f.base);
    return dir_in(f, r) || is_zero(r);
}

bool Space::dir_in(const Flat& f, const Vec& d) const {
    Vec r = d;
    for (int i = 0; i < f.k; ++i) {
        int piv = pivot_of(f.rows[i]);
        int t = r.c[piv];
        if (t != 0) r = sub(r, scale(t, f.rows[i]));
    }
    return is_zero(r);
}

bool Space::contains_line(const Flat& f, const Line& l) const {
    return contains(f, l.base) && dir_in(f, l.dir);
}

bool Space::parallel_flats(const Flat& a, const Flat& b) const {
    if (a.k != b.k) return false;
    for (int i = 0; i < a.k; ++i)
        if (a.rows[i] != b.rows[i]) return false;
    return a.base != b.base;
}

std::vector<Vec> Space::points_of(const Flat& f) const {
    std::vector<Vec> pts;
    long total = ipow(field_.q(), f.k);
    pts.reserve(total);
    for (long m = 0; m < total; ++m) {
        long rem = m;
        Vec p = f.base;
        for (int i = 0; i < f.k; ++i) {
            int t = static_cast<int>(rem % field_.q());
            rem /= field_.q();
            if (t != 0) p = add(p, scale(t, f.rows[i]));
        }
        pts.push_back(p);
    }
    return pts;
}

long Space::flat_point_count(const Flat& f) const { return ipow(field_.q(), f.k); }

Vec Space::embed(const Flat& f, const Vec& intrinsic) const {
    if (intrinsic.n != f.k) throw UsageError("embed: intrinsic dimension mismatch");
    Vec p = f.base;
    for (int i = 0; i < f.k; ++i)
        if (intrinsic.c[i] != 0) p = add(p, scale(intrinsic.c[i], f.rows[i]));
    return p;
}

Vec Space::coords_in(const Flat& f, const Vec& ambient) const {
    if (!contains(f, ambient)) throw UsageError("coords_in: point not in flat");
    Vec r = sub(ambient, f.base);
    Vec t;
    t.n = f.k;
    for (int i = 0; i < f.k; ++i) t.c[i] = r.c[pivot_of(f.rows[i])];
    return t;
}

std::vector<Vec> Space::directions() const {
    std::vector<Vec> out;
    out.reserve(direction_count());
    for (int piv = 0; piv < n_; ++piv) {
        long combos = ipow(field_.q(), n_ - 1 - piv);
        for (long m = 0; m < combos; ++m) {
            Vec d;
            d.n = n_;
            d.c[piv] = 1;
            long rem = m;
            for (int j = piv + 1; j < n_; ++j) {
                d.c[j] = static_cast<int>(rem % field_.q());
                rem /= field_.q();
            }
            out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long Space::direction_count() const {
    return (ipow(field_.q(), n_) - 1) / (field_.q() - 1);
}

long Space::line_count() const {
    return ipow(field_.q(), n_ - 1) * direction_count();
}

long Space::flat_count(int k) const {
    if (k < 2 || k >= n_) throw UsageError("flat_count: k must be 2 or 3 and proper");
    long q = field_.q();
    // Gaussian binomial [n k]_q times q^(n-k) translates
    long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= ipow(q, n_ - i) - 1;
        den *= ipow(q, i + 1) - 1;
    }
    return num / den * ipow(q, n_ - k);
}

void Space::check_line_cap() const {
    if (n_ == 4 && field_.q() > 13)
        throw ResourceError("line enumeration cap: q <= 13 for n = 4");
    if (line_count() > kLineCap)
        throw ResourceError("line enumeration cap: more than 8e6 lines");
}

std::vector<Line> Space::lines_with_direction(const Vec& dir) const {
    int piv = pivot_of(dir);
    std::vector<Line> out;
    long combos = ipow(field_.q(), n_ - 1);
    out.reserve(combos);
    for (long m = 0; m < combos; ++m) {
        Vec b;
        b.n = n_;
        long rem = m;
        for (int j = 0; j < n_; ++j) {
            if (j == piv) continue;
            b.c[j] = static_cast<int>(rem % field_.q());
            rem /= field_.q();
        }
        out.push_back(line_from(b, dir)); // each line hits b[piv] == 0 exactly once
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Line> Space::all_lines() const {
    check_line_cap();
    std::vector<Line> out;
    out.reserve(line_count());
    for (const Vec& d : directions()) {
        auto batch = lines_with_direction(d);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

std::vector<Flat> Space::all_flats(int k) const {
    if (k < 2 || k > 3 || k >= n_) throw UsageError("all_flats: k must be 2 or 3 and proper");
    if (flat_count(k) > kFlatCap) throw ResourceError("flat enumeration cap exceeded");
    const int q = field_.q();
    std::vector<Flat> out;
    out.reserve(flat_count(k));
    // pivot column subsets in ascending bitmask order; global order fixed by the final sort
    for (int mask = 0; mask < (1 << n_); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        std::vector<int> pivots;
        for (int j = 0; j < n_; ++j)
            if (mask & (1 << j)) pivots.push_back(j);
        // free entries of the echelon matrix: (row i, col j) with j > pivots[i], j not a pivot
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i)
            for (int j = pivots[i] + 1; j < n_; ++j)
                if (!(mask & (1 << j))) free_pos.emplace_back(i, j);
        long fills = ipow(q, static_cast<int>(free_pos.size()));
        for (long fm = 0; fm < fills; ++fm) {
            Flat f;
            f.k = k;
            f.base.n = n_;
            for (int i = 0; i < k; ++i) {
                f.rows[i] = Vec{};
                f.rows[i].n = n_;
                f.rows[i].c[pivots[i]] = 1;
            }
            long rem = fm;
            for (auto [i, j] : free_pos) {
                f.rows[i].c[j] = static_cast<int>(rem % q);
                rem /= q;
            }
            // translates: base zero at pivot columns, free elsewhere
            long trans = ipow(q, n_ - k);
            for (long tm = 0; tm < trans; ++tm) {
                Flat g = f;
                long tr = tm;
                for (int j = 0; j < n_; ++j) {
                    if (mask & (1 << j)) continue;
                    g.base.c[j] = static_cast<int>(tr % q);
                    tr /= q;
                }
                out.push_back(g);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

FlatScanMax max_lines_in_flat(const Space& s, std::span<const Line> lines, int k, int jobs) {
    const std::vector<Flat> flats = s.all_flats(k);
    struct Best {
        long max = -1;
        long idx = -1;
    };
    Best best = chunked_reduce<Best>(
        static_cast<long>(flats.size()), jobs, Best{},
        [&](long lo, long hi) {
            Best b;
            for (long i = lo; i < hi; ++i) {
                long cnt = 0;
                for (const Line& l : lines)
                    if (s.contains_line(flats[i], l)) ++cnt;
                if (cnt > b.max) {
                    b.max = cnt;
                    b.idx = i;
                }
            }
            return b;
        },
        [](Best a, Best b) { return (b.max > a.max) ? b : a; });
    FlatScanMax r;
    r.max_lines = best.max < 0 ? 0 : best.max;
    if (best.idx >= 0) r.argmax = flats[best.idx];
    return r;
}

} // namespace kakeya
