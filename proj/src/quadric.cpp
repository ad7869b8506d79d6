#include "kakeya/quadric.hpp"

#include <algorithm>

namespace kakeya {

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

constexpr long kScanCap = 1'000'000;

} // namespace

QuadraticForm::QuadraticForm(const Field& field, int n, std::span<const int> row_major)
    : field_(field), n_(n), m_(row_major.begin(), row_major.end()) {
    if (field_.degree() != 1)
        throw UnsupportedError("QuadraticForm: forms over GF(p^2) are out of scope");
    if (n < 1 || n > 4) throw UsageError("QuadraticForm: n must be 1..4");
    if (static_cast<int>(m_.size()) != n * n)
        throw UsageError("QuadraticForm: matrix size mismatch");
    for (int& x : m_) {
        if (x < 0 || x >= field_.q()) x = field_.element(x);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (m_[i * n + j] != m_[j * n + i])
                throw UsageError("QuadraticForm: matrix is not symmetric");
    diagonalize();
}

QuadraticForm QuadraticForm::diagonal(const Field& field, std::span<const int> entries) {
    int n = static_cast<int>(entries.size());
    std::vector<int> m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = entries[i];
    return QuadraticForm(field, n, m);
}

QuadraticForm QuadraticForm::diagonal(const Field& field, std::initializer_list<int> entries) {
    std::vector<int> e(entries);
    return diagonal(field, std::span<const int>(e));
}

int QuadraticForm::evaluate(const Vec& x) const {
    if (x.n != n_) throw UsageError("QuadraticForm::evaluate: dimension mismatch");
    return bilinear(x, x);
}

int QuadraticForm::bilinear(const Vec& x, const Vec& y) const {
    const Field& F = field_;
    int s = 0;
    for (int i = 0; i < n_; ++i) {
        if (x.c[i] == 0) continue;
        int row = 0;
        for (int j = 0; j < n_; ++j) row = F.add(row, F.mul(m_[i * n_ + j], y.c[j]));
        s = F.add(s, F.mul(x.c[i], row));
    }
    return s;
}

void QuadraticForm::diagonalize() {
    const Field& F = field_;
    const int n = n_;
    std::vector<int> d = m_;     // working copy, congruence-transformed in place
    std::vector<int> a(n * n, 0); // accumulated basis, columns are new basis vectors
    for (int i = 0; i < n; ++i) a[i * n + i] = 1;

    auto col_add = [&](std::vector<int>& mat, int dst, int c, int src) {
        for (int r = 0; r < n; ++r)
            mat[r * n + dst] = F.add(mat[r * n + dst], F.mul(c, mat[r * n + src]));
    };
    auto row_add = [&](std::vector<int>& mat, int dst, int c, int src) {
        for (int col = 0; col < n; ++col)
            mat[dst * n + col] = F.add(mat[dst * n + col], F.mul(c, mat[src * n + col]));
    };
    auto col_swap = [&](std::vector<int>& mat, int x, int y) {
        for (int r = 0; r < n; ++r) std::swap(mat[r * n + x], mat[r * n + y]);
    };
    auto row_swap = [&](std::vector<int>& mat, int x, int y) {
        for (int col = 0; col < n; ++col) std::swap(mat[x * n + col], mat[y * n + col]);
    };
    // basis change e_dst <- e_dst + c*e_src, tracked in a
    auto congr_add = [&](int dst, int c, int src) {
        col_add(d, dst, c, src);
        row_add(d, dst, c, src);
        col_add(a, dst, c, src);
    };
    auto congr_swap = [&](int x, int y) {
        if (x == y) return;
        col_swap(d, x, y);
        row_swap(d, x, y);
        col_swap(a, x, y);
    };

    for (int i = 0; i < n; ++i) {
        if (d[i * n + i] == 0) {
            int j = -1;
            for (int r = i + 1; r < n; ++r)
                if (d[r * n + r] != 0) { j = r; break; }
            if (j >= 0) {
                congr_swap(i, j);
            } else {
                // no nonzero diagonal left; symmetrize an off-diagonal entry
                int pr = -1, pc = -1;
                for (int r = i; r < n && pr < 0; ++r)
                    for (int c = r + 1; c < n; ++c)
                        if (d[r * n + c] != 0) { pr = r; pc = c; break; }
                if (pr < 0) break; // remaining block is zero
                congr_add(pr, 1, pc); // new (pr,pr) entry is 2*d[pr][pc] != 0 since char != 2
                congr_swap(i, pr);
            }
        }
        int piv = d[i * n + i];
        int piv_inv = F.inv(piv);
        for (int j = i + 1; j < n; ++j) {
            int off = d[i * n + j];
            if (off != 0) congr_add(j, F.neg(F.mul(off, piv_inv)), i);
        }
    }

    // verify A^T M A == D by multiplication
    std::vector<int> tmp(n * n, 0), check(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = 0;
            for (int k = 0; k < n; ++k) s = F.add(s, F.mul(m_[i * n + k], a[k * n + j]));
            tmp[i * n + j] = s;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = 0;
            for (int k = 0; k < n; ++k) s = F.add(s, F.mul(a[k * n + i], tmp[k * n + j]));
            check[i * n + j] = s;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (check[i * n + j] != ((i == j) ? d[i * n + i] : 0))
                throw InternalError("QuadraticForm: A^T M A is not the computed diagonal");

    basis_ = std::move(a);
    diag_.clear();
    for (int i = 0; i < n; ++i)
        if (d[i * n + i] != 0) diag_.push_back(d[i * n + i]);
    rank_ = static_cast<int>(diag_.size());
    // pivoting keeps nonzero entries in the leading positions
    for (int i = rank_; i < n; ++i)
        if (d[i * n + i] != 0) throw InternalError("QuadraticForm: zero entries not trailing");
}

namespace {

template <class Fn>
void scan_vectors(const QuadraticForm& q, Fn&& fn) {
    long total = ipow(q.field().q(), q.n());
    if (total > kScanCap)
        throw ResourceError("level-set scan cap: q^n <= 1e6");
    Vec x;
    x.n = q.n();
    for (long k = 0; k < total; ++k) {
        fn(x, k);
        for (int i = 0; i < q.n(); ++i) { // odometer
            if (++x.c[i] < q.field().q()) break;
            x.c[i] = 0;
        }
    }
}

} // namespace

std::vector<long> level_set_histogram(const QuadraticForm& q) {
    std::vector<long> h(q.field().q(), 0);
    scan_vectors(q, [&](const Vec& x, long) { ++h[q.evaluate(x)]; });
    return h;
}

long level_set_count(const QuadraticForm& q, int v) {
    if (v < 0 || v >= q.field().q()) throw UsageError("level_set_count: bad target");
    long c = 0;
    scan_vectors(q, [&](const Vec& x, long) { c += (q.evaluate(x) == v); });
    return c;
}

std::complex<double> gauss_estimate(const QuadraticForm& q, int v) {
    const Field& F = q.field();
    const int p = F.q();
    if (v < 0 || v >= p) throw UsageError("gauss_estimate: bad target");
    const int n = q.n();
    const int k = q.rank();
    std::vector<std::complex<double>> s(p);
    for (int y = 0; y < p; ++y) s[y] = F.gauss_sum(y);
    const double dummy = static_cast<double>(ipow(p, n - k));
    std::complex<double> acc = 0.0;
    for (int y = 1; y < p; ++y) {
        std::complex<double> prod = F.char_e(F.neg(F.mul(v, y)));
        for (int a : q.diagonal_entries()) prod *= s[F.mul(a, y)];
        acc += prod * dummy;
    }
    return static_cast<double>(ipow(p, n - 1)) + acc / static_cast<double>(p);
}

std::vector<Vec> null_vectors(const QuadraticForm& q) {
    std::vector<Vec> out;
    scan_vectors(q, [&](const Vec& x, long k) {
        if (k != 0 && q.evaluate(x) == 0) out.push_back(x);
    });
    return out;
}

QuadraticForm restrict_form(const QuadraticForm& q, std::span<const Vec> dirs) {
    const int k = static_cast<int>(dirs.size());
    if (k < 1 || k > q.n()) throw UsageError("restrict_form: bad direction count");
    // independence check by row reduction
    {
        std::vector<Vec> rows(dirs.begin(), dirs.end());
        const Field& F = q.field();
        int r = 0;
        for (int col = 0; col < q.n() && r < k; ++col) {
            int piv = -1;
            for (int i = r; i < k; ++i)
                if (rows[i].c[col] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(rows[r], rows[piv]);
            int inv = F.inv(rows[r].c[col]);
            for (int j = 0; j < q.n(); ++j) rows[r].c[j] = F.mul(inv, rows[r].c[j]);
            for (int i = 0; i < k; ++i) {
                if (i == r || rows[i].c[col] == 0) continue;
                int f = rows[i].c[col];
                for (int j = 0; j < q.n(); ++j)
                    rows[i].c[j] = F.sub(rows[i].c[j], F.mul(f, rows[r].c[j]));
            }
            ++r;
        }
        if (r != k) throw UsageError("restrict_form: directions are linearly dependent");
    }
    std::vector<int> gram(k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram[i * k + j] = q.bilinear(dirs[i], dirs[j]);
    return QuadraticForm(q.field(), k, gram);
}

std::vector<Vec> perp_basis(const QuadraticForm& q, const Vec& v) {
    const Field& F = q.field();
    const int n = q.n();
    Vec w; // w_i = <e_i, v>
    w.n = n;
    for (int i = 0; i < n; ++i) {
        Vec e{};
        e.n = n;
        e.c[i] = 1;
        w.c[i] = q.bilinear(e, v);
    }
    int piv = -1;
    for (int i = 0; i < n; ++i)
        if (w.c[i] != 0) { piv = i; break; }
    if (piv < 0) throw DegenerateInput("perp_basis: v lies in the radical of the form");
    std::vector<Vec> basis;
    basis.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
        if (j == piv) continue;
        Vec b{};
        b.n = n;
        b.c[j] = 1;
        b.c[piv] = F.neg(F.div(w.c[j], w.c[piv]));
        basis.push_back(b);
    }
    return basis;
}

} // namespace kakeya
