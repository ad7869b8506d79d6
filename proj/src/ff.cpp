#include "kakeya/ff.hpp"

#include <cmath>
#include <numbers>

namespace kakeya {

namespace {

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

int mod(long long x, int p) {
    long long r = x % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

} // namespace

FieldSpec FieldSpec::prime(int p) {
    if (!is_odd_prime(p)) throw UsageError("FieldSpec: characteristic must be an odd prime > 2");
    FieldSpec s;
    s.p = p;
    s.degree = 1;
    return s;
}

FieldSpec FieldSpec::quadratic(int p) {
    if (!is_odd_prime(p)) throw UsageError("FieldSpec: characteristic must be an odd prime > 2");
    int s = Field::least_nonresidue(p);
    return quadratic(p, mod(-s, p), 0); // t^2 - s
}

FieldSpec FieldSpec::quadratic(int p, int m0, int m1) {
    if (!is_odd_prime(p)) throw UsageError("FieldSpec: characteristic must be an odd prime > 2");
    m0 = mod(m0, p);
    m1 = mod(m1, p);
    // irreducible over F_p iff no root; exhaustive trial over p residues
    for (int x = 0; x < p; ++x)
        if ((static_cast<long long>(x) * x + static_cast<long long>(m1) * x + m0) % p == 0)
            throw UsageError("FieldSpec: modulus has a root in F_p, not irreducible");
    FieldSpec s;
    s.p = p;
    s.degree = 2;
    s.modulus = {m0, m1};
    return s;
}

Field::Field(FieldSpec spec) : spec_(spec) {
    if (!is_odd_prime(spec_.p)) throw UsageError("Field: characteristic must be an odd prime > 2");
    if (spec_.degree != 1 && spec_.degree != 2) throw UsageError("Field: degree must be 1 or 2");
    if (spec_.degree == 2) {
        // re-validate irreducibility; specs may be hand-rolled
        int m0 = spec_.modulus[0], m1 = spec_.modulus[1];
        if (m0 < 0 || m0 >= spec_.p || m1 < 0 || m1 >= spec_.p)
            throw UsageError("Field: modulus coefficients must be reduced residues");
        for (int x = 0; x < spec_.p; ++x)
            if ((static_cast<long long>(x) * x + static_cast<long long>(m1) * x + m0) % spec_.p == 0)
                throw UsageError("Field: modulus has a root in F_p, not irreducible");
    }
    q_ = spec_.q();
    if (q_ <= 64) build_tables();
}

int Field::element(long long c0, long long c1) const {
    int a0 = mod(c0, spec_.p);
    int a1 = mod(c1, spec_.p);
    if (spec_.degree == 1) {
        if (a1 != 0) throw UsageError("Field::element: second coordinate in a prime field");
        return a0;
    }
    return a0 + a1 * spec_.p;
}

int Field::coord(int a, int i) const {
    if (i == 0) return a % spec_.p;
    if (i == 1 && spec_.degree == 2) return a / spec_.p;
    throw UsageError("Field::coord: coordinate index out of range");
}

int Field::add_slow(int a, int b) const {
    if (spec_.degree == 1) return mod(a + b, spec_.p);
    int p = spec_.p;
    return mod(a % p + b % p, p) + mod(a / p + b / p, p) * p;
}

int Field::sub_slow(int a, int b) const {
    if (spec_.degree == 1) return mod(a - b, spec_.p);
    int p = spec_.p;
    return mod(a % p - b % p, p) + mod(a / p - b / p, p) * p;
}

int Field::neg_slow(int a) const { return sub_slow(0, a); }

int Field::mul_slow(int a, int b) const {
    int p = spec_.p;
    if (spec_.degree == 1) return mod(static_cast<long long>(a) * b, p);
    long long a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
    long long m0 = spec_.modulus[0], m1 = spec_.modulus[1];
    // (a0 + a1 t)(b0 + b1 t) with t^2 = -m0 - m1 t
    long long hi = a1 * b1;
    int c0 = mod(a0 * b0 - hi * m0, p);
    int c1 = mod(a0 * b1 + a1 * b0 - hi * m1, p);
    return c0 + c1 * p;
}

int Field::inv_slow(int a) const {
    if (a == 0) throw DivisionByZero("Field::inv: inverse of zero");
    // a^(q-2) by Fermat/Lagrange
    int r = 1, base = a;
    long long e = q_ - 2;
    while (e > 0) {
        if (e & 1) r = mul_slow(r, base);
        base = mul_slow(base, base);
        e >>= 1;
    }
    return r;
}

int Field::inv(int a) const {
    if (a == 0) throw DivisionByZero("Field::inv: inverse of zero");
    return tables_ ? inv_tab_[a] : inv_slow(a);
}

int Field::pow(int a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    int r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

int Field::conj(int a) const {
    if (spec_.degree != 2) throw UsageError("Field::conj: requires a degree-2 field");
    if (tables_) return conj_tab_[a];
    // t maps to the other root -m1 - t of the modulus
    int p = spec_.p;
    int a0 = a % p, a1 = a / p;
    return mod(a0 - static_cast<long long>(a1) * spec_.modulus[1], p) + mod(-a1, p) * p;
}

int Field::im(int a) const {
    if (spec_.degree != 2) throw UsageError("Field::im: requires a degree-2 field");
    if (tables_) return im_tab_[a];
    return mul_slow(sub_slow(a, conj(a)), inv_slow(2 % spec_.p));
}

bool Field::is_square(int a) const {
    if (spec_.degree != 1) throw UnsupportedError("Field::is_square: degree-1 fields only");
    if (a == 0) return true;
    return pow(a, (spec_.p - 1) / 2) == 1;
}

int Field::least_nonresidue(int p) {
    std::vector<char> sq(p, 0);
    for (int x = 0; x < p; ++x) sq[static_cast<long long>(x) * x % p] = 1;
    for (int s = 2; s < p; ++s)
        if (!sq[s]) return s;
    throw InternalError("least_nonresidue: every residue is a square");
}

UnitComplex Field::char_e(int x) const {
    if (spec_.degree != 1)
        throw UnsupportedError("Field::char_e: characters of GF(p^2) are out of scope");
    return std::polar(1.0, 2.0 * std::numbers::pi * x / spec_.p);
}

UnitComplex Field::gauss_sum(int y) const {
    if (spec_.degree != 1)
        throw UnsupportedError("Field::gauss_sum: degree-1 fields only");
    UnitComplex s{0.0, 0.0};
    for (int x = 0; x < spec_.p; ++x) s += char_e(mul(y, mul(x, x)));
    return s;
}

void Field::build_tables() {
    tables_ = false; // slow paths while filling
    add_tab_.resize(static_cast<size_t>(q_) * q_);
    sub_tab_.resize(static_cast<size_t>(q_) * q_);
    mul_tab_.resize(static_cast<size_t>(q_) * q_);
    neg_tab_.resize(q_);
    inv_tab_.resize(q_);
    for (int a = 0; a < q_; ++a) {
        neg_tab_[a] = static_cast<int16_t>(neg_slow(a));
        inv_tab_[a] = static_cast<int16_t>(a == 0 ? 0 : inv_slow(a));
        for (int b = 0; b < q_; ++b) {
            add_tab_[a * q_ + b] = static_cast<int16_t>(add_slow(a, b));
            sub_tab_[a * q_ + b] = static_cast<int16_t>(sub_slow(a, b));
            mul_tab_[a * q_ + b] = static_cast<int16_t>(mul_slow(a, b));
        }
    }
    if (spec_.degree == 2) {
        conj_tab_.resize(q_);
        im_tab_.resize(q_);
        for (int a = 0; a < q_; ++a) {
            conj_tab_[a] = static_cast<int16_t>(conj(a));
            im_tab_[a] = static_cast<int16_t>(im(a));
        }
    }
    tables_ = true;
}

} // namespace kakeya
