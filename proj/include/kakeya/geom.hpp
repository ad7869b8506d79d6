#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "kakeya/ff.hpp"

namespace kakeya {

// Coordinate vector in F_q^n, n <= 4. Entries are canonical element indices;
// comparisons are lexicographic on (c[0], ..., c[n-1]).
struct Vec {
    int n = 0;
    std::array<int, 4> c{0, 0, 0, 0};

    friend bool operator==(const Vec&, const Vec&) = default;
    friend std::strong_ordering operator<=>(const Vec& a, const Vec& b) {
        if (auto cmp = a.n <=> b.n; cmp != 0) return cmp;
        for (int i = 0; i < a.n; ++i)
            if (auto cmp = a.c[i] <=> b.c[i]; cmp != 0) return cmp;
        return std::strong_ordering::equal;
    }
};

using Point = Vec;

// Canonical affine line {base + t*dir}: dir's first nonzero coordinate is 1
// and base is the lexicographically least point on the line, so value
// equality is point-set equality.
struct Line {
    Vec base, dir;
    friend bool operator==(const Line&, const Line&) = default;
    friend std::strong_ordering operator<=>(const Line& a, const Line& b) {
        if (auto cmp = a.dir <=> b.dir; cmp != 0) return cmp;
        return a.base <=> b.base;
    }
};

// Canonical affine k-flat, k in {2,3}: direction rows in reduced row echelon
// form, base zeroed at every pivot coordinate.
struct Flat {
    int k = 0;
    Vec base;
    std::array<Vec, 3> rows{};
    friend bool operator==(const Flat&, const Flat&) = default;
    friend std::strong_ordering operator<=>(const Flat& a, const Flat& b) {
        if (auto cmp = a.k <=> b.k; cmp != 0) return cmp;
        for (int i = 0; i < a.k; ++i)
            if (auto cmp = a.rows[i] <=> b.rows[i]; cmp != 0) return cmp;
        return a.base <=> b.base;
    }
};

// Point set over the mixed-radix key space of F_q^n. Keys encode coordinates
// little-endian: key = c[0] + q*c[1] + q^2*c[2] + ...
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(long universe) : bits_(universe) {}

    void insert(long key) { bits_.set(key); }
    void erase(long key) { bits_.reset(key); }
    bool contains(long key) const { return bits_.test(key); }
    long size() const { return static_cast<long>(bits_.count()); }
    long universe() const { return static_cast<long>(bits_.size()); }
    bool empty() const { return bits_.none(); }

    std::vector<long> keys() const {
        std::vector<long> out;
        out.reserve(bits_.count());
        for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos;
             i = bits_.find_next(i))
            out.push_back(static_cast<long>(i));
        return out;
    }

    PointSet& operator|=(const PointSet& o) { bits_ |= o.bits_; return *this; }
    PointSet& operator&=(const PointSet& o) { bits_ &= o.bits_; return *this; }
    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    boost::dynamic_bitset<> bits_;
};

// Affine space F_q^n with canonical construction and exhaustive enumeration
// of its points, lines, and flats. All geometry goes through here so that
// every Line/Flat value in the program is canonical.
class Space {
public:
    Space(Field field, int n);

    const Field& field() const { return field_; }
    int dim() const { return n_; }
    int q() const { return field_.q(); }
    long point_count() const { return points_; }

    // mixed-radix keys, coordinate 0 least significant
    long key(const Vec& v) const;
    Vec point_at(long key) const;
    Vec vec(std::initializer_list<int> coords) const;

    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec scale(int t, const Vec& a) const;
    bool is_zero(const Vec& a) const;
    int dot(const Vec& a, const Vec& b) const;

    // rank of a list of vectors; rref reduces rows in place and returns rank
    int rank(std::span<const Vec> vs) const;

    Line line_from(const Vec& base, const Vec& dir) const;
    Line line_through(const Vec& p, const Vec& r) const;
    std::vector<Vec> points_of(const Line& l) const;
    bool incident(const Vec& p, const Line& l) const;
    bool parallel(const Line& a, const Line& b) const;
    bool coplanar(const Line& a, const Line& b) const;
    bool skew(const Line& a, const Line& b) const;
    bool meets(const Line& a, const Line& b) const;
    // the single common point of two coplanar non-parallel distinct lines
    std::optional<Vec> intersection(const Line& a, const Line& b) const;

    Flat flat_from(const Vec& base, std::span<const Vec> dirs) const;
    Flat span3(const Line& a, const Line& b) const;
    bool contains(const Flat& f, const Vec& p) const;
    bool dir_in(const Flat& f, const Vec& d) const;
    bool contains_line(const Flat& f, const Line& l) const;
    bool parallel_flats(const Flat& a, const Flat& b) const;
    std::vector<Vec> points_of(const Flat& f) const;
    long flat_point_count(const Flat& f) const;
    // intrinsic coordinates: embed(f, t) = base + sum t_i rows_i
    Vec embed(const Flat& f, const Vec& intrinsic) const;
    Vec coords_in(const Flat& f, const Vec& ambient) const;

    // enumeration, deterministic lexicographic order throughout
    std::vector<Vec> directions() const; // canonical projective directions
    long direction_count() const;
    long line_count() const;
    long flat_count(int k) const;
    std::vector<Line> lines_with_direction(const Vec& dir) const; // sorted
    std::vector<Line> all_lines() const;
    std::vector<Flat> all_flats(int k) const;
    void check_line_cap() const; // ResourceError when full enumeration is out of reach

private:
    void check_vec(const Vec& v, const char* who) const;

    Field field_;
    int n_;
    long points_;
};

// max over k-flats of the number of family lines contained in the flat,
// with the lexicographically least flat attaining it
struct FlatScanMax {
    long max_lines = 0;
    Flat argmax{};
};
FlatScanMax max_lines_in_flat(const Space& s, std::span<const Line> lines, int k,
                              int jobs = 1);

} // namespace kakeya
