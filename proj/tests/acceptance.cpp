// Acceptance suite: runs every criterion end to end and prints one pass/fail
// line per criterion. Exit code 0 iff all pass. argv[1] must point at the CLI
// binary (used by the determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kakeya/experiments.hpp"
#include "kakeya/rng.hpp"
#include "oracles.hpp"

using namespace kakeya;

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Space fspace(int p, int n) { return Space(Field(FieldSpec::prime(p)), n); }

PointSet union_of_points(const Space& s, std::span<const Line> lines) {
    PointSet p(s.point_count());
    for (const Line& l : lines)
        for (const Vec& pt : s.points_of(l)) p.insert(s.key(pt));
    return p;
}

struct Harness {
    int failures = 0;
    double total_secs = 0.0;

    template <class Fn>
    void run(int num, const char* name, double budget_secs, Fn&& fn) {
        using clock = std::chrono::steady_clock;
        auto start = clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = fn(note);
        } catch (const std::exception& e) {
            ok = false;
            note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(clock::now() - start).count();
        total_secs += secs;
        if (secs >= budget_secs) {
            ok = false;
            note += note.empty() ? "" : "; ";
            note += "over runtime budget";
        }
        std::printf("criterion %2d [%s] %s%s%s (%.2fs, budget %.0fs)\n", num,
                    ok ? "PASS" : "FAIL", name, note.empty() ? "" : " -- ",
                    note.c_str(), secs, budget_secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    Harness h;

    h.run(1, "gauss sums: S(0) = |F| and |S(y)|^2 = |F| for y != 0", 1.0,
          [](std::string& note) {
              bool ok = true;
              for (int p : {3, 5, 7, 11, 13}) {
                  Field f{FieldSpec::prime(p)};
                  ok = ok && std::abs(f.gauss_sum(0) - UnitComplex(p, 0.0)) < 1e-12;
                  for (int y = 1; y < p; ++y)
                      ok = ok && std::abs(std::norm(f.gauss_sum(y)) - p) < 1e-6;
              }
              note = "p in {3,5,7,11,13}";
              return ok;
          });

    h.run(2, "level sets: strict q^(n/2) window and Gauss identity", 30.0,
          [](std::string& note) {
              bool ok = true;
              long forms = 0;
              for (int p : {3, 5, 7, 11, 13}) {
                  Field f{FieldSpec::prime(p)};
                  int s = Field::least_nonresidue(p);
                  for (int n = 3; n <= 4; ++n) {
                      for (int mask = 0; mask < (1 << n); ++mask) {
                          std::vector<int> entries(n);
                          for (int i = 0; i < n; ++i) entries[i] = (mask & (1 << i)) ? s : 1;
                          auto q = QuadraticForm::diagonal(f, entries);
                          auto hist = level_set_histogram(q);
                          ++forms;
                          for (int v = 0; v < p; ++v) {
                              ok = ok && std::abs(hist[v] - ipow(p, n - 1)) <
                                             std::pow(p, n / 2.0);
                              ok = ok && std::abs(gauss_estimate(q, v) -
                                                  UnitComplex(static_cast<double>(hist[v]),
                                                              0.0)) < 1e-4;
                          }
                      }
                  }
              }
              note = std::to_string(forms) + " rank>=3 diagonal forms";
              return ok;
          });

    h.run(3, "sphere build: containment, windows, oracles, Wolff audit", 120.0,
          [](std::string& note) {
              bool ok = true;
              for (int q : {3, 5, 7, 11}) {
                  Space s = fspace(q, 4);
                  int nr = Field::least_nonresidue(q);
                  for (std::vector<int> entries :
                       {std::vector<int>{1, 1, 1, 1}, std::vector<int>{1, 1, 1, nr}}) {
                      auto form = QuadraticForm::diagonal(s.field(), entries);
                      auto b = build_sphere_example(s, form);
                      long np = b.config.points.size();
                      long nl = static_cast<long>(b.config.lines.size());
                      for (const Line& l : b.config.lines)
                          for (const Vec& pt : s.points_of(l))
                              ok = ok && b.config.points.contains(s.key(pt));
                      ok = ok && np >= ipow(q, 3) / 8 && np <= 8 * ipow(q, 3);
                      ok = ok && nl >= ipow(q, 3) / 8 && nl <= 8 * ipow(q, 3);
                      ok = ok && !direction_audit(b.config.lines).all_distinct;
                      if (q == 3 && entries == std::vector<int>{1, 1, 1, 1}) {
                          // independent raw-arithmetic oracle for |P|
                          long raw = 0;
                          for (int a = 0; a < 3; ++a)
                              for (int bb = 0; bb < 3; ++bb)
                                  for (int c = 0; c < 3; ++c)
                                      for (int d = 0; d < 3; ++d)
                                          if ((a * a + bb * bb + c * c + d * d) % 3 == 1)
                                              ++raw;
                          ok = ok && raw == 24 && np == 24;
                      }
                      if (q <= 5) {
                          ok = ok && lines_contained(s, b.config.points) == b.config.lines;
                          ok = ok && wolff_audit(s, b.config.lines, 3).max_lines <= 10L * q;
                          ok = ok && wolff_audit(s, b.config.lines, 2).max_lines <= 10L * q;
                      }
                  }
              }
              note = "q in {3,5,7,11}, forms diag(1,1,1,1) and diag(1,1,1,s)";
              return ok;
          });

    h.run(4, "Heisenberg group: |P| = p^5 by exhaustive scan", 30.0,
          [](std::string& note) {
              bool ok = true;
              for (int p : {3, 5}) {
                  Field f{FieldSpec::quadratic(p)};
                  auto c = build_heisenberg(f);
                  ok = ok && c.points.size() == ipow(p, 5);
              }
              note = "p in {3,5}";
              return ok;
          });

    h.run(5, "model regulus: transversals, r(f), fitted quadric", 60.0,
          [](std::string& note) {
              bool ok = true;
              for (int q : {3, 5, 7}) {
                  Space s = fspace(q, 4);
                  Frame f = model_frame(s);
                  Regulus r = make_regulus(s, f);
                  ok = ok && static_cast<int>(r.lines.size()) == q;
                  ok = ok && r.points.size() == q * q;
                  ok = ok && transversals_fullscan(s, f) == r.lines;
                  QuadricFit fit = fit_quadric(s, r);
                  for (long k : r.points.keys())
                      ok = ok && eval_fit(s.field(), fit,
                                          s.coords_in(f.lambda, s.point_at(k))) == 0;
                  int c = fit.coeffs[3];
                  std::array<int, 10> want{};
                  want[3] = c;
                  want[5] = s.field().neg(c);
                  ok = ok && c != 0 && fit.coeffs == want;
              }
              note = "q in {3,5,7}";
              return ok;
          });

    h.run(6, "three-regulus variety: exact counts and random window", 120.0,
          [](std::string& note) {
              bool ok = true;
              for (int q : {3, 5}) {
                  Space s = fspace(q, 4);
                  std::array<Regulus, 3> reg;
                  for (int c = 0; c < 3; ++c) {
                      std::array<Line, 3> ls;
                      for (int y = 0; y < 3; ++y)
                          ls[y] = s.line_from(s.vec({0, y, 0, c}), s.vec({1, 0, y, 0}));
                      reg[c] = make_regulus(s, make_frame(s, ls[0], ls[1], ls[2]));
                  }
                  long w = transversal_variety_count(s, reg[0], reg[1], reg[2]);
                  ok = ok && w == 2 * ipow(q, 3) - ipow(q, 2);
                  // independent analytical-pruning oracle: lines transverse to
                  // the stack have d4 != 0 and x(w)y(w) - z(w) vanishing
                  // identically
                  const Field& F = s.field();
                  std::set<Line> analytic;
                  for (int x0 = 0; x0 < q; ++x0)
                      for (int y0 = 0; y0 < q; ++y0)
                          for (int dx = 0; dx < q; ++dx)
                              for (int dy = 0; dy < q; ++dy) {
                                  if (F.mul(dx, dy) != 0) continue;
                                  Vec base = s.vec({x0, y0, F.mul(x0, y0), 0});
                                  Vec dir{4, {dx, dy,
                                              F.add(F.mul(x0, dy), F.mul(y0, dx)), 1}};
                                  analytic.insert(s.line_from(base, dir));
                              }
                  ok = ok && static_cast<long>(analytic.size()) == w;
              }
              {
                  Space s = fspace(3, 4);
                  std::mt19937_64 gen(42);
                  for (int trial = 0; trial < 3; ++trial) {
                      auto reg = random_parallel_reguli(s, gen);
                      long w = transversal_variety_count(s, reg[0], reg[1], reg[2]);
                      ok = ok && w <= 8 * ipow(3, 3);
                  }
              }
              note = "W = 45, 225; 3 seeded random triples at q = 3";
              return ok;
          });

    h.run(7, "combinatorial suite: cz exactness, easy bound, popularity, plates", 60.0,
          [](std::string& note) {
              bool ok = true;
              std::mt19937_64 gen(42);
              for (int trial = 0; trial < 20; ++trial) {
                  int a = 10 + static_cast<int>(bounded(gen, 41));
                  int b = 5 + static_cast<int>(bounded(gen, 46));
                  auto rel = random_relation(a, b, 350, gen);
                  long long x = 0;
                  for (auto& row : rel) x += static_cast<long long>(row.count());
                  if (x < 2 * b) {
                      --trial;
                      continue;
                  }
                  auto fast = cz_counts(rel);
                  auto slow = oracle::cz_brute(rel);
                  ok = ok && fast.x == slow.x && fast.pairs == slow.pairs &&
                       fast.triples == slow.triples;
              }
              // easy bound on every instance this suite generates
              {
                  Space s = fspace(3, 4);
                  auto form = QuadraticForm::diagonal(s.field(), {1, 1, 1, 1});
                  auto b = build_sphere_example(s, form);
                  ok = ok &&
                       easy_bound_check(s, b.config.points, b.config.lines).ratio <= 8.0;
                  for (int trial = 0; trial < 10; ++trial) {
                      int n = 4 + static_cast<int>(bounded(gen, 36));
                      auto fam = random_direction_separated(s, n, gen);
                      auto pts = union_of_points(s, fam);
                      ok = ok && easy_bound_check(s, pts, fam).ratio <= 8.0;
                  }
              }
              // popularity keeps at least half the weight, always
              for (int trial = 0; trial < 50; ++trial) {
                  std::vector<long> w(60);
                  long total = 0;
                  for (auto& x : w) {
                      x = static_cast<long>(bounded(gen, 30));
                      total += x;
                  }
                  if (total == 0) continue;
                  long kw = 0;
                  for (size_t i : popularity_refine(w, total)) kw += w[i];
                  ok = ok && 2 * kw >= total;
              }
              // plate number of direction-separated families
              for (int q : {3, 5}) {
                  Space s = fspace(q, 4);
                  for (int trial = 0; trial < 3; ++trial) {
                      auto fam = random_direction_separated(s, 2 * q * q, gen);
                      ok = ok && plate_number(s, fam).max <= q + 1;
                  }
              }
              note = "20 cz instances vs cubic brute force; all windows held";
              return ok;
          });

    h.run(8, "iterated refinement: stage invariants and diagnostics", 120.0,
          [](std::string& note) {
              bool ok = true;
              Space s = fspace(5, 4);
              auto form = QuadraticForm::diagonal(s.field(), {1, 1, 1, 1});
              auto b = build_sphere_example(s, form);
              auto t0 = incidence_tables(s, b.config.points, b.config.lines);
              auto rep = refine_pipeline(s, b.config.points, b.config.lines, 3, true);
              ok = ok && rep.stages.size() == 4;
              for (size_t k = 1; k < rep.stages.size(); ++k) {
                  ok = ok && 4 * rep.stages[k].incidences >= rep.stages[k - 1].incidences;
                  ok = ok && rep.stages[k].points <= rep.stages[k - 1].points;
                  ok = ok && rep.stages[k].lines <= rep.stages[k - 1].lines;
              }
              long lo = 1L << rep.dyadic_class;
              for (long key : rep.final_points.keys())
                  ok = ok && t0.mu[key] >= lo && t0.mu[key] < 2 * lo;
              for (const StageLog& st : rep.stages)
                  ok = ok && st.plate >= 1 && st.max_in_3flat >= 1; // emitted

              // seeded random direction-separated family
              std::mt19937_64 gen(42);
              auto fam = random_direction_separated(s, 100, gen);
              auto pts = union_of_points(s, fam);
              auto tf = incidence_tables(s, pts, fam);
              auto rf = refine_pipeline(s, pts, fam, 3, true);
              for (size_t k = 1; k < rf.stages.size(); ++k) {
                  ok = ok && 4 * rf.stages[k].incidences >= rf.stages[k - 1].incidences;
                  ok = ok && rf.stages[k].points <= rf.stages[k - 1].points;
                  ok = ok && rf.stages[k].lines <= rf.stages[k - 1].lines;
              }
              long lo2 = 1L << rf.dyadic_class;
              for (long key : rf.final_points.keys())
                  ok = ok && tf.mu[key] >= lo2 && tf.mu[key] < 2 * lo2;
              note = "sphere q=5 N=3 and a 100-line seeded family";
              return ok;
          });

    h.run(9, "harvest: connecting-set identity and slow reference", 120.0,
          [](std::string& note) {
              bool ok = true;
              Space s = fspace(3, 4);
              auto form = QuadraticForm::diagonal(s.field(), {1, 1, 1, 1});
              auto b = build_sphere_example(s, form);
              std::mt19937_64 gen(42);
              auto fam = sample_lines(b.config.lines, 200, gen);
              auto h2 = h_harvest(s, b.config.points, fam);
              ok = ok && h2.sum_c == h2.h1;
              ok = ok && h2.h1 <= h2.h0;
              auto sub = sample_lines(fam, 30, gen);
              auto fast = h_harvest(s, b.config.points, sub);
              auto slow = oracle::slow_harvest(s, b.config.points, sub);
              ok = ok && fast.h0 == slow.h0 && fast.h1 == slow.h1 && fast.s0 == slow.s0 &&
                   fast.s1 == slow.s1 && fast.sum_c == slow.sum_c &&
                   fast.sum_c3 == slow.sum_c3;
              note = "family of " + std::to_string(fam.size()) +
                     " sphere lines; 30-line slow reference";
              return ok;
          });

    h.run(10, "determinism: repeated runs and jobs invariance", 600.0,
          [&](std::string& note) {
              if (cli.empty()) {
                  note = "CLI path missing (argv[1])";
                  return false;
              }
              auto run_cli = [&](const std::string& args, const std::string& out) {
                  std::string cmd = cli + " " + args + " --out " + out + " 2>/dev/null";
                  return std::system(cmd.c_str());
              };
              int rc1 = run_cli("--experiment all --seed 42 --jobs 1", "acc_run1.json");
              int rc2 = run_cli("--experiment all --seed 42 --jobs 1", "acc_run2.json");
              int rc3 = run_cli("--experiment all --seed 42 --jobs 8", "acc_run3.json");
              if (rc1 != 0 || rc2 != 0 || rc3 != 0) {
                  note = "CLI exit codes: " + std::to_string(rc1) + "," +
                         std::to_string(rc2) + "," + std::to_string(rc3);
                  return false;
              }
              auto j1 = nlohmann::ordered_json::parse(read_file("acc_run1.json"));
              auto j2 = nlohmann::ordered_json::parse(read_file("acc_run2.json"));
              auto j3 = nlohmann::ordered_json::parse(read_file("acc_run3.json"));
              j1.erase("timestamp");
              j2.erase("timestamp");
              bool ok = j1.dump() == j2.dump();
              ok = ok && j1["results"] == j3["results"] && j1["summary"] == j3["summary"];
              note = "all-suite runs compared modulo timestamp";
              return ok;
          });

    std::printf("acceptance total: %.1fs, %d failing criteria\n", h.total_secs, h.failures);
    if (h.total_secs >= 600.0) {
        std::printf("acceptance total exceeded the 10 minute budget\n");
        return 1;
    }
    return h.failures == 0 ? 0 : 1;
}
