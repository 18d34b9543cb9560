/*
 * Acceptance gate: every headline guarantee of the library, one line of output
 * per criterion. Checks are done against independent re-computations (plain
 * int64 modular arithmetic, direct subset-sum loops, full brute force over
 * colorings) rather than against the code under test.
 */
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quadpat/avoidance.hpp"
#include "quadpat/cover.hpp"
#include "quadpat/json_io.hpp"
#include "quadpat/walk.hpp"

using namespace quadpat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::int64_t modpow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ThickTestFamily fam12(const GroundSet& g) {
  return make_thick_family(g, {Rational(1), Rational(2)}, 2, 2);
}

/* ---- independent instance enumeration over [1..N], plain ints ---- */

std::vector<std::vector<int>> interval_instances(char kind, int N) {
  std::vector<std::vector<int>> out;
  for (int x = 1; x <= N; ++x)
    for (int y = 1; y <= N; ++y) {
      if (kind == 's') {
        if (x + y <= N) out.push_back({x, y, x + y});
      } else if (kind == 'm') {
        if (x * y <= N && x + y <= N) out.push_back({x, x * y, x + y});
      } else {
        if (x * y <= N && x + y <= N) out.push_back({x, y, x * y, x + y});
      }
    }
  return out;
}

bool mask_avoids(std::uint32_t mask, const std::vector<std::vector<int>>& insts) {
  for (const auto& inst : insts) {
    const std::uint32_t c0 = (mask >> (inst[0] - 1)) & 1u;
    bool mono = true;
    for (int v : inst)
      if (((mask >> (v - 1)) & 1u) != c0) {
        mono = false;
        break;
      }
    if (mono) return false;
  }
  return true;
}

bool brute_forced(const std::vector<std::vector<int>>& insts, int N) {
  for (std::uint32_t mask = 0; mask < (1u << N); ++mask)
    if (mask_avoids(mask, insts)) return false;
  return true;
}

bool coloring_avoids(const Coloring& c, const std::vector<std::vector<int>>& insts) {
  for (const auto& inst : insts) {
    const auto c0 = c.color_idx(std::uint32_t(inst[0] - 1));
    bool mono = true;
    for (int v : inst)
      if (c.color_idx(std::uint32_t(v - 1)) != c0) {
        mono = false;
        break;
      }
    if (mono) return false;
  }
  return true;
}

/* ---- criteria, cheapest first ---- */

Outcome count_oracle() {
  const PatternTemplate quad = builtin_pattern(BuiltinPattern::Quad);
  std::ostringstream d;
  for (std::int64_t p : {5, 7, 11, 101}) {
    const GroundSet g = GroundSet::prime_field(p);
    const auto counts = count_monochromatic(Coloring::constant(g, 2, 0), quad);
    const std::uint64_t want = std::uint64_t(p - 1) * std::uint64_t(p - 1);
    if (counts.total != want) {
      std::ostringstream e;
      e << "p=" << p << " counted " << counts.total << ", expected " << want;
      return {false, e.str()};
    }
    d << (p == 5 ? "" : ", ") << "p=" << p << ":" << counts.total;
  }
  return {true, "all-one field counts equal (p-1)^2 (" + d.str() + ")"};
}

Outcome encoder_determinism() {
  const PatternTemplate quad = builtin_pattern(BuiltinPattern::Quad);
  std::size_t bytes = 0;
  for (const auto& [g, n] : {std::pair{GroundSet::interval(1, 252), 2},
                             std::pair{GroundSet::prime_field(101), 3}}) {
    const std::string once = to_dimacs(encode_cnf(g, n, quad, 1));
    const std::string again = to_dimacs(encode_cnf(g, n, quad, 1));
    const std::string wide = to_dimacs(encode_cnf(g, n, quad, 8));
    if (once != again) return {false, "repeat run bytes differ on " + g.describe()};
    if (once != wide) return {false, "1-thread vs 8-thread bytes differ on " + g.describe()};
    bytes += once.size();
  }
  std::ostringstream d;
  d << "byte-identical DIMACS across reruns and 1 vs 8 threads (" << bytes << " bytes checked)";
  return {true, d.str()};
}

Outcome small_range_avoidance() {
  const PatternTemplate quad = builtin_pattern(BuiltinPattern::Quad);
  int largest_avoiding = 0;
  for (int N = 1; N <= 12; ++N) {
    const auto insts = interval_instances('q', N);
    const bool oracle_forced = brute_forced(insts, N);
    if (!oracle_forced) largest_avoiding = N;

    const GroundSet g = GroundSet::interval(1, N);
    for (auto method : {SearchMethod::Exhaustive, SearchMethod::Sat}) {
      const AvoidanceResult r = avoidance_search(g, 2, quad, method);
      if (r.forced != oracle_forced) {
        std::ostringstream e;
        e << "N=" << N << " " << method_name(method) << " says "
          << (r.forced ? "forced" : "avoiding") << ", oracle says "
          << (oracle_forced ? "forced" : "avoiding");
        return {false, e.str()};
      }
      if (!r.forced) {
        if (!r.avoiding) return {false, "missing avoiding coloring at N=" + std::to_string(N)};
        if (!coloring_avoids(*r.avoiding, insts))
          return {false, "returned coloring has an instance at N=" + std::to_string(N)};
      }
    }
  }
  std::ostringstream d;
  d << "oracle over all 2^N colorings, N<=12: largest avoiding N=" << largest_avoiding
    << "; both methods match everywhere, avoiding colorings re-verified";
  return {true, d.str()};
}

Outcome method_equivalence() {
  std::ostringstream d;
  d << "N<=10, 2 colors, both methods vs full brute force;";
  for (const auto& [kind, b] : {std::pair{'s', BuiltinPattern::Schur},
                                std::pair{'m', BuiltinPattern::Moreira},
                                std::pair{'q', BuiltinPattern::Quad}}) {
    const PatternTemplate t = builtin_pattern(b);
    int first_forced = 0;
    for (int N = 1; N <= 10; ++N) {
      const auto insts = interval_instances(kind, N);
      const bool oracle_forced = brute_forced(insts, N);
      if (oracle_forced && first_forced == 0) first_forced = N;
      const GroundSet g = GroundSet::interval(1, N);
      for (auto method : {SearchMethod::Exhaustive, SearchMethod::Sat}) {
        const AvoidanceResult r = avoidance_search(g, 2, t, method);
        if (r.forced != oracle_forced) {
          std::ostringstream e;
          e << t.name << " N=" << N << " " << method_name(method) << " disagrees with brute force";
          return {false, e.str()};
        }
        if (!r.forced && (!r.avoiding || !coloring_avoids(*r.avoiding, insts)))
          return {false, t.name + " returned a bad avoiding coloring at N=" + std::to_string(N)};
      }
    }
    d << " " << t.name << ":"
      << (first_forced ? "forced from N=" + std::to_string(first_forced) : "never forced") << ";";
  }
  return {true, d.str()};
}

Outcome random_field_counts() {
  const std::int64_t p = 101;
  const GroundSet g = GroundSet::prime_field(p);
  const PatternTemplate quad = builtin_pattern(BuiltinPattern::Quad);
  std::uint64_t lo = ~0ull, hi = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Coloring c = Coloring::uniform_random(g, 2, seed);
    const auto lib = count_monochromatic(c, quad);

    std::vector<int> col(static_cast<std::size_t>(p));
    for (std::uint32_t i = 0; i < g.size(); ++i) col[i] = c.color_idx(i);
    std::uint64_t recount = 0;
    for (std::int64_t x = 1; x < p; ++x)
      for (std::int64_t y = 1; y < p; ++y) {
        const int c0 = col[std::size_t(x)];
        if (col[std::size_t(y)] == c0 && col[std::size_t(x * y % p)] == c0 &&
            col[std::size_t((x + y) % p)] == c0)
          ++recount;
      }
    if (recount != lib.total) {
      std::ostringstream e;
      e << "seed " << seed << ": library " << lib.total << " vs recount " << recount;
      return {false, e.str()};
    }
    if (recount == 0) return {false, "zero monochromatic count at seed " + std::to_string(seed)};
    lo = std::min(lo, recount);
    hi = std::max(hi, recount);
  }
  std::ostringstream d;
  d << "100 random 2-colorings of the 101-element field: every count matches the recount, "
    << "min " << lo << ", max " << hi;
  return {true, d.str()};
}

/* independent re-check of a cover: every certificate replayed in raw mod-p
 * arithmetic, thickness of each color union checked per family member */
bool independent_cover_check(const CoverDecomposition& cov, const Coloring& c, std::int64_t p,
                             const ThickTestFamily& fam, std::string* why) {
  auto fail = [&](const std::string& m) {
    *why = m;
    return false;
  };
  if (cov.num_colors != c.num_colors()) return fail("color count mismatch");
  if (cov.Ys.empty()) return fail("no color sets");
  for (const auto& Y : cov.Ys) {
    if (Y.empty()) return fail("empty color set");
    for (std::size_t i = 1; i < Y.size(); ++i)
      if (Y[i] <= Y[i - 1]) return fail("color set not strictly sorted");
  }
  std::set<std::int64_t> F;
  for (const auto& f : cov.F) {
    const std::int64_t v = f.as_int64().value();
    if (v <= 0 || v >= p) return fail("shift outside the multiplicative group");
    F.insert(v);
  }

  if (cov.element_certs.size() != std::size_t(p - 1)) return fail("element cert count mismatch");
  for (std::int64_t x = 1; x < p; ++x) {
    const auto& cert = cov.element_certs[std::size_t(x - 1)];
    if (cert.l < 0 || cert.l >= int(cov.Ys.size())) return fail("cert label out of range");
    const auto& Y = cov.Ys[std::size_t(cert.l)];
    if (cert.shifts.size() != Y.size()) return fail("cert shift arity mismatch");
    for (std::size_t m = 0; m < Y.size(); ++m) {
      const std::int64_t f = cert.shifts[m].as_int64().value();
      if (!F.count(f)) return fail("cert shift not drawn from F");
      const std::int64_t q = x * modpow(f, p - 2, p) % p;
      if (c.color_idx(std::uint32_t(q)) != Y[m]) return fail("cert quotient lands off-color");
    }
  }

  if (cov.thickness_certificates.size() != cov.Ys.size())
    return fail("thickness cert count mismatch");
  for (std::size_t l = 0; l < cov.Ys.size(); ++l) {
    std::vector<char> in_union(std::size_t(p), 0);
    for (std::int64_t v = 1; v < p; ++v)
      for (int m : cov.Ys[l])
        if (c.color_idx(std::uint32_t(v)) == m) in_union[std::size_t(v)] = 1;
    const auto& w = cov.thickness_certificates[l];
    if (w.shifts.size() != fam.members.size()) return fail("thickness witness arity mismatch");
    for (std::size_t j = 0; j < fam.members.size(); ++j) {
      const std::int64_t a = w.shifts[j].as_int64().value();
      if (a <= 0 || a >= p) return fail("thickness shift outside the group");
      for (const auto& mv : fam.members[j])
        if (!in_union[std::size_t(a * mv.as_int64().value() % p)])
          return fail("dilated member leaves the color union");
    }
  }
  return true;
}

/* raw subset-sum set of a sequence, mod p */
std::set<std::int64_t> raw_fs(const std::vector<std::int64_t>& seq, std::int64_t p) {
  std::set<std::int64_t> out;
  const std::size_t n = seq.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sum = (sum + seq[i]) % p;
    out.insert(sum);
  }
  return out;
}

Outcome structure_suite() {
  std::ostringstream d;

  /* (a) 200 finite-sums / witness-search roundtrips */
  std::uint64_t rng = 0x5eed5eed1234ull;
  for (int i = 0; i < 200; ++i) {
    const std::int64_t p = (i % 2) ? 101 : 53;
    const GroundSet g = GroundSet::prime_field(p);
    const int r = 2 + int(splitmix(rng) % 2);
    std::vector<Rational> seq;
    std::vector<std::int64_t> raw;
    for (int j = 0; j < r; ++j) {
      const std::int64_t v = 1 + std::int64_t(splitmix(rng) % std::uint64_t(p - 1));
      seq.emplace_back(v);
      raw.push_back(v);
    }
    const std::vector<Rational> S = fs_set(seq, g);
    const std::set<std::int64_t> want = raw_fs(raw, p);
    std::set<std::int64_t> got;
    for (const auto& v : S) got.insert(v.as_int64().value());
    if (got != want) return {false, "finite-sums set disagrees with the direct subset-sum loop"};

    const IndexSet Sidx = index_set_of_values(S, g);
    const auto w = find_ipr_witness(Sidx, r, Sidx, g);
    if (!w) return {false, "no witness found inside a set that contains one by construction"};
    std::vector<std::int64_t> wraw;
    for (const auto& v : w->sequence) {
      wraw.push_back(v.as_int64().value());
      if (v.is_zero()) return {false, "witness has a zero entry"};
    }
    for (std::int64_t s : raw_fs(wraw, p))
      if (!want.count(s)) return {false, "witness subset sum escapes the host set"};
  }
  d << "200 roundtrips;";

  /* (b) 200 dilation-closure pairs: t*witness certifies t*S */
  for (int i = 0; i < 200; ++i) {
    const std::int64_t p = (i % 2) ? 101 : 53;
    const GroundSet g = GroundSet::prime_field(p);
    const int r = 2;
    std::vector<Rational> seq;
    std::vector<std::int64_t> raw;
    for (int j = 0; j < r; ++j) {
      const std::int64_t v = 1 + std::int64_t(splitmix(rng) % std::uint64_t(p - 1));
      seq.emplace_back(v);
      raw.push_back(v);
    }
    const std::int64_t t = 1 + std::int64_t(splitmix(rng) % std::uint64_t(p - 1));
    const std::vector<Rational> S = fs_set(seq, g);
    const IndexSet Sidx = index_set_of_values(S, g);
    const auto w = find_ipr_witness(Sidx, r, Sidx, g);
    if (!w) return {false, "witness missing before dilation"};

    const IndexSet Tidx = scale_set(g, std::uint32_t(t), Sidx);
    std::set<std::int64_t> scaled;
    for (const auto& v : S) scaled.insert(t * v.as_int64().value() % p);
    std::vector<std::int64_t> wscaled;
    for (const auto& v : w->sequence) wscaled.push_back(t * v.as_int64().value() % p);
    for (std::int64_t s : raw_fs(wscaled, p))
      if (!scaled.count(s)) return {false, "dilated witness escapes the dilated set"};
    if (!find_ipr_witness(Tidx, r, Tidx, g))
      return {false, "dilated set lost its witness under the library search"};
  }
  d << " 200 dilation pairs;";

  /* (c) cover decompositions on random 2-colorings, re-checked independently */
  int produced = 0, declined = 0;
  for (std::int64_t p : {7, 11, 13}) {
    const GroundSet g = GroundSet::prime_field(p);
    const IndexSet ambient = nonzero_set(g);
    const ThickTestFamily fam = fam12(g);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Coloring c = Coloring::uniform_random(g, 2, seed);
      CoverDecomposition cov;
      try {
        cov = cover_decomposition(c, 3, ambient, fam);
      } catch (const CoverError&) {
        ++declined;  // no decomposition exists at this width; nothing to certify
        continue;
      }
      ++produced;
      std::string why;
      if (!independent_cover_check(cov, c, p, fam, &why))
        return {false, "cover check failed at p=" + std::to_string(p) + " seed " +
                           std::to_string(seed) + ": " + why};
    }
  }
  d << " covers " << produced << "/150 produced (" << declined << " declined), all verified;";

  /* (d) 20 product families over multiplicatively closed thick sets */
  const std::array<std::int64_t, 6> ps{7, 17, 23, 31, 41, 47};
  for (int i = 0; i < 20; ++i) {
    const std::int64_t p = ps[std::size_t(i) % ps.size()];
    const GroundSet g = GroundSet::prime_field(p);
    const IndexSet ambient = nonzero_set(g);
    IndexSet H(g.size());
    for (std::int64_t x = 1; x < p; ++x) H.set(std::uint32_t(x * x % p));
    std::vector<IndexSet> Ts;
    switch (i % 4) {
      case 0: Ts = {H}; break;
      case 1: Ts = {H, H}; break;
      case 2: Ts = {ambient}; break;
      default: Ts = {ambient, ambient}; break;
    }
    const int N = 2 + (i % 2);
    ProdFamily fam;
    try {
      fam = lemma_prod_construct(Ts, 2, N, ambient, fam12(g), g);
    } catch (const std::exception& e) {
      return {false, "product family " + std::to_string(i) + " failed to build: " + e.what()};
    }

    // independent: witness sums regenerate each set, all chain products stay home
    std::vector<std::vector<char>> inT;
    for (const auto& T : Ts) {
      std::vector<char> row(std::size_t(p), 0);
      T.for_each([&](std::uint32_t v) { row[v] = 1; });
      inT.push_back(std::move(row));
    }
    std::vector<std::vector<std::vector<std::int64_t>>> S(std::size_t(fam.k));
    for (int l = 0; l < fam.k; ++l) {
      S[std::size_t(l)].resize(std::size_t(fam.N));
      for (int j = 0; j < fam.N; ++j) {
        std::vector<std::int64_t> wraw;
        for (const auto& v : fam.witnesses[std::size_t(l)][std::size_t(j)].sequence)
          wraw.push_back(v.as_int64().value());
        std::set<std::int64_t> fs = raw_fs(wraw, p);
        std::set<std::int64_t> sv;
        for (const auto& v : fam.S[std::size_t(l)][std::size_t(j)]) sv.insert(v.as_int64().value());
        if (fs != sv) return {false, "product family witness does not regenerate its set"};
        S[std::size_t(l)][std::size_t(j)].assign(sv.begin(), sv.end());
      }
    }
    std::function<bool(int, int, std::int64_t)> chain = [&](int start_l, int col,
                                                            std::int64_t prod) -> bool {
      if (!inT[std::size_t(start_l)][std::size_t(prod)]) return false;
      if (col >= fam.N) return true;
      for (int l = 0; l < fam.k; ++l)
        for (std::int64_t s : S[std::size_t(l)][std::size_t(col)])
          if (!chain(start_l, col + 1, prod * s % p)) return false;
      return true;
    };
    for (int j = 0; j < fam.N; ++j)
      for (int l = 0; l < fam.k; ++l)
        for (std::int64_t s : S[std::size_t(l)][std::size_t(j)])
          if (!chain(l, j + 1, s))
            return {false, "chain product left its target in family " + std::to_string(i)};
  }
  d << " 20 product families verified";
  return {true, d.str()};
}

Outcome walker_soundness() {
  WalkParams wp;
  wp.N = 4;
  std::ostringstream d;
  d << "width 1, N=4:";
  for (std::int64_t p : {53, 101}) {
    const GroundSet g = GroundSet::prime_field(p);
    const ThickTestFamily fam = fam12(g);
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Coloring c = Coloring::uniform_random(g, 3, seed);
      wp.seed = seed;
      const WalkQuadResult res = walk_quadruple(c, wp, 1, fam);
      if (res.outcome == WalkOutcome::VerificationBug)
        return {false, "internal verification failure at p=" + std::to_string(p) + " seed " +
                           std::to_string(seed) + ": " + res.message};
      if (res.outcome != WalkOutcome::Success) continue;
      ++successes;
      std::string why;
      if (!check_walk_trace(res, c, wp, 1, fam, &why))
        return {false, "trace checker rejected p=" + std::to_string(p) + " seed " +
                           std::to_string(seed) + ": " + why};
      const std::int64_t x = res.quad[0].as_int64().value(), y = res.quad[1].as_int64().value();
      if (res.quad[2].as_int64().value() != x * y % p || res.quad[3].as_int64().value() != (x + y) % p)
        return {false, "quadruple arithmetic broken at seed " + std::to_string(seed)};
      for (const auto& v : res.quad)
        if (c.color_idx(std::uint32_t(v.as_int64().value())) != res.color)
          return {false, "quadruple not monochromatic at seed " + std::to_string(seed)};
    }
    d << " p=" << p << ": " << successes << "/100 successes (rate reported, not mandated);";
  }
  d << " zero internal verification failures, every success re-verified";
  return {true, d.str()};
}

Outcome interval_forced(std::int64_t lo, std::int64_t hi, double limit_s) {
  const PatternTemplate quad = builtin_pattern(BuiltinPattern::Quad);
  const auto t0 = std::chrono::steady_clock::now();
  const AvoidanceResult r =
      avoidance_search(GroundSet::interval(lo, hi), 2, quad, SearchMethod::Sat);
  const double secs = elapsed(t0);
  std::ostringstream d;
  if (!r.forced) {
    d << "expected forced on [" << lo << ".." << hi << "], got avoiding";
    return {false, d.str()};
  }
  if (secs >= limit_s) {
    d << "forced, but took " << secs << " s (limit " << limit_s << " s)";
    return {false, d.str()};
  }
  d << "forced in " << secs << " s (limit " << limit_s << " s, " << r.instance_count
    << " ordered instances, " << r.work << " decisions)";
  return {true, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"count-oracle", count_oracle},
      {"encoder-determinism", encoder_determinism},
      {"small-range-avoidance", small_range_avoidance},
      {"method-equivalence", method_equivalence},
      {"random-field-counts", random_field_counts},
      {"structure-suite", structure_suite},
      {"walker-soundness", walker_soundness},
      {"interval-1-252", [] { return interval_forced(1, 252, 60.0); }},
      {"interval-2-990", [] { return interval_forced(2, 990, 600.0); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
