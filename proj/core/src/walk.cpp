#include "quadpat/walk.hpp"

#include <algorithm>
#include <map>

namespace quadpat {

namespace {

Rational resolve_floor(const WalkParams& params, const GroundSet& g) {
  if (params.alpha_floor.sign() > 0) return params.alpha_floor;
  return Rational(BigInt(1), BigInt(2) * BigInt(g.size()));
}

/* A' = {x in A : x + q*y in A for every q}. */
IndexSet refine_by_shifts(const IndexSet& A, const std::vector<Rational>& qs, std::uint32_t y,
                          const GroundSet& g) {
  IndexSet out = A;
  for (const auto& q : qs) {
    if (out.count() == 0) break;
    IndexSet keep(g.size());
    if (g.closed_under_ops()) {
      auto qi = g.embed_constant(q);
      if (!qi) return IndexSet(g.size());
      const std::uint32_t s = *g.mul_idx(*qi, y);
      out.for_each([&](std::uint32_t x) {
        if (A.test(*g.add_idx(x, s))) keep.set(x);
      });
    } else {
      const Rational delta = q * g.value_at(y);
      out.for_each([&](std::uint32_t x) {
        auto t = g.index_of(g.value_at(x) + delta);
        if (t && A.test(*t)) keep.set(x);
      });
    }
    out = keep;
  }
  return out;
}

struct ScanHit {
  std::uint32_t y = 0;
  IndexSet refined;
  std::size_t count = 0;
};

/* First candidate reaching the maximal refined cardinality. */
std::optional<ScanHit> best_shift_scan(const IndexSet& A, const std::vector<Rational>& qs,
                                       const IndexSet& candidates, const GroundSet& g) {
  std::optional<ScanHit> best;
  candidates.for_each([&](std::uint32_t y) {
    IndexSet refined = refine_by_shifts(A, qs, y, g);
    const std::size_t c = refined.count();
    if (!best || c > best->count) best = ScanHit{y, std::move(refined), c};
  });
  return best;
}

Rational one_cell(const GroundSet& g) { return Rational(BigInt(1), BigInt(g.size())); }

}  // namespace

Rational density(const IndexSet& A, const GroundSet& g) {
  if (A.universe() != g.size()) throw std::invalid_argument("density: universe mismatch");
  return Rational(BigInt(A.count()), BigInt(g.size()));
}

std::optional<ShiftSearchHit> density_shift_search(const IndexSet& A,
                                                   const std::vector<Rational>& qs,
                                                   const IndexSet& candidates,
                                                   const Rational& alpha_prime,
                                                   const GroundSet& g) {
  std::optional<ShiftSearchHit> hit;
  candidates.for_each([&](std::uint32_t y) {
    if (hit) return;
    IndexSet refined = refine_by_shifts(A, qs, y, g);
    Rational d = density(refined, g);
    if (d > alpha_prime) hit = ShiftSearchHit{y, std::move(refined), std::move(d)};
  });
  return hit;
}

std::vector<Rational> shift_quotients(int j, const std::vector<Rational>& F,
                                      const std::vector<Rational>& ys, const GroundSet& g) {
  if (j < 1) throw std::invalid_argument("shift_quotients: j >= 1 required");
  if (int(ys.size()) < j - 1) throw std::invalid_argument("shift_quotients: need y_1..y_{j-1}");
  for (const auto& y : ys)
    if (y.is_zero()) throw std::invalid_argument("shift_quotients: zero y");
  for (const auto& f : F)
    if (f.is_zero()) throw std::invalid_argument("shift_quotients: zero f");

  std::vector<Rational> out;
  if (g.closed_under_ops()) {
    std::vector<std::uint32_t> yi;
    for (int t = 0; t < j - 1; ++t) yi.push_back(*g.index_of(ys[std::size_t(t)]));
    for (const auto& f : F) {
      const std::uint32_t fi = *g.index_of(f);
      for (int i = 1; i <= j; ++i) {
        std::uint32_t num = *g.one_index();
        for (int t = i; t <= j - 1; ++t) num = *g.mul_idx(num, yi[std::size_t(t - 1)]);
        std::uint32_t den = fi;
        for (int t = 1; t <= i - 1; ++t) den = *g.mul_idx(den, yi[std::size_t(t - 1)]);
        out.push_back(g.value_at(*g.div_idx(num, den)));
      }
    }
  } else {
    for (const auto& f : F) {
      for (int i = 1; i <= j; ++i) {
        Rational num = 1;
        for (int t = i; t <= j - 1; ++t) num *= ys[std::size_t(t - 1)];
        Rational den = f;
        for (int t = 1; t <= i - 1; ++t) den *= ys[std::size_t(t - 1)];
        out.push_back(num / den);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view walk_outcome_name(WalkOutcome o) {
  switch (o) {
    case WalkOutcome::Success: return "success";
    case WalkOutcome::CoverFailed: return "cover-failed";
    case WalkOutcome::ProdFailed: return "prod-failed";
    case WalkOutcome::DensityFailed: return "density-failed";
    case WalkOutcome::NoRepeatedTuple: return "no-repeated-tuple";
    case WalkOutcome::VerificationBug: return "verification-bug";
  }
  return "?";
}

std::string_view thick_stage_name(ThickStage s) {
  switch (s) {
    case ThickStage::ProdConstruct: return "prodConstruct";
    case ThickStage::FirstSearch: return "firstSearch";
    case ThickStage::SecondSearch: return "secondSearch";
  }
  return "?";
}

namespace {

struct WalkEnv {
  std::optional<DerivedColoring> derived;
  std::vector<IndexSet> thick_unions;
  std::optional<ProdFamily> prod;
  bool prod_degraded = false;
  IndexSet ambient;
  int s_used = 0;
};

/* Shared between the walker and the trace checker; throws CoverError or
 * UncoveredElement upward. */
WalkEnv build_walk_env(const Coloring& coloring, const WalkParams& params, int width_bound,
                       const ThickTestFamily& family) {
  const GroundSet& g = coloring.ground();
  WalkEnv env;
  env.ambient = nonzero_set(g);
  CoverDecomposition cover = cover_decomposition(coloring, width_bound, env.ambient, family);
  env.derived.emplace(build_derived_coloring(coloring, cover, env.ambient));
  const auto& c = env.derived->cover();

  const int s_required = int(c.F.size()) * (params.N - 1);
  if (params.s != 0 && params.s < s_required)
    throw std::invalid_argument("walk: s must be at least |F|*(N-1) = " +
                                std::to_string(s_required));
  env.s_used = params.s == 0 ? s_required : params.s;

  for (const auto& Y : c.Ys) {
    IndexSet u(g.size());
    for (int m : Y) {
      IndexSet cls = coloring.class_set(m);
      cls &= env.ambient;
      u |= cls;
    }
    env.thick_unions.push_back(std::move(u));
  }
  try {
    env.prod = lemma_prod_construct(env.thick_unions, params.r, params.N - 1, env.ambient,
                                    family, g);
  } catch (const ProdError&) {
    env.prod_degraded = true;
  }
  return env;
}

void check_walk_preconditions(const Coloring& coloring, const WalkParams& params) {
  if (coloring.ground().kind() != GroundKind::PrimeField)
    throw std::invalid_argument("walk: PrimeField grounds only");
  if (params.N < 2) throw std::invalid_argument("walk: N >= 2 required for the pigeonhole");
  if (params.r < 1) throw std::invalid_argument("walk: r >= 1 required");
}

bool quad_is_distinct(const std::vector<Rational>& quad) {
  for (std::size_t a = 0; a < quad.size(); ++a)
    for (std::size_t b = a + 1; b < quad.size(); ++b)
      if (quad[a] == quad[b]) return false;
  return true;
}

}  // namespace

WalkQuadResult walk_quadruple(const Coloring& coloring, const WalkParams& params, int width_bound,
                              const ThickTestFamily& family) {
  check_walk_preconditions(coloring, params);
  const GroundSet& g = coloring.ground();

  WalkQuadResult res;
  res.alpha_floor = resolve_floor(params, g);

  WalkEnv env;
  try {
    env = build_walk_env(coloring, params, width_bound, family);
  } catch (const CoverError& e) {
    res.outcome = WalkOutcome::CoverFailed;
    res.message = "cover stage " + e.stage + ": " + e.what();
    return res;
  } catch (const UncoveredElement& e) {
    res.outcome = WalkOutcome::CoverFailed;
    res.message = std::string("derived coloring: ") + e.what();
    return res;
  }
  const DerivedColoring& derived = *env.derived;
  const CoverDecomposition& cover = derived.cover();
  res.K = derived.K();
  res.s_used = env.s_used;
  res.prod_degraded = env.prod_degraded;

  std::vector<std::uint32_t> y_idx;
  std::vector<Rational> y_vals;
  std::uint32_t prefix = *g.one_index();  // y_1***y_j as the steps advance

  {
    WalkStep first;
    first.tuple_id = derived.densest_tuple();
    first.A = derived.tuple_class(first.tuple_id);
    first.density = density(first.A, g);
    res.steps.push_back(std::move(first));
  }

  for (int j = 1; j <= params.N - 1; ++j) {
    WalkStep& st = res.steps.back();
    const DerivedTuple& tj = derived.tuple(st.tuple_id);
    st.Q = shift_quotients(j, cover.F, y_vals, g);
    if (int(st.Q.size()) > res.s_used) {
      res.outcome = WalkOutcome::VerificationBug;
      res.message = "|Q_j| exceeded the validated s bound";
      return res;
    }
    st.degraded = env.prod_degraded;
    const IndexSet cand = env.prod_degraded
                              ? env.thick_unions[std::size_t(tj.l)]
                              : index_set_of_values(env.prod->S[std::size_t(tj.l)][std::size_t(j - 1)], g);

    auto hit = best_shift_scan(st.A, st.Q, cand, g);
    const Rational best = hit ? density(hit->refined, g) : Rational(0);
    st.alpha_prime = std::max(res.alpha_floor, best - one_cell(g));
    if (!hit || !(best > res.alpha_floor)) {
      res.outcome = WalkOutcome::DensityFailed;
      res.failed_step = j;
      res.message = "no candidate y exceeds the density floor at step " + std::to_string(j) +
                    " (best " + best.str() + ", floor " + res.alpha_floor.str() + ")";
      return res;
    }
    st.y = g.value_at(hit->y);
    y_idx.push_back(hit->y);
    y_vals.push_back(*st.y);
    prefix = *g.mul_idx(prefix, hit->y);

    /* Pigeonhole: the densest derived tuple among x*y_1***y_j, ties to the
     * smallest id. */
    std::vector<std::size_t> hist(std::size_t(res.K), 0);
    hit->refined.for_each([&](std::uint32_t x) {
      ++hist[std::size_t(derived.tuple_id_of(*g.mul_idx(x, prefix)))];
    });
    int next_tuple = 0;
    for (int id = 1; id < res.K; ++id)
      if (hist[std::size_t(id)] > hist[std::size_t(next_tuple)]) next_tuple = id;

    IndexSet Anext(g.size());
    hit->refined.for_each([&](std::uint32_t x) {
      if (derived.tuple_id_of(*g.mul_idx(x, prefix)) == next_tuple) Anext.set(x);
    });

    /* Recorded property bits are honest rechecks, not assumptions. */
    {
      IndexSet closed = refine_by_shifts(st.A, st.Q, hit->y, g);
      closed &= Anext;
      st.prop1 = Anext.subset_of(st.A) && closed.count() == Anext.count();
      bool p2 = true;
      Anext.for_each([&](std::uint32_t x) {
        if (derived.tuple_id_of(*g.mul_idx(x, prefix)) != next_tuple) p2 = false;
      });
      st.prop2 = p2;
      st.prop3 = cand.test(hit->y);
    }

    WalkStep next;
    next.A = std::move(Anext);
    next.density = density(next.A, g);
    next.tuple_id = next_tuple;
    res.steps.push_back(std::move(next));

    /* Stop at the first repeated tuple: the pigeonhole pair is already in
     * hand, and further searches can only fail the density step. */
    bool repeated = false;
    for (std::size_t i = 0; i + 1 < res.steps.size(); ++i)
      repeated |= res.steps[i].tuple_id == next_tuple;
    if (repeated) break;
  }

  /* First lexicographic pair of equal tuples. */
  const int L = int(res.steps.size());
  int pi = -1, pj = -1;
  for (int i = 1; i <= L && pi < 0; ++i)
    for (int j = i + 1; j <= L; ++j)
      if (res.steps[std::size_t(i - 1)].tuple_id == res.steps[std::size_t(j - 1)].tuple_id) {
        pi = i;
        pj = j;
        break;
      }
  if (pi < 0) {
    res.outcome = WalkOutcome::NoRepeatedTuple;
    res.message = "no repeated tuple across " + std::to_string(params.N) + " steps (K = " +
                  std::to_string(res.K) + "); increase N beyond K";
    return res;
  }
  res.pigeon_i = pi;
  res.pigeon_j = pj;

  const DerivedTuple& t = derived.tuple(res.steps[std::size_t(pi - 1)].tuple_id);
  std::uint32_t yq = *g.one_index();
  for (int st = pi; st <= pj - 1; ++st) yq = *g.mul_idx(yq, y_idx[std::size_t(st - 1)]);

  const int m = coloring.color_idx(yq);
  const auto& Y = cover.Ys[std::size_t(t.l)];
  const auto mpos = std::find(Y.begin(), Y.end(), m);
  if (mpos == Y.end()) {
    bool any_degraded = false;
    for (int st = pi; st <= pj - 1; ++st) any_degraded |= res.steps[std::size_t(st - 1)].degraded;
    res.outcome = any_degraded ? WalkOutcome::ProdFailed : WalkOutcome::VerificationBug;
    res.message = "y = " + g.value_at(yq).str() + " has color " + std::to_string(m) +
                  " outside the tuple's color set" +
                  (any_degraded ? " (deferred product containment check failed)" : "");
    return res;
  }

  const Rational& f_m = t.shifts[std::size_t(mpos - Y.begin())];
  const std::uint32_t fmi = *g.index_of(f_m);
  std::uint32_t pre_i = *g.one_index();
  for (int st = 1; st <= pi - 1; ++st) pre_i = *g.mul_idx(pre_i, y_idx[std::size_t(st - 1)]);

  /* x = x' * y_1***y_{i-1} / f_m lands every coordinate of {x,y,xy,x+y} in
   * C_m; any miss is an implementation bug. */
  std::optional<std::uint32_t> primary, primary_distinct;
  bool all_ok = true;
  std::string first_bad;
  res.steps[std::size_t(pj - 1)].A.for_each([&](std::uint32_t xp) {
    const std::uint32_t xq = *g.div_idx(*g.mul_idx(xp, pre_i), fmi);
    const std::uint32_t xyq = *g.mul_idx(xq, yq);
    const std::uint32_t sumq = *g.add_idx(xq, yq);
    const bool ok = coloring.color_idx(xq) == m && coloring.color_idx(xyq) == m &&
                    coloring.color_idx(sumq) == m && !g.value_at(xq).is_zero() &&
                    !g.value_at(yq).is_zero();
    if (!ok && all_ok) {
      all_ok = false;
      first_bad = "x' = " + g.value_at(xp).str();
    }
    res.alternative_xs.push_back(g.value_at(xq));
    if (!primary) primary = xq;
    if (!primary_distinct) {
      std::vector<Rational> q{g.value_at(xq), g.value_at(yq), g.value_at(xyq), g.value_at(sumq)};
      if (quad_is_distinct(q)) primary_distinct = xq;
    }
  });
  if (!all_ok) {
    res.outcome = WalkOutcome::VerificationBug;
    res.message = "final quadruple verification failed at " + first_bad;
    return res;
  }
  if (!primary) {
    res.outcome = WalkOutcome::VerificationBug;
    res.message = "pigeonhole step has an empty element set";
    return res;
  }

  const std::uint32_t xq = primary_distinct.value_or(*primary);
  res.color = m;
  res.x = g.value_at(xq);
  res.y = g.value_at(yq);
  res.quad = {res.x, res.y, g.value_at(*g.mul_idx(xq, yq)), g.value_at(*g.add_idx(xq, yq))};
  res.outcome = WalkOutcome::Success;
  return res;
}

bool check_walk_trace(const WalkQuadResult& result, const Coloring& coloring,
                      const WalkParams& params, int width_bound, const ThickTestFamily& family,
                      std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (result.outcome != WalkOutcome::Success) return true;  // only successes carry claims

  check_walk_preconditions(coloring, params);
  const GroundSet& g = coloring.ground();

  WalkEnv env;
  try {
    env = build_walk_env(coloring, params, width_bound, family);
  } catch (const std::exception& e) {
    return fail(std::string("environment rebuild failed: ") + e.what());
  }
  const DerivedColoring& derived = *env.derived;
  const CoverDecomposition& cover = derived.cover();

  if (result.K != derived.K()) return fail("K mismatch");
  if (result.s_used != env.s_used) return fail("s mismatch");
  if (result.prod_degraded != env.prod_degraded) return fail("product degradation flag mismatch");
  const int L = int(result.steps.size());
  if (L < 2 || L > params.N) return fail("step count outside [2, N]");

  {
    const WalkStep& first = result.steps[0];
    const int densest = derived.densest_tuple();
    if (first.tuple_id != densest) return fail("step 1 tuple is not the densest");
    const IndexSet& cls = derived.tuple_class(densest);
    IndexSet common = cls;
    common &= first.A;
    if (common.count() != cls.count() || first.A.count() != cls.count())
      return fail("step 1 set mismatch");
  }

  std::vector<Rational> y_vals;
  std::uint32_t prefix = *g.one_index();
  for (int j = 1; j <= L - 1; ++j) {
    const WalkStep& st = result.steps[std::size_t(j - 1)];
    const WalkStep& nx = result.steps[std::size_t(j)];
    if (st.density != density(st.A, g)) return fail("density mismatch at step " + std::to_string(j));
    if (!st.y) return fail("missing y at step " + std::to_string(j));

    const std::vector<Rational> Q = shift_quotients(j, cover.F, y_vals, g);
    if (Q != st.Q) return fail("Q mismatch at step " + std::to_string(j));
    if (int(Q.size()) > env.s_used) return fail("|Q_j| above s");

    if (st.degraded != env.prod_degraded) return fail("degradation flag mismatch at step");
    const DerivedTuple& tj = derived.tuple(st.tuple_id);
    const IndexSet cand =
        env.prod_degraded
            ? env.thick_unions[std::size_t(tj.l)]
            : index_set_of_values(env.prod->S[std::size_t(tj.l)][std::size_t(j - 1)], g);

    /* The recorded y must be exactly what the search op yields at the
     * recorded threshold. */
    auto hit = density_shift_search(st.A, Q, cand, st.alpha_prime, g);
    if (!hit) return fail("recorded threshold admits no candidate at step " + std::to_string(j));
    if (g.value_at(hit->y) != *st.y) return fail("chosen y mismatch at step " + std::to_string(j));
    if (!(st.alpha_prime >= result.alpha_floor)) return fail("threshold below floor");

    const std::uint32_t yj = hit->y;
    y_vals.push_back(*st.y);
    prefix = *g.mul_idx(prefix, yj);

    if (!st.prop1 || !st.prop2 || !st.prop3) return fail("recorded property bit is false");
    if (!nx.A.subset_of(st.A)) return fail("A_{j+1} not inside A_j");
    bool ok = true;
    nx.A.for_each([&](std::uint32_t x) {
      if (!ok) return;
      for (const auto& q : Q) {
        auto qi = g.embed_constant(q);
        if (!qi || !st.A.test(*g.add_idx(x, *g.mul_idx(*qi, yj)))) {
          ok = false;
          return;
        }
      }
      if (derived.tuple_id_of(*g.mul_idx(x, prefix)) != nx.tuple_id) ok = false;
    });
    if (!ok) return fail("property (1)/(2) recheck failed at step " + std::to_string(j));
    if (!cand.test(yj)) return fail("property (3) recheck failed");

    /* Determinism: the next set must be the densest-tuple refinement. */
    std::vector<std::size_t> hist(std::size_t(result.K), 0);
    hit->refined.for_each([&](std::uint32_t x) {
      ++hist[std::size_t(derived.tuple_id_of(*g.mul_idx(x, prefix)))];
    });
    int best_id = 0;
    for (int id = 1; id < result.K; ++id)
      if (hist[std::size_t(id)] > hist[std::size_t(best_id)]) best_id = id;
    if (best_id != nx.tuple_id) return fail("pigeonhole tuple mismatch");
    IndexSet expect(g.size());
    hit->refined.for_each([&](std::uint32_t x) {
      if (derived.tuple_id_of(*g.mul_idx(x, prefix)) == best_id) expect.set(x);
    });
    IndexSet common = expect;
    common &= nx.A;
    if (common.count() != expect.count() || nx.A.count() != expect.count())
      return fail("A_{j+1} set mismatch");
    if (nx.density != density(nx.A, g)) return fail("density mismatch");
  }

  /* Pigeonhole pair must be lexicographically first, and the walk must have
   * stopped at it: the first repeated tuple is the last recorded step. */
  int pi = -1, pj = -1;
  for (int i = 1; i <= L && pi < 0; ++i)
    for (int j = i + 1; j <= L; ++j)
      if (result.steps[std::size_t(i - 1)].tuple_id == result.steps[std::size_t(j - 1)].tuple_id) {
        pi = i;
        pj = j;
        break;
      }
  if (pi != result.pigeon_i || pj != result.pigeon_j) return fail("pigeonhole pair mismatch");
  if (pi < 0) return fail("success without a repeated tuple");
  if (pj != L) return fail("steps continue past the first repeated tuple");

  const DerivedTuple& t = derived.tuple(result.steps[std::size_t(pi - 1)].tuple_id);
  std::uint32_t yq = *g.one_index();
  for (int st = pi; st <= pj - 1; ++st) yq = *g.mul_idx(yq, *g.index_of(y_vals[std::size_t(st - 1)]));
  if (g.value_at(yq) != result.y) return fail("constructed y mismatch");

  const int m = coloring.color_idx(yq);
  if (m != result.color) return fail("color mismatch");
  const auto& Y = cover.Ys[std::size_t(t.l)];
  const auto mpos = std::find(Y.begin(), Y.end(), m);
  if (mpos == Y.end()) return fail("y's color is outside the tuple's color set");
  /* The product-containment claim behind the color membership. */
  if (!env.thick_unions[std::size_t(t.l)].test(yq)) return fail("y left its thick union");

  const std::uint32_t fmi = *g.index_of(t.shifts[std::size_t(mpos - Y.begin())]);
  std::uint32_t pre_i = *g.one_index();
  for (int st = 1; st <= pi - 1; ++st) pre_i = *g.mul_idx(pre_i, *g.index_of(y_vals[std::size_t(st - 1)]));

  std::vector<Rational> alts;
  bool quads_ok = true;
  result.steps[std::size_t(pj - 1)].A.for_each([&](std::uint32_t xp) {
    const std::uint32_t xq = *g.div_idx(*g.mul_idx(xp, pre_i), fmi);
    alts.push_back(g.value_at(xq));
    if (coloring.color_idx(xq) != m || coloring.color_idx(*g.mul_idx(xq, yq)) != m ||
        coloring.color_idx(*g.add_idx(xq, yq)) != m || g.value_at(xq).is_zero())
      quads_ok = false;
  });
  if (!quads_ok) return fail("an alternative x fails the monochromatic check");
  if (alts != result.alternative_xs) return fail("alternative x list mismatch");
  if (std::find(alts.begin(), alts.end(), result.x) == alts.end())
    return fail("primary x not among the alternatives");

  auto xi = g.index_of(result.x);
  if (!xi) return fail("x outside ground");
  if (result.quad.size() != 4) return fail("quad arity");
  if (result.quad[0] != result.x || result.quad[1] != result.y ||
      result.quad[2] != g.value_at(*g.mul_idx(*xi, yq)) ||
      result.quad[3] != g.value_at(*g.add_idx(*xi, yq)))
    return fail("quad values mismatch");
  for (const auto& v : {result.quad[0], result.quad[1], result.quad[2], result.quad[3]}) {
    auto vi = g.index_of(v);
    if (!vi || coloring.color_idx(*vi) != m) return fail("quad coordinate off-color");
  }
  if (result.x.is_zero() || result.y.is_zero()) return fail("zero coordinate");
  return true;
}

ThickWalkResult walk_thick_pair(const Coloring& coloring, const WalkParams& params,
                                const ThickTestFamily& family) {
  if (coloring.ground().kind() != GroundKind::PrimeField)
    throw std::invalid_argument("walk_thick_pair: PrimeField grounds only");
  if (coloring.num_colors() != 2)
    throw std::invalid_argument("walk_thick_pair: exactly two colors required");
  if (params.r < 1) throw std::invalid_argument("walk_thick_pair: r >= 1 required");

  const GroundSet& g = coloring.ground();
  const IndexSet ambient = nonzero_set(g);
  const Rational floor = resolve_floor(params, g);

  ThickWalkResult res;
  res.c1 = coloring.densest_class();
  res.c2 = 1 - res.c1;
  IndexSet A1 = coloring.class_set(res.c1);
  A1 &= ambient;
  IndexSet A2 = coloring.class_set(res.c2);
  A2 &= ambient;

  if (!is_thick(A1, family, ambient, g) || !is_thick(A2, family, ambient, g))
    throw std::invalid_argument("walk_thick_pair: both classes must be thick for the family");

  auto fail = [&](ThickStage stage, std::string msg) {
    res.success = false;
    res.failed_stage = stage;
    res.message = std::move(msg);
    return res;
  };
  /* Branch memberships below are forced by the construction, so a miss in the
   * final gate is a bug, not a data-dependent failure. */
  auto finish = [&](int branch, std::uint32_t xq, std::uint32_t yq, int color) -> ThickWalkResult& {
    const std::uint32_t xyq = *g.mul_idx(xq, yq);
    const std::uint32_t sumq = *g.add_idx(xq, yq);
    for (std::uint32_t v : {xq, yq, xyq, sumq})
      if (coloring.color_idx(v) != color)
        throw std::logic_error("walk_thick_pair: branch " + std::to_string(branch) +
                               " produced an off-color coordinate");
    if (g.value_at(xq).is_zero() || g.value_at(yq).is_zero())
      throw std::logic_error("walk_thick_pair: zero coordinate");
    res.success = true;
    res.branch = branch;
    res.color = color;
    res.x = g.value_at(xq);
    res.y = g.value_at(yq);
    res.quad = {res.x, res.y, g.value_at(xyq), g.value_at(sumq)};
    return res;
  };

  /* S2: an IP_r-witnessed set inside the sparser class. */
  auto w2 = find_ipr_witness(A2, params.r, A2, g);
  if (!w2) return fail(ThickStage::ProdConstruct, "no IP witness inside the sparser class");
  res.S2 = fs_set(w2->sequence, g);
  const IndexSet S2 = index_set_of_values(res.S2, g);

  /* D = {t in C_1 : t*S2 inside C_1}; S1 from a witness inside D gives
   * S1*S2 back in C_1. */
  IndexSet D(g.size());
  A1.for_each([&](std::uint32_t t) {
    bool ok = true;
    S2.for_each([&](std::uint32_t s) {
      if (ok && !A1.test(*g.mul_idx(t, s))) ok = false;
    });
    if (ok) D.set(t);
  });
  auto w1 = find_ipr_witness(D, params.r, D, g);
  if (!w1)
    return fail(ThickStage::ProdConstruct, "no IP witness with products staying in the denser class");
  res.S1 = fs_set(w1->sequence, g);
  const IndexSet S1 = index_set_of_values(res.S1, g);

  /* First search: y_1 in S1 maximizing the density of {x in C_1 : x+y_1 in C_1}. */
  const std::vector<Rational> qs1{Rational(1)};
  auto hit1 = best_shift_scan(A1, qs1, S1, g);
  const Rational best1 = hit1 ? density(hit1->refined, g) : Rational(0);
  res.alpha1 = std::max(floor, best1 - one_cell(g));
  if (!hit1 || !(best1 > floor))
    return fail(ThickStage::FirstSearch, "no y_1 keeps the denser class dense (best " +
                                             best1.str() + ", floor " + floor.str() + ")");
  const std::uint32_t y1 = hit1->y;
  res.y1 = g.value_at(y1);
  const IndexSet& C1p = hit1->refined;

  /* Branch 1: some x in C_1' with x*y_1 back in C_1. */
  std::optional<std::uint32_t> back;
  C1p.for_each([&](std::uint32_t x) {
    if (!back && A1.test(*g.mul_idx(y1, x))) back = x;
  });
  if (back) return finish(1, *back, y1, res.c1);

  /* Now y_1*C_1' lies inside C_2. Second search over S2 with shifts y_1*y and
   * y/y_1. */
  const std::vector<Rational> qs2{g.value_at(y1), g.value_at(*g.inv_idx(y1))};
  auto hit2 = best_shift_scan(C1p, qs2, S2, g);
  const Rational best2 = hit2 ? density(hit2->refined, g) : Rational(0);
  res.alpha2 = std::max(floor, best2 - one_cell(g));
  if (!hit2 || !(best2 > floor))
    return fail(ThickStage::SecondSearch, "no y_2 survives the two-shift refinement (best " +
                                              best2.str() + ", floor " + floor.str() + ")");
  const std::uint32_t y2 = hit2->y;
  res.y2 = g.value_at(y2);
  const IndexSet& C1pp = hit2->refined;

  const std::uint32_t y12 = *g.mul_idx(y1, y2);
  if (!A1.test(y12))
    throw std::logic_error("walk_thick_pair: y_1*y_2 escaped the denser class despite S1*S2");

  /* Branch 2: some x in C_1'' with x*y_1*y_2 back in C_1. */
  std::optional<std::uint32_t> back2;
  C1pp.for_each([&](std::uint32_t x) {
    if (!back2 && A1.test(*g.mul_idx(x, y12))) back2 = x;
  });
  if (back2) return finish(2, *back2, y12, res.c1);

  /* Branch 3: everything lands in the sparser class. */
  std::optional<std::uint32_t> z;
  C1pp.for_each([&](std::uint32_t v) {
    if (!z) z = v;
  });
  if (!z) throw std::logic_error("walk_thick_pair: refined set empty above the floor");
  return finish(3, *g.mul_idx(y1, *z), y2, res.c2);
}

}  // namespace quadpat
