#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadpat/derived.hpp"
#include "quadpat/product.hpp"

namespace quadpat {

/* Exact uniform density |A| / |ground|. On PrimeField grounds this is a
 * translation-invariant mean; on interval grounds shifts leak out at the
 * boundary and the walkers below do not accept them. */
Rational density(const IndexSet& A, const GroundSet& g);

struct ShiftSearchHit {
  std::uint32_t y = 0;  // ground index of the chosen candidate
  IndexSet refined;     // A' = {x in A : x + q*y in A for every q}
  Rational refined_density;
};

/*
 * First candidate y (enumeration order) whose refined set has density
 * strictly above alpha_prime; the finite stand-in for the density step that
 * over the rationals succeeds on an IP_r* set of y's.
 */
std::optional<ShiftSearchHit> density_shift_search(const IndexSet& A,
                                                   const std::vector<Rational>& qs,
                                                   const IndexSet& candidates,
                                                   const Rational& alpha_prime, const GroundSet& g);

/*
 * Q_j = { y_i***y_{j-1} / (f * y_1***y_{i-1}) : f in F, 1 <= i <= j }, empty
 * products reading as 1, deduplicated and sorted. The i = j terms give
 * Q_1 = {1/f}, and Q_{j-1} needs them when the final telescope lands on
 * adjacent induction steps. Field arithmetic on PrimeField grounds, exact
 * rational arithmetic otherwise.
 */
std::vector<Rational> shift_quotients(int j, const std::vector<Rational>& F,
                                      const std::vector<Rational>& ys, const GroundSet& g);

struct WalkParams {
  int N = 6;             // induction length; needs N >= 2 for the pigeonhole
  int s = 0;             // max |Q_j| supported; 0 = derive |F|*(N-1) from the cover
  int r = 3;             // IP rank for the product-family columns
  Rational alpha_floor;  // <= 0 = default 1/(2*|ground|)
  std::uint64_t seed = 0;  // echoed into the trace; the walk itself is deterministic
};

enum class WalkOutcome {
  Success,
  CoverFailed,
  ProdFailed,
  DensityFailed,
  NoRepeatedTuple,
  VerificationBug,  // internal inconsistency; tests must treat this as fatal
};
std::string_view walk_outcome_name(WalkOutcome o);

/* Step j of the induction: the set A_j with its derived tuple, plus the
 * search that produced step j+1 (absent on the last recorded step). */
struct WalkStep {
  IndexSet A;
  Rational density;
  int tuple_id = -1;
  std::vector<Rational> Q;    // Q_j used by the search out of this step
  std::optional<Rational> y;  // chosen y_j
  Rational alpha_prime;       // effective threshold: max(alpha_floor, best - 1/|ground|)
  bool degraded = false;      // candidates were the thick union, not a product column
  bool prop1 = false;         // A_{j+1} subset of {x in A_j : x + q*y_j in A_j for all q}
  bool prop2 = false;         // x*y_1***y_j carries tuple t_{j+1} for all x in A_{j+1}
  bool prop3 = false;         // y_j drawn from the recorded candidate set
};

struct WalkQuadResult {
  WalkOutcome outcome = WalkOutcome::VerificationBug;
  int failed_step = -1;  // step index for DensityFailed
  std::string message;

  int K = 0;       // number of occupied derived tuples
  int s_used = 0;  // resolved s
  Rational alpha_floor;
  bool prod_degraded = false;  // product family unavailable, thick unions used throughout
  std::vector<WalkStep> steps;

  /* Success payload. */
  int pigeon_i = -1, pigeon_j = -1;  // 1-based steps with equal tuples
  int color = -1;                    // m = base color of y
  Rational x, y;
  std::vector<Rational> quad;            // x, y, x*y, x+y
  std::vector<Rational> alternative_xs;  // the x built from every x' in A_j
};

/*
 * The full induction walk over a PrimeField ground: cover decomposition,
 * derived coloring, product-family columns (falling back to the raw thick
 * unions when a column admits no witness), N density steps with pigeonhole
 * refinement, repeated-tuple extraction, and a directly verified
 * monochromatic {x, y, xy, x+y}.
 */
WalkQuadResult walk_quadruple(const Coloring& coloring, const WalkParams& params, int width_bound,
                              const ThickTestFamily& family);

/* Re-derives the environment and replays every recorded claim: step
 * containments, shift closures, tuple assignments, candidate membership,
 * densities, and the final quadruple's colors. */
bool check_walk_trace(const WalkQuadResult& result, const Coloring& coloring,
                      const WalkParams& params, int width_bound, const ThickTestFamily& family,
                      std::string* why);

enum class ThickStage { ProdConstruct, FirstSearch, SecondSearch };
std::string_view thick_stage_name(ThickStage s);

struct ThickWalkResult {
  bool success = false;
  std::optional<ThickStage> failed_stage;
  std::string message;

  int c1 = 0, c2 = 1;  // denser class first
  std::vector<Rational> S1, S2;
  std::optional<Rational> y1, y2;
  Rational alpha1, alpha2;

  int branch = 0;  // 1..3 in the proof's case order
  int color = -1;
  Rational x, y;
  std::vector<Rational> quad;  // x, y, x*y, x+y
};

/*
 * The two-color walk where both classes are thick (checked; throws
 * std::invalid_argument otherwise): build S2 inside the sparser class, S1
 * inside the denser one with S1*S2 back in it, one or two density searches,
 * then the three-way case split. A failed final gate throws std::logic_error
 * since every branch's memberships are forced.
 */
ThickWalkResult walk_thick_pair(const Coloring& coloring, const WalkParams& params,
                                const ThickTestFamily& family);

}  // namespace quadpat
