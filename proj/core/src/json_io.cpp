#include "quadpat/json_io.hpp"

#include <json.hpp>

namespace quadpat {

namespace {

using Json = nlohmann::ordered_json;

Json rat(const Rational& r) { return r.str(); }

Json rats(const std::vector<Rational>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(rat(v));
  return a;
}

Json set_values(const IndexSet& s, const GroundSet& g) {
  Json a = Json::array();
  s.for_each([&](std::uint32_t i) { a.push_back(g.value_at(i).str()); });
  return a;
}

}  // namespace

std::string cover_to_json(const CoverDecomposition& cover, const GroundSet& g) {
  (void)g;
  Json j;
  j["numColors"] = cover.num_colors;
  j["Ys"] = cover.Ys;
  j["F"] = rats(cover.F);
  Json th = Json::array();
  for (const auto& w : cover.thickness_certificates) th.push_back(rats(w.shifts));
  j["thicknessCertificates"] = th;
  Json certs = Json::array();
  for (const auto& c : cover.element_certs) {
    Json e;
    e["l"] = c.l;
    e["shifts"] = rats(c.shifts);
    certs.push_back(std::move(e));
  }
  j["elementCerts"] = std::move(certs);
  return j.dump();
}

std::string prod_family_to_json(const ProdFamily& fam) {
  Json j;
  j["k"] = fam.k;
  j["N"] = fam.N;
  j["r"] = fam.r;
  Json S = Json::array();
  for (const auto& row : fam.S) {
    Json cols = Json::array();
    for (const auto& col : row) cols.push_back(rats(col));
    S.push_back(std::move(cols));
  }
  j["S"] = std::move(S);
  Json W = Json::array();
  for (const auto& row : fam.witnesses) {
    Json cols = Json::array();
    for (const auto& w : row) cols.push_back(rats(w.sequence));
    W.push_back(std::move(cols));
  }
  j["witnesses"] = std::move(W);
  return j.dump();
}

std::string derived_summary_to_json(const DerivedColoring& d) {
  Json j;
  j["K"] = d.K();
  Json tuples = Json::array();
  for (int id = 0; id < d.K(); ++id) {
    const auto& t = d.tuple(id);
    Json e;
    e["id"] = id;
    e["l"] = t.l;
    e["colorSet"] = d.cover().Ys[std::size_t(t.l)];
    e["shifts"] = rats(t.shifts);
    e["size"] = d.tuple_class(id).count();
    tuples.push_back(std::move(e));
  }
  j["tuples"] = std::move(tuples);
  return j.dump();
}

std::string walk_result_to_json(const WalkQuadResult& res, const GroundSet& g) {
  Json j;
  j["outcome"] = std::string(walk_outcome_name(res.outcome));
  if (res.failed_step >= 0) j["failedStep"] = res.failed_step;
  if (!res.message.empty()) j["message"] = res.message;
  j["K"] = res.K;
  j["s"] = res.s_used;
  j["alphaFloor"] = rat(res.alpha_floor);
  j["prodDegraded"] = res.prod_degraded;
  Json steps = Json::array();
  for (const auto& st : res.steps) {
    Json e;
    e["A"] = set_values(st.A, g);
    e["density"] = rat(st.density);
    e["tuple"] = st.tuple_id;
    if (st.y) {
      e["Q"] = rats(st.Q);
      e["y"] = rat(*st.y);
      e["alphaPrime"] = rat(st.alpha_prime);
      e["degraded"] = st.degraded;
      e["prop1"] = st.prop1;
      e["prop2"] = st.prop2;
      e["prop3"] = st.prop3;
    }
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  if (res.outcome == WalkOutcome::Success) {
    j["pigeonI"] = res.pigeon_i;
    j["pigeonJ"] = res.pigeon_j;
    j["color"] = res.color;
    j["x"] = rat(res.x);
    j["y"] = rat(res.y);
    j["quad"] = rats(res.quad);
    j["alternativeXs"] = rats(res.alternative_xs);
  }
  return j.dump();
}

std::string thick_walk_to_json(const ThickWalkResult& res) {
  Json j;
  j["success"] = res.success;
  if (res.failed_stage) j["failedStage"] = std::string(thick_stage_name(*res.failed_stage));
  if (!res.message.empty()) j["message"] = res.message;
  j["c1"] = res.c1;
  j["c2"] = res.c2;
  j["S1"] = rats(res.S1);
  j["S2"] = rats(res.S2);
  if (res.y1) j["y1"] = rat(*res.y1);
  if (res.y2) j["y2"] = rat(*res.y2);
  if (res.success) {
    j["branch"] = res.branch;
    j["color"] = res.color;
    j["x"] = rat(res.x);
    j["y"] = rat(res.y);
    j["quad"] = rats(res.quad);
  }
  return j.dump();
}

std::string avoidance_to_json(const AvoidanceResult& res) {
  Json j;
  j["verdict"] = res.forced ? "forced" : "avoiding";
  j["method"] = std::string(method_name(res.method));
  j["instances"] = res.instance_count;
  j["seconds"] = res.seconds;
  j["work"] = res.work;
  if (res.externally_certified) j["externallyCertified"] = true;
  if (res.avoiding) j["coloring"] = res.avoiding->to_digits();
  return j.dump();
}

std::string threshold_to_json(const ThresholdResult& res) {
  Json j;
  if (res.minimal_forced)
    j["minimalForced"] = *res.minimal_forced;
  else
    j["minimalForced"] = nullptr;
  Json rows = Json::array();
  for (const auto& r : res.rows) {
    Json e;
    e["N"] = r.N;
    e["verdict"] = r.forced ? "forced" : "avoiding";
    e["seconds"] = r.seconds;
    e["inferred"] = r.inferred;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

std::string field_threshold_to_json(const std::vector<FieldThresholdRow>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    Json e;
    e["p"] = r.p;
    e["verdict"] = r.forced ? "forced" : "avoiding";
    e["seconds"] = r.seconds;
    j.push_back(std::move(e));
  }
  return j.dump();
}

std::string counts_to_json(const MonochromeCounts& counts) {
  Json j;
  j["perColor"] = counts.per_color;
  j["total"] = counts.total;
  return j.dump();
}

}  // namespace quadpat
