#pragma once

#include <string>

#include "quadpat/avoidance.hpp"
#include "quadpat/derived.hpp"
#include "quadpat/walk.hpp"

namespace quadpat {

/* Compact JSON with insertion-ordered keys; rationals appear as exact
 * strings, element sets as value arrays in enumeration order. */
std::string cover_to_json(const CoverDecomposition& cover, const GroundSet& g);
std::string prod_family_to_json(const ProdFamily& fam);
std::string derived_summary_to_json(const DerivedColoring& d);
std::string walk_result_to_json(const WalkQuadResult& res, const GroundSet& g);
std::string thick_walk_to_json(const ThickWalkResult& res);
std::string avoidance_to_json(const AvoidanceResult& res);
std::string threshold_to_json(const ThresholdResult& res);
std::string field_threshold_to_json(const std::vector<FieldThresholdRow>& rows);
std::string counts_to_json(const MonochromeCounts& counts);

}  // namespace quadpat
