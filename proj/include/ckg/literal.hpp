#pragma once

// JSON forms shared by config files and reports.
//
//   matrix : [[ [re, im], ... ], ...]                       list of rows
//   space  : [{"id": str, "weight": num, "fiber_dim": int, "partition"?: str}, ...]
//   family : {"ambient_dim": n, "space": <space>, "ops": [<matrix>, ...]}
//   extended real : a number, or the string "inf"
//
// Parsing errors throw ParseError.

#include "json.hpp"

#include "ckg/duality.hpp"
#include "ckg/frame.hpp"
#include "ckg/perturbation.hpp"

namespace ckg {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json to_json(const DiscreteMeasureSpace& sp);
DiscreteMeasureSpace space_from_json(const Json& j);

Json to_json(const OperatorFamily& fam);
OperatorFamily family_from_json(const Json& j);

Json extended_real(double x);
double extended_real_from_json(const Json& j);

// [lower, upper]
Json to_json(const FrameBounds& b);
FrameBounds bounds_from_json(const Json& j);

Json to_json(const FrameReport& r);
Json to_json(const DualPair& pair);
// {"predicted", "empirical", "slack", "samples", "seed", "success"} plus diagnostics.
Json to_json(const PerturbationReport& r);

}  // namespace ckg
