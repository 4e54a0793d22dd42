#pragma once

#include "polarcvx/convex_body.hpp"
#include "polarcvx/function.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace polarcvx {

/// Function-spec documents (JSON):
///
///   {"dim": 2, "family": "gauge", "params": {"t": 1},
///    "body": {"name": "cube", "scale": 1}}
///
/// Bodies: {"name": ..., "scale": s} | {"vertices": [[...], ...]} |
/// {"halfspaces": [{"a": [...], "b": b}, ...], "allow_unbounded": false} |
/// {"linear": [[row], ...], "body": {...}} | {"intersection": [...]} |
/// {"sum": [...], "weights": [...]} | {"polar": {...}}; any body may carry
/// an extra "scale". Families and their fields:
///   indicator(body), gauge(body, params.t), restricted_gauge(body, domain),
///   zero_set_gauge(body, zero_set), hinged_gauge(body, params.a),
///   power_gauge(body, params.p, params.scale), max_of(parts[]),
///   sampled(points[], values[], lower_bound_only), gauge_distance(body, center).
/// Infinite values are written as the string "inf".
GeomCvxFn parse_function_spec(std::string_view json_text);
GeomCvxFn load_function_spec(const std::filesystem::path& path);

ConvexBody parse_body_spec(std::string_view json_text);

std::string function_spec_json(const GeomCvxFn& phi, int indent = 2);
std::string body_spec_json(const ConvexBody& body, int indent = 2);

}  // namespace polarcvx
