#pragma once

#include <string>

#include "isoprof/ball_placement.hpp"
#include "isoprof/warped_surface.hpp"

namespace isoprof {

/// Builds a surface from a JSON document:
///   {"catalog": "hyperbolic", "T_num": 20.0}
///   {"catalog": "custom", "T_num": 5.0,
///    "warp": {"phi": "sinh(t)", "dphi": "cosh(t)", "ddphi": "sinh(t)"}}
/// T_num is optional for catalog surfaces, required for custom warps.
WarpedSurface surface_from_json(const std::string& text);

/// Scenario JSON:
///   {"surface": {...}, "E": [[0.0, 1.0]], "b": 2.0, "dD": 4.0,
///    "r0": 1.0, "inj_override": -1.0}
/// The surface object is owned by the caller and must outlive the scenario.
PlacementScenario scenario_from_json(const std::string& text,
                                     const WarpedSurface& surface);

/// Extracts the "surface" object of a scenario document (or the whole
/// document when no such key exists) so the caller can build the surface
/// first.
std::string scenario_surface_json(const std::string& text);

/// Reads a whole file; throws DomainError when unreadable.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace isoprof
