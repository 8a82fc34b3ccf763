#pragma once

#include "json.hpp"

#include "lrc/control.hpp"
#include "lrc/fourier.hpp"
#include "lrc/maps.hpp"

namespace lrc {

using Json = nlohmann::ordered_json;

// { "N": int, "coeffs": [[re, im], ...] } ordered n = -N..N.
Json to_json(const FourierSeries& f);
// Throws InvalidArgument on malformed input or coefficients that are not
// Hermitian to 1e-12.
FourierSeries series_from_json(const Json& j);

// { "degree": d, "periodic_part": <FourierSeries> }
Json to_json(const CircleMap& map);
CircleMap map_from_json(const Json& j);

Json to_json(const SobolevWeights& w);
SobolevWeights weights_from_json(const Json& j);

// { "epsilon": <FourierSeries>, "residual": x, "norm": x, "method": s }
Json to_json(const ControlSolution& s);
ControlSolution solution_from_json(const Json& j);

}  // namespace lrc
