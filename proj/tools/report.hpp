#pragma once

#include <json.hpp>

#include "spectra/approx.hpp"
#include "spectra/debruijn.hpp"
#include "spectra/pipeline.hpp"
#include "spectra/repeats.hpp"

namespace spectra::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "spectra/1";

Json to_json(const RepeatPair& p);
Json to_json(const InterleavedWitness& w);
Json to_json(const MBound& m);
/// Threshold entry; the bracket also appears as a two-element array.
Json to_json(const NoisyThreshold& t);
Json to_json(const AmbiguityReport& a);
Json to_json(const Certificate& c);

} // namespace spectra::report
