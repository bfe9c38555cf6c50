#pragma once

#include <string>

#include "packlim/geometry.hpp"
#include "packlim/sequences.hpp"

namespace packlim {

/// JSON descriptors:
///   {"model":"powerlaw","L":1.0,"d":0.5}
///   {"model":"blockgeo","rho":0.3333333333,"m":2,"b":1.0}
///   {"model":"explicit","lengths":[...],"tail":0.0}
///   {"model":"system","ratios":[...],"gaps":[...]}
GapSequence parse_sequence_descriptor(const std::string& json_text);
SelfSimilarSystem parse_system_descriptor(const std::string& json_text);

GapSequence load_sequence_descriptor(const std::string& path);
SelfSimilarSystem load_system_descriptor(const std::string& path);

std::string sequence_descriptor_json(const GapSequence& seq);

}  // namespace packlim
