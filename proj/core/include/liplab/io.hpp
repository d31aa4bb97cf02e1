#pragma once

#include <string>

#include "liplab/init.hpp"
#include "liplab/network.hpp"

namespace liplab {

/// Shortest decimal representation that round-trips the exact double
/// (std::to_chars); used for CSV cells and anywhere byte-stable output
/// matters.
std::string format_double(double v);

/// Network file format: {"d", "hidden_widths", "weights", "biases"} with
/// weights as row-major 2-D arrays. Doubles round-trip exactly. Unknown keys
/// are rejected.
std::string network_to_json(const NetworkParams& net);
NetworkParams network_from_json(const std::string& text);
void save_network(const NetworkParams& net, const std::string& path);
NetworkParams load_network(const std::string& path);

/// Bias law / spec / init-config fragments, e.g.
///   {"kind":"gaussian","sigma":1.0}
///   {"d":2,"N":3,"L":1,"bias":{"kind":"zero"},"seed":1}
/// A bias spec may carry "per_layer": [law-or-null, ...] overrides.
std::string bias_spec_to_json(const BiasSpec& spec);
BiasSpec bias_spec_from_json(const std::string& text);
std::string init_config_to_json(const InitConfig& cfg);
InitConfig init_config_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace liplab
