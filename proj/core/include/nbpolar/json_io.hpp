#pragma once

#include <string>

#include "nbpolar/codec.hpp"
#include "nbpolar/distance.hpp"
#include "nbpolar/kernel.hpp"
#include "nbpolar/kernel_search.hpp"
#include "nbpolar/signal_set.hpp"
#include "nbpolar/sim.hpp"

namespace nbpolar {

// JSON interchange formats:
//   signal set  { "q": int, "es": real, "points": [[re, im], ...] }
//   kernel      { "q": int, "label": str, "table": [[...], ...] }
//               or the permutation shorthand { "q": int, "pi": [...] }
//   spectrum    { "kind": "good"|"bad", "entries": [{"d": real, "n": int}] }
//   code config { "q": int, "N": int, "stages": [kernel names], "frozen": [...] }

std::string to_json(const SignalSet& set);
SignalSet signal_set_from_json(const std::string& text);

std::string to_json(const Kernel& k);
Kernel kernel_from_json(const std::string& text);

std::string to_json(const DistanceSpectrum& s);
DistanceSpectrum spectrum_from_json(const std::string& text);

std::string to_json(const CodeConfig& cfg);
CodeConfig code_config_from_json(const std::string& text);

std::string to_json(const SearchReport& report);
std::string to_json(const SimulationReport& report);
std::string to_json(const ReliabilityProfile& profile);

/// FNV-1a of a canonical dump; embedded in CSV headers so outputs can be
/// traced back to the exact configuration.
std::string config_hash(const std::string& canonical_dump);

}  // namespace nbpolar
