#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "din/core/types.hpp"

namespace din {

// FNV-1a 64 over a string, hex encoded. Used as the config fingerprint every
// artifact embeds.
std::string fnv1a_hex(const std::string& s);

nlohmann::json config_to_json(const StaircaseConfig& cfg);
StaircaseConfig config_from_json(const nlohmann::json& j);

// din-result/1 document.
nlohmann::json session_to_json(const SessionResult& r);
SessionResult session_from_json(const nlohmann::json& j);

void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

} // namespace din
