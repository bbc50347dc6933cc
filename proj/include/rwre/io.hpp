#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwre/environment.hpp"
#include "rwre/lattice.hpp"

namespace rwre {

using Json = nlohmann::ordered_json;

// Loads a JSON config and applies dot-path overrides of the form a.b.c=value.
// Values parse as JSON when possible, else as strings.
Json load_config(const std::string& path, const std::vector<std::string>& overrides);

// FNV-1a over the canonical serialization; hex string.
std::string config_hash(const Json& config);

// Throws std::runtime_error naming the offending field path.
EnvironmentSpec environment_from_json(const Json& env, const std::string& field_prefix = "environment");
Site site_from_json(const Json& arr, const std::string& field);

// One observation per row; writes a header then the rows.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string fmt_double(double v);

void write_manifest(const std::filesystem::path& dir, const Json& config, double wall_seconds);

}  // namespace rwre
