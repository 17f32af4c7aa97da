#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace streetlight {

// FNV-1a, 64-bit. Content digests in run manifests only need to pin inputs
// for replay comparison, not resist an adversary.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t value);

// Reproducibility envelope embedded in every report: the command, its
// resolved configuration, content digests of the inputs, and the seed. The
// created_utc field is wall clock and is excluded from replay comparisons.
struct RunManifest {
    std::string command;
    std::string version;
    std::string created_utc;
    std::uint64_t seed = 0;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, std::string>> inputs;  // path -> fnv1a64 hex
};

RunManifest make_manifest(std::string command, nlohmann::ordered_json config,
                          std::span<const std::filesystem::path> input_paths,
                          std::uint64_t seed);

nlohmann::ordered_json manifest_to_json(const RunManifest& manifest);

}  // namespace streetlight
