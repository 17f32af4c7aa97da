#include "streetlight/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "streetlight/errors.hpp"
#include "streetlight/version.hpp"

namespace streetlight {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NotFoundError("cannot hash " + path.string());
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        const auto n = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

RunManifest make_manifest(std::string command, nlohmann::ordered_json config,
                          std::span<const std::filesystem::path> input_paths,
                          std::uint64_t seed) {
    RunManifest manifest;
    manifest.command = std::move(command);
    manifest.version = kVersion;
    manifest.seed = seed;
    manifest.config = std::move(config);

    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
    manifest.created_utc = stamp;

    for (const auto& path : input_paths)
        manifest.inputs.emplace_back(path.string(), hex64(fnv1a64_file(path)));
    return manifest;
}

nlohmann::ordered_json manifest_to_json(const RunManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["command"] = manifest.command;
    doc["version"] = manifest.version;
    doc["created_utc"] = manifest.created_utc;
    doc["seed"] = manifest.seed;
    doc["config"] = manifest.config;
    doc["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : manifest.inputs)
        doc["inputs"].push_back({{"path", path}, {"fnv1a64", digest}});
    return doc;
}

}  // namespace streetlight
