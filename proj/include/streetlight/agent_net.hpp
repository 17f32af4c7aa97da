#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "streetlight/control.hpp"

namespace streetlight {

// Symmetric radius graph over lamp positions: an edge exists iff the planar
// distance is within the larger of the two neighbor radii.
struct Topology {
    std::vector<LampConfig> lamps;
    std::vector<std::pair<int, int>> edges;       // i < j, sorted
    std::vector<std::vector<int>> neighbors;      // adjacency lists, sorted

    int index_of(const std::string& lamp_id) const;  // -1 when unknown
};

Topology build_topology(std::vector<LampConfig> lamps);

struct NetParams {
    std::int64_t latency_ms = 0;
    double drop_probability = 0.0;
    double gossip_period_s = 60.0;
    std::uint64_t seed = 0;
};

void validate(const NetParams& params);

enum class MessageKind { kPresence, kDaynightGossip };

const char* to_string(MessageKind kind);

struct NetMessage {
    MessageKind kind = MessageKind::kPresence;
    std::string from;
    std::string to;
    std::int64_t send_ms = 0;
    std::int64_t deliver_ms = 0;
    bool dropped = false;
    PresenceReport presence;              // kPresence payload
    DayNight verdict = DayNight::kNight;  // kDaynightGossip payload
    std::int64_t sender_time_ms = 0;      // kDaynightGossip payload
};

enum class EventKind { kDetection, kAmbient };

struct ScenarioEvent {
    std::int64_t time_ms = 0;
    std::string lamp_id;
    EventKind kind = EventKind::kDetection;
    // detection payload: an inline presence report or a frame/mask file pair;
    // an optional ambient-brightness sample feeds the vision day/night input
    std::optional<PresenceReport> presence;
    std::optional<std::string> frame_path;
    std::optional<std::string> mask_path;
    std::optional<double> brightness;
    // ambient payload
    std::optional<DayNight> ambient;
};

struct Scenario {
    std::vector<LampConfig> lamps;
    NetParams net;
    std::vector<ScenarioEvent> events;  // ordered by time_ms
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    std::filesystem::path base_dir;  // frame/mask paths resolve against this
};

// Throws ScenarioError with event context on malformed documents.
Scenario parse_scenario(const nlohmann::json& doc,
                        const std::filesystem::path& base_dir = ".");
Scenario load_scenario(const std::filesystem::path& path);

struct LampReport {
    std::string lamp_id;
    BrightnessTimeline timeline;
    std::vector<std::pair<std::int64_t, DayNight>> daynight_changes;
    double energy_wh = 0.0;
    double baseline_wh = 0.0;                // always-FULL-at-night policy
    std::optional<double> savings;           // absent when the lamp saw no night
};

struct SimReport {
    std::uint64_t seed = 0;
    std::vector<LampReport> lamps;  // scenario order
    std::vector<NetMessage> messages;
    double fleet_energy_wh = 0.0;
    double fleet_baseline_wh = 0.0;
    std::optional<double> fleet_savings;
};

// Deterministic discrete-event simulation of the lamp network. Replaying the
// same scenario and params reproduces the report byte for byte.
SimReport run_sim(const Scenario& scenario, const NetParams& params);

// Synchronous-round abstraction of the in-sim verdict gossip: every lamp
// takes the majority over itself and its neighbors, its own verdict breaking
// ties.
std::vector<DayNight> gossip_round(const std::vector<DayNight>& verdicts, const Topology& topo);

nlohmann::ordered_json sim_report_to_json(const SimReport& report);

// CSV timeline export, columns lamp_id,timestamp,brightness.
std::string sim_report_timeline_csv(const SimReport& report);

}  // namespace streetlight
