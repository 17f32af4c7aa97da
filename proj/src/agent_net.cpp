#include "streetlight/agent_net.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "streetlight/errors.hpp"
#include "streetlight/pnm.hpp"
#include "streetlight/rng.hpp"

namespace streetlight {

int Topology::index_of(const std::string& lamp_id) const {
    for (std::size_t i = 0; i < lamps.size(); ++i)
        if (lamps[i].lamp_id == lamp_id) return static_cast<int>(i);
    return -1;
}

Topology build_topology(std::vector<LampConfig> lamps) {
    for (const LampConfig& cfg : lamps) validate(cfg);
    for (std::size_t i = 0; i < lamps.size(); ++i)
        for (std::size_t j = i + 1; j < lamps.size(); ++j)
            if (lamps[i].lamp_id == lamps[j].lamp_id)
                throw ConfigError("duplicate lamp_id '" + lamps[i].lamp_id + "'");

    Topology topo;
    topo.lamps = std::move(lamps);
    topo.neighbors.resize(topo.lamps.size());
    for (std::size_t i = 0; i < topo.lamps.size(); ++i) {
        for (std::size_t j = i + 1; j < topo.lamps.size(); ++j) {
            const LampConfig& a = topo.lamps[i];
            const LampConfig& b = topo.lamps[j];
            const double dist = std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
            if (dist <= std::max(a.neighbor_radius_m, b.neighbor_radius_m)) {
                topo.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
                topo.neighbors[i].push_back(static_cast<int>(j));
                topo.neighbors[j].push_back(static_cast<int>(i));
            }
        }
    }
    for (auto& adjacency : topo.neighbors) std::sort(adjacency.begin(), adjacency.end());
    return topo;
}

void validate(const NetParams& params) {
    if (params.latency_ms < 0)
        throw std::invalid_argument("NetParams: latency_ms must be >= 0");
    if (params.drop_probability < 0.0 || params.drop_probability > 1.0)
        throw std::invalid_argument("NetParams: drop_probability must be in [0, 1]");
    if (!(params.gossip_period_s > 0.0))
        throw std::invalid_argument("NetParams: gossip_period_s must be positive");
}

const char* to_string(MessageKind kind) {
    return kind == MessageKind::kPresence ? "PRESENCE" : "DAYNIGHT_GOSSIP";
}

std::vector<DayNight> gossip_round(const std::vector<DayNight>& verdicts, const Topology& topo) {
    if (verdicts.size() != topo.lamps.size())
        throw std::invalid_argument("gossip_round: one verdict per lamp required");
    std::vector<DayNight> next(verdicts.size());
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        int day = verdicts[i] == DayNight::kDay ? 1 : 0;
        int night = 1 - day;
        for (int j : topo.neighbors[i])
            (verdicts[j] == DayNight::kDay ? day : night) += 1;
        if (day > night) next[i] = DayNight::kDay;
        else if (night > day) next[i] = DayNight::kNight;
        else next[i] = verdicts[i];  // tie: self wins
    }
    return next;
}

namespace {

// -------------------------------------------------------------------------
// scenario parsing

ScenarioError scenario_error(const std::string& context, const std::string& what) {
    return ScenarioError("scenario: " + context + ": " + what);
}

double json_number(const nlohmann::json& doc, const char* key, double fallback,
                   const std::string& context) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) throw scenario_error(context, std::string(key) + " must be a number");
    return doc[key].get<double>();
}

LampConfig lamp_from_json(const nlohmann::json& doc, std::size_t position) {
    const std::string context = "lamps[" + std::to_string(position) + "]";
    if (!doc.is_object()) throw scenario_error(context, "must be an object");
    LampConfig cfg;
    if (!doc.contains("lamp_id") || !doc["lamp_id"].is_string())
        throw scenario_error(context, "lamp_id (string) is required");
    cfg.lamp_id = doc["lamp_id"].get<std::string>();
    cfg.rated_watts = json_number(doc, "rated_watts", cfg.rated_watts, context);
    cfg.dim_level = json_number(doc, "dim_level", cfg.dim_level, context);
    cfg.hold_seconds = json_number(doc, "hold_seconds", cfg.hold_seconds, context);
    cfg.neighbor_radius_m = json_number(doc, "neighbor_radius_m", cfg.neighbor_radius_m, context);
    cfg.min_area_fraction = json_number(doc, "min_area_fraction", cfg.min_area_fraction, context);
    if (doc.contains("position")) {
        cfg.x_m = json_number(doc["position"], "x_m", 0.0, context);
        cfg.y_m = json_number(doc["position"], "y_m", 0.0, context);
    }
    if (doc.contains("location") && !doc["location"].is_null()) {
        GeoLocation loc;
        loc.latitude = json_number(doc["location"], "latitude", 0.0, context);
        loc.longitude = json_number(doc["location"], "longitude", 0.0, context);
        cfg.location = loc;
    }
    if (doc.contains("thresholds")) {
        cfg.thresholds.theta_day =
            json_number(doc["thresholds"], "theta_day", cfg.thresholds.theta_day, context);
        cfg.thresholds.theta_night =
            json_number(doc["thresholds"], "theta_night", cfg.thresholds.theta_night, context);
    }
    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        throw scenario_error(context, e.what());
    }
    return cfg;
}

bool json_flag(const nlohmann::json& doc, const char* key, const std::string& context) {
    if (!doc.contains(key)) return false;
    if (!doc[key].is_boolean())
        throw scenario_error(context, std::string(key) + " must be a boolean");
    return doc[key].get<bool>();
}

PresenceReport presence_from_json(const nlohmann::json& doc, const std::string& context) {
    if (!doc.is_object()) throw scenario_error(context, "presence must be an object");
    PresenceReport report;
    report.vehicle_present = json_flag(doc, "vehicle_present", context);
    report.pedestrian_present = json_flag(doc, "pedestrian_present", context);
    report.vehicle_fraction = json_number(doc, "vehicle_fraction", 0.0, context);
    report.pedestrian_fraction = json_number(doc, "pedestrian_fraction", 0.0, context);
    if (report.vehicle_fraction < 0.0 || report.vehicle_fraction > 1.0 ||
        report.pedestrian_fraction < 0.0 || report.pedestrian_fraction > 1.0)
        throw scenario_error(context, "presence fractions must be in [0, 1]");
    return report;
}

// -------------------------------------------------------------------------
// event loop

enum class SimEventType { kInit, kScenario, kDeliver, kGossipTick, kHoldExpiry };

struct SimEvent {
    std::int64_t time_ms = 0;
    int lamp = 0;
    std::uint64_t seq = 0;  // scheduling order, the final tiebreak
    SimEventType type = SimEventType::kInit;
    int scenario_index = -1;      // kScenario
    std::size_t message_index = 0;  // kDeliver
};

// Min-queue ordered by (time, lamp_id, sequence number) so processing order
// never depends on container iteration order.
struct EventAfter {
    const std::vector<LampConfig>* lamps;
    bool operator()(const SimEvent& a, const SimEvent& b) const {
        if (a.time_ms != b.time_ms) return a.time_ms > b.time_ms;
        const std::string& a_id = (*lamps)[a.lamp].lamp_id;
        const std::string& b_id = (*lamps)[b.lamp].lamp_id;
        if (a_id != b_id) return a_id > b_id;
        return a.seq > b.seq;
    }
};

struct LampRuntime {
    LampState state;
    DayNightPrior vision_prev = DayNightPrior::kUnknown;
    DayNight vision = DayNight::kNight;  // fail-lit until a brightness sample arrives
    std::optional<DayNight> ambient;
    std::map<std::string, DayNight> last_gossip;  // sender -> latest verdict
    DayNight own = DayNight::kNight;
    DayNight effective = DayNight::kNight;
    SourceSet own_sources;
    double own_confidence = 1.0;
    bool seen_effective = false;
    LampReport report;
};

class Simulation {
public:
    Simulation(const Scenario& scenario, const NetParams& params)
        : scenario_(scenario),
          params_(params),
          topo_(build_topology(scenario.lamps)),
          rng_(params.seed) {
        validate(params_);
        queue_ = QueueType(EventAfter{&topo_.lamps});
        gossip_period_ms_ = static_cast<std::int64_t>(std::llround(params_.gossip_period_s * 1000.0));
        if (gossip_period_ms_ <= 0)
            throw std::invalid_argument("NetParams: gossip_period_s quantizes to zero ms");
        report_.seed = params_.seed;
        runtime_.resize(topo_.lamps.size());
        for (std::size_t i = 0; i < topo_.lamps.size(); ++i) {
            runtime_[i].state = initial_state(topo_.lamps[i]);
            runtime_[i].report.lamp_id = topo_.lamps[i].lamp_id;
            runtime_[i].report.timeline.lamp_id = topo_.lamps[i].lamp_id;
        }
        // send order: ascending neighbor lamp_id, pinned for drop-draw replay
        send_order_.resize(topo_.lamps.size());
        for (std::size_t i = 0; i < topo_.lamps.size(); ++i) {
            send_order_[i] = topo_.neighbors[i];
            std::sort(send_order_[i].begin(), send_order_[i].end(), [&](int a, int b) {
                return topo_.lamps[a].lamp_id < topo_.lamps[b].lamp_id;
            });
        }
    }

    SimReport run() {
        schedule_initial_events();
        while (!queue_.empty()) {
            const SimEvent event = queue_.top();
            queue_.pop();
            dispatch(event);
        }
        finalize();
        return std::move(report_);
    }

private:
    void push(SimEvent event) {
        event.seq = next_seq_++;
        queue_.push(event);
    }

    void schedule_initial_events() {
        for (std::size_t i = 0; i < topo_.lamps.size(); ++i)
            push({scenario_.start_ms, static_cast<int>(i), 0, SimEventType::kInit, -1, 0});
        for (std::size_t e = 0; e < scenario_.events.size(); ++e) {
            const ScenarioEvent& event = scenario_.events[e];
            const int lamp = topo_.index_of(event.lamp_id);
            if (lamp < 0)
                throw ScenarioError("scenario: unknown lamp_id '" + event.lamp_id + "'");
            push({event.time_ms, lamp, 0, SimEventType::kScenario, static_cast<int>(e), 0});
        }
        for (std::int64_t t = scenario_.start_ms + gossip_period_ms_; t <= scenario_.end_ms;
             t += gossip_period_ms_)
            for (std::size_t i = 0; i < topo_.lamps.size(); ++i)
                push({t, static_cast<int>(i), 0, SimEventType::kGossipTick, -1, 0});
    }

    void dispatch(const SimEvent& event) {
        switch (event.type) {
            case SimEventType::kInit:
                process(event.lamp, event.time_ms, PresenceReport{});
                break;
            case SimEventType::kScenario:
                handle_scenario_event(scenario_.events[static_cast<std::size_t>(event.scenario_index)]);
                break;
            case SimEventType::kDeliver: {
                // copy: the log may reallocate while this event is handled
                const NetMessage msg = report_.messages[event.message_index];
                if (msg.kind == MessageKind::kPresence) {
                    process(event.lamp, event.time_ms, msg.presence);
                } else {
                    runtime_[static_cast<std::size_t>(event.lamp)].last_gossip[msg.from] = msg.verdict;
                    process(event.lamp, event.time_ms, PresenceReport{});
                }
                break;
            }
            case SimEventType::kGossipTick: {
                process(event.lamp, event.time_ms, PresenceReport{});
                broadcast_gossip(event.lamp, event.time_ms);
                break;
            }
            case SimEventType::kHoldExpiry:
                process(event.lamp, event.time_ms, PresenceReport{});
                break;
        }
    }

    void handle_scenario_event(const ScenarioEvent& event) {
        const int lamp = topo_.index_of(event.lamp_id);
        LampRuntime& rt = runtime_[static_cast<std::size_t>(lamp)];
        const LampConfig& cfg = topo_.lamps[static_cast<std::size_t>(lamp)];

        if (event.kind == EventKind::kAmbient) {
            rt.ambient = event.ambient;
            process(lamp, event.time_ms, PresenceReport{});
            return;
        }

        PresenceReport presence_input;
        std::optional<double> brightness = event.brightness;
        if (event.presence) {
            presence_input = *event.presence;
        } else if (event.mask_path) {
            const SegMask mask =
                read_mask_pgm(scenario_.base_dir / *event.mask_path, kReducedClasses);
            presence_input = presence(mask, cfg.min_area_fraction);
        }
        if (event.frame_path && !brightness) {
            const Frame frame = read_ppm(scenario_.base_dir / *event.frame_path);
            brightness = mean_brightness(median_denoise(to_grayscale(frame))).value;
        }
        if (brightness) {
            rt.vision = classify_brightness(BrightnessEstimate{*brightness}, cfg.thresholds,
                                            rt.vision_prev);
            rt.vision_prev =
                rt.vision == DayNight::kDay ? DayNightPrior::kDay : DayNightPrior::kNight;
        }

        process(lamp, event.time_ms, presence_input);
        if (presence_input.any()) send_presence(lamp, event.time_ms, presence_input);
    }

    DayNightVerdict fused_verdict(int lamp, std::int64_t now_ms) {
        LampRuntime& rt = runtime_[static_cast<std::size_t>(lamp)];
        const LampConfig& cfg = topo_.lamps[static_cast<std::size_t>(lamp)];
        SolarVerdict solar = SolarVerdict::kUncertain;
        if (cfg.location)
            solar = solar_verdict(solar_elevation(*cfg.location, static_cast<double>(now_ms) / 1000.0));
        const DayNightVerdict own = fuse(rt.vision, solar, rt.ambient);
        rt.own = own.state;
        rt.own_sources = own.sources;
        rt.own_confidence = own.confidence;

        // adopt the majority of own + last-received neighbor verdicts, self
        // breaking ties
        int day = rt.own == DayNight::kDay ? 1 : 0;
        int night = 1 - day;
        for (const auto& [sender, verdict] : rt.last_gossip)
            (verdict == DayNight::kDay ? day : night) += 1;
        DayNight adopted = rt.own;
        if (day > night) adopted = DayNight::kDay;
        else if (night > day) adopted = DayNight::kNight;

        DayNightVerdict result = own;
        result.state = adopted;
        return result;
    }

    void process(int lamp, std::int64_t now_ms, const PresenceReport& presence_input) {
        LampRuntime& rt = runtime_[static_cast<std::size_t>(lamp)];
        const LampConfig& cfg = topo_.lamps[static_cast<std::size_t>(lamp)];

        const DayNightVerdict verdict = fused_verdict(lamp, now_ms);
        if (!rt.seen_effective || verdict.state != rt.effective) {
            rt.effective = verdict.state;
            rt.seen_effective = true;
            rt.report.daynight_changes.emplace_back(now_ms, verdict.state);
        }

        const auto prior_presence_at = rt.state.last_presence_at;
        rt.state = step(rt.state, cfg, verdict, presence_input, static_cast<double>(now_ms) / 1000.0);
        rt.report.timeline.record(static_cast<double>(now_ms) / 1000.0, rt.state.brightness);

        if (rt.state.last_presence_at != prior_presence_at && cfg.hold_seconds > 0.0) {
            const auto expiry_ms =
                now_ms + static_cast<std::int64_t>(std::llround(cfg.hold_seconds * 1000.0));
            if (expiry_ms <= scenario_.end_ms)
                push({expiry_ms, lamp, 0, SimEventType::kHoldExpiry, -1, 0});
        }
    }

    // One drop draw per message, consumed at send time in neighbor lamp_id
    // order; the log keeps dropped messages so replays stay aligned.
    void post_message(NetMessage message) {
        message.dropped = rng_.next_double() < params_.drop_probability;
        message.deliver_ms = message.send_ms + params_.latency_ms;
        const std::size_t index = report_.messages.size();
        const int to = topo_.index_of(message.to);
        const bool deliverable = !message.dropped && message.deliver_ms <= scenario_.end_ms;
        report_.messages.push_back(std::move(message));
        if (deliverable)
            push({report_.messages[index].deliver_ms, to, 0, SimEventType::kDeliver, -1, index});
    }

    void send_presence(int lamp, std::int64_t now_ms, const PresenceReport& presence_input) {
        for (int neighbor : send_order_[static_cast<std::size_t>(lamp)]) {
            NetMessage message;
            message.kind = MessageKind::kPresence;
            message.from = topo_.lamps[static_cast<std::size_t>(lamp)].lamp_id;
            message.to = topo_.lamps[static_cast<std::size_t>(neighbor)].lamp_id;
            message.send_ms = now_ms;
            message.presence = presence_input;
            post_message(std::move(message));
        }
    }

    void broadcast_gossip(int lamp, std::int64_t now_ms) {
        const LampRuntime& rt = runtime_[static_cast<std::size_t>(lamp)];
        for (int neighbor : send_order_[static_cast<std::size_t>(lamp)]) {
            NetMessage message;
            message.kind = MessageKind::kDaynightGossip;
            message.from = topo_.lamps[static_cast<std::size_t>(lamp)].lamp_id;
            message.to = topo_.lamps[static_cast<std::size_t>(neighbor)].lamp_id;
            message.send_ms = now_ms;
            message.verdict = rt.own;
            message.sender_time_ms = now_ms;
            post_message(std::move(message));
        }
    }

    void finalize() {
        const double end_s = static_cast<double>(scenario_.end_ms) / 1000.0;
        for (std::size_t i = 0; i < runtime_.size(); ++i) {
            LampRuntime& rt = runtime_[i];
            const LampConfig& cfg = topo_.lamps[i];
            rt.report.energy_wh = energy_wh(rt.report.timeline, cfg.rated_watts, end_s);

            std::vector<Interval> nights;
            const auto& changes = rt.report.daynight_changes;
            for (std::size_t c = 0; c < changes.size(); ++c) {
                if (changes[c].second != DayNight::kNight) continue;
                const double begin = static_cast<double>(changes[c].first) / 1000.0;
                const double end = c + 1 < changes.size()
                                       ? static_cast<double>(changes[c + 1].first) / 1000.0
                                       : end_s;
                if (end > begin) nights.push_back({begin, end});
            }
            double baseline = 0.0;
            for (const Interval& night : nights)
                baseline += cfg.rated_watts * ((night.end - night.begin) / 3600.0);
            rt.report.baseline_wh = baseline;
            if (baseline > 0.0)
                rt.report.savings = savings_vs_baseline(rt.report.timeline, cfg, nights);

            report_.fleet_energy_wh += rt.report.energy_wh;
            report_.fleet_baseline_wh += rt.report.baseline_wh;
            report_.lamps.push_back(std::move(rt.report));
        }
        if (report_.fleet_baseline_wh > 0.0)
            report_.fleet_savings = 1.0 - report_.fleet_energy_wh / report_.fleet_baseline_wh;
    }

    using QueueType = std::priority_queue<SimEvent, std::vector<SimEvent>, EventAfter>;

    const Scenario& scenario_;
    NetParams params_;
    Topology topo_;
    SplitMix64 rng_;
    std::int64_t gossip_period_ms_ = 0;
    std::vector<LampRuntime> runtime_;
    std::vector<std::vector<int>> send_order_;
    QueueType queue_{EventAfter{nullptr}};
    std::uint64_t next_seq_ = 1;
    SimReport report_;
};

}  // namespace

Scenario parse_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir) try {
    if (!doc.is_object()) throw ScenarioError("scenario: document must be a JSON object");
    Scenario scenario;
    scenario.base_dir = base_dir;

    if (!doc.contains("lamps") || !doc["lamps"].is_array() || doc["lamps"].empty())
        throw ScenarioError("scenario: 'lamps' must be a non-empty array");
    for (std::size_t i = 0; i < doc["lamps"].size(); ++i)
        scenario.lamps.push_back(lamp_from_json(doc["lamps"][i], i));

    if (doc.contains("net")) {
        const auto& net = doc["net"];
        if (!net.is_object()) throw ScenarioError("scenario: 'net' must be an object");
        scenario.net.latency_ms =
            static_cast<std::int64_t>(json_number(net, "latency_ms", 0.0, "net"));
        scenario.net.drop_probability = json_number(net, "drop_probability", 0.0, "net");
        scenario.net.gossip_period_s = json_number(net, "gossip_period_s", 60.0, "net");
        if (net.contains("seed")) {
            if (!net["seed"].is_number_integer() && !net["seed"].is_number_unsigned())
                throw ScenarioError("scenario: net.seed must be an integer");
            scenario.net.seed = net["seed"].get<std::uint64_t>();
        }
    }
    try {
        validate(scenario.net);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("scenario: net: ") + e.what());
    }

    if (!doc.contains("clock") || !doc["clock"].is_object() || !doc["clock"].contains("end_ms"))
        throw ScenarioError("scenario: 'clock' with start_ms/end_ms is required");
    scenario.start_ms = static_cast<std::int64_t>(json_number(doc["clock"], "start_ms", 0.0, "clock"));
    scenario.end_ms = static_cast<std::int64_t>(json_number(doc["clock"], "end_ms", 0.0, "clock"));
    if (scenario.end_ms < scenario.start_ms)
        throw ScenarioError("scenario: clock.end_ms precedes clock.start_ms");

    std::int64_t prev_time = scenario.start_ms;
    if (doc.contains("events")) {
        if (!doc["events"].is_array()) throw ScenarioError("scenario: 'events' must be an array");
        for (std::size_t i = 0; i < doc["events"].size(); ++i) {
            const auto& entry = doc["events"][i];
            const std::string context = "events[" + std::to_string(i) + "]";
            ScenarioEvent event;
            event.time_ms = static_cast<std::int64_t>(json_number(entry, "time_ms", -1.0, context));
            if (event.time_ms < scenario.start_ms || event.time_ms > scenario.end_ms)
                throw scenario_error(context, "time_ms outside the scenario clock range");
            if (event.time_ms < prev_time)
                throw scenario_error(context, "event times must be non-decreasing");
            prev_time = event.time_ms;

            if (!entry.contains("lamp_id") || !entry["lamp_id"].is_string())
                throw scenario_error(context, "lamp_id (string) is required");
            event.lamp_id = entry["lamp_id"].get<std::string>();
            bool known = false;
            for (const LampConfig& cfg : scenario.lamps) known |= cfg.lamp_id == event.lamp_id;
            if (!known) throw scenario_error(context, "unknown lamp_id '" + event.lamp_id + "'");

            if (entry.contains("kind") && !entry["kind"].is_string())
                throw scenario_error(context, "kind must be a string");
            const std::string kind = entry.value("kind", "");
            if (kind == "detection") {
                event.kind = EventKind::kDetection;
                if (entry.contains("presence"))
                    event.presence = presence_from_json(entry["presence"], context);
                if (entry.contains("frame")) event.frame_path = entry["frame"].get<std::string>();
                if (entry.contains("mask")) event.mask_path = entry["mask"].get<std::string>();
                if (entry.contains("brightness")) {
                    const double b = json_number(entry, "brightness", 0.0, context);
                    if (b < 0.0 || b > 1.0)
                        throw scenario_error(context, "brightness must be in [0, 1]");
                    event.brightness = b;
                }
                if (!event.presence && !event.mask_path && !event.brightness)
                    throw scenario_error(context,
                                         "detection needs 'presence', 'mask' or 'brightness'");
            } else if (kind == "ambient") {
                event.kind = EventKind::kAmbient;
                const std::string state = entry.value("state", "");
                if (state == "DAY") event.ambient = DayNight::kDay;
                else if (state == "NIGHT") event.ambient = DayNight::kNight;
                else throw scenario_error(context, "ambient state must be DAY or NIGHT");
            } else {
                throw scenario_error(context, "kind must be 'detection' or 'ambient'");
            }
            scenario.events.push_back(std::move(event));
        }
    }
    return scenario;
} catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario: malformed document: ") + e.what());
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open scenario " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError("scenario: " + path.string() + ": " + e.what());
    }
    return parse_scenario(doc, path.parent_path());
}

SimReport run_sim(const Scenario& scenario, const NetParams& params) {
    return Simulation(scenario, params).run();
}

namespace {

nlohmann::ordered_json presence_to_json(const PresenceReport& report) {
    return {{"vehicle_present", report.vehicle_present},
            {"pedestrian_present", report.pedestrian_present},
            {"vehicle_fraction", report.vehicle_fraction},
            {"pedestrian_fraction", report.pedestrian_fraction}};
}

}  // namespace

nlohmann::ordered_json sim_report_to_json(const SimReport& report) {
    nlohmann::ordered_json doc;
    doc["seed"] = report.seed;
    doc["fleet"] = {{"energy_wh", report.fleet_energy_wh},
                    {"baseline_wh", report.fleet_baseline_wh},
                    {"savings", report.fleet_savings ? nlohmann::ordered_json(*report.fleet_savings)
                                                     : nlohmann::ordered_json(nullptr)}};
    doc["lamps"] = nlohmann::ordered_json::array();
    for (const LampReport& lamp : report.lamps) {
        nlohmann::ordered_json entry;
        entry["lamp_id"] = lamp.lamp_id;
        entry["energy_wh"] = lamp.energy_wh;
        entry["baseline_wh"] = lamp.baseline_wh;
        entry["savings"] =
            lamp.savings ? nlohmann::ordered_json(*lamp.savings) : nlohmann::ordered_json(nullptr);
        entry["timeline"] = nlohmann::ordered_json::array();
        for (const TimelinePoint& point : lamp.timeline.points)
            entry["timeline"].push_back({{"t", point.t}, {"brightness", point.brightness}});
        entry["daynight"] = nlohmann::ordered_json::array();
        for (const auto& [time_ms, state] : lamp.daynight_changes)
            entry["daynight"].push_back({{"time_ms", time_ms}, {"state", to_string(state)}});
        doc["lamps"].push_back(std::move(entry));
    }
    doc["messages"] = nlohmann::ordered_json::array();
    for (const NetMessage& message : report.messages) {
        nlohmann::ordered_json entry;
        entry["kind"] = to_string(message.kind);
        entry["from"] = message.from;
        entry["to"] = message.to;
        entry["send_ms"] = message.send_ms;
        entry["deliver_ms"] = message.deliver_ms;
        entry["dropped"] = message.dropped;
        if (message.kind == MessageKind::kPresence)
            entry["presence"] = presence_to_json(message.presence);
        else
            entry["verdict"] = to_string(message.verdict);
        doc["messages"].push_back(std::move(entry));
    }
    return doc;
}

std::string sim_report_timeline_csv(const SimReport& report) {
    std::ostringstream out;
    out << "lamp_id,timestamp,brightness\n";
    char row[96];
    for (const LampReport& lamp : report.lamps)
        for (const TimelinePoint& point : lamp.timeline.points) {
            std::snprintf(row, sizeof(row), ",%.3f,%.6f\n", point.t, point.brightness);
            out << lamp.lamp_id << row;
        }
    return out.str();
}

}  // namespace streetlight
