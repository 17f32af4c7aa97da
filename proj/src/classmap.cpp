#include "streetlight/classmap.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "streetlight/errors.hpp"

namespace streetlight {
namespace {

std::uint32_t pack_rgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return (static_cast<std::uint32_t>(r) << 16) | (static_cast<std::uint32_t>(g) << 8) | b;
}

int parse_component(const std::string& token, const std::string& where, int max_value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(token, &pos);
        if (pos != token.size() || v < 0 || v > max_value)
            throw std::invalid_argument("range");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw FormatError(where + ": bad numeric field '" + token + "'");
    }
}

Category parse_category(const std::string& token, const std::string& where) {
    if (token == "background") return Category::kBackground;
    if (token == "vehicle") return Category::kVehicle;
    if (token == "pedestrian") return Category::kPedestrian;
    throw FormatError(where + ": unknown category token '" + token + "'");
}

}  // namespace

const char* to_string(Category c) {
    switch (c) {
        case Category::kBackground: return "background";
        case Category::kVehicle: return "vehicle";
        case Category::kPedestrian: return "pedestrian";
    }
    return "?";
}

ClassMap ClassMap::parse(std::istream& in, const std::string& origin) {
    ClassMap map;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string r, g, b, index, name, category, extra;
        if (!(fields >> r)) continue;  // blank or comment-only line
        const std::string where = origin + ":" + std::to_string(line_no);
        if (!(fields >> g >> b >> index >> name >> category))
            throw FormatError(where + ": expected 'R G B index name category'");
        if (fields >> extra)
            throw FormatError(where + ": trailing field '" + extra + "'");

        ClassMapEntry entry;
        entry.color = {static_cast<std::uint8_t>(parse_component(r, where, 255)),
                       static_cast<std::uint8_t>(parse_component(g, where, 255)),
                       static_cast<std::uint8_t>(parse_component(b, where, 255))};
        entry.index = parse_component(index, where, 4095);
        entry.name = name;
        entry.category = parse_category(category, where);

        const auto key = pack_rgb(entry.color[0], entry.color[1], entry.color[2]);
        if (!map.by_color_.emplace(key, entry.index).second)
            throw FormatError(where + ": duplicate color " + r + " " + g + " " + b);
        map.entries_.push_back(std::move(entry));
    }
    if (map.entries_.empty())
        throw FormatError(origin + ": class map is empty, need at least one class");

    std::sort(map.entries_.begin(), map.entries_.end(),
              [](const ClassMapEntry& a, const ClassMapEntry& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < map.entries_.size(); ++i) {
        if (map.entries_[i].index != static_cast<int>(i))
            throw FormatError(origin + ": class indices must cover 0.." +
                              std::to_string(map.entries_.size() - 1) + " exactly (got " +
                              std::to_string(map.entries_[i].index) + ")");
    }
    return map;
}

ClassMap ClassMap::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in, "<string>");
}

ClassMap ClassMap::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw NotFoundError("cannot open class map " + path.string());
    return parse(in, path.string());
}

std::optional<int> ClassMap::index_of_color(std::uint8_t r, std::uint8_t g, std::uint8_t b) const {
    const auto it = by_color_.find(pack_rgb(r, g, b));
    if (it == by_color_.end()) return std::nullopt;
    return it->second;
}

}  // namespace streetlight
