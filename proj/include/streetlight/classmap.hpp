#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace streetlight {

// Reduced label space. Indices are fixed so masks are exchangeable between
// tools without carrying the map around.
enum class Category : std::uint8_t {
    kBackground = 0,
    kVehicle = 1,
    kPedestrian = 2,
};

inline constexpr int kReducedClasses = 3;

const char* to_string(Category c);

struct ClassMapEntry {
    std::array<std::uint8_t, 3> color{};  // palette RGB
    int index = 0;
    std::string name;
    Category category = Category::kBackground;
};

// Palette dictionary for CamVid-style label images. One entry per source
// class; colors and indices are unique, indices cover 0..K-1 exactly.
class ClassMap {
public:
    // Document format: one entry per line, "R G B index name category",
    // '#' starts a comment. Throws FormatError on any invariant violation.
    static ClassMap parse(std::istream& in, const std::string& origin = "<stream>");
    static ClassMap parse_string(const std::string& text);
    static ClassMap load(const std::filesystem::path& path);

    int num_classes() const { return static_cast<int>(entries_.size()); }
    const ClassMapEntry& entry(int index) const { return entries_.at(static_cast<std::size_t>(index)); }
    const std::vector<ClassMapEntry>& entries() const { return entries_; }

    std::optional<int> index_of_color(std::uint8_t r, std::uint8_t g, std::uint8_t b) const;
    Category category_of(int index) const { return entry(index).category; }

private:
    std::vector<ClassMapEntry> entries_;               // sorted by index
    std::unordered_map<std::uint32_t, int> by_color_;  // packed RGB -> index
};

}  // namespace streetlight
