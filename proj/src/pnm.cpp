#include "streetlight/pnm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "streetlight/errors.hpp"

namespace streetlight {
namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::string& origin) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (token.empty())
        throw FormatError(origin + ": truncated PNM header");
    return token;
}

int parse_dim(const std::string& token, const std::string& origin, const char* what) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(token, &pos);
        if (pos != token.size() || v < 1 || v > 1 << 20)
            throw std::invalid_argument("range");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw FormatError(origin + ": bad " + what + " '" + token + "'");
    }
}

void read_header(std::istream& in, const std::string& magic, const std::string& origin,
                 int& width, int& height) {
    const std::string found = next_token(in, origin);
    if (found != magic)
        throw FormatError(origin + ": expected " + magic + " magic, found '" + found + "'");
    width = parse_dim(next_token(in, origin), origin, "width");
    height = parse_dim(next_token(in, origin), origin, "height");
    const std::string maxval = next_token(in, origin);
    if (maxval != "255")
        throw FormatError(origin + ": unsupported maxval '" + maxval + "' (only 255)");
    // exactly one whitespace byte separates the header from the raster
}

void read_raster(std::istream& in, std::vector<std::uint8_t>& buffer, const std::string& origin) {
    in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
    if (static_cast<std::size_t>(in.gcount()) != buffer.size())
        throw FormatError(origin + ": truncated raster data");
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NotFoundError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw NotFoundError("cannot write " + path.string());
    return out;
}

}  // namespace

Frame read_ppm(std::istream& in, const std::string& origin) {
    Frame frame;
    read_header(in, "P6", origin, frame.width, frame.height);
    frame.pixels.resize(frame.pixel_count() * 3);
    read_raster(in, frame.pixels, origin);
    return frame;
}

Frame read_ppm(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_ppm(in, path.string());
}

void write_ppm(std::ostream& out, const Frame& frame) {
    validate(frame);
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixels.size()));
}

void write_ppm(const std::filesystem::path& path, const Frame& frame) {
    auto out = open_output(path);
    write_ppm(out, frame);
}

GrayImage read_pgm(std::istream& in, const std::string& origin) {
    GrayImage image;
    read_header(in, "P5", origin, image.width, image.height);
    image.pixels.resize(image.pixel_count());
    read_raster(in, image.pixels, origin);
    return image;
}

GrayImage read_pgm(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_pgm(in, path.string());
}

void write_pgm(std::ostream& out, const GrayImage& image) {
    validate(image);
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
    auto out = open_output(path);
    write_pgm(out, image);
}

double timestamp_from_filename(const std::filesystem::path& path, std::size_t sequence_index,
                               double frame_interval_s) {
    const std::string stem = path.stem().string();
    if (!stem.empty() && stem.find_first_not_of("0123456789") == std::string::npos &&
        stem.size() <= 15) {
        return static_cast<double>(std::stoll(stem)) / 1000.0;
    }
    return static_cast<double>(sequence_index) * frame_interval_s;
}

}  // namespace streetlight
