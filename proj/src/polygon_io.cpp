#include "convexpos/polygon_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace convexpos {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::invalid_input, "FileNotFound", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Polygon parse_polygon_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::invalid_input, "MalformedJson", e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        fail(ErrorKind::invalid_input, "MalformedJson", "expected {\"vertices\": [[x,y],...]}");
    std::vector<Vec2> verts;
    for (const auto& entry : doc["vertices"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
            fail(ErrorKind::invalid_input, "MalformedJson", "vertex entries must be [x, y]");
        verts.push_back({entry[0].get<double>(), entry[1].get<double>()});
    }
    return Polygon::from_vertices(std::move(verts));
}

Polygon read_polygon_json(const std::string& path) { return parse_polygon_json(read_file(path)); }

std::string polygon_to_json(const Polygon& poly) {
    std::string out = "{\"vertices\": [";
    for (int j = 0; j < poly.size(); ++j) {
        if (j) out += ", ";
        out += "[" + format_double(poly.vertex(j).x) + ", " + format_double(poly.vertex(j).y) + "]";
    }
    out += "]}\n";
    return out;
}

void write_polygon_json(const Polygon& poly, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::invalid_input, "FileNotFound", "cannot write " + path);
    out << polygon_to_json(poly);
}

std::vector<Vec2> parse_points_csv(std::istream& in) {
    std::vector<Vec2> points;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x, y;
        if (!(row >> x >> y)) {
            if (first) {
                first = false;  // header line
                continue;
            }
            fail(ErrorKind::invalid_input, "MalformedCsv", "expected \"x,y\" rows: " + line);
        }
        first = false;
        points.push_back({x, y});
    }
    return points;
}

std::vector<Vec2> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_input, "FileNotFound", path);
    return parse_points_csv(in);
}

std::uint64_t polygon_hash(const Polygon& poly) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const Vec2& v : poly.vertices()) {
        mix(format_double(v.x));
        mix(format_double(v.y));
    }
    return h;
}

std::string polygon_hash_hex(const Polygon& poly) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(polygon_hash(poly)));
    return buf;
}

}  // namespace convexpos
