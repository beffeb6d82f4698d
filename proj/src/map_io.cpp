#include "plim/map_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "plim/error.hpp"

namespace plim {

using nlohmann::json;

static Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        auto r = rational_from_string(j.get<std::string>());
        if (!r) throw ParseError(where + ": not a rational literal: " + j.get<std::string>());
        return *r;
    }
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError(where + ": expected decimal-integer or \"p/q\" string, got " + j.dump());
}

PLMap plmap_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("map file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dots") || !j["dots"].is_array())
        throw ParseError("map file: expected object with a \"dots\" array");
    Rational dlo = 0, dhi = 1;
    if (j.contains("domain")) {
        auto& d = j["domain"];
        if (!d.is_array() || d.size() != 2) throw ParseError("map file: bad \"domain\"");
        dlo = rational_from_json(d[0], "domain[0]");
        dhi = rational_from_json(d[1], "domain[1]");
    }
    std::vector<Dot> dots;
    int idx = 0;
    for (auto& e : j["dots"]) {
        if (!e.is_array() || e.size() != 2) {
            std::ostringstream os;
            os << "dot " << idx << ": expected [x, y]";
            throw ParseError(os.str());
        }
        std::ostringstream wx, wy;
        wx << "dot " << idx << " x";
        wy << "dot " << idx << " y";
        dots.push_back({rational_from_json(e[0], wx.str()), rational_from_json(e[1], wy.str())});
        ++idx;
    }
    try {
        if (dlo == 0 && dhi == 1) return connect_the_dots(dots);
        return connect_the_dots(dots, dlo, dhi);
    } catch (const DomainError& e) {
        throw ParseError(std::string("map file: ") + e.what());
    }
}

PLMap load_plmap(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return plmap_from_json(ss.str());
}

std::string plmap_to_json(const PLMap& f) {
    json j;
    j["domain"] = {"0", "1"};
    json dots = json::array();
    for (auto& d : f.dots)
        dots.push_back({rational_to_string(d.x), rational_to_string(d.y)});
    j["dots"] = dots;
    if (f.domain_scale != 1) j["original_domain_scale"] = rational_to_string(f.domain_scale);
    return j.dump(2);
}

void save_plmap(const PLMap& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << plmap_to_json(f) << "\n";
}

}  // namespace plim
