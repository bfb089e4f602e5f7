#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "numerics.hpp"
#include "qstft.hpp"
#include "quaternion.hpp"
#include "signal.hpp"

namespace qtfa::io {

using json = nlohmann::json;

// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw input_error("not a number: '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

inline int parse_count(std::string_view s) {
    double v = parse_double(s);
    if (v != std::floor(v) || v < 2 || v > 1e6) throw input_error("grid node count must be an integer in [2, 1e6]");
    return static_cast<int>(v);
}

// "i", "j", "k", or "x,y,z" (normalized).
inline ImaginaryUnit parse_slice(const std::string& s) {
    if (s == "i") return ImaginaryUnit::i();
    if (s == "j") return ImaginaryUnit::j();
    if (s == "k") return ImaginaryUnit::k();
    auto parts = split(s, ',');
    if (parts.size() != 3) throw input_error("slice must be i, j, k or x,y,z");
    try {
        return ImaginaryUnit::from(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
    } catch (const input_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw input_error(e.what());
    }
}

inline std::string slice_string(const ImaginaryUnit& I) {
    const Quaternion& u = I.q();
    return format_double(u.x) + "," + format_double(u.y) + "," + format_double(u.z);
}

// "min,max,count"
inline UniformGrid parse_range(const std::string& s) {
    auto p = split(s, ',');
    if (p.size() != 3) throw input_error("range must be min,max,count");
    UniformGrid g{parse_double(p[0]), parse_double(p[1]), parse_count(p[2])};
    g.validate();
    return g;
}

// "xmin,xmax,nx,wmin,wmax,nw"
inline FieldGrid parse_grid(const std::string& s) {
    auto p = split(s, ',');
    if (p.size() != 6) throw input_error("grid must be xmin,xmax,nx,wmin,wmax,nw");
    FieldGrid g{{parse_double(p[0]), parse_double(p[1]), parse_count(p[2])},
                {parse_double(p[3]), parse_double(p[4]), parse_count(p[5])}};
    g.validate();
    return g;
}

inline std::string range_string(const UniformGrid& g) {
    return format_double(g.min) + "," + format_double(g.max) + "," + std::to_string(g.count);
}

// ---------------------------------------------------------------------------
// JSON signals

inline double json_number(const json& j, const char* what) {
    if (!j.is_number()) throw input_error(std::string(what) + " must be a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw input_error(std::string(what) + " must be finite");
    return v;
}

inline Quaternion parse_quaternion(const json& j) {
    if (j.is_number()) return Quaternion{json_number(j, "quaternion")};
    if (!j.is_array() || j.size() != 4) throw input_error("quaternion must be [w, x, y, z]");
    return {json_number(j[0], "w"), json_number(j[1], "x"), json_number(j[2], "y"), json_number(j[3], "z")};
}

inline json quaternion_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

inline Signal parse_signal(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw input_error("signal needs a \"type\" field");
    std::string type = j["type"];
    if (type == "hermite_coeffs") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw input_error("hermite_coeffs needs a \"coeffs\" array");
        HermiteExpansion h;
        for (auto& c : j["coeffs"]) h.coeffs.push_back(parse_quaternion(c));
        h.validate();
        return h;
    }
    if (type == "samples") {
        if (!j.contains("t0") || !j.contains("dt") || !j.contains("values") || !j["values"].is_array())
            throw input_error("samples needs t0, dt and a values array");
        SampledSignal s;
        s.t0 = json_number(j["t0"], "t0");
        s.dt = json_number(j["dt"], "dt");
        for (auto& v : j["values"]) s.values.push_back(parse_quaternion(v));
        s.validate();
        return s;
    }
    throw input_error("unknown signal type '" + type + "'");
}

// {"type":"vector","components":[...]}; a scalar spec becomes a one-component vector.
inline VectorSignal parse_vector_signal(const json& j) {
    VectorSignal v;
    if (j.is_object() && j.value("type", "") == "vector") {
        if (!j.contains("components") || !j["components"].is_array() || j["components"].empty())
            throw input_error("vector signal needs a nonempty \"components\" array");
        for (auto& c : j["components"]) v.components.push_back(parse_signal(c));
    } else {
        v.components.push_back(parse_signal(j));
    }
    return v;
}

inline json signal_json(const Signal& s) {
    if (auto* h = std::get_if<HermiteExpansion>(&s)) {
        json c = json::array();
        for (auto& q : h->coeffs) c.push_back(quaternion_json(q));
        return {{"type", "hermite_coeffs"}, {"coeffs", c}};
    }
    auto& sp = std::get<SampledSignal>(s);
    json v = json::array();
    for (auto& q : sp.values) v.push_back(quaternion_json(q));
    return {{"type", "samples"}, {"t0", sp.t0}, {"dt", sp.dt}, {"values", v}};
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw input_error(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Files

// Writes to a temporary file next to path and renames it into place.
inline void atomic_write(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    std::filesystem::path tmp = p;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw input_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw input_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, p, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw input_error("cannot rename into " + path + ": " + ec.message());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Field CSV: '#' metadata lines, a header row, then one row per grid node.

inline std::string field_csv(const TimeFreqField& F) {
    std::string s;
    s += "# qtfa time-frequency field\n";
    s += "# window_order=" + std::to_string(F.window_order) + "\n";
    s += std::string("# full=") + (F.full ? "1" : "0") + "\n";
    s += "# slice=" + slice_string(F.unit) + "\n";
    s += "# x_grid=" + range_string(F.grid.x) + "\n";
    s += "# omega_grid=" + range_string(F.grid.omega) + "\n";
    s += "# signal_norms=";
    for (std::size_t i = 0; i < F.signal_norms.size(); ++i) s += (i ? "," : "") + format_double(F.signal_norms[i]);
    s += "\n";
    s += "x,omega,qw,qx,qy,qz,abs\n";
    for (int ix = 0; ix < F.grid.x.count; ++ix)
        for (int iw = 0; iw < F.grid.omega.count; ++iw) {
            const Quaternion& q = F.at(ix, iw);
            s += format_double(F.grid.x.at(ix)) + ',' + format_double(F.grid.omega.at(iw)) + ',' + format_double(q.w) + ',' +
                 format_double(q.x) + ',' + format_double(q.y) + ',' + format_double(q.z) + ',' + format_double(abs(q)) +
                 '\n';
        }
    return s;
}

inline void write_field_csv(const TimeFreqField& F, const std::string& path) { atomic_write(path, field_csv(F)); }

inline TimeFreqField parse_field_csv(const std::string& text) {
    std::map<std::string, std::string> meta;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                key.erase(0, key.find_first_not_of(' '));
                meta[key] = line.substr(eq + 1);
            }
            continue;
        }
        if (!header) {
            if (line != "x,omega,qw,qx,qy,qz,abs") throw input_error("field CSV header must be x,omega,qw,qx,qy,qz,abs");
            header = true;
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != 7) throw input_error("field CSV row needs 7 columns");
        std::vector<double> r;
        for (auto& c : cells) r.push_back(parse_double(c));
        rows.push_back(std::move(r));
    }
    for (const char* k : {"window_order", "slice", "x_grid", "omega_grid"})
        if (!meta.count(k)) throw input_error(std::string("field CSV lacks '# ") + k + "=' metadata");
    TimeFreqField F;
    double n = parse_double(meta["window_order"]);
    if (n < 0 || n != std::floor(n)) throw input_error("window_order must be a nonnegative integer");
    F.window_order = static_cast<int>(n);
    F.full = meta.count("full") && meta["full"] == "1";
    F.unit = parse_slice(meta["slice"]);
    F.grid = {parse_range(meta["x_grid"]), parse_range(meta["omega_grid"])};
    if (meta.count("signal_norms") && !meta["signal_norms"].empty())
        for (auto& v : split(meta["signal_norms"], ',')) F.signal_norms.push_back(parse_double(v));
    if (rows.size() != F.grid.size()) throw input_error("field CSV row count does not match its grid");
    F.values.resize(rows.size());
    int nw = F.grid.omega.count;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double x = F.grid.x.at(int(i / nw)), w = F.grid.omega.at(int(i % nw));
        if (std::abs(rows[i][0] - x) > 1e-9 * (1 + std::abs(x)) || std::abs(rows[i][1] - w) > 1e-9 * (1 + std::abs(w)))
            throw input_error("field CSV row " + std::to_string(i) + " is off its grid node");
        F.values[i] = {rows[i][2], rows[i][3], rows[i][4], rows[i][5]};
    }
    return F;
}

inline TimeFreqField read_field_csv(const std::string& path) { return parse_field_csv(read_file(path)); }

}  // namespace qtfa::io
