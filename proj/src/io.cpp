#include "chordal/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chordal::io {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("failed writing " + path);
}

std::vector<Vec> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::vector<Vec> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        Vec p;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) {
            try {
                p.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("malformed CSV cell '" + cell + "' in " + path);
            }
        }
        if (!p.empty()) pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Vec> read_points_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed JSON in " + path + ": " + e.what());
    }
    if (!j.contains("points") || !j["points"].is_array())
        throw IoError(path + " lacks a \"points\" array");
    std::vector<Vec> pts;
    for (const auto& row : j["points"]) {
        Vec p;
        for (const auto& x : row) p.push_back(x.get<double>());
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Vec> read_points(const std::string& path, const std::string& format) {
    std::string f = format;
    if (f == "auto") {
        const size_t dot = path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
        f = (ext == ".json") ? "json" : "csv";
    }
    if (f == "json") return read_points_json(path);
    if (f == "csv") return read_points_csv(path);
    throw IoError("unknown input format '" + format + "'");
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string death_token(double d) {
    return std::isfinite(d) ? format_double(d) : std::string("\"inf\"");
}

void append_points(std::string& out, const std::vector<DiagramPoint>& pts) {
    out += "[";
    for (size_t k = 0; k < pts.size(); ++k) {
        out += "{\"dim\":" + std::to_string(pts[k].dim) +
               ",\"birth\":" + format_double(pts[k].birth) +
               ",\"death\":" + death_token(pts[k].death) + "}";
        if (k + 1 < pts.size()) out += ",";
    }
    out += "]";
}

}  // namespace

std::string diagram_to_json(const PersistenceDiagram& diag,
                            const std::vector<DiagramPoint>* zero_pairs) {
    std::string out = "{\"p\":" + std::to_string(diag.p) + ",\"points\":";
    append_points(out, diag.points);
    if (zero_pairs) {
        out += ",\"zero_pairs\":";
        append_points(out, *zero_pairs);
    }
    out += "}\n";
    return out;
}

PersistenceDiagram diagram_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PersistenceDiagram d;
    d.p = j.at("p").get<int>();
    for (const auto& pt : j.at("points")) {
        DiagramPoint q;
        q.dim = pt.at("dim").get<int>();
        q.birth = pt.at("birth").get<double>();
        const auto& death = pt.at("death");
        q.death = death.is_string() ? kInf : death.get<double>();
        d.points.push_back(q);
    }
    return d;
}

namespace {

std::string pair_list(const std::vector<std::pair<int, int>>& v) {
    std::string out = "[";
    for (size_t k = 0; k < v.size(); ++k) {
        out += "[" + std::to_string(v[k].first) + "," +
               std::to_string(v[k].second) + "]";
        if (k + 1 < v.size()) out += ",";
    }
    out += "]";
    return out;
}

}  // namespace

std::string report_to_json(const NondegeneracyReport& rep) {
    std::string out = "{\"pass\":";
    out += rep.pass() ? "true" : "false";
    out += ",\"tolerance\":" + format_double(rep.tolerance);
    out += ",\"c1_violations\":" + pair_list(rep.c1_violations);
    out += ",\"c2_violations\":" + pair_list(rep.c2_violations);
    out += ",\"c3_violations\":" + pair_list(rep.c3_violations);
    out += "}\n";
    return out;
}

namespace {

char angle_letter(AngleClass a) {
    switch (a) {
        case AngleClass::Acute: return 'A';
        case AngleClass::Right: return 'R';
        case AngleClass::Obtuse: return 'O';
    }
    return '?';
}

}  // namespace

std::string chords_to_json(const std::vector<CriticalChord>& chords,
                           const AgreementReport* agreement) {
    std::string out = "{\"chords\":[";
    for (size_t k = 0; k < chords.size(); ++k) {
        const CriticalChord& c = chords[k];
        out += "{\"i\":" + std::to_string(c.z1.edge) +
               ",\"s1\":" + format_double(c.z1.s) +
               ",\"j\":" + std::to_string(c.z2.edge) +
               ",\"s2\":" + format_double(c.z2.s) +
               ",\"value\":" + format_double(c.value) +
               ",\"index\":" + std::to_string(c.index) + ",\"angles\":[";
        const char letters[4] = {angle_letter(c.angles.plus1),
                                 angle_letter(c.angles.minus1),
                                 angle_letter(c.angles.plus2),
                                 angle_letter(c.angles.minus2)};
        for (int i = 0; i < 4; ++i) {
            out += std::string("\"") + letters[i] + "\"";
            if (i < 3) out += ",";
        }
        out += "]}";
        if (k + 1 < chords.size()) out += ",";
    }
    out += "]";
    if (agreement) {
        out += ",\"agreement\":{\"pass\":";
        out += agreement->pass ? "true" : "false";
        out += ",\"chord_count\":" + std::to_string(agreement->chord_count);
        out += ",\"morse_count\":" + std::to_string(agreement->morse_count);
        out += ",\"mismatches\":[";
        for (size_t k = 0; k < agreement->mismatches.size(); ++k) {
            out += "\"" + agreement->mismatches[k] + "\"";
            if (k + 1 < agreement->mismatches.size()) out += ",";
        }
        out += "]}";
    }
    out += "}\n";
    return out;
}

std::string stability_reports_to_json(const std::vector<StabilityReport>& reps) {
    std::string out = "{\"trials\":[";
    for (size_t k = 0; k < reps.size(); ++k) {
        const StabilityReport& r = reps[k];
        out += "{\"k\":" + std::to_string(r.k) +
               ",\"empirical\":" + format_double(r.empirical) +
               ",\"displacement\":" + format_double(r.displacement) +
               ",\"diameter\":" + format_double(r.diameter) +
               ",\"bound\":" + format_double(r.bound) +
               ",\"bound_published\":" + format_double(r.bound_published) +
               ",\"pass\":" + (r.pass ? "true" : "false") + "}";
        if (k + 1 < reps.size()) out += ",";
    }
    out += "]}\n";
    return out;
}

void write_filtered_complex_text(const FilteredComplex& fc,
                                 const std::string& path) {
    std::string out;
    for (size_t k = 0; k < fc.size(); ++k) {
        out += std::to_string(int(fc.dim[k]));
        for (int i = 0; i <= fc.dim[k]; ++i)
            out += " " + std::to_string(fc.simplex[k].v[size_t(i)]);
        out += " " + format_double(fc.value[k]) + "\n";
    }
    write_text_file(path, out);
}

}  // namespace chordal::io
