#include "boxfuse/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace boxfuse {

namespace {

constexpr const char* kPredHeader = "image_id,label,score,xmin,ymin,xmax,ymax";
constexpr const char* kGtHeader = "image_id,label,xmin,ymin,xmax,ymax";
constexpr const char* kSubHeader = "ImageId,PredictionString";

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void finish_out(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

// getline that tolerates a trailing CR so CRLF files still parse.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::filesystem::path& path, std::size_t line,
                    const std::string& field, const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        parse_fail(path, line, "field '" + field + "': not a finite number: '" + text + "'");
    return v;
}

void check_label(const std::filesystem::path& path, std::size_t line, const std::string& label) {
    if (label.empty()) parse_fail(path, line, "field 'label': empty");
    for (char c : label)
        if (c == ',' || c == ' ' || static_cast<unsigned char>(c) < 0x21)
            parse_fail(path, line, "field 'label': illegal character in '" + label + "'");
}

double check_score(const std::filesystem::path& path, std::size_t line, double score) {
    if (score < 0.0 || score > 1.0)
        parse_fail(path, line,
                   "field 'score': value " + std::to_string(score) + " outside [0,1]");
    return score;
}

BBox check_box(const std::filesystem::path& path, std::size_t line, const BBox& raw) {
    if (raw.xmin > raw.xmax)
        parse_fail(path, line, "field 'xmin': inverted box (xmin > xmax)");
    if (raw.ymin > raw.ymax)
        parse_fail(path, line, "field 'ymin': inverted box (ymin > ymax)");
    return clipped(raw);
}

void expect_header(const std::filesystem::path& path, std::istream& in, const char* want) {
    std::string line;
    if (!next_line(in, line) || line != want)
        parse_fail(path, 1, std::string("expected header '") + want + "'");
}

}  // namespace

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

DetectionSet read_predictions(const std::filesystem::path& path, std::string_view source_tag) {
    std::ifstream in = open_in(path);
    expect_header(path, in, kPredHeader);
    DetectionSet ds;
    std::string line;
    std::size_t lineno = 1;
    while (next_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 7)
            parse_fail(path, lineno,
                       "expected 7 fields, got " + std::to_string(f.size()));
        if (f[0].empty()) parse_fail(path, lineno, "field 'image_id': empty");
        check_label(path, lineno, f[1]);
        Detection d;
        d.label = f[1];
        d.score = check_score(path, lineno, parse_double(path, lineno, "score", f[2]));
        const BBox raw{parse_double(path, lineno, "xmin", f[3]),
                       parse_double(path, lineno, "ymin", f[4]),
                       parse_double(path, lineno, "xmax", f[5]),
                       parse_double(path, lineno, "ymax", f[6])};
        d.box = check_box(path, lineno, raw);
        d.source = std::string(source_tag);
        ds.add(f[0], std::move(d));
    }
    ds.canonicalize();
    return ds;
}

void write_predictions(const DetectionSet& ds, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << kPredHeader << '\n';
    for (const auto& [id, dets] : ds.by_image)
        for (const Detection& d : dets)
            out << id << ',' << d.label << ',' << fixed6(d.score) << ',' << fixed6(d.box.xmin)
                << ',' << fixed6(d.box.ymin) << ',' << fixed6(d.box.xmax) << ','
                << fixed6(d.box.ymax) << '\n';
    finish_out(out, path);
}

DetectionSet read_predictions_jsonl(const std::filesystem::path& path,
                                    std::string_view source_tag) {
    std::ifstream in = open_in(path);
    DetectionSet ds;
    std::string line;
    std::size_t lineno = 0;
    while (next_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            parse_fail(path, lineno, std::string("invalid JSON: ") + e.what());
        }
        for (const char* key : {"image_id", "label", "score", "xmin", "ymin", "xmax", "ymax"})
            if (!j.contains(key))
                parse_fail(path, lineno, std::string("missing field '") + key + "'");
        if (!j["image_id"].is_string() || !j["label"].is_string())
            parse_fail(path, lineno, "field 'image_id'/'label': expected string");
        for (const char* key : {"score", "xmin", "ymin", "xmax", "ymax"})
            if (!j[key].is_number())
                parse_fail(path, lineno, std::string("field '") + key + "': expected number");
        const std::string image_id = j["image_id"].get<std::string>();
        if (image_id.empty()) parse_fail(path, lineno, "field 'image_id': empty");
        Detection d;
        d.label = j["label"].get<std::string>();
        check_label(path, lineno, d.label);
        d.score = check_score(path, lineno, j["score"].get<double>());
        const BBox raw{j["xmin"].get<double>(), j["ymin"].get<double>(),
                       j["xmax"].get<double>(), j["ymax"].get<double>()};
        if (!std::isfinite(raw.xmin) || !std::isfinite(raw.ymin) || !std::isfinite(raw.xmax) ||
            !std::isfinite(raw.ymax))
            parse_fail(path, lineno, "field 'xmin': non-finite coordinate");
        d.box = check_box(path, lineno, raw);
        d.source = std::string(source_tag);
        ds.add(image_id, std::move(d));
    }
    ds.canonicalize();
    return ds;
}

void write_predictions_jsonl(const DetectionSet& ds, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    for (const auto& [id, dets] : ds.by_image)
        for (const Detection& d : dets) {
            nlohmann::ordered_json j;
            j["image_id"] = id;
            j["label"] = d.label;
            j["score"] = d.score;
            j["xmin"] = d.box.xmin;
            j["ymin"] = d.box.ymin;
            j["xmax"] = d.box.xmax;
            j["ymax"] = d.box.ymax;
            out << j.dump() << '\n';
        }
    finish_out(out, path);
}

DetectionSet read_predictions_any(const std::filesystem::path& path,
                                  std::string_view source_tag) {
    if (path.extension() == ".jsonl") return read_predictions_jsonl(path, source_tag);
    return read_predictions(path, source_tag);
}

void write_predictions_any(const DetectionSet& ds, const std::filesystem::path& path) {
    if (path.extension() == ".jsonl")
        write_predictions_jsonl(ds, path);
    else
        write_predictions(ds, path);
}

GroundTruthSet read_ground_truth(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    expect_header(path, in, kGtHeader);
    GroundTruthSet gt;
    std::string line;
    std::size_t lineno = 1;
    while (next_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 6)
            parse_fail(path, lineno,
                       "expected 6 fields, got " + std::to_string(f.size()));
        if (f[0].empty()) parse_fail(path, lineno, "field 'image_id': empty");
        check_label(path, lineno, f[1]);
        const BBox raw{parse_double(path, lineno, "xmin", f[2]),
                       parse_double(path, lineno, "ymin", f[3]),
                       parse_double(path, lineno, "xmax", f[4]),
                       parse_double(path, lineno, "ymax", f[5])};
        gt.add(f[0], GtBox{check_box(path, lineno, raw), f[1]});
    }
    return gt;
}

void write_ground_truth(const GroundTruthSet& gt, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << kGtHeader << '\n';
    for (const auto& [id, boxes] : gt.by_image)
        for (const GtBox& g : boxes)
            out << id << ',' << g.label << ',' << fixed6(g.box.xmin) << ','
                << fixed6(g.box.ymin) << ',' << fixed6(g.box.xmax) << ','
                << fixed6(g.box.ymax) << '\n';
    finish_out(out, path);
}

void write_submission(const DetectionSet& ds, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << kSubHeader << '\n';
    for (const auto& [id, dets] : ds.by_image) {
        out << id << ',';
        bool first = true;
        for (const Detection& d : dets) {
            if (!first) out << ' ';
            first = false;
            out << d.label << ' ' << fixed6(d.score) << ' ' << fixed6(d.box.xmin) << ' '
                << fixed6(d.box.ymin) << ' ' << fixed6(d.box.xmax) << ' '
                << fixed6(d.box.ymax);
        }
        out << '\n';
    }
    finish_out(out, path);
}

DetectionSet read_submission(const std::filesystem::path& path, std::string_view source_tag) {
    std::ifstream in = open_in(path);
    expect_header(path, in, kSubHeader);
    DetectionSet ds;
    std::string line;
    std::size_t lineno = 1;
    while (next_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            parse_fail(path, lineno, "expected 'ImageId,PredictionString'");
        const std::string image_id = line.substr(0, comma);
        if (image_id.empty()) parse_fail(path, lineno, "field 'ImageId': empty");
        ds.by_image[image_id];  // images with no detections stay present
        std::istringstream rest(line.substr(comma + 1));
        std::vector<std::string> tok;
        std::string t;
        while (rest >> t) tok.push_back(t);
        if (tok.size() % 6 != 0)
            parse_fail(path, lineno, "PredictionString length not a multiple of 6");
        for (std::size_t i = 0; i < tok.size(); i += 6) {
            check_label(path, lineno, tok[i]);
            Detection d;
            d.label = tok[i];
            d.score = check_score(path, lineno, parse_double(path, lineno, "score", tok[i + 1]));
            const BBox raw{parse_double(path, lineno, "xmin", tok[i + 2]),
                           parse_double(path, lineno, "ymin", tok[i + 3]),
                           parse_double(path, lineno, "xmax", tok[i + 4]),
                           parse_double(path, lineno, "ymax", tok[i + 5])};
            d.box = check_box(path, lineno, raw);
            d.source = std::string(source_tag);
            ds.by_image[image_id].push_back(std::move(d));
        }
    }
    ds.canonicalize();
    return ds;
}

}  // namespace boxfuse
