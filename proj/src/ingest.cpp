#include "dragoon/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dragoon {

namespace {

struct CsvReader {
    explicit CsvReader(const std::string& path) : in(path), path(path) {
        if (!in) throw ParseError("cannot open '" + path + "'");
    }

    // Returns false at EOF; skips blank lines.
    bool next_row(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            fields.clear();
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ',')) fields.push_back(field);
            if (!line.empty() && line.back() == ',') fields.push_back("");
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(path + ":" + std::to_string(line_no) + ": " + msg, line_no);
    }

    std::ifstream in;
    std::string path;
    long line_no = 0;
};

double parse_double(CsvReader& reader, const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(value)) reader.fail("bad " + what + " '" + text + "'");
        return value;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        reader.fail("bad " + what + " '" + text + "'");
    }
}

void expect_header(CsvReader& reader, const std::vector<std::string>& expected) {
    std::vector<std::string> fields;
    if (!reader.next_row(fields)) throw EmptyFile("'" + reader.path + "' is empty");
    if (fields != expected) {
        std::string want;
        for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
        reader.fail("expected header '" + want + "'");
    }
}

std::vector<MeasurementSample> parse_measurements_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("measurements JSON: ") + e.what());
    }
    try {
        if (doc.value("schema", "") != "measurements/1") {
            throw ParseError("measurements JSON: expected schema 'measurements/1'");
        }
        std::vector<MeasurementSample> samples;
        for (const auto& js : doc.at("samples")) {
            MeasurementSample s;
            s.src = js.at("src").get<std::string>();
            s.dst = js.at("dst").get<std::string>();
            s.hop_count = js.at("hops").get<int>();
            if (s.hop_count < 0) {
                throw ParseError("measurements JSON: negative hop count for " + s.src + "->" +
                                 s.dst);
            }
            for (const auto& rtt : js.at("rtts")) {
                const double value = rtt.get<double>();
                if (!(value > 0.0) || !std::isfinite(value)) {
                    throw ParseError("measurements JSON: non-positive RTT for " + s.src + "->" +
                                     s.dst);
                }
                s.rtts_ms.push_back(value);
            }
            if (s.rtts_ms.empty()) {
                throw ParseError("measurements JSON: sample without RTTs for " + s.src + "->" +
                                 s.dst);
            }
            samples.push_back(std::move(s));
        }
        if (samples.empty()) throw EmptyFile("'" + path + "' contains no samples");
        return samples;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("measurements JSON: ") + e.what());
    }
}

std::vector<MeasurementSample> parse_measurements_csv(const std::string& path) {
    CsvReader reader(path);
    expect_header(reader, {"src", "dst", "rtt_ms", "hops"});
    std::vector<MeasurementSample> samples;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
        if (fields.size() != 4) reader.fail("expected 4 fields");
        const double rtt = parse_double(reader, fields[2], "rtt_ms");
        if (!(rtt > 0.0)) reader.fail("RTT must be positive, got '" + fields[2] + "'");
        const double hops_raw = parse_double(reader, fields[3], "hops");
        const int hops = static_cast<int>(hops_raw);
        if (hops < 0 || hops != hops_raw) reader.fail("hops must be a non-negative integer");
        const auto key = std::make_pair(fields[0], fields[1]);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, samples.size());
            samples.push_back(MeasurementSample{fields[0], fields[1], {rtt}, hops});
        } else {
            MeasurementSample& s = samples[it->second];
            s.rtts_ms.push_back(rtt);
            s.hop_count = std::min(s.hop_count, hops);
        }
    }
    if (samples.empty()) throw EmptyFile("'" + path + "' contains no samples");
    return samples;
}

}  // namespace

double min_rtt(const MeasurementSample& s) {
    if (s.rtts_ms.empty()) throw InvalidParameter("sample has no RTTs");
    return *std::min_element(s.rtts_ms.begin(), s.rtts_ms.end());
}

std::vector<MeasurementSample> parse_measurements(const std::string& path,
                                                  MeasurementFormat format) {
    return format == MeasurementFormat::json ? parse_measurements_json(path)
                                             : parse_measurements_csv(path);
}

void save_measurements_json(const std::vector<MeasurementSample>& samples, const std::string& path,
                            bool with_timestamp) {
    nlohmann::ordered_json doc;
    doc["schema"] = "measurements/1";
    if (with_timestamp) {
        doc["generated_at"] = static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    }
    doc["samples"] = nlohmann::ordered_json::array();
    for (const auto& s : samples) {
        doc["samples"].push_back(
            {{"src", s.src}, {"dst", s.dst}, {"rtts", s.rtts_ms}, {"hops", s.hop_count}});
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::runtime, "io_error", "cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

void save_measurements_csv(const std::vector<MeasurementSample>& samples,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::runtime, "io_error", "cannot write '" + path + "'");
    out << "src,dst,rtt_ms,hops\n";
    out.precision(17);
    for (const auto& s : samples) {
        for (double rtt : s.rtts_ms) {
            out << s.src << "," << s.dst << "," << rtt << "," << s.hop_count << "\n";
        }
    }
}

void RoadDistanceMatrix::set(const std::string& a, const std::string& b, double km) {
    if (km < 0.0) throw InvalidParameter("road distance must be non-negative");
    km_[a <= b ? std::make_pair(a, b) : std::make_pair(b, a)] = km;
}

std::optional<double> RoadDistanceMatrix::lookup(const std::string& a,
                                                 const std::string& b) const {
    const auto it = km_.find(a <= b ? std::make_pair(a, b) : std::make_pair(b, a));
    if (it == km_.end()) return std::nullopt;
    return it->second;
}

RoadDistanceMatrix parse_road_matrix(const std::string& path,
                                     std::vector<std::string>* warnings) {
    CsvReader reader(path);
    expect_header(reader, {"id_a", "id_b", "km"});
    std::map<std::pair<std::string, std::string>, double> forward;
    std::vector<std::string> fields;
    RoadDistanceMatrix matrix;
    while (reader.next_row(fields)) {
        if (fields.size() != 3) reader.fail("expected 3 fields");
        const double km = parse_double(reader, fields[2], "km");
        if (km < 0.0) reader.fail("distance must be non-negative");
        forward[{fields[0], fields[1]}] = km;
    }
    if (forward.empty()) throw EmptyFile("'" + path + "' contains no entries");
    std::set<std::pair<std::string, std::string>> done;
    for (const auto& [key, km] : forward) {
        auto canonical = key.first <= key.second ? key : std::make_pair(key.second, key.first);
        if (!done.insert(canonical).second) continue;
        const auto reverse = forward.find({key.second, key.first});
        double value = km;
        if (reverse != forward.end() && key.first != key.second) {
            const double other = reverse->second;
            value = (km + other) / 2.0;
            const double scale = std::max({km, other, 1e-12});
            if (std::abs(km - other) / scale > 0.01 && warnings) {
                warnings->push_back("asymmetric road distance " + key.first + " -- " + key.second +
                                    " (" + std::to_string(km) + " vs " + std::to_string(other) +
                                    "), using the average");
            }
        }
        matrix.set(canonical.first, canonical.second, value);
    }
    return matrix;
}

std::vector<std::string> road_matrix_below_orthodromic(
    const RoadDistanceMatrix& matrix,
    const std::vector<std::pair<std::string, GeoPoint>>& coordinates) {
    std::map<std::string, GeoPoint> coords(coordinates.begin(), coordinates.end());
    std::vector<std::string> violations;
    for (const auto& [key, km] : matrix.entries()) {
        const auto a = coords.find(key.first);
        const auto b = coords.find(key.second);
        if (a == coords.end() || b == coords.end()) continue;
        const double ortho = orthodromic_distance(a->second, b->second);
        if (km < ortho) {
            violations.push_back(key.first + " -- " + key.second + ": road " +
                                 std::to_string(km) + " km < orthodromic " +
                                 std::to_string(ortho) + " km");
        }
    }
    return violations;
}

GroundTruth parse_truth(const std::string& path) {
    CsvReader reader(path);
    expect_header(reader, {"target", "lat", "lon"});
    GroundTruth truth;
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
        if (fields.size() != 3) reader.fail("expected 3 fields");
        const double lat = parse_double(reader, fields[1], "lat");
        const double lon = parse_double(reader, fields[2], "lon");
        try {
            truth[fields[0]] = GeoPoint(lat, lon);
        } catch (const InvalidCoordinates& e) {
            reader.fail(e.what());
        }
    }
    if (truth.empty()) throw EmptyFile("'" + path + "' contains no entries");
    return truth;
}

}  // namespace dragoon
