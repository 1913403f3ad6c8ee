#include "dragoon/latency_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace dragoon {

namespace {

constexpr double kParameterFloor = 1e-9;  // keeps p, q, n strictly positive
constexpr int kMaxIterations = 500;
constexpr double kRelativeSseTolerance = 1e-9;

double raw_prediction(double p, double q, double n, double m, double latency) {
    return p * std::log(q * latency + n) + m;
}

double sse_of(const std::vector<CalibrationPair>& pairs, double p, double q, double n, double m) {
    double sse = 0.0;
    for (const auto& pair : pairs) {
        const double r = raw_prediction(p, q, n, m, pair.latency_ms) - pair.distance_km;
        sse += r * r;
    }
    return sse;
}

}  // namespace

std::string to_string(DistanceMode mode) {
    return mode == DistanceMode::orthodromic ? "orthodromic" : "road-matrix";
}

DistanceMode distance_mode_from_string(const std::string& s) {
    if (s == "orthodromic") return DistanceMode::orthodromic;
    if (s == "road-matrix") return DistanceMode::road_matrix;
    throw InvalidParameter("unknown distance mode '" + s + "'");
}

double effective_latency(double rtt_min_ms, int hop_count, double per_hop_delay_ms) {
    if (rtt_min_ms < 0.0) throw InvalidParameter("RTT must be non-negative");
    if (hop_count < 0) throw InvalidParameter("hop count must be non-negative");
    return std::max(0.0, rtt_min_ms / 2.0 - hop_count * per_hop_delay_ms);
}

double predict_distance(const LatencyDistanceCurve& c, double latency_ms) {
    const double arg = c.q * latency_ms + c.n;
    if (arg <= 0.0) {
        throw DomainError("q * latency + n = " + std::to_string(arg) + " <= 0");
    }
    return c.lc * std::max(0.0, c.p * std::log(arg) + c.m);
}

FitReport fit_curve(const std::vector<CalibrationPair>& pairs) {
    if (pairs.size() < 4) {
        throw InsufficientData("curve fit needs >= 4 calibration pairs, got " +
                               std::to_string(pairs.size()));
    }
    std::set<double> distinct;
    double latency_max = 0.0, distance_max = 0.0;
    for (const auto& pair : pairs) {
        if (pair.latency_ms < 0.0 || pair.distance_km < 0.0) {
            throw InvalidParameter("calibration pairs must have non-negative latency and distance");
        }
        distinct.insert(pair.latency_ms);
        latency_max = std::max(latency_max, pair.latency_ms);
        distance_max = std::max(distance_max, pair.distance_km);
    }
    if (distinct.size() < 3) {
        throw InsufficientData("curve fit needs >= 3 distinct latencies, got " +
                               std::to_string(distinct.size()));
    }
    if (distance_max <= 0.0) {
        throw SingularFit("all calibration distances are zero");
    }

    // Documented initialization: origin-ish curve with the right scale.
    double q = 1.0, n = 1.0, m = 0.0;
    double p = distance_max / std::log(1.0 + std::max(latency_max, kParameterFloor));
    p = std::max(p, kParameterFloor);

    double sse = sse_of(pairs, p, q, n, m);
    FitReport report;
    report.sse_history.push_back(sse);

    const auto n_points = static_cast<int>(pairs.size());
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        // Block 1: (p, m). The model is linear in both, so the least-squares
        // solution is exact; damping only guards the p > 0 constraint.
        {
            double su = 0.0, sd = 0.0;
            std::vector<double> u(pairs.size());
            for (size_t i = 0; i < pairs.size(); ++i) {
                u[i] = std::log(q * pairs[i].latency_ms + n);
                su += u[i];
                sd += pairs[i].distance_km;
            }
            const double u_mean = su / n_points, d_mean = sd / n_points;
            double var_u = 0.0, cov_ud = 0.0;
            for (size_t i = 0; i < pairs.size(); ++i) {
                var_u += (u[i] - u_mean) * (u[i] - u_mean);
                cov_ud += (u[i] - u_mean) * (pairs[i].distance_km - d_mean);
            }
            if (var_u < 1e-30) {
                throw SingularFit("log-latency values are degenerate");
            }
            const double p_ls = cov_ud / var_u;
            const double m_ls = d_mean - p_ls * u_mean;
            double alpha = 1.0;
            for (int back = 0; back < 60; ++back) {
                const double p_cand = p + alpha * (p_ls - p);
                const double m_cand = m + alpha * (m_ls - m);
                if (p_cand > kParameterFloor) {
                    const double cand_sse = sse_of(pairs, p_cand, q, n, m_cand);
                    if (cand_sse <= sse) {
                        p = p_cand;
                        m = m_cand;
                        sse = cand_sse;
                        break;
                    }
                }
                alpha *= 0.5;
            }
        }

        // Block 2: (q, n) Gauss-Newton step with backtracking; a step is
        // accepted only if it stays feasible (q, n > 0) and lowers the SSE.
        {
            Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
            Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
            for (const auto& pair : pairs) {
                const double arg = q * pair.latency_ms + n;
                const double r = p * std::log(arg) + m - pair.distance_km;
                const Eigen::Vector2d jac(p * pair.latency_ms / arg, p / arg);
                jtj += jac * jac.transpose();
                jtr += jac * r;
            }
            jtj += 1e-12 * jtj.trace() * Eigen::Matrix2d::Identity();
            const Eigen::Vector2d delta = jtj.ldlt().solve(-jtr);
            if (delta.allFinite()) {
                double alpha = 1.0;
                for (int back = 0; back < 60; ++back) {
                    const double q_cand = q + alpha * delta(0);
                    const double n_cand = n + alpha * delta(1);
                    if (q_cand > kParameterFloor && n_cand > kParameterFloor) {
                        const double cand_sse = sse_of(pairs, p, q_cand, n_cand, m);
                        if (cand_sse <= sse) {
                            q = q_cand;
                            n = n_cand;
                            sse = cand_sse;
                            break;
                        }
                    }
                    alpha *= 0.5;
                }
            }
        }

        ++report.iterations;
        const double previous = report.sse_history.back();
        report.sse_history.push_back(sse);
        if (previous - sse <= kRelativeSseTolerance * std::max(previous, 1e-30)) break;
    }

    LatencyDistanceCurve curve;
    curve.p = p;
    curve.q = q;
    curve.n = n;
    curve.m = m;
    curve.lc = 1.0;
    curve.latency_max = latency_max;
    curve.sse = sse;
    curve.n_points = n_points;
    return FitReport{curve, report.iterations, std::move(report.sse_history)};
}

double calibrate_lc(const LatencyDistanceCurve& c, const std::vector<CalibrationPair>& holdout) {
    if (holdout.empty()) throw InsufficientData("LC calibration needs a non-empty holdout");
    LatencyDistanceCurve unit = c;
    unit.lc = 1.0;
    double num = 0.0, den = 0.0;
    for (const auto& pair : holdout) {
        const double pred = predict_distance(unit, pair.latency_ms);
        num += pred * pair.distance_km;
        den += pred * pred;
    }
    if (den <= 0.0) {
        throw AllZeroPredictions("curve predicts zero distance on the whole holdout");
    }
    return std::clamp(num / den, 1e-6, 2.0);
}

void save_curve_json(const LatencyDistanceCurve& c, const std::string& path, bool with_timestamp) {
    nlohmann::ordered_json doc;
    doc["schema"] = "curve/1";
    if (with_timestamp) {
        doc["generated_at"] = static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    }
    doc["p"] = c.p;
    doc["q"] = c.q;
    doc["n"] = c.n;
    doc["m"] = c.m;
    doc["lc"] = c.lc;
    doc["distance_mode"] = to_string(c.distance_mode);
    doc["latency_max"] = c.latency_max;
    doc["sse"] = c.sse;
    doc["n_points"] = c.n_points;
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::runtime, "io_error", "cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

LatencyDistanceCurve load_curve_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("curve JSON: ") + e.what());
    }
    try {
        if (doc.value("schema", "") != "curve/1") {
            throw ParseError("curve JSON: expected schema 'curve/1'");
        }
        LatencyDistanceCurve c;
        c.p = doc.at("p").get<double>();
        c.q = doc.at("q").get<double>();
        c.n = doc.at("n").get<double>();
        c.m = doc.at("m").get<double>();
        c.lc = doc.at("lc").get<double>();
        c.distance_mode = distance_mode_from_string(doc.at("distance_mode").get<std::string>());
        c.latency_max = doc.at("latency_max").get<double>();
        c.sse = doc.value("sse", 0.0);
        c.n_points = doc.value("n_points", 0);
        if (c.lc <= 0.0 || c.lc > 2.0) {
            throw ParseError("curve JSON: lc must lie in (0, 2]");
        }
        if (c.n <= 0.0 || c.q * c.latency_max + c.n <= 0.0) {
            throw ParseError("curve JSON: q * latency + n must stay positive on [0, latency_max]");
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("curve JSON: ") + e.what());
    }
}

}  // namespace dragoon
