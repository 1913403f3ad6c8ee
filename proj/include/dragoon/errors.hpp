#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dragoon {

// Split used by the CLI to pick an exit code: validation = the input
// (file, flag, parameter) is bad; runtime = the computation cannot proceed.
enum class ErrorKind { validation, runtime };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string type, const std::string& message)
        : std::runtime_error(message), kind_(kind), type_(std::move(type)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& type() const noexcept { return type_; }

private:
    ErrorKind kind_;
    std::string type_;
};

// ---- geo ----

struct InvalidCoordinates : Error {
    explicit InvalidCoordinates(const std::string& msg)
        : Error(ErrorKind::validation, "invalid_coordinates", msg) {}
};

struct OutOfProjectionRange : Error {
    explicit OutOfProjectionRange(const std::string& msg)
        : Error(ErrorKind::validation, "out_of_projection_range", msg) {}
};

struct CoincidentCenters : Error {
    explicit CoincidentCenters(const std::string& msg)
        : Error(ErrorKind::validation, "coincident_centers", msg) {}
};

// ---- topology / ingest ----

struct ParseError : Error {
    explicit ParseError(const std::string& msg, long line = -1)
        : Error(ErrorKind::validation, "parse_error", msg), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

struct MissingCoordinates : Error {
    MissingCoordinates(const std::string& msg, std::vector<std::string> ids)
        : Error(ErrorKind::validation, "missing_coordinates", msg), node_ids_(std::move(ids)) {}
    const std::vector<std::string>& node_ids() const noexcept { return node_ids_; }

private:
    std::vector<std::string> node_ids_;
};

struct EmptyFile : Error {
    explicit EmptyFile(const std::string& msg)
        : Error(ErrorKind::validation, "empty_file", msg) {}
};

// ---- placement ----

struct KTooLarge : Error {
    explicit KTooLarge(const std::string& msg)
        : Error(ErrorKind::validation, "k_too_large", msg) {}
};

// ---- latency model ----

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& msg)
        : Error(ErrorKind::validation, "insufficient_data", msg) {}
};

struct SingularFit : Error {
    explicit SingularFit(const std::string& msg)
        : Error(ErrorKind::runtime, "singular_fit", msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg)
        : Error(ErrorKind::runtime, "domain_error", msg) {}
};

struct AllZeroPredictions : Error {
    explicit AllZeroPredictions(const std::string& msg)
        : Error(ErrorKind::runtime, "all_zero_predictions", msg) {}
};

// ---- lateration ----

struct TooFewConstraints : Error {
    explicit TooFewConstraints(const std::string& msg)
        : Error(ErrorKind::validation, "too_few_constraints", msg) {}
};

struct AllPairsDegenerate : Error {
    explicit AllPairsDegenerate(const std::string& msg)
        : Error(ErrorKind::runtime, "all_pairs_degenerate", msg) {}
};

// ---- estimation ----

struct EmptyCloud : Error {
    explicit EmptyCloud(const std::string& msg)
        : Error(ErrorKind::validation, "empty_cloud", msg) {}
};

struct TooFewPoints : Error {
    explicit TooFewPoints(const std::string& msg)
        : Error(ErrorKind::validation, "too_few_points", msg) {}
};

// ---- simulator ----

struct NoPath : Error {
    explicit NoPath(const std::string& msg)
        : Error(ErrorKind::runtime, "no_path", msg) {}
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& msg)
        : Error(ErrorKind::validation, "invalid_parameter", msg) {}
};

}  // namespace dragoon
