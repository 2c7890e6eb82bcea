#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qalg {

enum class Status { pass, fail, reported };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass:
            return "pass";
        case Status::fail:
            return "fail";
        case Status::reported:
            return "reported";
    }
    return "?";
}

struct Residual {
    std::string location;
    std::string value;  // canonical text of a Scalar or NCPoly
};

/// Outcome of one verification. For pass/fail checks the residual list
/// holds only the nonzero residuals, so pass means the list is empty.
struct IdentityReport {
    std::string check_id;
    std::string anchor;  // the identity being checked, in words
    Status status = Status::pass;
    std::vector<Residual> residuals;
    long runtime_ms = 0;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();

    IdentityReport() = default;
    IdentityReport(std::string id, std::string what) : check_id(std::move(id)), anchor(std::move(what)) {}

    bool passed() const { return status == Status::pass; }

    /// Record a nonzero residual (marks the report failed).
    void fail_at(std::string location, std::string value) {
        residuals.push_back({std::move(location), std::move(value)});
        if (status != Status::reported) status = Status::fail;
    }

    /// Reports that assert nothing keep their data in residuals.
    void note(std::string location, std::string value) {
        status = Status::reported;
        residuals.push_back({std::move(location), std::move(value)});
    }

    nlohmann::ordered_json to_json(bool with_timing = false) const {
        nlohmann::ordered_json j;
        j["check_id"] = check_id;
        j["anchor"] = anchor;
        j["status"] = status_name(status);
        auto rs = nlohmann::ordered_json::array();
        for (const auto& r : residuals) rs.push_back({{"location", r.location}, {"value", r.value}});
        j["residuals"] = std::move(rs);
        j["runtime_ms"] = with_timing ? runtime_ms : 0;
        if (!data.empty()) j["data"] = data;
        return j;
    }
};

/// Fills runtime_ms of a report on scope exit.
class ReportTimer {
public:
    explicit ReportTimer(IdentityReport& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
    ~ReportTimer() {
        r_.runtime_ms = static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count());
    }
    ReportTimer(const ReportTimer&) = delete;
    ReportTimer& operator=(const ReportTimer&) = delete;

private:
    IdentityReport& r_;
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace qalg
