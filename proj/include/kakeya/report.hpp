#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kakeya {

inline constexpr const char* kEngineVersion = "1.0.0";

struct Assertion {
    std::string kind;
    bool pass = false;
};

struct Measurement {
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

// One report entry. Assertions decide the exit code; measurements are
// recorded ratios that never fail a run.
struct ResultRow {
    std::string op;
    int q = 0;
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json outputs;
    std::optional<Assertion> assertion;
    std::optional<Measurement> measurement;
};

class Report {
public:
    Report() = default;
    explicit Report(nlohmann::ordered_json config) : config_(std::move(config)) {}

    void add(ResultRow row) { rows_.push_back(std::move(row)); }
    void check(std::string op, int q, std::string kind, bool pass,
               nlohmann::ordered_json inputs = {}, nlohmann::ordered_json outputs = {});
    void measure(std::string op, int q, double value, double bound,
                 nlohmann::ordered_json inputs = {}, nlohmann::ordered_json outputs = {});
    // assertion with an attached (value, bound) measurement
    void check_measure(std::string op, int q, std::string kind, bool pass, double value,
                       double bound, nlohmann::ordered_json inputs = {},
                       nlohmann::ordered_json outputs = {});
    void merge(const Report& other);

    const std::vector<ResultRow>& rows() const { return rows_; }
    const nlohmann::ordered_json& config() const { return config_; }
    long asserted() const;
    long passed() const;
    bool all_passed() const { return asserted() == passed(); }

    nlohmann::ordered_json to_json(bool with_timestamp = true) const;
    std::string to_csv(const std::string& experiment) const;

private:
    nlohmann::ordered_json config_;
    std::vector<ResultRow> rows_;
};

} // namespace kakeya
