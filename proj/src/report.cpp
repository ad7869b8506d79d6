#include "kakeya/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace kakeya {

namespace {

Measurement make_measurement(double value, double bound) {
    Measurement m;
    m.value = value;
    m.bound = bound;
    m.ratio = bound != 0.0 ? value / bound : std::numeric_limits<double>::quiet_NaN();
    return m;
}

nlohmann::ordered_json num_or_null(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

} // namespace

void Report::check(std::string op, int q, std::string kind, bool pass,
                   nlohmann::ordered_json inputs, nlohmann::ordered_json outputs) {
    ResultRow r;
    r.op = std::move(op);
    r.q = q;
    r.inputs = std::move(inputs);
    r.outputs = std::move(outputs);
    r.assertion = Assertion{std::move(kind), pass};
    rows_.push_back(std::move(r));
}

void Report::measure(std::string op, int q, double value, double bound,
                     nlohmann::ordered_json inputs, nlohmann::ordered_json outputs) {
    ResultRow r;
    r.op = std::move(op);
    r.q = q;
    r.inputs = std::move(inputs);
    r.outputs = std::move(outputs);
    r.measurement = make_measurement(value, bound);
    rows_.push_back(std::move(r));
}

void Report::check_measure(std::string op, int q, std::string kind, bool pass, double value,
                           double bound, nlohmann::ordered_json inputs,
                           nlohmann::ordered_json outputs) {
    ResultRow r;
    r.op = std::move(op);
    r.q = q;
    r.inputs = std::move(inputs);
    r.outputs = std::move(outputs);
    r.assertion = Assertion{std::move(kind), pass};
    r.measurement = make_measurement(value, bound);
    rows_.push_back(std::move(r));
}

void Report::merge(const Report& other) {
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

long Report::asserted() const {
    long n = 0;
    for (const auto& r : rows_) n += r.assertion.has_value();
    return n;
}

long Report::passed() const {
    long n = 0;
    for (const auto& r : rows_) n += r.assertion && r.assertion->pass;
    return n;
}

nlohmann::ordered_json Report::to_json(bool with_timestamp) const {
    nlohmann::ordered_json j;
    j["config"] = config_;
    j["version"] = kEngineVersion;
    if (with_timestamp) {
        auto now = std::chrono::system_clock::now();
        j["timestamp"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             now.time_since_epoch())
                             .count();
    }
    auto results = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
        nlohmann::ordered_json row;
        row["op"] = r.op;
        row["q"] = r.q;
        row["inputs"] = r.inputs;
        row["outputs"] = r.outputs;
        if (r.assertion) {
            row["assertion"] = {{"kind", r.assertion->kind}, {"pass", r.assertion->pass}};
        } else {
            row["assertion"] = nullptr;
        }
        if (r.measurement) {
            row["measurement"] = {{"value", r.measurement->value},
                                  {"bound", r.measurement->bound},
                                  {"ratio", num_or_null(r.measurement->ratio)}};
        } else {
            row["measurement"] = nullptr;
        }
        results.push_back(std::move(row));
    }
    j["results"] = std::move(results);
    j["summary"] = {{"asserted", asserted()}, {"passed", passed()}};
    return j;
}

std::string Report::to_csv(const std::string& experiment) const {
    std::ostringstream out;
    out << "experiment,q,metric,value,bound,ratio,pass\n";
    for (const auto& r : rows_) {
        out << experiment << ',' << r.q << ',' << r.op << ',';
        if (r.measurement) {
            out << r.measurement->value << ',' << r.measurement->bound << ',';
            if (std::isnan(r.measurement->ratio))
                out << ',';
            else
                out << r.measurement->ratio << ',';
        } else {
            out << ",,,";
        }
        if (r.assertion) out << (r.assertion->pass ? 1 : 0);
        out << '\n';
    }
    return out.str();
}

} // namespace kakeya
