#include "fgc/report.hpp"

#include <cstdio>

namespace fgc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void kv(std::string& out, const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out.push_back('\n');
}

void kv(std::string& out, const std::string& key, double value) {
    kv(out, key, format_double(value));
}

std::string optional_str(const std::optional<double>& v) {
    return v.has_value() ? format_double(*v) : std::string("undefined");
}

} // namespace

std::string render_analyze_report(
    const GcGmcReport& report,
    const std::vector<std::pair<std::string, std::string>>& config_echo) {
    std::string out;
    out += "# gcgmc analysis report\n";
    for (const auto& [key, value] : config_echo) kv(out, key, value);
    kv(out, "x_label", report.x_label);
    kv(out, "y_label", report.y_label);
    kv(out, "test_steps", std::to_string(report.records_y.size()));
    kv(out, "gcgmc_x", optional_str(report.gcgmc_x));
    kv(out, "gcgmc_y", optional_str(report.gcgmc_y));
    kv(out, "sum_ise_auto_x", report.sum_ise_auto_x);
    kv(out, "sum_ise_cross_x", report.sum_ise_cross_x);
    kv(out, "sum_ise_auto_y", report.sum_ise_auto_y);
    kv(out, "sum_ise_cross_y", report.sum_ise_cross_y);
    kv(out, "decision", to_string(report.decision));
    kv(out, "summary", decision_phrase(report));
    return out;
}

std::string render_steps_csv(const GcGmcReport& report) {
    std::string out = "time_index,ise_auto_x,ise_cross_x,bandwidth_auto_x,"
                      "bandwidth_cross_x,ise_auto_y,ise_cross_y,"
                      "bandwidth_auto_y,bandwidth_cross_y\n";
    for (std::size_t i = 0; i < report.records_x.size(); ++i) {
        const ForecastRecord& rx = report.records_x[i];
        const ForecastRecord& ry = report.records_y[i];
        out += std::to_string(rx.time_index);
        for (double v : {rx.ise_auto, rx.ise_cross, rx.bandwidth_auto,
                         rx.bandwidth_cross, ry.ise_auto, ry.ise_cross,
                         ry.bandwidth_auto, ry.bandwidth_cross}) {
            out.push_back(',');
            out += format_double(v);
        }
        out.push_back('\n');
    }
    return out;
}

std::string render_mc_csv(const McResult& result) {
    std::string out = "n,p,count_predictable,count_causal,replications,"
                      "undefined_count\n";
    for (const McCell& c : result) {
        out += std::to_string(c.n) + "," + std::to_string(c.p) + "," +
               std::to_string(c.count_predictable) + "," +
               std::to_string(c.count_causal) + "," +
               std::to_string(c.replications) + "," +
               std::to_string(c.undefined_count) + "\n";
    }
    return out;
}

std::string decision_phrase(const GcGmcReport& report) {
    const std::string& x = report.x_label.empty() ? "X" : report.x_label;
    const std::string& y = report.y_label.empty() ? "Y" : report.y_label;
    switch (report.decision) {
    case Decision::XCausesY:
        return x + " Granger-causes " + y;
    case Decision::YCausesX:
        return y + " Granger-causes " + x;
    case Decision::YMorePredictable:
        return y + " is more predictable than " + x + " (no causal direction)";
    case Decision::XMorePredictable:
        return x + " is more predictable than " + y + " (no causal direction)";
    case Decision::Indeterminate:
        return "indeterminate: no direction can be ranked";
    }
    return "indeterminate";
}

} // namespace fgc
