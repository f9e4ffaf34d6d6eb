#ifndef SPLAYLIST_BENCH_RESULTS_HPP
#define SPLAYLIST_BENCH_RESULTS_HPP

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splaylist/bench/runner.hpp"

namespace splaylist::bench {

inline constexpr const char* kCsvHeader = "structure,p,threads,workload,seed,ops_per_sec,mean_path_len";

inline void write_csv(std::ostream& out, const std::vector<RunResult>& runs, bool header = true) {
    if (header) out << kCsvHeader << '\n';
    for (const auto& r : runs) {
        out << to_string(r.config.structure) << ',' << r.config.p << ',' << r.config.threads << ',' << r.workload << ','
            << r.config.seed << ',' << std::fixed << std::setprecision(1) << r.ops_per_sec << ','
            << std::setprecision(4) << r.mean_path_len << '\n';
        out.unsetf(std::ios::floatfield);
    }
}

inline nlohmann::json to_json(const RunResult& r) {
    nlohmann::json heights = nlohmann::json::array();
    for (const auto& h : r.heights) heights.push_back({{"key", h.key}, {"ops", h.ops}, {"height", h.height}});
    return {
        {"structure", to_string(r.config.structure)},
        {"p", r.config.p},
        {"threads", r.config.threads},
        {"workload", r.workload},
        {"seed", r.config.seed},
        {"duration", r.config.duration},
        {"ops_limit", r.config.ops},
        {"total_ops", r.total_ops},
        {"seconds", r.seconds},
        {"ops_per_sec", r.ops_per_sec},
        {"mean_path_len", r.mean_path_len},
        {"mean_rebalance_len", r.mean_rebalance_len},
        {"per_thread_ops", r.per_thread_ops},
        {"height_popularity", heights},
    };
}

inline nlohmann::json to_json(const std::vector<RunResult>& runs, const std::string& build) {
    nlohmann::json doc;
    doc["build"] = build;
    doc["runs"] = nlohmann::json::array();
    for (const auto& r : runs) doc["runs"].push_back(to_json(r));
    return doc;
}

/// Structural check of a document produced by to_json; returns an empty
/// string when it conforms.
inline std::string check_json_schema(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array()) return "missing runs array";
    if (!doc.contains("build") || !doc["build"].is_string()) return "missing build string";
    const std::vector<std::pair<const char*, nlohmann::json::value_t>> fields = {
        {"structure", nlohmann::json::value_t::string},
        {"workload", nlohmann::json::value_t::string},
        {"threads", nlohmann::json::value_t::number_integer},
        {"seed", nlohmann::json::value_t::number_unsigned},
        {"total_ops", nlohmann::json::value_t::number_unsigned},
        {"ops_per_sec", nlohmann::json::value_t::number_float},
        {"mean_path_len", nlohmann::json::value_t::number_float},
        {"per_thread_ops", nlohmann::json::value_t::array},
        {"height_popularity", nlohmann::json::value_t::array},
    };
    for (const auto& run : doc["runs"]) {
        for (const auto& [name, type] : fields) {
            if (!run.contains(name)) return std::string("run lacks ") + name;
            const auto t = run[name].type();
            const bool numeric_ok = type == nlohmann::json::value_t::number_float && run[name].is_number();
            const bool integer_ok = (type == nlohmann::json::value_t::number_integer ||
                                     type == nlohmann::json::value_t::number_unsigned) &&
                                    run[name].is_number_integer();
            if (t != type && !numeric_ok && !integer_ok) return std::string("run field ") + name + " has the wrong type";
        }
        for (const auto& point : run["height_popularity"]) {
            if (!point.contains("key") || !point.contains("ops") || !point.contains("height")) {
                return "height_popularity entry lacks key/ops/height";
            }
        }
    }
    return {};
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> order(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i;
            while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    if (x.size() != y.size() || x.size() < 2) return 0.0;
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

inline double popularity_height_correlation(const RunResult& r) {
    std::vector<double> pop;
    std::vector<double> height;
    for (const auto& h : r.heights) {
        pop.push_back(std::log(static_cast<double>(h.ops)));
        height.push_back(h.height);
    }
    return spearman(pop, height);
}

inline void write_summary(std::ostream& out, const std::vector<RunResult>& runs) {
    out << std::left << std::setw(10) << "structure" << std::setw(8) << "p" << std::setw(8) << "threads"
        << std::setw(22) << "workload" << std::setw(8) << "seed" << std::right << std::setw(14) << "ops/sec"
        << std::setw(10) << "path" << '\n';
    for (const auto& r : runs) {
        out << std::left << std::setw(10) << to_string(r.config.structure) << std::setw(8) << r.config.p
            << std::setw(8) << r.config.threads << std::setw(22) << r.workload << std::setw(8) << r.config.seed
            << std::right << std::fixed << std::setprecision(0) << std::setw(14) << r.ops_per_sec
            << std::setprecision(2) << std::setw(10) << r.mean_path_len << '\n';
        out.unsetf(std::ios::floatfield);
    }
}

}  // namespace splaylist::bench

#endif  // SPLAYLIST_BENCH_RESULTS_HPP
