#include "wmb/leaderboard.hpp"

#include <algorithm>

#include "wmb/json_writer.hpp"

namespace wmb {

std::vector<LeaderboardRow> aggregate(const std::map<std::string, std::vector<MetricReport>>& reports)
{
    if (reports.empty()) {
        throw Error("no reports to aggregate");
    }
    std::vector<LeaderboardRow> rows;
    rows.reserve(reports.size());
    for (const auto& [model, runs] : reports) {
        LeaderboardRow row;
        row.model = model;
        for (std::size_t m = 0; m < kLeaderboardMetrics.size(); ++m) {
            const std::string name(kLeaderboardMetrics[m]);
            double sum = 0.0;
            std::size_t n = 0;
            for (const auto& r : runs) {
                if (const auto it = r.scores.find(name); it != r.scores.end()) {
                    sum += it->second;
                    ++n;
                }
            }
            if (n == 0) {
                throw Error("model '" + model + "' has no " + name + " score");
            }
            row.means[m] = sum / static_cast<double>(n);
        }
        double total = 0.0;
        for (double v : row.means) {
            total += v;
        }
        row.avg = total / static_cast<double>(row.means.size());
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        if (a.avg != b.avg) {
            return a.avg > b.avg;
        }
        return a.model < b.model;
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rank = static_cast<int>(i + 1);
    }
    return rows;
}

std::map<std::string, std::vector<MetricReport>> group_by_model(const std::vector<RunResult>& results)
{
    std::map<std::string, std::vector<MetricReport>> out;
    for (const auto& r : results) {
        if (r.report) {
            out[r.model.empty() ? std::string("unnamed") : r.model].push_back(*r.report);
        }
    }
    return out;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

}  // namespace

std::string emit_report(const std::vector<LeaderboardRow>& rows, std::string_view format)
{
    if (format != "json" && format != "csv") {
        throw UsageError("unknown report format '" + std::string(format) + "' (expected json or csv)");
    }
    if (rows.empty()) {
        throw Error("no leaderboard rows to emit");
    }
    if (format == "csv") {
        std::string out = "Model";
        for (auto col : kLeaderboardColumns) {
            out += ',';
            out += col;
        }
        out += ",Avg\n";
        for (const auto& row : rows) {
            out += csv_field(row.model);
            for (double v : row.means) {
                out += ',' + format_fixed(v, 4);
            }
            out += ',' + format_fixed(row.avg, 4) + '\n';
        }
        return out;
    }
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["rank"] = row.rank;
        j["model"] = row.model;
        for (std::size_t m = 0; m < kLeaderboardMetrics.size(); ++m) {
            j[std::string(kLeaderboardMetrics[m])] = row.means[m];
        }
        j["avg"] = row.avg;
        list.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["leaderboard"] = list;
    return write_fixed_json(doc, 4);
}

}  // namespace wmb
