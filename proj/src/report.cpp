#include "cocycle/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace cocycle {

bool Report::passed() const {
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

void Report::add_row(std::vector<Scalar> row) {
    if (row.size() != columns.size())
        throw DomainError("row has " + std::to_string(row.size()) + " cells, report has " +
                          std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

void Report::check(std::string name, bool ok, std::string detail) {
    checks.push_back(Check{std::move(name), ok, std::move(detail)});
}

ReportFormat parse_format(const std::string& name) {
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "json")
        return ReportFormat::json;
    throw ParseError("unknown format \"" + name + "\" (expected csv or json)");
}

std::string render_csv(const Report& r) {
    std::ostringstream out;
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "," : "") << r.columns[i];
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i].to_string();
        out << '\n';
    }
    return out.str();
}

Json report_to_json(const Report& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json cells = Json::array();
        for (const auto& c : row) {
            Json q = c.is_exact() ? Json(to_string(c.exact())) : Json(nullptr);
            cells.push_back({{"q", q}, {"d", c.to_double()}});
        }
        rows.push_back(cells);
    }
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"id", r.id}, {"seed", r.seed}, {"columns", r.columns}, {"rows", rows}, {"checks", checks}};
}

Report report_from_json(const Json& j) {
    try {
        Report r;
        r.id = j.at("id").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& row : j.at("rows")) {
            std::vector<Scalar> cells;
            for (const auto& c : row) {
                if (c.at("q").is_null())
                    cells.emplace_back(c.at("d").get<double>());
                else
                    cells.emplace_back(parse_rational(c.at("q").get<std::string>()));
            }
            r.add_row(std::move(cells));
        }
        for (const auto& c : j.at("checks"))
            r.check(c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>());
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

void emit(const Report& r, ReportFormat format, const std::string& path) {
    std::string text = format == ReportFormat::csv ? render_csv(r) : report_to_json(r).dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open " + path + " for writing");
    f << text;
    if (!f)
        throw Error("write to " + path + " failed");
}

} // namespace cocycle
