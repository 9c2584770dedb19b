#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cocycle/serialize.hpp"

namespace cocycle {

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;

    friend bool operator==(const Check&, const Check&) = default;
};

// A table of exact values plus named pass/fail checks.
struct Report {
    std::string id;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<Scalar>> rows;
    std::vector<Check> checks;

    bool passed() const;
    void add_row(std::vector<Scalar> row);
    void check(std::string name, bool ok, std::string detail = {});

    friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { csv, json };

ReportFormat parse_format(const std::string& name);

// Header line, then one line per row; exact cells as fractions.
std::string render_csv(const Report& r);
// {"id","seed","columns","rows":[[{"q":"1/8","d":0.125},...]],"checks":[...]};
// inexact cells carry "q": null
Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

// Writes to `path`, or to stdout when the path is empty or "-".
void emit(const Report& r, ReportFormat format, const std::string& path);

} // namespace cocycle
