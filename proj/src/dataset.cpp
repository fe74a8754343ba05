// Copyright 2026 The kqfi Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <charconv>
#include <cmath>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "kqfi/cli.hpp"
#include "kqfi/error.hpp"

namespace kqfi::cli {

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string render(const RecordValue &v) {
    if (const auto *i = std::get_if<std::int64_t>(&v)) {
        return std::to_string(*i);
    }
    if (const auto *d = std::get_if<double>(&v)) {
        return format_number(*d);
    }
    return std::get<std::string>(v);
}

void check_columns(const ScanRecords &records) {
    if (records.empty()) {
        return;
    }
    const auto &first = records.front().fields();
    for (const ScanRecord &r : records) {
        const auto &f = r.fields();
        bool same = f.size() == first.size();
        for (std::size_t i = 0; same && i < f.size(); ++i) {
            same = f[i].first == first[i].first;
        }
        KQFI_REQUIRE(same, InvalidArgument,
                     "records do not share one column layout");
    }
}

} // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream &out, const Dataset &data) {
    check_columns(data.records);
    for (const auto &[key, value] : data.metadata) {
        out << "# " << key << " = " << value << '\n';
    }
    if (data.records.empty()) {
        return;
    }
    const auto &cols = data.records.front().fields();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << csv_field(cols[i].first);
    }
    out << '\n';
    for (const ScanRecord &r : data.records) {
        const auto &f = r.fields();
        for (std::size_t i = 0; i < f.size(); ++i) {
            out << (i ? "," : "") << csv_field(render(f[i].second));
        }
        out << '\n';
    }
}

void write_json(std::ostream &out, const Dataset &data) {
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto &[key, value] : data.metadata) {
        doc["metadata"][key] = value;
    }
    doc["records"] = nlohmann::ordered_json::array();
    for (const ScanRecord &r : data.records) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (const auto &[key, value] : r.fields()) {
            std::visit([&](const auto &x) { row[key] = x; }, value);
        }
        doc["records"].push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

} // namespace kqfi::cli
