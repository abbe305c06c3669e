#include "idnc/sfm_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "idnc/errors.hpp"

namespace idnc {

StateFeedbackMatrix parse_sfm_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("SFM JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("receivers") || !doc.contains("packets") ||
        !doc.contains("rows"))
        throw FormatError("SFM JSON: expected object with receivers/packets/rows");

    const int n = doc["receivers"].get<int>();
    const int k = doc["packets"].get<int>();
    const auto& rows = doc["rows"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw FormatError("SFM JSON: rows count does not match receivers");

    std::vector<std::vector<int>> matrix;
    matrix.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != k)
            throw FormatError("SFM JSON: row " + std::to_string(i + 1) +
                              " does not have " + std::to_string(k) + " entries");
        std::vector<int> row;
        for (const auto& cell : rows[i]) {
            if (!cell.is_number_integer())
                throw FormatError("SFM JSON: row " + std::to_string(i + 1) +
                                  " has a non-integer entry");
            row.push_back(cell.get<int>());
        }
        matrix.push_back(std::move(row));
    }
    try {
        return StateFeedbackMatrix::from_rows(matrix);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("SFM JSON: ") + e.what());
    }
}

StateFeedbackMatrix parse_sfm_csv(const std::string& text) {
    std::vector<std::vector<int>> matrix;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped;
        for (char c : line)
            if (c != ' ' && c != '\t') stripped += c;
        if (stripped.empty()) continue;

        std::vector<int> row;
        int col = 0;
        std::istringstream cells(stripped);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            ++col;
            if (cell == "0")
                row.push_back(0);
            else if (cell == "1")
                row.push_back(1);
            else
                throw FormatError("SFM CSV: line " + std::to_string(line_no) + ", column " +
                                  std::to_string(col) + ": expected 0 or 1, got '" + cell + "'");
        }
        matrix.push_back(std::move(row));
    }
    try {
        return StateFeedbackMatrix::from_rows(matrix);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("SFM CSV: ") + e.what());
    }
}

std::string sfm_to_json(const StateFeedbackMatrix& sfm) {
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 0; n < sfm.receivers(); ++n) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < sfm.packets(); ++k)
            row.push_back(set_contains(sfm.wants(n), k) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["receivers"] = sfm.receivers();
    doc["packets"] = sfm.packets();
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string sfm_to_csv(const StateFeedbackMatrix& sfm) {
    std::string out;
    for (int n = 0; n < sfm.receivers(); ++n) {
        for (int k = 0; k < sfm.packets(); ++k) {
            if (k) out += ',';
            out += set_contains(sfm.wants(n), k) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

StateFeedbackMatrix read_sfm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    bool json = false;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        json = true;
    else if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        json = false;
    else {
        for (char c : text) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
            json = (c == '{');
            break;
        }
    }
    return json ? parse_sfm_json(text) : parse_sfm_csv(text);
}

}  // namespace idnc
