#include "heartml/csv.hpp"

#include <cctype>
#include <optional>

#include "heartml/arff.hpp"
#include "heartml/errors.hpp"

namespace heartml {

namespace {

using K = ParseError::Kind;

std::string trim_copy(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

struct Cell {
    std::string text;
    bool quoted = false;
};

std::vector<Cell> split_record(std::string_view line, std::size_t line_no) {
    std::vector<Cell> cells;
    std::size_t pos = 0;
    for (;;) {
        Cell cell;
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos < line.size() && line[pos] == '"') {
            cell.quoted = true;
            ++pos;
            for (;;) {
                if (pos >= line.size()) throw ParseError(K::ArityMismatch, "unterminated quoted cell", line_no);
                if (line[pos] == '"') {
                    if (pos + 1 < line.size() && line[pos + 1] == '"') {
                        cell.text.push_back('"');
                        pos += 2;
                        continue;
                    }
                    ++pos;
                    break;
                }
                cell.text.push_back(line[pos++]);
            }
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            if (pos < line.size() && line[pos] != ',')
                throw ParseError(K::ArityMismatch, "text after closing quote", line_no);
        } else {
            const auto begin = pos;
            while (pos < line.size() && line[pos] != ',') ++pos;
            cell.text = trim_copy(line.substr(begin, pos - begin));
        }
        cells.push_back(std::move(cell));
        if (pos >= line.size()) break;
        ++pos;  // comma
    }
    return cells;
}

}  // namespace

std::vector<std::string> split_csv_record(std::string_view line) {
    std::vector<std::string> out;
    for (auto& c : split_record(line, 0)) out.push_back(std::move(c.text));
    return out;
}

Dataset parse_csv(std::string_view text, const Schema& schema) {
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start <= text.size();) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }

    std::size_t i = 0;
    while (i < lines.size() && trim_copy(lines[i]).empty()) ++i;
    if (i == lines.size()) throw ParseError(K::MissingColumn, "CSV input has no header row");

    auto header = split_record(lines[i], i + 1);
    std::vector<std::size_t> column_of(schema.size());
    for (std::size_t a = 0; a < schema.size(); ++a) {
        std::optional<std::size_t> found;
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c].text == schema[a].name) found = c;
        if (!found)
            throw ParseError(K::MissingColumn, "CSV header lacks column '" + schema[a].name + "'", i + 1,
                             schema[a].name);
        column_of[a] = *found;
    }

    Dataset ds(schema);
    std::vector<Value> row(schema.size());
    std::size_t data_row = 0;
    for (++i; i < lines.size(); ++i) {
        if (trim_copy(lines[i]).empty()) continue;
        const std::size_t line_no = i + 1;
        ++data_row;
        auto cells = split_record(lines[i], line_no);
        if (cells.size() != header.size())
            throw ParseError(K::ArityMismatch,
                             "data row " + std::to_string(data_row) + " has " + std::to_string(cells.size()) +
                                 " cells, header has " + std::to_string(header.size()),
                             line_no);
        for (std::size_t a = 0; a < schema.size(); ++a) {
            const auto& spec = schema[a];
            const auto& cell = cells[column_of[a]];
            if (!cell.quoted && (cell.text.empty() || cell.text == "?")) {
                row[a] = Value::missing();
            } else if (spec.is_nominal()) {
                auto idx = spec.category_index(cell.text);
                if (!idx)
                    throw ParseError(K::UnknownCategory,
                                     "data row " + std::to_string(data_row) + ", column '" + spec.name +
                                         "': unknown category '" + cell.text + "'",
                                     line_no, spec.name);
                row[a] = Value::nominal(*idx);
            } else {
                auto v = parse_number(cell.text);
                if (!v)
                    throw ParseError(K::NonNumericCell,
                                     "data row " + std::to_string(data_row) + ", column '" + spec.name +
                                         "': not a number '" + cell.text + "'",
                                     line_no, spec.name);
                row[a] = Value::numeric(*v);
            }
        }
        ds.add_row(row);
    }
    return ds;
}

}  // namespace heartml
