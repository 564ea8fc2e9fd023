#include "heartml/arff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

#include "heartml/errors.hpp"

namespace heartml {

namespace {

using K = ParseError::Kind;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

bool starts_with_keyword(std::string_view line, std::string_view kw) {
    if (line.size() < kw.size() || !iequals(line.substr(0, kw.size()), kw)) return false;
    return line.size() == kw.size() || std::isspace(static_cast<unsigned char>(line[kw.size()]));
}

struct Token {
    std::string text;
    bool quoted = false;
};

// Reads one token starting at `pos`: a quoted string or a run of characters up to a stop char.
Token read_token(std::string_view s, std::size_t& pos, std::string_view stops, std::size_t line_no) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    Token tok;
    if (pos < s.size() && (s[pos] == '\'' || s[pos] == '"')) {
        const char q = s[pos++];
        tok.quoted = true;
        for (;;) {
            if (pos >= s.size()) throw ParseError(K::MalformedHeader, "unterminated quote", line_no);
            char c = s[pos++];
            if (c == '\\' && pos < s.size()) {
                tok.text.push_back(s[pos++]);
            } else if (c == q) {
                break;
            } else {
                tok.text.push_back(c);
            }
        }
        return tok;
    }
    const std::size_t begin = pos;
    while (pos < s.size() && stops.find(s[pos]) == std::string_view::npos) ++pos;
    tok.text = std::string(trim(s.substr(begin, pos - begin)));
    return tok;
}

// Splits a comma-separated list honoring quotes.
std::vector<Token> split_cells(std::string_view s, std::size_t line_no, K error_kind) {
    std::vector<Token> cells;
    std::size_t pos = 0;
    for (;;) {
        Token t;
        try {
            t = read_token(s, pos, ",", line_no);
        } catch (const ParseError& e) {
            throw ParseError(error_kind, e.what(), line_no);
        }
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        cells.push_back(std::move(t));
        if (pos >= s.size()) break;
        if (s[pos] != ',') throw ParseError(error_kind, "unexpected text after quoted value", line_no);
        ++pos;
    }
    return cells;
}

bool needs_quotes(std::string_view s) {
    if (s.empty() || s == "?") return true;
    return std::any_of(s.begin(), s.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '\'' || c == '"' || c == '%' ||
               c == '{' || c == '}' || c == '\\';
    });
}

std::string quote(std::string_view s) {
    if (!needs_quotes(s)) return std::string(s);
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

AttributeSpec parse_attribute(std::string_view rest, std::size_t line_no) {
    std::size_t pos = 0;
    Token name = read_token(rest, pos, " \t{", line_no);
    if (name.text.empty()) throw ParseError(K::MalformedHeader, "attribute without a name", line_no);
    std::string_view type = trim(rest.substr(pos));
    if (type.empty()) throw ParseError(K::MalformedHeader, "attribute '" + name.text + "' has no type", line_no);

    if (type.front() == '{') {
        if (type.back() != '}')
            throw ParseError(K::MalformedHeader, "unterminated category list for '" + name.text + "'", line_no);
        auto body = trim(type.substr(1, type.size() - 2));
        std::vector<std::string> labels;
        if (!body.empty())
            for (auto& t : split_cells(body, line_no, K::MalformedHeader)) labels.push_back(std::move(t.text));
        if (labels.empty())
            throw ParseError(K::MalformedHeader, "empty category list for '" + name.text + "'", line_no);
        return AttributeSpec::nominal(std::move(name.text), std::move(labels));
    }
    std::size_t tpos = 0;
    Token kw = read_token(type, tpos, " \t", line_no);
    if (iequals(kw.text, "numeric") || iequals(kw.text, "real") || iequals(kw.text, "integer"))
        return AttributeSpec::numeric(std::move(name.text));
    throw ParseError(K::MalformedHeader, "unsupported attribute type '" + kw.text + "' for '" + name.text + "'",
                     line_no, name.text);
}

struct Header {
    std::vector<AttributeSpec> attributes;
    bool saw_data = false;
    std::size_t data_line = 0;  // index into lines of the first line after @data
};

Schema finish_schema(std::vector<AttributeSpec> attrs, const ArffOptions& options) {
    if (attrs.empty()) throw ParseError(K::MalformedHeader, "no @attribute declarations");
    std::size_t target = attrs.size() - 1;
    if (options.target) {
        auto it = std::find_if(attrs.begin(), attrs.end(), [&](const auto& a) { return a.name == *options.target; });
        if (it == attrs.end())
            throw ParseError(K::InvalidSchema, "target attribute '" + *options.target + "' not declared");
        target = static_cast<std::size_t>(it - attrs.begin());
    }
    attrs[target].role = AttributeRole::Target;
    return Schema(std::move(attrs));
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

Header read_header(const std::vector<std::string_view>& lines) {
    Header h;
    bool saw_relation = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = trim(lines[i]);
        if (line.empty() || line.front() == '%') continue;
        const std::size_t line_no = i + 1;
        if (starts_with_keyword(line, "@relation")) {
            saw_relation = true;
        } else if (starts_with_keyword(line, "@attribute")) {
            if (!saw_relation) throw ParseError(K::MalformedHeader, "@attribute before @relation", line_no);
            h.attributes.push_back(parse_attribute(line.substr(10), line_no));
        } else if (starts_with_keyword(line, "@data")) {
            if (!saw_relation) throw ParseError(K::MalformedHeader, "@data before @relation", line_no);
            h.saw_data = true;
            h.data_line = i + 1;
            return h;
        } else {
            throw ParseError(K::MalformedHeader, "unexpected header line: " + std::string(line), line_no);
        }
    }
    if (!saw_relation) throw ParseError(K::MalformedHeader, "missing @relation", std::nullopt);
    return h;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty() || !(std::isdigit(static_cast<unsigned char>(text.front())) || text.front() == '-' ||
                          text.front() == '.'))
        return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

Schema parse_arff_schema(std::string_view text, const ArffOptions& options) {
    auto lines = split_lines(text);
    return finish_schema(read_header(lines).attributes, options);
}

Dataset parse_arff(std::string_view text, const ArffOptions& options) {
    auto lines = split_lines(text);
    Header h = read_header(lines);
    Dataset ds(finish_schema(std::move(h.attributes), options));
    if (!h.saw_data) throw ParseError(K::MalformedHeader, "missing @data section");

    const Schema& schema = ds.schema();
    std::vector<Value> row(schema.size());
    std::size_t data_row = 0;
    for (std::size_t i = h.data_line; i < lines.size(); ++i) {
        auto line = trim(lines[i]);
        if (line.empty() || line.front() == '%') continue;
        const std::size_t line_no = i + 1;
        ++data_row;
        if (line.front() == '{') throw ParseError(K::MalformedHeader, "sparse ARFF rows are not supported", line_no);
        auto cells = split_cells(line, line_no, K::ArityMismatch);
        if (cells.size() != schema.size())
            throw ParseError(K::ArityMismatch,
                             "data row " + std::to_string(data_row) + " has " + std::to_string(cells.size()) +
                                 " values, expected " + std::to_string(schema.size()),
                             line_no);
        for (std::size_t a = 0; a < cells.size(); ++a) {
            const auto& spec = schema[a];
            const auto& cell = cells[a];
            if (!cell.quoted && cell.text == "?") {
                row[a] = Value::missing();
            } else if (spec.is_nominal()) {
                auto idx = spec.category_index(cell.text);
                if (!idx)
                    throw ParseError(K::UnknownCategory,
                                     "data row " + std::to_string(data_row) + ", attribute '" + spec.name +
                                         "': unknown category '" + cell.text + "'",
                                     line_no, spec.name);
                row[a] = Value::nominal(*idx);
            } else {
                auto v = cell.quoted ? std::nullopt : parse_number(cell.text);
                if (!v)
                    throw ParseError(K::NonNumericCell,
                                     "data row " + std::to_string(data_row) + ", attribute '" + spec.name +
                                         "': not a number '" + cell.text + "'",
                                     line_no, spec.name);
                row[a] = Value::numeric(*v);
            }
        }
        ds.add_row(row);
    }
    return ds;
}

void write_arff(std::ostream& os, const Dataset& ds, std::string_view relation) {
    const Schema& schema = ds.schema();
    os << "@relation " << quote(relation) << "\n\n";
    for (const auto& a : schema.attributes()) {
        os << "@attribute " << quote(a.name) << ' ';
        if (a.is_nominal()) {
            os << '{';
            for (std::size_t c = 0; c < a.categories.size(); ++c) os << (c ? "," : "") << quote(a.categories[c]);
            os << '}';
        } else {
            os << "numeric";
        }
        os << '\n';
    }
    os << "\n@data\n";
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t a = 0; a < schema.size(); ++a) {
            if (a) os << ',';
            const Value& v = ds.at(r, a);
            if (v.is_missing())
                os << '?';
            else if (v.is_nominal())
                os << quote(schema[a].categories[v.index()]);
            else
                os << format_number(v.number());
        }
        os << '\n';
    }
}

std::string write_arff(const Dataset& ds, std::string_view relation) {
    std::ostringstream os;
    write_arff(os, ds, relation);
    return os.str();
}

}  // namespace heartml
