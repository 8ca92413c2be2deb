#include "stocklab/csv.hpp"

namespace stocklab {
namespace csv {

std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

static bool has_open_quote(const std::string& s) {
    bool quoted = false;
    bool at_field_start = true;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < s.size() && s[i + 1] == '"') {
                    ++i;
                } else {
                    quoted = false;
                }
            }
        } else if (c == '"' && at_field_start) {
            quoted = true;
        } else if (c == ',') {
            at_field_start = true;
            continue;
        }
        at_field_start = false;
    }
    return quoted;
}

bool read_record(std::istream& in, std::vector<std::string>& fields) {
    std::string line;
    if (!std::getline(in, line)) return false;
    while (has_open_quote(line) && in) {
        std::string cont;
        if (!std::getline(in, cont)) break;
        line += '\n';
        line += cont;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fields = split_record(line);
    return true;
}

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += quote(fields[i]);
    }
    return out;
}

}  // namespace csv
}  // namespace stocklab
