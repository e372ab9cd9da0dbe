#include "flarko/util/csv.hpp"

#include <algorithm>

namespace flarko {

namespace {

void trim(std::string& s) {
    const auto is_space = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0) s.erase(0, i);
}

}  // namespace

CsvReader::CsvReader(std::istream& in) : in_(in) {
    read_record(header_);
}

int CsvReader::column(const std::string& name) const {
    auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) return -1;
    return static_cast<int>(it - header_.begin());
}

bool CsvReader::next(std::vector<std::string>& row) {
    if (!read_record(row)) return false;
    ++record_number_;
    return true;
}

bool CsvReader::read_record(std::vector<std::string>& row) {
    row.clear();
    int c = in_.get();
    // Skip blank lines between records.
    while (c == '\n' || c == '\r') c = in_.get();
    if (c == EOF) return false;

    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;

    const auto push_field = [&] {
        if (!field_was_quoted) trim(field);
        row.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };

    while (true) {
        if (quoted) {
            if (c == EOF) break;  // unterminated quote: take what we have
            if (c == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
        } else {
            if (c == EOF || c == '\n') break;
            if (c == '\r') {
                if (in_.peek() == '\n') in_.get();
                break;
            }
            if (c == '"' && field.empty() && !field_was_quoted) {
                quoted = true;
                field_was_quoted = true;
            } else if (c == ',') {
                push_field();
            } else {
                field.push_back(static_cast<char>(c));
            }
        }
        c = in_.get();
    }
    push_field();
    return true;
}

}  // namespace flarko
